"""JSON-lines persistence, statistics and querying for the final KB."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .clustering import FacetGroup
from .extraction import FacetRole
from .mapping import CNRelation
from .ranking import CanonicalAssertion
from .subjects import SubjectRegistry

STYPES = ("primary", "subgroup", "aspect")


class IntegrityError(ValueError):
    """Raised on duplicate keys or corrupted KB lines."""


def assertion_to_json(a: CanonicalAssertion) -> str:
    return json.dumps(
        {
            "s": a.subject,
            "rel": a.relation.value,
            "o": a.object,
            "facets": [
                {"role": g.role.value, "value": g.value, "count": g.count}
                for g in a.facets
            ],
            "freq": a.frequency,
            "saliency": a.saliency,
            "typicality": a.typicality,
            "stype": a.stype,
        },
        ensure_ascii=False,
    )


def assertion_from_json(line: str) -> CanonicalAssertion:
    raw = json.loads(line)
    return CanonicalAssertion(
        subject=raw["s"],
        relation=CNRelation(raw["rel"]),
        object=raw["o"],
        facets=tuple(
            FacetGroup(FacetRole(g["role"]), g["value"], g["count"])
            for g in raw["facets"]
        ),
        frequency=raw["freq"],
        saliency=raw["saliency"],
        typicality=raw["typicality"],
        stype=raw["stype"],
    )


@dataclass
class KnowledgeBase:
    assertions: list[CanonicalAssertion] = field(default_factory=list)
    registry: SubjectRegistry = field(default_factory=SubjectRegistry)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for a in self.assertions:
            if a.key in seen:
                raise IntegrityError(f"duplicate assertion key {a.key}")
            seen.add(a.key)


def _meta_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def write_kb(kb: KnowledgeBase, path: str | Path):
    """One assertion per line, stable field order; registry and metadata go
    to a `<name>.meta.json` sidecar. Deterministic for identical inputs."""
    path = Path(path)
    seen = set()
    with open(path, "w", encoding="utf-8") as f:
        for a in kb.assertions:
            if a.key in seen:
                raise IntegrityError(f"duplicate assertion key {a.key}")
            seen.add(a.key)
            f.write(assertion_to_json(a))
            f.write("\n")
    meta = {"registry": kb.registry.to_json_dict(), "metadata": kb.metadata}
    with open(_meta_path(path), "w", encoding="utf-8") as f:
        json.dump(meta, f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")


def read_kb(path: str | Path) -> KnowledgeBase:
    """Inverse of write_kb. Without the meta sidecar, a minimal registry is
    derived from the rows' subject types."""
    path = Path(path)
    assertions: list[CanonicalAssertion] = []
    seen = set()
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                a = assertion_from_json(line)
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise IntegrityError(f"{path}:{line_no}: corrupted KB line ({exc})") from None
            if a.key in seen:
                raise IntegrityError(f"{path}:{line_no}: duplicate assertion key {a.key}")
            seen.add(a.key)
            assertions.append(a)
    meta_path = _meta_path(path)
    registry = SubjectRegistry()
    metadata: dict = {}
    if meta_path.exists():
        with open(meta_path, encoding="utf-8") as f:
            meta = json.load(f)
        registry = SubjectRegistry.from_json_dict(meta.get("registry", {}))
        metadata = meta.get("metadata", {})
    else:
        for a in assertions:
            if a.stype == "primary":
                registry.add_primary(a.subject)
        for a in assertions:
            if a.stype != "primary":
                registry._alias.setdefault(a.subject, (a.subject, a.stype))
    return KnowledgeBase(assertions=assertions, registry=registry, metadata=metadata)


@dataclass(frozen=True)
class SubjectStats:
    rows: dict[str, tuple[int, int, int]]  # stype -> (subjects, assertions, facets)

    @property
    def total(self) -> tuple[int, int, int]:
        return tuple(sum(row[i] for row in self.rows.values()) for i in range(3))  # type: ignore[return-value]

    def format(self) -> str:
        lines = [f"{'Subject type':<12} {'#s':>8} {'#spo':>10} {'#facets':>10}"]
        for stype in STYPES:
            subjects, spo, facets = self.rows[stype]
            lines.append(f"{stype.capitalize():<12} {subjects:>8} {spo:>10} {facets:>10}")
        subjects, spo, facets = self.total
        lines.append(f"{'All':<12} {subjects:>8} {spo:>10} {facets:>10}")
        return "\n".join(lines)


def stats(kb: KnowledgeBase) -> SubjectStats:
    rows = {stype: [set(), 0, 0] for stype in STYPES}
    for a in kb.assertions:
        stype = a.stype if a.stype in STYPES else "primary"
        rows[stype][0].add(a.subject)
        rows[stype][1] += 1
        rows[stype][2] += len(a.facets)
    return SubjectStats(
        rows={stype: (len(row[0]), row[1], row[2]) for stype, row in rows.items()}
    )


def query(
    kb: KnowledgeBase,
    subject: str,
    relation: CNRelation | str | None = None,
    top_k: int = 10,
    order: str = "saliency",
) -> list[CanonicalAssertion]:
    """Top-k assertions for a subject by saliency or typicality."""
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    if order not in ("saliency", "typicality"):
        raise ValueError("order must be 'saliency' or 'typicality'")
    if isinstance(relation, str):
        relation = CNRelation(relation)
    subject = subject.strip().lower()
    rows = [a for a in kb.assertions if a.subject == subject]
    if relation is not None:
        rows = [a for a in rows if a.relation is relation]

    def sort_key(a: CanonicalAssertion):
        primary = a.saliency if order == "saliency" else a.typicality
        secondary = a.typicality if order == "saliency" else a.saliency
        return (-(primary or 0.0), -(secondary or 0.0), a.key)

    rows.sort(key=sort_key)
    return rows[:top_k]

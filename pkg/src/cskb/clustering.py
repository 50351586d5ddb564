"""Hierarchical agglomerative clustering of triples and facets."""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .extraction import Facet, FacetRole
from .filtering import AggregateEntry, TripleKey
from .tables import EmbeddingTable, normalize_key


class Linkage(enum.Enum):
    WARD = "ward"
    AVERAGE = "average"


@dataclass(frozen=True)
class ClusterParams:
    linkage: Linkage = Linkage.WARD
    distance_threshold: float = 0.5

    def __post_init__(self):
        if self.distance_threshold <= 0:
            raise ValueError("distance threshold must be positive")


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def hac(
    vectors: Sequence[np.ndarray] | np.ndarray,
    *,
    weights: Sequence[float] | None = None,
    params: ClusterParams,
    cannot_link: frozenset[frozenset[int]] = frozenset(),
) -> list[tuple[int, ...]]:
    """Agglomerative clustering with Ward or average linkage.

    Point weights act as coincident-point multiplicities. Merging stops when
    the minimum pairwise linkage distance exceeds the threshold; merge ties
    break on the smaller (i, j) cluster-id pair. Ward merge costs are tracked
    on squared Euclidean distances and compared to the threshold via their
    square root, so the threshold is in distance units for both linkages.
    Pairs in `cannot_link` (original point indices) never share a cluster.
    """
    points = [np.asarray(v, dtype=np.float64) for v in vectors]
    n = len(points)
    if n == 0:
        raise ValueError("hac requires at least one point")
    dims = {p.shape for p in points}
    if len(dims) != 1 or points[0].ndim != 1:
        raise ValueError("all vectors must share one dimension")
    if weights is None:
        weights = [1.0] * n
    if len(weights) != n:
        raise ValueError("weights must match vectors")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")

    ward = params.linkage is Linkage.WARD
    members: dict[int, tuple[int, ...]] = {i: (i,) for i in range(n)}
    sizes: dict[int, float] = {i: float(weights[i]) for i in range(n)}
    forbidden: set[tuple[int, int]] = set()
    for pair in cannot_link:
        a, b = tuple(pair)
        forbidden.add(_pair(a, b))

    # pairwise linkage state: Ward keeps squared merge costs, average keeps
    # weighted mean distances
    dist: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = float(np.linalg.norm(points[i] - points[j]))
            if ward:
                ni, nj = sizes[i], sizes[j]
                dist[(i, j)] = (2.0 * ni * nj / (ni + nj)) * d * d
            else:
                dist[(i, j)] = d

    active = set(range(n))
    next_id = n
    threshold = params.distance_threshold

    def effective(value: float) -> float:
        return math.sqrt(max(value, 0.0)) if ward else value

    while len(active) > 1:
        best: tuple[float, int, int] | None = None
        for (i, j), value in dist.items():
            if (i, j) in forbidden:
                continue
            cand = (effective(value), i, j)
            if best is None or cand < best:
                best = cand
        if best is None or best[0] > threshold:
            break
        _, bi, bj = best
        ni, nj = sizes[bi], sizes[bj]
        nid = next_id
        next_id += 1
        merged_cost = dist.pop((bi, bj))
        new_dist: dict[int, float] = {}
        for k in active:
            if k in (bi, bj):
                continue
            dik = dist.pop(_pair(bi, k))
            djk = dist.pop(_pair(bj, k))
            nk = sizes[k]
            if ward:
                new_dist[k] = (
                    (ni + nk) * dik + (nj + nk) * djk - nk * merged_cost
                ) / (ni + nj + nk)
            else:
                new_dist[k] = (ni * dik + nj * djk) / (ni + nj)
        active.discard(bi)
        active.discard(bj)
        members[nid] = members.pop(bi) + members.pop(bj)
        sizes[nid] = ni + nj
        sizes.pop(bi), sizes.pop(bj)
        for k, value in new_dist.items():
            dist[_pair(nid, k)] = value
        pairs = {p for p in forbidden if bi in p or bj in p}
        for i, j in pairs:
            forbidden.discard((i, j))
            other = j if i in (bi, bj) else i
            if other not in (bi, bj):
                forbidden.add(_pair(nid, other))
        active.add(nid)

    blocks = [tuple(sorted(members[cid])) for cid in active]
    blocks.sort(key=lambda block: block[0])
    return blocks


# ---------------------------------------------------------------------------
# triple clustering


@dataclass(frozen=True)
class FacetGroup:
    role: FacetRole
    value: str
    count: int


@dataclass(frozen=True)
class TripleCluster:
    representative: TripleKey
    members: tuple[tuple[TripleKey, int], ...]
    total_count: int
    facets: tuple[tuple[Facet, int], ...]
    quantifiers: tuple[tuple[str, int], ...]
    sources: tuple[str, ...]
    object_pos: str | None
    facet_groups: tuple[FacetGroup, ...] = ()

    def __post_init__(self):
        if not self.members:
            raise ValueError("cluster must have members")
        if self.total_count != sum(c for _, c in self.members):
            raise ValueError("total_count must equal the sum of member counts")
        if self.representative not in {k for k, _ in self.members}:
            raise ValueError("representative must be a member")


def triple_text(key: TripleKey) -> str:
    return normalize_key(" ".join(part for part in key if part))


def embed_triple(key: TripleKey, embeddings: EmbeddingTable) -> np.ndarray:
    """Unit vector for the subject-predicate-object concatenation."""
    text = triple_text(key)
    try:
        return embeddings.lookup(text)
    except KeyError:
        raise KeyError(
            f"no embedding for triple <{key.subject}, {key.predicate}, {key.object}>"
            f" (key {text!r})"
        ) from None


def cluster_triples(
    triples: Mapping[TripleKey, AggregateEntry],
    embeddings: EmbeddingTable,
    params: ClusterParams = ClusterParams(Linkage.WARD, 0.5),
) -> list[TripleCluster]:
    """Group paraphrase triples; representative is the most frequent member."""
    items = sorted(triples.items(), key=lambda kv: kv[0])
    if not items:
        return []
    vectors = [embed_triple(key, embeddings) for key, _ in items]
    weights = [entry.count for _, entry in items]
    partition = hac(vectors, weights=weights, params=params)
    clusters: list[TripleCluster] = []
    for block in partition:
        block_items = [items[i] for i in block]
        member_counts = sorted(
            ((key, entry.count) for key, entry in block_items),
            key=lambda kv: (-kv[1], kv[0]),
        )
        representative = member_counts[0][0]
        facets: Counter[Facet] = Counter()
        quantifiers: Counter[str] = Counter()
        sources: list[str] = []
        for _, entry in block_items:
            facets.update(entry.facets)
            quantifiers.update(entry.quantifiers)
            sources.extend(entry.sources)
        rep_entry = dict(block_items)[representative]
        clusters.append(
            TripleCluster(
                representative=representative,
                members=tuple(member_counts),
                total_count=sum(entry.count for _, entry in block_items),
                facets=tuple(
                    sorted(facets.items(), key=lambda fc: (-fc[1], fc[0].role.value, fc[0].value))
                ),
                quantifiers=tuple(sorted(quantifiers.items(), key=lambda qc: (-qc[1], qc[0]))),
                sources=tuple(sorted(sources)),
                object_pos=rep_entry.object_pos,
            )
        )
    clusters.sort(key=lambda c: (-c.total_count, c.representative))
    return clusters


# ---------------------------------------------------------------------------
# facet clustering


def _word_mean(text: str, embeddings: EmbeddingTable) -> np.ndarray | None:
    vectors = []
    for word in text.split():
        vec = embeddings.get(word)
        if vec is not None:
            vectors.append(vec)
    if not vectors:
        return None
    mean = np.mean(vectors, axis=0)
    norm = float(np.linalg.norm(mean))
    if norm == 0.0:
        return None
    return mean / norm


def cluster_facets(
    facets: Iterable[tuple[Facet, int]] | Counter,
    embeddings: EmbeddingTable,
    params: ClusterParams = ClusterParams(Linkage.AVERAGE, 1.0),
) -> list[FacetGroup]:
    """Group facet values per role via averaged word vectors.

    Values whose words all lack vectors stay singletons; the group label is
    the most frequent value, the group count the multiplicity sum.
    """
    pairs = facets.items() if isinstance(facets, Counter) else facets
    by_role: dict[FacetRole, Counter[str]] = {}
    for facet, count in pairs:
        by_role.setdefault(facet.role, Counter())[normalize_key(facet.text())] += count

    groups: list[FacetGroup] = []
    for role in sorted(by_role, key=lambda r: r.value):
        texts = sorted(by_role[role])
        counts = by_role[role]
        vectors, weights, with_vec, without_vec = [], [], [], []
        for pos, text in enumerate(texts):
            vec = _word_mean(text, embeddings)
            if vec is None:
                without_vec.append(pos)
            else:
                vectors.append(vec)
                weights.append(counts[text])
                with_vec.append(pos)
        blocks: list[list[int]] = []
        if with_vec:
            partition = hac(vectors, weights=weights, params=params)
            blocks.extend([[with_vec[i] for i in block] for block in partition])
        blocks.extend([[pos] for pos in without_vec])
        for block in blocks:
            block_texts = sorted(
                (texts[pos] for pos in block), key=lambda t: (-counts[t], t)
            )
            groups.append(
                FacetGroup(
                    role=role,
                    value=block_texts[0],
                    count=sum(counts[t] for t in block_texts),
                )
            )
    groups.sort(key=lambda g: (-g.count, g.role.value, g.value))
    return groups

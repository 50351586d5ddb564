"""Faceted open information extraction over dependency trees.

Every verb is a candidate predicate. Subjects resolve through subject edges
(nsubj, nsubjpass/nsubj:pass, csubj) or an adjectival-clause (acl) edge back
to the modified nominal; objects through obj/dobj and iobj, clausal
complements, or an absorbed prepositional nominal when the verb is otherwise
objectless. Adverb modifiers and prepositional/clausal complements become
role-labeled facets. Copular "be" yields predicate "be" with the predicative
complement as the object; passives yield predicate "be" with the participle
phrase as the object. Both UD and legacy dependency label spellings are
accepted.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

from .conllu import Sentence, Token

# label alias sets (UD and legacy spellings)
SUBJECT_DEPS = frozenset({"nsubj", "csubj"})
PASSIVE_SUBJECT_DEPS = frozenset({"nsubjpass", "nsubj:pass", "csubjpass", "csubj:pass"})
OBJECT_DEPS = frozenset({"obj", "dobj"})
IOBJECT_DEPS = frozenset({"iobj", "dative"})
OBLIQUE_DEPS = frozenset({"obl", "nmod", "obl:arg", "obl:tmod", "nmod:tmod"})
ACL_DEPS = frozenset({"acl", "acl:relcl", "relcl"})
AUX_DEPS = frozenset({"aux", "auxpass", "aux:pass"})
PARTICLE_DEPS = frozenset({"prt", "compound:prt"})
CASE_DEPS = frozenset({"case"})
MARK_DEPS = frozenset({"mark"})
CC_DEPS = frozenset({"cc", "cc:preconj"})
COP_DEPS = frozenset({"cop"})
ADVCL_DEPS = frozenset({"advcl"})
XCOMP_DEPS = frozenset({"xcomp", "acomp", "attr"})
CCOMP_DEPS = frozenset({"ccomp"})
POSS_DEPS = frozenset({"nmod:poss", "poss"})

ARTICLES = frozenset({"a", "an", "the"})
NOMINAL_POS = frozenset({"NOUN", "PROPN", "PRON", "NUM"})
LOCATION_NER = frozenset({"LOC", "GPE", "FAC", "LOCATION"})
TEMPORAL_NER = frozenset({"TIME", "DATE"})

# frequency adverbs recognized as Degree facets (scores live in ranking)
DEGREE_ADVERBS = frozenset(
    {
        "always", "typically", "mostly", "mainly", "usually", "normally",
        "regularly", "frequently", "commonly", "often", "sometimes",
        "occasionally", "hardly", "rarely", "never", "seldom",
    }
)

# subject quantifiers: stripped from phrases during canonicalization and
# subgroup mining, scored by the ranking modifier table
QUANTIFIER_WORDS = frozenset({"all", "every", "most", "many", "some", "few", "no", "none"})


class FacetRole(enum.Enum):
    DEGREE = "degree"
    LOCATION = "location"
    TEMPORAL = "temporal"
    OTHER_QUALITY = "other-quality"
    CAUSE = "cause"
    MANNER = "manner"
    PURPOSE = "purpose"
    TRANSITIVE_OBJECT = "transitive-object"


@dataclass(frozen=True)
class Facet:
    connector: str
    value: str
    role: FacetRole

    def __post_init__(self):
        if not self.value:
            raise ValueError("facet value must be nonempty")

    def text(self) -> str:
        return f"{self.connector} {self.value}".strip()


@dataclass(frozen=True)
class RoleRules:
    """Connector lists condensing fine-grained facet labels into eight roles.

    The shipped defaults are a reconstruction; edit via a key=value file.
    """

    cause: frozenset[str] = frozenset({"because", "because of", "since", "due to", "as a result of"})
    purpose: frozenset[str] = frozenset({"to", "in order to", "so that", "for the purpose of"})
    manner: frozenset[str] = frozenset({"by", "with", "via", "like"})
    temporal: frozenset[str] = frozenset({"during", "before", "after", "when", "until", "while"})
    location: frozenset[str] = frozenset(
        {"in", "at", "on", "near", "inside", "outside", "under", "above", "into", "onto", "from"}
    )


DEFAULT_ROLE_RULES = RoleRules()


def load_role_rules(path: str | Path) -> RoleRules:
    """Read `role = conn, conn, ...` lines into a RoleRules table."""
    values: dict[str, frozenset[str]] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, rest = line.partition("=")
            key = key.strip().lower()
            if not sep or key not in ("cause", "purpose", "manner", "temporal", "location"):
                raise ValueError(f"{path}:{line_no}: expected `<role> = conn, ...`")
            values[key] = frozenset(c.strip().lower() for c in rest.split(",") if c.strip())
    return replace(DEFAULT_ROLE_RULES, **values)


def classify_facet_role(
    connector: str,
    value: str,
    ner_tags: Iterable[str] = (),
    *,
    first_pos: str | None = None,
    head_pos: str | None = None,
    second_object: bool = False,
    rules: RoleRules = DEFAULT_ROLE_RULES,
) -> FacetRole:
    """Deterministic facet-role table lookup; total over all inputs.

    Priority: frequency adverb -> Degree; cause connectors; "to" + verb-initial
    value -> Purpose; manner connectors or -ly adverb head -> Manner; TIME/DATE
    or temporal connectors -> Temporal; LOC or location connector + nominal ->
    Location; bare nominal second object -> TransitiveObject; else OtherQuality.
    """
    conn = connector.strip().lower()
    words = value.strip().lower().split()
    tags = {t.upper() for t in ner_tags}
    nominal = head_pos in NOMINAL_POS or head_pos is None
    verb_initial = first_pos in ("VERB", "AUX") or first_pos is None

    if not conn and words and words[0] in DEGREE_ADVERBS:
        return FacetRole.DEGREE
    if conn in rules.cause:
        return FacetRole.CAUSE
    if conn in rules.purpose and verb_initial:
        return FacetRole.PURPOSE
    if conn in rules.manner:
        return FacetRole.MANNER
    if not conn and head_pos == "ADV" and words and words[-1].endswith("ly"):
        return FacetRole.MANNER
    if tags & TEMPORAL_NER or conn in rules.temporal:
        return FacetRole.TEMPORAL
    if tags & LOCATION_NER or (conn in rules.location and nominal):
        return FacetRole.LOCATION
    if second_object and not conn and nominal:
        return FacetRole.TRANSITIVE_OBJECT
    return FacetRole.OTHER_QUALITY


@dataclass(frozen=True)
class OpenAssertion:
    """A raw faceted tuple with provenance.

    Head indices and phrase categories are extraction-internal carry-alongs;
    the wire format (to_json/from_json) holds only the public fields.
    """

    subject: str
    predicate: str
    object: str
    facets: tuple[Facet, ...]
    doc_id: str
    sent_idx: int
    source: str
    subject_head: int = 0
    object_head: int | None = None
    object_mode: str = "none"
    object_pos: str | None = None
    facet_heads: tuple[int | None, ...] = ()
    subject_is_pronoun: bool = False
    quantifier: str | None = None

    def __post_init__(self):
        if not self.subject or not self.predicate:
            raise ValueError("assertion subject and predicate must be nonempty")

    def to_json(self) -> str:
        return json.dumps(
            {
                "subject": self.subject,
                "predicate": self.predicate,
                "object": self.object,
                "facets": [
                    {"connector": f.connector, "value": f.value, "role": f.role.value}
                    for f in self.facets
                ],
                "doc_id": self.doc_id,
                "sent_idx": self.sent_idx,
                "source": self.source,
            },
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, line: str) -> "OpenAssertion":
        raw = json.loads(line)
        return cls(
            subject=raw["subject"],
            predicate=raw["predicate"],
            object=raw["object"],
            facets=tuple(
                Facet(f["connector"], f["value"], FacetRole(f["role"])) for f in raw["facets"]
            ),
            doc_id=raw["doc_id"],
            sent_idx=raw["sent_idx"],
            source=raw["source"],
        )


# ---------------------------------------------------------------------------
# phrase rendering


def render_phrase(
    sentence: Sentence,
    head: int,
    *,
    drop_deps: frozenset[str] = frozenset(),
    drop_tokens: frozenset[int] = frozenset(),
    keep_article: bool = False,
) -> str:
    """Render a subtree in surface order.

    Coordinators and direct conjunct subtrees are excluded (conjuncts are
    re-rendered by expand_conjunctions); punctuation is dropped; tokens
    lowercase unless PROPN; one leading article is stripped unless the head
    is a proper noun or `keep_article` is set.
    """
    top = {
        child.index
        for child in sentence.children(head)
        if child.deprel in drop_deps or child.deprel in CC_DEPS or child.deprel == "conj"
    }
    indices = sentence.subtree(head, skip=frozenset(top) | drop_tokens)
    tokens = [sentence.token(i) for i in indices]
    tokens = [
        t
        for t in tokens
        if t.deprel != "punct" and t.deprel not in CC_DEPS and t.upos not in ("PUNCT",)
    ]
    if not tokens:
        return ""
    head_tok = sentence.token(head)
    if not keep_article and head_tok.upos != "PROPN":
        if tokens[0].form.lower() in ARTICLES:
            tokens = tokens[1:]
    parts = []
    for pos, t in enumerate(tokens):
        form = t.form if t.upos == "PROPN" else t.form.lower()
        parts.append(form)
        nxt = tokens[pos + 1] if pos + 1 < len(tokens) else None
        if nxt is not None:
            # keep clitics attached when the tokens are adjacent in the source
            if t.space_after or nxt.index != t.index + 1:
                parts.append(" ")
    return "".join(parts).strip()


def chunk_phrase(sentence: Sentence, span: tuple[int, int]) -> str:
    """Normalized text of a noun-chunk span (article-stripped, lowercased)."""
    start, end = span
    tokens = [sentence.token(i) for i in range(start, end + 1) if sentence.token(i).deprel != "punct"]
    if not tokens:
        return ""
    if sentence.token(end).upos != "PROPN" and tokens[0].form.lower() in ARTICLES:
        tokens = tokens[1:]
    parts = []
    for pos, t in enumerate(tokens):
        form = t.form if t.upos == "PROPN" else t.form.lower()
        parts.append(form)
        if pos + 1 < len(tokens) and t.space_after:
            parts.append(" ")
    return "".join(parts).strip()


def _ner_tags(sentence: Sentence, indices: Iterable[int]) -> tuple[str, ...]:
    tags = []
    for i in indices:
        tag = sentence.token(i).ner
        if tag:
            tags.append(tag)
    return tuple(tags)


def _lemma_of(tok: Token) -> str:
    return tok.lemma.lower() if tok.lemma not in ("", "_") else tok.form.lower()


def _case_text(sentence: Sentence, head: int, deps: frozenset[str]) -> tuple[str, frozenset[int]]:
    """Connector words (case/mark children plus their fixed tails) and their indices."""
    indices: list[int] = []
    for child in sentence.children(head):
        if child.deprel in deps:
            indices.extend(sentence.subtree(child.index))
    indices = sorted(set(indices))
    text = " ".join(sentence.token(i).form.lower() for i in indices)
    return text, frozenset(indices)


def _has_child(sentence: Sentence, head: int, deps: frozenset[str]) -> Token | None:
    for child in sentence.children(head):
        if child.deprel in deps:
            return child
    return None


def _is_negated(sentence: Sentence, head: int) -> bool:
    for child in sentence.children(head):
        if child.deprel == "neg":
            return True
        if child.deprel == "advmod" and _lemma_of(child) == "not":
            return True
    return False


def _negation_tokens(sentence: Sentence, head: int) -> frozenset[int]:
    out = set()
    for child in sentence.children(head):
        if child.deprel == "neg" or (child.deprel == "advmod" and _lemma_of(child) == "not"):
            out.add(child.index)
    return frozenset(out)


def _object_category(tok: Token, mode: str) -> str:
    if mode == "passive":
        return "PassiveVerbPhrase"
    if tok.upos == "ADJ":
        return "AdjectivePhrase"
    if tok.upos in ("VERB", "AUX"):
        return "ActiveVerbPhrase"
    return "NounPhrase"


_CLAUSE_DEPS = ADVCL_DEPS | CCOMP_DEPS | frozenset({"parataxis"})


# ---------------------------------------------------------------------------
# candidate extraction


def _subject_for(sentence: Sentence, verb: Token) -> tuple[Token | None, bool]:
    """Resolve the subject head for a verb; (token, via_passive_edge)."""
    v = verb
    while True:
        child = _has_child(sentence, v.index, SUBJECT_DEPS)
        if child is not None:
            return child, False
        child = _has_child(sentence, v.index, PASSIVE_SUBJECT_DEPS)
        if child is not None:
            return child, True
        if v.deprel in ACL_DEPS and v.head != 0:
            return sentence.token(v.head), False
        if v.deprel == "conj" and v.head != 0:
            v = sentence.token(v.head)
            continue
        return None, False


def _render_subject(sentence: Sentence, head: int) -> str:
    return render_phrase(
        sentence, head, drop_deps=ACL_DEPS | ADVCL_DEPS | frozenset({"appos"})
    )


def _facet_from_oblique(sentence: Sentence, child: Token, rules: RoleRules) -> Facet | None:
    connector, case_idx = _case_text(sentence, child.index, CASE_DEPS)
    value = render_phrase(sentence, child.index, drop_tokens=case_idx)
    if not value:
        return None
    indices = sentence.subtree(child.index, skip=case_idx)
    role = classify_facet_role(
        connector,
        value,
        _ner_tags(sentence, indices),
        first_pos=None,
        head_pos=child.upos,
        rules=rules,
    )
    return Facet(connector, value, role)


def _facet_from_clause(sentence: Sentence, child: Token, rules: RoleRules) -> Facet | None:
    connector, mark_idx = _case_text(sentence, child.index, MARK_DEPS | CASE_DEPS)
    value = render_phrase(sentence, child.index, drop_tokens=mark_idx)
    if not value:
        return None
    first = sentence.token(sentence.subtree(child.index, skip=mark_idx)[0])
    role = classify_facet_role(
        connector,
        value,
        _ner_tags(sentence, sentence.subtree(child.index, skip=mark_idx)),
        first_pos=child.upos if first.index == child.index else first.upos,
        head_pos=child.upos,
        rules=rules,
    )
    return Facet(connector, value, role)


def _facet_from_adverb(sentence: Sentence, child: Token, rules: RoleRules) -> Facet | None:
    value = render_phrase(sentence, child.index)
    if not value:
        return None
    role = classify_facet_role(
        "",
        value,
        _ner_tags(sentence, sentence.subtree(child.index)),
        first_pos=child.upos,
        head_pos=child.upos,
        rules=rules,
    )
    return Facet("", value, role)


def _facet_second_object(sentence: Sentence, child: Token, rules: RoleRules) -> Facet | None:
    value = render_phrase(sentence, child.index)
    if not value:
        return None
    role = classify_facet_role(
        "",
        value,
        _ner_tags(sentence, sentence.subtree(child.index)),
        first_pos=child.upos,
        head_pos=child.upos,
        second_object=True,
        rules=rules,
    )
    return Facet("", value, role)


def _verb_assertion(
    sentence: Sentence,
    verb: Token,
    doc_id: str,
    sent_idx: int,
    rules: RoleRules,
) -> OpenAssertion | None:
    subj, _ = _subject_for(sentence, verb)
    if subj is None:
        return None
    subject = _render_subject(sentence, subj.index)
    if not subject:
        return None

    passive = _has_child(sentence, verb.index, frozenset({"auxpass", "aux:pass"})) is not None
    if not passive:
        passive = _has_child(sentence, verb.index, PASSIVE_SUBJECT_DEPS) is not None

    negated = _is_negated(sentence, verb.index)
    neg_tokens = _negation_tokens(sentence, verb.index)
    particles, particle_idx = _case_text(sentence, verb.index, PARTICLE_DEPS)

    facets: list[Facet] = []
    facet_heads: list[int | None] = []
    object_head: int | None = None
    object_mode = "none"
    object_pos: str | None = None
    obj_text = ""
    absorbed = ""
    absorbed_idx: frozenset[int] = frozenset()

    if passive:
        # predicate "be"; the participle phrase becomes the object
        drop = (
            SUBJECT_DEPS
            | PASSIVE_SUBJECT_DEPS
            | AUX_DEPS
            | ADVCL_DEPS
            | frozenset({"advmod", "neg", "mark", "expl", "parataxis", "discourse"})
        )
        obj_text = render_phrase(sentence, verb.index, drop_deps=drop, drop_tokens=neg_tokens)
        object_head = verb.index
        object_mode = "passive"
        object_pos = "PassiveVerbPhrase"
        predicate = "be"
        if negated:
            predicate = "be not"
        for child in sentence.children(verb.index):
            if child.index in neg_tokens:
                continue
            if child.deprel == "advmod":
                facet = _facet_from_adverb(sentence, child, rules)
                if facet:
                    facets.append(facet)
                    facet_heads.append(child.index)
            elif child.deprel in ADVCL_DEPS:
                facet = _facet_from_clause(sentence, child, rules)
                if facet:
                    facets.append(facet)
                    facet_heads.append(child.index)
        return OpenAssertion(
            subject=subject,
            predicate=predicate,
            object=obj_text,
            facets=tuple(facets),
            doc_id=doc_id,
            sent_idx=sent_idx,
            source=sentence.text,
            subject_head=subj.index,
            object_head=object_head,
            object_mode=object_mode,
            object_pos=object_pos,
            facet_heads=tuple(facet_heads),
            subject_is_pronoun=subj.upos == "PRON",
        )

    # active verb: pick the object, then facets from the remaining children
    obj_child = _has_child(sentence, verb.index, OBJECT_DEPS)
    xcomp_child = None if obj_child is not None else _has_child(sentence, verb.index, XCOMP_DEPS)
    oblique_children = [c for c in sentence.children(verb.index) if c.deprel in OBLIQUE_DEPS]
    absorb_child: Token | None = None
    if obj_child is None and xcomp_child is None:
        for cand in oblique_children:
            connector, case_idx = _case_text(sentence, cand.index, CASE_DEPS)
            if not connector:
                continue
            probe = _facet_from_oblique(sentence, cand, rules)
            if probe is None:
                continue
            if probe.role in (
                FacetRole.LOCATION,
                FacetRole.OTHER_QUALITY,
                FacetRole.TRANSITIVE_OBJECT,
            ):
                absorb_child = cand
                absorbed = connector
                absorbed_idx = case_idx
            break

    if obj_child is not None:
        obj_text = render_phrase(sentence, obj_child.index)
        object_head = obj_child.index
        object_mode = "subtree"
        object_pos = _object_category(obj_child, object_mode)
    elif xcomp_child is not None:
        obj_text = render_phrase(sentence, xcomp_child.index, keep_article=False)
        object_head = xcomp_child.index
        object_mode = "subtree"
        object_pos = _object_category(xcomp_child, object_mode)
    elif absorb_child is not None:
        obj_text = render_phrase(sentence, absorb_child.index, drop_tokens=absorbed_idx)
        object_head = absorb_child.index
        object_mode = "absorbed"
        object_pos = "NounPhrase"

    lemma = _lemma_of(verb)
    predicate_parts = []
    if negated:
        predicate_parts.append("not")
    predicate_parts.append(lemma)
    if particles:
        predicate_parts.append(particles)
    if absorbed:
        predicate_parts.append(absorbed)
    predicate = " ".join(p for p in predicate_parts if p)

    for child in sentence.children(verb.index):
        if child.index in neg_tokens or child.index in particle_idx:
            continue
        if child is obj_child or child is xcomp_child or child is absorb_child:
            continue
        facet: Facet | None = None
        if child.deprel == "advmod":
            facet = _facet_from_adverb(sentence, child, rules)
        elif child.deprel in IOBJECT_DEPS:
            facet = _facet_second_object(sentence, child, rules)
        elif child.deprel in OBLIQUE_DEPS:
            facet = _facet_from_oblique(sentence, child, rules)
        elif child.deprel in ADVCL_DEPS | CCOMP_DEPS:
            facet = _facet_from_clause(sentence, child, rules)
        elif child.deprel == "prep":
            # legacy prep -> pobj attachment
            pobj = _has_child(sentence, child.index, frozenset({"pobj"}))
            if pobj is not None:
                value = render_phrase(sentence, pobj.index)
                if value:
                    role = classify_facet_role(
                        child.form.lower(),
                        value,
                        _ner_tags(sentence, sentence.subtree(pobj.index)),
                        head_pos=pobj.upos,
                        rules=rules,
                    )
                    facet = Facet(child.form.lower(), value, role)
                    facets.append(facet)
                    facet_heads.append(pobj.index)
                    continue
        if facet is not None:
            facets.append(facet)
            facet_heads.append(child.index)

    if not obj_text and object_mode != "none":
        object_mode = "none"
        object_head = None
        object_pos = None
    return OpenAssertion(
        subject=subject,
        predicate=predicate,
        object=obj_text,
        facets=tuple(facets),
        doc_id=doc_id,
        sent_idx=sent_idx,
        source=sentence.text,
        subject_head=subj.index,
        object_head=object_head,
        object_mode=object_mode,
        object_pos=object_pos,
        facet_heads=tuple(facet_heads),
        subject_is_pronoun=subj.upos == "PRON",
    )


def _copula_assertion(
    sentence: Sentence,
    pred_head: Token,
    cop: Token,
    doc_id: str,
    sent_idx: int,
    rules: RoleRules,
) -> OpenAssertion | None:
    subj = _has_child(sentence, pred_head.index, SUBJECT_DEPS | PASSIVE_SUBJECT_DEPS)
    if subj is None and pred_head.deprel in ACL_DEPS and pred_head.head != 0:
        subj = sentence.token(pred_head.head)
    if subj is None:
        return None
    subject = _render_subject(sentence, subj.index)
    if not subject:
        return None
    negated = _is_negated(sentence, pred_head.index)
    neg_tokens = _negation_tokens(sentence, pred_head.index)

    facets: list[Facet] = []
    facet_heads: list[int | None] = []
    facet_children: set[int] = set()
    for child in sentence.children(pred_head.index):
        if child.index in neg_tokens:
            continue
        facet: Facet | None = None
        if child.deprel == "advmod":
            facet = _facet_from_adverb(sentence, child, rules)
        elif child.deprel in ADVCL_DEPS | CCOMP_DEPS:
            facet = _facet_from_clause(sentence, child, rules)
        elif child.deprel == "obl":
            facet = _facet_from_oblique(sentence, child, rules)
        elif child.deprel == "nmod":
            # keep of-attachments inside the complement; others become facets
            connector, _ = _case_text(sentence, child.index, CASE_DEPS)
            if connector and connector != "of":
                facet = _facet_from_oblique(sentence, child, rules)
        if facet is not None:
            facets.append(facet)
            facet_heads.append(child.index)
            facet_children.add(child.index)

    drop = (
        SUBJECT_DEPS
        | PASSIVE_SUBJECT_DEPS
        | COP_DEPS
        | AUX_DEPS
        | MARK_DEPS
        | ADVCL_DEPS
        | CCOMP_DEPS
        | frozenset({"advmod", "expl", "discourse", "parataxis"})
    )
    obj_text = render_phrase(
        sentence,
        pred_head.index,
        drop_deps=drop,
        drop_tokens=neg_tokens | frozenset(facet_children),
    )
    if not obj_text:
        return None
    mode = "passive" if pred_head.upos in ("VERB", "AUX") else "copula"
    predicate = "be not" if negated else "be"
    return OpenAssertion(
        subject=subject,
        predicate=predicate,
        object=obj_text,
        facets=tuple(facets),
        doc_id=doc_id,
        sent_idx=sent_idx,
        source=sentence.text,
        subject_head=subj.index,
        object_head=pred_head.index,
        object_mode=mode,
        object_pos=_object_category(pred_head, mode),
        facet_heads=tuple(facet_heads),
        subject_is_pronoun=subj.upos == "PRON",
    )


def extract_assertions(
    sentence: Sentence,
    doc_id: str = "",
    sent_idx: int = 0,
    rules: RoleRules = DEFAULT_ROLE_RULES,
) -> list[OpenAssertion]:
    """One candidate assertion per verb (or copular head) with a resolvable subject."""
    out: list[OpenAssertion] = []
    for tok in sentence.tokens:
        assertion: OpenAssertion | None = None
        cop = _has_child(sentence, tok.index, COP_DEPS)
        if cop is not None and _lemma_of(cop) == "be":
            assertion = _copula_assertion(sentence, tok, cop, doc_id, sent_idx, rules)
        elif tok.upos == "VERB" and tok.deprel not in AUX_DEPS | COP_DEPS:
            assertion = _verb_assertion(sentence, tok, doc_id, sent_idx, rules)
        elif (
            tok.upos == "AUX"
            and _lemma_of(tok) == "be"
            and tok.deprel not in AUX_DEPS | COP_DEPS
            and _has_child(sentence, tok.index, XCOMP_DEPS) is not None
        ):
            # legacy style: "be" as head with attr/acomp complement
            assertion = _legacy_be_assertion(sentence, tok, doc_id, sent_idx, rules)
        if assertion is not None:
            out.append(assertion)
    return out


def _legacy_be_assertion(sentence, verb, doc_id, sent_idx, rules) -> OpenAssertion | None:
    subj = _has_child(sentence, verb.index, SUBJECT_DEPS | PASSIVE_SUBJECT_DEPS)
    if subj is None:
        return None
    subject = _render_subject(sentence, subj.index)
    comp = _has_child(sentence, verb.index, XCOMP_DEPS)
    if not subject or comp is None:
        return None
    obj_text = render_phrase(sentence, comp.index)
    if not obj_text:
        return None
    negated = _is_negated(sentence, verb.index)
    facets: list[Facet] = []
    facet_heads: list[int | None] = []
    for child in sentence.children(verb.index):
        if child.deprel == "advmod" and _lemma_of(child) != "not":
            facet = _facet_from_adverb(sentence, child, rules)
            if facet:
                facets.append(facet)
                facet_heads.append(child.index)
        elif child.deprel in OBLIQUE_DEPS:
            facet = _facet_from_oblique(sentence, child, rules)
            if facet:
                facets.append(facet)
                facet_heads.append(child.index)
    return OpenAssertion(
        subject=subject,
        predicate="be not" if negated else "be",
        object=obj_text,
        facets=tuple(facets),
        doc_id=doc_id,
        sent_idx=sent_idx,
        source=sentence.text,
        subject_head=subj.index,
        object_head=comp.index,
        object_mode="copula",
        object_pos=_object_category(comp, "copula"),
        facet_heads=tuple(facet_heads),
        subject_is_pronoun=subj.upos == "PRON",
    )


# ---------------------------------------------------------------------------
# conjunction expansion


def _conj_children(sentence: Sentence, head: int) -> list[int]:
    return [c.index for c in sentence.children(head) if c.deprel == "conj"]


def _subject_variants(sentence: Sentence, a: OpenAssertion) -> list[tuple[str, bool]]:
    variants = [(a.subject, a.subject_is_pronoun)]
    for idx in _conj_children(sentence, a.subject_head):
        text = _render_subject(sentence, idx)
        if text:
            variants.append((text, sentence.token(idx).upos == "PRON"))
    return variants


def _object_variants(sentence: Sentence, a: OpenAssertion) -> list[tuple[str, str | None]]:
    variants = [(a.object, a.object_pos)]
    if a.object_head is None:
        return variants
    for idx in _conj_children(sentence, a.object_head):
        if a.object_mode == "passive":
            drop = (
                SUBJECT_DEPS
                | PASSIVE_SUBJECT_DEPS
                | AUX_DEPS
                | ADVCL_DEPS
                | frozenset({"advmod", "neg", "mark"})
            )
            text = render_phrase(sentence, idx, drop_deps=drop)
        elif a.object_mode == "absorbed":
            _, case_idx = _case_text(sentence, idx, CASE_DEPS)
            text = render_phrase(sentence, idx, drop_tokens=case_idx)
        else:
            text = render_phrase(sentence, idx)
        if text:
            tok = sentence.token(idx)
            variants.append((text, _object_category(tok, a.object_mode)))
    return variants


def _facet_variants(sentence: Sentence, facet: Facet, head: int | None) -> list[Facet]:
    variants = [facet]
    if head is None:
        return variants
    for idx in _conj_children(sentence, head):
        _, mark_idx = _case_text(sentence, idx, MARK_DEPS | CASE_DEPS)
        text = render_phrase(sentence, idx, drop_tokens=mark_idx)
        if text:
            variants.append(Facet(facet.connector, text, facet.role))
    return variants


# bound on the cartesian growth of one candidate under conjunction expansion
MAX_EXPANSIONS = 64


def expand_conjunctions(
    raw: list[OpenAssertion], sentence: Sentence
) -> list[OpenAssertion]:
    """Distribute conj-linked subjects, objects and facet values into assertions."""
    out: list[OpenAssertion] = []
    for a in raw:
        subject_vs = _subject_variants(sentence, a)
        object_vs = _object_variants(sentence, a)
        facet_vs = [
            _facet_variants(sentence, facet, head)
            for facet, head in zip(a.facets, a.facet_heads)
        ]

        def emit(subject: str, s_pron: bool, obj: str, obj_pos: str | None, facets: tuple[Facet, ...]):
            out.append(
                replace(
                    a,
                    subject=subject,
                    subject_is_pronoun=s_pron,
                    object=obj,
                    object_pos=obj_pos,
                    facets=facets,
                    facet_heads=tuple([None] * len(facets)),
                )
            )

        combos: list[tuple[Facet, ...]] = [()]
        for variants in facet_vs:
            combos = [prior + (v,) for prior in combos for v in variants]
        emitted = 0
        for subject, s_pron in subject_vs:
            for obj, obj_pos in object_vs:
                for facets in combos:
                    emit(subject, s_pron, obj, obj_pos, facets)
                    emitted += 1
                    if emitted >= MAX_EXPANSIONS:
                        break
                if emitted >= MAX_EXPANSIONS:
                    break
            if emitted >= MAX_EXPANSIONS:
                break
    return out


def extract_sentence(
    sentence: Sentence,
    doc_id: str = "",
    sent_idx: int = 0,
    rules: RoleRules = DEFAULT_ROLE_RULES,
) -> list[OpenAssertion]:
    """Extraction followed by conjunction expansion (the full per-sentence rule set)."""
    return expand_conjunctions(
        extract_assertions(sentence, doc_id, sent_idx, rules), sentence
    )

"""CoNLL-U reading, writing and tree accessors."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO


class ConlluError(ValueError):
    """Raised for malformed CoNLL-U input (bad columns, bad trees)."""


N_COLUMNS = 10

# deprels that extend a noun chunk to the left of its head
_CHUNK_DEPS = frozenset({"det", "amod", "compound", "nmod:poss", "poss", "nummod"})
# a noun carrying one of these deprels belongs to a following noun's chunk
_CHUNK_INNER = frozenset({"compound", "nmod:poss", "poss", "nummod"})


def _parse_misc(raw: str) -> dict[str, str]:
    if raw in ("", "_"):
        return {}
    out: dict[str, str] = {}
    for item in raw.split("|"):
        key, sep, value = item.partition("=")
        out[key] = value if sep else ""
    return out


def _format_misc(misc: dict[str, str]) -> str:
    if not misc:
        return "_"
    return "|".join(f"{k}={v}" if v != "" else k for k, v in misc.items())


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str
    xpos: str = "_"
    feats: str = "_"
    deps: str = "_"
    misc: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.index < 1:
            raise ConlluError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ConlluError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ConlluError(f"token {self.index} has itself as head")
        if not self.form:
            raise ConlluError(f"token {self.index} has empty form")
        if not self.deprel:
            raise ConlluError(f"token {self.index} has empty deprel")

    @property
    def ner(self) -> str | None:
        tag = self.misc.get("NER")
        return tag or None

    @property
    def space_after(self) -> bool:
        return self.misc.get("SpaceAfter") != "No"


class Sentence:
    """An ordered, validated dependency tree over tokens."""

    __slots__ = ("tokens", "text", "_children")

    def __init__(self, tokens: Iterable[Token], text: str | None = None):
        self.tokens: tuple[Token, ...] = tuple(tokens)
        if not self.tokens:
            raise ConlluError("sentence has no tokens")
        n = len(self.tokens)
        children: dict[int, list[int]] = {i: [] for i in range(0, n + 1)}
        roots = []
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.index != pos:
                raise ConlluError(f"token ids not consecutive at position {pos}")
            if tok.head > n:
                raise ConlluError(
                    f"token {tok.index} head {tok.head} out of range (n={n})"
                )
            children[tok.head].append(tok.index)
            if tok.head == 0:
                roots.append(tok.index)
        if len(roots) != 1:
            raise ConlluError(f"sentence must have exactly one root, got {len(roots)}")
        # reachability from the root proves the head links form a tree
        seen: set[int] = set()
        stack = [roots[0]]
        while stack:
            i = stack.pop()
            if i in seen:
                raise ConlluError(f"cycle in head links at token {i}")
            seen.add(i)
            stack.extend(children[i])
        if len(seen) != n:
            raise ConlluError("head links contain a cycle: not all tokens reachable")
        self._children = children
        self.text = text if text is not None else self.detokenize(1, n)

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, index: int) -> Token:
        return self.tokens[index - 1]

    @property
    def root(self) -> Token:
        return self.token(self._children[0][0])

    def children(self, index: int) -> list[Token]:
        return [self.token(i) for i in self._children[index]]

    def subtree(self, index: int, skip: frozenset[int] = frozenset()) -> list[int]:
        """Token indices of the subtree at `index`, surface order, minus `skip` subtrees."""
        out = []
        stack = [index]
        while stack:
            i = stack.pop()
            if i in skip:
                continue
            out.append(i)
            stack.extend(self._children[i])
        return sorted(out)

    def detokenize(self, start: int, end: int) -> str:
        parts = []
        for i in range(start, end + 1):
            tok = self.token(i)
            parts.append(tok.form)
            if tok.space_after and i != end:
                parts.append(" ")
        return "".join(parts)


@dataclass
class Document:
    id: str
    sentences: list[Sentence] = field(default_factory=list)
    url: str | None = None
    timestamp: str | None = None

    def text(self) -> str:
        return " ".join(s.text for s in self.sentences)


def _lines(source: str | TextIO | Iterable[str]) -> Iterator[str]:
    if isinstance(source, str):
        return iter(io.StringIO(source))
    return iter(source)


def parse_conllu(source: str | TextIO | Iterable[str]) -> list[Document]:
    """Parse CoNLL-U text into documents.

    Documents start at `# newdoc id = ...` comments; `# text`, `# url` and
    `# timestamp` comments are honored. Multiword-token ranges (i-j) and
    empty nodes (i.j) are skipped. NER tags ride in MISC as `NER=...`.
    """
    docs: list[Document] = []
    doc: Document | None = None
    rows: list[Token] = []
    text: str | None = None
    first_line = 0

    def ensure_doc() -> Document:
        nonlocal doc
        if doc is None:
            doc = Document(id=f"doc{len(docs) + 1}")
            docs.append(doc)
        return doc

    def flush(line_no: int):
        nonlocal rows, text, first_line
        if not rows:
            text = None
            return
        where = f"lines {first_line}-{line_no}"
        if doc is not None:
            where = f"document {doc.id!r}, {where}"
        try:
            sent = Sentence(rows, text=text)
        except ConlluError as exc:
            raise ConlluError(f"bad sentence at {where}: {exc}") from None
        ensure_doc().sentences.append(sent)
        rows, text = [], None

    line_no = 0
    for line_no, line in enumerate(_lines(source), start=1):
        line = line.rstrip("\n")
        if not line.strip():
            flush(line_no)
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition("=")
            key, value = key.strip(), value.strip()
            if key == "newdoc id" or (key == "newdoc" and not sep):
                flush(line_no)
                doc = Document(id=value if sep else f"doc{len(docs) + 1}")
                docs.append(doc)
            elif key == "text" and sep:
                text = value
            elif key == "url" and sep and doc is not None:
                doc.url = value
            elif key == "timestamp" and sep and doc is not None:
                doc.timestamp = value
            continue
        cols = line.split("\t")
        if len(cols) != N_COLUMNS:
            raise ConlluError(f"line {line_no}: expected {N_COLUMNS} columns, got {len(cols)}")
        if "-" in cols[0] or "." in cols[0]:
            continue
        if not rows:
            first_line = line_no
        try:
            index = int(cols[0])
            head = int(cols[6])
        except ValueError:
            raise ConlluError(f"line {line_no}: non-integer id or head") from None
        try:
            rows.append(
                Token(
                    index=index,
                    form=cols[1],
                    lemma=cols[2],
                    upos=cols[3],
                    xpos=cols[4],
                    feats=cols[5],
                    head=head,
                    deprel=cols[7],
                    deps=cols[8],
                    misc=_parse_misc(cols[9]),
                )
            )
        except ConlluError as exc:
            raise ConlluError(f"line {line_no}: {exc}") from None
    flush(line_no + 1)
    ids = [d.id for d in docs]
    if len(set(ids)) != len(ids):
        raise ConlluError("duplicate document ids in corpus")
    return docs


def serialize(docs: Iterable[Document]) -> str:
    """Write documents back out as CoNLL-U (inverse of parse_conllu on token fields)."""
    out: list[str] = []
    for doc in docs:
        out.append(f"# newdoc id = {doc.id}")
        if doc.url is not None:
            out.append(f"# url = {doc.url}")
        if doc.timestamp is not None:
            out.append(f"# timestamp = {doc.timestamp}")
        for sent in doc.sentences:
            out.append(f"# text = {sent.text}")
            for t in sent.tokens:
                out.append(
                    "\t".join(
                        (
                            str(t.index),
                            t.form,
                            t.lemma,
                            t.upos,
                            t.xpos,
                            t.feats,
                            str(t.head),
                            t.deprel,
                            t.deps,
                            _format_misc(t.misc),
                        )
                    )
                )
            out.append("")
    return "\n".join(out) + ("\n" if out else "")


def noun_chunks(sentence: Sentence) -> list[tuple[int, int]]:
    """Contiguous noun-headed spans, extended left over det/amod/compound/poss/nummod.

    Nouns that attach to a following noun via a chunk-internal relation are
    swallowed by that noun's chunk. Spans never overlap.
    """
    spans: list[tuple[int, int]] = []
    last_end = 0
    for tok in sentence.tokens:
        if tok.upos not in ("NOUN", "PROPN"):
            continue
        if tok.deprel in _CHUNK_INNER and tok.head > tok.index:
            head = sentence.token(tok.head)
            if head.upos in ("NOUN", "PROPN"):
                continue
        start = tok.index
        for child in sentence.children(tok.index):
            if child.deprel in _CHUNK_DEPS and child.index < tok.index:
                start = min(start, sentence.subtree(child.index)[0])
        start = max(start, last_end + 1)
        if start <= tok.index:
            spans.append((start, tok.index))
            last_end = tok.index
    return spans

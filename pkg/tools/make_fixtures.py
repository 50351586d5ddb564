#!/usr/bin/env python3
"""Regenerate the static test fixtures under tests/data.

Every parse tree, vector and score here is hand-built; nothing is computed
with the package under test. Sentence templates are assigned to documents so
that stage-by-stage hand counts (documented in tests/test_pipeline.py and
tests/test_acceptance.py) come out exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"

# ---------------------------------------------------------------------------
# sentence templates: (name, text, rows); row = (form, lemma, upos, head, deprel, misc)

S = {}

S["eat"] = (
    "Elephants eat grass.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("eat", "eat", "VERB", 0, "root", None),
        ("grass", "grass", "NOUN", 2, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["feed"] = (
    "Elephants feed on grass.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("feed", "feed", "VERB", 0, "root", None),
        ("on", "on", "ADP", 4, "case", None),
        ("grass", "grass", "NOUN", 2, "obl", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["fruit"] = (
    "Elephants eat fruit.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("eat", "eat", "VERB", 0, "root", None),
        ("fruit", "fruit", "NOUN", 2, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["trunks"] = (
    "Elephants have trunks.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("have", "have", "VERB", 0, "root", None),
        ("trunks", "trunk", "NOUN", 2, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["intelligent"] = (
    "Elephants are intelligent.",
    [
        ("Elephants", "elephant", "NOUN", 3, "nsubj", None),
        ("are", "be", "AUX", 3, "cop", None),
        ("intelligent", "intelligent", "ADJ", 0, "root", "SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["mammal"] = (
    "An elephant is a large mammal.",
    [
        ("An", "a", "DET", 2, "det", None),
        ("elephant", "elephant", "NOUN", 6, "nsubj", None),
        ("is", "be", "AUX", 6, "cop", None),
        ("a", "a", "DET", 6, "det", None),
        ("large", "large", "ADJ", 6, "amod", None),
        ("mammal", "mammal", "NOUN", 0, "root", "SpaceAfter=No"),
        (".", ".", "PUNCT", 6, "punct", None),
    ],
)

S["pets"] = (
    "Elephants are good pets.",
    [
        ("Elephants", "elephant", "NOUN", 4, "nsubj", None),
        ("are", "be", "AUX", 4, "cop", None),
        ("good", "good", "ADJ", 4, "amod", None),
        ("pets", "pet", "NOUN", 0, "root", "SpaceAfter=No"),
        (".", ".", "PUNCT", 4, "punct", None),
    ],
)

S["wild"] = (
    "Elephants live in the wild.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("live", "live", "VERB", 0, "root", None),
        ("in", "in", "ADP", 5, "case", None),
        ("the", "the", "DET", 5, "det", None),
        ("wild", "wild", "NOUN", 2, "obl", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["africa"] = (
    "Elephants often eat grass in Africa.",
    [
        ("Elephants", "elephant", "NOUN", 3, "nsubj", None),
        ("often", "often", "ADV", 3, "advmod", None),
        ("eat", "eat", "VERB", 0, "root", None),
        ("grass", "grass", "NOUN", 3, "obj", None),
        ("in", "in", "ADP", 6, "case", None),
        ("Africa", "Africa", "PROPN", 3, "obl", "NER=LOC|SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["hunted"] = (
    "Elephants are hunted by poachers.",
    [
        ("Elephants", "elephant", "NOUN", 3, "nsubj:pass", None),
        ("are", "be", "AUX", 3, "aux:pass", None),
        ("hunted", "hunt", "VERB", 0, "root", None),
        ("by", "by", "ADP", 5, "case", None),
        ("poachers", "poacher", "NOUN", 3, "obl", "SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["herd"] = (
    "An elephant is a part of a herd.",
    [
        ("An", "a", "DET", 2, "det", None),
        ("elephant", "elephant", "NOUN", 5, "nsubj", None),
        ("is", "be", "AUX", 5, "cop", None),
        ("a", "a", "DET", 5, "det", None),
        ("part", "part", "NOUN", 0, "root", None),
        ("of", "of", "ADP", 8, "case", None),
        ("a", "a", "DET", 8, "det", None),
        ("herd", "herd", "NOUN", 5, "nmod", "SpaceAfter=No"),
        (".", ".", "PUNCT", 5, "punct", None),
    ],
)

S["symbol"] = (
    "The elephant is a symbol of strength.",
    [
        ("The", "the", "DET", 2, "det", None),
        ("elephant", "elephant", "NOUN", 5, "nsubj", None),
        ("is", "be", "AUX", 5, "cop", None),
        ("a", "a", "DET", 5, "det", None),
        ("symbol", "symbol", "NOUN", 0, "root", None),
        ("of", "of", "ADP", 7, "case", None),
        ("strength", "strength", "NOUN", 5, "nmod", "SpaceAfter=No"),
        (".", ".", "PUNCT", 5, "punct", None),
    ],
)

S["baby"] = (
    "A baby elephant drinks milk.",
    [
        ("A", "a", "DET", 3, "det", None),
        ("baby", "baby", "NOUN", 3, "compound", None),
        ("elephant", "elephant", "NOUN", 4, "nsubj", None),
        ("drinks", "drink", "VERB", 0, "root", None),
        ("milk", "milk", "NOUN", 4, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 4, "punct", None),
    ],
)

S["african"] = (
    "African elephants have large ears.",
    [
        ("African", "african", "ADJ", 2, "amod", None),
        ("elephants", "elephant", "NOUN", 3, "nsubj", None),
        ("have", "have", "VERB", 0, "root", None),
        ("large", "large", "ADJ", 5, "amod", None),
        ("ears", "ear", "NOUN", 3, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["diet"] = (
    "The elephant's diet consists of grasses.",
    [
        ("The", "the", "DET", 2, "det", None),
        ("elephant", "elephant", "NOUN", 4, "nmod:poss", "SpaceAfter=No"),
        ("'s", "'s", "PART", 2, "case", None),
        ("diet", "diet", "NOUN", 5, "nsubj", None),
        ("consists", "consist", "VERB", 0, "root", None),
        ("of", "of", "ADP", 7, "case", None),
        ("grasses", "grass", "NOUN", 5, "obl", "SpaceAfter=No"),
        (".", ".", "PUNCT", 5, "punct", None),
    ],
)

S["night"] = (
    "Elephants sleep at night.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("sleep", "sleep", "VERB", 0, "root", None),
        ("at", "at", "ADP", 4, "case", None),
        ("night", "night", "NOUN", 2, "obl", "NER=TIME|SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["perform"] = (
    "Circus elephants sometimes perform tricks.",
    [
        ("Circus", "circus", "NOUN", 2, "compound", None),
        ("elephants", "elephant", "NOUN", 4, "nsubj", None),
        ("sometimes", "sometimes", "ADV", 4, "advmod", None),
        ("perform", "perform", "VERB", 0, "root", None),
        ("tricks", "trick", "NOUN", 4, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 4, "punct", None),
    ],
)

S["always"] = (
    "Elephants always remember places.",
    [
        ("Elephants", "elephant", "NOUN", 3, "nsubj", None),
        ("always", "always", "ADV", 3, "advmod", None),
        ("remember", "remember", "VERB", 0, "root", None),
        ("places", "place", "NOUN", 3, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["url"] = (
    "Elephants like http://elephants.example.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("like", "like", "VERB", 0, "root", None),
        ("http://elephants.example", "http://elephants.example", "X", 2, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["metal"] = (
    "Elephants eat metal.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("eat", "eat", "VERB", 0, "root", None),
        ("metal", "metal", "NOUN", 2, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["quant"] = (
    "All elephants need water.",
    [
        ("All", "all", "DET", 2, "det", None),
        ("elephants", "elephant", "NOUN", 3, "nsubj", None),
        ("need", "need", "VERB", 0, "root", None),
        ("water", "water", "NOUN", 3, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["male"] = (
    "Male elephants fight.",
    [
        ("Male", "male", "ADJ", 2, "amod", None),
        ("elephants", "elephant", "NOUN", 3, "nsubj", None),
        ("fight", "fight", "VERB", 0, "root", "SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["female"] = (
    "Female elephants protect calves.",
    [
        ("Female", "female", "ADJ", 2, "amod", None),
        ("elephants", "elephant", "NOUN", 3, "nsubj", None),
        ("protect", "protect", "VERB", 0, "root", None),
        ("calves", "calf", "NOUN", 3, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 3, "punct", None),
    ],
)

S["bathe"] = (
    "Elephants bathe in rivers to cool off.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("bathe", "bathe", "VERB", 0, "root", None),
        ("in", "in", "ADP", 4, "case", None),
        ("rivers", "river", "NOUN", 2, "obl", None),
        ("to", "to", "PART", 6, "mark", None),
        ("cool", "cool", "VERB", 2, "advcl", None),
        ("off", "off", "ADP", 6, "compound:prt", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["use"] = (
    "Elephants use their trunks to pick up objects and drink water.",
    [
        ("Elephants", "elephant", "NOUN", 2, "nsubj", None),
        ("use", "use", "VERB", 0, "root", None),
        ("their", "they", "PRON", 4, "nmod:poss", None),
        ("trunks", "trunk", "NOUN", 2, "obj", None),
        ("to", "to", "PART", 6, "mark", None),
        ("pick", "pick", "VERB", 2, "advcl", None),
        ("up", "up", "ADP", 6, "compound:prt", None),
        ("objects", "object", "NOUN", 6, "obj", None),
        ("and", "and", "CCONJ", 10, "cc", None),
        ("drink", "drink", "VERB", 6, "conj", None),
        ("water", "water", "NOUN", 10, "obj", "SpaceAfter=No"),
        (".", ".", "PUNCT", 2, "punct", None),
    ],
)

S["their"] = (
    "Their trunks are long.",
    [
        ("Their", "they", "PRON", 2, "nmod:poss", None),
        ("trunks", "trunk", "NOUN", 4, "nsubj", None),
        ("are", "be", "AUX", 4, "cop", None),
        ("long", "long", "ADJ", 0, "root", "SpaceAfter=No"),
        (".", ".", "PUNCT", 4, "punct", None),
    ],
)

# ---------------------------------------------------------------------------
# document plan; (sentences, on_topic). d17 has only 2 primary-subject
# assertions (count gate); d18 is off-topic (similarity gate).

PLAN = {
    "d01": (["eat", "feed", "trunks", "always"], True),
    "d02": (["eat", "fruit", "intelligent", "url"], True),
    "d03": (["eat", "trunks", "mammal", "metal"], True),
    "d04": (["africa", "feed", "wild", "quant"], True),
    "d05": (["africa", "fruit", "hunted", "male"], True),
    "d06": (["feed", "trunks", "herd", "metal", "female"], True),
    "d07": (["fruit", "intelligent", "symbol", "quant", "bathe"], True),
    "d08": (["eat", "trunks", "mammal", "baby", "male"], True),
    "d09": (["intelligent", "pets", "metal", "african", "female"], True),
    "d10": (["mammal", "pets", "quant", "bathe", "diet"], True),
    "d11": (["pets", "wild", "night", "male", "diet"], True),
    "d12": (["wild", "hunted", "female", "night"], True),
    "d13": (["hunted", "herd", "bathe", "perform"], True),
    "d14": (["herd", "symbol", "always", "perform"], True),
    "d15": (["symbol", "url", "always", "baby"], True),
    "d16": (["hunted", "wild", "url", "baby", "african", "perform"], True),
    "d17": (["eat", "wild", "african"], True),
    "d18": (["eat", "fruit", "trunks", "hunted", "metal"], False),
    "d19": (["use", "intelligent", "mammal"], True),
    "d20": (["trunks", "wild", "hunted", "night", "african", "diet", "their"], True),
}

# sentences contributing one assertion with primary subject "elephant"
# ("use" contributes two); used only for the sanity check below
PRIMARY_SENTENCES = {
    "eat", "feed", "fruit", "trunks", "intelligent", "mammal", "pets", "wild",
    "africa", "hunted", "herd", "symbol", "night", "always", "url", "metal",
    "quant", "bathe",
}


def sentence_block(name: str) -> str:
    text, rows = S[name]
    lines = [f"# text = {text}"]
    for i, (form, lemma, upos, head, deprel, misc) in enumerate(rows, start=1):
        lines.append(
            "\t".join(
                (str(i), form, lemma, upos, "_", "_", str(head), deprel, "_", misc or "_")
            )
        )
    return "\n".join(lines)


def doc_text(names: list[str]) -> str:
    return " ".join(S[name][0] for name in names)


def write_corpus():
    blocks = []
    for doc_id, (names, _) in PLAN.items():
        blocks.append(f"# newdoc id = {doc_id}")
        blocks.append(f"# url = https://example.org/{doc_id}")
        blocks.append(f"# timestamp = 2020-01-{int(doc_id[1:]):02d}T00:00:00Z")
        for name in names:
            blocks.append(sentence_block(name))
            blocks.append("")
    (OUT / "corpus.conllu").write_text("\n".join(blocks) + "\n", encoding="utf-8")

    single = [
        "# newdoc id = openie-example",
        sentence_block("use"),
        "",
    ]
    (OUT / "openie_example.conllu").write_text("\n".join(single) + "\n", encoding="utf-8")


def check_plan():
    for doc_id, (names, on_topic) in PLAN.items():
        n = sum(1 for name in names if name in PRIMARY_SENTENCES)
        n += 2 * names.count("use")
        if doc_id == "d17":
            assert n == 2, (doc_id, n)
        elif doc_id == "d18":
            assert n >= 3 and not on_topic, (doc_id, n)
        else:
            assert 3 <= n <= 40, (doc_id, n)


# ---------------------------------------------------------------------------
# embeddings


def basis(dim: int, index: int) -> list[float]:
    vec = [0.0] * dim
    vec[index] = 1.0
    return vec


def rotated(dim: int, index: int, other: int, angle: float) -> list[float]:
    vec = [0.0] * dim
    vec[index] = math.cos(angle)
    vec[other] = math.sin(angle)
    return vec


def write_tsv(path: Path, rows: list[tuple[str, list[float]]]):
    with open(path, "w", encoding="utf-8") as f:
        for key, vec in rows:
            f.write(key + "\t" + " ".join(repr(v) for v in vec) + "\n")


def write_triple_embeddings():
    dim = 28
    keys = [
        "elephant eat grass",            # 0, paired with "feed on"
        "elephant eat fruit",            # 1
        "elephant have trunks",          # 2
        "elephant be intelligent",       # 3
        "elephant be large mammal",      # 4
        "elephant be good pets",         # 5
        "elephant live in wild",         # 6
        "elephant be hunted by poachers",  # 7
        "elephant be part of a herd",    # 8
        "elephant be symbol of strength",  # 9
        "elephant sleep",                # 10
        "elephant remember places",      # 11
        "elephant like http://elephants.example",  # 12
        "elephant eat metal",            # 13
        "elephant need water",           # 14
        "elephant bathe in rivers",      # 15
        "elephant use their trunks",     # 16 (thresholded out; present for safety)
        "african elephants have large ears",  # 17
        "baby elephant drink milk",      # 18
        "circus elephants perform tricks",  # 19
        "male elephants fight",          # 20
        "female elephants protect calves",  # 21
        "elephant diet consist of grasses",  # 22
        "african elephants",             # 23 (subgroup phrases)
        "baby elephant",                 # 24
        "circus elephants",              # 25
        "male elephants",                # 26, paired with "female elephants"
    ]
    rows = [(key, basis(dim, i)) for i, key in enumerate(keys)]
    # paraphrase neighbor: tiny angle so weighted Ward distance stays under 0.5
    rows.append(("elephant feed on grass", rotated(dim, 0, 27, 0.03)))
    # near-identical male/female phrases: separated only by the antonym rule
    rows.append(("female elephants", rotated(dim, 26, 27, 0.1)))
    write_tsv(OUT / "triple_embeddings.tsv", rows)


def write_word_embeddings():
    dim = 12
    words = ["often", "in", "africa", "at", "night", "sometimes", "always",
             "to", "cool", "off", "by"]
    rows = [(w, basis(dim, i)) for i, w in enumerate(words)]
    write_tsv(OUT / "word_embeddings.tsv", rows)


def write_doc_embeddings():
    dim = 4
    rows = [("elephant", basis(dim, 0))]
    for doc_id, (names, on_topic) in PLAN.items():
        vec = [0.8, 0.6, 0.0, 0.0] if on_topic else basis(dim, 2)
        rows.append((doc_text(names), vec))
    write_tsv(OUT / "doc_embeddings.tsv", rows)


# ---------------------------------------------------------------------------
# scores

PERPLEXITIES = {
    "Elephant can eat grass.": 45.0,
    "Elephant can eat fruit.": 50.0,
    "Elephant has trunks.": 40.0,
    "Elephant is intelligent.": 30.0,
    "Elephant is a large mammal.": 25.0,
    "Elephant is a good pets.": 100.0,
    "Elephant is located in wild.": 80.0,
    "Elephant is hunted by poachers.": 60.0,
    "Elephant is part of herd.": 70.0,
    "Elephant is a symbol of strength.": 35.0,
    "Elephant can sleep.": 90.0,
    "Elephant can remember places.": 85.0,
    # the URL assertion's sentence is intentionally absent (missing-score path)
    "Elephant can eat metal.": 600.0,
    "Elephant requires water.": 55.0,
    "Elephant can bathe in rivers.": 65.0,
    "African elephants has large ears.": 75.0,
    "Baby elephant can drink milk.": 45.0,
    "Circus elephants can perform tricks.": 50.0,
    "Male elephants can fight.": 55.0,
    "Female elephants can protect calves.": 60.0,
    "Elephant diet is made of grasses.": 70.0,
}


def write_scores():
    with open(OUT / "perplexity.tsv", "w", encoding="utf-8") as f:
        for key, score in PERPLEXITIES.items():
            f.write(f"{key}\t{score}\n")
    with open(OUT / "polarity.tsv", "w", encoding="utf-8") as f:
        for name in sorted(S):
            text = S[name][0]
            if name == "hunted":
                f.write(f"{text}\t0.05 0.15 0.8\n")
            else:
                f.write(f"{text}\t0.1 0.8 0.1\n")


def write_reference_isa():
    rows = [
        {"s": "elephant", "rel": "IsA", "o": "placental mammal"},
        {"s": "elephant", "rel": "IsA", "o": "animal"},
    ]
    with open(OUT / "reference_isa.jsonl", "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row) + "\n")


def write_subjects():
    (OUT / "subjects.json").write_text(
        json.dumps({"elephant": {"lemmas": ["elephants"]}}, indent=1) + "\n",
        encoding="utf-8",
    )


def write_antonyms():
    (OUT / "antonyms.txt").write_text("male female\nbaby adult\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# recall harness fixture (independent of the corpus fixture)


def write_recall_fixture():
    kb_rows = [
        {"s": "elephant", "rel": "CapableOf", "o": "eat grass", "facets": [],
         "freq": 9, "saliency": 1.0, "typicality": 0.71, "stype": "primary"},
        {"s": "elephant", "rel": "CapableOf", "o": "swim", "facets": [],
         "freq": 3, "saliency": 0.0, "typicality": 0.25, "stype": "primary"},
        {"s": "elephant", "rel": "HasA", "o": "trunks", "facets": [],
         "freq": 5, "saliency": 0.46, "typicality": 0.45, "stype": "primary"},
    ]
    with open(OUT / "recall_kb.jsonl", "w", encoding="utf-8") as f:
        for row in kb_rows:
            f.write(json.dumps(row) + "\n")

    gt = [
        "Elephant can eat grass.",      # identical to a lexicalization
        "Elephants are able to swim.",  # cosine 0.97 to "Elephant can swim."
        "Elephants can fly.",           # matches nothing
    ]
    (OUT / "gt_sentences.txt").write_text("\n".join(gt) + "\n", encoding="utf-8")

    dim = 8
    sim = 0.97
    rows = [
        ("Elephant can eat grass.", basis(dim, 0)),
        ("Elephant can swim.", basis(dim, 1)),
        ("Elephant has trunks.", basis(dim, 2)),
        ("Elephants are able to swim.",
         [0.0, sim, 0.0, math.sqrt(1 - sim * sim), 0.0, 0.0, 0.0, 0.0]),
        ("Elephants can fly.", basis(dim, 4)),
    ]
    write_tsv(OUT / "recall_embeddings.tsv", rows)


def write_config():
    config = """\
corpus = "corpus.conllu"
subjects = "subjects.json"
out_dir = "out"
workers = 1

[embeddings]
triples = "triple_embeddings.tsv"
words = "word_embeddings.tsv"
docs = "doc_embeddings.tsv"

[scores]
perplexity = "perplexity.tsv"
polarity = "polarity.tsv"

[cleaning]
reference_isa = "reference_isa.jsonl"

[extraction]
antonyms = "antonyms.txt"
"""
    (OUT / "config.toml").write_text(config, encoding="utf-8")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    check_plan()
    write_corpus()
    write_triple_embeddings()
    write_word_embeddings()
    write_doc_embeddings()
    write_scores()
    write_reference_isa()
    write_subjects()
    write_antonyms()
    write_recall_fixture()
    write_config()
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()

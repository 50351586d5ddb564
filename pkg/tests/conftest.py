import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def corpus_docs():
    from cskb.conllu import parse_conllu

    with open(DATA / "corpus.conllu", encoding="utf-8") as f:
        return parse_conllu(f)


@pytest.fixture(scope="session")
def openie_sentence():
    from cskb.conllu import parse_conllu

    with open(DATA / "openie_example.conllu", encoding="utf-8") as f:
        return parse_conllu(f)[0].sentences[0]


def make_sentence(rows, text=None):
    """Build a Sentence from (form, lemma, upos, head, deprel[, misc]) rows."""
    from cskb.conllu import Sentence, Token

    tokens = []
    for i, row in enumerate(rows, start=1):
        misc = {}
        if len(row) == 6 and row[5]:
            misc = dict(
                item.split("=", 1) if "=" in item else (item, "")
                for item in row[5].split("|")
            )
        form, lemma, upos, head, deprel = row[:5]
        tokens.append(
            Token(
                index=i, form=form, lemma=lemma, upos=upos,
                head=head, deprel=deprel, misc=misc,
            )
        )
    return Sentence(tokens, text=text)

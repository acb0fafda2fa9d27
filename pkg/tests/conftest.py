from pathlib import Path

import pytest

from tenseval.lexicon import default_lexicon

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def gold_rows():
    """(sentence, expected label string) pairs of the English gold suite."""
    rows = []
    for line in (DATA_DIR / "gold_sentences.tsv").read_text("utf-8").splitlines():
        if line.strip():
            text, label = line.split("\t")
            rows.append((text, label))
    return rows


@pytest.fixture(scope="session")
def french_rows():
    """(sentence, expected tense names) pairs of the French gold suite."""
    rows = []
    for line in (DATA_DIR / "french_sentences.tsv").read_text("utf-8").splitlines():
        if line.strip():
            text, stated = line.split("\t")
            rows.append((text, stated.split("+")))
    return rows


@pytest.fixture(scope="session")
def gold_annotation_path():
    return DATA_DIR / "gold_annotations.txt"

from pathlib import Path

import pytest

from dispositions.corpus import Corpus, load_corpus_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def demo_corpus() -> Corpus:
    return load_corpus_file(FIXTURES / "demo-corpus.json")


@pytest.fixture(scope="session")
def synthetic_corpus() -> Corpus:
    return load_corpus_file(FIXTURES / "synthetic-corpus.json")


@pytest.fixture
def postoffice(demo_corpus):
    return demo_corpus.scenario("postoffice")


@pytest.fixture
def fruits(demo_corpus):
    return demo_corpus.scenario("fruits")

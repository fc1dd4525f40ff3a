from importlib.resources import files

import pytest

from ppanaphora.harness import io
from ppanaphora.model import DiscourseState

DATA = files("ppanaphora") / "data"

# filled by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def data_bytes(name: str) -> bytes:
    return (DATA / name).read_bytes()


def data_path(name: str) -> str:
    return str(DATA / name)


@pytest.fixture(scope="session")
def lex():
    return io.load_lexicon(data_bytes("lexicon.json"))


@pytest.fixture(scope="session")
def rules(lex):
    return io.load_rules(data_bytes("rules.json"), lex)


@pytest.fixture(scope="session")
def corpus(lex):
    return {d.id: d for d in io.load_corpus(data_bytes("corpus.json"), lex)}


@pytest.fixture(scope="session")
def extra_docs(lex):
    docs = io.load_corpus(data_bytes("cycle.json"), lex)
    docs += io.load_corpus(data_bytes("discourse.json"), lex)
    return {d.id: d for d in docs}


@pytest.fixture
def ex1(corpus):
    return corpus["ex1"].sentences[0].copy()


@pytest.fixture
def ex2(corpus):
    return corpus["ex2"].sentences[0].copy()


@pytest.fixture
def chain(corpus):
    return corpus["chain"].sentences[0].copy()


@pytest.fixture
def cyclic(extra_docs):
    return extra_docs["cycle"].sentences[0].copy()


@pytest.fixture
def empty_discourse():
    return DiscourseState()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

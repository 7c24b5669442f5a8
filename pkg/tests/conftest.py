from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from nleibniz import generate
from nleibniz.linalg import RatMatrix
from nleibniz.model import parse_any

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CORPUS = Path(generate.__file__).parent / "corpus"


def corpus_path(name: str) -> Path:
    return CORPUS / f"{name}.json"


def load(name: str):
    return parse_any(corpus_path(name).read_bytes())


VALID_ALGEBRAS = sorted(generate.VALID_ALGEBRAS)
BROKEN_ALGEBRAS = sorted(generate.BROKEN_ALGEBRAS)
VALID_TRIPLES = sorted(generate.VALID_TRIPLES)
BROKEN_TRIPLES = sorted(generate.BROKEN_TRIPLES)
ALL_ALGEBRAS = VALID_ALGEBRAS + BROKEN_ALGEBRAS


@pytest.fixture(scope="session")
def a4():
    return load("a4_euclidean")


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def vectors(dim):
    return st.lists(rationals, min_size=dim, max_size=dim).map(tuple)


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    entries = draw(st.lists(rationals, min_size=r * c, max_size=r * c))
    return RatMatrix(r, c, entries)


@st.composite
def invertible(draw, n):
    m = draw(matrices(n, n))
    from nleibniz import linalg

    if linalg.rank(m) != n:
        # shift towards the identity until invertible; always terminates
        k = Fraction(1)
        while linalg.rank(m + RatMatrix.identity(n) * k) != n:
            k += 1
        m = m + RatMatrix.identity(n) * k
    return m


def random_vector(rng, dim, spread=3):
    return tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(dim))


# -- acceptance ledger: one PASS/FAIL line per criterion, printed at the end

ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def criterion():
    @contextmanager
    def _criterion(number: int, title: str):
        try:
            yield
        except BaseException:
            ACCEPTANCE_LINES[number] = f"FAIL criterion {number}: {title}"
            print(ACCEPTANCE_LINES[number])
            raise
        # a parametrized criterion stays FAIL once any case failed
        ACCEPTANCE_LINES.setdefault(number, f"PASS criterion {number}: {title}")
        print(ACCEPTANCE_LINES[number])

    return _criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])

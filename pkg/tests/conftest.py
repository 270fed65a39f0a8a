import itertools
import math

import pytest
from hypothesis import strategies as st

from tropid.tropical import TropMatrix, TropValue
from tropid.words import Word

_acceptance_lines = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _acceptance_lines.append(f"{'PASS' if report.passed else 'FAIL'}  {value}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


# -- an arithmetic oracle on floats, used only for small integer weights --------


def to_float_grid(m: TropMatrix):
    return [[-math.inf if e is None else float(e) for e in row] for row in m.rows]


def brute_product(factors):
    """Max over every vertex sequence of the summed weights (float arithmetic)."""
    n = factors[0].n
    grids = [to_float_grid(f) for f in factors]
    out = [[-math.inf] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        for mids in itertools.product(range(n), repeat=len(factors) - 1):
            seq = (i, *mids, j)
            total = sum(g[seq[k]][seq[k + 1]] for k, g in enumerate(grids))
            out[i][j] = max(out[i][j], total)
    return out


def M(*rows):
    """Matrix literal with ``None`` as bottom."""
    return TropMatrix.of(rows)


W = Word.parse


# -- hypothesis strategies -------------------------------------------------------------

weights = st.one_of(st.integers(-50, 50),
                    st.fractions(min_value=-20, max_value=20, max_denominator=12))
trop_values = st.one_of(st.just(TropValue(None)), weights.map(TropValue.finite))


@st.composite
def matrices(draw, n=None, upper=False):
    n = n if n is not None else draw(st.integers(1, 4))
    rows = []
    for i in range(n):
        rows.append(tuple(None if upper and i > j else draw(st.one_of(st.none(), weights))
                          for j in range(n)))
    return TropMatrix(tuple(rows))


def letters_words(alphabet="xyz", min_size=0, max_size=12):
    return st.lists(st.sampled_from(alphabet), min_size=min_size, max_size=max_size).map(
        Word.from_letters)


@pytest.fixture
def pair_2x2():
    return M([0, 1], [None, 2]), M([1, 0], [None, 0])


@pytest.fixture
def witness_2x2():
    """Non-commuting upper-triangular pair."""
    return M([0, 0], [None, 0]), M([0, None], [None, 1])

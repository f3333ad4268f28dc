from pathlib import Path

import pytest

from singhoch.algebra import make_algebra, truncated_polynomial_algebra
from singhoch.linalg import QQ
from singhoch.poly import parse_poly

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def P(text, variables="x,y", field=QQ):
    return parse_poly(text, variables, field)


def group_algebra_c2():
    """k[C_2] with basis 1, g and g^2 = 1; semisimple over QQ."""
    return make_algebra([[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0], ["1", "g"])


def upper_triangular_2():
    """Upper triangular 2x2 matrices: e11, e12, e22. Noncommutative."""
    z = [0, 0, 0]
    t = [[z[:] for _ in range(3)] for _ in range(3)]
    t[0][0] = [1, 0, 0]   # e11 e11
    t[0][1] = [0, 1, 0]   # e11 e12
    t[1][2] = [0, 1, 0]   # e12 e22
    t[2][2] = [0, 0, 1]   # e22 e22
    return make_algebra(t, [1, 0, 1], ["e11", "e12", "e22"])


def corpus_algebras():
    """Small algebras every property suite runs over."""
    return {
        "k": truncated_polynomial_algebra(1),
        "dual": truncated_polynomial_algebra(2),
        "x3": truncated_polynomial_algebra(3),
        "kC2": group_algebra_c2(),
        "upper": upper_triangular_2(),
    }


@pytest.fixture(scope="session")
def algebras():
    return corpus_algebras()


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])

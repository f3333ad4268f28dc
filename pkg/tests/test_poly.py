import pytest

from singhoch.linalg import GF
from singhoch.poly import (
    GREVLEX, MonomialOrder, MultiPoly, PolySyntaxError, UnknownVariableError, jacobian, parse_poly,
)

from conftest import P


def test_parse_examples():
    f = P("x^2 + 3*y")
    assert f.terms == {(2, 0): 1, (0, 1): 3}
    z = P("0")
    assert z.is_zero() and z.terms == {}
    assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")


def test_parse_rationals_and_unary_minus():
    assert P("-1/2*x + 1/3") == P("1/3 - (1/2)*x")
    # multiplication is always explicit
    with pytest.raises(PolySyntaxError):
        P("x y")


@pytest.mark.parametrize("text", ["x*y^", "x +", "(x", "x^-1", "2**"])
def test_syntax_errors_carry_position(text):
    with pytest.raises(PolySyntaxError) as exc:
        P(text)
    assert exc.value.pos >= 0


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as exc:
        P("x + z")
    assert exc.value.name == "z"


def test_jacobian_examples():
    assert jacobian(P("x^2", "x")) == [P("2*x", "x")]
    assert jacobian(P("x^3 + y^3")) == [P("3*x^2"), P("3*y^2")]
    f = parse_poly("x^5", "x", GF(5))
    assert jacobian(f) == [MultiPoly(GF(5), ["x"])]


def test_arithmetic_and_degree():
    f, g = P("x + y"), P("x - y")
    assert f * g == P("x^2 - y^2")
    assert (f ** 3).total_degree() == 3
    assert f - f == P("0")
    assert P("x*y^2").permute([1, 0]) == P("x^2*y")


def test_orders():
    lex = MonomialOrder.parse("lex")
    f = P("x*y^3 + x^2")
    assert f.leading_term(lex)[0] == (2, 0)
    assert f.leading_term(GREVLEX)[0] == (1, 3)
    assert MonomialOrder.parse("deglex").kind == "grlex"
    with pytest.raises(ValueError):
        MonomialOrder.parse("weird")


def test_str_roundtrip():
    for t in ["x^2 + 3*y", "-1/2*x*y + 7", "0"]:
        f = P(t)
        assert P(str(f)) == f

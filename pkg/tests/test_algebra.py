import pytest

from singhoch.algebra import (
    AssociativityError, UnitError, enveloping, make_algebra, truncated_polynomial_algebra,
)
from singhoch.groebner import groebner, quotient_algebra
from singhoch.linalg import QQ

from conftest import P, group_algebra_c2, upper_triangular_2


def test_field_itself():
    k = make_algebra([[[1]]], [1])
    assert k.dim == 1 and k.is_commutative()


def test_dual_numbers_valid():
    a = make_algebra([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0], ["1", "x"])
    assert a.is_nilpotent({1: QQ(1)})
    assert not a.is_nilpotent(a.unit)


def test_nonassociative_table_rejected():
    # b1 b1 = b2, b1 b2 = b2, b2 b1 = 0: (b1 b1) b1 = 0 but b1 (b1 b1) = b2
    t = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
         [[0, 1, 0], [0, 0, 1], [0, 0, 1]],
         [[0, 0, 1], [0, 0, 0], [0, 0, 0]]]
    with pytest.raises(AssociativityError) as exc:
        make_algebra(t, [1, 0, 0])
    assert exc.value.triple == (1, 1, 1)


def test_bad_unit_rejected():
    with pytest.raises(UnitError):
        make_algebra([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [0, 1])


def test_enveloping_examples():
    k = make_algebra([[[1]]], [1])
    assert enveloping(k).dim == 1
    a = truncated_polynomial_algebra(2)
    e = enveloping(a)
    assert e.dim == 4 and e.is_commutative()
    # compare with k[x,y]/(x^2, y^2) through nilpotency of x(x)1 and 1(x)x
    b = quotient_algebra(groebner([P("x^2"), P("y^2")]))
    assert b.dim == 4
    x1, one_x = {2: QQ(1)}, {1: QQ(1)}
    assert e.mul(x1, x1) == {} and e.mul(one_x, one_x) == {}
    assert e.mul(x1, one_x) == {3: QQ(1)}
    u = upper_triangular_2()
    assert enveloping(u).dim == 9


def test_center_and_radical():
    u = upper_triangular_2()
    assert len(u.center()) == 1
    assert len(u.radical_basis()) == 1
    c2 = group_algebra_c2()
    assert len(c2.center()) == 2 and c2.radical_basis() == []
    a = truncated_polynomial_algebra(4)
    assert a.subspace_power_dims([{1: QQ(1)}]) == [4, 3, 2, 1, 0]


def test_derivations_of_truncated_polynomials():
    # derivations of k[x]/(x^m) send x to (x), so there are m - 1 of them
    for m in range(2, 5):
        assert len(truncated_polynomial_algebra(m).derivations()) == m - 1


def test_opposite_of_upper_triangular():
    u = upper_triangular_2()
    op = u.opposite()
    assert op.mul({0: QQ(1)}, {1: QQ(1)}) == {}
    assert op.mul({1: QQ(1)}, {0: QQ(1)}) == {1: QQ(1)}

import pytest

from singhoch.algebra import truncated_polynomial_algebra
from singhoch.hochschild import (
    HochschildClass, SizeBudgetError, bar_cochain_complex, cup_product, hh_basis, hh_dims,
    hochschild_differential, is_coboundary, unit_class,
)

from conftest import group_algebra_c2, upper_triangular_2


def test_component_dims():
    a = truncated_polynomial_algebra(2)
    assert bar_cochain_complex(a, 0).dims() == {0: 2}
    assert list(bar_cochain_complex(a, 4).dims().values()) == [2, 4, 8, 16, 32]


def test_field_itself():
    k = truncated_polynomial_algebra(1)
    assert hh_dims(k, 4) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}


def test_truncated_polynomials():
    assert hh_dims(truncated_polynomial_algebra(2), 4) == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}
    assert hh_dims(truncated_polynomial_algebra(3), 3) == {0: 3, 1: 2, 2: 2, 3: 2}


def test_semisimple_and_hereditary():
    assert hh_dims(group_algebra_c2(), 3) == {0: 2, 1: 0, 2: 0, 3: 0}
    assert hh_dims(upper_triangular_2(), 2) == {0: 1, 1: 0, 2: 0}


def test_budget():
    a = truncated_polynomial_algebra(3)
    with pytest.raises(SizeBudgetError) as exc:
        bar_cochain_complex(a, 6, budget=1000)
    assert exc.value.dimension == 3 ** 7


def test_differential_is_cached():
    a = truncated_polynomial_algebra(2)
    assert hochschild_differential(a, 2) is hochschild_differential(a, 2)


def test_cup_product_basics():
    a = truncated_polynomial_algebra(3)
    one = unit_class(a)
    for n in range(3):
        for c in hh_basis(a, n):
            assert cup_product(one, c).coords == c.coords
            assert cup_product(c, one).coords == c.coords
            assert cup_product(c, c).is_cocycle()


def test_cup_square_of_degree_two_class_survives():
    a = truncated_polynomial_algebra(3)
    squares = [cup_product(c, c) for c in hh_basis(a, 2)]
    assert any(not is_coboundary(s) for s in squares)


def test_class_arithmetic():
    a = truncated_polynomial_algebra(2)
    c = hh_basis(a, 1)[0]
    assert (c + c).coords == c.scaled(2).coords
    assert (c - c).coords == {}
    assert c.matrix.shape == (2, 2)
    assert isinstance(c, HochschildClass) and c.is_cocycle()
    assert c.value((1,)) == {i % 2: v for i, v in c.coords.items() if i // 2 == 1}


def test_hh0_is_center_for_upper_triangular():
    u = upper_triangular_2()
    basis = hh_basis(u, 0)
    assert len(basis) == 1
    # the only central elements are multiples of the unit e11 + e22
    coords = basis[0].coords
    assert set(coords) == {0, 2} and coords[0] == coords[2] != 0

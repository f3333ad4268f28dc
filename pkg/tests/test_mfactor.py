import pytest

from singhoch.algebra import truncated_polynomial_algebra
from singhoch.complexes import FormatError
from singhoch.hypersurface import NonIsolatedSingularity
from singhoch.linalg import QQ
from singhoch.mfactor import (
    MFError, format_mf, hom_differentials, make_mf, mf_hom_cohomology, parse_mf, shift_mf, trivial_mf,
)
from singhoch.resolutions import free_resolution, quotient_module
from singhoch.tate import stable_ext_dim

from conftest import DATA, P


def mf(phi, psi, q, v="x"):
    return make_mf([[P(s, v) for s in r] for r in phi], [[P(s, v) for s in r] for r in psi], P(q, v))


def test_validation():
    mf([["x"]], [["x"]], "x^2")
    for a in range(5):
        mf([[f"x^{a}"]], [[f"x^{5 - a}"]], "x^5")
    with pytest.raises(MFError, match="entry \\(1,1\\)"):
        mf([["x"]], [["y"]], "x^2", "x,y")
    with pytest.raises(MFError, match="psi must be 1x1"):
        make_mf([[P("x", "x")]], [[P("x", "x"), P("x", "x")]], P("x^2", "x"))


@pytest.mark.parametrize("method", ["pid", "groebner"])
def test_univariate_examples(method):
    e = mf([["x"]], [["x"]], "x^2")
    assert mf_hom_cohomology(e, e, method=method) == (1, 1)
    f = mf([["x"]], [["x^2"]], "x^3")
    assert mf_hom_cohomology(f, f, method=method) == (1, 1)
    t = trivial_mf(P("x^3", "x"))
    assert mf_hom_cohomology(t, f, method=method) == (0, 0)
    assert mf_hom_cohomology(f, t, method=method) == (0, 0)


def test_x4_middle_factorization():
    e = mf([["x^2"]], [["x^2"]], "x^4")
    assert mf_hom_cohomology(e, e) == (2, 2)
    assert mf_hom_cohomology(e, e, method="groebner") == (2, 2)


def test_shift_swaps_parity():
    e = mf([["x"]], [["x^2"]], "x^3")
    f = mf([["x^2"]], [["x"]], "x^3")
    even, odd = mf_hom_cohomology(e, f)
    assert mf_hom_cohomology(e, shift_mf(f)) == (odd, even)
    assert shift_mf(e) == f


def test_multivariate_examples():
    v = "x,y"
    a1 = mf([["x", "y"], ["-y", "x"]], [["x", "-y"], ["y", "x"]], "x^2 + y^2", v)
    assert mf_hom_cohomology(a1, a1) == (2, 2)
    ex = mf([["x"]], [["y"]], "x*y", v)
    ey = mf([["y"]], [["x"]], "x*y", v)
    assert mf_hom_cohomology(ex, ex) == (1, 0)
    assert mf_hom_cohomology(ex, ey) == (0, 1)
    assert mf_hom_cohomology(trivial_mf(P("x*y", v)), ex) == (0, 0)


def test_differentials_compose_to_zero():
    e = mf([["x", "y"], ["-y", "x"]], [["x", "-y"], ["y", "x"]], "x^2 + y^2", "x,y")
    d0, d1 = hom_differentials(e, e)
    n = len(d0)
    for a, b in ((d0, d1), (d1, d0)):
        for i in range(n):
            for j in range(n):
                assert sum((a[i][k] * b[k][j] for k in range(n)), P("0", "x,y")).is_zero()


def test_matches_stable_ext_of_module():
    for m in (2, 3, 4):
        e = mf([["x"]], [[f"x^{m - 1}"]], f"x^{m}")
        a = truncated_polynomial_algebra(m)
        res = free_resolution(a, quotient_module(a, [{1: QQ(1)}]))
        assert mf_hom_cohomology(e, e) == (stable_ext_dim(res, 0)[0], stable_ext_dim(res, 1)[0])


def test_precondition():
    e = mf([["x"]], [["x*y"]], "x^2*y", "x,y")
    with pytest.raises(NonIsolatedSingularity):
        mf_hom_cohomology(e, e)
    with pytest.raises(MFError, match="different potentials"):
        mf_hom_cohomology(mf([["x"]], [["x"]], "x^2"), mf([["x"]], [["x^2"]], "x^3"))
    with pytest.raises(MFError, match="single variable"):
        ex = mf([["x"]], [["y"]], "x*y", "x,y")
        mf_hom_cohomology(ex, ex, method="pid")


def test_file_roundtrip():
    for name in ("a1-2x2.mf", "x2-residue.mf", "node-x.mf"):
        e = parse_mf((DATA / name).read_text(), name)
        assert parse_mf(format_mf(e)) == e


def test_file_errors():
    text = (DATA / "x2-residue.mf").read_text().replace("psi\nx\n", "psi\nx^2\n")
    with pytest.raises(MFError, match="phi\\*psi"):
        parse_mf(text)
    with pytest.raises(FormatError, match="unknown directive"):
        parse_mf("mf\nvars x\nbogus 1\nend\n")

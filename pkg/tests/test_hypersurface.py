import warnings
from fractions import Fraction
from itertools import product

import pytest

from singhoch.hypersurface import (
    DegenerateCharacteristic, NonIsolatedSingularity, compare_singularities, fingerprint,
    milnor_algebra, multiplication_by, quasi_homogeneous_weights, singularity_report,
    stable_hh_dims, tyurina_algebra,
)
from singhoch.linalg import GF, QQ, Matrix, rank
from singhoch.poly import jacobian, parse_poly

from conftest import P

WITNESS = "x^4 + y^5 + x^2*y^3"


def local_length(gens, nvars, n):
    """``dim k[x]/(gens + m^n)`` by plain linear algebra on monomials of degree < n.

    Independent of the Groebner code; for ``n`` past the Loewy length of the
    local algebra this is the length at the origin.
    """
    monos = [e for e in product(range(n), repeat=nvars) if sum(e) < n]
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    for g in gens:
        for s in monos:
            v = {}
            for e, c in g.terms.items():
                t = tuple(a + b for a, b in zip(e, s))
                if sum(t) < n:
                    v[index[t]] = v.get(index[t], 0) + c
            if any(v.values()):
                rows.append([v.get(i, 0) for i in range(len(monos))])
    if not rows:
        return len(monos)
    return len(monos) - rank(Matrix.from_rows(QQ, rows, len(monos)))


def test_milnor_examples():
    a, mu = milnor_algebra(P("x^2", "x"))
    assert mu == 1 and a.dim == 1
    a, mu = milnor_algebra(P("x^3 + y^3"))
    assert mu == 4 and set(a.labels) == {"1", "x", "y", "x*y"}
    a, mu = milnor_algebra(P("x^3 - y^2"))
    assert mu == 2 and set(a.labels) == {"1", "x"}


def test_tyurina_examples():
    for m in range(2, 7):
        assert tyurina_algebra(P(f"x^{m}", "x"))[1] == m - 1
    assert tyurina_algebra(P("x^3 + y^3"))[1] == 4


def test_witness_against_brute_force():
    q = P(WITNESS)
    jac = jacobian(q)
    # stable once m^n lies in the ideal; check two consecutive values agree
    mu_bf = [local_length(jac, 2, n) for n in (11, 12)]
    tau_bf = [local_length([q] + jac, 2, n) for n in (11, 12)]
    assert mu_bf == [12, 12] and tau_bf == [11, 11]
    assert milnor_algebra(q)[1] == 12
    assert tyurina_algebra(q)[1] == 11
    # the global Jacobian quotient also sees two critical points off the origin
    assert milnor_algebra(q, local=False)[1] == 14


def test_witness_multiplication_rank():
    q = P(WITNESS)
    m, _ = milnor_algebra(q)
    assert rank(multiplication_by(m, q)) == 1


def test_stable_hh_examples():
    assert set(stable_hh_dims(P("x^2", "x")).values()) == {1}
    assert set(stable_hh_dims(P("x^3 + y^3")).values()) == {4}
    d = stable_hh_dims(P(WITNESS))
    assert d[0] == 11 and d[1] == 11
    assert sorted(stable_hh_dims(P("x^3", "x"), (-3, 5))) == list(range(-3, 6))


def test_weights():
    assert quasi_homogeneous_weights(P("x^3 + y^3")) == (Fraction(1, 3), Fraction(1, 3))
    assert quasi_homogeneous_weights(P("x^3 - y^2")) == (Fraction(1, 3), Fraction(1, 2))
    assert quasi_homogeneous_weights(P(WITNESS)) is None
    assert quasi_homogeneous_weights(P("x^2 + 1")) is None


def test_fingerprint_and_compare():
    assert compare_singularities(P("x^2 + y^2"), P("x*y")) == "fingerprint-equal"
    assert compare_singularities(P("x^3 + y^3"), P("x^4 + y^4")) == "distinct"
    assert compare_singularities(P("x^3 + y^3"), P("x^3 + y^3")) == "fingerprint-equal"
    q = P("x^3 + x*y^4 + y^7")
    assert fingerprint(q) == fingerprint(q.permute([1, 0]))
    with pytest.raises(ValueError, match="variable counts"):
        compare_singularities(P("x^2", "x"), P("x^2 + y^2"))


def test_errors():
    with pytest.raises(NonIsolatedSingularity) as exc:
        milnor_algebra(P("x^2*y"))
    assert "non-isolated" in str(exc.value)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(DegenerateCharacteristic):
            milnor_algebra(parse_poly("x^3", "x", GF(3)))


def test_prime_field_warns():
    with pytest.warns(UserWarning, match="GF\\(5\\)"):
        milnor_algebra(parse_poly("x^3 + y^3", "x,y", GF(5)))


def test_report_fields():
    rep = singularity_report(P(WITNESS))
    d = rep.to_dict()
    assert list(d) == ["Q", "vars", "field", "milnor_number", "global_milnor_number",
                       "tyurina_number", "milnor_basis", "tyurina_basis", "stable_even_dim",
                       "stable_odd_dim", "quasi_homogeneous"]
    assert (d["milnor_number"], d["tyurina_number"]) == (12, 11)
    assert d["quasi_homogeneous"] is None

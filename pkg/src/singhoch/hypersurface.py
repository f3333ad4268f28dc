"""Milnor and Tyurina algebras of isolated hypersurface singularities.

All algebras here are supported at the origin.  The Jacobian ideal of a
polynomial can have critical points elsewhere (``x^4 + y^5 + x^2 y^3`` has
two besides the origin), so :func:`milnor_algebra` splits off the local
factor at 0 by adding ``x_i^N`` for ``N`` the global length: in a local
Artinian algebra of length ``N`` every element of the maximal ideal has
``N``-th power zero, and at any other point some ``x_i`` is a unit.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import FinDimCommAlg
from .complexes import koszul, periodic_unfold
from .groebner import InfiniteQuotient, element_of, groebner, quotient_algebra
from .linalg import Matrix, QQ, rank, solve
from .poly import GREVLEX, MonomialOrder, MultiPoly, jacobian

__all__ = [
    "SingularityError", "NonIsolatedSingularity", "DegenerateCharacteristic",
    "SingularityAwayFromOrigin", "milnor_algebra", "tyurina_algebra",
    "multiplication_by", "stable_hh_dims", "quasi_homogeneous_weights",
    "fingerprint", "compare_singularities", "SingularityReport", "singularity_report",
]


class SingularityError(ValueError):
    pass


class NonIsolatedSingularity(SingularityError):
    def __init__(self, what: str, variable: str):
        super().__init__(f"non-isolated critical locus: {what} is infinite-dimensional"
                         f" (all powers of {variable} survive)")
        self.variable = variable


class DegenerateCharacteristic(SingularityError):
    def __init__(self, p: int):
        super().__init__(f"all partial derivatives vanish in characteristic {p}")
        self.characteristic = p


class SingularityAwayFromOrigin(SingularityError):
    def __init__(self, variable: str):
        super().__init__(f"Tyurina algebra is not supported at the origin: {variable} is not nilpotent")
        self.variable = variable


def _check_field(q: MultiPoly) -> None:
    if q.field.p:
        warnings.warn(f"working over GF({q.field.p}); Milnor and Tyurina numbers may differ"
                      " from characteristic 0", UserWarning, stacklevel=3)


def _quotient(gens, order: MonomialOrder, what: str) -> FinDimCommAlg:
    gb = groebner(gens, order)
    try:
        return quotient_algebra(gb)
    except InfiniteQuotient as exc:
        raise NonIsolatedSingularity(what, exc.name) from None


def _nilpotent_vars(alg: FinDimCommAlg) -> list[bool]:
    return [alg.is_nilpotent(v) for v in alg.var_images]


def _localize(gens: list[MultiPoly], alg: FinDimCommAlg, order, what) -> FinDimCommAlg:
    """Local factor of ``alg = k[x]/(gens)`` at the origin."""
    if all(_nilpotent_vars(alg)):
        return alg
    n = alg.dim
    q = gens[0]
    extra = [MultiPoly.variable(q.field, q.vars, i) ** n for i in range(q.nvars)]
    return _quotient(list(gens) + extra, order, what)


def milnor_algebra(q: MultiPoly, order: MonomialOrder = GREVLEX,
                   local: bool = True) -> tuple[FinDimCommAlg, int]:
    """Jacobian algebra ``k[x]/(dQ/dx_1, ..., dQ/dx_n)`` and its dimension.

    With ``local=True`` (the default) the factor supported at the origin is
    returned; ``local=False`` gives the global quotient.
    """
    _check_field(q)
    if q.is_zero():
        raise NonIsolatedSingularity("the Milnor algebra of 0", q.vars[0] if q.vars else "?")
    partials = jacobian(q)
    if all(p.is_zero() for p in partials):
        if q.field.p:
            raise DegenerateCharacteristic(q.field.p)
        # a nonzero constant: the Jacobian ideal is zero
        raise NonIsolatedSingularity("the Milnor algebra", q.vars[0])
    alg = _quotient(partials, order, "the Milnor algebra")
    if local:
        alg = _localize(partials, alg, order, "the Milnor algebra")
    return alg, alg.dim


def tyurina_algebra(q: MultiPoly, order: MonomialOrder = GREVLEX) -> tuple[FinDimCommAlg, int]:
    """``k[x]/(Q, dQ/dx_1, ..., dQ/dx_n)``; must be supported at the origin."""
    _check_field(q)
    partials = jacobian(q)
    if all(p.is_zero() for p in partials) and q.field.p and not q.is_zero():
        raise DegenerateCharacteristic(q.field.p)
    alg = _quotient([q] + partials, order, "the Tyurina algebra")
    for name, nil in zip(q.vars, _nilpotent_vars(alg)):
        if not nil:
            raise SingularityAwayFromOrigin(name)
    return alg, alg.dim


def multiplication_by(alg: FinDimCommAlg, f: MultiPoly) -> Matrix:
    """Matrix of multiplication by the image of ``f`` on ``alg``."""
    return alg.left_matrix(element_of(alg, f))


def stable_hh_dims(q: MultiPoly, window: tuple[int, int] = (-3, 5),
                   order: MonomialOrder = GREVLEX) -> dict[int, int]:
    """Dimensions of the 2-periodic cohomology of ``K(M, Q)`` over ``window``.

    Even degrees carry ``coker(.Q) = T``, odd degrees ``ker(.Q)``.
    """
    m, _ = milnor_algebra(q, order)
    return periodic_unfold(koszul(m, [element_of(m, q)]), window)


def quasi_homogeneous_weights(q: MultiPoly) -> tuple[Fraction, ...] | None:
    """Positive rational weights giving every monomial of ``q`` weighted degree 1.

    Among all solutions of the linear system the least-norm one is tried;
    ``None`` when the system is inconsistent or that solution is not positive.
    """
    if q.is_zero():
        raise ValueError("zero polynomial")
    exps = sorted(q.terms)
    if any(sum(e) == 0 for e in exps):
        return None
    a = Matrix.from_rows(QQ, [list(e) for e in exps])
    # least-norm solution w = A^T y with (A A^T) y = 1
    gram = a @ a.T
    y = solve(gram, [1] * len(exps))
    if y is None:
        return None
    w = a.T.matvec({i: c for i, c in enumerate(y) if c})
    weights = tuple(Fraction(int(w.get(i, 0).numerator), int(w.get(i, 0).denominator))
                    for i in range(q.nvars))
    if a.matvec({i: QQ(c) for i, c in enumerate(weights) if c}) != {i: QQ.one for i in range(len(exps))}:
        return None
    if any(c <= 0 for c in weights):
        return None
    return weights


def fingerprint(q: MultiPoly, order: MonomialOrder = GREVLEX) -> tuple:
    """Isomorphism invariants of the Tyurina algebra ``T``.

    ``(tau, Hilbert function of the m-adic filtration, socle dimension,
    dim T/m^2)``, where ``m`` is generated by the variable images.
    """
    t, tau = tyurina_algebra(q, order)
    gens = [v for v in t.var_images if v]
    powers = t.subspace_power_dims(gens) if tau else [0]
    hilbert = tuple(powers[k] - powers[k + 1] for k in range(len(powers) - 1))
    if tau:
        blocks = [t.left_matrix(v) for v in t.var_images]
        stacked = Matrix(t.field, tau * len(blocks), tau, [r for m in blocks for r in m.rows()])
        socle = tau - rank(stacked)
    else:
        socle = 0
    m2 = powers[2] if len(powers) > 2 else 0
    return (tau, hilbert, socle, tau - m2)


def compare_singularities(q1: MultiPoly, q2: MultiPoly) -> str:
    """``"distinct"`` when a fingerprint invariant differs, else ``"fingerprint-equal"``.

    Equal fingerprints are a necessary condition for isomorphic Tyurina
    algebras, not a proof of it.
    """
    if q1.nvars != q2.nvars:
        raise ValueError(f"variable counts differ ({q1.nvars} vs {q2.nvars}); pad with squares first")
    return "fingerprint-equal" if fingerprint(q1) == fingerprint(q2) else "distinct"


@dataclass
class SingularityReport:
    Q: MultiPoly
    milnor_number: int
    tyurina_number: int
    milnor_algebra: FinDimCommAlg = dc_field(repr=False)
    tyurina_algebra: FinDimCommAlg = dc_field(repr=False)
    stable_even_dim: int = 0
    stable_odd_dim: int = 0
    quasi_homogeneous: tuple | None = None
    global_milnor_number: int | None = None

    def to_dict(self) -> dict:
        qh = None if self.quasi_homogeneous is None else [str(w) for w in self.quasi_homogeneous]
        return {
            "Q": str(self.Q),
            "vars": list(self.Q.vars),
            "field": _field_name(self.Q),
            "milnor_number": self.milnor_number,
            "global_milnor_number": self.global_milnor_number,
            "tyurina_number": self.tyurina_number,
            "milnor_basis": list(self.milnor_algebra.labels),
            "tyurina_basis": list(self.tyurina_algebra.labels),
            "stable_even_dim": self.stable_even_dim,
            "stable_odd_dim": self.stable_odd_dim,
            "quasi_homogeneous": qh,
        }


def _field_name(q: MultiPoly) -> str:
    return f"GF({q.field.p})" if q.field.p else "QQ"


def singularity_report(q: MultiPoly, order: MonomialOrder = GREVLEX) -> SingularityReport:
    m, mu = milnor_algebra(q, order)
    _, mu_global = milnor_algebra(q, order, local=False)
    t, tau = tyurina_algebra(q, order)
    dims = periodic_unfold(koszul(m, [element_of(m, q)]), (0, 1))
    return SingularityReport(q, mu, tau, m, t, dims[0], dims[1],
                             quasi_homogeneous_weights(q), mu_global)

"""Hochschild cohomology of finite-dimensional algebras via the bar cochain complex.

A cochain ``f in C^n = Hom(A^{(x)n}, A)`` is a sparse vector: the coordinate
at ``t*d + k`` is the coefficient of ``b_k`` in ``f(b_{i_1} (x) ... (x) b_{i_n})``,
where ``t`` is the base-``d`` number with digits ``i_1 ... i_n`` (``i_1``
most significant).  The unnormalized complex is used throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import FinDimAlgebra
from .complexes import CochainComplex, homology_dims
from .linalg import ColumnSolver, Echelon, Matrix, axpy, rank_and_kernel

__all__ = [
    "DEFAULT_BUDGET", "SizeBudgetError", "hochschild_differential", "bar_cochain_complex",
    "hh_dims", "HochschildClass", "cup_product", "unit_class", "hh_basis",
    "is_coboundary", "solve_coboundary",
]

DEFAULT_BUDGET = 10 ** 6


class SizeBudgetError(ValueError):
    def __init__(self, what: str, dimension: int, budget: int):
        super().__init__(f"{what} has dimension {dimension}, above the size budget {budget}")
        self.dimension = dimension
        self.budget = budget


def _check(what: str, dim: int, budget: int) -> None:
    if dim > budget:
        raise SizeBudgetError(what, dim, budget)


def _cache(a: FinDimAlgebra) -> dict:
    c = a.__dict__.get("_hochschild_cache")
    if c is None:
        c = a.__dict__["_hochschild_cache"] = {}
    return c


def hochschild_differential(a: FinDimAlgebra, n: int, budget: int = DEFAULT_BUDGET) -> Matrix:
    """``delta: C^n -> C^{n+1}``.

    ``(delta f)(a_1..a_{n+1}) = a_1 f(a_2..) + sum_i (-1)^i f(..a_i a_{i+1}..)
    + (-1)^{n+1} f(a_1..a_n) a_{n+1}``.
    """
    cache = _cache(a)
    if ("delta", n) in cache:
        return cache[("delta", n)]
    d = a.dim
    fld = a.field
    _check(f"cochain space C^{n + 1}", d ** (n + 2), budget)
    table = a.table
    rows = []
    pw = [d ** j for j in range(n + 2)]
    for s in product(range(d), repeat=n + 1):
        out = [dict() for _ in range(d)]
        # a_1 f(a_2 .. a_{n+1})
        t = _index(s[1:], d)
        for k in range(d):
            for k2, c in table[s[0]][k].items():
                axpy(fld, out[k2], c, {t * d + k: fld.one})
        # inner faces
        for i in range(1, n + 1):
            sign = fld.one if i % 2 == 0 else fld.neg(fld.one)
            head = _index(s[:i - 1], d)
            tail = _index(s[i + 1:], d)
            tail_len = n + 1 - (i + 1)
            for m, c in table[s[i - 1]][s[i]].items():
                t = (head * d + m) * pw[tail_len] + tail
                coeff = fld.mul(sign, c)
                for k in range(d):
                    axpy(fld, out[k], coeff, {t * d + k: fld.one})
        # f(a_1 .. a_n) a_{n+1}
        t = _index(s[:n], d)
        sign = fld.one if (n + 1) % 2 == 0 else fld.neg(fld.one)
        for k in range(d):
            for k2, c in table[k][s[n]].items():
                axpy(fld, out[k2], fld.mul(sign, c), {t * d + k: fld.one})
        rows.extend(out)
    m = Matrix(fld, d ** (n + 2), d ** (n + 1), rows)
    cache[("delta", n)] = m
    return m


def _index(digits, d: int) -> int:
    t = 0
    for i in digits:
        t = t * d + i
    return t


def bar_cochain_complex(a: FinDimAlgebra, n_max: int, budget: int = DEFAULT_BUDGET) -> CochainComplex:
    """``C^0 -> ... -> C^{n_max}`` with ``dim C^n = d^{n+1}``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    d = a.dim
    _check(f"cochain space C^{n_max}", d ** (n_max + 1), budget)
    dims = [d ** (n + 1) for n in range(n_max + 1)]
    diffs = {n: hochschild_differential(a, n, budget) for n in range(n_max)}
    return CochainComplex(a.field, 0, dims, diffs)


def hh_dims(a: FinDimAlgebra, n_max: int, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
    """``dim HH^n(A, A)`` for ``n = 0..n_max``."""
    c = bar_cochain_complex(a, n_max + 1, budget)
    h = homology_dims(c)
    return {n: h[n] for n in range(n_max + 1)}


@dataclass(frozen=True, eq=False)
class HochschildClass:
    """A Hochschild cocycle of degree ``degree`` (coordinates as in the module docstring)."""

    algebra: FinDimAlgebra
    degree: int
    coords: dict

    @property
    def matrix(self) -> Matrix:
        """``d x d^n`` matrix from the tensor-power basis to ``A``."""
        d = self.algebra.dim
        return Matrix.from_dict(self.algebra.field, d, d ** self.degree,
                                {(k, t): c for idx, c in self.coords.items()
                                 for t, k in [divmod(idx, d)]})

    def value(self, indices) -> dict:
        """``f(b_{i_1} (x) ... (x) b_{i_n})`` as an element of ``A``."""
        d = self.algebra.dim
        t = _index(indices, d)
        return {k: c for k in range(d) if (c := self.coords.get(t * d + k))}

    def is_cocycle(self) -> bool:
        return not hochschild_differential(self.algebra, self.degree).matvec(self.coords)

    def __add__(self, other: "HochschildClass") -> "HochschildClass":
        if other.degree != self.degree or other.algebra is not self.algebra:
            raise ValueError("classes of different degree or algebra")
        out = dict(self.coords)
        axpy(self.algebra.field, out, self.algebra.field.one, other.coords)
        return HochschildClass(self.algebra, self.degree, out)

    def scaled(self, c) -> "HochschildClass":
        fld = self.algebra.field
        c = fld(c)
        return HochschildClass(self.algebra, self.degree,
                               {i: fld.mul(c, v) for i, v in self.coords.items() if c})

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __repr__(self):
        return f"HochschildClass(degree={self.degree}, nnz={len(self.coords)})"


def unit_class(a: FinDimAlgebra) -> HochschildClass:
    """The degree-0 cocycle ``1 -> 1_A``."""
    return HochschildClass(a, 0, dict(a.unit))


def cup_product(f: HochschildClass, g: HochschildClass,
                budget: int = DEFAULT_BUDGET) -> HochschildClass:
    """``(f cup g)(a_1..a_{m+n}) = f(a_1..a_m) g(a_{m+1}..a_{m+n})``."""
    if f.algebra is not g.algebra:
        raise ValueError("classes over different algebras")
    a = f.algebra
    d = a.dim
    m, n = f.degree, g.degree
    _check(f"cochain space C^{m + n}", d ** (m + n + 1), budget)
    fv: dict = {}
    for idx, c in f.coords.items():
        t, k = divmod(idx, d)
        fv.setdefault(t, {})[k] = c
    gv: dict = {}
    for idx, c in g.coords.items():
        t, k = divmod(idx, d)
        gv.setdefault(t, {})[k] = c
    out: dict = {}
    shift = d ** n
    for t1, x in fv.items():
        for t2, y in gv.items():
            prod = a.mul(x, y)
            base = (t1 * shift + t2) * d
            for k, c in prod.items():
                out[base + k] = c
    return HochschildClass(a, m + n, out)


def solve_coboundary(c: HochschildClass) -> dict | None:
    """A cochain ``h`` with ``delta h = c``, or ``None``."""
    if c.degree == 0:
        return {} if not c.coords else None
    delta = hochschild_differential(c.algebra, c.degree - 1)
    return ColumnSolver(delta).solve(c.coords)


def is_coboundary(c: HochschildClass) -> bool:
    return solve_coboundary(c) is not None


def hh_basis(a: FinDimAlgebra, n: int, budget: int = DEFAULT_BUDGET) -> list[HochschildClass]:
    """Cocycles whose classes form a basis of ``HH^n(A, A)``."""
    delta = hochschild_differential(a, n, budget)
    _, kernel = rank_and_kernel(delta)
    ech = Echelon(a.field)
    if n > 0:
        for col in hochschild_differential(a, n - 1, budget).columns():
            if col:
                ech.add(col)
    out = []
    for v in kernel:
        pivot, _ = ech.add(v)
        if pivot is not None:
            out.append(HochschildClass(a, n, v))
    return out

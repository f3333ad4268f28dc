"""Finite-dimensional associative unital algebras given by structure constants."""
from __future__ import annotations

from typing import Sequence

from .linalg import Echelon, Field, Matrix, QQ, axpy, rank_and_kernel

__all__ = [
    "FinDimAlgebra", "FinDimCommAlg", "make_algebra", "enveloping",
    "AlgebraError", "AssociativityError", "UnitError", "truncated_polynomial_algebra",
]


class AlgebraError(ValueError):
    pass


class AssociativityError(AlgebraError):
    def __init__(self, triple, labels):
        i, j, k = triple
        super().__init__(
            f"not associative on basis triple ({labels[i]}, {labels[j]}, {labels[k]})"
            f" = indices {triple}")
        self.triple = triple


class UnitError(AlgebraError):
    def __init__(self, index, label, side):
        super().__init__(f"unit does not act as identity on the {side} of basis element {label}")
        self.index = index
        self.side = side


class FinDimAlgebra:
    """Algebra with basis ``b_0..b_{d-1}`` and ``b_i b_j = sum_k table[i][j][k] b_k``.

    Elements are sparse coordinate dicts.  Instances are treated as immutable.
    """

    def __init__(self, field: Field, labels: Sequence[str], table, unit):
        self.field = field
        self.labels = tuple(labels)
        d = len(self.labels)
        self.dim = d
        if len(table) != d or any(len(row) != d for row in table):
            raise AlgebraError(f"structure constants must be {d}x{d}")
        self.table = [[_clean(field, table[i][j], d) for j in range(d)] for i in range(d)]
        self.unit = _clean(field, unit, d)
        self._lmats: dict = {}
        self._rmats: dict = {}

    # validation
    def validate(self) -> "FinDimAlgebra":
        d = self.dim
        for i in range(d):
            if self.mul(self.unit, {i: self.field.one}) != {i: self.field.one}:
                raise UnitError(i, self.labels[i], "left")
            if self.mul({i: self.field.one}, self.unit) != {i: self.field.one}:
                raise UnitError(i, self.labels[i], "right")
        for i in range(d):
            for j in range(d):
                bij = self.table[i][j]
                for k in range(d):
                    left = self.mul(bij, {k: self.field.one})
                    right = self.mul({i: self.field.one}, self.table[j][k])
                    if left != right:
                        raise AssociativityError((i, j, k), self.labels)
        return self

    # arithmetic
    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        f = self.field
        for i, a in u.items():
            row = self.table[i]
            for j, b in v.items():
                axpy(f, out, f.mul(a, b), row[j])
        return out

    def basis_element(self, i: int) -> dict:
        return {i: self.field.one}

    def element(self, coords) -> dict:
        return _clean(self.field, coords, self.dim)

    def left_matrix(self, u: dict) -> Matrix:
        """Matrix of ``v -> u v``."""
        key = tuple(sorted(u.items()))
        m = self._lmats.get(key)
        if m is None:
            cols = [self.mul(u, {j: self.field.one}) for j in range(self.dim)]
            m = Matrix.from_columns(self.field, self.dim, cols)
            self._lmats[key] = m
        return m

    def right_matrix(self, u: dict) -> Matrix:
        """Matrix of ``v -> v u``."""
        key = tuple(sorted(u.items()))
        m = self._rmats.get(key)
        if m is None:
            cols = [self.mul({j: self.field.one}, u) for j in range(self.dim)]
            m = Matrix.from_columns(self.field, self.dim, cols)
            self._rmats[key] = m
        return m

    def power(self, u: dict, k: int) -> dict:
        out = dict(self.unit)
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(d) for j in range(i + 1, d))

    def is_nilpotent(self, u: dict) -> bool:
        return not self.power(u, self.dim) if self.dim else True

    def structure_constants(self) -> list:
        """Dense ``d x d x d`` array of structure constants."""
        z = self.field.zero
        return [[[self.table[i][j].get(k, z) for k in range(self.dim)]
                 for j in range(self.dim)] for i in range(self.dim)]

    # derived objects
    def opposite(self) -> "FinDimAlgebra":
        d = self.dim
        table = [[self.table[j][i] for j in range(d)] for i in range(d)]
        return FinDimAlgebra(self.field, [f"{l}^op" for l in self.labels], table, self.unit)

    def center(self) -> list[dict]:
        """Basis of ``{z : z b_i = b_i z for all i}``."""
        d = self.dim
        f = self.field
        blocks = []
        for i in range(d):
            bi = {i: f.one}
            blocks.append(self.right_matrix(bi) - self.left_matrix(bi))
        stacked = Matrix(f, d * d, d, [r for m in blocks for r in m.rows()])
        return rank_and_kernel(stacked)[1]

    def derivations(self) -> list[Matrix]:
        """Basis of k-linear ``D`` with ``D(ab) = D(a) b + a D(b)``, as d x d matrices."""
        d = self.dim
        f = self.field
        # unknown D[k][l] = coefficient of b_k in D(b_l), flattened k*d + l
        rows = []
        for i in range(d):
            for j in range(d):
                # D(b_i b_j) - D(b_i) b_j - b_i D(b_j) = 0, coefficient of b_k
                eqs = [dict() for _ in range(d)]
                for s, c in self.table[i][j].items():
                    for k in range(d):
                        axpy(f, eqs[k], c, {k * d + s: f.one})
                for s in range(d):
                    # D(b_i) = sum_s D[s][i] b_s ; b_s b_j
                    for k, c in self.table[s][j].items():
                        axpy(f, eqs[k], f.neg(c), {s * d + i: f.one})
                    # b_i D(b_j) = sum_s D[s][j] b_i b_s
                    for k, c in self.table[i][s].items():
                        axpy(f, eqs[k], f.neg(c), {s * d + j: f.one})
                rows.extend(eqs)
        system = Matrix(f, len(rows), d * d, rows)
        out = []
        for v in rank_and_kernel(system)[1]:
            out.append(Matrix.from_dict(f, d, d, {divmod(idx, d): c for idx, c in v.items()}))
        return out

    def inner_derivation_dim(self) -> int:
        """Dimension of ``{[a, -]}`` = d - dim(center)."""
        return self.dim - len(self.center())

    def radical_basis(self) -> list[dict]:
        """Radical of the trace form (the Jacobson radical in characteristic 0)."""
        d = self.dim
        f = self.field
        traces = []
        for i in range(d):
            row = []
            for j in range(d):
                prod = self.table[i][j]
                m = None
                tr = f.zero
                for k, c in prod.items():
                    m = self.left_matrix({k: f.one})
                    t = f.zero
                    for s in range(d):
                        t = f.add(t, m[s, s])
                    tr = f.add(tr, f.mul(c, t))
                row.append(tr)
            traces.append(row)
        gram = Matrix.from_rows(f, traces)
        return rank_and_kernel(gram)[1]

    def subspace_power_dims(self, gens: Sequence[dict]) -> list[int]:
        """Dimensions of ``I^k`` for the ideal ``I`` generated by ``gens`` (commutative use)."""
        f = self.field
        span = _span(f, [self.mul(g, {j: f.one}) for g in gens for j in range(self.dim)])
        dims = [self.dim]
        current = span
        while current:
            dims.append(len(current))
            nxt = _span(f, [self.mul(g, v) for g in gens for v in current])
            if len(nxt) == len(current):
                break
            current = nxt
        if not current:
            dims.append(0)
        return dims

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, field={self.field!r})"


class FinDimCommAlg(FinDimAlgebra):
    """Commutative quotient ``k[x]/I`` with a monomial (staircase) basis."""

    def __init__(self, field: Field, variables: Sequence[str], monomials: Sequence[tuple],
                 table, var_images: Sequence[dict], labels: Sequence[str] | None = None):
        monomials = [tuple(m) for m in monomials]
        if labels is None:
            labels = [_mono_label(variables, m) for m in monomials]
        d = len(monomials)
        zero_exp = (0,) * len(variables)
        unit = {monomials.index(zero_exp): field.one} if zero_exp in monomials else {}
        super().__init__(field, labels, table, unit)
        self.variables = tuple(variables)
        self.monomials = monomials
        self.var_images = [_clean(field, v, d) for v in var_images]
        self.ideal = None

    def variable_matrix(self, i: int) -> Matrix:
        return self.left_matrix(self.var_images[i])

    def maximal_ideal_generators(self) -> list[dict]:
        return list(self.var_images)


def make_algebra(structure_constants, unit, labels: Sequence[str] | None = None,
                 field: Field = QQ) -> FinDimAlgebra:
    """Validated algebra from a ``d x d x d`` array (``[i][j][k]``) and unit coordinates."""
    d = len(unit)
    if labels is None:
        labels = [f"b{i}" for i in range(d)]
    if len(labels) != d:
        raise AlgebraError("label count does not match dimension")
    if len(structure_constants) != d:
        raise AlgebraError(f"structure constants must be {d}x{d}x{d}")
    table = []
    for i in range(d):
        if len(structure_constants[i]) != d:
            raise AlgebraError(f"structure constants must be {d}x{d}x{d}")
        row = []
        for j in range(d):
            vec = structure_constants[i][j]
            if len(vec) != d:
                raise AlgebraError(f"structure constants must be {d}x{d}x{d}")
            row.append({k: c for k, c in enumerate(vec)})
        table.append(row)
    return FinDimAlgebra(field, labels, table, {k: c for k, c in enumerate(unit)}).validate()


def enveloping(a: FinDimAlgebra) -> FinDimAlgebra:
    """``A^e = A (x) A^op`` with basis ``b_i (x) b_j`` at index ``i*d + j``.

    ``(a (x) b)(a' (x) b') = a a' (x) b' b``; a left ``A^e``-module is an
    ``A``-bimodule via ``(a (x) b) m = a m b``.
    """
    d = a.dim
    f = a.field
    table = []
    for i in range(d):
        for j in range(d):
            row = []
            for i2 in range(d):
                for j2 in range(d):
                    out: dict = {}
                    left = a.table[i][i2]
                    right = a.table[j2][j]
                    for k, c in left.items():
                        for l, e in right.items():
                            idx = k * d + l
                            out[idx] = f.add(out.get(idx, f.zero), f.mul(c, e))
                    row.append(out)
            table.append(row)
    unit: dict = {}
    for k, c in a.unit.items():
        for l, e in a.unit.items():
            unit[k * d + l] = f.mul(c, e)
    labels = [f"{a.labels[i]}|{a.labels[j]}" for i in range(d) for j in range(d)]
    return FinDimAlgebra(f, labels, table, unit).validate()


def truncated_polynomial_algebra(m: int, field: Field = QQ, var: str = "x") -> FinDimCommAlg:
    """``k[x]/(x^m)`` with basis ``1, x, ..., x^{m-1}``."""
    if m < 1:
        raise ValueError("m must be positive")
    table = [[({i + j: field.one} if i + j < m else {}) for j in range(m)] for i in range(m)]
    images = [{1: field.one}] if m > 1 else [{}]
    return FinDimCommAlg(field, [var], [(i,) for i in range(m)], table, images)


def _clean(field: Field, vec, d: int) -> dict:
    if isinstance(vec, dict):
        items = vec.items()
    else:
        items = enumerate(vec)
    out = {}
    for k, c in items:
        if not 0 <= k < d:
            raise AlgebraError(f"coordinate index {k} out of range")
        c = field(c)
        if c:
            out[k] = c
    return out


def _span(field: Field, vectors) -> list[dict]:
    ech = Echelon(field)
    for v in vectors:
        if v:
            ech.add(v)
    return [ech.rows[p] for p in ech.pivots]


def _mono_label(variables, exps) -> str:
    parts = []
    for v, a in zip(variables, exps):
        if a == 1:
            parts.append(v)
        elif a:
            parts.append(f"{v}^{a}")
    return "*".join(parts) or "1"

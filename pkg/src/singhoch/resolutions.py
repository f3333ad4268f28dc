"""Modules over finite-dimensional algebras and their free resolutions.

A free module ``B^r`` has k-basis ``b_l e_i`` at index ``i * dim B + l``.
A B-linear map ``B^s -> B^r`` is stored by the images of the generators,
``e_j -> sum_i M_ij e_i`` with ``M_ij`` in ``B``; its k-matrix has block
``(i, j)`` equal to right multiplication by ``M_ij``.

Degree ``-q`` of a resolution is ``P^{-q} = B^{r_q}``; ``d_q: P^{-q} -> P^{-q+1}``
for ``q >= 1`` and the augmentation ``P^0 -> M``.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Sequence

from .algebra import FinDimAlgebra, enveloping
from .complexes import CochainComplex, FormatError, _Lines, read_complex_block, read_matrix
from .linalg import Echelon, Field, Matrix, axpy, rank, rank_and_kernel

__all__ = [
    "Module", "bimodule_of", "quotient_module", "FreeResolution", "ResolutionError",
    "bar_resolution", "free_resolution", "periodic_resolution", "load_resolution",
    "format_resolution", "truncated_poly_periodic_resolution", "ext_dims",
]


class Module:
    """Left module over ``algebra``: ``actions[l]`` is the matrix of ``b_l``."""

    def __init__(self, algebra: FinDimAlgebra, dim: int, actions: Sequence[Matrix], name: str = ""):
        if len(actions) != algebra.dim:
            raise ValueError("need one action matrix per basis element")
        for m in actions:
            if m.shape != (dim, dim):
                raise ValueError(f"action matrix has shape {m.shape}, expected {(dim, dim)}")
        self.algebra = algebra
        self.dim = dim
        self.actions = list(actions)
        self.name = name
        self._cache: dict = {}

    def act(self, b: dict) -> Matrix:
        key = tuple(sorted(b.items()))
        m = self._cache.get(key)
        if m is None:
            f = self.algebra.field
            entries: dict = {}
            for l, c in b.items():
                for (i, j), v in _entries(self.actions[l]).items():
                    entries[(i, j)] = f.add(entries.get((i, j), f.zero), f.mul(c, v))
            m = Matrix.from_dict(f, self.dim, self.dim, entries)
            self._cache[key] = m
        return m

    def apply(self, b: dict, v: dict) -> dict:
        return self.act(b).matvec(v)

    def validate(self) -> "Module":
        a = self.algebra
        f = a.field
        if self.act(a.unit) != Matrix.identity(f, self.dim):
            raise ValueError("unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                if self.act(a.table[i][j]) != self.actions[i] @ self.actions[j]:
                    raise ValueError(f"action is not multiplicative on ({a.labels[i]}, {a.labels[j]})")
        return self

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim})"


def _entries(m: Matrix) -> dict:
    return {(i, j): c for i, row in enumerate(m.rows()) for j, c in row.items()}


def bimodule_of(a: FinDimAlgebra, env: FinDimAlgebra | None = None) -> Module:
    """``A`` as a left ``A^e``-module: ``(x (x) y) m = x m y``."""
    env = env or enveloping(a)
    d = a.dim
    f = a.field
    acts = []
    for i in range(d):
        for j in range(d):
            acts.append(a.left_matrix({i: f.one}) @ a.right_matrix({j: f.one}))
    return Module(env, d, acts, name=f"bimodule of dim {d}")


def quotient_module(b: FinDimAlgebra, gens: Sequence[dict], name: str = "") -> Module:
    """``B / (B g_1 + ... + B g_s)`` for a left ideal, as a left ``B``-module."""
    f = b.field
    ech = Echelon(f)
    for g in gens:
        for l in range(b.dim):
            v = b.mul({l: f.one}, g)
            if v:
                ech.add(v)
    piv = set(ech.pivots)
    comp = [i for i in range(b.dim) if i not in piv]
    pos = {c: k for k, c in enumerate(comp)}
    acts = []
    for l in range(b.dim):
        cols = []
        for c in comp:
            rem, _ = ech.reduce(b.mul({l: f.one}, {c: f.one}))
            cols.append({pos[i]: v for i, v in rem.items()})
        acts.append(Matrix.from_columns(f, len(comp), cols))
    return Module(b, len(comp), acts, name=name)


class ResolutionError(ValueError):
    def __init__(self, failures: Sequence[str]):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class FreeResolution:
    """Free resolution ``... -> B^{r_1} -> B^{r_0} -> M`` built on demand.

    ``augmentation[j]`` is the image of generator ``j`` of ``P^0`` in ``M``;
    ``step(q)`` returns ``(r_q, columns)`` where ``columns[j]`` maps target
    generator indices to elements of ``B``.  ``length`` is ``None`` when the
    resolution can be extended indefinitely.
    """

    def __init__(self, algebra: FinDimAlgebra, module: Module, rank0: int,
                 augmentation: Sequence[dict], step: Callable[[int], tuple],
                 length: int | None = None, provenance: str = "user-supplied"):
        self.algebra = algebra
        self.module = module
        self.field = algebra.field
        self.provenance = provenance
        self.length = length
        self._ranks = {0: rank0}
        self.augmentation = [dict(v) for v in augmentation]
        if len(self.augmentation) != rank0:
            raise ValueError("augmentation needs one image per generator")
        self._step = step
        self._cols: dict[int, list] = {}
        self._kdiff: dict[int, Matrix] = {}
        self._checked = -1

    # structure
    def _ensure(self, q: int) -> None:
        if q < 1 or q in self._cols:
            return
        if self.length is not None and q > self.length:
            raise ResolutionError([f"resolution has length {self.length}, degree {-q} requested"])
        self._ensure(q - 1)
        r, cols = self._step(q)
        if len(cols) != r:
            raise ResolutionError([f"degree {-q}: {len(cols)} generator images for rank {r}"])
        self._ranks[q] = r
        self._cols[q] = cols

    def rank(self, q: int) -> int:
        if q < 0:
            return 0
        self._ensure(q)
        return self._ranks[q]

    def kdim(self, q: int) -> int:
        return self.rank(q) * self.algebra.dim

    def columns(self, q: int) -> list[dict]:
        """Generator images of ``d_q`` as ``{target generator: element of B}``."""
        self._ensure(q)
        return self._cols[q]

    def kdiff(self, q: int) -> Matrix:
        """k-matrix of ``d_q: P^{-q} -> P^{-q+1}``; ``q = 0`` is the augmentation."""
        m = self._kdiff.get(q)
        if m is not None:
            return m
        b = self.algebra
        f = self.field
        db = b.dim
        if q == 0:
            cols = []
            for j, img in enumerate(self.augmentation):
                for l in range(db):
                    cols.append(self.module.apply({l: f.one}, img))
            m = Matrix.from_columns(f, self.module.dim, cols)
        else:
            cols = []
            for col in self.columns(q):
                for l in range(db):
                    v: dict = {}
                    for i, coeff in col.items():
                        prod = b.mul({l: f.one}, coeff)
                        for k, c in prod.items():
                            v[i * db + k] = c
                    cols.append(v)
            m = Matrix.from_columns(f, self.kdim(q - 1), cols)
        self._kdiff[q] = m
        return m

    def act(self, elem: dict, q: int, v: dict) -> dict:
        """Left action of ``elem`` in ``B`` on a vector of ``P^{-q}``."""
        b = self.algebra
        db = b.dim
        blocks: dict = {}
        for idx, c in v.items():
            i, l = divmod(idx, db)
            blocks.setdefault(i, {})[l] = c
        out = {}
        for i, x in blocks.items():
            for k, c in b.mul(elem, x).items():
                out[i * db + k] = c
        return out

    def apply_linear(self, cols: Sequence[dict], v_images: Sequence[dict], q_target: int) -> list[dict]:
        """Images of generators under ``e_j -> sum_i M_ij img_i`` (``img_i`` in ``P^{-q_target}``)."""
        out = []
        f = self.field
        for col in cols:
            acc: dict = {}
            for i, coeff in col.items():
                axpy(f, acc, f.one, self.act(coeff, q_target, v_images[i]))
            out.append(acc)
        return out

    def complex(self, length: int) -> CochainComplex:
        """Underlying k-complex in degrees ``-length .. 0`` (augmentation dropped)."""
        dims = [self.kdim(q) for q in range(length, -1, -1)]
        diffs = {-q: self.kdiff(q) for q in range(1, length + 1)}
        return CochainComplex(self.field, -length, dims, diffs)

    def verify(self, upto: int) -> "FreeResolution":
        """Check ``d^2 = 0`` and exactness of the augmented complex through degree ``-upto``."""
        if upto <= self._checked:
            return self
        failures = []
        ranks = {0: rank(self.kdiff(0))}
        if ranks[0] != self.module.dim:
            failures.append(f"augmentation is not surjective (rank {ranks[0]} < {self.module.dim})")
        for q in range(1, upto + 2):
            if self.length is not None and q > self.length:
                break
            prod = self.kdiff(q - 1) @ self.kdiff(q)
            if not prod.is_zero():
                failures.append(f"d^2 != 0 at degree {-q + 1}"
                                if q > 1 else "augmentation does not kill the image of degree -1")
            ranks[q] = rank(self.kdiff(q))
        for q in range(0, upto + 1):
            if q + 1 not in ranks:
                break
            h = self.kdim(q) - ranks[q] - ranks[q + 1]
            if h:
                failures.append(f"augmented complex has homology of dimension {h} in degree {-q}")
        if failures:
            raise ResolutionError(failures)
        self._checked = upto
        return self

    def __repr__(self):
        return (f"FreeResolution({self.provenance}, module dim {self.module.dim},"
                f" length {'inf' if self.length is None else self.length})")


# --- constructions ----------------------------------------------------------------

def bar_resolution(a: FinDimAlgebra, length: int | None = None) -> FreeResolution:
    """Unnormalized bar resolution ``A (x) A^{(x)q} (x) A`` of ``A`` over ``A^e``.

    Generator ``1 (x) b_{i_1} .. b_{i_q} (x) 1`` sits at the base-``d`` index
    of ``(i_1, .., i_q)``.  Components are built lazily.
    """
    env = enveloping(a)
    d = a.dim
    f = a.field
    unit = a.unit

    def left(i):   # b_i (x) 1
        return {i * d + k: c for k, c in unit.items()}

    def right(i):  # 1 (x) b_i
        return {k * d + i: c for k, c in unit.items()}

    def index(t):
        s = 0
        for i in t:
            s = s * d + i
        return s

    def step(q):
        cols = []
        for t in product(range(d), repeat=q):
            col: dict = {}

            def add(target, elem, coeff):
                cur = col.setdefault(target, {})
                axpy(f, cur, coeff, elem)
                if not cur:
                    del col[target]

            add(index(t[1:]), left(t[0]), f.one)
            for i in range(1, q):
                sign = f.one if i % 2 == 0 else f.neg(f.one)
                for m, c in a.table[t[i - 1]][t[i]].items():
                    add(index(t[:i - 1] + (m,) + t[i + 1:]), env.unit, f.mul(sign, c))
            add(index(t[:-1]), right(t[-1]), f.one if q % 2 == 0 else f.neg(f.one))
            cols.append(col)
        return d ** q, cols

    module = bimodule_of(a, env)
    return FreeResolution(env, module, 1, [dict(unit)], step, length, provenance="bar")


def periodic_resolution(algebra: FinDimAlgebra, module: Module, augmentation: Sequence[dict],
                        columns: Sequence[list], period: int | None = None,
                        provenance: str = "user-supplied") -> FreeResolution:
    """Resolution from explicit differentials ``columns[q-1] = d_q``.

    With ``period = p`` the differentials repeat: ``d_q = d_{q-p}`` beyond the
    given ones, and the resolution has no finite length.
    """
    cols = [list(c) for c in columns]
    r0 = len(augmentation)
    ranks = [r0] + [len(c) for c in cols]
    given = len(cols)
    if period is not None:
        if period < 1 or period > given:
            raise ResolutionError([f"period {period} needs at least that many differentials"])
        if ranks[given] != ranks[given - period]:
            raise ResolutionError([f"ranks {ranks[given - period]} and {ranks[given]} at degrees"
                                   f" {period - given} and {-given} break period {period}"])

    def step(q):
        if q <= given:
            c = cols[q - 1]
        else:
            c = cols[(q - 1 - given) % period + given - period]
        return len(c), c

    length = None if period is not None else given
    prov = "periodic-extended" if period is not None else provenance
    return FreeResolution(algebra, module, r0, augmentation, step, length, provenance=prov)


def truncated_poly_periodic_resolution(a: FinDimAlgebra, m: int) -> FreeResolution:
    """The 2-periodic bimodule resolution of ``k[x]/(x^m)``.

    Ranks are all 1; the maps alternate ``x (x) 1 - 1 (x) x`` and
    ``sum_i x^i (x) x^{m-1-i}``.  ``a`` must have basis ``1, x, .., x^{m-1}``.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    env = enveloping(a)
    f = a.field
    d = a.dim
    if d != m:
        raise ValueError("basis size does not match m")
    odd = {0: {1 * d + 0: f.one, 0 * d + 1: f.neg(f.one)}}
    even = {0: {i * d + (m - 1 - i): f.one for i in range(m)}}
    return periodic_resolution(env, bimodule_of(a, env), [dict(a.unit)],
                               [[odd], [even]], period=2)


def free_resolution(b: FinDimAlgebra, module: Module, length: int | None = None) -> FreeResolution:
    """A free resolution of ``module`` by greedy choice of generators.

    Each kernel is generated by the first kernel basis vectors that enlarge
    the submodule spanned so far.
    """
    f = b.field
    db = b.dim

    def span_gens(vectors, act, dim):
        chosen = []
        ech = Echelon(f)
        for v in vectors:
            if ech.contains(v):
                continue
            chosen.append(v)
            for l in range(db):
                w = act({l: f.one}, v)
                if w:
                    ech.add(w)
            if len(ech) == dim:
                break
        return chosen

    basis = [{i: f.one} for i in range(module.dim)]
    aug = span_gens(basis, module.apply, module.dim)
    state = {"res": None}

    def step(q):
        res = state["res"]
        m = res.kdiff(q - 1)
        _, kernel = rank_and_kernel(m)
        if not kernel:
            return 0, []
        act = lambda e, v: res.act(e, q - 1, v)
        gens = span_gens(kernel, act, len(kernel))
        cols = []
        for v in gens:
            col: dict = {}
            for idx, c in v.items():
                i, l = divmod(idx, db)
                col.setdefault(i, {})[l] = c
            cols.append(col)
        return len(cols), cols

    res = FreeResolution(b, module, len(aug), aug, step, length, provenance="greedy")
    state["res"] = res
    return res


def ext_dims(res: FreeResolution, n_max: int, module: Module | None = None) -> dict[int, int]:
    """``dim Ext^n_B(M, N)`` for ``n = 0..n_max`` from ``Hom_B(P, N)``.

    ``N`` defaults to the resolved module, so a bimodule resolution of ``A``
    gives ordinary Hochschild cohomology.
    """
    from .complexes import CochainComplex, homology_dims
    n_mod = module or res.module
    f = res.field
    e = n_mod.dim
    diffs = {}
    for q in range(n_max + 1):
        cols = []
        for i in range(res.rank(q)):
            for k in range(e):
                img: dict = {}
                for j, col in enumerate(res.columns(q + 1)):
                    b = col.get(i)
                    if b:
                        for k2, c in n_mod.apply(b, {k: f.one}).items():
                            img[j * e + k2] = c
                cols.append(img)
        diffs[q] = Matrix.from_columns(f, res.rank(q + 1) * e, cols)
    dims = [res.rank(q) * e for q in range(n_max + 2)]
    h = homology_dims(CochainComplex(f, 0, dims, diffs))
    return {n: h[n] for n in range(n_max + 1)}


# --- text format -------------------------------------------------------------------

def format_resolution(res: FreeResolution, length: int, period: int | None = None) -> str:
    """Serialize ``length`` differentials plus ranks and augmentation."""
    from .complexes import format_complex, format_matrix_rows
    ranks = [res.rank(q) for q in range(length + 1)]
    lines = ["resolution", f"field {res.field!r}", "ranks " + " ".join(map(str, ranks))]
    lines.append(format_complex(res.complex(length)).rstrip("\n"))
    aug = res.kdiff(0)
    lines.append(f"augmentation {aug.nrows} {aug.ncols}")
    lines.extend(format_matrix_rows(aug))
    if period is not None:
        lines.append(f"period {period}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def load_resolution(text: str, algebra: FinDimAlgebra, source: str = "<text>",
                    verify_upto: int | None = None) -> FreeResolution:
    """Read a bimodule resolution of ``algebra`` and re-verify every invariant.

    Format::

        resolution
        field QQ
        ranks r_0 r_1 ... r_L
        complex ... end          # degrees -L..0, k-matrices over A^e
        augmentation DIM_A r_0*DIM_A
        <rows>
        period p                 # optional
        end
    """
    lines = _Lines(text, source)
    no, line = lines.take()
    if line != "resolution":
        raise lines.error(no, "expected 'resolution'")
    field = algebra.field
    ranks = None
    cx = None
    aug = None
    period = None
    while True:
        no, line = lines.take()
        word, _, rest = line.partition(" ")
        if word == "end":
            break
        if word == "field":
            fld = Field.parse(rest)
            if fld != field:
                raise lines.error(no, f"field {fld!r} differs from the algebra's {field!r}")
        elif word == "ranks":
            ranks = [int(x) for x in rest.split()]
        elif word == "complex":
            lines.i -= 1
            try:
                cx = read_complex_block(lines, field, check=False)
            except FormatError:
                raise
            except ValueError as exc:
                raise FormatError(f"{source}: {exc}") from None
        elif word == "augmentation":
            r, c = (int(x) for x in rest.split())
            aug = read_matrix(lines, field, r, c)
        elif word == "period":
            period = int(rest)
        else:
            raise lines.error(no, f"unknown directive {word!r}")
    if ranks is None or cx is None or aug is None:
        raise FormatError(f"{source}: resolution needs 'ranks', a complex and 'augmentation'")
    return resolution_from_matrices(algebra, ranks, cx, aug, period, verify_upto)


def resolution_from_matrices(algebra: FinDimAlgebra, ranks: Sequence[int], cx: CochainComplex,
                             aug: Matrix, period: int | None = None,
                             verify_upto: int | None = None) -> FreeResolution:
    """Bimodule resolution from k-matrices, checking freeness, ``d^2`` and exactness."""
    env = enveloping(algebra)
    module = bimodule_of(algebra, env)
    db = env.dim
    failures = []
    length = len(ranks) - 1
    if cx.hi != 0 or cx.lo != -length:
        failures.append(f"complex must occupy degrees {-length}..0 for {len(ranks)} ranks")
        raise ResolutionError(failures)
    for q, r in enumerate(ranks):
        if cx.dim(-q) != r * db:
            failures.append(f"degree {-q}: dimension {cx.dim(-q)} is not rank {r} times {db}")
    if aug.shape != (algebra.dim, ranks[0] * db):
        failures.append(f"augmentation has shape {aug.shape}, expected {(algebra.dim, ranks[0] * db)}")
    if failures:
        raise ResolutionError(failures)
    for q in range(1, length):
        if not (cx.differential(-q) @ cx.differential(-q - 1)).is_zero():
            failures.append(f"d^2 != 0 at degree {-q}")
    if length >= 1 and not (aug @ cx.differential(-1)).is_zero():
        failures.append("augmentation does not kill the image of degree -1")
    # generator images: apply each k-matrix to the unit placed in block j
    columns = []
    for q in range(1, length + 1):
        m = cx.differential(-q)
        cols = []
        for j in range(ranks[q]):
            img = m.matvec({j * db + k: c for k, c in env.unit.items()})
            col: dict = {}
            for idx, c in img.items():
                i, l = divmod(idx, db)
                col.setdefault(i, {})[l] = c
            cols.append(col)
        columns.append(cols)
    augmentation = [aug.matvec({j * db + k: c for k, c in env.unit.items()}) for j in range(ranks[0])]
    try:
        res = periodic_resolution(env, module, augmentation, columns, period)
    except ResolutionError as exc:
        raise ResolutionError(failures + exc.failures) from None
    for q in range(1, length + 1):
        if res.kdiff(q) != cx.differential(-q):
            failures.append(f"degree {-q}: differential is not A^e-linear")
    if res.kdiff(0) != aug:
        failures.append("augmentation is not A^e-linear")
    if failures:
        raise ResolutionError(failures)
    upto = verify_upto if verify_upto is not None else (length + (period or 0))
    if period is None:
        upto = min(upto, length - 1)
    res.verify(max(upto, 0))
    return res

"""Singular (Tate) cohomology as a colimit over brutal truncations.

For a free resolution ``P -> N`` over ``B`` and a resolution ``S -> M``,

    Hom_D(M, Sigma^n sigma_{<=-q} P)  =  H^{n+q} Hom_B(S, Omega_q),

where ``Omega_q = coker(P^{-q-1} -> P^{-q})``, because ``sigma_{<=-q} P`` is
quasi-isomorphic to ``Omega_q`` placed in degree ``-q``.  The structure map
to depth ``q + 1`` is induced by the degreewise quotient of truncations; on
representatives it is the connecting map: lift a cocycle ``f`` to
``F: S^{-t} -> P^{-q}``, then solve ``d_P z = (-1)^n F(d_S e)`` for each
generator ``e`` of ``S^{-t-1}`` and project ``z`` to ``Omega_{q+1}``.

Singular Hochschild cohomology is the case ``B = A^e`` and ``M = N = A``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import FinDimAlgebra, make_algebra
from .complexes import ChainMap, homology_dims, truncate
from .linalg import ColumnSolver, Echelon, Matrix, axpy, rank, rank_and_kernel
from .resolutions import FreeResolution, ResolutionError, bar_resolution

__all__ = [
    "TateEngine", "StabilizationTrace", "SingularClass", "hhsg_dim", "stable_ext_dim",
    "hhsg_product", "unit_class", "degree_zero_algebra", "syzygy_identification_check",
    "ProductError", "STABLE_RUN", "InconclusiveError", "product_table",
]

STABLE_RUN = 3


class ProductError(RuntimeError):
    def __init__(self, msg: str, obstruction_rank: int):
        super().__init__(f"{msg} (last obstruction rank {obstruction_rank})")
        self.obstruction_rank = obstruction_rank


class _Omega:
    """``Omega_q = P^{-q} / im d_{q+1}`` with the echelon complement as basis."""

    def __init__(self, res: FreeResolution, q: int):
        self.res = res
        self.q = q
        f = res.field
        self.ech = Echelon(f, track=True)
        m = res.kdiff(q + 1)
        for j, col in enumerate(m.columns()):
            if col:
                self.ech.add(col, {j: f.one})
        piv = set(self.ech.pivots)
        self.basis = [i for i in range(res.kdim(q)) if i not in piv]
        self.pos = {c: k for k, c in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._actions: dict = {}

    def project(self, v: dict) -> dict:
        rem, _ = self.ech.reduce(v)
        return {self.pos[i]: c for i, c in rem.items()}

    def lift(self, w: dict) -> dict:
        return {self.basis[k]: c for k, c in w.items()}

    def preimage(self, v: dict) -> dict:
        rem, comb = self.ech.reduce(v)
        if rem:
            raise ArithmeticError(f"vector is not a boundary in degree {-self.q}")
        return comb

    def action(self, b: dict) -> Matrix:
        key = tuple(sorted(b.items()))
        m = self._actions.get(key)
        if m is None:
            cols = [self.project(self.res.act(b, self.q, {c: self.res.field.one}))
                    for c in self.basis]
            m = Matrix.from_columns(self.res.field, self.dim, cols)
            self._actions[key] = m
        return m


class _Ext:
    """``H^t Hom_B(S, Omega_q)`` with representatives and a coordinate reader."""

    def __init__(self, eng: "TateEngine", n: int, q: int):
        self.n, self.q, self.t = n, q, n + q
        self.omega = eng.omega(q)
        t = self.t
        f = eng.field
        self.reps: list[dict] = []
        self.ech = Echelon(f, track=True)
        if t < 0 or self.omega.dim == 0:
            self.dim = 0
            return
        delta = eng.hom_differential(q, t)
        _, kernel = rank_and_kernel(delta)
        if t >= 1:
            for col in eng.hom_differential(q, t - 1).columns():
                if col:
                    self.ech.add(col, {})
        for v in kernel:
            piv, _ = self.ech.add(v, {len(self.reps): f.one})
            if piv is not None:
                self.reps.append(v)
        self.dim = len(self.reps)

    def coords(self, z: dict) -> dict:
        if self.dim == 0:
            return {}
        rem, comb = self.ech.reduce(z)
        if rem:
            raise ArithmeticError("vector is not a cocycle")
        return comb


class TateEngine:
    """Caches for ``Hom_D(M, Sigma^n sigma_{<=-q} P)`` with source ``S`` and target ``P``."""

    def __init__(self, target: FreeResolution, source: FreeResolution | None = None):
        self.target = target
        self.source = source if source is not None else target
        if self.source.algebra is not target.algebra:
            raise ValueError("source and target resolutions live over different algebras")
        self.field = target.field
        self._omega: dict = {}
        self._hom: dict = {}
        self._ext: dict = {}
        self._maps: dict = {}

    def omega(self, q: int) -> _Omega:
        if q not in self._omega:
            self._omega[q] = _Omega(self.target, q)
        return self._omega[q]

    def hom_differential(self, q: int, t: int) -> Matrix:
        """``Hom_B(S^{-t}, Omega_q) -> Hom_B(S^{-t-1}, Omega_q)``, blocks ``f(e_i)``."""
        key = (q, t)
        m = self._hom.get(key)
        if m is not None:
            return m
        om = self.omega(q)
        w = om.dim
        src = self.source
        entries: dict = {}
        for j, col in enumerate(src.columns(t + 1)):
            for i, coeff in col.items():
                act = om.action(coeff)
                for a, row in enumerate(act.rows()):
                    for b, c in row.items():
                        k = (j * w + a, i * w + b)
                        entries[k] = self.field.add(entries.get(k, self.field.zero), c)
        m = Matrix.from_dict(self.field, src.rank(t + 1) * w, src.rank(t) * w, entries)
        self._hom[key] = m
        return m

    def ext(self, n: int, q: int) -> _Ext:
        key = (n, q)
        if key not in self._ext:
            self._ext[key] = _Ext(self, n, q)
        return self._ext[key]

    # chain-map mechanics
    def lift_top(self, n: int, q: int, z: dict) -> list[dict]:
        """Generator images ``S^{-t} -> P^{-q}`` lifting the cochain ``z``."""
        om = self.omega(q)
        w = om.dim
        blocks: list[dict] = [dict() for _ in range(self.source.rank(n + q))]
        for idx, c in z.items():
            i, k = divmod(idx, w)
            blocks[i][k] = c
        return [om.lift(b) for b in blocks]

    def extend(self, n: int, t: int, q: int, images: Sequence[dict]) -> list[dict]:
        """Next component down: from ``S^{-t} -> P^{-q}`` to ``S^{-t-1} -> P^{-q-1}``."""
        f = self.field
        sign = f.one if n % 2 == 0 else f.neg(f.one)
        om = self.omega(q)
        out = []
        for col in self.source.columns(t + 1):
            acc: dict = {}
            for i, coeff in col.items():
                axpy(f, acc, sign, self.target.act(coeff, q, images[i]))
            out.append(om.preimage(acc) if acc else {})
        return out

    def cochain(self, q: int, images: Sequence[dict]) -> dict:
        """Project top generator images to a cochain in ``Hom_B(S^{-t}, Omega_q)``."""
        om = self.omega(q)
        w = om.dim
        z: dict = {}
        for i, v in enumerate(images):
            for k, c in om.project(v).items():
                z[i * w + k] = c
        return z

    def transition(self, n: int, q: int) -> Matrix:
        """Matrix of ``E(n, q) -> E(n, q+1)`` in the representative bases."""
        key = (n, q)
        m = self._maps.get(key)
        if m is not None:
            return m
        e0 = self.ext(n, q)
        e1 = self.ext(n, q + 1)
        cols = []
        for z in e0.reps:
            top = self.lift_top(n, q, z)
            nxt = self.extend(n, n + q, q, top)
            cols.append(e1.coords(self.cochain(q + 1, nxt)))
        m = Matrix.from_columns(self.field, e1.dim, cols)
        self._maps[key] = m
        return m

    def check_lengths(self, n: int, q_max: int) -> None:
        """Both resolutions must reach the degrees the computation touches."""
        need_p = q_max + 2
        need_s = n + q_max + 2
        for res, need, name in ((self.target, need_p, "target"), (self.source, need_s, "source")):
            if res.length is not None and res.length < need:
                raise ResolutionError([f"{name} resolution has length {res.length};"
                                       f" degree {n} up to q_max={q_max} needs {need}"])


@dataclass
class StabilizationTrace:
    """Per-depth dimensions of ``Hom_D(M, Sigma^n sigma_{<=-q} P)`` and map ranks."""

    n: int
    q_max: int
    entries: list = dc_field(default_factory=list)
    stabilized_at: int | None = None
    dimension: int | None = None

    @property
    def verdict(self) -> str:
        if self.stabilized_at is None:
            return f"inconclusive at q_max={self.q_max}"
        return f"stabilized at q={self.stabilized_at}"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q_max": self.q_max,
            "verdict": "stabilized" if self.stabilized_at is not None else "inconclusive",
            "stabilized_at": self.stabilized_at,
            "dimension": self.dimension,
            "trace": [dict(e) for e in self.entries],
        }


def _trace(eng: TateEngine, n: int, q_max: int, run: int = STABLE_RUN) -> StabilizationTrace:
    eng.check_lengths(n, q_max)
    tr = StabilizationTrace(n, q_max)
    start = max(0, -n)
    iso_run = 0
    for q in range(start, q_max + 1):
        dim = eng.ext(n, q).dim
        entry = {"q": q, "dim": dim}
        if q < q_max:
            m = eng.transition(n, q)
            r = rank(m)
            nxt = eng.ext(n, q + 1).dim
            entry["map_rank"] = r
            iso = r == dim == nxt
            entry["iso"] = iso
            iso_run = iso_run + 1 if iso else 0
        tr.entries.append(entry)
        if iso_run >= run:
            tr.stabilized_at = q + 1 - run
            tr.dimension = eng.ext(n, tr.stabilized_at).dim
            tr.entries.append({"q": q + 1, "dim": eng.ext(n, q + 1).dim})
            break
    return tr


def _default_resolution(a: FinDimAlgebra, resolution) -> FreeResolution:
    return resolution if resolution is not None else bar_resolution(a)


def hhsg_dim(a: FinDimAlgebra, n: int, q_max: int = 8, resolution: FreeResolution | None = None,
             source: FreeResolution | None = None, engine: TateEngine | None = None,
             ) -> tuple[int | None, StabilizationTrace]:
    """``dim HH_sg^n(A, A)`` from the truncation colimit, with its trace.

    ``resolution`` defaults to the bar resolution and also serves as the
    source unless ``source`` is given.  The dimension is ``None`` when the
    trace is inconclusive.
    """
    eng = engine or TateEngine(_default_resolution(a, resolution), source)
    tr = _trace(eng, n, q_max)
    used = (tr.entries[-1]["q"] if tr.entries else 0) + 1
    eng.target.verify(used)
    return tr.dimension, tr


def stable_ext_dim(res: FreeResolution, n: int, q_max: int = 8,
                   target: FreeResolution | None = None) -> tuple[int | None, StabilizationTrace]:
    """Stable ``Ext^n(M, N)`` for one-sided modules (``res`` resolves ``M``)."""
    eng = TateEngine(target if target is not None else res, res)
    tr = _trace(eng, n, q_max)
    return tr.dimension, tr


# --- classes and products ------------------------------------------------------------

class SingularClass:
    """Chain map ``S -> Sigma^n sigma_{<=-q} P`` given by B-linear components.

    ``components[j]`` lists the images of the generators of ``S^{-j}`` in
    ``P^{-j+n}``; the top one is ``j = n + q`` and lower ones are filled in
    on demand by solving the lifting equations.
    """

    def __init__(self, engine: TateEngine, n: int, q: int, top: Sequence[dict]):
        if n + q < 0:
            raise ValueError("truncation depth too small for this degree")
        self.engine = engine
        self.n = n
        self.q = q
        self.components: dict[int, list] = {n + q: [dict(v) for v in top]}

    @classmethod
    def from_coords(cls, engine: TateEngine, n: int, q: int, coords: Sequence) -> "SingularClass":
        e = engine.ext(n, q)
        f = engine.field
        z: dict = {}
        for k, c in enumerate(coords):
            c = f(c)
            if c:
                axpy(f, z, c, e.reps[k])
        return cls(engine, n, q, engine.lift_top(n, q, z))

    @property
    def degree(self) -> int:
        return self.n

    def component(self, j: int) -> list[dict]:
        """Generator images of ``S^{-j} -> P^{-j+n}`` (``j >= n + q``)."""
        top = self.n + self.q
        if j < top:
            raise ValueError(f"component {j} lies above the top {top}")
        last = max(self.components)
        while last < j:
            self.components[last + 1] = self.engine.extend(self.n, last, last - self.n,
                                                           self.components[last])
            last += 1
        return self.components[j]

    def at_depth(self, r: int) -> "SingularClass":
        """Image under the truncation quotient to depth ``r >= q``."""
        if r < self.q:
            raise ValueError("can only deepen")
        out = SingularClass(self.engine, self.n, r, self.component(self.n + r))
        for j, v in self.components.items():
            if j >= self.n + r:
                out.components[j] = v
        return out

    def coords(self, r: int | None = None) -> list:
        """Coordinates in the representative basis of ``E(n, r)``."""
        cls = self if r is None or r == self.q else self.at_depth(r)
        eng = self.engine
        e = eng.ext(cls.n, cls.q)
        c = e.coords(eng.cochain(cls.q, cls.components[cls.n + cls.q]))
        return [c.get(k, eng.field.zero) for k in range(e.dim)]

    def is_zero(self) -> bool:
        return not any(self.coords())

    def chain_map(self, depth: int) -> ChainMap:
        """The components from the top down to ``S^{-depth}`` as a k-linear chain map.

        Source is ``sigma_{>=-depth} S`` and target ``Sigma^n`` of
        ``P^{-depth+n} -> ... -> P^{-q}``; construction verifies commutation.
        """
        eng = self.engine
        src, tgt = eng.source, eng.target
        top = self.n + self.q
        if depth < top:
            raise ValueError("depth above the top component")
        s_cx = src.complex(depth)
        lo_t = depth - self.n
        t_cx = truncate(tgt.complex(lo_t), -self.q, "<=").shift(self.n)
        db = src.algebra.dim
        maps = {}
        for j in range(top, depth + 1):
            imgs = self.component(j)
            cols = []
            for v in imgs:
                for l in range(db):
                    cols.append(tgt.act({l: eng.field.one}, j - self.n, v))
            maps[-j] = Matrix.from_columns(eng.field, tgt.kdim(j - self.n), cols)
        return ChainMap(s_cx, t_cx, maps)

    def __repr__(self):
        return f"SingularClass(degree={self.n}, depth={self.q})"


def unit_class(engine: TateEngine) -> SingularClass:
    """Identity of ``P^0`` at depth 0: the class of the augmentation."""
    if engine.source is not engine.target:
        raise ValueError("the unit class needs source = target")
    db = engine.target.algebra.dim
    unit = engine.target.algebra.unit
    top = [{i * db + k: c for k, c in unit.items()} for i in range(engine.target.rank(0))]
    return SingularClass(engine, 0, 0, top)


def hhsg_product(f: SingularClass, g: SingularClass, depth_cap: int = 10) -> SingularClass:
    """Composite ``Sigma^{deg g} f o g`` of degree ``deg f + deg g``.

    ``f`` is first restricted from ``P`` to ``sigma_{<=-p} P`` (``p`` the depth
    of ``g``), which requires the target depth ``r = max(q_f, p - deg f)``.
    """
    eng = f.engine
    if g.engine is not eng:
        raise ValueError("classes computed with different engines")
    if eng.source is not eng.target:
        raise ValueError("products need source = target resolution")
    n, m = f.n, g.n
    r = max(f.q, g.q - n, -(m + n), 0)
    if r > depth_cap:
        raise ProductError(f"composite needs truncation depth {r} > depth_cap {depth_cap}",
                           eng.ext(n, f.q).dim)
    t = m + n + r
    g_imgs = g.component(t)           # S^{-t} -> P^{-(n+r)}
    f_imgs = f.component(n + r)       # S^{-(n+r)} -> P^{-r}
    res = eng.target
    db = res.algebra.dim
    fld = eng.field
    top = []
    for v in g_imgs:
        acc: dict = {}
        blocks: dict = {}
        for idx, c in v.items():
            i, l = divmod(idx, db)
            blocks.setdefault(i, {})[l] = c
        for i, x in blocks.items():
            axpy(fld, acc, fld.one, res.act(x, r, f_imgs[i]))
        top.append(acc)
    # the composite must be a cocycle at its depth
    obstruction = eng.hom_differential(r, t).matvec(eng.cochain(r, top))
    if obstruction:
        raise ProductError("composite is not a cocycle", len(obstruction))
    return SingularClass(eng, m + n, r, top)


def degree_zero_algebra(engine: TateEngine, depth: int) -> tuple[FinDimAlgebra, list[SingularClass]]:
    """``HH_sg^0`` as an algebra, from the representatives of ``E(0, depth)``.

    ``depth`` should lie in the stable range.  Structure constants are read
    after pushing products back to a common depth.
    """
    e = engine.ext(0, depth)
    d = e.dim
    basis = [SingularClass.from_coords(engine, 0, depth, [1 if k == i else 0 for k in range(d)])
             for i in range(d)]
    prods = [[hhsg_product(x, y) for y in basis] for x in basis]
    deep = max([depth] + [p.q for row in prods for p in row])
    # change of basis: basis pushed to ``deep``
    pushed = Matrix.from_columns(engine.field, engine.ext(0, deep).dim,
                                 [_sparse(b.coords(deep)) for b in basis])
    if rank(pushed) != d or pushed.nrows != d:
        raise ArithmeticError(f"depth {depth} is not in the stable range")
    solver = ColumnSolver(pushed)
    table = []
    for row in prods:
        trow = []
        for p in row:
            x = solver.solve(_sparse(p.coords(deep)))
            trow.append([x.get(k, engine.field.zero) for k in range(d)])
        table.append(trow)
    u = solver.solve(_sparse(unit_class(engine).coords(deep)))
    unit = [u.get(k, engine.field.zero) for k in range(d)]
    alg = make_algebra(table, unit, [f"c{i}" for i in range(d)], engine.field)
    return alg, basis


class InconclusiveError(ArithmeticError):
    def __init__(self, trace: StabilizationTrace):
        super().__init__(f"degree {trace.n}: {trace.verdict}")
        self.trace = trace


def product_table(engine: TateEngine, n1: int, n2: int, q_max: int = 8,
                  depth_cap: int = 10) -> dict:
    """Products of stable basis classes of degrees ``n1`` and ``n2``.

    Each factor basis is the representative basis of ``E(n, s)`` at its
    stabilization depth ``s``; products are written in the basis of degree
    ``n1 + n2`` after pushing both to a common depth.
    """
    traces = {}
    for n in dict.fromkeys((n1, n2, n1 + n2)):
        tr = _trace(engine, n, q_max)
        if tr.stabilized_at is None:
            raise InconclusiveError(tr)
        traces[n] = tr

    def basis(n):
        s = traces[n].stabilized_at
        d = engine.ext(n, s).dim
        return [SingularClass.from_coords(engine, n, s, [int(k == i) for k in range(d)])
                for i in range(d)]

    left, right, target = basis(n1), basis(n2), basis(n1 + n2)
    prods = [[hhsg_product(x, y, depth_cap) for y in right] for x in left]
    deep = max([traces[n1 + n2].stabilized_at] + [p.q for row in prods for p in row])
    d3 = len(target)
    solver = ColumnSolver(Matrix.from_columns(engine.field, engine.ext(n1 + n2, deep).dim,
                                              [_sparse(b.coords(deep)) for b in target]))
    entries = []
    for i, row in enumerate(prods):
        for j, p in enumerate(row):
            x = solver.solve(_sparse(p.coords(deep)))
            if x is None:
                raise ArithmeticError(f"depth {deep} is not in the stable range")
            entries.append((i, j, [x.get(k, engine.field.zero) for k in range(d3)]))
    out = {"degrees": (n1, n2, n1 + n2), "dims": (len(left), len(right), d3),
           "depths": tuple(traces[n].stabilized_at for n in (n1, n2, n1 + n2)),
           "common_depth": deep, "products": entries}
    if n1 == n2 == 0 and engine.source is engine.target:
        u = solver.solve(_sparse(unit_class(engine).coords(deep)))
        out["unit"] = [u.get(k, engine.field.zero) for k in range(d3)]
    return out


def _sparse(v: Sequence) -> dict:
    return {i: c for i, c in enumerate(v) if c}


def syzygy_identification_check(a: FinDimAlgebra, q: int,
                                resolution: FreeResolution | None = None) -> dict:
    """Compare ``sigma_{<=-q} P`` with the syzygy ``Omega^q A``.

    The truncation, shifted by ``-q``, should have homology only in degree 0
    (the top), of the same dimension as ``ker(d_{q-1})``, and ``d_q`` should
    map the former isomorphically onto the latter.
    """
    res = _default_resolution(a, resolution)
    depth = q + 3
    cx = truncate(res.complex(depth), -q, "<=").shift(-q)
    h = homology_dims(cx)
    # the bottom degree carries the kernel of the cut-off differential
    bottom = cx.lo
    homology = {deg: v for deg, v in h.items() if deg != bottom}
    top_dim = homology.get(0, 0)
    if q == 0:
        kernel_dim = res.module.dim
        image_rank = rank(res.kdiff(0))
    else:
        below = res.kdiff(q - 1)
        kernel_dim = res.kdim(q - 1) - rank(below)
        image_rank = rank(res.kdiff(q))
    concentrated = all(v == 0 for deg, v in homology.items() if deg != 0)
    return {
        "q": q,
        "homology": {str(k): v for k, v in sorted(homology.items())},
        "concentrated": concentrated,
        "truncation_top_homology": top_dim,
        "syzygy_dim": kernel_dim,
        "induced_map_rank": image_rank,
        "isomorphic": concentrated and top_dim == kernel_dim == image_rank,
    }

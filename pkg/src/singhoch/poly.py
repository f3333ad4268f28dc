"""Multivariate polynomials with exact coefficients, monomial orders, parsing."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .linalg import QQ, Field

__all__ = [
    "MultiPoly", "MonomialOrder", "GREVLEX", "parse_poly", "jacobian",
    "PolySyntaxError", "UnknownVariableError",
]

Exps = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``grevlex``, ``lex`` or ``grlex`` plus variable priority.

    ``priority[0]`` is the index of the most significant variable.  ``None``
    means the natural order x1 > x2 > ... .
    """

    kind: str = "grevlex"
    priority: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "grlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.priority is not None and sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError("priority must be a permutation")

    def key(self, exps: Exps):
        """Sort key: larger key means larger monomial."""
        if self.priority is not None:
            exps = tuple(exps[i] for i in self.priority)
        if self.kind == "lex":
            return exps
        if self.kind == "grlex":
            return (sum(exps), exps)
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def keyfunc(self) -> Callable:
        return self.key

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        t = text.strip().lower().replace("-", "")
        aliases = {"grevlex": "grevlex", "degrevlex": "grevlex", "lex": "lex",
                   "grlex": "grlex", "gradedlex": "grlex", "deglex": "grlex"}
        if t not in aliases:
            raise ValueError(f"unknown monomial order {text!r}")
        return cls(aliases[t])


GREVLEX = MonomialOrder("grevlex")


class MultiPoly:
    """Polynomial in named variables; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Field, variables: Sequence[str], terms: dict | None = None):
        self.field = field
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != n or any(a < 0 for a in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            c = field(c)
            if c:
                clean[e] = c
        self.terms = clean

    @property
    def nvars(self) -> int:
        return len(self.vars)

    # constructors
    @classmethod
    def constant(cls, field: Field, variables: Sequence[str], c) -> "MultiPoly":
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, field: Field, variables: Sequence[str], i: int) -> "MultiPoly":
        e = [0] * len(variables)
        e[i] = 1
        return cls(field, variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, field: Field, variables: Sequence[str], exps: Exps, c=1) -> "MultiPoly":
        return cls(field, variables, {tuple(exps): c})

    def _same_ring(self, other: "MultiPoly"):
        if self.vars != other.vars or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._same_ring(other)
            return other
        return MultiPoly.constant(self.field, self.vars, other)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        f = self.field
        for e, c in other.terms.items():
            t[e] = f.add(t.get(e, f.zero), c)
        return MultiPoly(f, self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return MultiPoly(f, self.vars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        f = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = f.add(out.get(e, f.zero), f.mul(c1, c2))
        return MultiPoly(f, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.field, self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.field == other.field and self.terms == other.terms
        if isinstance(other, int):
            return self == MultiPoly.constant(self.field, self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, i: int) -> "MultiPoly":
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = f.mul(c, f(e[i]))
        return MultiPoly(f, self.vars, out)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variable ``i`` to variable ``perm[i]`` (names kept in place)."""
        n = self.nvars
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, a in enumerate(e):
                ne[perm[i]] = a
            out[tuple(ne)] = c
        return MultiPoly(self.field, self.vars, out)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monomial_str(self, e: Exps) -> str:
        parts = []
        for v, a in zip(self.vars, e):
            if a == 1:
                parts.append(v)
            elif a:
                parts.append(f"{v}^{a}")
        return "*".join(parts)

    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        f = self.field
        out = []
        for e, c in self.sorted_terms(order):
            mono = self.monomial_str(e)
            neg = f.p == 0 and c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r}, vars={self.vars}, field={self.field!r})"


# --- parsing ------------------------------------------------------------------

class PolySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


class UnknownVariableError(ValueError):
    def __init__(self, name: str, pos: int):
        super().__init__(f"unknown variable {name!r} at position {pos}")
        self.name = name
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            toks.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start, text)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], field: Field):
        self.text = text
        self.vars = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.vars)}
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.fail("expected a nonnegative integer exponent")
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.peek()
                if den[0] != "num":
                    self.fail("expected an integer denominator")
                self.take()
                if int(den[1]) == 0:
                    raise PolySyntaxError("zero denominator", den[2], self.text)
                return MultiPoly.constant(self.field, self.vars, self.field(f"{val}/{den[1]}"))
            return MultiPoly.constant(self.field, self.vars, int(val))
        if kind == "id":
            if val not in self.index:
                raise UnknownVariableError(val, pos)
            return MultiPoly.variable(self.field, self.vars, self.index[val])
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return p
        self.fail("expected a number, variable or '('", tok)


def parse_poly(text: str, variables: Sequence[str] | str, field: Field = QQ) -> MultiPoly:
    """Parse ``text`` in the given variables (a list or comma-separated string)."""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    return _Parser(text, variables, field).parse()


def jacobian(q: MultiPoly) -> list[MultiPoly]:
    """Formal partial derivatives, one per variable."""
    return [q.derivative(i) for i in range(q.nvars)]


def polys_in(variables: Iterable[str], texts: Iterable[str], field: Field = QQ) -> list[MultiPoly]:
    variables = list(variables)
    return [parse_poly(t, variables, field) for t in texts]

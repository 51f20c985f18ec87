"""Polynomial rings over Q or F_p: orders, contexts, polynomials, parsing."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ._engine import TermCoder
from .coeff import Field, QQ
from .errors import (ContextMismatch, DivisionByZero, NotBihomogeneous, PolySyntaxError,
                     UnknownVariable)

Exps = Tuple[int, ...]


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

class MonomialOrder:
    """A monomial order given by an integer matrix of full rank.

    ``rows(n)`` lists the matrix rows for ``n`` variables; terms are compared
    by the tuple of row products.  ``compare`` is an independent definition
    used to cross-check the matrix.
    """

    name = "order"

    def rows(self, n: int) -> List[Tuple[int, ...]]:
        raise NotImplementedError

    def key(self, exps: Exps):
        return tuple(sum(r[i] * e for i, e in enumerate(exps)) for r in self.rows(len(exps)))

    def compare(self, a: Exps, b: Exps) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def _ident(self):
        return ()

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def __repr__(self):
        return f"{type(self).__name__}{self._ident()!r}"


class Lex(MonomialOrder):
    name = "lex"

    def rows(self, n):
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def compare(self, a, b):
        return (a > b) - (a < b)


class GrevLex(MonomialOrder):
    """Graded reverse lexicographic, optionally with positive variable weights."""

    name = "grevlex"

    def __init__(self, weights: Optional[Sequence[int]] = None):
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if any(w <= 0 for w in weights):
                raise ValueError("grevlex weights must be positive")
        self.weights = weights

    def _ident(self):
        return (self.weights,)

    def rows(self, n):
        w = self.weights if self.weights is not None else (1,) * n
        if len(w) != n:
            raise ValueError("weight vector length does not match number of variables")
        out = [tuple(w)]
        for k in range(n - 1, 0, -1):
            out.append(tuple(-1 if j == k else 0 for j in range(n)))
        return out

    def compare(self, a, b):
        w = self.weights if self.weights is not None else (1,) * len(a)
        da = sum(x * y for x, y in zip(w, a))
        db = sum(x * y for x, y in zip(w, b))
        if da != db:
            return 1 if da > db else -1
        for x, y in zip(reversed(a), reversed(b)):
            if x != y:
                return 1 if x < y else -1
        return 0


class Weighted(MonomialOrder):
    """Compare by a non-negative weight vector first, then by a tie-break order."""

    name = "weighted"

    def __init__(self, weights: Sequence[int], tiebreak: Optional[MonomialOrder] = None):
        self.weights = tuple(int(w) for w in weights)
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        self.tiebreak = tiebreak if tiebreak is not None else GrevLex()

    def _ident(self):
        return (self.weights, self.tiebreak)

    def rows(self, n):
        if len(self.weights) != n:
            raise ValueError("weight vector length does not match number of variables")
        return [self.weights] + self.tiebreak.rows(n)

    def compare(self, a, b):
        da = sum(x * y for x, y in zip(self.weights, a))
        db = sum(x * y for x, y in zip(self.weights, b))
        if da != db:
            return 1 if da > db else -1
        return self.tiebreak.compare(a, b)


class Block(MonomialOrder):
    """Product order: blocks of variable indices compared in turn.

    Each block uses its own order (grevlex by default) on its variables, so
    any monomial involving the first block beats every monomial free of it.
    """

    name = "block"

    def __init__(self, blocks: Sequence[Sequence[int]], inner: Optional[Sequence[MonomialOrder]] = None):
        self.blocks = tuple(tuple(b) for b in blocks)
        if inner is None:
            inner = [GrevLex() for _ in self.blocks]
        self.inner = tuple(inner)
        if len(self.inner) != len(self.blocks):
            raise ValueError("one inner order per block")

    def _ident(self):
        return (self.blocks, self.inner)

    def _check(self, n):
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(n)):
            raise ValueError("blocks must partition the variables")

    def rows(self, n):
        self._check(n)
        out = []
        for b, o in zip(self.blocks, self.inner):
            for r in o.rows(len(b)):
                row = [0] * n
                for pos, i in enumerate(b):
                    row[i] = r[pos]
                out.append(tuple(row))
        return out

    def compare(self, a, b):
        for blk, o in zip(self.blocks, self.inner):
            c = o.compare(tuple(a[i] for i in blk), tuple(b[i] for i in blk))
            if c:
                return c
        return 0


@lru_cache(maxsize=256)
def _coder(n: int, rows: Tuple[Tuple[int, ...], ...]) -> TermCoder:
    return TermCoder(n, rows)


# ---------------------------------------------------------------------------
# ring contexts
# ---------------------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class RingContext:
    """k[variables]; ``block_split`` marks the first s variables as the x-block
    of a bigraded ring k[X, Y]."""

    field: Field
    variables: Tuple[str, ...]
    block_split: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not _NAME_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if self.block_split is not None and not 0 <= self.block_split <= len(self.variables):
            raise ValueError("block_split out of range")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> List["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        v = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: v} if v else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        v = self.field(coeff)
        return Polynomial(self, {tuple(exps): v} if v else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def coder(self, order: MonomialOrder) -> TermCoder:
        return _coder(self.nvars, tuple(tuple(r) for r in order.rows(self.nvars)))

    def bigrading(self) -> List[Tuple[int, ...]]:
        s = self.block_split if self.block_split is not None else self.nvars
        n = self.nvars
        return [tuple(1 if i < s else 0 for i in range(n)), tuple(0 if i < s else 1 for i in range(n))]

    def with_field(self, field: Field) -> "RingContext":
        return RingContext(field, self.variables, self.block_split)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _grevlex_sort_key(e: Exps):
    return (sum(e), tuple(-x for x in reversed(e)))


class Polynomial:
    """Immutable polynomial: a mapping exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingContext, terms: Dict[Exps, object]):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- basic access ---------------------------------------------------------
    @property
    def terms(self) -> Dict[Exps, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_coeff(self):
        return self._terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        if not self._terms:
            return -1
        return max(sum(w * x for w, x in zip(weights, e)) for e in self._terms)

    def is_homogeneous(self, weights: Optional[Sequence[int]] = None) -> bool:
        w = weights if weights is not None else (1,) * self.ring.nvars
        return len({sum(a * b for a, b in zip(w, e)) for e in self._terms}) <= 1

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def variables_used(self) -> List[str]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return [self.ring.variables[i] for i in sorted(used)]

    def sorted_terms(self, order: Optional[MonomialOrder] = None):
        if order is None:
            return sorted(self._terms.items(), key=lambda t: _grevlex_sort_key(t[0]), reverse=True)
        coder = self.ring.coder(order)
        return sorted(self._terms.items(), key=lambda t: coder.encode(t[0]), reverse=True)

    def leading_term(self, order: Optional[MonomialOrder] = None):
        """(exponents, coefficient) of the largest term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms(order or GrevLex())[0]

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading_term(order)
        return self * self.ring.field.inv(c)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextMismatch("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = F.add(out.get(e, F.zero), c)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            F = self.ring.field
            return Polynomial(self.ring, {e: F.mul(v, c) for e, v in self._terms.items()})
        other = self._coerce(other)
        F = self.ring.field
        out: Dict[Exps, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise DivisionByZero("can only divide by a nonzero constant")
            other = other.constant_coeff()
        return self * self.ring.field.inv(self.ring.field(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == self.ring.const(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ----------------------------------------------
    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        F = self.ring.field
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = F.mul(c, F(e[i]))
        return Polynomial(self.ring, out)

    def substitute(self, images: Sequence["Polynomial"], target: Optional[RingContext] = None) -> "Polynomial":
        """Ring map sending the i-th variable to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        for im in images:
            if im.ring != target:
                raise ContextMismatch("images must share a ring")
        powers: List[Dict[int, Polynomial]] = [dict() for _ in images]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        result = target.zero()
        for e, c in self._terms.items():
            t = target.const(c) if target.field == self.ring.field else target.const(self.ring.field.to_text(c))
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            result = result + t
        return result

    def rename(self, target: RingContext) -> "Polynomial":
        """Move into ``target`` matching variables by name (missing ones must be unused)."""
        idx = []
        for i, v in enumerate(self.ring.variables):
            idx.append(target.variables.index(v) if v in target.variables else None)
        out = {}
        n = target.nvars
        for e, c in self._terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise UnknownVariable(f"variable {self.ring.variables[i]!r} not in target ring")
                    ne[idx[i]] = k
            out[tuple(ne)] = target.field(self.ring.field.to_text(c)) if target.field != self.ring.field else c
        return Polynomial(target, out)

    def evaluate(self, point: Sequence) -> object:
        F = self.ring.field
        vals = [F(x) for x in point]
        total = F.zero
        for e, c in self._terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = F.mul(t, F(v ** k) if F.is_rational else pow(int(v), k, F.characteristic))
            total = F.add(total, t)
        return total

    # -- printing ---------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = f.ring.variables
    F = f.ring.field
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
        text = F.to_text(c)
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        if mono:
            body = mono if text == "1" else f"{text}*{mono}"
        else:
            body = text
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise PolySyntaxError(f"expected {op!r}", t[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", 0)
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise PolySyntaxError(f"unexpected token {t[1]!r}", t[2])
        return v

    def expr(self):
        v = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                v = v + rhs if t[1] == "+" else v - rhs
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs = self.unary()
                if t[1] == "*":
                    v = v * rhs
                else:
                    if not rhs.is_constant():
                        raise PolySyntaxError("division by a non-constant", t[2])
                    if rhs.is_zero():
                        raise DivisionByZero("division by zero in polynomial text")
                    v = v / rhs
            else:
                return v

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise PolySyntaxError("exponent must be a non-negative integer", e[2])
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.ring.const(t[1])
        if t[0] == "name":
            if t[1] not in self.ring.variables:
                raise UnknownVariable(f"unknown variable {t[1]!r} at position {t[2]}")
            return self.ring.var(t[1])
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        if t[0] == "end":
            raise PolySyntaxError("unexpected end of input", t[2])
        raise PolySyntaxError(f"unexpected token {t[1]!r}", t[2])


def parse_polynomial(ring: RingContext, text: str) -> Polynomial:
    """Parse ``+ - * / ^ ( )`` expressions with integer constants.

    ``/`` only divides by constants; implicit multiplication is rejected.
    """
    return _Parser(ring, text).parse()


def make_ring(variables: Iterable[str], field: Field = QQ, block_split: Optional[int] = None) -> RingContext:
    return RingContext(field, tuple(variables), block_split)


def bidegree_of(f: Polynomial) -> Tuple[int, int]:
    """(x-degree, y-degree) of a bihomogeneous polynomial."""
    ring = f.ring
    if ring.block_split is None:
        raise NotBihomogeneous("ring has no x/y block split")
    if f.is_zero():
        raise NotBihomogeneous("the zero polynomial has no bidegree")
    s = ring.block_split
    degs = {(sum(e[:s]), sum(e[s:])) for e in f._terms}
    if len(degs) != 1:
        raise NotBihomogeneous(f"mixed bidegrees {sorted(degs)}")
    return degs.pop()


def jacobian(polys: Sequence[Polynomial], wrt: Sequence[str]) -> List[List[Polynomial]]:
    """Matrix of partial derivatives: row i, column j is d polys[i] / d wrt[j]."""
    return [[f.derivative(v) for v in wrt] for f in polys]

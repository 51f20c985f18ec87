"""Birationality test through the Jacobian dual matrix and extraction of inverses."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .errors import EmptyLinearPart, LengthMismatch, NoRankNSubmatrix
from .groebner import GroebnerBasis, IdealHandle, exact_quotient
from .polyring import Polynomial, RingContext, jacobian
from .rees import (RationalMapDescriptor, ReesPresentation, rees_ideal, special_fiber,
                   x_linear_part)

Matrix = List[List[Polynomial]]


@dataclass
class JacobianDual:
    psi: Matrix
    n: int
    b: IdealHandle
    rows: List[Polynomial]

    @property
    def y_ring(self) -> RingContext:
        return self.b.ring


@dataclass
class Verdict:
    birational: bool
    rank: int
    n: int
    note: str = ""


@dataclass
class InverseRepresentative:
    forms: List[Polynomial]
    degree: int
    content_removed: bool
    rows: tuple = ()

    @property
    def upper_estimate(self) -> bool:
        return not self.content_removed


def jacobian_dual(F: RationalMapDescriptor, P: Optional[ReesPresentation] = None,
                  b: Optional[IdealHandle] = None) -> JacobianDual:
    """Partial derivatives in x of the x-linear Rees generators, reduced modulo the fiber ideal."""
    P = P if P is not None else rees_ideal(F)
    b = b if b is not None else special_fiber(F)
    rows = x_linear_part(P)
    if not rows:
        raise EmptyLinearPart("the Rees ideal has no generator of x-degree 1")
    yr = F.y_ring()
    gb = b.groebner() if not b.is_zero() else None
    psi = []
    for row in jacobian(rows, F.x_vars):
        out = []
        for entry in row:
            e = entry.rename(yr)
            out.append(gb.reduce(e) if gb is not None else e)
        psi.append(out)
    return JacobianDual(psi, F.n, b, rows)


def _is_zero_mod(f: Polynomial, gb: Optional[GroebnerBasis]) -> bool:
    if f.is_zero():
        return True
    return gb is not None and gb.contains(f)


def _bareiss(M: Matrix, gb: Optional[GroebnerBasis], stop_at: Optional[int] = None):
    """Fraction-free elimination over k[Y] with zero tests modulo gb.

    Returns (rank, pivot rows, pivot columns, last pivot).  Entries stay
    polynomials (minors of the input), so the divisions are exact in k[Y].
    """
    A = [list(r) for r in M]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    rowidx = list(range(nrows))
    if nrows == 0 or ncols == 0:
        return 0, [], [], None
    ring = A[0][0].ring
    prev = ring.one()
    rank = 0
    pcols = []
    for k in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            if not _is_zero_mod(A[i][k], gb):
                piv = i
                break
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        rowidx[rank], rowidx[piv] = rowidx[piv], rowidx[rank]
        p = A[rank][k]
        for i in range(rank + 1, nrows):
            a = A[i][k]
            for j in range(k + 1, ncols):
                num = p * A[i][j] - a * A[rank][j]
                A[i][j] = exact_quotient(num, prev) if not prev.is_constant() else num * ring.field.inv(prev.constant_coeff())
            A[i][k] = ring.zero()
        prev = p
        pcols.append(k)
        rank += 1
        if stop_at is not None and rank >= stop_at:
            break
    return rank, sorted(rowidx[:rank]), pcols, prev


def rank_mod(M: Matrix, b: Optional[IdealHandle]) -> int:
    """Rank of M over the domain k[Y]/b."""
    if not M or not M[0]:
        return 0
    gb = b.groebner() if b is not None and not b.is_zero() else None
    return _bareiss(M, gb)[0]


def determinant(M: Matrix) -> Polynomial:
    """Determinant of a square polynomial matrix by Bareiss elimination."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    ring = M[0][0].ring
    A = [list(r) for r in M]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not A[i][k].is_zero()), None)
        if piv is None:
            return ring.zero()
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = exact_quotient(num, prev) if not prev.is_constant() else num * ring.field.inv(prev.constant_coeff())
            A[i][k] = ring.zero()
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def is_birational(F: RationalMapDescriptor, dual: Optional[JacobianDual] = None) -> Verdict:
    """Birational onto the image iff the Jacobian dual matrix has rank n over B."""
    try:
        dual = dual if dual is not None else jacobian_dual(F)
    except EmptyLinearPart:
        return Verdict(False, 0, F.n, "empty x-linear part")
    r = rank_mod(dual.psi, dual.b)
    return Verdict(r == F.n, r, F.n)


# ---------------------------------------------------------------------------
# multivariate gcd
# ---------------------------------------------------------------------------

def _coeffs_in(f: Polynomial, i: int):
    out = {}
    for e, c in f.items():
        k = e[i]
        ne = e[:i] + (0,) + e[i + 1:]
        out.setdefault(k, {})[ne] = c
    return {k: Polynomial(f.ring, d) for k, d in out.items()}


def _deg_in(f: Polynomial, i: int) -> int:
    return max((e[i] for e, _ in f.items()), default=-1)


def _lead_in(f: Polynomial, i: int) -> Polynomial:
    d = _deg_in(f, i)
    return Polynomial(f.ring, {e[:i] + (0,) + e[i + 1:]: c for e, c in f.items() if e[i] == d})


def _normalize(f: Polynomial) -> Polynomial:
    return f.monic() if not f.is_zero() else f


def _prem(a: Polynomial, b: Polynomial, i: int) -> Polynomial:
    db = _deg_in(b, i)
    lb = _lead_in(b, i)
    ring = a.ring
    xi = [0] * ring.nvars
    r = a
    while not r.is_zero() and _deg_in(r, i) >= db:
        k = _deg_in(r, i) - db
        xi[i] = k
        r = lb * r - _lead_in(r, i) * ring.monomial(xi) * b
    return r


def _content_in(f: Polynomial, i: int) -> Polynomial:
    g = None
    for c in sorted(_coeffs_in(f, i).values(), key=len):
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return f.ring.one()
    return _normalize(g)


def _pp_in(f: Polynomial, i: int) -> Polynomial:
    c = _content_in(f, i)
    return f if c.is_constant() else exact_quotient(f, c)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd by recursive primitive polynomial remainder sequences."""
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    n = f.ring.nvars
    used_f = {i for e, _ in f.items() for i in range(n) if e[i]}
    used_g = {i for e, _ in g.items() for i in range(n) if e[i]}
    i = min(used_f | used_g)
    if i not in used_f:
        return poly_gcd(f, _content_in(g, i))
    if i not in used_g:
        return poly_gcd(g, _content_in(f, i))
    cf, cg = _content_in(f, i), _content_in(g, i)
    c = poly_gcd(cf, cg)
    a = f if cf.is_constant() else exact_quotient(f, cf)
    b = g if cg.is_constant() else exact_quotient(g, cg)
    if _deg_in(a, i) < _deg_in(b, i):
        a, b = b, a
    while True:
        r = _prem(a, b, i)
        if r.is_zero():
            break
        if _deg_in(r, i) == 0:
            b = f.ring.one()
            break
        a, b = b, _pp_in(r, i)
    h = b if b.is_constant() else _pp_in(b, i)
    return _normalize(c * h)


def gcd_list(polys: Sequence[Polynomial]) -> Polynomial:
    g = None
    for p in sorted((p for p in polys if not p.is_zero()), key=lambda p: (p.total_degree(), len(p))):
        g = p if g is None else poly_gcd(g, p)
        if g.is_constant():
            return g.ring.one()
    if g is None:
        raise ValueError("gcd of zero polynomials")
    return _normalize(g)


# ---------------------------------------------------------------------------
# inverse maps
# ---------------------------------------------------------------------------

def _signed_minors(rows: Matrix) -> List[Polynomial]:
    ncols = len(rows[0])
    out = []
    for j in range(ncols):
        sub = [[r[c] for c in range(ncols) if c != j] for r in rows]
        d = determinant(sub)
        out.append(d if j % 2 == 0 else -d)
    return out


def inverse_representative(F: RationalMapDescriptor, dual: Optional[JacobianDual] = None) -> InverseRepresentative:
    """Signed n-minors of the first rank-n set of n rows of the Jacobian dual matrix."""
    dual = dual if dual is not None else jacobian_dual(F)
    n = dual.n
    psi = dual.psi
    gb = dual.b.groebner() if not dual.b.is_zero() else None
    chosen = None
    for rows in itertools.combinations(range(len(psi)), n):
        sub = [psi[r] for r in rows]
        if _bareiss(sub, gb)[0] == n:
            chosen = rows
            break
    if chosen is None:
        raise NoRankNSubmatrix("no n rows of the Jacobian dual matrix have rank n")
    minors = _signed_minors([psi[r] for r in chosen])
    if gb is not None:
        minors = [gb.reduce(v) for v in minors]
    content_removed = False
    if gb is None:
        g = gcd_list(minors)
        if not g.is_constant():
            minors = [exact_quotient(v, g) for v in minors]
        content_removed = True
    if all(v.is_zero() for v in minors):
        raise NoRankNSubmatrix("all signed minors vanish modulo the fiber ideal")
    for row in psi:
        acc = dual.y_ring.zero()
        for a, v in zip(row, minors):
            if not a.is_zero() and not v.is_zero():
                acc = acc + a * v
        if not _is_zero_mod(acc, gb):
            raise AssertionError("inverse representative is not in the null space of the Jacobian dual")
    degree = max(v.total_degree() for v in minors)
    return InverseRepresentative(minors, degree, content_removed, chosen)


def compose(G: Sequence[Polynomial], F: RationalMapDescriptor) -> List[Polynomial]:
    """G(f_0, ..., f_m) reduced modulo the source ideal."""
    if len(G) != len(F.x_vars):
        raise LengthMismatch(f"expected {len(F.x_vars)} forms, got {len(G)}")
    yr = F.y_ring()
    out = []
    gb = F.source_ideal.groebner() if not F.source_ideal.is_zero() else None
    for g in G:
        if g.ring.variables != yr.variables:
            if g.ring.nvars != yr.nvars:
                raise LengthMismatch("inverse forms must use one variable per form of the map")
        h = g.substitute(list(F.forms), F.ring) if not g.is_zero() else F.ring.zero()
        out.append(gb.reduce(h) if gb is not None else h)
    return out


def verify_inverse(F: RationalMapDescriptor, G: Sequence[Polynomial]) -> bool:
    """G o F is proportional to the identity (x_0 : ... : x_n) modulo the source ideal."""
    H = compose(G, F)
    gb = F.source_ideal.groebner() if not F.source_ideal.is_zero() else None
    if all(_is_zero_mod(h, gb) for h in H):
        return False
    X = F.ring.gens()
    for i in range(len(X)):
        for j in range(i + 1, len(X)):
            if not _is_zero_mod(X[i] * H[j] - X[j] * H[i], gb):
                return False
    return True

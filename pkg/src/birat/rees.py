"""Rees algebra presentations, special fibers, analytic spread, reduction numbers."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .coeff import Field
from .errors import InvalidDescriptor, NoReductionFound
from .groebner import (IdealHandle, GroebnerBasis, elimination_ideal, ideal_power,
                       kernel_of_map, krull_dimension, minimal_generators)
from ._engine import rank_mod_p
from .polyring import (GrevLex, Polynomial, RingContext, bidegree_of)


@dataclass
class RationalMapDescriptor:
    """Forms f_0..f_m of a common degree on the variety cut out by ``source_ideal``."""

    field: Field
    x_vars: Tuple[str, ...]
    forms: List[Polynomial]
    source_ideal: Optional[IdealHandle] = None
    y_prefix: str = "Y"
    name: str = ""

    def __post_init__(self):
        self.x_vars = tuple(self.x_vars)
        self.ring = RingContext(self.field, self.x_vars)
        if self.source_ideal is None:
            self.source_ideal = IdealHandle(self.ring, [])
        if self.source_ideal.ring != self.ring:
            raise InvalidDescriptor("source ideal must live in k[x_vars]")
        if len(self.forms) < 2:
            raise InvalidDescriptor("need at least two forms (m >= 1)")
        for f in self.forms:
            if f.ring != self.ring:
                raise InvalidDescriptor("forms must live in k[x_vars]")
            if f.is_zero():
                raise InvalidDescriptor("forms must be nonzero")
            if not f.is_homogeneous():
                raise InvalidDescriptor(f"form {f} is not homogeneous")
        degs = {f.total_degree() for f in self.forms}
        if len(degs) != 1:
            raise InvalidDescriptor(f"forms have different degrees {sorted(degs)}")
        self.delta = degs.pop()
        if self.delta < 1:
            raise InvalidDescriptor("forms must have positive degree")
        for g in self.source_ideal.generators:
            if not g.is_homogeneous():
                raise InvalidDescriptor("source ideal must be homogeneous")
        if not self.source_ideal.is_zero():
            gb = self.source_ideal.groebner()
            if all(gb.contains(f) for f in self.forms):
                raise InvalidDescriptor("all forms lie in the source ideal")
        names = []
        k = 0
        while len(names) < len(self.forms):
            cand = f"{self.y_prefix}{k}"
            k += 1
            if cand not in self.x_vars:
                names.append(cand)
        self.y_vars = tuple(names)

    @property
    def n(self) -> int:
        """Dimension of the ambient projective space of the source."""
        return len(self.x_vars) - 1

    @property
    def m(self) -> int:
        return len(self.forms) - 1

    @property
    def source_is_projective_space(self) -> bool:
        return self.source_ideal.is_zero()

    def base_ideal(self) -> IdealHandle:
        return IdealHandle(self.ring, self.forms)

    def y_ring(self) -> RingContext:
        return RingContext(self.field, self.y_vars)

    def xy_ring(self) -> RingContext:
        return RingContext(self.field, self.x_vars + self.y_vars, len(self.x_vars))

    def with_field(self, fld: Field) -> "RationalMapDescriptor":
        ring = RingContext(fld, self.x_vars)
        forms = [ring.parse(str(f)) for f in self.forms]
        src = IdealHandle(ring, [ring.parse(str(g)) for g in self.source_ideal.generators])
        return RationalMapDescriptor(fld, self.x_vars, forms, src, self.y_prefix, self.name)


@dataclass
class ReesPresentation:
    ambient: RingContext
    J: IdealHandle
    min_gens: List[Tuple[Polynomial, Tuple[int, int]]]
    relation_type: int

    def to_json(self) -> dict:
        return {"generators": [str(g) for g, _ in self.min_gens],
                "bidegrees": [list(b) for _, b in self.min_gens],
                "relation_type": self.relation_type}


def rees_weights(F: RationalMapDescriptor) -> Tuple[int, ...]:
    """Positive weights (x: 1, y: delta) making the Rees ideal homogeneous in k[X, Y]."""
    return (1,) * len(F.x_vars) + (F.delta,) * len(F.y_vars)


def rees_ideal(F: RationalMapDescriptor, budget: Optional[int] = None) -> ReesPresentation:
    """Eliminate t from (Y_j - f_j t) + a and extract minimal bihomogeneous generators."""
    xy = F.xy_ring()
    tname = "t"
    while tname in xy.variables:
        tname += "_"
    big = RingContext(F.field, (tname,) + xy.variables)
    T = big.var(tname)
    gens = [big.var(y) - f.rename(big) * T for y, f in zip(F.y_vars, F.forms)]
    gens += [g.rename(big) for g in F.source_ideal.generators]
    nx, ny = len(F.x_vars), len(F.y_vars)
    weights = (1,) + (1,) * nx + (F.delta + 1,) * ny
    J = elimination_ideal(IdealHandle(big, gens, weights=weights), xy.variables, target=xy,
                          weights=weights, budget=budget)
    J = IdealHandle(xy, J.generators, weights=(1,) * nx + (F.delta + 1,) * ny)
    J._prime_cache(GroebnerBasis(xy, GrevLex(J.weights), J.generators))
    mins = minimal_generators(J)
    pairs = [(g, bidegree_of(g)) for g in mins]
    pairs.sort(key=lambda gb: (gb[1][0] + gb[1][1], gb[1]))
    _check_substitution(F, xy, [g for g, _ in pairs])
    rt = max((b for _, (a, b) in pairs), default=0)
    return ReesPresentation(xy, J, pairs, rt)


def _check_substitution(F: RationalMapDescriptor, xy: RingContext, gens):
    """Each generator vanishes after Y_j -> f_j modulo the source ideal."""
    images = [F.ring.var(x) for x in F.x_vars] + list(F.forms)
    a_gb = F.source_ideal.groebner() if not F.source_ideal.is_zero() else None
    for g in gens:
        s = g.substitute(images, F.ring)
        if a_gb is not None:
            s = a_gb.reduce(s)
        if not s.is_zero():
            raise AssertionError(f"Rees generator {g} does not vanish on the graph")


def x_linear_part(P: ReesPresentation) -> List[Polynomial]:
    return [g for g, (a, _) in P.min_gens if a == 1]


def special_fiber(F: RationalMapDescriptor, budget: Optional[int] = None) -> IdealHandle:
    src = None if F.source_ideal.is_zero() else F.source_ideal
    return kernel_of_map(F.forms, F.y_vars, src, budget=budget)


def analytic_spread(F: RationalMapDescriptor, fiber: Optional[IdealHandle] = None) -> int:
    b = fiber if fiber is not None else special_fiber(F)
    return krull_dimension(b)


@dataclass
class ReductionCertificate:
    trial: int
    coefficients: List[List[str]]
    exponent: int
    upper_estimate: bool = True


_CHECK_PRIME = 2147483647


def _span_rows(polys: Sequence[Polynomial], a_gb: Optional[GroebnerBasis]) -> List[dict]:
    rows = []
    for f in polys:
        g = a_gb.reduce(f) if a_gb is not None else f
        if not g.is_zero():
            rows.append(dict(g.items()))
    return rows


def _rank_Q_or_p(rows: List[dict], p: int) -> int:
    return rank_mod_p(rows, p) if rows else 0


def _rank_mod_check_prime(rows: List[dict]) -> Optional[int]:
    """Rank of rational rows modulo a large prime (a lower bound for the rank over Q)."""
    q = _CHECK_PRIME
    out = []
    for r in rows:
        nr = {}
        for k, v in r.items():
            den = int(v.denominator)
            if den % q == 0:
                return None
            nr[k] = int(v.numerator) * pow(den, -1, q) % q
        out.append(nr)
    return rank_mod_p(out, q) if out else 0


def reduction_number(F: RationalMapDescriptor, trials: int = 3, *, ell: Optional[int] = None,
                     bound: int = 50, cap: int = 6, seed: int = 0):
    """Least n with J I^n = I^{n+1} for random J generated by ell combinations of the forms.

    Returns (n, certificate); the minimum over ``trials`` draws.  This is an
    upper estimate of the absolute reduction number.  Both sides are generated
    in the single degree delta*(n+1) and J I^n lies in I^{n+1}, so equality is
    a rank comparison of the spans of the generators modulo the source ideal.
    Over Q the rank of J I^n is taken modulo a large prime: equality found that
    way is exact, a deficit is accepted without an exact recheck.
    """
    if ell is None:
        ell = analytic_spread(F)
    rng = random.Random(seed)
    fld = F.field
    a_gb = F.source_ideal.groebner() if not F.source_ideal.is_zero() else None
    powers = {}
    ranks = {}

    def power(n):
        if n not in powers:
            powers[n] = ideal_power(F.base_ideal(), n).generators
        return powers[n]

    p = fld.characteristic

    def full_rank(n):
        if n not in ranks:
            ranks[n] = _rank_Q_or_p(_span_rows(power(n), a_gb), p)
        return ranks[n]

    def reduces(Jgens, n):
        rows = _span_rows([j * h for j in Jgens for h in power(n)], a_gb)
        target = full_rank(n + 1)
        if p == 0:
            # rank mod q <= rank over Q <= target, so a match is a proof of equality
            lower = _rank_mod_check_prime(rows)
            if lower is not None:
                return lower == target
        return _rank_Q_or_p(rows, p) == target

    best = None
    for trial in range(trials):
        coeffs = [[fld.random_nonzero(rng, bound) for _ in F.forms] for _ in range(ell)]
        Jgens = []
        for row in coeffs:
            g = F.ring.zero()
            for c, f in zip(row, F.forms):
                g = g + f * c
            Jgens.append(g)
        limit = cap if best is None else min(cap, best[0] - 1)
        for n in range(limit + 1):
            if reduces(Jgens, n):
                cert = ReductionCertificate(trial, [[fld.to_text(c) for c in row] for row in coeffs], n)
                best = (n, cert)
                break
        if best is not None and best[0] == 0:
            break
    if best is None:
        raise NoReductionFound(f"no reduction with exponent <= {cap} in {trials} trials")
    return best

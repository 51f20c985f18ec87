"""Groebner bases and ideal operations on top of the packed-term engine."""
from __future__ import annotations

import contextlib
import contextvars
import itertools
import threading
from typing import Dict, List, Optional, Sequence, Tuple

from . import _engine as eng
from .errors import ContextMismatch, DivisionByZero, ResourceLimit, UnitIdeal
from .polyring import Block, GrevLex, MonomialOrder, Polynomial, RingContext

_budget = contextvars.ContextVar("pair_budget", default=eng.DEFAULT_PAIR_BUDGET)


def current_budget() -> int:
    return _budget.get()


@contextlib.contextmanager
def budget_scope(pairs: int):
    """Temporarily change the S-pair budget used by every Groebner computation."""
    token = _budget.set(int(pairs))
    try:
        yield
    finally:
        _budget.reset(token)


# ---------------------------------------------------------------------------
# conversion between Polynomial and code dicts
# ---------------------------------------------------------------------------

def to_codes(f: Polynomial, coder) -> Dict[int, object]:
    enc = coder.encode
    return {enc(e): c for e, c in f.items()}


def from_codes(d: Dict[int, object], ring: RingContext, coder) -> Polynomial:
    ex = coder.exps
    return Polynomial(ring, {ex(t): c for t, c in d.items()})


def _degree_fn(coder, weights):
    if weights is None:
        def deg(code, _ex=coder.exps):
            return sum(_ex(code))
    else:
        w = tuple(weights)

        def deg(code, _ex=coder.exps):
            return sum(a * b for a, b in zip(w, _ex(code)))
    return deg


class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by descending lead."""

    def __init__(self, ring: RingContext, order: MonomialOrder, elements: Sequence[Polynomial],
                 _coded=None):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self._coder = ring.coder(order)
        self._coded = _coded if _coded is not None else [to_codes(e, self._coder) for e in self.elements]
        self._leads = [max(c) for c in self._coded]
        self._reducer = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(e) for e in self.elements]})"

    @property
    def characteristic(self) -> int:
        return self.ring.field.characteristic

    def reducer(self) -> eng.Reducer:
        if self._reducer is None:
            self._reducer = eng.Reducer(self._coder, self._leads, self._coded)
        return self._reducer

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [self._coder.exps(c) for c in self._leads]

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leading_monomials())

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ContextMismatch("polynomial and basis live in different rings")
        if not self.elements or f.is_zero():
            return f
        rem = eng.normal_form(to_codes(f, self._coder), self.reducer(), self.characteristic)
        return from_codes(rem, self.ring, self._coder)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()


def buchberger(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None, *,
               weights: Optional[Sequence[int]] = None, budget: Optional[int] = None,
               ring: Optional[RingContext] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``(gens)``.

    ``weights`` sets the degree used for the sugar strategy (standard degree by
    default); ``budget`` caps the number of processed S-pairs.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ContextMismatch("generators live in different rings")
    order = order or GrevLex()
    coder = ring.coder(order)
    coded = [to_codes(g, coder) for g in gens if not g.is_zero()]
    res = eng.buchberger(coded, coder, ring.field.characteristic, _degree_fn(coder, weights),
                         budget=budget if budget is not None else current_budget())
    elems = [from_codes(c, ring, coder) for c in res.polys]
    return GroebnerBasis(ring, order, elems, _coded=res.polys)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(f)


class IdealHandle:
    """An ideal given by generators, with a per-order cache of reduced bases."""

    def __init__(self, ring: RingContext, generators: Sequence[Polynomial] = (),
                 weights: Optional[Sequence[int]] = None):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ContextMismatch("generator not in the ideal's ring")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.weights = tuple(weights) if weights is not None else None
        self._cache: Dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"IdealHandle({[str(g) for g in self.generators]})"

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: Optional[MonomialOrder] = None, budget: Optional[int] = None) -> GroebnerBasis:
        order = order or GrevLex()
        gb = self._cache.get(order)
        if gb is not None:
            return gb
        gb = buchberger(self.generators, order, weights=self.weights, budget=budget, ring=self.ring)
        with self._lock:
            self._cache[order] = gb
        return gb

    def _prime_cache(self, gb: GroebnerBasis):
        with self._lock:
            self._cache.setdefault(gb.order, gb)

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.groebner().reduce(f)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()


def _same_ring(I: IdealHandle, J: IdealHandle):
    if I.ring != J.ring:
        raise ContextMismatch("ideals live in different rings")


def elimination_ideal(I: IdealHandle, keep: Sequence[str], *, target: Optional[RingContext] = None,
                      weights: Optional[Sequence[int]] = None, budget: Optional[int] = None) -> IdealHandle:
    """I intersected with k[keep]: basis elements free of the other variables.

    The eliminated variables form the outer block of a block order, grevlex
    (weighted by ``weights`` if given) inside each block.  The result lives in
    ``target`` (default: the same ring).
    """
    ring = I.ring
    keep_idx = sorted(ring.index(v) for v in keep)
    elim_idx = [i for i in range(ring.nvars) if i not in set(keep_idx)]
    w = tuple(weights) if weights is not None else I.weights
    if not elim_idx:
        out = I if target is None else IdealHandle(target, [g.rename(target) for g in I.generators])
        return out
    if w is not None:
        inner = [GrevLex([w[i] for i in elim_idx]), GrevLex([w[i] for i in keep_idx])]
    else:
        inner = [GrevLex(), GrevLex()]
    order = Block([elim_idx, keep_idx], inner)
    gb = buchberger(I.generators, order, weights=w, budget=budget, ring=ring)
    kept = [g for g in gb.elements if all(not any(e[i] for i in elim_idx) for e, _ in g.items())]
    tgt = target if target is not None else ring
    gens = [g.rename(tgt) if tgt != ring else g for g in kept]
    tw = None
    if w is not None:
        tw = tuple(w[ring.index(v)] for v in tgt.variables) if all(v in ring.variables for v in tgt.variables) else None
    out = IdealHandle(tgt, gens, weights=tw)
    if tgt != ring and list(tgt.variables) == [ring.variables[i] for i in keep_idx]:
        out._prime_cache(GroebnerBasis(tgt, inner[1], gens))
    return out


def ideal_compose(I: IdealHandle, J: IdealHandle, op: str) -> IdealHandle:
    _same_ring(I, J)
    if op == "sum":
        return IdealHandle(I.ring, list(I.generators) + list(J.generators))
    if op == "product":
        return IdealHandle(I.ring, [f * g for f in I.generators for g in J.generators])
    raise ValueError(f"unknown ideal operation {op!r}")


def ideal_power(I: IdealHandle, r: int) -> IdealHandle:
    """Generators f_{i1}...f_{ir} over all multisets i1 <= ... <= ir."""
    if r < 0:
        raise ValueError("power must be non-negative")
    if r == 0:
        return IdealHandle(I.ring, [I.ring.one()])
    gens = []
    for combo in itertools.combinations_with_replacement(I.generators, r):
        p = combo[0]
        for g in combo[1:]:
            p = p * g
        gens.append(p)
    return IdealHandle(I.ring, gens, weights=I.weights)


def _fresh_name(ring: RingContext, base: str) -> str:
    name = base
    k = 0
    while name in ring.variables:
        k += 1
        name = f"{base}{k}"
    return name


def intersection(I: IdealHandle, J: IdealHandle, budget: Optional[int] = None) -> IdealHandle:
    """I cap J by eliminating u from u*I + (1 - u)*J."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return IdealHandle(ring, [])
    u = _fresh_name(ring, "u")
    big = RingContext(ring.field, (u,) + ring.variables)
    U = big.var(u)
    gens = [U * g.rename(big) for g in I.generators] + [(1 - U) * g.rename(big) for g in J.generators]
    return elimination_ideal(IdealHandle(big, gens), ring.variables, target=ring, budget=budget)


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f exactly."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    ring = f.ring
    coder = ring.coder(GrevLex())
    gc = eng.monic(to_codes(g, coder), ring.field.characteristic)
    lc = g.leading_term()[1]
    red = eng.Reducer(coder, [max(gc)], [gc])
    quots, rem = eng.divide(to_codes(f, coder), red, ring.field.characteristic)
    if rem:
        raise ValueError("polynomial division is not exact")
    q = from_codes(quots.get(0, {}), ring, coder)
    return q * ring.field.inv(lc)


def colon(I: IdealHandle, J: IdealHandle, budget: Optional[int] = None) -> IdealHandle:
    """I : J as the intersection of I : g over the generators g of J."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    result = None
    for g in J.generators:
        inter = intersection(I, IdealHandle(I.ring, [g]), budget=budget)
        part = IdealHandle(I.ring, [exact_quotient(h, g) for h in inter.generators])
        result = part if result is None else intersection(result, part, budget=budget)
    return result


def ideal_equal(I: IdealHandle, J: IdealHandle) -> bool:
    _same_ring(I, J)
    return I.groebner().elements == J.groebner().elements


def is_subideal(I: IdealHandle, J: IdealHandle) -> bool:
    """True iff I is contained in J."""
    _same_ring(I, J)
    gb = J.groebner()
    return all(gb.contains(g) for g in I.generators)


def saturate(I: IdealHandle, J: IdealHandle, budget: Optional[int] = None, max_steps: int = 64):
    """(I : J^infinity, e) with e the first exponent where the colon chain stabilizes."""
    cur = I
    for e in range(max_steps):
        nxt = colon(cur, J, budget=budget)
        if ideal_equal(nxt, cur):
            return cur, e
        cur = nxt
    raise ResourceLimit("saturation did not stabilize")


def kernel_of_map(forms: Sequence[Polynomial], target_names: Sequence[str],
                  source_ideal: Optional[IdealHandle] = None, budget: Optional[int] = None) -> IdealHandle:
    """Kernel of k[Y] -> k[X]/a, Y_j -> f_j, by eliminating X from (a, Y_j - f_j)."""
    if not forms:
        raise ValueError("need at least one form")
    src = forms[0].ring
    if len(target_names) != len(forms):
        raise ValueError("one target variable per form")
    if set(target_names) & set(src.variables):
        raise ValueError("target variable names clash with source variables")
    degs = {f.total_degree() for f in forms if not f.is_zero()}
    if len(degs) != 1 or not all(f.is_homogeneous() for f in forms if not f.is_zero()):
        raise ValueError("forms must be homogeneous of a common degree")
    delta = degs.pop()
    tgt = RingContext(src.field, tuple(target_names))
    big = RingContext(src.field, src.variables + tuple(target_names), len(src.variables))
    gens = [big.var(y) - f.rename(big) for y, f in zip(target_names, forms)]
    if source_ideal is not None:
        gens += [g.rename(big) for g in source_ideal.generators]
    weights = (1,) * src.nvars + (max(delta, 1),) * len(target_names)
    return elimination_ideal(IdealHandle(big, gens, weights=weights), target_names, target=tgt,
                             weights=weights, budget=budget)


def _min_hitting_set(sets: List[frozenset], universe: int) -> int:
    sets = sorted(set(sets), key=len)
    minimal = []
    for s in sets:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    best = [universe]

    def rec(chosen: frozenset, size: int):
        if size >= best[0]:
            return
        for s in minimal:
            if not (s & chosen):
                for v in sorted(s):
                    rec(chosen | {v}, size + 1)
                return
        best[0] = size

    rec(frozenset(), 0)
    return best[0]


def krull_dimension(I: IdealHandle) -> int:
    """Dimension of R/I from the lead-term ideal: nvars minus a minimum hitting set."""
    gb = I.groebner()
    if gb.is_unit():
        raise UnitIdeal("the unit ideal has no dimension")
    supports = [frozenset(i for i, e in enumerate(ex) if e) for ex in gb.leading_monomials()]
    return I.ring.nvars - _min_hitting_set(supports, I.ring.nvars)


def minimal_generators(I: IdealHandle, weights: Optional[Sequence[int]] = None) -> List[Polynomial]:
    """Minimal homogeneous generators, picked from the reduced basis in degree order."""
    if I.is_zero():
        return []
    gb = I.groebner()
    ring = I.ring
    coder = gb._coder
    w = weights if weights is not None else I.weights
    deg = _degree_fn(coder, w)
    cands = sorted(range(len(gb.elements)),
                   key=lambda k: (deg(gb._leads[k]), -gb._leads[k]))
    coded = [gb._coded[k] for k in cands]
    res = eng.buchberger(coded, coder, ring.field.characteristic, deg, budget=current_budget())
    return [gb.elements[cands[k]] for k in sorted(res.new_inputs)]

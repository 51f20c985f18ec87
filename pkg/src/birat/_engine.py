"""Low-level Groebner machinery on packed-integer terms.

A term ``m * e_j`` of a free module over k[x_0..x_{n-1}] is one Python int::

    code = (order_key << T) | (tiebreak << S) | packed_exponents

* ``order_key`` is a linear functional of the exponent vector (a matrix order
  flattened with a large base), so comparing codes compares terms and
  multiplying by a monomial is integer addition.
* ``tiebreak`` identifies the module component; it decides ties between equal
  monomials in different components (Schreyer / TOP orders).
* the exponent field carries one guard bit per variable, so ``a | b`` (same
  component, exponent-wise <=) is ``not ((b - a) & divmask)``.

Polynomials and module vectors are ``dict`` code -> coefficient.  Coefficients
are ``gmpy2.mpq`` when ``p == 0`` and canonical ints mod ``p`` otherwise.
Nothing in here knows about variable names or the public Polynomial type.
"""
from __future__ import annotations

import heapq

from .errors import ResourceLimit

EXP_BITS = 16
EXP_LIMIT = 1 << (EXP_BITS - 1)
_EXP_FIELD = (1 << EXP_BITS) - 1
TB_BITS = 40
_TB_FIELD = (1 << TB_BITS) - 1
ROW_BITS = 30

DEFAULT_PAIR_BUDGET = 2_000_000


class TermCoder:
    """Packs exponent vectors for a fixed number of variables and matrix order."""

    def __init__(self, nvars, rows):
        self.nvars = nvars
        self.rows = tuple(tuple(r) for r in rows)
        self.S = EXP_BITS * nvars
        self.T = self.S + TB_BITS
        self.pmask = (1 << self.S) - 1
        guard = 0
        for i in range(nvars):
            guard |= 1 << (EXP_BITS * i + EXP_BITS - 1)
        self.guard = guard
        self.tbmask = _TB_FIELD << self.S
        self.divmask = guard | self.tbmask
        nrows = len(self.rows)
        base = 1 << ROW_BITS
        self.varkey = [sum(self.rows[r][i] * base ** (nrows - 1 - r) for r in range(nrows))
                       for i in range(nvars)]
        self.var_code = [(self.varkey[i] << self.T) + (1 << (EXP_BITS * i)) for i in range(nvars)]
        self._shifts = tuple(EXP_BITS * i for i in range(nvars))
        # place value of the first order row; used for degree shifts of module components
        self.top_row_unit = base ** (nrows - 1)

    def encode(self, exps):
        c = 0
        for e, v in zip(exps, self.var_code):
            if e:
                if e >= EXP_LIMIT:
                    raise OverflowError("exponent too large for packed representation")
                c += e * v
        return c

    def exps(self, code):
        P = code & self.pmask
        return tuple((P >> s) & _EXP_FIELD for s in self._shifts)

    def tb(self, code):
        return (code >> self.S) & _TB_FIELD

    def divides(self, a, b):
        return not ((b - a) & self.divmask)

    def component_code(self, keyshift, tb):
        return (keyshift << self.T) + (tb << self.S)


class Layout:
    """Component codes of a free module: ``offsets[j]`` is the code of ``e_j``.

    ``degrees[j]`` is the degree vector attached to ``e_j`` (used for sugar and
    for Betti numbers).  The ring itself is the one-component layout with
    offset 0.
    """

    def __init__(self, coder, offsets, degrees=None):
        self.coder = coder
        self.offsets = list(offsets)
        self.by_tb = {coder.tb(o): j for j, o in enumerate(self.offsets)}
        if len(self.by_tb) != len(self.offsets):
            raise ValueError("module components need distinct tiebreaks")
        self.degrees = list(degrees) if degrees is not None else None

    @classmethod
    def ring(cls, coder, ngrading=1):
        return cls(coder, [0], [(0,) * ngrading])

    @classmethod
    def top(cls, coder, degrees, first_row_shift=True):
        """Term-over-position order with component degree shifts.

        ``degrees[j]`` is the degree vector of ``e_j``; its first entry shifts
        the first order row (which must be the grading row for this to be a
        degree-compatible order).  Component 0 wins ties.
        """
        n = len(degrees)
        offs = []
        for j, d in enumerate(degrees):
            shift = d[0] * coder.top_row_unit if first_row_shift else 0
            offs.append(coder.component_code(shift, n - j))
        return cls(coder, offs, degrees)

    @property
    def rank(self):
        return len(self.offsets)

    def split(self, code):
        """Return (component index, ring code) of a module term."""
        j = self.by_tb[self.coder.tb(code)]
        return j, code - self.offsets[j]


class Grading:
    """Degree vectors of ring monomials from integer weight rows."""

    def __init__(self, coder, weight_rows):
        self.coder = coder
        self.rows = tuple(tuple(r) for r in weight_rows)

    def of_exps(self, exps):
        return tuple(sum(w * e for w, e in zip(row, exps)) for row in self.rows)

    def of_code(self, code):
        return self.of_exps(self.coder.exps(code))

    def zero(self):
        return (0,) * len(self.rows)


def add_deg(a, b):
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# polynomial helpers on code dicts
# ---------------------------------------------------------------------------

def inv(a, p):
    return pow(a, -1, p) if p else 1 / a


def scale(f, c, p):
    if p:
        return {t: v * c % p for t, v in f.items()}
    return {t: v * c for t, v in f.items()}


def monic(f, p):
    if not f:
        return f
    lc = f[max(f)]
    if lc == 1:
        return f
    return scale(f, inv(lc, p), p)


def sub_mul(f, g, q, c, p):
    """In place: f -= c * x^q * g."""
    if p:
        for t, v in g.items():
            k = t + q
            nv = (f.get(k, 0) - c * v) % p
            if nv:
                f[k] = nv
            else:
                f.pop(k, None)
    else:
        for t, v in g.items():
            k = t + q
            nv = f.get(k, 0) - c * v
            if nv:
                f[k] = nv
            else:
                f.pop(k, None)


def add_into(f, g, p, c=1):
    """In place: f += c * g."""
    sub_mul(f, g, 0, -c if not p else (-c) % p, p)


def mul(f, g, p):
    out = {}
    for t, v in f.items():
        sub_mul(out, g, t, -v if not p else (-v) % p, p)
    return out


def shift(f, q):
    return {t + q: v for t, v in f.items()}


class Reducer:
    """Lead-term lookup over a growing list of monic polynomials (or vectors)."""

    def __init__(self, coder, leads=(), polys=()):
        self.divmask = coder.divmask
        self.leads = list(leads)
        self.polys = list(polys)
        self._cache = {}

    def append(self, lead, poly):
        self.leads.append(lead)
        self.polys.append(poly)

    def find(self, c):
        hit = self._cache.get(c)
        if hit is not None:
            if hit >= 0:
                return hit
            start = -hit - 1
        else:
            start = 0
        leads = self.leads
        mask = self.divmask
        for i in range(start, len(leads)):
            if not ((c - leads[i]) & mask):
                self._cache[c] = i
                return i
        self._cache[c] = -len(leads) - 1
        return -1


def normal_form(f, red, p, steps=None):
    """Full normal form of ``f`` modulo the monic elements of ``red``."""
    f = dict(f)
    rem = {}
    find = red.find
    leads = red.leads
    polys = red.polys
    n = 0
    while f:
        c = max(f)
        i = find(c)
        if i < 0:
            rem[c] = f.pop(c)
            continue
        sub_mul(f, polys[i], c - leads[i], f[c], p)
        n += 1
    if steps is not None:
        steps[0] += n
    return rem


def divide(f, red, p):
    """Division with quotients: returns ({i: quotient dict}, remainder)."""
    f = dict(f)
    rem = {}
    quots = {}
    find = red.find
    leads = red.leads
    polys = red.polys
    while f:
        c = max(f)
        i = find(c)
        if i < 0:
            rem[c] = f.pop(c)
            continue
        coef = f[c]
        q = c - leads[i]
        sub_mul(f, polys[i], q, coef, p)
        qd = quots.setdefault(i, {})
        qd[q] = (qd.get(q, 0) + coef) % p if p else qd.get(q, 0) + coef
        if not qd[q]:
            del qd[q]
    return quots, rem


def normal_form_lift(f, frep, red, reps, p):
    """Normal form that also tracks representations: f - sum(...) carried in frep."""
    f = dict(f)
    frep = dict(frep)
    rem = {}
    find = red.find
    leads = red.leads
    polys = red.polys
    while f:
        c = max(f)
        i = find(c)
        if i < 0:
            rem[c] = f.pop(c)
            continue
        coef = f[c]
        q = c - leads[i]
        sub_mul(f, polys[i], q, coef, p)
        sub_mul(frep, reps[i], q, coef, p)
    return rem, frep


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

class _Elem:
    __slots__ = ("poly", "lead", "exps", "offset", "sugar", "rep", "active")

    def __init__(self, poly, lead, exps, offset, sugar, rep=None):
        self.poly = poly
        self.lead = lead
        self.exps = exps
        self.offset = offset
        self.sugar = sugar
        self.rep = rep
        self.active = True


class GBResult:
    """Outcome of :func:`buchberger`.

    ``polys`` is the reduced basis sorted by descending lead; ``reps`` the
    matching representations in terms of the inputs (when lifting);
    ``new_inputs`` the indices of inputs that did not reduce to zero when
    processed, which for homogeneous input in degree order is a minimal
    generating subset.
    """

    def __init__(self, polys, leads, reps, new_inputs, pairs):
        self.polys = polys
        self.leads = leads
        self.reps = reps
        self.new_inputs = new_inputs
        self.pairs_processed = pairs


def _max_exps(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def buchberger(gens, coder, p, degree_of, *, product_criterion=True, lift=False,
               rep_offsets=None, budget=DEFAULT_PAIR_BUDGET, final_reduce=True):
    """Reduced Groebner basis of the module/ideal generated by ``gens``.

    ``degree_of(code)`` returns the scalar (weighted) degree of a term, used as
    the sugar.  Pairs are selected by (sugar, S-pairs before inputs, lcm).
    Gebauer-Moeller pruning; the product criterion is only valid for ideals
    and must be switched off for modules of rank > 1.
    """
    encode = coder.encode
    exps_of = coder.exps
    divides = coder.divides
    elems = []
    red = Reducer(coder)
    reps_list = []
    pairs = {}
    heap = []
    inputs = []
    for k, g in enumerate(gens):
        g = {t: v for t, v in g.items() if v}
        inputs.append(g)
        if g:
            s = max(degree_of(t) for t in g)
            heap.append((s, 1, 0, k, -1))
    heapq.heapify(heap)
    new_inputs = []
    processed = 0

    def lcm_code(a, b):
        return encode(_max_exps(a.exps, b.exps)) + a.offset

    def add_element(h, hrep, sugar):
        lead = max(h)
        ex = exps_of(lead)
        e = _Elem(h, lead, ex, lead - encode(ex), sugar, hrep)
        idx = len(elems)
        cands = []
        for i, g in enumerate(elems):
            if not g.active or g.offset != e.offset:
                continue
            lc = lcm_code(g, e)
            coprime = product_criterion and lc == g.lead + lead - e.offset
            cands.append((i, lc, coprime))
        # Gebauer-Moeller: drop old pairs whose lcm is strictly divisible by the new lead
        for key in list(pairs):
            a, b = key
            lc = pairs[key]
            if divides(lead, lc):
                if lcm_code(elems[a], e) != lc and lcm_code(elems[b], e) != lc:
                    del pairs[key]
        # new pairs: keep one per minimal lcm; product criterion afterwards
        kept = []
        rest = list(cands)
        while rest:
            i, lc, cop = rest.pop(0)
            if cop or not (any(divides(l2, lc) for _, l2, _ in rest)
                           or any(divides(l2, lc) for _, l2, _ in kept)):
                kept.append((i, lc, cop))
        for i, lc, cop in kept:
            if cop:
                continue
            g = elems[i]
            dl = degree_of(lc)
            s = max(g.sugar + dl - degree_of(g.lead), sugar + dl - degree_of(lead))
            pairs[(i, idx)] = lc
            heapq.heappush(heap, (s, 0, lc, i, idx))
        for g in elems:
            if g.active and divides(lead, g.lead):
                g.active = False
        elems.append(e)
        red.append(lead, h)
        reps_list.append(hrep)

    while heap:
        s, kind, lc, i, j = heapq.heappop(heap)
        if kind == 0:
            if pairs.get((i, j)) != lc:
                continue
            del pairs[(i, j)]
            a, b = elems[i], elems[j]
            h = shift(a.poly, lc - a.lead)
            sub_mul(h, b.poly, lc - b.lead, 1, p)
            if lift:
                hrep = shift(a.rep, lc - a.lead)
                sub_mul(hrep, b.rep, lc - b.lead, 1, p)
        else:
            h = inputs[i]
            if lift:
                hrep = {rep_offsets[i]: 1 if p else _ONE}
        processed += 1
        if processed > budget:
            raise ResourceLimit(f"Groebner basis computation exceeded {budget} pairs")
        if lift:
            h, hrep = normal_form_lift(h, hrep, red, reps_list, p)
        else:
            h = normal_form(h, red, p)
            hrep = None
        if not h:
            continue
        if kind == 1:
            new_inputs.append(i)
        lcinv = inv(h[max(h)], p)
        h = scale(h, lcinv, p)
        if lift:
            hrep = scale(hrep, lcinv, p)
        add_element(h, hrep, s)

    final = [e for e in elems if e.active]
    if final_reduce:
        fred = Reducer(coder, [e.lead for e in final], [e.poly for e in final])
        freps = [e.rep for e in final]
        out = []
        for e in final:
            tail = dict(e.poly)
            lcoef = tail.pop(e.lead)
            if lift:
                trep = dict(e.rep)
                tail, trep = normal_form_lift(tail, trep, fred, freps, p)
            else:
                tail = normal_form(tail, fred, p)
                trep = None
            tail[e.lead] = lcoef
            out.append((e.lead, tail, trep))
        # tails were reduced against the unreduced list; results are still valid members
    else:
        out = [(e.lead, e.poly, e.rep) for e in final]
    out.sort(key=lambda t: t[0], reverse=True)
    return GBResult([t[1] for t in out], [t[0] for t in out], [t[2] for t in out] if lift else None,
                    new_inputs, processed)


try:  # coefficient one for lifted representations over Q
    from gmpy2 import mpq as _mpq
    _ONE = _mpq(1)
except ImportError:  # pragma: no cover
    from fractions import Fraction as _mpq
    _ONE = _mpq(1)


# ---------------------------------------------------------------------------
# Schreyer frames
# ---------------------------------------------------------------------------

class Level:
    """One homological level of a Schreyer resolution.

    ``vecs[t]`` is the t-th basis element's image, a vector coded in the
    previous level's layout; ``offsets[t]`` codes the basis vector itself for
    use by the next level.
    """

    def __init__(self, vecs, leads, lead_exps, lead_comp, degs):
        self.vecs = vecs
        self.leads = leads
        self.lead_exps = lead_exps
        self.lead_comp = lead_comp
        self.degs = degs
        self.offsets = None
        self.layout = None
        self.perm = None

    def __len__(self):
        return len(self.vecs)


def _sort_level(level, prev_tb, coder):
    """Reorder by (lead component, lex-descending lead monomial) and assign codes."""
    n = len(level.vecs)
    order = sorted(range(n), key=lambda t: (level.lead_comp[t], tuple(-e for e in level.lead_exps[t])))
    for name in ("vecs", "leads", "lead_exps", "lead_comp", "degs"):
        old = getattr(level, name)
        setattr(level, name, [old[t] for t in order])
    level.perm = order
    ranking = sorted(range(n), key=lambda t: (prev_tb[level.lead_comp[t]], -t))
    tb = [0] * n
    for pos, t in enumerate(ranking):
        tb[t] = pos + 1
    T = coder.T
    level.offsets = [((level.leads[t] >> T) << T) + coder.component_code(0, tb[t]) for t in range(n)]
    level.layout = Layout(coder, level.offsets, level.degs)


def schreyer_resolution(basis_polys, target, grading, p, max_levels=None, steps_budget=None, stop_after=None):
    """Non-minimal free resolution of the module generated by a Groebner basis.

    ``basis_polys`` must be a reduced (monic) Groebner basis w.r.t. the order
    encoded by ``target`` (a :class:`Layout`).  Returns a list of :class:`Level`;
    level 0 is the basis itself.
    """
    coder = target.coder
    encode = coder.encode
    divides = coder.divides
    degs0 = []
    lead_comp0 = []
    lead_exps0 = []
    leads0 = []
    for g in basis_polys:
        lead = max(g)
        j, rc = target.split(lead)
        ex = coder.exps(rc)
        leads0.append(lead)
        lead_comp0.append(j)
        lead_exps0.append(ex)
        degs0.append(add_deg(grading.of_exps(ex), target.degrees[j]))
    lvl = Level([dict(g) for g in basis_polys], leads0, lead_exps0, lead_comp0, degs0)
    _sort_level(lvl, [coder.tb(o) for o in target.offsets], coder)
    levels = [lvl]
    limit = max_levels if max_levels is not None else coder.nvars + 2
    while True:
        cur = levels[-1]
        n = len(cur)
        if n == 0:
            levels.pop()
            break
        if stop_after is not None and len(levels) >= stop_after:
            break
        if len(levels) > limit:
            raise RuntimeError("Schreyer frame did not terminate within the expected length")
        red = Reducer(coder, cur.leads, cur.vecs)
        new_vecs, new_leads, new_exps, new_comp, new_degs = [], [], [], [], []
        by_comp = {}
        for t in range(n):
            by_comp.setdefault(cur.lead_comp[t], []).append(t)
        for j in range(n):
            group = by_comp[cur.lead_comp[j]]
            ej = cur.lead_exps[j]
            cands = []
            for k in group:
                if k <= j:
                    continue
                l = _max_exps(ej, cur.lead_exps[k])
                m = tuple(a - b for a, b in zip(l, ej))
                cands.append((sum(m), k, m, l))
            cands.sort(key=lambda c: (c[0], c[1]))
            chosen = []
            codes = []
            for _, k, m, l in cands:
                mc = encode(m)
                if any(divides(c, mc) for c in codes):
                    continue
                codes.append(mc)
                chosen.append((k, m, l, mc))
            for k, m, l, mc in chosen:
                nk = encode(tuple(a - b for a, b in zip(l, cur.lead_exps[k])))
                S = shift(cur.vecs[j], mc)
                sub_mul(S, cur.vecs[k], nk, 1, p)
                one = 1 if p else _ONE
                minus = (p - 1) if p else -_ONE
                sigma = {mc + cur.offsets[j]: one}
                kc = nk + cur.offsets[k]
                sigma[kc] = minus
                find = red.find
                leads = red.leads
                vecs = red.polys
                while S:
                    c = max(S)
                    i = find(c)
                    if i < 0:
                        raise RuntimeError("S-polynomial did not reduce to zero: input is not a Groebner basis")
                    coef = S[c]
                    q = c - leads[i]
                    sub_mul(S, vecs[i], q, coef, p)
                    key = q + cur.offsets[i]
                    nv = (sigma.get(key, 0) - coef) % p if p else sigma.get(key, 0) - coef
                    if nv:
                        sigma[key] = nv
                    else:
                        sigma.pop(key, None)
                    if steps_budget is not None:
                        steps_budget[0] -= 1
                        if steps_budget[0] < 0:
                            raise ResourceLimit("resolution exceeded its reduction-step budget")
                lead = mc + cur.offsets[j]
                new_vecs.append(sigma)
                new_leads.append(lead)
                new_exps.append(m)
                new_comp.append(j)
                new_degs.append(add_deg(grading.of_exps(m), cur.degs[j]))
        nxt = Level(new_vecs, new_leads, new_exps, new_comp, new_degs)
        _sort_level(nxt, [coder.tb(o) for o in cur.offsets], coder)
        levels.append(nxt)
    return levels


def constant_part(vec, layout):
    """Entries of degree zero of a vector: {component: coefficient}."""
    pm = layout.coder.pmask
    out = {}
    for c, v in vec.items():
        if not (c & pm):
            j, _ = layout.split(c)
            out[j] = v
    return out


def rank_mod_p(rows, p):
    """Rank of a sparse matrix given as list of {col: value} over Q (p=0) or F_p."""
    pivots = {}
    rank = 0
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        while r:
            col = min(r)
            if col in pivots:
                prow = pivots[col]
                c = r[col]
                for k, v in prow.items():
                    nv = r.get(k, 0) - c * v
                    if p:
                        nv %= p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            else:
                c = inv(r[col], p)
                pivots[col] = {k: (v * c) % p if p else v * c for k, v in r.items()}
                rank += 1
                break
    return rank


def frame_betti(levels, p):
    """Minimal graded Betti numbers {(i, degree): beta} from a Schreyer frame.

    beta_{i,D} = #frame_{i,D} - rank(dbar_i)_D - rank(dbar_{i+1})_D, where dbar
    is the differential tensored with k (its constant entries).
    """
    ranks = {}
    for i in range(1, len(levels)):
        prev = levels[i - 1]
        cur = levels[i]
        by_deg = {}
        for t, vec in enumerate(cur.vecs):
            cp = constant_part(vec, prev.layout)
            if cp:
                by_deg.setdefault(cur.degs[t], []).append(cp)
        for d, rows in by_deg.items():
            ranks[(i, d)] = rank_mod_p(rows, p)
    out = {}
    for i, lvl in enumerate(levels):
        counts = {}
        for d in lvl.degs:
            counts[d] = counts.get(d, 0) + 1
        for d, c in counts.items():
            b = c - ranks.get((i, d), 0) - ranks.get((i + 1, d), 0)
            if b:
                out[(i, d)] = b
    return out


# ---------------------------------------------------------------------------
# minimization
# ---------------------------------------------------------------------------

class SparseMatrix:
    """Columns of ring-code polynomials with a row index, for unit pivoting."""

    def __init__(self, nrows, ncols):
        self.cols = [dict() for _ in range(ncols)]
        self.rows = [set() for _ in range(nrows)]
        self.row_alive = [True] * nrows
        self.col_alive = [True] * ncols

    def set(self, r, c, poly):
        if poly:
            self.cols[c][r] = poly
            self.rows[r].add(c)
        else:
            self.cols[c].pop(r, None)
            self.rows[r].discard(c)

    def constant_entries(self, pmask):
        out = []
        for c, col in enumerate(self.cols):
            if not self.col_alive[c]:
                continue
            for r, f in col.items():
                if len(f) == 1:
                    (t,) = f
                    if not (t & pmask):
                        out.append((r, c))
        return out


def levels_to_matrices(levels, target):
    """Differentials d_0 (into the target) .. d_L as SparseMatrix objects."""
    mats = []
    layouts = [target] + [lvl.layout for lvl in levels]
    for i, lvl in enumerate(levels):
        lay = layouts[i]
        m = SparseMatrix(lay.rank, len(lvl))
        for t, vec in enumerate(lvl.vecs):
            col = {}
            for c, v in vec.items():
                j, rc = lay.split(c)
                col.setdefault(j, {})[rc] = v
            for j, f in col.items():
                m.set(j, t, f)
        mats.append(m)
    return mats


def minimize(mats, p, pmask):
    """Split off unit pivots until no differential d_i (i >= 1) has a constant entry.

    ``mats[0]`` maps F_0 into the target and is never pivoted.  Pivot choice:
    smallest row, then smallest column.  Mutates and returns liveness masks.
    """
    for i in range(1, len(mats)):
        d = mats[i]
        while True:
            const = d.constant_entries(pmask)
            if not const:
                break
            r, c = min(const)
            (tu, u) = next(iter(d.cols[c][r].items()))
            uinv = inv(u, p)
            pivot_col = {rr: f for rr, f in d.cols[c].items() if rr != r}
            for c2 in list(d.rows[r]):
                if c2 == c:
                    continue
                a = d.cols[c2][r]
                fac = scale(a, uinv, p)
                for rr, b in pivot_col.items():
                    cur = dict(d.cols[c2].get(rr, {}))
                    prod = mul(fac, b, p)
                    add_into(cur, prod, p, (p - 1) if p else -1)
                    d.set(rr, c2, cur)
            # delete row r and column c of d_i
            for c2 in list(d.rows[r]):
                d.set(r, c2, {})
            for rr in list(d.cols[c]):
                d.set(rr, c, {})
            d.row_alive[r] = False
            d.col_alive[c] = False
            # F_{i-1} loses basis element r: column r of d_{i-1}
            prev = mats[i - 1]
            for rr in list(prev.cols[r]):
                prev.set(rr, r, {})
            prev.col_alive[r] = False
            # F_i loses basis element c: row c of d_{i+1}
            if i + 1 < len(mats):
                nxt = mats[i + 1]
                for c2 in list(nxt.rows[c]):
                    nxt.set(c, c2, {})
                nxt.row_alive[c] = False
    return mats

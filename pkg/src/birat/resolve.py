"""Syzygies, minimal graded free resolutions and Betti tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import _engine as eng
from .errors import NotBihomogeneous, NotMinimal
from .groebner import IdealHandle, current_budget, from_codes, minimal_generators, to_codes
from .polyring import GrevLex, Polynomial, RingContext

Degree = Tuple[int, ...]
Matrix = List[List[Polynomial]]


@dataclass
class GradedModulePresentation:
    """Columns of ``matrix`` (rows x cols) generate a graded submodule of
    sum_i R(-row_degrees[i]).  Degrees are tuples: length 1 for the standard
    grading, length 2 (x-degree, y-degree) for the bigrading."""

    ring: RingContext
    row_degrees: List[Degree]
    matrix: Matrix
    grading: List[Tuple[int, ...]] = field(default=None)

    def __post_init__(self):
        self.row_degrees = [tuple(d) if isinstance(d, (tuple, list)) else (d,) for d in self.row_degrees]
        if self.grading is None:
            k = len(self.row_degrees[0]) if self.row_degrees else 1
            self.grading = [(1,) * self.ring.nvars] if k == 1 else self.ring.bigrading()
        if len(self.matrix) != len(self.row_degrees):
            raise ValueError("one row degree per matrix row")

    @property
    def ncols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def column(self, j: int) -> List[Polynomial]:
        return [row[j] for row in self.matrix]

    def column_degree(self, j: int) -> Optional[Degree]:
        """Degree of column j; raises NotBihomogeneous if the column is not homogeneous."""
        degs = set()
        for i, f in enumerate(self.column(j)):
            for e, _ in f.items():
                d = tuple(sum(w * x for w, x in zip(row, e)) for row in self.grading)
                degs.add(eng.add_deg(d, self.row_degrees[i]))
        if len(degs) > 1:
            raise NotBihomogeneous(f"column {j} is not homogeneous: degrees {sorted(degs)}")
        return degs.pop() if degs else None


def ideal_presentation(I: IdealHandle, gens: Optional[Sequence[Polynomial]] = None,
                       bigraded: bool = False) -> GradedModulePresentation:
    """1 x k presentation whose columns are the generators of I."""
    gens = list(gens) if gens is not None else list(I.generators)
    deg0 = (0, 0) if bigraded else (0,)
    return GradedModulePresentation(I.ring, [deg0], [gens])


# ---------------------------------------------------------------------------
# module coding
# ---------------------------------------------------------------------------

class _ModuleCoding:
    """Packs the columns of a presentation into engine vectors (TOP order)."""

    def __init__(self, pres: GradedModulePresentation):
        ring = pres.ring
        self.ring = ring
        self.p = ring.field.characteristic
        self.coder = ring.coder(GrevLex())
        self.grading = eng.Grading(self.coder, pres.grading)
        r = len(pres.row_degrees)
        self.rank = r
        coder = self.coder
        if r == 1 and not any(pres.row_degrees[0]):
            self.layout = eng.Layout(coder, [0], [pres.row_degrees[0]])
        else:
            offs = [coder.component_code(sum(d) * coder.top_row_unit, r - i)
                    for i, d in enumerate(pres.row_degrees)]
            self.layout = eng.Layout(coder, offs, pres.row_degrees)
        totals = {coder.tb(o): sum(d) for o, d in zip(self.layout.offsets, pres.row_degrees)}
        self.degree_of = lambda c, _e=coder.exps, _tb=coder.tb: sum(_e(c)) + totals[_tb(c)]

    def encode_column(self, col: Sequence[Polynomial]) -> Dict[int, object]:
        out = {}
        for i, f in enumerate(col):
            off = self.layout.offsets[i]
            for c, v in to_codes(f, self.coder).items():
                out[c + off] = v
        return out

    def decode_vector(self, vec, layout, nrows) -> List[Polynomial]:
        parts = [dict() for _ in range(nrows)]
        for c, v in vec.items():
            j, rc = layout.split(c)
            parts[j][rc] = v
        return [from_codes(d, self.ring, self.coder) for d in parts]


def _columns_degrees(pres):
    return [pres.column_degree(j) for j in range(pres.ncols)]


def _gb_of_columns(mc: _ModuleCoding, cols, lift=False, rep_offsets=None):
    return eng.buchberger(cols, mc.coder, mc.p, mc.degree_of, product_criterion=(mc.rank == 1),
                          lift=lift, rep_offsets=rep_offsets, budget=current_budget())


# ---------------------------------------------------------------------------
# syzygies
# ---------------------------------------------------------------------------

def syzygies(pres: GradedModulePresentation, minimize: bool = True) -> Matrix:
    """Generators of the kernel of the presentation matrix, as columns.

    The Groebner basis of the columns is computed with representations in
    terms of the columns; syzygies of the basis (Schreyer) are pulled back and
    completed by the relations expressing each column through the basis.  For
    homogeneous input a minimal generating set is extracted in degree order.
    """
    ncols = pres.ncols
    if ncols == 0:
        return []
    mc = _ModuleCoding(pres)
    coder = mc.coder
    p = mc.p
    cols = [mc.encode_column(pres.column(j)) for j in range(ncols)]
    degs = _columns_degrees(pres)
    col_deg_total = [sum(d) if d is not None else 0 for d in degs]
    rep_offs = [coder.component_code(col_deg_total[k] * coder.top_row_unit, ncols - k) for k in range(ncols)]
    rep_layout = eng.Layout(coder, rep_offs, [d if d is not None else pres.row_degrees[0] for d in degs])
    res = _gb_of_columns(mc, cols, lift=True, rep_offsets=rep_offs)
    candidates = []
    if res.polys:
        levels = eng.schreyer_resolution(res.polys, mc.layout, mc.grading, p, stop_after=2)
        lvl0 = levels[0]
        reps = [res.reps[k] for k in lvl0.perm]
        if len(levels) > 1:
            for sigma in levels[1].vecs:
                out = {}
                for c, v in sigma.items():
                    l, rc = lvl0.layout.split(c)
                    eng.sub_mul(out, reps[l], rc, (-v) % p if p else -v, p)
                if out:
                    candidates.append(out)
        red = eng.Reducer(coder, lvl0.leads, lvl0.vecs)
    for k in range(ncols):
        one = {rep_offs[k]: 1 if p else eng._ONE}
        if not cols[k]:
            candidates.append(one)
            continue
        quots, rem = eng.divide(cols[k], red, p)
        assert not rem, "column not reduced to zero by its own Groebner basis"
        out = dict(one)
        for l, q in quots.items():
            for t, v in q.items():
                eng.sub_mul(out, reps[l], t, v, p)
        if out:
            candidates.append(out)
    if minimize and all(d is not None for d in degs):
        rdeg = lambda c, _e=coder.exps, _tb=coder.tb, tot={coder.tb(o): t for o, t in zip(rep_offs, col_deg_total)}: \
            sum(_e(c)) + tot[_tb(c)]
        candidates.sort(key=lambda v: (rdeg(max(v)), -max(v)))
        gbres = eng.buchberger(candidates, coder, p, rdeg, product_criterion=(ncols == 1),
                               budget=current_budget())
        candidates = [candidates[k] for k in sorted(gbres.new_inputs)]
    colsout = [mc.decode_vector(v, rep_layout, ncols) for v in candidates]
    return [[colsout[j][i] for j in range(len(colsout))] for i in range(ncols)]


# ---------------------------------------------------------------------------
# resolutions and Betti tables
# ---------------------------------------------------------------------------

@dataclass
class FreeResolution:
    """``twists[i]`` are the degrees of the basis of F_i; ``maps[0]`` is the
    generator matrix F_0 -> target, ``maps[i]`` (i >= 1) the differential
    F_i -> F_{i-1}, each as a row-major matrix."""

    ring: RingContext
    target_degrees: List[Degree]
    twists: List[List[Degree]]
    maps: List[Matrix]
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.twists) - 1


@dataclass
class BettiTable:
    """Entries (i, degree) -> beta with degree a 1-tuple or an (a, b) pair."""

    entries: Dict[Tuple[int, Degree], int]
    bigraded: bool = False
    minimal: bool = True

    def __getitem__(self, key):
        i, d = key
        if not isinstance(d, tuple):
            d = (d,)
        return self.entries.get((i, d), 0)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def is_empty(self) -> bool:
        return not self.entries

    def to_json(self) -> List[dict]:
        out = []
        for (i, d), b in sorted(self.entries.items()):
            out.append({"i": i, "j": list(d) if self.bigraded else d[0], "beta": b})
        return out

    def text(self) -> str:
        """Triangular layout: row j - i, column i."""
        if self.bigraded:
            return "\n".join(f"{i}: {list(d)} {b}" for (i, d), b in sorted(self.entries.items()))
        if not self.entries:
            return "(empty)"
        maxi = max(i for i, _ in self.entries)
        shifts = sorted({d[0] - i for i, d in self.entries})
        width = max(len(str(b)) for b in self.entries.values()) + 1
        lines = ["      " + "".join(f"{i:>{width}}" for i in range(maxi + 1))]
        for s in range(shifts[0], shifts[-1] + 1):
            row = "".join(f"{(self.entries.get((i, (i + s,)), '-')):>{width}}" for i in range(maxi + 1))
            lines.append(f"{s:>4}: " + row)
        return "\n".join(lines)


def _prepare(pres: GradedModulePresentation):
    mc = _ModuleCoding(pres)
    cols = [mc.encode_column(pres.column(j)) for j in range(pres.ncols)]
    cols = [c for c in cols if c]
    return mc, cols


def _frame(pres: GradedModulePresentation, steps_budget=None):
    mc, cols = _prepare(pres)
    if not cols:
        return mc, []
    res = _gb_of_columns(mc, cols)
    budget = [steps_budget] if steps_budget is not None else None
    levels = eng.schreyer_resolution(res.polys, mc.layout, mc.grading, mc.p, steps_budget=budget)
    return mc, levels


def minimal_free_resolution(pres: GradedModulePresentation) -> FreeResolution:
    """Minimal graded free resolution of the module generated by the columns.

    A Schreyer frame is built from a Groebner basis and then pruned by
    splitting off unit entries (smallest row, then smallest column first).
    """
    mc, levels = _frame(pres)
    nrows = len(pres.row_degrees)
    if not levels:
        return FreeResolution(pres.ring, pres.row_degrees, [], [])
    mats = eng.levels_to_matrices(levels, mc.layout)
    eng.minimize(mats, mc.p, mc.coder.pmask)
    twists = []
    maps = []
    layouts_rows = [nrows] + [len(l) for l in levels]
    for i, (lvl, m) in enumerate(zip(levels, mats)):
        alive_cols = [c for c in range(len(lvl)) if m.col_alive[c]]
        alive_rows = [r for r in range(layouts_rows[i]) if m.row_alive[r]]
        if not alive_cols:
            break
        twists.append([lvl.degs[c] for c in alive_cols])
        mat = []
        for r in alive_rows:
            mat.append([from_codes(m.cols[c].get(r, {}), mc.ring, mc.coder) for c in alive_cols])
        maps.append(mat)
    res = FreeResolution(pres.ring, pres.row_degrees, twists, maps)
    _check_complex(res)
    return res


def _check_complex(res: FreeResolution):
    """Consecutive maps compose to zero; minimal maps have no constant entries."""
    for i in range(1, len(res.maps)):
        A, B = res.maps[i - 1], res.maps[i]
        for r in range(len(A)):
            for c in range(len(B[0]) if B else 0):
                acc = res.ring.zero()
                for k in range(len(B)):
                    if not A[r][k].is_zero() and not B[k][c].is_zero():
                        acc = acc + A[r][k] * B[k][c]
                if not acc.is_zero():
                    raise AssertionError("resolution maps do not compose to zero")
        for row in B:
            for f in row:
                if not f.is_zero() and f.is_constant():
                    raise NotMinimal("unit entry left in a minimal resolution")
    if res.length > res.ring.nvars:
        raise AssertionError("resolution longer than the number of variables")


def betti_table(res: FreeResolution) -> BettiTable:
    if not res.minimal:
        raise NotMinimal("Betti numbers need a minimal resolution")
    entries: Dict[Tuple[int, Degree], int] = {}
    for i, tw in enumerate(res.twists):
        for d in tw:
            entries[(i, d)] = entries.get((i, d), 0) + 1
    bigraded = bool(res.twists) and len(res.twists[0][0]) == 2
    return BettiTable(entries, bigraded)


def betti_numbers(pres: GradedModulePresentation, steps_budget: Optional[int] = None) -> BettiTable:
    """Minimal Betti numbers straight from a Schreyer frame and ranks of its
    constant parts, without building the minimal maps."""
    mc, levels = _frame(pres, steps_budget)
    entries = eng.frame_betti(levels, mc.p) if levels else {}
    return BettiTable(entries, len(pres.row_degrees[0]) == 2)


def bigraded_betti(pres: GradedModulePresentation, steps_budget: Optional[int] = None) -> BettiTable:
    if pres.ring.block_split is None:
        raise NotBihomogeneous("ring has no x/y split")
    if len(pres.row_degrees[0]) != 2:
        pres = GradedModulePresentation(pres.ring, [(0, 0)] * len(pres.row_degrees), pres.matrix)
    return betti_numbers(pres, steps_budget)


def regularity(bt: BettiTable) -> int:
    """max(j - i) over nonzero entries (total degree for bigraded tables)."""
    if not bt.entries:
        raise ValueError("regularity of the zero module is undefined")
    return max(sum(d) - i for (i, d) in bt.entries)


def projective_dimension(bt: BettiTable) -> int:
    if not bt.entries:
        raise ValueError("projective dimension of the zero module is undefined")
    return max(i for i, _ in bt.entries)


def depth_of_quotient(bt: BettiTable, ambient_vars: int) -> int:
    """depth(R/I) from the Betti table of the ideal I (pd(R/I) = pd(I) + 1)."""
    return ambient_vars - (projective_dimension(bt) + 1)


def ideal_betti(I: IdealHandle, bigraded: bool = False, minimal_gens: bool = True) -> BettiTable:
    """Betti table of an ideal from an interreduced generating set."""
    if I.is_zero():
        return BettiTable({}, bigraded)
    gens = minimal_generators(I) if minimal_gens else list(I.generators)
    pres = ideal_presentation(I, gens, bigraded)
    return bigraded_betti(pres) if bigraded else betti_numbers(pres)

"""Invariants of rational maps and the ledger of degree bounds."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import gmpy2

from .biratio import (InverseRepresentative, Verdict, determinant, gcd_list,
                      inverse_representative, is_birational, jacobian_dual, rank_mod, verify_inverse)
from .errors import (EmptyLinearPart, GradeTooSmall, NoFullRankSubmatrix, NoReductionFound, NotMonomial,
                     NotSaturated, ResourceLimit, UnsupportedSource, WrongCodimension)
from .groebner import (IdealHandle, colon, exact_quotient, ideal_equal, ideal_power, krull_dimension,
                       minimal_generators, saturate)
from .polyring import Polynomial
from .rees import (RationalMapDescriptor, ReesPresentation, analytic_spread, rees_ideal,
                   reduction_number, special_fiber)
from .resolve import (BettiTable, bigraded_betti, ideal_betti, ideal_presentation,
                      projective_dimension, regularity, syzygies)


def irrelevant_ideal(ring) -> IdealHandle:
    return IdealHandle(ring, ring.gens())


# ---------------------------------------------------------------------------
# saturation
# ---------------------------------------------------------------------------

def is_saturated(I: IdealHandle) -> bool:
    sat, _ = saturate(I, irrelevant_ideal(I.ring))
    return ideal_equal(I, sat)


def iterated_colon(I: IdealHandle, J: IdealHandle, times: int) -> IdealHandle:
    """I : J^times by repeated colon."""
    cur = I
    for _ in range(times):
        cur = colon(cur, J)
    return cur


def saturation_colon_check(F: RationalMapDescriptor) -> bool:
    """Saturation of the base ideal equals I : A_+^(n-2)."""
    I = F.base_ideal()
    m = irrelevant_ideal(F.ring)
    sat, _ = saturate(I, m)
    return ideal_equal(sat, iterated_colon(I, m, max(F.n - 2, 0)))


# ---------------------------------------------------------------------------
# Cohen-Macaulayness and regularity
# ---------------------------------------------------------------------------

def rees_betti(P: ReesPresentation, steps_budget: Optional[int] = None) -> BettiTable:
    """Bigraded Betti table of the Rees ideal (ideal convention: i = 0 are generators)."""
    pres = ideal_presentation(P.J, [g for g, _ in P.min_gens], bigraded=True)
    return bigraded_betti(pres, steps_budget)


def rees_is_CM(F: RationalMapDescriptor, P: Optional[ReesPresentation] = None,
               table: Optional[BettiTable] = None) -> bool:
    """pd of k[X,Y]/J equals codim J = m."""
    if not F.source_is_projective_space:
        raise UnsupportedSource("Cohen-Macaulay test needs the full projective space as source")
    P = P if P is not None else rees_ideal(F)
    bt = table if table is not None else rees_betti(P)
    pd_quotient = projective_dimension(bt) + 1
    return pd_quotient == F.m


def f_function(F: RationalMapDescriptor, r_max: int = 3) -> List[int]:
    """Reg(I^r) - r*delta for r = 1..r_max."""
    if not F.source_is_projective_space:
        raise UnsupportedSource("powers are resolved over the polynomial ring only")
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    I = F.base_ideal()
    out = []
    for r in range(1, r_max + 1):
        bt = ideal_betti(ideal_power(I, r))
        out.append(regularity(bt) - r * F.delta)
    return out


def x_regularity_from_table(bt: BettiTable) -> int:
    """x-regularity of k[X,Y]/J from the bigraded table of J: max(0, a - i - 1)."""
    best = 0
    for (i, (a, _)), _b in bt.entries.items():
        best = max(best, a - i - 1)
    return best


def x_regularity(F: RationalMapDescriptor, P: Optional[ReesPresentation] = None) -> int:
    P = P if P is not None else rees_ideal(F)
    return x_regularity_from_table(rees_betti(P))


# ---------------------------------------------------------------------------
# explicit bounds
# ---------------------------------------------------------------------------

def mayr_ritscher_bound(n: int, m: int, dimX: int, d: int, d0: int) -> Fraction:
    """2n [ delta^(2(n+m+1-dimX)^2) / 2 + delta ]^(2^(dimX+2)), delta = max(d+1, d0).

    Exact; the value is a fraction whenever delta is odd.
    """
    if n < 1 or m < 1 or d < 1:
        raise ValueError("need n, m >= 1 and d >= 1")
    delta = max(d + 1, d0)
    inner = Fraction(delta ** (2 * (n + m + 1 - dimX) ** 2), 2) + delta
    return 2 * n * inner ** (2 ** (dimX + 2))


MR_EXPAND_BITS = 20_000


def _mr_exponents(n: int, m: int, dimX: int, d: int, d0: int):
    delta = max(d + 1, d0)
    return delta, 2 * (n + m + 1 - dimX) ** 2, 2 ** (dimX + 2)


def mayr_ritscher_expression(n: int, m: int, dimX: int, d: int, d0: int) -> str:
    delta, e, k = _mr_exponents(n, m, dimX, d, d0)
    return f"2*{n}*({delta}^{e}/2 + {delta})^{k}"


def mayr_ritscher_bits(n: int, m: int, dimX: int, d: int, d0: int) -> int:
    """An integer b with 2^b <= the bound (exact lower estimate, no big powers formed)."""
    delta, e, k = _mr_exponents(n, m, dimX, d, d0)
    return k * (e * (delta.bit_length() - 1) - 1)


def mr_ledger_values(n: int, m: int, dimX: int, d: int, d0: int, lhs: int):
    """(rhs text, status) with the exact value spelled out only when it is small enough."""
    if mayr_ritscher_bits(n, m, dimX, d, d0) <= MR_EXPAND_BITS:
        mr = mayr_ritscher_bound(n, m, dimX, d, d0)
        return _fmt(mr), _le(lhs, mr)
    ok = lhs.bit_length() <= mayr_ritscher_bits(n, m, dimX, d, d0)
    return mayr_ritscher_expression(n, m, dimX, d, d0), "pass" if ok else "fail"


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        num = gmpy2.mpz(v.numerator).digits()
        return num if v.denominator == 1 else f"{num}/{gmpy2.mpz(v.denominator).digits()}"
    return str(v)


def _le(a, b) -> str:
    return "pass" if Fraction(a) <= Fraction(b) else "fail"


@dataclass
class BoundLedgerEntry:
    id: str
    lhs: str
    rhs: str
    status: str

    def to_json(self) -> dict:
        return {"id": self.id, "lhs": self.lhs, "rhs": self.rhs, "status": self.status}


def _na(id_: str) -> BoundLedgerEntry:
    return BoundLedgerEntry(id_, "", "", "not-applicable")


@dataclass
class ReportParts:
    """Everything the ledger may draw on; missing pieces are None."""

    verdict: Optional[Verdict] = None
    inverse: Optional[InverseRepresentative] = None
    rees: Optional[ReesPresentation] = None
    rees_cm: Optional[bool] = None
    x_reg: Optional[int] = None
    f_values: Optional[List[int]] = None
    dim_source: Optional[int] = None
    fiber_is_zero: Optional[bool] = None
    grade: Optional[int] = None
    b1: Optional[int] = None
    sat_ideal: Optional[IdealHandle] = None
    colon_ideal: Optional[IdealHandle] = None


def _ideal_text(I: IdealHandle) -> str:
    return "(" + ", ".join(str(g) for g in I.groebner().elements) + ")"


def bound_ledger(F: RationalMapDescriptor, parts: ReportParts) -> List[BoundLedgerEntry]:
    """One entry per bound: MR, B2, B21, B22, CRE_N2, RELTYPE_REG, GRADE2_DELTA, GRADE2_B1, SAT_COLON."""
    out = []
    birational = parts.verdict is not None and parts.verdict.birational
    inv_deg = parts.inverse.degree if parts.inverse is not None else None
    dimA = parts.dim_source
    m, n = F.m, F.n
    delta = F.delta
    if F.source_is_projective_space:
        g = gcd_list(F.forms)
        delta = F.delta - max(g.total_degree(), 0)
    cremona = (birational and F.source_is_projective_space and m == n and parts.fiber_is_zero)
    cm = parts.rees_cm is True

    # MR
    if birational and inv_deg is not None and dimA is not None:
        d0 = max((g.total_degree() for g in F.source_ideal.generators), default=0)
        rhs, status = mr_ledger_values(n, m, dimA - 1, F.delta, d0, inv_deg)
        out.append(BoundLedgerEntry("MR", _fmt(inv_deg), rhs, status))
    else:
        out.append(_na("MR"))

    sup = parts.x_reg if parts.x_reg is not None else (max(parts.f_values) if parts.f_values else None)
    # B2
    if birational and sup is not None:
        rhs = m * (sup + 1)
        out.append(BoundLedgerEntry("B2", _fmt(delta), _fmt(rhs), _le(delta, rhs)))
    else:
        out.append(_na("B2"))
    # B21
    if birational and cm and sup is not None and dimA is not None:
        lhs, rhs = m * (sup + 1), m * dimA
        out.append(BoundLedgerEntry("B21", _fmt(lhs), _fmt(rhs), _le(lhs, rhs)))
    else:
        out.append(_na("B21"))
    # B22
    if birational and cm and inv_deg is not None and dimA is not None:
        rhs = n * dimA
        out.append(BoundLedgerEntry("B22", _fmt(inv_deg), _fmt(rhs), _le(inv_deg, rhs)))
    else:
        out.append(_na("B22"))
    # CRE_N2
    if cremona and cm and inv_deg is not None:
        lhs = max(delta, inv_deg)
        out.append(BoundLedgerEntry("CRE_N2", _fmt(lhs), _fmt(n * n), _le(lhs, n * n)))
    else:
        out.append(_na("CRE_N2"))
    # RELTYPE_REG
    if birational and parts.rees is not None and parts.x_reg is not None:
        lhs = max(a for _, (a, _b) in parts.rees.min_gens)
        rhs = parts.x_reg + 1
        out.append(BoundLedgerEntry("RELTYPE_REG", _fmt(lhs), _fmt(rhs), _le(lhs, rhs)))
    else:
        out.append(_na("RELTYPE_REG"))
    # grade two
    if parts.grade is not None and parts.grade >= 2 and parts.b1 is not None:
        rhs = Fraction(m * parts.b1, m + 1)
        out.append(BoundLedgerEntry("GRADE2_DELTA", _fmt(F.delta), _fmt(rhs), _le(F.delta, rhs)))
        lhs = Fraction((m + 1) * F.delta, m)
        out.append(BoundLedgerEntry("GRADE2_B1", _fmt(lhs), _fmt(parts.b1), _le(lhs, parts.b1)))
    else:
        out.append(_na("GRADE2_DELTA"))
        out.append(_na("GRADE2_B1"))
    # SAT_COLON (delta = 1 is the identity, whose base ideal saturates to the unit ideal)
    if cremona and cm and F.delta >= 2 and n >= 2 and parts.sat_ideal is not None and parts.colon_ideal is not None:
        lhs, rhs = _ideal_text(parts.sat_ideal), _ideal_text(parts.colon_ideal)
        out.append(BoundLedgerEntry("SAT_COLON", lhs, rhs, "pass" if lhs == rhs else "fail"))
    else:
        out.append(_na("SAT_COLON"))
    return out


# ---------------------------------------------------------------------------
# grade two
# ---------------------------------------------------------------------------

def codimension(I: IdealHandle) -> int:
    return I.ring.nvars - krull_dimension(I)


def _signed_maximal_minors(M: List[List[Polynomial]], cols: Sequence[int]) -> List[Polynomial]:
    rows = len(M)
    out = []
    for i in range(rows):
        sub = [[M[r][c] for c in cols] for r in range(rows) if r != i]
        d = determinant(sub)
        out.append(d if i % 2 == 0 else -d)
    return out


def grade2_check(I: IdealHandle) -> dict:
    """Find m columns of the syzygy matrix whose signed maximal minors are h * f_i."""
    if I.is_zero() or codimension(I) < 2:
        raise GradeTooSmall("the ideal has grade below two")
    f = list(I.generators)
    m = len(f) - 1
    M = syzygies(ideal_presentation(I, f))
    ncols = len(M[0]) if M else 0
    for cols in itertools.combinations(range(ncols), m):
        sub = [[M[r][c] for c in cols] for r in range(m + 1)]
        if rank_mod(sub, None) != m:
            continue
        minors = _signed_maximal_minors(M, cols)
        k = next(i for i, g in enumerate(f))
        h = exact_quotient(minors[k], f[k])
        if h.is_zero():
            continue
        if all(h * fi == d for fi, d in zip(f, minors)):
            return {"h": h, "minors": minors, "columns": list(cols), "matrix": M}
        raise AssertionError("maximal minors are not a multiple of the generators")
    raise NoFullRankSubmatrix("no m columns of the syzygy matrix have rank m")


def first_syzygy_degree(I: IdealHandle) -> int:
    """Largest twist among minimal first syzygies (b_1)."""
    bt = ideal_betti(I)
    return max(d[0] for (i, d) in bt.entries if i == 1)


# ---------------------------------------------------------------------------
# plane maps
# ---------------------------------------------------------------------------

def hilbert_burch(I: IdealHandle) -> List[List[Polynomial]]:
    """Syzygy matrix of the minimal generators of a saturated perfect codim-2 ideal."""
    if codimension(I) != 2:
        raise WrongCodimension("ideal does not have codimension two")
    if not is_saturated(I):
        raise NotSaturated("ideal is not saturated")
    gens = minimal_generators(I)
    bt = ideal_betti(IdealHandle(I.ring, gens))
    if projective_dimension(bt) != 1:
        raise WrongCodimension("quotient is not perfect of codimension two")
    M = syzygies(ideal_presentation(I, gens))
    minors = _signed_maximal_minors(M, range(len(M[0])))
    if not ideal_equal(IdealHandle(I.ring, minors), IdealHandle(I.ring, gens)):
        raise AssertionError("maximal minors do not regenerate the ideal")
    return M


def _column_degrees(M: List[List[Polynomial]]) -> List[int]:
    out = []
    for c in range(len(M[0])):
        out.append(max(M[r][c].total_degree() for r in range(len(M))))
    return out


def dejonquieres_test(I: IdealHandle) -> bool:
    """Saturated perfect codim-2 base ideal whose syzygy columns have degrees 1 and d - 1."""
    try:
        M = hilbert_burch(I)
    except (NotSaturated, WrongCodimension):
        return False
    degs = {g.total_degree() for g in I.generators}
    if len(degs) != 1:
        return False
    d = degs.pop()
    return sorted(_column_degrees(M)) == sorted([1, d - 1])


@dataclass
class PlaneVerdict:
    degree: int
    saturated: bool
    rees_cm: bool
    dejonquieres: bool
    condition_a: bool
    condition_b: bool
    agree: bool
    discrepancy: bool
    note: str = ""


def plane_classification(F: RationalMapDescriptor, assume_three_proper_nonaligned: bool = False,
                         P: Optional[ReesPresentation] = None) -> PlaneVerdict:
    """Compare (a) saturated and Rees CM with (b) d <= 3 or (d = 4 and not de Jonquieres)."""
    if F.n != 2 or F.m != 2 or not F.source_is_projective_space:
        raise UnsupportedSource("plane classification needs a map from P^2 to P^2")
    I = F.base_ideal()
    d = F.delta
    sat = is_saturated(I)
    cm = rees_is_CM(F, P)
    dj = dejonquieres_test(I)
    a = sat and cm
    b = d <= 3 or (d == 4 and not dj)
    agree = a == b
    note = ""
    if not agree:
        note = ("contradiction with the classification" if assume_three_proper_nonaligned
                else "mismatch; the base-point hypothesis was not asserted")
    return PlaneVerdict(d, sat, cm, dj, a, b, agree, (not agree) and assume_three_proper_nonaligned, note)


# ---------------------------------------------------------------------------
# monomial maps
# ---------------------------------------------------------------------------

def smith_normal_form(A: List[List[int]]) -> List[int]:
    """Nonzero elementary divisors of an integer matrix (each divides the next)."""
    M = [list(map(int, r)) for r in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    divisors = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        for r in M:
            r[t], r[pj] = r[pj], r[t]
        while True:
            changed = False
            for i in range(t + 1, rows):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    for j in range(t, cols):
                        M[i][j] -= q * M[t][j]
                    if M[i][t]:
                        M[t], M[i] = M[i], M[t]
                        changed = True
            for j in range(t + 1, cols):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    for i in range(t, rows):
                        M[i][j] -= q * M[i][t]
                    if M[t][j]:
                        for r in M:
                            r[t], r[j] = r[j], r[t]
                        changed = True
            if changed:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if M[i][j] % M[t][t]), None)
            if bad is None:
                break
            i, _ = bad
            for j in range(t, cols):
                M[t][j] += M[i][j]
        divisors.append(abs(M[t][t]))
        t += 1
    return divisors


def monomial_exponents(F: RationalMapDescriptor) -> List[tuple]:
    out = []
    for f in F.forms:
        if len(f) != 1:
            raise NotMonomial(f"{f} is not a monomial")
        (e, _), = f.items()
        out.append(e)
    return out


def monomial_birationality_oracle(F: RationalMapDescriptor) -> bool:
    """Lattice of exponent differences has full rank n and index one."""
    if not F.source_is_projective_space:
        raise UnsupportedSource("monomial oracle needs the full projective space as source")
    exps = monomial_exponents(F)
    rows = [[a - b for a, b in zip(e, exps[0])] for e in exps[1:]]
    divs = smith_normal_form(rows)
    return len(divs) == F.n and all(d == 1 for d in divs)


# ---------------------------------------------------------------------------
# full report
# ---------------------------------------------------------------------------

@dataclass
class AnalysisOptions:
    r_max: int = 3
    trials: int = 3
    seed: int = 0
    bound: int = 50
    cap: int = 6
    assume_three_proper_nonaligned: bool = False
    rees_steps: Optional[int] = 50_000


def analyze(F: RationalMapDescriptor, opts: Optional[AnalysisOptions] = None) -> dict:
    """Full pipeline: Rees ideal, criterion, inverse, invariants and ledger, as JSON data."""
    opts = opts or AnalysisOptions()
    parts = ReportParts()
    inv: Dict[str, object] = {"delta": F.delta, "n": F.n, "m": F.m}
    notes: List[str] = []
    P = rees_ideal(F)
    parts.rees = P
    inv["relation_type"] = P.relation_type
    b = special_fiber(F)
    parts.fiber_is_zero = b.is_zero()
    ell = analytic_spread(F, b)
    inv["analytic_spread"] = ell
    parts.dim_source = krull_dimension(F.source_ideal) if not F.source_ideal.is_zero() else len(F.x_vars)
    inv["source_dimension"] = parts.dim_source - 1
    try:
        dual = jacobian_dual(F, P, b)
        verdict = is_birational(F, dual)
    except EmptyLinearPart:
        dual = None
        verdict = Verdict(False, 0, F.n, "empty x-linear part")
    parts.verdict = verdict
    inv["jacobian_dual_rank"] = verdict.rank
    inverse_json = None
    if verdict.birational:
        rep = inverse_representative(F, dual)
        parts.inverse = rep
        ok = verify_inverse(F, rep.forms)
        if not ok:
            notes.append("criterion anomaly: inverse representative fails the composition check")
        inverse_json = {"forms": [str(g) for g in rep.forms], "degree": rep.degree,
                        "upper_estimate": rep.upper_estimate, "verified": ok}
    try:
        r, cert = reduction_number(F, opts.trials, ell=ell, bound=opts.bound, cap=opts.cap, seed=opts.seed)
        inv["reduction_number"] = {"value": r, "upper_estimate": True, "seed": opts.seed,
                                   "trial": cert.trial, "coefficients": cert.coefficients}
    except (NoReductionFound, ResourceLimit) as exc:
        inv["reduction_number"] = {"value": None, "upper_estimate": True, "seed": opts.seed,
                                   "error": type(exc).__name__}
    try:
        bt = rees_betti(P, opts.rees_steps)
    except ResourceLimit:
        bt = None
        notes.append("Rees ideal resolution exceeded its step budget: x-regularity and Cohen-Macaulay test skipped")
    parts.x_reg = x_regularity_from_table(bt) if bt is not None else None
    inv["x_regularity"] = parts.x_reg
    I = F.base_ideal()
    if F.source_is_projective_space:
        parts.rees_cm = rees_is_CM(F, P, bt) if bt is not None else None
        inv["rees_cm"] = parts.rees_cm
        regs = {}
        fvals = []
        for r in range(1, opts.r_max + 1):
            reg = regularity(ideal_betti(ideal_power(I, r)))
            regs[str(r)] = reg
            fvals.append(reg - r * F.delta)
        parts.f_values = fvals
        inv["reg_powers"] = regs
        inv["f_values"] = fvals
        inv["saturated"] = is_saturated(I)
        parts.grade = codimension(I)
        inv["grade"] = parts.grade
        if parts.grade >= 2:
            parts.b1 = first_syzygy_degree(I)
            inv["b1"] = parts.b1
        if (parts.rees_cm and F.m == F.n and parts.fiber_is_zero and verdict.birational
                and F.delta >= 2 and F.n >= 2):
            mideal = irrelevant_ideal(F.ring)
            parts.sat_ideal = saturate(I, mideal)[0]
            parts.colon_ideal = iterated_colon(I, mideal, max(F.n - 2, 0))
    else:
        inv["rees_cm"] = None
        notes.append("source is a proper subvariety: Cohen-Macaulay test and powers skipped")
    ledger = bound_ledger(F, parts)
    return {
        "map": map_json(F),
        "birational": verdict.birational,
        "inverse": inverse_json,
        "invariants": inv,
        "ledger": [e.to_json() for e in ledger],
        "notes": notes,
    }


def map_json(F: RationalMapDescriptor) -> dict:
    return {"field": F.field.text, "variables": list(F.x_vars),
            "source_ideal": [str(g) for g in F.source_ideal.generators],
            "forms": [str(f) for f in F.forms]}

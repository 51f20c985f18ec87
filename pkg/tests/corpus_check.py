"""Recompute the expected fields of a corpus entry one invariant at a time."""
from birat.analysis import (dejonquieres_test, f_function, is_saturated, plane_classification,
                            rees_is_CM)
from birat.biratio import inverse_representative, is_birational, rank_mod
from birat.corpus import get_entry
from birat.groebner import ideal_power
from birat.rees import analytic_spread, rees_ideal, special_fiber
from birat.resolve import depth_of_quotient, ideal_betti, ideal_presentation, regularity, syzygies


def _cremona(F):
    return (F.source_is_projective_space and F.m == F.n and special_fiber(F).is_zero()
            and is_birational(F).birational)


COMPUTE = {
    "birational": lambda F: is_birational(F).birational,
    "jacobian_dual_rank": lambda F: is_birational(F).rank,
    "inverse_degree": lambda F: inverse_representative(F).degree,
    "relation_type": lambda F: rees_ideal(F).relation_type,
    "rees_cm": lambda F: rees_is_CM(F),
    "saturated": lambda F: is_saturated(F.base_ideal()),
    "cremona": _cremona,
    "reg": lambda F: regularity(ideal_betti(F.base_ideal())),
    "reg_square": lambda F: regularity(ideal_betti(ideal_power(F.base_ideal(), 2))),
    "depth_square": lambda F: depth_of_quotient(ideal_betti(ideal_power(F.base_ideal(), 2)), len(F.x_vars)),
    "analytic_spread": analytic_spread,
    "f_values": lambda F: f_function(F, 2),
    "linear_syzygy_rank": lambda F: rank_mod(
        syzygies(ideal_presentation(F.base_ideal(), list(F.base_ideal().generators))), None),
    "dejonquieres": lambda F: dejonquieres_test(F.base_ideal()),
    "condition_a": lambda F: plane_classification(F, True).condition_a,
}


def check_entry(name, field=None):
    """{field: (expected, computed)} for every expected field of the entry."""
    entry = get_entry(name)
    F = entry.descriptor(field)
    return {k: (v, COMPUTE[k](F)) for k, v in entry.expected.items()}

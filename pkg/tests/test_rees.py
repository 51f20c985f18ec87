import random

import pytest

from birat.coeff import Field
from birat.corpus import get_entry, load_map
from birat.errors import InvalidDescriptor
from birat.groebner import IdealHandle, ideal_equal
from birat.polyring import bidegree_of
from birat.rees import (analytic_spread, reduction_number, rees_ideal,
                        special_fiber, x_linear_part)


def rmap(variables, forms, source=(), field="Q"):
    return load_map({"field": field, "variables": list(variables), "forms": list(forms),
                     "source_ideal": list(source)})


STD = rmap("xyz", ["y*z", "x*z", "x*y"])
VER = rmap("xy", ["x^2", "x*y", "y^2"])


def same_ideal(P, texts):
    return ideal_equal(P.J, IdealHandle(P.ambient, [P.ambient.parse(t) for t in texts]))


def test_quadratic_cremona_rees_ideal():
    P = rees_ideal(STD)
    assert same_ideal(P, ["x*Y0 - y*Y1", "z*Y2 - y*Y1"])
    assert P.relation_type == 1
    assert [b for _, b in P.min_gens] == [(1, 1), (1, 1)]


def test_veronese_rees_ideal():
    P = rees_ideal(VER)
    assert same_ideal(P, ["x*Y1 - y*Y0", "x*Y2 - y*Y1", "Y0*Y2 - Y1^2"])
    assert P.relation_type == 2
    assert len(x_linear_part(P)) == 2
    assert all(bidegree_of(g)[0] == 1 for g in x_linear_part(P))


def test_identity_rees_ideal_is_minors():
    F = rmap(["x0", "x1", "x2", "x3"], ["x0", "x1", "x2", "x3"])
    P = rees_ideal(F)
    minors = [f"x{i}*Y{j} - x{j}*Y{i}" for i in range(4) for j in range(i + 1, 4)]
    assert same_ideal(P, minors)
    assert P.relation_type == 1 and len(x_linear_part(P)) == 6


def test_koszul_relations_lie_in_rees_ideal():
    for F in (STD, VER, get_entry("gabber-n2-d3").descriptor()):
        P = rees_ideal(F)
        xy = P.ambient
        for i in range(len(F.forms)):
            for j in range(i + 1, len(F.forms)):
                rel = F.forms[i].rename(xy) * xy.var(F.y_vars[j]) - F.forms[j].rename(xy) * xy.var(F.y_vars[i])
                assert P.J.contains(rel)


def test_relation_type_invariant_under_permutation_and_scaling():
    F = get_entry("gabber-n2-d3").descriptor()
    base = rees_ideal(F).relation_type
    rng = random.Random(3)
    forms = [str(f) for f in F.forms]
    for _ in range(3):
        rng.shuffle(forms)
        scaled = [f"{rng.choice([2, -3, 5])}*({f})" for f in forms]
        G = rmap(F.x_vars, scaled)
        assert rees_ideal(G).relation_type == base


def test_special_fibers():
    assert special_fiber(STD).is_zero() and analytic_spread(STD) == 3
    b = special_fiber(VER)
    assert [str(g) for g in b.groebner().elements] == ["Y1^2 - Y0*Y2"]
    assert analytic_spread(VER) == 2
    L = rmap("xy", ["x", "y"])
    assert special_fiber(L).is_zero() and analytic_spread(L) == 2


def test_reduction_numbers():
    assert reduction_number(STD)[0] == 0
    n, cert = reduction_number(VER)
    assert n == 1 and cert.upper_estimate
    assert reduction_number(rmap("xy", ["x^3", "x^2*y"]))[0] == 0


def test_reduction_number_is_seeded():
    a = reduction_number(VER, seed=5)[1].coefficients
    b = reduction_number(VER, seed=5)[1].coefficients
    assert a == b


def test_terai_analytic_spread():
    assert analytic_spread(get_entry("terai").descriptor()) == 6


def test_subvariety_source():
    F = get_entry("conic-projection").descriptor()
    P = rees_ideal(F)
    assert P.relation_type >= 1
    assert analytic_spread(F) <= 2


@pytest.mark.parametrize("mapfile", [
    {"variables": ["x", "y"], "forms": ["x^2"]},
    {"variables": ["x", "y"], "forms": ["x^2", "y"]},
    {"variables": ["x", "y"], "forms": ["x^2 + y", "y^2"]},
    {"variables": ["x", "y"], "forms": ["x", "0"]},
    {"variables": ["x", "y"], "forms": ["x*y", "x^2"], "source_ideal": ["x"]},
    {"variables": ["x", "y"]},
])
def test_invalid_descriptors(mapfile):
    with pytest.raises(InvalidDescriptor):
        load_map(mapfile)


def test_prime_field_descriptor():
    F = rmap("xyz", ["y*z", "x*z", "x*y"], field="Fp:32003")
    assert F.field == Field(32003)
    assert rees_ideal(F).relation_type == 1
    assert STD.with_field(Field(7)).field.characteristic == 7

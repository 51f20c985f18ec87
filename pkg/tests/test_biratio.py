import random

import numpy as np
import pytest
from hypothesis import given, settings

from birat.biratio import (compose, determinant, gcd_list, inverse_representative, is_birational,
                           jacobian_dual, poly_gcd, rank_mod, verify_inverse)
from birat.corpus import corpus_names, get_entry, load_map
from birat.errors import EmptyLinearPart, LengthMismatch
from birat.groebner import exact_quotient
from birat.polyring import make_ring

from test_polyring import polys


def rmap(variables, forms, source=()):
    return load_map({"variables": list(variables), "forms": list(forms), "source_ideal": list(source)})


STD = rmap("xyz", ["y*z", "x*z", "x*y"])
VER = rmap("xy", ["x^2", "x*y", "y^2"])


def same_span(M, texts):
    # rows with linear entries span the same k-space as the given rows
    R = M[0][0].ring
    N = [[R.parse(e) for e in row] for row in texts]

    def vec(row):
        unit = [tuple(int(i == j) for j in range(R.nvars)) for i in range(R.nvars)]
        return [float(e.coefficient(u)) for e in row for u in unit]

    a = np.array([vec(r) for r in M])
    b = np.array([vec(r) for r in N])
    rk = np.linalg.matrix_rank
    return rk(a) == rk(b) == rk(np.vstack([a, b]))


def test_jacobian_dual_quadratic_cremona():
    dual = jacobian_dual(STD)
    assert dual.b.is_zero()
    assert same_span(dual.psi, [["Y0", "-Y1", "0"], ["0", "-Y1", "Y2"]])


def test_jacobian_dual_veronese():
    dual = jacobian_dual(VER)
    assert same_span(dual.psi, [["Y1", "-Y0"], ["Y2", "-Y1"]])
    assert rank_mod(dual.psi, dual.b) == 1
    assert rank_mod(dual.psi, None) == 2


def test_jacobian_dual_identity():
    F = get_entry("identity-n3").descriptor()
    dual = jacobian_dual(F)
    assert len(dual.psi) == 6 and all(len(r) == 4 for r in dual.psi)
    assert rank_mod(dual.psi, dual.b) == 3


def test_rank_mod_examples():
    dual = jacobian_dual(STD)
    assert rank_mod(dual.psi, dual.b) == 2
    R = dual.y_ring
    assert rank_mod([[R.zero()] * 3] * 2, None) == 0
    assert rank_mod([], None) == 0


def test_determinant():
    R = make_ring(["a", "b", "c", "d"])
    a, b, c, d = R.gens()
    assert determinant([[a, b], [c, d]]) == a * d - b * c
    assert determinant([[a, b], [2 * a, 2 * b]]).is_zero()
    with pytest.raises(ValueError):
        determinant([])


def test_is_birational_examples():
    v = is_birational(STD)
    assert (v.birational, v.rank, v.n) == (True, 2, 2)
    assert is_birational(rmap("xy", ["x^2", "y^2", "x*y"])).birational
    with pytest.raises(EmptyLinearPart):
        jacobian_dual(rmap("xy", ["x^2", "y^2"]))
    v = is_birational(rmap("xy", ["x^2", "y^2"]))
    assert not v.birational and v.rank == 0


def test_inverse_examples():
    rep = inverse_representative(STD)
    assert [str(g) for g in rep.forms] in (["Y1*Y2", "Y0*Y2", "Y0*Y1"], ["-Y1*Y2", "-Y0*Y2", "-Y0*Y1"])
    assert rep.degree == 2 and rep.content_removed
    F = get_entry("identity-n2").descriptor()
    rep = inverse_representative(F)
    assert rep.degree == 1 and verify_inverse(F, rep.forms)
    F = get_entry("gabber-n2-d2").descriptor()
    rep = inverse_representative(F)
    assert rep.degree == 2 and verify_inverse(F, rep.forms)


def test_compose_and_verify():
    R = STD.y_ring()
    Y0, Y1, Y2 = R.gens()
    H = compose([Y1 * Y2, Y0 * Y2, Y0 * Y1], STD)
    assert [str(h) for h in H] == ["x^2*y*z", "x*y^2*z", "x*y*z^2"]
    assert verify_inverse(STD, [Y1 * Y2, Y0 * Y2, Y0 * Y1])
    assert not verify_inverse(STD, [Y0 ** 2, Y1 ** 2, Y2 ** 2])
    assert not verify_inverse(STD, [R.zero()] * 3)
    ident = get_entry("identity-n2").descriptor()
    assert verify_inverse(ident, list(ident.y_ring().gens()))
    with pytest.raises(LengthMismatch):
        compose([Y0, Y1], STD)


def test_verify_inverse_on_subvariety():
    F = get_entry("conic-projection").descriptor()
    rep = inverse_representative(F)
    assert verify_inverse(F, rep.forms)


@pytest.mark.parametrize("name", [n for n in corpus_names() if n != "terai"])
def test_criterion_agrees_with_composition(name):
    F = get_entry(name).descriptor()
    v = is_birational(F)
    if v.birational:
        rep = inverse_representative(F)
        assert verify_inverse(F, rep.forms)
        assert rep.degree >= 1


def _shuffled(M, rng):
    rows = list(range(len(M)))
    cols = list(range(len(M[0])))
    rng.shuffle(rows)
    rng.shuffle(cols)
    return [[M[i][j] for j in cols] for i in rows]


@pytest.mark.parametrize("name", ["std-quadratic", "veronese", "gabber-n2-d3", "cubic-dejonquieres",
                                  "squares-p1", "cubes-p2", "generic-cubics"])
def test_rank_metamorphic(name):
    F = get_entry(name).descriptor()
    try:
        dual = jacobian_dual(F)
    except EmptyLinearPart:
        return
    base = rank_mod(dual.psi, dual.b)
    rng = random.Random(name)
    R = dual.y_ring
    gb = dual.b.groebner() if not dual.b.is_zero() else None
    for _ in range(3):
        M = _shuffled(dual.psi, rng)
        assert rank_mod(M, dual.b) == base
        i = rng.randrange(len(M))
        scale = R.var(R.variables[rng.randrange(R.nvars)]) + rng.randint(1, 9)
        M[i] = [e * scale for e in M[i]]
        if gb is not None:
            M[i] = [gb.reduce(e) for e in M[i]]
        assert rank_mod(M, dual.b) == base


R3 = make_ring(["x", "y", "z"])


@settings(max_examples=40, deadline=None)
@given(polys(R3, max_terms=3, max_exp=2), polys(R3, max_terms=3, max_exp=2),
       polys(R3, max_terms=3, max_exp=2))
def test_gcd_of_products(a, b, c):
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    g = poly_gcd(a * c, b * c)
    assert not g.is_zero()
    # c divides the gcd, which divides both inputs
    exact_quotient(g, c)
    exact_quotient(a * c, g)
    exact_quotient(b * c, g)


def test_gcd_examples():
    x, y, z = R3.gens()
    assert poly_gcd(x * y, x * z) == x
    assert poly_gcd(x ** 2 - y ** 2, x ** 2 + 2 * x * y + y ** 2) == x + y
    assert poly_gcd(x, R3.zero()) == x
    assert gcd_list([x * y * z, x * y, x ** 2 * y]) == x * y
    assert gcd_list([x, y]).is_constant()

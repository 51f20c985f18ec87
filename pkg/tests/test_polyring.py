import pytest
from hypothesis import given, settings, strategies as st

from birat.coeff import Field, QQ
from birat.errors import ContextMismatch, NotBihomogeneous, PolySyntaxError, UnknownVariable
from birat.polyring import (Block, GrevLex, Lex, RingContext, Weighted, bidegree_of,
                            jacobian, make_ring)

R3 = make_ring(["x", "y", "z"])
RP = make_ring(["x", "y", "z"], Field(101))
XY = make_ring(["x", "y", "z", "Y0", "Y1", "Y2"], block_split=3)

exps3 = st.tuples(*[st.integers(0, 6)] * 3)
exps5 = st.tuples(*[st.integers(0, 6)] * 5)

ORDERS5 = [
    Lex(),
    GrevLex(),
    GrevLex([1, 2, 3, 1, 2]),
    Weighted([1, 0, 2, 0, 1]),
    Weighted([0, 0, 1, 1, 0], Lex()),
    Block([[0, 1], [2, 3, 4]]),
    Block([[4], [0, 1, 2, 3]], [Lex(), GrevLex([1, 1, 2, 2])]),
]


def polys(ring, max_terms=5, max_exp=3):
    n = ring.nvars
    coeff = st.integers(-20, 20).filter(bool)
    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * n), coeff)
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((ring.monomial(e, c) for e, c in ts), ring.zero()))


def test_parse_monomial():
    R = make_ring(["x0", "x1", "x2"])
    f = R.parse("x1*x2")
    assert list(f.items()) == [((0, 1, 1), 1)]


def test_parse_two_terms():
    f = R3.parse("y^2*z - x^3")
    assert len(f) == 2 and f.total_degree() == 3


def test_parse_unknown_token():
    R = make_ring("abc")
    with pytest.raises(UnknownVariable):
        R.parse("abc")


@pytest.mark.parametrize("text, pos", [("x +* y", 3), ("x y", 2), ("(x + y", 6), ("x ^ y", 4), ("x / y", 2), ("", 0)])
def test_parse_syntax_errors(text, pos):
    with pytest.raises(PolySyntaxError) as info:
        R3.parse(text)
    assert info.value.position == pos


def test_parse_rational_and_power_forms():
    f = R3.parse("1/2*x**2 - (x - y)^2")
    assert f == R3.parse("-1/2*x^2 + 2*x*y - y^2")


def test_arithmetic_examples():
    x, y, z = R3.gens()
    assert (x + y) * (x - y) == x ** 2 - y ** 2
    assert (x + y) ** 0 == R3.one()
    assert (y * z) * (x * z) == R3.parse("x*y*z^2")


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        R3.var("x") + RP.var("x")


def test_bidegrees():
    assert bidegree_of(XY.parse("x*Y0 - y*Y1")) == (1, 1)
    assert bidegree_of(XY.parse("Y0*Y2 - Y1^2")) == (0, 2)
    with pytest.raises(NotBihomogeneous):
        bidegree_of(XY.parse("x*Y0 + Y1"))


def test_jacobian_examples():
    rows = [XY.parse("x*Y0 - y*Y1"), XY.parse("z*Y2 - y*Y1")]
    J = jacobian(rows, ["x", "y", "z"])
    expect = [["Y0", "-Y1", "0"], ["0", "-Y1", "Y2"]]
    assert [[str(e) for e in r] for r in J] == expect
    R = make_ring(["x", "y"])
    assert str(jacobian([R.parse("x^2")], ["x"])[0][0]) == "2*x"
    assert jacobian([R.parse("y")], ["x"])[0][0].is_zero()


def test_printing_is_descending_grevlex():
    assert str(R3.parse("z^3 + x*y + x^3 - 1")) == "x^3 + z^3 + x*y - 1"


@pytest.mark.parametrize("order", ORDERS5, ids=repr)
@given(a=exps5, b=exps5, c=exps5)
def test_order_laws(order, a, b, c):
    cmp = order.compare
    assert cmp(a, b) == -cmp(b, a)
    assert (cmp(a, b) == 0) == (a == b)
    if cmp(a, b) < 0 and cmp(b, c) < 0:
        assert cmp(a, c) < 0
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert cmp(ac, bc) == cmp(a, b)
    assert cmp((0,) * 5, a) <= 0


@pytest.mark.parametrize("order", ORDERS5, ids=repr)
@given(a=exps5, b=exps5)
def test_packed_codes_follow_order(order, a, b):
    coder = make_ring(["a", "b", "c", "d", "e"]).coder(order)
    ca, cb = coder.encode(a), coder.encode(b)
    assert ((ca > cb) - (ca < cb)) == order.compare(a, b)
    assert coder.exps(ca) == a


@settings(max_examples=60)
@given(polys(R3))
def test_parse_print_roundtrip(f):
    assert R3.parse(str(f)) == f


@settings(max_examples=60)
@given(polys(RP))
def test_parse_print_roundtrip_prime_field(f):
    assert RP.parse(str(f)) == f


@settings(max_examples=40)
@given(polys(R3), polys(R3))
def test_product_rule(p, q):
    Jp, Jq, Jpq = (jacobian([h], ["x", "y", "z"])[0] for h in (p, q, p * q))
    for a, b, c in zip(Jp, Jq, Jpq):
        assert c == p * b + q * a


@settings(max_examples=40)
@given(polys(R3), polys(R3), polys(R3))
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == R3.zero()


@settings(max_examples=40)
@given(polys(R3), polys(R3), st.tuples(*[st.integers(-5, 5)] * 3))
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


def test_substitution_and_rename():
    x, y, z = R3.gens()
    f = x * y - z ** 2
    g = f.substitute([y, x, x + y])
    assert g == x * y - (x + y) ** 2
    S = RingContext(QQ, ("z", "y", "x"))
    assert f.rename(S) == S.parse("x*y - z^2")


def test_ring_validation():
    with pytest.raises(ValueError):
        make_ring(["x", "x"])
    with pytest.raises(ValueError):
        make_ring(["1x"])

from fractions import Fraction

from hypothesis import given, strategies as st

from realmmp.forms import (Definiteness, definiteness, is_square, negative_arc_count,
                           perfect_power_linear, real_linear_factor_exists)
from realmmp.poly import Poly, P
from oracles import circle_samples, definiteness_oracle, negative_arc_oracle
from strategies import binary_forms, polys

ZT = ("z", "t")


def test_definiteness_examples():
    assert definiteness(P("z^2+t^2", ZT)) is Definiteness.POSITIVE_DEFINITE
    assert definiteness(P("-(z^2+t^2)^2", ZT)) is Definiteness.NEGATIVE_DEFINITE
    assert definiteness(P("z^2-t^2", ZT)) is Definiteness.INDEFINITE
    assert definiteness(P("z^2", ZT)) is Definiteness.POSITIVE_SEMIDEFINITE
    assert definiteness(P("-z^2*t^4", ZT)) is Definiteness.NEGATIVE_SEMIDEFINITE
    assert definiteness(Poly.zero(ZT)) is Definiteness.ZERO


@given(binary_forms(max_deg=8))
def test_definiteness_matches_exact_oracle(q):
    assert definiteness(q) is definiteness_oracle(q)


@given(binary_forms(max_deg=10))
def test_definiteness_never_refuted_by_sampling(q):
    cls = definiteness(q)
    values = [q.evaluate(p) for p in circle_samples(1000)]
    if cls in (Definiteness.POSITIVE_DEFINITE, Definiteness.POSITIVE_SEMIDEFINITE):
        assert all(v >= 0 for v in values)
    if cls is Definiteness.POSITIVE_DEFINITE:
        assert all(v > 0 for v in values)
    if cls in (Definiteness.NEGATIVE_DEFINITE, Definiteness.NEGATIVE_SEMIDEFINITE):
        assert all(v <= 0 for v in values)
    if cls is Definiteness.NEGATIVE_DEFINITE:
        assert all(v < 0 for v in values)


@given(binary_forms(min_deg=2, max_deg=8).filter(lambda q: q.degree() % 2 == 0))
def test_negative_arc_count_matches_oracle(q):
    assert negative_arc_count(q) == negative_arc_oracle(q)


def test_is_square_examples():
    sq = is_square(P("(z^2+t^2)^2", ZT))
    assert sq is not None and sq.c == 1 and sq.root == P("z^2+t^2", ZT)
    assert is_square(P("z^4+t^4", ZT)) is None
    neg = is_square(P("-z^2*t^2", ZT))
    assert neg is not None and neg.negative_square_over_q and neg.root == P("z*t", ZT)


@given(polys(("z", "t"), max_exp=3, max_terms=4), st.sampled_from([1, -1, 2, Fraction(-3, 4)]))
def test_is_square_recovers_root(G, c):
    if G.is_zero():
        return
    sq = is_square(G * G * c)
    assert sq is not None
    assert sq.root * sq.root * sq.c == G * G * c
    ratio = None
    for e, coeff in G.terms.items():
        r = coeff / sq.root.coefficient(e)
        assert ratio is None or r == ratio
        ratio = r


def test_perfect_power_linear_examples():
    d = perfect_power_linear(P("(z+2t)^3", ZT), 3)
    assert d is not None and d.linear == P("z+2t", ZT)
    assert perfect_power_linear(P("z^3+t^3", ZT), 3) is None
    for m in range(1, 4):
        d = perfect_power_linear(P(f"z^{2 * m + 1}", ZT), 2 * m + 1)
        assert d is not None and d.linear == P("z", ZT)


@given(st.integers(-4, 4), st.integers(1, 4), st.integers(1, 7), nonzero := st.integers(-3, 3).filter(bool))
def test_perfect_power_linear_recovers(a, b, k, c):
    L = Poly({(1, 0): b, (0, 1): a}, ZT)
    d = perfect_power_linear(L ** k * c, k)
    assert d is not None and d.linear ** k * d.c == L ** k * c


def test_real_linear_factor_examples():
    assert real_linear_factor_exists(P("z^5+z*t^4+t^5", ZT)).exists
    assert not real_linear_factor_exists(P("z^2+t^2", ZT)).exists
    rep = real_linear_factor_exists(P("z^2-2t^2", ZT))
    assert rep.exists and not rep.rational_roots
    assert any(lo <= 1 < 2 <= hi or (1 <= lo and hi <= 2) for lo, hi in rep.root_intervals)
    root2 = [iv for iv in rep.root_intervals if iv[0] >= 0]
    assert root2 and root2[0][0] ** 2 <= 2 <= root2[0][1] ** 2


@given(binary_forms(min_deg=1, max_deg=9).filter(lambda q: q.degree() % 2 == 1))
def test_odd_degree_forms_have_real_linear_factor(q):
    assert real_linear_factor_exists(q).exists

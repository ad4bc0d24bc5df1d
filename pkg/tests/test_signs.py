from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from realmmp.germ import Undecided
from realmmp.poly import Poly, P
from realmmp.signs import SignVerdict, sign_behavior
from sign_corpus import sign_corpus
from strategies import rational_points

ZT = ("z", "t")
NEG, NOT = SignVerdict.EVERYWHERE_NEGATIVE, SignVerdict.NOT_EVERYWHERE_NEGATIVE


def test_examples():
    assert sign_behavior(P("-(z^2+t^2)^2", ZT)) is NEG
    assert sign_behavior(P("z^4+t^4", ZT)) is NOT
    assert sign_behavior(P("-z^2-t^6", ZT)) is NEG


def test_recursion_cases():
    assert sign_behavior(P("-z^2+t^3", ZT)) is NOT
    assert sign_behavior(P("-z^2-t^4", ZT)) is NEG
    assert sign_behavior(P("-(z-t)^2-t^4", ZT)) is NEG
    assert sign_behavior(P("-(z-t)^2+t^5", ZT)) is NOT
    # vanishes along a real curve
    assert sign_behavior(P("-(z-t^2)^2", ZT)) is NOT
    assert sign_behavior(P("-t^2", ZT)) is NOT


def test_undecided_at_truncation_names_order():
    g = P("-z^2", ZT, truncation=4)
    with pytest.raises(Undecided) as info:
        sign_behavior(g)
    assert "undecided-at-truncation" in str(info.value)
    assert info.value.required_order is not None and info.value.required_order > 4


def test_bad_input():
    with pytest.raises(ValueError):
        sign_behavior(P("1-z^2", ZT))
    with pytest.raises(ValueError):
        sign_behavior(Poly.zero(ZT))


def _change(g, a, b, c, d):
    z, t = Poly.var("z", ZT), Poly.var("t", ZT)
    return g.substitute([z * a + t * b, z * c + t * d], ZT)


@pytest.mark.parametrize("g", sign_corpus(40, seed=7), ids=str)
@pytest.mark.parametrize("mat", [(0, 1, 1, 0), (1, 1, 0, 1), (1, 0, -2, 1), (2, 1, 1, 1)])
def test_invariant_under_unimodular_changes(g, mat):
    assert sign_behavior(_change(g, *mat)) is sign_behavior(g)


@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from([4, 6, 8]), st.integers(-3, 3))
def test_semidefinite_family(a, b, k, c):
    # -a z^2 - b t^k + c z t^(k/2) is negative iff c^2 < 4ab
    g = P(f"-{a}z^2-{b}t^{k}", ZT) + Poly({(1, k // 2): c}, ZT)
    expected = NEG if c * c < 4 * a * b else NOT
    assert sign_behavior(g) is expected


def grid_refutes(g, radius=Fraction(1, 64), count=10_000):
    """A grid point in the punctured box where g >= 0."""
    for z, t in rational_points(count, 1):
        if g.evaluate((z * radius, t * radius)) >= 0:
            return (z * radius, t * radius)
    return None


@pytest.mark.parametrize("g", sign_corpus(12, seed=3), ids=str)
def test_agrees_with_grid_sampling(g):
    witness = grid_refutes(g)
    verdict = sign_behavior(g)
    if witness is not None:
        assert verdict is NOT, witness

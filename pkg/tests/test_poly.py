from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from realmmp.poly import NotDivisibleError, ParseError, Poly, ZeroPolynomialError, parse_poly, P
from strategies import polys

V4 = ("x", "y", "z", "t")


def test_mult_at_origin_examples():
    assert P("x").mult_at_origin() == 1
    assert P("x^2+y^2+z^3+t^5", V4).mult_at_origin() == 2
    assert P("z^4+z^3*t^3").mult_at_origin() == 4


def test_mult_of_zero_raises():
    with pytest.raises(ZeroPolynomialError):
        Poly.zero(V4).mult_at_origin()


def test_mult_zero_within_truncation_raises():
    with pytest.raises(ZeroPolynomialError):
        P("z^5", ("z", "t"), truncation=4).mult_at_origin()


def test_homogeneous_part_examples():
    assert P("x^2+y^3").homogeneous_part(2) == P("x^2", ("x", "y"))
    F = P("x^2+y^2+z^3+z*t^2", V4)
    assert F.homogeneous_part(2) == P("x^2+y^2", V4)
    assert P("z^5").homogeneous_part(4).is_zero()


@given(polys())
def test_homogeneous_parts_reconstruct(F):
    if F.is_zero():
        return
    total = Poly.zero(F.variables)
    for d in range(F.degree() + 1):
        total = total + F.homogeneous_part(d)
    assert total == F


@given(polys(truncation=6))
def test_homogeneous_parts_reconstruct_truncated(F):
    total = Poly.zero(F.variables, 6)
    for d in range(6):
        total = total + F.homogeneous_part(d)
    assert total == F


def test_weighted_multiplicity_examples():
    assert P("x^2+y^2+z^2+t^3", V4).weighted_multiplicity((1, 1, 1, 1)) == 2
    for m in range(1, 5):
        F = P(f"x^2+y^2+z^{2 * m}+t^{2 * m}+z^{2 * m + 1}", V4)
        assert F.weighted_multiplicity((m, m, 1, 1)) == 2 * m
        G = P(f"x^2+y^2+z^{2 * m + 1}", V4)
        assert G.weighted_multiplicity((2 * m + 1, 2 * m + 1, 2, 1)) == 4 * m + 2


@given(polys())
def test_weighted_multiplicity_ones_is_multiplicity(F):
    if F.is_zero():
        return
    assert F.weighted_multiplicity((1, 1, 1)) == F.mult_at_origin()


def test_substitute_monomial_map_examples():
    V = ("x", "y", "t")
    F = P("x^2+y^2", V)
    G = F.substitute_monomial_map([(1, (1, 0, 1)), (1, (0, 1, 1)), (1, (0, 0, 1))])
    assert G == P("t^2*x^2+t^2*y^2", V)
    m = 5
    F = P(f"x^2+y^2+z^2+t^{m}", V4)
    G = F.substitute_monomial_map([(1, (1, 0, 0, 1)), (1, (0, 1, 0, 1)), (1, (0, 0, 1, 1)), (1, (0, 0, 0, 1))])
    assert G.exact_divide_power("t", 2) == P(f"x^2+y^2+z^2+t^{m - 2}", V4)


def test_substitute_g_into_t_chart():
    g = P("z^4+z*t^3+t^5", ("z", "t"))
    h = g.substitute_monomial_map([(1, (1, 1)), (1, (0, 1))])
    assert h == P("z^4*t^4+z*t^4+t^5", ("z", "t"))


maps = st.lists(st.tuples(st.sampled_from([1, 2, -1, Fraction(1, 2)]),
                          st.tuples(*[st.integers(0, 2)] * 3)), min_size=3, max_size=3)


@given(polys(max_exp=3, max_terms=4), polys(max_exp=3, max_terms=4), maps)
def test_substitution_is_a_ring_map(F, G, images):
    s = lambda H: H.substitute_monomial_map(images)  # noqa: E731
    assert s(F + G) == s(F) + s(G)
    assert s(F * G) == s(F) * s(G)


@given(polys(max_exp=2, max_terms=4), maps, maps)
def test_substitution_composes(F, a, b):
    # composing the maps: x_i -> a_i(x) then x -> b(x)
    def compose(a, b):
        out = []
        for ca, ea in a:
            c, e = Fraction(ca), [0, 0, 0]
            for k, power in enumerate(ea):
                cb, eb = b[k]
                c *= Fraction(cb) ** power
                for j in range(3):
                    e[j] += eb[j] * power
            out.append((c, tuple(e)))
        return out
    lhs = F.substitute_monomial_map(a).substitute_monomial_map(b)
    assert lhs == F.substitute_monomial_map(compose(a, b))


def test_exact_divide_power():
    V = ("x1", "t1")
    assert P("t1^2*x1^2", V).exact_divide_power("t1", 2) == P("x1^2", V)
    with pytest.raises(NotDivisibleError) as info:
        P("t1^2*x1^2+t1^3", V).exact_divide_power("t1", 3)
    assert "x1^2" in str(info.value)
    m = 3
    F = P(f"t1^{2 * m}*x1^2+t1^{2 * m}*y1^2+t1^{2 * m + 1}*z1", ("x1", "y1", "z1", "t1"))
    assert F.exact_divide_power("t1", 2 * m) == P("x1^2+y1^2+t1*z1", ("x1", "y1", "z1", "t1"))


@given(polys(truncation=5), polys(truncation=5))
def test_truncation_invariant_survives_arithmetic(F, G):
    for H in (F + G, F * G, F - G):
        assert H.truncation == 5
        assert all(sum(e) < 5 for e in H.terms)


def test_no_zero_coefficients_stored():
    F = P("x^2+y") - P("y", ("x", "y"))
    assert list(F.terms) == [(2, 0)]


@given(polys())
def test_text_round_trip(F):
    assert parse_poly(str(F), F.variables) == F


def test_rational_coefficients_parse():
    F = parse_poly("x^2+y^2-3/2 z t^5", V4)
    assert F.coefficient((0, 0, 1, 5)) == Fraction(-3, 2)


def test_parse_error_reports_column():
    with pytest.raises(ParseError) as info:
        parse_poly("x^2+*y", ("x", "y"))
    assert info.value.column == 5

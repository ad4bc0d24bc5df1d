from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from families import GOLDEN, random_table_germs
from realmmp.blowup import (BlowupError, BlowupWeights, blowup_curve, chart_singularity_report,
                            discrepancy_jacobian, discrepancy_weight_formula,
                            exceptional_divisor_report, reflection_free, weighted_blowup)
from realmmp.germ import classify_terminal, parse_germ
from realmmp.poly import P, Poly

X4 = ("x1", "y1", "z1", "t1")


def blow(text, w):
    return weighted_blowup(parse_germ(text)[0], w)


@pytest.mark.parametrize("label, text, w, expected", GOLDEN, ids=[g[0] for g in GOLDEN])
def test_reference_discrepancies(label, text, w, expected):
    res = blow(text, w)
    assert res.discrepancy == expected
    assert res.discrepancy_jacobian == expected


@pytest.mark.parametrize("text, w", random_table_germs(60, seed=5))
def test_two_discrepancy_routes_agree(text, w):
    germ = parse_germ(text)[0]
    assert discrepancy_jacobian(germ, w) == discrepancy_weight_formula(germ, w)


@pytest.mark.parametrize("text, w", random_table_germs(40, seed=9))
def test_chart_invariants(text, w):
    res = blow(text, w)
    for ch in res.charts:
        if ch.smooth_ambient:
            continue
        # never divisible by the chart variable
        assert ch.equation.partial_evaluate({ch.chart_variable: Fraction(0)}) != Poly.zero(ch.variables)
        for a in ch.actions:
            grades = {a.grade(e) for e in ch.equation.terms}
            assert len(grades) == 1


# reference charts, written out by hand for concrete coefficients

def chart_eq(text, w, var):
    return blow(text, w).chart(var)


@pytest.mark.parametrize("m", [4, 5, 7])
def test_golden_cA1_t_chart(m):
    ch = chart_eq(f"x^2+y^2+z^2+3*t^{m}", (1, 1, 1, 1), "t")
    assert ch.equation == P(f"x1^2+y1^2+z1^2+3*t1^{m - 2}", X4)
    assert ch.actions == ()


@pytest.mark.parametrize("n, r", [(3, 2), (5, 2), (7, 3), (7, 2)])
def test_golden_cA0n_x_chart_action(n, r):
    ch = reflection_free(chart_eq(f"0\nvars x,y,z\naction 1/{n} ({r},{n - r},1)", (r, n - r, 1), "x"))
    assert ch.smooth_ambient
    (a,) = ch.actions
    assert a.order == r and a.weights == tuple(v % r for v in (1, -n, -1))


def test_golden_cAx4_t_chart():
    ch = chart_eq("x^2+y^2+z^2+t^3\naction 1/4 (1,3,1,2)", (1, 1, 1, 1), "t")
    assert ch.equation == P("x1^2+y1^2+z1^2+t1", X4)
    (a,) = ch.actions
    assert (a.order, a.weights) == (4, (3, 1, 3, 2))


def test_golden_cA_plus_even_t_chart():
    # a x1^2 + b y1^2 + t1^{-2m} g(z1 t1, t1)
    ch = chart_eq("x^2+2*y^2+z^4-z^2*t^3+t^5", (2, 2, 1, 1), "t")
    assert ch.equation == P("x1^2+2*y1^2+z1^4-z1^2*t1+t1", X4)


def test_golden_cD_t_z_chart():
    # x1^2 + Q2(y1, z1, t1) + z1^{-4} g(y1 z1, z1^2, t1 z1) / 1/2(0,1,1,1)
    ch = chart_eq("x^2+y^2*z+z^4+t^4+y*t^3", (2, 1, 2, 1), "z")
    assert ch.equation == P("x1^2+y1^2+z1^4+t1^4+y1*t1^3", X4)
    (a,) = ch.actions
    assert (a.order, a.weights) == (2, (0, 1, 1, 1))


def test_golden_cE7_x_chart():
    ch = chart_eq("x^2+y^3+y*z^3+t^5", (3, 2, 1, 1), "x")
    assert ch.equation == P("x1+y1^3*x1+y1*z1^3+t1^5", X4)
    (a,) = ch.actions
    assert (a.order, a.weights) == (3, (1, 1, 2, 2))


def test_golden_cE6_y_chart():
    ch = chart_eq("x^2+y^3+y*z^3+z^4+t^4", (2, 2, 1, 1), "y")
    # x1^2 + y1^2 + h4 + y1 * Phi
    assert ch.equation == P("x1^2+y1^2+z1^4+t1^4+y1*z1^3", X4)
    (a,) = ch.actions
    assert (a.order, a.weights) == (2, (0, 1, 1, 1))


def test_smooth_point_gives_irreducible_divisor_and_discrepancy_two():
    res = blow("0\nvars x,y,z", (1, 1, 1))
    assert res.discrepancy == 2
    div = exceptional_divisor_report(res)
    assert div.geometrically_irreducible


@pytest.mark.parametrize("m", [4, 5, 6, 9])
def test_cA1_single_singular_point_on_t_chart(m):
    res = blow(f"x^2+y^2+z^2+t^{m}", (1, 1, 1, 1))
    found = [(ch.chart_variable, p) for ch in res.charts for p in chart_singularity_report(ch).points]
    assert len(found) == 1
    var, pt = found[0]
    assert var == "t1" and pt.classification.tag in ("cA1", "cA0")


@pytest.mark.parametrize("m", [2, 3])
def test_cA1_smooth_blowup_for_small_m(m):
    res = blow(f"x^2+y^2+z^2+t^{m}", (1, 1, 1, 1))
    assert all(chart_singularity_report(ch).smooth for ch in res.charts)


def test_cA1_half_has_a_fixed_curve():
    res = blow("x^2+y^2+z^2+t^2\naction 1/2 (1,1,1,0)", (1, 1, 1, 1))
    loci = [c for ch in res.charts for c in chart_singularity_report(ch).flags
            + chart_singularity_report(ch).fixed_curves]
    assert any("1/2(0,0,1,1)" in c for c in loci)


def test_cA_plus_even_x_chart_conjugate_quotient_points():
    res = blow("x^2+y^2+z^4+t^6", (2, 2, 1, 1))
    pts = [p for ch in res.charts for p in chart_singularity_report(ch).points if not p.real]
    assert pts and all(p.stabilizer == 2 for p in pts)
    assert "conjugate" in pts[0].note


@pytest.mark.parametrize("text", ["x^2+y^2+z^4+t^6", "x^2+y^2+z^6+t^6", "x^2+3*y^2+z^4-z^2*t^2+2*t^4"])
def test_cA_plus_even_recentred_point_stays_in_cA_family(text):
    m = int(classify_terminal(parse_germ(text)[0]).m)
    res = blow(text, (m, m, 1, 1))
    rep = chart_singularity_report(res.chart("t"))
    for p in rep.real_points():
        assert p.classification.tag.startswith("cA")


def test_weights_validation():
    with pytest.raises(BlowupError):
        BlowupWeights((1, 0, 1, 1))
    assert BlowupWeights.parse("(2,2,1,1)").weights == (2, 2, 1, 1)


@pytest.mark.parametrize("g, tag", [("x^2+y^3", "cA1"), ("x^2+y^3", "cA1"), ("x^2+y^5", "cA1"),
                                    ("x^2+y^7", "cA1"), ("x^2-y^2", "cA1"), ("x^3+y^4", "cA>1-")])
def test_curve_blowup_model(g, tag):
    cb = blowup_curve(P(g, ("x", "y")))
    V = ("s", "t", "x", "y")
    assert cb.model == P(f"s*t-({g})", V)
    assert cb.tag == tag and cb.classification.tag == tag


def test_curve_blowup_smooth_curve():
    assert blowup_curve(P("x+y^2", ("x", "y"))).smooth


def test_non_primitive_weights_rejected():
    with pytest.raises(BlowupError, match="non-primitive"):
        blow("x^2+y^2+z^2+t^3", (2, 2, 2, 2))


_scales = st.sampled_from([Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 3), Fraction(-5, 2)])


@given(st.sampled_from(GOLDEN), st.tuples(_scales, _scales, _scales, _scales))
def test_discrepancy_invariant_under_coordinate_scaling(row, scale):
    label, text, w, expected = row
    germ = parse_germ(text)[0]
    imgs = [Poly.var(v, germ.variables) * c for v, c in zip(germ.variables, scale)]
    scaled = germ.with_equation(germ.equation.substitute(imgs, germ.variables))
    res = weighted_blowup(scaled, w)
    assert res.discrepancy == expected
    for ch in res.charts:
        for a in ch.actions:
            assert len({a.grade(e) for e in ch.equation.terms}) <= 1

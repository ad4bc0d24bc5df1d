from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from corpus import ROWS
from realmmp.germ import (CyclicAction, Germ, InvariantViolation, TAGS, UnclassifiedGerm,
                          classify_terminal, index_of, merge_actions, parse_germ)
from realmmp.poly import ParseError, Poly


def classify(text):
    return classify_terminal(parse_germ(text)[0])


@pytest.mark.parametrize("tag", TAGS)
def test_row_instance_classifies_to_its_row(tag):
    cls = classify(ROWS[tag])
    assert cls.tag == tag
    assert cls.terminal


def test_corpus_covers_every_row():
    assert sorted(ROWS) == sorted(TAGS)


@pytest.mark.parametrize("text, witness", [
    ("x^2+y^3+y*z^4+t^6", "h_4 != 0"),
    ("x^2+y^3+z^3\naction 1/3 (0,1,1,2)", "f_3(0,0,1) != 0"),
    ("0\nvars x,y,z\naction 1/4 (2,2,1)", "action not of the form 1/n(r,-r,1) with (n,r)=1"),
    ("x^2+y^2\naction 1/2 (1,1,1,0)", "g != 0"),
])
def test_mutations_name_the_failed_condition(text, witness):
    cls = classify(text)
    assert not cls.terminal
    assert witness in cls.witnesses


def test_deleting_h4_from_cE6_flips_the_verdict():
    assert classify("x^2+y^3+z^4+t^4").tag == "cE6"
    assert not classify("x^2+y^3+y*z^4+t^6").terminal


def test_index():
    assert index_of(classify(ROWS["cA1"])) == 1
    assert index_of(parse_germ("0\nvars x,y,z\naction 1/5 (2,3,1)")[0]) == 5
    assert index_of(parse_germ(ROWS["cA/n"])[0]) == 3
    assert index_of(parse_germ(ROWS["cAx/4"])[0]) == 4
    assert index_of(parse_germ(ROWS["cD/3"])[0]) == 3
    with pytest.raises(UnclassifiedGerm):
        index_of(parse_germ("x^2+y^2")[0])


@pytest.mark.parametrize("text", ["-x^2-y^2+z^2+t^3", "x^2-y^2-z^2+t^5"])
def test_cA1_sign_patterns(text):
    cls = classify(text)
    assert cls.tag == "cA1"
    assert cls.pattern


def test_parse_examples():
    g, w = parse_germ("x^2+y^2+z^2+t^3  # cA1\nweights (1,1,1,1)")
    assert g.nvars == 4 and w == (1, 1, 1, 1)
    g, _ = parse_germ("0\nvars x,y,z\naction 1/3 (1,2,1)")
    assert g.is_smooth_ambient() and g.nvars == 3
    assert g.group_order() == 3


@pytest.mark.parametrize("text, line", [
    ("x^2+y^2+", 1),
    ("x^2+y^2+z^2\nvars x,y,z\naction 1/2 (1,1)", 3),
    ("x^2+y^2+z^2+t^3\nx^2", 2),
    ("# only a comment", 1),
])
def test_parse_errors_carry_positions(text, line):
    with pytest.raises(ParseError) as info:
        parse_germ(text)
    assert info.value.line == line
    assert info.value.column >= 1


def test_non_invariant_equation_names_the_monomial():
    with pytest.raises(InvariantViolation) as info:
        parse_germ("x^2+y^2+z^2+t^2+x*t\naction 1/2 (1,1,1,0)")
    assert "x*t" in str(info.value)
    assert info.value.monomial == (1, 0, 0, 1)


def test_nonzero_constant_term_rejected():
    with pytest.raises(InvariantViolation):
        parse_germ("1+x^2+y^2+z^2+t^2")


def test_merge_actions():
    a = CyclicAction(2, (1, 0, 0))
    b = CyclicAction(3, (0, 1, 0))
    merged = merge_actions([a, b], 3)
    assert merged is not None and merged.order == 6
    assert CyclicAction.from_fractions([Fraction(1, 2), Fraction(1, 3), 0]).order == 6


def _scaled(text, units):
    g, _ = parse_germ(text)
    imgs = [Poly.var(v, g.variables) * u for v, u in zip(g.variables, units)]
    return g.with_equation(g.equation.substitute(imgs, g.variables))


units = st.sampled_from([Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(5, 3)])


@pytest.mark.parametrize("tag", [t for t in TAGS if t != "cA0/n"])
@given(st.tuples(units, units, units, units))
def test_positive_scaling_keeps_the_row(tag, scale):
    # positive rescaling preserves signs, so the row is unchanged
    g = _scaled(ROWS[tag], scale)
    assert classify_terminal(g).tag == tag


@pytest.mark.parametrize("text", ["x^2+y^2+z*t+t^3", "x^2-y^2+z^2+3*z*t-t^2+z^5", "x*y+z*t+z^3"])
def test_rank_four_quadratic_part_is_cA1(text):
    cls = classify(text)
    assert cls.tag == "cA1" and cls.m == 2


def test_rank_three_with_mixed_terms_is_not_matched():
    assert not classify("x^2+y^2+z^2+2*z*t+t^2+t^3").terminal

"""Independent oracles built on sympy (tests only)."""

from fractions import Fraction

import sympy

from realmmp.forms import Definiteness
from realmmp.poly import Poly


def to_sympy(P: Poly):
    syms = sympy.symbols(" ".join(P.variables), seq=True)
    expr = sympy.Integer(0)
    for e, c in P.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr, syms


def _sign_samples(u):
    """Rational points between and beyond the real roots of a univariate sympy Poly.

    Uses sympy's continued-fraction root isolation, independent of the
    Sturm sequences in the package.
    """
    if u.degree() <= 0:
        return [], [sympy.Integer(0)]
    ivs = sorted(iv for iv, _ in u.sqf_part().intervals(eps=sympy.Rational(1, 10 ** 6)))
    if not ivs:
        return [], [sympy.Integer(0)]
    pts = [ivs[0][0] - 1]
    pts += [(a[1] + b[0]) / 2 for a, b in zip(ivs, ivs[1:])]
    pts.append(ivs[-1][1] + 1)
    return ivs, pts


def definiteness_oracle(q: Poly) -> Definiteness:
    """Sign pattern of a binary form from the real roots of q(s, 1) and the value q(1, 0)."""
    expr, (z, t) = to_sympy(q)
    if expr == 0:
        return Definiteness.ZERO
    if sympy.Poly(expr, z, t).total_degree() % 2:
        return Definiteness.INDEFINITE   # q(-v) = -q(v)
    u = sympy.Poly(expr.subs(t, 1), z)
    at_infinity = expr.subs({z: 1, t: 0})
    roots, samples = _sign_samples(u)
    has_zero = bool(roots) or at_infinity == 0
    values = [u.eval(s) if u.degree() > 0 else u.as_expr() for s in samples]
    if at_infinity != 0:
        values.append(at_infinity)
    pos, neg = any(v > 0 for v in values), any(v < 0 for v in values)
    if pos and neg:
        return Definiteness.INDEFINITE
    if pos:
        return Definiteness.POSITIVE_SEMIDEFINITE if has_zero else Definiteness.POSITIVE_DEFINITE
    return Definiteness.NEGATIVE_SEMIDEFINITE if has_zero else Definiteness.NEGATIVE_DEFINITE


def circle_samples(count):
    """Rational points on the unit circle ((1 - s^2)/(1 + s^2), 2s/(1 + s^2))."""
    pts = [(Fraction(-1), Fraction(0))]
    for k in range(count - 1):
        s = Fraction(k - (count - 1) // 2, 7)
        pts.append(((1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)))
    return pts


def negative_arc_oracle(q: Poly) -> int:
    """Arcs of RP^1 where q < 0, counted on the affine line s = z/t plus the point at infinity."""
    expr, (z, t) = to_sympy(q)
    u = sympy.Poly(expr.subs(t, 1), z)
    if u.degree() <= 0:
        # q = c t^d: negative on the single arc away from t = 0 when c < 0
        return int(bool(u.as_expr() < 0))
    roots, pts = _sign_samples(u)
    if not roots:
        return int(bool(u.eval(0) < 0))
    signs = [bool(u.eval(s) < 0) for s in pts]
    inner = sum(signs[1:-1])
    # the two unbounded intervals join through infinity unless infinity is a zero
    if expr.subs({z: 1, t: 0}) == 0:
        return inner + int(signs[0]) + int(signs[-1])
    return inner + int(signs[-1])

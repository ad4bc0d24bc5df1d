"""Binary form analyses over the rationals, exact via Sturm sequences.

Univariate polynomials are lists of Fractions, constant term first.
A binary form q(z, t) of degree d is handled through p(s) = q(s, 1)
together with its value at the direction (1, 0).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .poly import Poly


# univariate helpers


def trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def ueval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def uderiv(p):
    return trim([c * i for i, c in enumerate(p)][1:])


def udivmod(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            r[i + k] -= f * c
        r = trim(r)
    return trim(q), r


def ugcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def squarefree_part(p):
    p = trim(p)
    if len(p) <= 1:
        return p
    g = ugcd(p, uderiv(p))
    return udivmod(p, g)[0]


def sturm_sequence(p):
    p = trim(p)
    seq = [p, uderiv(p)]
    while seq[-1]:
        r = udivmod(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(seq, x):
    signs = [v for v in (ueval(s, x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq, a, b):
    """Distinct real roots in (a, b] of the squarefree head of ``seq``."""
    return _variations(seq, a) - _variations(seq, b)


def root_bound(p):
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p):
    """Disjoint rational intervals (a, b), sorted, one distinct root each.

    Endpoints are never roots, so sign samples at endpoints are safe.
    """
    sf = squarefree_part(p)
    if len(sf) <= 1:
        return []
    seq = sturm_sequence(sf)
    bound = root_bound(sf) + 1
    stack = [(-bound, bound)]
    out = []
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        step = (b - a) / 7
        while ueval(sf, mid) == 0:
            mid += step
            step /= 2
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(out)


def refine_root(p, interval, width):
    sf = squarefree_part(p)
    a, b = interval
    while b - a > width:
        mid = (a + b) / 2
        vm = ueval(sf, mid)
        if vm == 0:
            return (mid, mid)
        if (ueval(sf, a) > 0) != (vm > 0):
            b = mid
        else:
            a = mid
    return (a, b)


def rational_roots(p):
    """Exact rational roots of p (distinct), via the isolating intervals."""
    sf = squarefree_part(p)
    if len(sf) <= 1:
        return []
    # clear denominators for the rational root test
    den = 1
    for c in sf:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in sf]
    roots = []
    lead, const = abs(ints[-1]), abs(ints[0])
    if const == 0:
        roots.append(Fraction(0))
        k = 0
        while ints[k] == 0:
            k += 1
        ints = ints[k:]
        const = abs(ints[0])
    for pn in _divisors(const):
        for qd in _divisors(lead):
            for s in (1, -1):
                r = Fraction(s * pn, qd)
                if r not in roots and ueval(sf, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# binary forms


def binary_coefficients(q: Poly):
    """(d, [a_0..a_d]) with q = sum a_i v0^i v1^(d-i)."""
    if q.nvars != 2:
        raise ValueError("binary form expected")
    if q.is_zero():
        return -1, []
    if not q.is_homogeneous():
        raise ValueError(f"{q} is not homogeneous")
    d = q.degree()
    coeffs = [Fraction(0)] * (d + 1)
    for (i, j), c in q:
        coeffs[i] = c
    return d, coeffs


def binary_from_coefficients(coeffs, variables=("z", "t")) -> Poly:
    d = len(coeffs) - 1
    return Poly({(i, d - i): c for i, c in enumerate(coeffs)}, variables)


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "positive-definite"
    NEGATIVE_DEFINITE = "negative-definite"
    POSITIVE_SEMIDEFINITE = "positive-semidefinite-with-real-zero"
    NEGATIVE_SEMIDEFINITE = "negative-semidefinite-with-real-zero"
    INDEFINITE = "indefinite"
    ZERO = "identically-zero"

    def __str__(self):
        return self.value


def definiteness(q: Poly) -> Definiteness:
    """Sign behaviour of a binary form on the punctured real plane."""
    d, a = binary_coefficients(q)
    if d < 0:
        return Definiteness.ZERO
    if d % 2 == 1:
        return Definiteness.INDEFINITE
    p = trim(a)
    intervals = isolate_real_roots(p) if len(p) > 1 else []
    has_zero = bool(intervals) or a[d] == 0
    if intervals:
        pts = [intervals[0][0]] + [iv[1] for iv in intervals]
    else:
        pts = [Fraction(0)]
    values = [ueval(p, s) for s in pts]
    if a[d] != 0:
        values.append(a[d])
    pos = any(v > 0 for v in values)
    neg = any(v < 0 for v in values)
    if pos and neg:
        return Definiteness.INDEFINITE
    if pos:
        return Definiteness.POSITIVE_SEMIDEFINITE if has_zero else Definiteness.POSITIVE_DEFINITE
    return Definiteness.NEGATIVE_SEMIDEFINITE if has_zero else Definiteness.NEGATIVE_DEFINITE


def negative_arc_count(q: Poly) -> int:
    """Number of arcs of the real projective line on which q < 0.

    q must be a nonzero form of even degree (so its sign is well defined
    on lines through the origin).
    """
    d, a = binary_coefficients(q)
    if d < 0 or d % 2:
        raise ValueError("nonzero even degree form required")
    p = trim(a)
    intervals = isolate_real_roots(p) if len(p) > 1 else []
    zero_count = len(intervals) + (1 if a[d] == 0 else 0)
    if intervals:
        pts = [intervals[0][0]] + [iv[1] for iv in intervals]
    else:
        pts = [Fraction(0)]
    signs = [ueval(p, s) < 0 for s in pts]
    # the arcs left of the first root and right of the last root are one
    # arc of RP^1 unless the direction (1, 0) is a zero
    if zero_count == 0:
        return 1 if signs[0] else 0
    if a[d] != 0:
        signs = signs[:-1]
    return sum(signs)


@dataclass(frozen=True)
class SquareDecomposition:
    """F = c * root^2 with root primitive (integer coefficients, gcd 1)."""
    c: Fraction
    root: Poly
    square_over_q: bool
    negative_square_over_q: bool

    @property
    def square_over_r(self):
        return self.c > 0

    @property
    def negative_square_over_r(self):
        return self.c < 0


def is_rational_square(c: Fraction) -> bool:
    c = Fraction(c)
    if c < 0:
        return False
    return isqrt(c.numerator) ** 2 == c.numerator and isqrt(c.denominator) ** 2 == c.denominator


def rational_sqrt(c: Fraction) -> Fraction:
    if not is_rational_square(c):
        raise ValueError(f"{c} is not a rational square")
    return Fraction(isqrt(c.numerator), isqrt(c.denominator))


def primitive(G: Poly):
    """(scale, G/scale) with G/scale integral, coprime, positive leading coefficient."""
    if G.is_zero():
        return Fraction(0), G
    scale = G.content()
    if G.leading_term()[1] < 0:
        scale = -scale
    return scale, G * (1 / scale)


def is_square(F: Poly) -> SquareDecomposition | None:
    """Try to write F = c * G^2 with G over the rationals.

    Coefficient matching in lexicographic order (the polynomial square
    root algorithm), no factorisation involved.
    """
    if F.is_zero():
        return None
    if F.truncation is not None:
        raise ValueError("is_square needs an exact polynomial")
    lead_e, lead_c = F.leading_term()
    if any(k % 2 for k in lead_e):
        return None
    H = F * (1 / lead_c)
    low = min(H.terms)
    root_terms = {tuple(k // 2 for k in lead_e): Fraction(1)}
    G = Poly(root_terms, F.variables)
    lt = tuple(k // 2 for k in lead_e)
    while True:
        R = H - G * G
        if R.is_zero():
            break
        re_, rc = R.leading_term()
        new_e = tuple(a - b for a, b in zip(re_, lt))
        if any(k < 0 for k in new_e):
            return None
        if new_e >= lt:
            return None
        if tuple(2 * k for k in new_e) < low or 2 * sum(new_e) > F.degree():
            return None
        G = G + Poly({new_e: rc / 2}, F.variables)
    scale, Gp = primitive(G)
    c = lead_c * scale * scale
    return SquareDecomposition(c, Gp, is_rational_square(c), is_rational_square(-c))


def perfect_power(F: Poly, k: int):
    """Write F = c * G^k with G primitive over the rationals, or return None.

    Same lexicographic root extraction as is_square, for any k >= 1.
    """
    if F.is_zero() or k < 1:
        return None
    if F.truncation is not None:
        raise ValueError("perfect_power needs an exact polynomial")
    if k == 1:
        scale, G = primitive(F)
        return scale, G
    lead_e, lead_c = F.leading_term()
    if any(e % k for e in lead_e):
        return None
    H = F * (1 / lead_c)
    low = min(H.terms)
    lt = tuple(e // k for e in lead_e)
    G = Poly({lt: Fraction(1)}, F.variables)
    bound = F.degree()
    while True:
        R = H - G ** k
        if R.is_zero():
            break
        re_, rc = R.leading_term()
        new_e = tuple(a - (k - 1) * b for a, b in zip(re_, lt))
        if any(e < 0 for e in new_e) or new_e >= lt:
            return None
        if tuple(k * e for e in new_e) < low or k * sum(new_e) > bound:
            return None
        G = G + Poly({new_e: rc / k}, F.variables)
    scale, Gp = primitive(G)
    return lead_c * scale ** k, Gp


def power_exponent(F: Poly):
    """Largest e with F = c * G^e; returns (e, c, G)."""
    d = F.degree()
    for e in range(max(d, 1), 0, -1):
        res = perfect_power(F, e)
        if res is not None:
            return e, res[0], res[1]
    raise AssertionError("unreachable: e = 1 always works")


@dataclass(frozen=True)
class PowerDecomposition:
    """q = c * L^k with L a rational linear form (primitive)."""
    c: Fraction
    linear: Poly
    k: int


def perfect_power_linear(q: Poly, k: int) -> PowerDecomposition | None:
    """Test q = c * L^k for a linear form L.

    For rational q the slope of L is forced to be rational (it is read
    off from two top coefficients), so an irrational L never occurs and
    the answer over Q and over R coincide.
    """
    d, a = binary_coefficients(q)
    if d != k:
        raise ValueError(f"degree {d} differs from k={k}")
    z, t = q.variables
    if a[k] != 0:
        lam = a[k - 1] / (k * a[k])
        L = Poly({(1, 0): 1, (0, 1): lam}, q.variables)
        c = a[k]
    else:
        L = Poly({(0, 1): 1}, q.variables)
        c = a[0]
    if q != L ** k * c:
        return None
    scale, Lp = primitive(L)
    return PowerDecomposition(c * scale ** k, Lp, k)


@dataclass(frozen=True)
class LinearFactorReport:
    exists: bool
    t_divides: bool
    root_intervals: list = field(default_factory=list)
    rational_roots: list = field(default_factory=list)


def real_linear_factor_exists(q: Poly) -> LinearFactorReport:
    d, a = binary_coefficients(q)
    if d < 0:
        raise ValueError("nonzero form required")
    t_div = a[d] == 0
    p = trim(a)
    intervals = isolate_real_roots(p) if len(p) > 1 else []
    rats = rational_roots(p) if len(p) > 1 else []
    return LinearFactorReport(t_div or bool(intervals), t_div, intervals, rats)


def cubic_discriminant(a, b, c, d):
    """Discriminant of a*y^3 + b*y^2 + c*y + d (coefficients may be Polys)."""
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d


def ternary_cubic_has_square_factor(f3: Poly) -> bool:
    """True iff the cubic form f3 = l1^2 * l2 for linear forms (or f3 = 0).

    After a shear making the coefficient of the first variable's cube
    nonzero, f3 has a repeated linear factor iff its discriminant in that
    variable vanishes identically.
    """
    if f3.is_zero():
        return True
    if not f3.is_homogeneous() or f3.degree() != 3:
        raise ValueError("cubic form expected")
    names = f3.variables
    first = names[0]
    shear = None
    for alpha in range(8):
        for beta in range(8):
            if f3.evaluate((1, alpha, beta)[: len(names)]) != 0:
                shear = (alpha, beta)
                break
        if shear:
            break
    alpha, beta = shear
    images = {first: Poly.var(first, names)}
    others = list(names[1:])
    for v, s in zip(others, (alpha, beta)):
        images[v] = Poly.var(v, names) + Poly.var(first, names) * s
    g = f3.substitute(images)
    coeffs = [g.coefficient_poly(first, k) for k in range(4)]
    disc = cubic_discriminant(coeffs[3], coeffs[2], coeffs[1], coeffs[0])
    return disc.is_zero()

"""Seeded corpus of bivariate polynomials for the sign-behaviour checks."""

import random
from fractions import Fraction

from realmmp.poly import Poly

ZT = ("z", "t")


def _form(rng, d, sign=None):
    coeffs = [rng.randint(-4, 4) for _ in range(d + 1)]
    if not any(coeffs):
        coeffs[0] = 1
    return Poly({(i, d - i): c for i, c in enumerate(coeffs)}, ZT)


def sign_corpus(n=100, seed=20240917):
    """Mix of definite, semidefinite (needing the recursion) and random polynomials, degree <= 8."""
    rng = random.Random(seed)
    out = []
    z, t = Poly.var("z", ZT), Poly.var("t", ZT)
    while len(out) < n:
        kind = len(out) % 4
        if kind == 0:
            # negative-definite leading form plus higher terms
            d = rng.choice([2, 4, 6])
            a, b = rng.randint(1, 4), rng.randint(1, 4)
            lead = -(z ** 2 * a + t ** 2 * b) ** (d // 2)
            g = lead + _form(rng, min(d + 1, 8)) * Fraction(rng.randint(0, 1))
        elif kind == 1:
            # negative-semidefinite leading form: the answer depends on higher terms
            lam = Fraction(rng.randint(-2, 2))
            L = z - t * lam
            k = rng.choice([3, 4, 5, 6, 8])
            c = rng.choice([-3, -1, 1, 2])
            g = -(L ** 2) + t ** k * c
        elif kind == 2:
            g = -(z ** 2) * rng.randint(1, 3) - t ** rng.choice([4, 6, 8]) * rng.randint(1, 3) \
                + z * t ** rng.choice([2, 3]) * rng.randint(-3, 3)
        else:
            d = rng.randint(2, 8)
            g = _form(rng, d) + _form(rng, min(d + 1, 8)) * Fraction(rng.randint(0, 1))
        if not g.is_zero() and g.coefficient((0, 0)) == 0 and g.degree() <= 8:
            out.append(g)
    return out

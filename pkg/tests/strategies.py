from fractions import Fraction

from hypothesis import strategies as st

from realmmp.poly import Poly

small = st.integers(-5, 5)
nonzero = small.filter(bool)


def polys(variables=("x", "y", "z"), max_exp=4, max_terms=6, truncation=None):
    n = len(variables)
    exps = st.tuples(*[st.integers(0, max_exp)] * n)
    return st.dictionaries(exps, nonzero, max_size=max_terms).map(
        lambda d: Poly(d, variables, truncation))


def binary_forms(min_deg=1, max_deg=8, variables=("z", "t")):
    """Nonzero homogeneous forms in two variables."""
    @st.composite
    def build(draw):
        d = draw(st.integers(min_deg, max_deg))
        coeffs = draw(st.lists(small, min_size=d + 1, max_size=d + 1).filter(any))
        return Poly({(i, d - i): c for i, c in enumerate(coeffs)}, variables)
    return build()


def rational_points(count, bound=1):
    """Deterministic rational grid-ish points in [-bound, bound]^2 without the origin."""
    side = int(count ** 0.5) + 1
    pts = []
    for i in range(side):
        for j in range(side):
            z = Fraction(2 * bound * i, side - 1) - bound
            t = Fraction(2 * bound * j, side - 1) - bound
            if z or t:
                pts.append((z, t))
    return pts[:count]

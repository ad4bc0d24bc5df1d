"""Local sign behaviour of a function g(z, t) near the origin."""

from __future__ import annotations

import enum
from fractions import Fraction

from .forms import Definiteness, binary_coefficients, definiteness, isolate_real_roots, rational_roots, trim
from .poly import Poly


class SignVerdict(enum.Enum):
    EVERYWHERE_NEGATIVE = "everywhere-negative"
    NOT_EVERYWHERE_NEGATIVE = "not-everywhere-negative"

    def __str__(self):
        return self.value

    def __bool__(self):
        return self is SignVerdict.EVERYWHERE_NEGATIVE


def _undecided(msg, order=None):
    from .germ import Undecided
    return Undecided(msg, order)


def _known(g: Poly) -> Poly:
    return g.with_truncation(None)


def _t_chart(g: Poly, d: int, lam: Fraction) -> Poly:
    """t^{-d} g(z t, t), recentred at z = lam."""
    z, t = g.variables
    h = _known(g).substitute_monomial_map([(1, (1, 1)), (1, (0, 1))]).exact_divide_power(t, d)
    h = h.substitute([Poly({(1, 0): 1, (0, 0): lam}, g.variables), Poly.var(t, g.variables)])
    if g.truncation is not None:
        # unknown terms of g carry t-degree >= truncation - d after the chart map
        h = h.with_truncation(g.truncation - d)
    return h


def _z_chart(g: Poly, d: int) -> Poly:
    """z^{-d} g(z, z t) at the direction (1, 0)."""
    z, t = g.variables
    h = _known(g).substitute_monomial_map([(1, (1, 0)), (1, (1, 1))]).exact_divide_power(z, d)
    if g.truncation is not None:
        h = h.with_truncation(g.truncation - d)
    return h


def sign_behavior(g: Poly, depth: int | None = None) -> SignVerdict:
    """Is g < 0 on a punctured neighbourhood of the origin?

    Negative-semidefinite leading forms are resolved by recursing into
    each real zero direction through the chart t^{-d} g(z t, t) (and the
    z-chart for the direction (1, 0)). The recursion depth is bounded by
    the degree of g.
    """
    if g.nvars != 2:
        raise ValueError("g must have two variables")
    if g.is_zero():
        raise ValueError("g must be nonzero")
    if g.coefficient((0, 0)) != 0:
        raise ValueError("g(0, 0) must vanish")
    if depth is None:
        depth = g.truncation if g.truncation is not None else g.degree()
    try:
        verdict = _negative(g, depth)
    except Exception as exc:
        from .germ import Undecided
        if isinstance(exc, Undecided) and g.truncation is not None and "truncation" in str(exc):
            raise Undecided(f"undecided-at-truncation: terms of order >= {g.truncation} are needed "
                            f"(required order > {g.truncation})", g.truncation + 1) from None
        raise
    return SignVerdict.EVERYWHERE_NEGATIVE if verdict else SignVerdict.NOT_EVERYWHERE_NEGATIVE


def _negative(g: Poly, budget: int) -> bool:
    if budget < 0:
        raise _undecided("undecided-at-truncation: recursion depth exhausted")
    if g.is_zero():
        if g.truncation is None:
            return False
        raise _undecided(f"undecided-at-truncation: need terms of order >= {g.truncation}", g.truncation + 1)
    d = g.mult_at_origin()
    if g.truncation is not None and d >= g.truncation:
        raise _undecided(f"undecided-at-truncation: need order {g.truncation + 1}", g.truncation + 1)
    lead = g.homogeneous_part(d)
    cls = definiteness(lead)
    if cls is Definiteness.NEGATIVE_DEFINITE:
        return True
    if cls is not Definiteness.NEGATIVE_SEMIDEFINITE:
        return False
    _, a = binary_coefficients(lead)
    p = trim(a)
    roots = rational_roots(p) if len(p) > 1 else []
    intervals = isolate_real_roots(p) if len(p) > 1 else []
    if len(roots) < len(intervals):
        raise _undecided("needs-algebraic-extension: irrational zero direction of the leading form")
    # (chart, coordinate that vanishes along the direction's curve)
    branches = [(_t_chart(g, d, lam), 0) for lam in roots]
    if a[d] == 0:
        branches.append((_z_chart(g, d), 1))
    for h, k in branches:
        # h vanishing on the axis means g vanishes along a real curve
        axis = h.partial_evaluate({h.variables[k]: Fraction(0)})
        if axis.is_zero() and h.truncation is None:
            return False
        if not _negative(h, budget - 1):
            return False
    return True

"""Weighted blow-ups of germs: charts, lifted actions, discrepancies, reports."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .forms import (binary_coefficients, is_square, isolate_real_roots, power_exponent,
                    rational_roots, squarefree_part, trim, ugcd)
from .germ import (CyclicAction, Germ, SingularityClass, Undecided, check_semi_invariant,
                   classify_terminal, group_elements, merge_actions)
from .poly import Poly


class BlowupError(ValueError):
    pass


class JacobianInapplicable(ArithmeticError):
    """The Jacobian route cannot be used (``jacobian-method-inapplicable``)."""


class DiscrepancyMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class BlowupWeights:
    weights: tuple

    def __post_init__(self):
        w = tuple(int(a) for a in self.weights)
        if not w or any(a <= 0 for a in w):
            raise BlowupError("blow-up weights must be positive integers")
        object.__setattr__(self, "weights", w)

    @classmethod
    def parse(cls, text: str) -> BlowupWeights:
        return cls(tuple(int(p) for p in re.split(r"[,\s()]+", text.strip()) if p))

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.weights) + ")"


def next_name(v: str) -> str:
    """x -> x1, x1 -> x2."""
    m = re.fullmatch(r"([A-Za-z])(\d*)", v)
    if not m:
        return v + "1"
    return m.group(1) + str(int(m.group(2) or 0) + 1)


def _as_weights(w) -> BlowupWeights:
    return w if isinstance(w, BlowupWeights) else BlowupWeights(tuple(w))


# lattice data

@dataclass(frozen=True)
class LatticeData:
    k: int                 # w = k * v with v primitive in the extended lattice
    v: tuple               # primitive vector, Fractions
    mult: Fraction         # w-multiplicity of F (0 for smooth ambient)
    initial_form: Poly | None
    e: int                 # in_w(F) = c * H^e
    root: Poly | None      # H


def lattice_data(germ: Germ, w) -> LatticeData:
    w = _as_weights(w).weights
    if len(w) != germ.nvars:
        raise BlowupError(f"{len(w)} weights for {germ.nvars} variables")
    if gcd(*w) != 1:
        raise BlowupError(f"non-primitive weights {w}: divide by gcd {gcd(*w)}")
    elems = germ.group()
    order = len(elems)
    k = 1
    for cand in range(order, 1, -1):
        if order % cand:
            continue
        frac = tuple(Fraction(a, cand) % 1 for a in w)
        if frac in elems:
            k = cand
            break
    v = tuple(Fraction(a, k) for a in w)
    F = germ.equation
    if F.is_zero():
        return LatticeData(k, v, Fraction(0), None, 1, None)
    mu = F.weighted_multiplicity(w)
    if not F.truncation_is_safe(w, mu):
        raise Undecided(f"undecided-at-truncation: truncation {F.truncation} cannot certify "
                        f"the w-multiplicity {mu}", int(mu / min(w)) + 1)
    init = F.with_truncation(None).initial_form(w)
    e, _, H = power_exponent(init)
    return LatticeData(k, v, mu, init, e, H)


def discrepancy_weight_formula(germ: Germ, w) -> Fraction:
    """a(E, X) from the primitive vector v = w/k of the extended lattice.

    a = e * (sum(v) - 1 - wmult_v(F)), where in_w(F) = c * H^e; the
    F-term is dropped for a smooth ambient germ.
    """
    d = lattice_data(germ, w)
    return d.e * (sum(d.v) - 1 - d.mult / d.k)


# charts

@dataclass
class Chart:
    index: int
    variables: tuple
    equation: Poly                 # zero polynomial for a smooth ambient germ
    actions: tuple
    exceptional_equation: Poly     # equation restricted to u = 0; zero for smooth ambient
    cover_degree: int
    images: tuple                  # original variable -> monomial in chart variables
    source_variables: tuple

    @property
    def chart_variable(self) -> str:
        return self.variables[self.index]

    @property
    def smooth_ambient(self) -> bool:
        return self.equation.is_zero()

    def group(self):
        return group_elements(self.actions, len(self.variables))

    def germ(self) -> Germ:
        return Germ(self.equation, self.actions)

    def merged_action(self) -> CyclicAction | None:
        return merge_actions(self.actions, len(self.variables))

    def describe(self) -> str:
        s = f"{self.source_variables[self.index]}-chart: {self.equation if not self.smooth_ambient else 'A^3'}"
        for a in self.actions:
            s += f" / {a}"
        return s


def _chart(germ: Germ, w, i: int, mu) -> Chart:
    F = germ.equation
    names = germ.variables
    new = tuple(next_name(v) for v in names)
    n = len(names)
    images = []
    for j in range(n):
        e = [0] * n
        if j == i:
            e[i] = w[i]
        else:
            e[j] = 1
            e[i] = w[j]
        images.append((1, tuple(e)))
    u = new[i]
    if F.is_zero():
        Fp = Poly.zero(new)
        Eq = Poly.zero(new)
    else:
        Fp = F.substitute_monomial_map(images, new).exact_divide_power(u, int(mu))
        if Fp.is_zero():
            raise BlowupError("chart equation vanishes identically")
        if Fp.with_truncation(None) and Fp.order_in(u) > 0:
            raise BlowupError(f"chart equation divisible by {u}")
        Eq = Fp.with_truncation(None).partial_evaluate({u: Fraction(0)})
    actions = []
    if w[i] > 1:
        bw = [(-w[j]) % w[i] for j in range(n)]
        bw[i] = 1
        actions.append(CyclicAction(w[i], tuple(bw)))
    for a in germ.actions:
        b = a.fractions()
        cw = b[i] / w[i]
        fr = [(b[j] - cw * w[j]) % 1 for j in range(n)]
        fr[i] = cw % 1
        lifted = CyclicAction.from_fractions(fr)
        if not lifted.is_trivial():
            actions.append(lifted)
    check_semi_invariant(Fp, actions)
    return Chart(i, new, Fp, tuple(actions), Eq, len(group_elements(actions, n)), tuple(images), names)


@dataclass
class BlowupResult:
    germ: Germ
    weights: BlowupWeights
    charts: list
    lattice: LatticeData
    discrepancy: Fraction
    discrepancy_jacobian: Fraction | None
    jacobian_status: str

    @property
    def multiplicity(self):
        return self.lattice.mult

    def chart(self, key) -> Chart:
        if isinstance(key, int):
            return self.charts[key]
        return self.charts[self.germ.variables.index(key)]


def weighted_blowup(germ: Germ, w, check: bool = True) -> BlowupResult:
    """Blow up the germ with the given weights, chart by chart.

    Both discrepancy routes are run; a disagreement when both apply is
    a hard error.
    """
    w = _as_weights(w)
    data = lattice_data(germ, w)
    charts = [_chart(germ, w.weights, i, data.mult) for i in range(germ.nvars)]
    a = data.e * (sum(data.v) - 1 - data.mult / data.k)
    try:
        aj = _jacobian_from_charts(germ, w.weights, charts, data)
        status = "ok"
    except JacobianInapplicable as exc:
        aj, status = None, f"jacobian-method-inapplicable: {exc}"
    if check and aj is not None and aj != a:
        raise DiscrepancyMismatch(f"weight formula gives {a}, Jacobian gives {aj} for {germ} with {w}")
    return BlowupResult(germ, w, charts, data, a, aj, status)


# Jacobian route

def det(matrix):
    """Determinant of a small square matrix of Polys (Laplace expansion)."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = None
    for c in range(n):
        if matrix[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in matrix[1:]]
        term = matrix[0][c] * det(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else matrix[0][0] * 0


def _image_polys(chart: Chart):
    return [Poly({e: c}, chart.variables) for c, e in chart.images]


def _u_order_ratio(L: Poly, R: Poly, u: str):
    """Find (c, j) with L = c * u^j * R exactly, or None."""
    if L.is_zero() or R.is_zero():
        return None
    j = L.order_in(u) - R.order_in(u)
    Ls = L.exact_divide_power(u, L.order_in(u))
    Rs = R.exact_divide_power(u, R.order_in(u))
    e0, c0 = Rs.leading_term()
    c = Ls.coefficient(e0) / c0
    if c == 0 or Ls != Rs * c:
        return None
    return c, j


def _random_line(nvars, rng):
    p = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(nvars)]
    d = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(nvars)]
    if all(x == 0 for x in d):
        d[0] = Fraction(1)
    return p, d


def _restrict_to_line(P: Poly, keep, p, d):
    """Univariate coefficient list of P(p + s d) over the variables in keep."""
    s_poly = {}
    line = {}
    for idx, v in enumerate(keep):
        line[v] = Poly({(0,): p[idx], (1,): d[idx]}, ("s",))
    images = []
    for v in P.variables:
        images.append(line.get(v, Poly.zero(("s",))))
    R = P.substitute(images, ("s",))
    deg = R.degree() if R else 0
    coeffs = [R.coefficient((k,)) for k in range(deg + 1)]
    return trim(coeffs)


def _generic_smoothness(chart: Chart, seed: int = 0) -> bool:
    """Is the chart hypersurface smooth at a generic point of E_red?"""
    u = chart.chart_variable
    F = chart.equation.with_truncation(None)
    E = chart.exceptional_equation
    keep = [v for v in chart.variables if v != u]
    partials = [F.diff(v).partial_evaluate({u: Fraction(0)}) for v in chart.variables]
    rng = random.Random(seed)
    for _ in range(3):
        p, d = _random_line(len(keep), rng)
        e_line = _restrict_to_line(E, keep, p, d)
        if len(e_line) <= 1:
            continue
        sf = squarefree_part(e_line)
        g = sf
        for D in partials:
            g = ugcd(g, _restrict_to_line(D, keep, p, d)) if len(g) > 1 else g
        return len(trim(g)) <= 1
    raise JacobianInapplicable("exceptional divisor misses every sampled line")


def discrepancy_jacobian(germ: Germ, w, chart: int | None = None) -> Fraction:
    """a(E, X) from the order of the Jacobian on a covering chart.

    On the chart cover the pullback of the residue form is
    c * u^j times the chart residue form; along E_red = (G = 0) with
    E = c G^e this vanishes to order e*j, and the quotient by the
    subgroup fixing E_red pointwise (order e_r) gives (e*j + 1)/e_r - 1.
    """
    w = _as_weights(w).weights
    data = lattice_data(germ, w)
    charts = [_chart(germ, w, i, data.mult) for i in range(germ.nvars)]
    if chart is not None:
        charts = [charts[chart]]
    return _jacobian_from_charts(germ, w, charts, data)


def _jacobian_from_charts(germ, w, charts, data) -> Fraction:
    if germ.equation.truncation is not None:
        raise JacobianInapplicable("needs an exact equation")
    reasons = []
    for ch in charts:
        try:
            return _jacobian_on_chart(germ, w, ch)
        except JacobianInapplicable as exc:
            reasons.append(f"{ch.source_variables[ch.index]}-chart: {exc}")
    raise JacobianInapplicable("; ".join(reasons))


def _jacobian_on_chart(germ: Germ, w, ch: Chart) -> Fraction:
    u = ch.chart_variable
    imgs = _image_polys(ch)
    n = germ.nvars
    F = germ.equation
    if F.is_zero():
        M = [[imgs[r].diff(v) for v in ch.variables] for r in range(n)]
        J = det(M)
        if len(J) != 1:
            raise JacobianInapplicable("Jacobian is not a monomial")
        (e, _), = J.terms.items()
        if any(e[t] for t in range(n) if t != ch.index):
            raise JacobianInapplicable("Jacobian involves non-chart variables")
        j = e[ch.index]
        mult, vanishing = 1, {u}
    else:
        if not _generic_smoothness(ch):
            raise JacobianInapplicable("chart is singular along the exceptional divisor")
        Fp = ch.equation
        found = None
        for k in range(n):
            if k == ch.index:
                continue
            dFk = F.diff(F.variables[k])
            Q = Fp.diff(ch.variables[k])
            if dFk.is_zero() or Q.is_zero():
                continue
            rows = [r for r in range(n) if r != k]
            M = [[imgs[r].diff(ch.variables[c]) for c in rows] for r in rows]
            J = det(M)
            P = dFk.substitute(imgs, ch.variables)
            ratio = _u_order_ratio(J * Q, P, u)
            if ratio is None:
                continue
            found = ratio[1]
            break
        if found is None:
            raise JacobianInapplicable("no separating variable")
        j = found
        E = ch.exceptional_equation
        if E.is_zero():
            raise JacobianInapplicable("exceptional equation vanishes")
        mult, _, G = power_exponent(E)
        vanishing = {u}
        if len(G) == 1:
            (ge, _), = G.terms.items()
            if sum(ge) == 1:
                vanishing.add(ch.variables[ge.index(1)])
    fixers = 0
    idx = [t for t, v in enumerate(ch.variables) if v not in vanishing]
    for g in ch.group():
        if all(g[t] == 0 for t in idx):
            fixers += 1
    return Fraction(mult * j + 1, fixers) - 1


# exceptional divisor

@dataclass
class DivisorReport:
    equation: Poly
    multiplicity: int
    geometrically_irreducible: bool | None
    k_irreducible: bool | None
    components_over_c: int | None
    real_components: bool | None = None
    action_swaps_components: bool | None = None
    shape: str = ""
    status: str = "decided"
    components: tuple = ()


def _only_square(H: Poly, v: str):
    """H = a v^2 + Q with v absent from Q? returns (a, Q)."""
    a = H.coeff_of(**{v: 2})
    if a == 0:
        return None
    Q = H - Poly.monomial(tuple(2 if x == v else 0 for x in H.variables), a, H.variables)
    if not Q.free_of(v):
        return None
    return a, Q


def _only_product(H: Poly, u: str, v: str):
    c = H.coeff_of(**{u: 1, v: 1})
    if c == 0:
        return None
    Q = H - Poly.monomial(tuple(1 if x in (u, v) else 0 for x in H.variables), c, H.variables)
    if not Q.free_of(u, v):
        return None
    return c, Q


def _semi_grade(action: CyclicAction, P: Poly):
    grades = {action.grade(e) for e in P.terms}
    return grades.pop() if len(grades) == 1 else None


def exceptional_divisor_report(result: BlowupResult) -> DivisorReport:
    """Irreducibility of the exceptional divisor by the shape tests of the case analysis."""
    germ = result.germ
    if germ.is_smooth_ambient():
        return DivisorReport(Poly.zero(germ.variables), 1, True, True, 1, True, False, "weighted plane")
    d = result.lattice
    I, e, H = d.initial_form, d.e, d.root
    names = H.variables
    used = H.used_variables()
    if len(used) == 1 or H.degree() == 1:
        return DivisorReport(I, e, True, True, 1, True, False, "linear")
    for v in used:
        sq = _only_square(H, v)
        if sq is None:
            continue
        a, Q = sq
        if Q.is_zero():
            return DivisorReport(I, e, True, True, 1, True, False, "square")
        root = is_square(Q)
        if root is None:
            return DivisorReport(I, e, True, True, 1, None, False, "v^2 + Q")
        ratio = -root.c / a       # components v = +-sqrt(ratio) L
        real = ratio > 0
        swap = False
        for act in germ.actions:
            gv = act.grade(tuple(1 if x == v else 0 for x in names))
            gl = _semi_grade(act, root.root)
            if gl is not None and act.order % 2 == 0 and (gv - gl) % act.order == act.order // 2:
                swap = True
        comps = (f"{v} = +-sqrt({ratio})*({root.root})",)
        if swap:
            return DivisorReport(I, e, True, True, 1, real, True, "v^2 + d L^2", components=comps)
        return DivisorReport(I, e, False, not real, 2, real, False, "v^2 + d L^2", components=comps)
    for i, x in enumerate(used):
        for y in used[i + 1:]:
            pr = _only_product(H, x, y)
            if pr is None:
                continue
            c, Q = pr
            if Q.is_zero():
                return DivisorReport(I, e, False, False, 2, True, False, "uv",
                                     components=(f"{x} = 0", f"{y} = 0"))
            return DivisorReport(I, e, True, True, 1, True, False, "uv + Q")
    for v in used:
        if H.degree_in(v) == 1:
            A = H.coefficient_poly(v, 1)
            B = H.coefficient_poly(v, 0)
            rest = [x for x in used if x != v]
            if len(rest) == 2 and A and B and A.is_homogeneous() and B.is_homogeneous():
                g = _binary_gcd_degree(A.in_variables(rest), B.in_variables(rest))
                if g == 0:
                    return DivisorReport(I, e, True, True, 1, True, False, "v A + B")
                return DivisorReport(I, e, False, False, g + 1, None, False, "v A + B with common factor")
    if len(used) == 2 and H.is_homogeneous():
        deg = H.degree()
        return DivisorReport(I, e, deg <= 1, None, deg, None, None, "binary form")
    return DivisorReport(I, e, None, None, None, status="irreducibility-undecided", shape="unrecognized")


def _binary_gcd_degree(A: Poly, B: Poly) -> int:
    """Degree of gcd of two binary forms."""
    da, a = binary_coefficients(A)
    db, b = binary_coefficients(B)
    # missing top coefficients are factors of the second variable
    za = len(a) - len(trim(a))
    zb = len(b) - len(trim(b))
    g = ugcd(trim(a), trim(b))
    return (len(g) - 1) + min(za, zb)


# chart singularities

@dataclass
class ChartPoint:
    chart: str
    coordinates: tuple          # Fractions, or None entries for irrational/non-real
    kind: str                   # "singular", "fixed", "singular-fixed"
    stabilizer: int = 1              # order of the stabilizer in the chart group
    index: int = 1                   # order of its character on K
    classification: SingularityClass | None = None
    germ: Germ | None = None
    real: bool = True
    exact: bool = True
    note: str = ""


@dataclass
class ChartReport:
    points: list = field(default_factory=list)
    fixed_curves: list = field(default_factory=list)
    singular_curves: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    complete: bool = True

    @property
    def smooth(self) -> bool:
        return not (self.points or self.fixed_curves or self.singular_curves)

    def real_points(self):
        return [p for p in self.points if p.real]

    def higher_index_points(self):
        return [p for p in self.points if p.stabilizer > 1]


def _univariate(P: Poly, var: str):
    """Coefficient list of a Poly that involves only var."""
    i = P.index(var)
    deg = P.degree_in(var) if P else 0
    out = [Fraction(0)] * (max(deg, 0) + 1)
    for e, c in P.terms.items():
        if any(e[k] for k in range(len(e)) if k != i):
            raise ValueError("not univariate")
        out[e[i]] = c
    return trim(out)


def _roots_report(coeffs):
    """(rational roots, real irrational count, non-real count) of a univariate poly."""
    sf = squarefree_part(coeffs)
    if len(sf) <= 1:
        return [], 0, 0
    rats = rational_roots(sf)
    real = len(isolate_real_roots(sf))
    return rats, real - len(rats), (len(sf) - 1) - real


def _stabilizer(chart: Chart, support):
    """Group elements fixing a point whose nonzero coordinates are at ``support``."""
    return [g for g in chart.group() if all(g[t] == 0 for t in support)]


def _local_index(chart: Chart, elems) -> int:
    """Order of the character by which the stabilizer acts on the local generator of K.

    The residue form dx_{!=k} / (dF/dx_k) has weight sum(g) - grade_g(F).
    """
    F = chart.equation
    e0 = next(iter(F.terms)) if F else None
    order = 1
    for g in elems:
        chi = sum(g, Fraction(0))
        if e0 is not None:
            chi -= sum(gi * k for gi, k in zip(g, e0))
        d = (chi % 1).denominator
        order = order * d // gcd(order, d)
    return order


def _recentre(chart: Chart, point) -> Germ:
    F = chart.equation.with_truncation(None)
    images = [Poly.var(v, chart.variables) + point[t] for t, v in enumerate(chart.variables)]
    G = F.substitute(images, chart.variables)
    stab = []
    for a in chart.actions:
        if all(a.weights[t] == 0 or point[t] == 0 for t in range(len(point))):
            stab.append(a)
    # keep only the part of the group fixing the point
    elems = [g for g in chart.group() if all(g[t] == 0 or point[t] == 0 for t in range(len(point)))]
    acts = tuple(CyclicAction.from_fractions(g) for g in elems if any(g))
    merged = merge_actions(acts, len(point)) if acts else None
    return Germ(G, (merged,) if merged else ())


def reflection_orders(chart: Chart):
    """Order of the subgroup acting on coordinate t alone, per coordinate."""
    n = len(chart.variables)
    orders = [1] * n
    for g in chart.group():
        nz = [t for t in range(n) if g[t] != 0]
        if len(nz) == 1:
            orders[nz[0]] = max(orders[nz[0]], g[nz[0]].denominator)
    return orders


def reflection_free(chart: Chart) -> Chart:
    """The chart after dividing out coordinate reflections (x_t^r -> x_t).

    A reflection fixes a divisor pointwise, so it ramifies rather than
    creating singularities; the quotient is again a chart with coordinates
    x_t^r.
    """
    r = reflection_orders(chart)
    if all(k == 1 for k in r):
        return chart
    F = chart.equation
    terms = {}
    for e, c in F.terms.items():
        if any(e[t] % r[t] for t in range(len(e))):
            raise BlowupError(f"chart equation is not invariant under the reflections {r}")
        terms[tuple(e[t] // r[t] for t in range(len(e)))] = c
    G = Poly(terms, chart.variables)
    acts = []
    for a in chart.actions:
        b = CyclicAction.from_fractions([(f * r[t]) % 1 for t, f in enumerate(a.fractions())])
        if not b.is_trivial():
            acts.append(b)
    Eq = G.partial_evaluate({chart.chart_variable: Fraction(0)}) if G else G
    return Chart(chart.index, chart.variables, G, tuple(acts), Eq, len(group_elements(acts, len(r))),
                 chart.images, chart.source_variables)


def chart_singularity_report(chart: Chart, others_zero: bool = True) -> ChartReport:
    """Fixed loci and singular points of a chart over the exceptional divisor.

    With ``others_zero`` the search is restricted to points whose chart
    coordinates after the chart variable vanish, so a point seen in
    several charts is reported once (in the last chart that sees it).
    """
    rep = ChartReport()
    chart = reflection_free(chart)
    names = chart.variables
    n = len(names)
    ui = chart.index
    u = names[ui]
    F = chart.equation.with_truncation(None)
    forced = set(names[ui + 1:]) if others_zero else set()
    label = chart.source_variables[ui]
    # (a) fixed loci of group elements
    seen = set()
    for g in chart.group():
        if not any(g):
            continue
        free = tuple(t for t in range(n) if g[t] == 0)
        if free in seen:
            continue
        seen.add(free)
        zero = {names[t]: Fraction(0) for t in range(n) if t not in free}
        zero[u] = Fraction(0)
        for v in forced:
            zero.setdefault(v, Fraction(0))
        rest = [names[t] for t in free if names[t] not in zero]
        if chart.smooth_ambient:
            D = Poly.zero(names)
        else:
            D = F.partial_evaluate(zero)
        if D.is_zero():
            if rest:
                full_free = [names[t] for t in free if names[t] != u]
                rep.fixed_curves.append(f"{label}-chart: fixed locus {','.join(full_free)}-space "
                                        f"of {CyclicAction.from_fractions(g)}")
                continue
            pt = tuple(Fraction(0) for _ in range(n))
            _add_point(rep, chart, pt, "fixed")
            continue
        if not rest:
            continue
        if len(rest) == 1:
            coeffs = _univariate(D, rest[0])
            if len(coeffs) <= 1:
                continue
            rats, irr, nonreal = _roots_report(coeffs)
            k = names.index(rest[0])
            for r in rats:
                pt = tuple(r if t == k else Fraction(0) for t in range(n))
                _add_point(rep, chart, pt, "fixed")
            if irr:
                st = _stabilizer(chart, (k,))
                rep.points.append(ChartPoint(label, None, "fixed", len(st), _local_index(chart, st), real=True,
                                             exact=False, note=f"{irr} irrational real fixed points on the "
                                             f"{rest[0]}-axis: needs-algebraic-extension"))
            if nonreal:
                st = _stabilizer(chart, (k,))
                rep.points.append(ChartPoint(label, None, "fixed", len(st), _local_index(chart, st), real=False,
                                             exact=False, note=f"{nonreal} non-real fixed points on the "
                                             f"{rest[0]}-axis (conjugate pairs)"))
        else:
            # fixed locus meets the hypersurface in a curve or more
            full_free = [names[t] for t in free if names[t] != u]
            rep.fixed_curves.append(f"{label}-chart: fixed locus {','.join(full_free)}-space meets the "
                                    f"chart hypersurface in positive dimension under "
                                    f"{CyclicAction.from_fractions(g)}")
    if chart.smooth_ambient:
        return rep
    # (b) singular points on u = 0
    elim = {}
    for v in names:
        if v == u or v in forced:
            continue
        sq = _only_square(F, v)
        if sq is not None:
            elim[v] = Fraction(0)
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            if x in elim or y in elim or u in (x, y) or x in forced or y in forced:
                continue
            if _only_product(F, x, y) is not None:
                elim[x] = elim[y] = Fraction(0)
    sub = {u: Fraction(0), **elim, **{v: Fraction(0) for v in forced}}
    remaining = [v for v in names if v not in sub]
    conds = [F.partial_evaluate(sub)] + [F.diff(v).partial_evaluate(sub) for v in names]
    if len(remaining) == 0:
        if all(c.is_zero() for c in conds):
            pt = tuple(Fraction(0) for _ in range(n))
            _add_point(rep, chart, pt, "singular")
        return rep
    axes = [remaining] if len(remaining) == 1 else [[v] for v in remaining]
    if len(remaining) > 1:
        rep.complete = False
        rep.flags.append(f"{label}-chart: singular search limited to coordinate axes in "
                         f"{','.join(remaining)}")
    for axis in axes:
        var = axis[0]
        others = {v: Fraction(0) for v in remaining if v != var}
        g = None
        for c in conds:
            cc = _univariate(c.partial_evaluate(others), var) if others else _univariate(c, var)
            g = cc if g is None else ugcd(g, cc)
        g = trim(g)
        if not g:
            rep.singular_curves.append(f"{label}-chart: singular along the {var}-axis of the exceptional divisor")
            continue
        if len(g) <= 1:
            continue
        rats, irr, nonreal = _roots_report(g)
        k = names.index(var)
        for r in rats:
            pt = tuple(r if t == k else Fraction(0) for t in range(n))
            _add_point(rep, chart, pt, "singular")
        if irr:
            rep.points.append(ChartPoint(label, None, "singular", real=True, exact=False,
                                         note=f"{irr} irrational singular points on the {var}-axis: "
                                              f"needs-algebraic-extension"))
        if nonreal:
            rep.points.append(ChartPoint(label, None, "singular", real=False, exact=False,
                                         note=f"{nonreal} non-real singular points on the {var}-axis"))
    return rep


def _add_point(rep: ChartReport, chart: Chart, pt, kind):
    for p in rep.points:
        if p.coordinates == pt:
            if kind not in p.kind:
                p.kind = "singular-fixed"
            return
    elems = _stabilizer(chart, [t for t in range(len(pt)) if pt[t] != 0])
    stab, index = len(elems), _local_index(chart, elems)
    germ = cls = None
    note = ""
    if not chart.smooth_ambient:
        germ = _recentre(chart, pt)
        F = germ.equation
        if F.mult_at_origin() >= 2:
            kind = "singular" if kind == "singular" else "singular-fixed"
            try:
                cls = classify_terminal(germ)
            except Undecided as exc:
                note = str(exc)
    if stab > 1 and kind == "singular":
        kind = "singular-fixed"
    label = chart.source_variables[chart.index]
    rep.points.append(ChartPoint(label, pt, kind, stab, index, cls, germ, True, True, note))


def blowup_report(result: BlowupResult) -> dict:
    """Divisor and singularity reports for every chart."""
    return {"divisor": exceptional_divisor_report(result),
            "charts": [chart_singularity_report(c) for c in result.charts]}


# curve blow-up

@dataclass
class CurveBlowup:
    g: Poly
    smooth: bool
    model: Poly | None          # s*t - g(x, y)
    equivalent_form: Poly | None  # s^2 - t^2 - g(x, y), table-shaped
    tag: str
    classification: SingularityClass | None


def blowup_curve(g: Poly) -> CurveBlowup:
    """Local model of the blow-up of the curve (z = g(x, y) = 0) in 3-space.

    The only singular point is (s t - g(x, y) = 0), which after
    s, t -> s + t, s - t is s^2 - t^2 - g(x, y).
    """
    if g.nvars != 2:
        raise ValueError("g must be a polynomial in two variables")
    if g.coefficient((0, 0)) != 0:
        raise ValueError("g(0, 0) must vanish for the curve to pass through the origin")
    if g.is_zero():
        raise ValueError("g must be nonzero")
    mg = g.mult_at_origin()
    if mg <= 1:
        return CurveBlowup(g, True, None, None, "smooth", None)
    x, y = g.variables
    names = ("s", "t", x, y)
    s, t = Poly.var("s", names), Poly.var("t", names)
    G = g.in_variables(names) if set(g.variables) <= set(names) else g
    model = s * t - G
    table = g.rename({x: "z", y: "t"}).in_variables(("z", "t"))
    V = ("x", "y", "z", "t")
    eq = Poly.var("x", V) ** 2 - Poly.var("y", V) ** 2 - table.in_variables(V)
    cls = classify_terminal(Germ(eq))
    tag = "cA1" if mg == 2 else "cA>1-"
    return CurveBlowup(g, False, model, eq, tag, cls)

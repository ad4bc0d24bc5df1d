"""Existence and shape of g-extractions of real terminal germs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import (BlowupError, BlowupWeights, chart_singularity_report, exceptional_divisor_report,
                     weighted_blowup)
from .forms import is_square, perfect_power_linear, real_linear_factor_exists
from .germ import CyclicAction, Germ, SingularityClass, UnclassifiedGerm, Undecided, classify_terminal
from .poly import Poly

UNIQUE = "unique"
MULTIPLE = "multiple"
NONE = "none"
UNRESOLVED = "unresolved"
EXISTS = "exists"
VERDICTS = (UNIQUE, MULTIPLE, NONE, UNRESOLVED, EXISTS)

NO_OTHER = "no other g-extractions whose center contains the origin"


@dataclass
class Extraction:
    weights: tuple
    discrepancy: Fraction
    geometrically_irreducible: bool | None
    germ: Germ                      # the germ in the frame the weights refer to
    coordinate_change: str | None = None
    original_weights: tuple | None = None
    failure: str | None = None      # for witnesses: why it is not a g-extraction

    def to_dict(self):
        d = {"weights": list(self.weights), "discrepancy": str(self.discrepancy),
             "geometrically_irreducible": self.geometrically_irreducible}
        if self.coordinate_change:
            d["coordinate_change"] = self.coordinate_change
            d["frame_equation"] = str(self.germ.equation)
        if self.original_weights:
            d["original_weights"] = list(self.original_weights)
        if self.failure:
            d["failure"] = self.failure
        return d


@dataclass
class GExtractionDecision:
    verdict: str
    case: str                       # case name, e.g. "cA+ even"
    item: int | None = None         # position in the list of g-extraction shapes, 1..7
    extractions: list = field(default_factory=list)
    witness: Extraction | None = None
    reason: str = ""
    notes: list = field(default_factory=list)
    classification: SingularityClass | None = None

    @property
    def citation(self) -> str:
        s = f"case {self.case}"
        return s + (f", item {self.item}" if self.item else "")

    def to_dict(self):
        return {"verdict": self.verdict, "case_tag": self.case, "item": self.item,
                "citation": self.citation, "reason": self.reason,
                "extractions": [e.to_dict() for e in self.extractions],
                "witness": self.witness.to_dict() if self.witness else None,
                "notes": list(self.notes)}


# coordinate search and conditions

@dataclass(frozen=True)
class LinearChange:
    """z = a z' + b t', t = c z' + d t'."""
    matrix: tuple
    g: Poly                         # g in the new coordinates, same variable names
    label: str

    @property
    def is_swap(self) -> bool:
        return self.matrix == (0, 1, 1, 0)

    @property
    def is_identity(self) -> bool:
        return self.matrix == (1, 0, 0, 1)

    def describe(self, z="z", t="t") -> str:
        a, b, c, d = self.matrix

        def lin(p, q):
            parts = []
            for coef, name in ((p, z + "'"), (q, t + "'")):
                if coef:
                    parts.append(f"{coef}*{name}" if coef != 1 else name)
            return " + ".join(parts) or "0"
        return f"{z} = {lin(a, b)}, {t} = {lin(c, d)}"


def _apply_linear(g: Poly, matrix) -> Poly:
    a, b, c, d = matrix
    V = g.variables
    zi = Poly({(1, 0): Fraction(a), (0, 1): Fraction(b)}, V)
    ti = Poly({(1, 0): Fraction(c), (0, 1): Fraction(d)}, V)
    return g.substitute([zi, ti], V)


def _odd_frame_ok(g: Poly, m: int) -> bool:
    if g.coefficient((0, 2 * m + 1)) == 0:
        return False
    return all(i + 2 * j >= 4 * m + 2 for (i, j) in g.terms)


def odd_case_coordinate_search(g: Poly, m: int) -> LinearChange | None:
    """Find a linear change of (z, t) with t^{2m+1} in g and no z^i t^j, i+2j < 4m+2.

    Tried in order: identity, swap, and the change forced by the leading
    form being c * L^{2m+1} (L becomes the new t). Weights (…, 1, 2) in the
    new frame.
    """
    if g.nvars != 2:
        raise ValueError("g must be a polynomial in (z, t)")
    if g.mult_at_origin() != 2 * m + 1:
        raise ValueError(f"mult g must be {2 * m + 1}")
    g = g.with_truncation(None) if g.truncation is None or g.truncation > 4 * m + 2 else g
    candidates = [((1, 0, 0, 1), "identity"), ((0, 1, 1, 0), "swap")]
    lead = g.homogeneous_part(2 * m + 1)
    pw = perfect_power_linear(lead, 2 * m + 1)
    if pw is not None:
        alpha = pw.linear.coefficient((1, 0))
        beta = pw.linear.coefficient((0, 1))
        if alpha != 0:
            # t' = alpha z + beta t, z' = t
            mat = (-beta / alpha, 1 / alpha, 1, 0)
        else:
            mat = (1, 0, 0, 1 / beta)
        mat = tuple(Fraction(x) for x in mat)
        candidates.append((mat, "forced by the leading form"))
    for mat, label in candidates:
        h = _apply_linear(g, mat)
        if _odd_frame_ok(h, m):
            return LinearChange(tuple(Fraction(x) for x in mat), h, label)
    return None


def check_even_half_condition(g: Poly, m: int) -> bool:
    """m even and both z^{2m}, t^{2m} appear in g."""
    if g.nvars != 2:
        raise ValueError("g must be a polynomial in (z, t)")
    if m % 2:
        return False
    return g.coefficient((2 * m, 0)) != 0 and g.coefficient((0, 2 * m)) != 0


# verification

@dataclass
class VerificationReport:
    ok: bool | None                 # None: unverified
    weights: tuple
    discrepancy: Fraction | None = None
    failures: list = field(default_factory=list)
    unverified: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.ok)

    @property
    def status(self) -> str:
        return {True: "g-extraction", False: "not a g-extraction", None: "unverified"}[self.ok]


def verify_is_gextraction(germ: Germ, w) -> VerificationReport:
    """Check one weighted blow-up against the g-extraction conditions.

    (1) a unique K-irreducible exceptional divisor, (2) no fixed or
    singular curves, every real singular point classified terminal,
    (3) every real chart point of index 1.
    """
    w = w if isinstance(w, BlowupWeights) else BlowupWeights(tuple(w))
    res = weighted_blowup(germ, w)
    rep = VerificationReport(None, w.weights, res.discrepancy)
    div = exceptional_divisor_report(res)
    if div.k_irreducible is False:
        rep.failures.append(f"exceptional divisor is K-reducible ({div.components_over_c} components)")
    elif div.k_irreducible is None:
        rep.unverified.append(f"irreducibility of {div.equation} undecided")
    if div.geometrically_irreducible is False:
        rep.notes.append("exceptional divisor is geometrically reducible")
    for ch in res.charts:
        cr = chart_singularity_report(ch)
        rep.failures += cr.fixed_curves + cr.singular_curves
        if not cr.complete:
            rep.notes += cr.flags
        for p in cr.points:
            where = f"{p.chart}-chart point {_fmt_pt(p.coordinates)}"
            if not p.real:
                if p.stabilizer > 1:
                    rep.notes.append(f"{p.note}; index {p.index}, not real")
                continue
            if not p.exact:
                rep.unverified.append(f"{p.chart}-chart: {p.note}")
                continue
            if p.stabilizer > 1:
                if p.index > 1:
                    rep.failures.append(f"{where} has index {p.index}")
                else:
                    rep.failures.append(f"{where} is a Gorenstein quotient point (stabilizer of "
                                        f"order {p.stabilizer})")
            elif p.kind != "fixed":
                cls = p.classification
                if cls is None:
                    rep.unverified.append(f"{where}: {p.note or 'unclassified'}")
                elif not cls.terminal:
                    rep.unverified.append(f"{where}: not in a table normal form ({cls.witness})")
    if res.discrepancy <= 1:
        rep.notes.append(f"discrepancy {res.discrepancy} <= 1: a failing blow-up here rules out every "
                         f"g-extraction with this exceptional divisor")
    rep.ok = False if rep.failures else (None if rep.unverified else True)
    return rep


def _fmt_pt(pt):
    if pt is None:
        return "(irrational)"
    return "(" + ",".join(str(c) for c in pt) + ")"


# decision

def _extraction(germ, w, change=None, original=None) -> Extraction:
    res = weighted_blowup(germ, w)
    div = exceptional_divisor_report(res)
    return Extraction(tuple(w), res.discrepancy, div.geometrically_irreducible, germ, change, original)


def _witness(germ, w, expected: str) -> Extraction:
    """A discrepancy <= 1 blow-up that fails to be a g-extraction."""
    rep = verify_is_gextraction(germ, w)
    ex = _extraction(germ, w)
    if rep.ok is True:
        raise AssertionError(f"witness blow-up {w} of {germ} unexpectedly passes")
    if rep.discrepancy > 1:
        raise AssertionError(f"witness blow-up {w} has discrepancy {rep.discrepancy} > 1")
    ex.failure = "; ".join(rep.failures) or expected
    return ex


def _smooth_model(germ: Germ) -> Germ:
    """Drop the linear variable of a smooth hypersurface germ F = c v."""
    F = germ.equation
    if F.is_zero():
        return germ
    (e, _), = F.terms.items()
    k = e.index(1)
    keep = [i for i in range(F.nvars) if i != k]
    names = tuple(F.variables[i] for i in keep)
    acts = tuple(a.restricted(keep) for a in germ.actions)
    return Germ(Poly.zero(names), acts)


def _positions(germ: Germ, weights: dict) -> tuple:
    return tuple(weights[v] for v in germ.variables)


def g_extraction_decide(germ: Germ) -> GExtractionDecision:
    cls = classify_terminal(germ)
    if not cls.terminal:
        raise UnclassifiedGerm(f"germ is not in a terminal normal form: {cls.witness}")
    d = _decide(germ, cls)
    d.classification = cls
    return d


def _decide(germ: Germ, cls: SingularityClass) -> GExtractionDecision:
    tag = cls.tag
    V = germ.variables
    ones = (1,) * germ.nvars
    if tag == "cA0":
        sm = _smooth_model(germ) if not germ.equation.is_zero() and germ.equation.mult_at_origin() == 1 \
            and len(germ.equation) == 1 else germ
        ex = _extraction(sm, (1,) * sm.nvars)
        return GExtractionDecision(UNIQUE, "cA0", 1, [ex], notes=[
            "unique among point-centred g-extractions",
            "curve blow-ups of geometrically irreducible, real, locally planar curves form a separate "
            "family (see blowup_curve)"])
    if tag == "cA0/n":
        sm = _smooth_model(germ)
        a = sm.actions[0] if len(sm.actions) == 1 else sm.merged_action()
        n = a.order
        inv = pow(a.weights[2], -1, n)
        w = ((a.weights[0] * inv) % n, (a.weights[1] * inv) % n, 1)
        if n == 2:
            return GExtractionDecision(UNIQUE, "cA0/2", 3, [_extraction(sm, w)], notes=[NO_OTHER])
        return GExtractionDecision(NONE, "cA0/n", None, witness=_witness(sm, w, "index >= 2 chart point"),
                                   reason="the only candidate has a chart point of index >= 2")
    if tag == "cA1":
        return GExtractionDecision(UNIQUE, "cA1", None, [_extraction(germ, ones)], notes=[NO_OTHER])
    if tag == "cA1/2":
        return GExtractionDecision(NONE, "cA1/2", None, witness=_witness(germ, ones, "fixed curve"),
                                   reason="the only candidate has a curve of fixed points")
    if tag == "cA/n":
        if cls.m == 2:
            return GExtractionDecision(NONE, "cA1/n", None, witness=_witness(germ, ones, "index n point"),
                                       reason="the only candidate has a point of index n")
        return GExtractionDecision(NONE, "cA/n", None, witness=_witness(germ, ones, "two divisors"),
                                   reason="at least two geometrically irreducible divisors of discrepancy 1")
    if tag in ("cA>1-", "cA>1-/2"):
        return GExtractionDecision(NONE, "cA-" if tag == "cA>1-" else "cA-/2", None,
                                   witness=_witness(germ, ones, "two divisors"),
                                   reason="at least two geometrically irreducible divisors of discrepancy 1")
    if tag == "cAx/2":
        return GExtractionDecision(NONE, "cAx/2", None, witness=_witness(germ, ones, "fixed curve"),
                                   reason="the (1,1,1,1) blow-up has a curve of fixed points")
    if tag == "cAx/4":
        return GExtractionDecision(NONE, "cAx/4", None, witness=_witness(germ, ones, "index 4 point"),
                                   reason="the (1,1,1,1) blow-up has a point of index 4")
    if tag == "cD4":
        return GExtractionDecision(NONE, "cD4", None, witness=_witness(germ, (2, 1, 1, 1), "index 2 point"),
                                   reason="over the reals f_3 always has a real linear factor",
                                   notes=["cD points have no g-extractions over the reals"])
    if tag == "cD>4":
        return GExtractionDecision(NONE, "cD>4", None, witness=_witness(germ, (2, 1, 2, 1), "index 2 point"),
                                   reason="the (2,1,2,1) blow-up has a point of index 2",
                                   notes=["cD points have no g-extractions over the reals"])
    if tag == "cD/2":
        return GExtractionDecision(NONE, "cD/2", None, witness=_witness(germ, (2, 1, 2, 1), "singular curve"),
                                   reason="the (2,1,2,1) blow-up is singular along a curve")
    if tag == "cD/3":
        return GExtractionDecision(NONE, "cD/3", None, witness=_witness(germ, (2, 1, 1, 1), "index 6 point"),
                                   reason="the (2,1,1,1) blow-up has a point of index 6")
    if tag == "cE/2":
        return GExtractionDecision(NONE, "cE/2", None, witness=_witness(germ, (2, 2, 1, 1), "index 2 point"),
                                   reason="the (2,2,1,1) blow-up has a point of index 2")
    if tag == "cE7":
        return GExtractionDecision(NONE, "cE7", None, witness=_witness(germ, (3, 2, 1, 1), "index 3 point"),
                                   reason="the (3,2,1,1) blow-up has a point of index 3")
    if tag == "cE8":
        return _decide_cE8(germ, cls)
    if tag == "cE6":
        return _decide_cE6(germ, cls)
    if tag == "cA>1+":
        return _decide_plus(germ, cls)
    if tag == "cA>1+/2":
        return _decide_plus_half(germ, cls)
    raise UnclassifiedGerm(f"no decision rule for {tag}")


def _decide_cE6(germ, cls) -> GExtractionDecision:
    h4 = cls.parts["h"].homogeneous_part(4)
    w = (2, 2, 1, 1)
    sq = is_square(h4)
    if sq is None:
        return GExtractionDecision(NONE, "cE6", None, witness=_witness(germ, w, "index 2 point"),
                                   reason="h_4 is not a square: the (2,2,1,1) blow-up has an index 2 point")
    if sq.c < 0:
        return GExtractionDecision(NONE, "cE6", None, witness=_witness(germ, w, "two divisors"),
                                   reason="-h_4 is a square: two divisors of discrepancy 1")
    if real_linear_factor_exists(sq.root).exists:
        return GExtractionDecision(NONE, "cE6 with h_4 a square", None,
                                   witness=_witness(germ, w, "index 2 point"),
                                   reason="h_4 is divisible by the square of a real linear form")
    return GExtractionDecision(EXISTS, "cE6 last case", None, witness=None,
                               reason="h_4 = c Q_2^2 with Q_2 definite and -c not a square",
                               notes=["a g-extraction exists; its exceptional divisor is geometrically "
                                      "reducible (toric construction not re-derived)",
                                      "X(R) is homeomorphic to R^3 near the point"])


def _decide_cE8(germ, cls) -> GExtractionDecision:
    """h_5 has a real linear factor; with a rational one, make it z and use (3,2,2,1)."""
    V = germ.variables
    z, t = V[2], V[3]
    h5 = cls.parts["h"].homogeneous_part(5)
    rep = real_linear_factor_exists(h5)
    reason = "over the reals h_5 has a real linear factor"
    F = germ.equation
    change = None
    if h5.coefficient((0, 5)) == 0:
        mat = None                           # z already divides h_5
    elif rep.t_divides:
        mat = "swap"
    elif rep.rational_roots:
        mat = rep.rational_roots[0]
    else:
        return GExtractionDecision(NONE, "cE8", None, reason=reason,
                                   notes=["the real linear factor of h_5 is irrational: "
                                          "needs-algebraic-extension for an explicit witness"])
    if mat == "swap":
        imgs = [Poly.var(v, V) for v in V]
        imgs[2], imgs[3] = imgs[3], imgs[2]
        F = F.substitute(imgs, V)
        change = f"{z} <-> {t}"
    elif mat is not None:
        lam = Fraction(mat)
        imgs = [Poly.var(v, V) for v in V]
        imgs[2] = Poly.var(z, V) + Poly.var(t, V) * lam
        F = F.substitute(imgs, V)
        change = f"{z} = {z}' + {lam}*{t}'"
    frame = Germ(F, germ.actions)
    wit = _witness(frame, (3, 2, 2, 1), "index 2 point")
    wit.coordinate_change = change
    return GExtractionDecision(NONE, "cE8", None, witness=wit, reason=reason,
                               notes=["handled as the common linear factor case"])


def _plus_frame(germ, cls):
    V = germ.variables
    a, b, g = cls.parts["a"], cls.parts["b"], cls.parts["g"]
    return V, a, b, g


def _decide_plus(germ, cls) -> GExtractionDecision:
    V, a, b, g = _plus_frame(germ, cls)
    mg = cls.parts["mult_g"]
    if mg % 2 == 0:
        m = mg // 2
        return GExtractionDecision(UNIQUE, "cA+ even", 4, [_extraction(germ, (m, m, 1, 1))], notes=[NO_OTHER])
    m = mg // 2
    exs = [_extraction(germ, (m, m, 1, 1))]
    notes = [f"({m},{m},1,1): discrepancy 1, exceptional divisor K-irreducible but geometrically reducible"]
    change = odd_case_coordinate_search(g, m)
    if change is not None:
        x, y = V[0], V[1]
        Vg = g.variables
        F = (Poly.var(x, V) ** 2 * a + Poly.var(y, V) ** 2 * b
             + change.g.in_variables(V))
        frame = Germ(F)
        w = (2 * m + 1, 2 * m + 1, 1, 2)
        original = (2 * m + 1, 2 * m + 1, 2, 1) if change.is_swap else (w if change.is_identity else None)
        desc = None if change.is_identity else change.describe(*Vg)
        exs.append(_extraction(frame, w, desc, original))
        notes.append(f"({2 * m + 1},{2 * m + 1},1,2) in the frame {change.label}: discrepancy 2, "
                     f"geometrically irreducible")
    else:
        notes.append("no linear change puts g in the odd frame; only the discrepancy 1 extraction")
    verdict = MULTIPLE if len(exs) > 1 else UNIQUE
    return GExtractionDecision(verdict, "cA+ odd", 5, exs, notes=notes)


def _decide_plus_half(germ, cls) -> GExtractionDecision:
    V, a, b, g = _plus_frame(germ, cls)
    mg = cls.parts["mult_g"]
    zr, tr = cls.roles["z"], cls.roles["t"]     # zr has weight 1 under the action
    if mg % 2 == 0:
        m = mg // 2
        # the condition is symmetric in z and t
        w = (m, m, 1, 1)
        if check_even_half_condition(g, m):
            return GExtractionDecision(UNIQUE, "cA+/2 even", 6, [_extraction(germ, w)], notes=[NO_OTHER])
        why = "m is odd" if m % 2 else "z^{2m} or t^{2m} is missing from g"
        return GExtractionDecision(NONE, "cA+/2 even", 6, witness=_witness(germ, w, "index or fixed locus"),
                                   reason=f"the (m,m,1,1) blow-up fails: {why}")
    m = mg // 2
    # Z has weight 0, T weight 1; g is even in T
    Zi, Ti = g.variables.index(tr), g.variables.index(zr)
    wm = min(2 * e[Zi] + e[Ti] for e in g.terms)
    r = (wm - 2 * m) // 2
    weights = {V[0]: m + r, V[1]: m + r, tr: 2, zr: 1}
    w = _positions(germ, weights)
    if (m + r) % 2 == 0:
        return GExtractionDecision(UNRESOLVED, "cA+/2 odd", 7,
                                   reason=f"m + r = {m + r} is even: not settled by the case analysis",
                                   notes=[f"m = {m}, r = {r}"])

    def coeff(i, j):
        e = [0, 0]
        e[Zi], e[Ti] = i, j
        return g.coefficient(tuple(e))
    if r == m + 1 and coeff(2 * m + 1, 0) != 0 and coeff(0, 4 * m + 2) != 0:
        return GExtractionDecision(UNIQUE, "cA+/2 odd", 7, [_extraction(germ, w)],
                                   notes=[f"m = {m}, r = {r}: discrepancy 1/2"])
    return GExtractionDecision(NONE, "cA+/2 odd", 7, witness=_witness(germ, w, "index 2 point"),
                               reason=f"m = {m}, r = {r}: the (m+r,m+r,2,1) blow-up has an index 2 point")

"""Topology of real points along a sequence of blow-ups.

The ledger is formal: it records connected-sum operations relative to an
opaque base manifold and never tries to decide homeomorphy.
"""

from __future__ import annotations

import copy
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import BlowupWeights, _as_weights, blowup_curve, chart_singularity_report, weighted_blowup
from .forms import (Definiteness, binary_coefficients, definiteness, isolate_real_roots,
                    negative_arc_count, trim, ueval)
from .germ import Germ, Undecided, classify_terminal, parse_germ
from .gextract import MULTIPLE, UNIQUE, g_extraction_decide
from .poly import Poly
from .signs import sign_behavior

SPHERE = "Sphere"
RP2 = "RP2"
TORUS = "Torus"
KLEIN = "KleinBottle"
P2 = "P2-complex"
SPHERES = "SphereList"
CIRCLE = "OneComplex"
POINTS = "Points"

ONE_SIDED, TWO_SIDED, NA = "one-sided", "two-sided", "n/a"

SUMMANDS = ("RP3", "S1xS2", "S1twistS2")

# conditions that fail in the presence of the surface; named for what they forbid
NO_TWO_SIDED_RP2 = "no-two-sided-rp2"
NO_ONE_SIDED_TORUS = "no-one-sided-torus"
NO_ONE_SIDED_KLEIN = "no-one-sided-klein-bottle-with-nonorientable-neighborhood"

# (base, sidedness) -> does the ambient 3-manifold have to be nonorientable?
ADMISSIBLE = {
    (SPHERE, TWO_SIDED): False,
    (RP2, ONE_SIDED): False,
    (RP2, TWO_SIDED): True,
    (TORUS, TWO_SIDED): False,
    (TORUS, ONE_SIDED): True,
    (KLEIN, TWO_SIDED): True,
    (KLEIN, ONE_SIDED): False,
    (P2, ONE_SIDED): False,
    (SPHERES, TWO_SIDED): False,
    (CIRCLE, NA): False,
    (POINTS, NA): False,
}


class TopologyError(ValueError):
    pass


class GatingError(TopologyError):
    """An operation the orientability assumptions forbid."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition


class BoundaryCase(TopologyError):
    """Semidefinite data where the exceptional surface is not of a listed type."""


@dataclass(frozen=True)
class SurfaceType:
    base: str
    sidedness: str
    neighborhood_orientable: bool = True
    count: int = 1

    def __post_init__(self):
        if (self.base, self.sidedness) not in ADMISSIBLE:
            raise TopologyError(f"{self.sidedness} {self.base} is not an admissible surface")
        if self.base == KLEIN and self.sidedness == ONE_SIDED:
            return
        if not self.neighborhood_orientable and self.base not in (RP2, P2, TORUS, KLEIN):
            raise TopologyError(f"{self.base} always has an orientable neighborhood")

    @property
    def forces_nonorientable(self) -> bool:
        if self.base == KLEIN and self.sidedness == ONE_SIDED:
            return not self.neighborhood_orientable
        return ADMISSIBLE[(self.base, self.sidedness)]

    @property
    def violated_condition(self) -> str | None:
        if self.base == RP2 and self.sidedness == TWO_SIDED:
            return NO_TWO_SIDED_RP2
        if self.base == TORUS and self.sidedness == ONE_SIDED:
            return NO_ONE_SIDED_TORUS
        if self.base == KLEIN and self.sidedness == ONE_SIDED and not self.neighborhood_orientable:
            return NO_ONE_SIDED_KLEIN
        return None

    def __str__(self):
        if self.base in (SPHERES, POINTS):
            return f"{self.base}({self.count})"
        if self.sidedness == NA:
            return self.base
        s = f"{self.sidedness} {self.base}"
        if not self.neighborhood_orientable:
            s += " (nonorientable neighborhood)"
        return s


@dataclass
class RealSurface:
    """E(R) as a list of pieces; empty means E has no real points."""
    parts: tuple = ()
    boundary_case: bool = False
    note: str = ""

    @property
    def empty(self) -> bool:
        return not self.parts

    def __str__(self):
        if self.empty:
            return "empty" + (f" ({self.note})" if self.note else "")
        return " + ".join(str(p) for p in self.parts)


def _sphere_list(k: int) -> SurfaceType:
    return SurfaceType(SPHERES, TWO_SIDED, True, k)


def _bounded_negative_intervals(coeffs) -> int:
    """Number of bounded open intervals of R on which the polynomial is negative."""
    p = trim(coeffs)
    if len(p) <= 1:
        return 0
    ivs = isolate_real_roots(p)
    # one sample between consecutive roots; the isolating intervals are disjoint
    count = 0
    for a, b in zip(ivs, ivs[1:]):
        s = (a[1] + b[0]) / 2 if a[1] < b[0] else a[1]
        if ueval(p, s) < 0:
            count += 1
    return count


def _square_pair(I: Poly, weights):
    """Two equal-weight variables entering I only as same-sign squares."""
    names = I.variables
    n = len(names)
    cands = []
    for i in range(n):
        terms = [(e, c) for e, c in I.terms.items() if e[i]]
        if len(terms) == 1 and terms[0][0][i] == 2 and sum(terms[0][0]) == 2:
            cands.append((i, terms[0][1]))
    for a in range(len(cands)):
        for b in range(a + 1, len(cands)):
            (i, ci), (j, cj) = cands[a], cands[b]
            if weights[i] == weights[j] and (ci > 0) == (cj > 0):
                return i, j, ci, cj
    return None


def _e_form(germ: Germ, weights):
    """Normalize the weighted initial form to c(x^2 + y^2 + p(z, t)) shape.

    Returns (i, j, rest_indices, p) with p in the two remaining
    variables, sign fixed so the squares are positive.
    """
    I = germ.equation.with_truncation(None).initial_form(tuple(weights))
    pair = _square_pair(I, weights)
    if pair is None:
        return None
    i, j, ci, _ = pair
    if ci < 0:
        I = -I
    rest = [k for k in range(germ.nvars) if k not in (i, j)]
    names = I.variables
    p = I
    for k in (i, j):
        p = p - Poly.monomial(tuple(2 if s == k else 0 for s in range(len(names))), I.coefficient(
            tuple(2 if s == k else 0 for s in range(len(names)))), names)
    p = p.in_variables(tuple(names[k] for k in rest))
    return i, j, rest, p


def exceptional_real_surface(germ: Germ, weights) -> RealSurface:
    """Type of E(R) for the blow-up of the germ with the given weights.

    Covered: point blow-ups of smooth points and of cA0/2, and
    E = (x^2 + y^2 + p(z, t) = 0) in P(r, r, 1, 1), P(r, r, 2, 1) and its
    quotient by 1/2(1,1,1,0).
    """
    w = _as_weights(weights).weights
    F = germ.equation
    if F.is_zero() or F.mult_at_origin() == 1:
        if len(set(w)) == 1 or F.is_zero():
            return RealSurface((SurfaceType(P2, ONE_SIDED),))
        raise TopologyError(f"unsupported weights {w} for a smooth point")
    form = _e_form(germ, w)
    if form is None:
        raise TopologyError(f"exceptional divisor is not of x^2+y^2+p shape for weights {w}")
    i, j, rest, p = form
    wz, wt = (w[k] for k in rest)
    quotient = bool(germ.actions)
    if wz == wt:
        return _equal_weight_surface(p, quotient)
    if {wz, wt} == {1, 2}:
        if quotient:
            raise TopologyError("quotient of the P(r,r,2,1) divisor is not covered")
        # put the weight-2 variable first
        z, t = p.variables if wz == 2 else p.variables[::-1]
        return _odd_weight_surface(p.in_variables((z, t)), w[i])
    raise TopologyError(f"unsupported weights {w}")


def _equal_weight_surface(p: Poly, quotient: bool) -> RealSurface:
    cls = definiteness(p)
    if cls is Definiteness.ZERO:
        return RealSurface((SurfaceType(CIRCLE, NA),), note="E(R) is the circle x = y = 0")
    if cls is Definiteness.POSITIVE_DEFINITE:
        return RealSurface(note="p positive-definite")
    if cls is Definiteness.NEGATIVE_DEFINITE:
        if quotient:
            return RealSurface((SurfaceType(KLEIN, ONE_SIDED, False),))
        return RealSurface((SurfaceType(TORUS, ONE_SIDED, False),))
    if cls is Definiteness.POSITIVE_SEMIDEFINITE:
        _, a = binary_coefficients(p)
        zeros = len(isolate_real_roots(trim(a))) if len(trim(a)) > 1 else 0
        zeros += 1 if a[-1] == 0 else 0
        return RealSurface((SurfaceType(POINTS, NA, True, zeros),), boundary_case=True,
                           note="p positive-semidefinite: E(R) is finite")
    if cls is Definiteness.NEGATIVE_SEMIDEFINITE:
        raise BoundaryCase("boundary-case: p negative-semidefinite with real zeros; "
                           "recurse into the zero directions first")
    if quotient:
        raise TopologyError("quotient of an indefinite divisor is not covered")
    return RealSurface((_sphere_list(negative_arc_count(p)),))


def _odd_weight_surface(p: Poly, r: int) -> RealSurface:
    """E = (x^2+y^2+p(z,t)=0) in P(r,r,2,1) with r odd and z^r in p."""
    z, t = p.variables
    if r % 2 == 0 or p.coefficient((r, 0)) == 0:
        raise TopologyError("P(r,r,2,1) divisor needs r odd and z^r present")
    # p(z, 1) as a univariate polynomial in z
    coeffs = [Fraction(0)] * (r + 1)
    for (a, b), c in p.terms.items():
        coeffs[a] += c
    if p.coefficient((r, 0)) < 0:
        coeffs = [-c for c in coeffs]
    parts = [SurfaceType(RP2, ONE_SIDED)]
    k = _bounded_negative_intervals(coeffs)
    if k:
        parts.append(_sphere_list(k))
    return RealSurface(tuple(parts))


# ledger

@dataclass
class Component:
    summands: dict = field(default_factory=lambda: {s: 0 for s in SUMMANDS})
    isolated_points: int = 0

    def total(self):
        return dict(self.summands)


@dataclass
class SummandLedger:
    components: list = field(default_factory=lambda: [Component()])
    orientable: bool = False
    history: list = field(default_factory=list)
    pending_arcs: int = 0

    def copy(self) -> SummandLedger:
        return copy.deepcopy(self)

    def totals(self) -> dict:
        out = {s: 0 for s in SUMMANDS}
        for c in self.components:
            for s in SUMMANDS:
                out[s] += c.summands[s]
        return out

    @property
    def isolated_points(self) -> int:
        return sum(c.isolated_points for c in self.components)

    def delta(self, before: SummandLedger) -> dict:
        """Nonzero changes of the summand totals since ``before``."""
        a, b = before.totals(), self.totals()
        d = {s: b[s] - a[s] for s in SUMMANDS if b[s] != a[s]}
        di = self.isolated_points - before.isolated_points
        if di:
            d["isolated_points"] = di
        return d

    def to_dict(self):
        return {"components": [{"summands": dict(c.summands), "isolated_points": c.isolated_points}
                               for c in self.components],
                "orientable": self.orientable, "pending_arcs": self.pending_arcs,
                "history": [" ".join(str(x) for x in h if not isinstance(x, tuple)) for h in self.history]}

    def __str__(self):
        bits = []
        for k, c in enumerate(self.components):
            terms = [f"{c.summands[s]} {s}" for s in SUMMANDS if c.summands[s]]
            pts = f", {c.isolated_points} isolated" if c.isolated_points else ""
            bits.append(f"[{k}] M{k}" + "".join(f" # {t}" for t in terms) + pts)
        return "; ".join(bits)


OPS = ("remove-isolated-point", "add-isolated-point", "add-component", "connect-components",
       "sum-S1xS2", "sum-S1twistS2", "sum-RP3", "event")


def _component(ledger, i):
    if not isinstance(i, int) or not 0 <= i < len(ledger.components):
        raise TopologyError(f"component index {i} out of range")
    return ledger.components[i]


def ledger_apply(ledger: SummandLedger, step) -> SummandLedger:
    """Apply one operation; the input ledger is left untouched.

    ``step`` is a tuple (op, *args). Component arguments default to 0.
    """
    op, *args = step
    if op not in OPS:
        raise TopologyError(f"unknown ledger operation {op!r}")
    new = ledger.copy()
    if op == "remove-isolated-point":
        c = _component(new, args[0] if args else 0)
        if c.isolated_points <= 0:
            raise TopologyError("no isolated point to remove")
        c.isolated_points -= 1
    elif op == "add-isolated-point":
        _component(new, args[0] if args else 0).isolated_points += 1
    elif op == "add-component":
        new.components.append(Component())
    elif op == "connect-components":
        i, j = args
        a, b = _component(new, i), _component(new, j)
        if i == j:
            raise TopologyError("connect-components needs two distinct components")
        absorbed = (dict(b.summands), b.isolated_points)
        for s in SUMMANDS:
            a.summands[s] += b.summands[s]
        a.isolated_points += b.isolated_points
        lo, hi = min(i, j), max(i, j)
        if i != lo:
            new.components[lo] = a
        del new.components[hi]
        new.history.append((op, i, j, absorbed))
        return new
    elif op == "event":
        condition = args[0] if args else None
        if condition and new.orientable:
            raise GatingError(condition, "the orientable flag excludes this surface")
    else:
        tag = op[len("sum-"):]
        if tag == "S1twistS2" and new.orientable:
            raise GatingError(NO_ONE_SIDED_TORUS,
                              "a twisted S1xS2 summand would come from a one-sided torus, "
                              "which the orientable flag excludes")
        _component(new, args[0] if args else 0).summands[tag] += 1
    new.history.append(tuple(step))
    return new


def ledger_undo(ledger: SummandLedger) -> SummandLedger:
    """Invert the last recorded operation."""
    if not ledger.history:
        raise TopologyError("nothing to undo")
    new = ledger.copy()
    op, *args = new.history.pop()
    if op == "remove-isolated-point":
        _component(new, args[0] if args else 0).isolated_points += 1
    elif op == "add-isolated-point":
        _component(new, args[0] if args else 0).isolated_points -= 1
    elif op == "add-component":
        new.components.pop()
    elif op == "connect-components":
        i, j, (summands, points) = args
        lo, hi = min(i, j), max(i, j)
        merged = new.components[lo]
        b = Component(dict(summands), points)
        a = Component({s: merged.summands[s] - summands[s] for s in SUMMANDS},
                      merged.isolated_points - points)
        new.components[lo] = a if i == lo else b
        new.components.insert(hi, b if i == lo else a)
    elif op.startswith("sum-"):
        _component(new, args[0] if args else 0).summands[op[len("sum-"):]] -= 1
    return new


def surface_operations(surface: RealSurface, arcs: int = 0, component: int = 0, n_components: int = 1):
    """Ledger operations caused by a blow-up with real exceptional surface ``surface``.

    ``arcs`` counts arcs left by a previous circle through the blown-up point.
    """
    if surface.empty:
        return [("remove-isolated-point", component)]
    ops = []
    spheres = 0
    anchors = 0
    for part in surface.parts:
        if part.base in (RP2, P2):
            ops.append(("sum-RP3", component))
            anchors += 1
        elif part.base == TORUS:
            ops.append(("event", NO_ONE_SIDED_TORUS, str(part)))
            ops.append(("sum-S1twistS2", component))
        elif part.base == KLEIN:
            ops.append(("event", part.violated_condition or "", str(part)))
        elif part.base in (SPHERES, SPHERE):
            spheres += part.count
        elif part.base in (CIRCLE, POINTS):
            pass
    if spheres:
        ops.extend(_graph_ops(spheres, anchors, arcs, component, n_components))
    return ops


def _graph_ops(spheres, anchors, arcs, component, n_components):
    """Connect-sum operations for two-sided spheres glued along the graph of their sides."""
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
        return ra != rb

    sides = [(k, s) for k in range(spheres) for s in (0, 1)]
    if anchors:
        # the one-sided pieces sit on the side of the existing component
        union(("anchor",), sides[0])
    for _ in range(arcs):
        union(sides[0], sides[1])
    # every local side class is a region; the class of sides[0] is the
    # existing component, the others start as new components
    ops = []
    index = {find(sides[0]): component}
    nxt = n_components
    for sd in sides:
        r = find(sd)
        if r not in index:
            ops.append(("add-component",))
            index[r] = nxt
            nxt += 1
    # sphere edges: spanning-forest edges merge regions, cycle edges add a handle
    forest = {r: r for r in index}
    where = dict(index)   # region root -> current ledger index

    def froot(a):
        while forest[a] != a:
            a = forest[a]
        return a

    for k in range(spheres):
        a, b = froot(find((k, 0))), froot(find((k, 1)))
        if a == b:
            ops.append(("sum-S1xS2", where[a]))
            continue
        i, j = where[a], where[b]
        ops.append(("connect-components", i, j))
        keep, gone = (a, b) if i < j else (b, a)
        lo, hi = min(i, j), max(i, j)
        forest[gone] = keep
        where[keep] = lo
        for r in where:
            if where[r] > hi:
                where[r] -= 1
    return ops


# replay

STEP_KINDS = ("rtrivial", "rsmall", "blowpoint", "blowcurve")


@dataclass
class ReplayStep:
    kind: str
    germ: str = ""
    weights: tuple | None = None
    surface: str = ""
    operations: list = field(default_factory=list)


@dataclass
class Replay:
    ledger: SummandLedger
    initial: SummandLedger
    steps: list

    @property
    def delta(self) -> dict:
        return self.ledger.delta(self.initial)


def _resolve_germ(ref: str, germs: dict | None, base_dir: str | None, last: Germ | None) -> Germ:
    if ref == "@last":
        if last is None:
            raise TopologyError("@last used before any blowcurve step")
        return last
    if germs and ref in germs:
        g = germs[ref]
        return g if isinstance(g, Germ) else parse_germ(g)[0]
    path = os.path.join(base_dir, ref) if base_dir and not os.path.isabs(ref) else ref
    if os.path.isfile(path):
        with open(path, encoding="utf-8") as fh:
            return parse_germ(fh.read())[0]
    return parse_germ(ref.replace(";", "\n"))[0]


def parse_script(text: str):
    """Steps as (kind, args) from the line format; ``#`` starts a comment."""
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *rest = line.split(None, 1)
        if kind not in STEP_KINDS:
            raise TopologyError(f"line {lineno}: step {kind!r} is not one of {', '.join(STEP_KINDS)}")
        args = rest[0].split() if rest else []
        if kind in ("rtrivial", "rsmall") and args:
            raise TopologyError(f"line {lineno}: {kind} takes no arguments")
        if kind == "blowpoint" and len(args) not in (2, 3):
            raise TopologyError(f"line {lineno}: blowpoint <germ> <weights> [arcs=N]")
        if kind == "blowcurve" and len(args) != 1:
            raise TopologyError(f"line {lineno}: blowcurve <germ>")
        steps.append((kind, args))
    return steps


def _initially_isolated(germ: Germ) -> bool:
    """Is the origin an isolated real point of X?"""
    F = germ.equation
    if F.is_zero() or F.mult_at_origin() < 2:
        return False
    cls = classify_terminal(germ)
    a, b, g = (cls.parts.get(k) for k in ("a", "b", "g"))
    if a is None or b is None or g is None or (a > 0) != (b > 0):
        return False
    if not isinstance(g, Poly):
        return False
    gg = g if a > 0 else -g
    return bool(sign_behavior(-gg))


NO_ONE_SIDED_BUNDLE = "no-one-sided-torus-or-klein-bottle"


def _curve_step(germ: Germ):
    """Blow-up of the curve (z = g(x, y) = 0); ``germ`` carries g in two variables.

    Returns (CurveBlowup, kind) with kind "circle" when the origin is an
    isolated real point of D (the fibre over it is a real circle),
    "bundle" when g changes sign, "smooth" otherwise.
    """
    g = germ.equation
    used = [v for v in g.variables if not g.free_of(v)]
    if len(used) > 2:
        raise TopologyError("blowcurve needs g(x, y) in two variables")
    names = tuple((used + [v for v in g.variables if v not in used])[:2])
    g2 = g.in_variables(names)
    cb = blowup_curve(g2)
    if cb.smooth:
        return cb, "smooth"
    if bool(sign_behavior(g2)) or bool(sign_behavior(-g2)):
        return cb, "circle"
    return cb, "bundle"


def replay_mmp(script, germs: dict | None = None, ledger: SummandLedger | None = None,
               base_dir: str | None = None) -> Replay:
    """Fold a step script into the ledger.

    ``script`` is script text or a list of (kind, args). Blow-up steps
    consult exceptional_real_surface; R-trivial and R-small steps leave
    the ledger alone.
    """
    steps = parse_script(script) if isinstance(script, str) else list(script)
    led = ledger.copy() if ledger is not None else SummandLedger()
    initial = led.copy()
    out = []
    last = None
    for kind, args in steps:
        if kind not in STEP_KINDS:
            raise TopologyError(f"step {kind!r} is not one of {', '.join(STEP_KINDS)}")
        if kind in ("rtrivial", "rsmall"):
            led = ledger_apply(led, ("event", "", kind))
            out.append(ReplayStep(kind))
            continue
        germ = _resolve_germ(args[0], germs, base_dir, last)
        if kind == "blowcurve":
            cb, shape = _curve_step(germ)
            if shape == "circle":
                led.pending_arcs += 1
                op = ("event", "", f"blowcurve {cb.g}: real circle over an isolated point")
            elif shape == "bundle":
                op = ("event", NO_ONE_SIDED_BUNDLE, f"blowcurve {cb.g}: S1-bundle over D(R)")
            else:
                op = ("event", "", f"blowcurve {cb.g}: smooth curve")
            led = ledger_apply(led, op)
            last = Germ(cb.equivalent_form) if cb.equivalent_form is not None else None
            out.append(ReplayStep(kind, str(cb.g), None, op[2], [op]))
            continue
        w = BlowupWeights.parse(args[1])
        arcs = led.pending_arcs
        for extra in args[2:]:
            m = re.fullmatch(r"arcs=(\d+)", extra)
            if not m:
                raise TopologyError(f"unknown blowpoint option {extra!r}")
            arcs = int(m.group(1))
        led = _blowpoint(led, germ, w, arcs, out)
    return Replay(led, initial, out)


def _blowpoint(led: SummandLedger, germ: Germ, w, arcs: int, out: list) -> SummandLedger:
    if _initially_isolated(germ) and led.isolated_points == 0 and not led.history:
        led = ledger_apply(led, ("add-isolated-point", 0))
    surface = exceptional_real_surface(germ, w)
    ops = surface_operations(surface, arcs, 0, len(led.components))
    if any(p.base == CIRCLE for p in surface.parts):
        led.pending_arcs = led.pending_arcs - min(arcs, led.pending_arcs) + 1
    else:
        led.pending_arcs -= min(arcs, led.pending_arcs)
    for op in ops:
        led = ledger_apply(led, op)
    out.append(ReplayStep("blowpoint", str(germ), tuple(w.weights), str(surface), ops))
    return led


# resolution

@dataclass
class ResolutionStep:
    germ: Germ
    weights: tuple
    discrepancy: Fraction
    surface: str
    operations: list
    chart_points: list          # (chart label, recentred germ) for the next round
    measure: int                # Milnor number of g before the step


@dataclass
class Resolution:
    steps: list
    ledger: SummandLedger
    initial: SummandLedger
    complete: bool
    stop_reason: str = ""

    @property
    def delta(self) -> dict:
        return self.ledger.delta(self.initial)

    @property
    def intermediate_equations(self):
        return [str(g.equation) for s in self.steps for _, g in s.chart_points]


def milnor_number(g: Poly, limit: int = 400) -> int:
    """dim Q[[z, t]] / (g_z, g_t) for g with an isolated singular point at 0.

    Computes d_N = dim Q[z, t] / (g_z, g_t, m^N) for N = 1, 2, ...; once
    d_N = d_{N+1} Nakayama gives m^N inside the Jacobian ideal locally,
    so d_N is the answer.
    """
    g = g.with_truncation(None)
    grads = [g.diff(v) for v in g.variables]
    prev = None
    for N in range(1, limit + 1):
        pivots = {}
        for G in grads:
            for i in range(N):
                for j in range(N - i):
                    row = {}
                    for (a, b), c in G.terms.items():
                        if a + i + b + j < N:
                            row[(a + i, b + j)] = c
                    _reduce_into(pivots, row)
        dim = N * (N + 1) // 2 - len(pivots)
        if dim == prev:
            return dim
        prev = dim
    raise ArithmeticError(f"Milnor number not reached below order {limit}: singularity not isolated?")


def _reduce_into(pivots: dict, row: dict) -> None:
    """Gaussian elimination step keeping rows with distinct leading monomials."""
    while row:
        lead = max(row)
        piv = pivots.get(lead)
        if piv is None:
            c = row[lead]
            pivots[lead] = {k: v / c for k, v in row.items()}
            return
        c = row[lead]
        for k, v in piv.items():
            nv = row.get(k, 0) - c * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)


def multiplicity_measure(germ: Germ) -> int:
    """Milnor number of g for a germ of shape x^2 + y^2 + g(z, t)."""
    cls = classify_terminal(germ)
    g = cls.parts.get("g")
    if not isinstance(g, Poly) or g.is_zero():
        raise TopologyError(f"no g(z, t) part for {germ}")
    return milnor_number(g)


def _choose(decision, prefer: str):
    if decision.verdict == UNIQUE:
        return decision.extractions[0]
    if decision.verdict == MULTIPLE:
        ranked = sorted(decision.extractions, key=lambda e: e.discrepancy)
        return ranked[0] if prefer == "low" else ranked[-1]
    return None


def resolve_real(germ: Germ, prefer: str = "low", max_steps: int = 64,
                 ledger: SummandLedger | None = None) -> Resolution:
    """Blow up real singular points until every real chart point is smooth.

    ``prefer`` picks among several g-extractions: "low" takes the one of
    smallest discrepancy, "high" the largest.
    """
    led = ledger.copy() if ledger is not None else SummandLedger()
    initial = led.copy()
    steps = []
    if _initially_isolated(germ):
        led = ledger_apply(led, ("add-isolated-point", 0))
        initial = led.copy()
    queue = [(germ, led.pending_arcs, None)]
    while queue:
        g, arcs, parent_measure = queue.pop(0)
        if g.equation.is_zero() or g.equation.mult_at_origin() < 2:
            if g.actions:
                return Resolution(steps, led, initial, False, f"quotient point {g} left the family")
            continue
        if len(steps) >= max_steps:
            return Resolution(steps, led, initial, False, f"step limit {max_steps} reached")
        try:
            cls = classify_terminal(g)
        except Undecided as exc:
            return Resolution(steps, led, initial, False, f"classification undecided: {exc}")
        if cls.tag not in ("cA1", "cA>1+", "cA>1+/2"):
            return Resolution(steps, led, initial, False,
                              f"leaving the supported family: {cls.tag} at {g}")
        measure = multiplicity_measure(g)
        if parent_measure is not None and not measure < parent_measure:
            raise AssertionError(f"multiplicity data did not drop: {parent_measure} -> {measure}")
        decision = g_extraction_decide(g)
        ext = _choose(decision, prefer)
        if ext is None:
            return Resolution(steps, led, initial, False,
                              f"verdict {decision.verdict} for {g} ({decision.citation})")
        frame = ext.germ
        res = weighted_blowup(frame, ext.weights)
        try:
            surface = exceptional_real_surface(frame, ext.weights)
        except BoundaryCase as exc:
            return Resolution(steps, led, initial, False, str(exc))
        ops = surface_operations(surface, arcs, 0, len(led.components))
        for op in ops:
            led = ledger_apply(led, op)
        new_arcs = 1 if any(p.base == CIRCLE for p in surface.parts) else 0
        nxt = []
        for ch in res.charts:
            rep = chart_singularity_report(ch)
            if rep.singular_curves or rep.fixed_curves:
                return Resolution(steps, led, initial, False,
                                  f"non-isolated singular locus after {ext.weights}: "
                                  f"{(rep.singular_curves + rep.fixed_curves)[0]}")
            for p in rep.points:
                if not p.real:
                    continue
                if not p.exact:
                    return Resolution(steps, led, initial, False, f"non-rational singular point: {p.note}")
                if p.germ is None or p.germ.equation.mult_at_origin() < 2:
                    if p.stabilizer > 1:
                        return Resolution(steps, led, initial, False,
                                          f"quotient point on the {p.chart}-chart left the family")
                    continue
                nxt.append((p.chart, p.germ))
        steps.append(ResolutionStep(frame, tuple(ext.weights), ext.discrepancy, str(surface), ops, nxt, measure))
        for k, (_, pg) in enumerate(nxt):
            queue.append((pg, new_arcs if k == 0 else 0, measure))
    return Resolution(steps, led, initial, True, "all real chart points smooth")

"""Hypersurface germs with cyclic quotient actions, and the terminal classifier."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .forms import (Definiteness, binary_coefficients, definiteness, is_square,
                    isolate_real_roots, rational_roots, real_linear_factor_exists,
                    ternary_cubic_has_square_factor, trim)
from .poly import ParseError, Poly, parse_poly

STANDARD_VARS = ("x", "y", "z", "t")


class InvariantViolation(ValueError):
    def __init__(self, message, monomial=None, action=None):
        super().__init__(message)
        self.monomial = monomial
        self.action = action


class UnclassifiedGerm(ValueError):
    pass


class Undecided(ArithmeticError):
    """Raised when an exact verdict needs more terms or an algebraic extension."""

    def __init__(self, message, required_order=None):
        super().__init__(message)
        self.required_order = required_order


@dataclass(frozen=True)
class CyclicAction:
    """The Z_n action x_i -> e^{2 pi i w_i / n} x_i."""
    order: int
    weights: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "weights", tuple(int(w) % self.order for w in self.weights))

    @classmethod
    def from_fractions(cls, fracs):
        fracs = [Fraction(f) % 1 for f in fracs]
        n = 1
        for f in fracs:
            n = lcm(n, f.denominator)
        return cls(n, tuple(int(f * n) for f in fracs))

    def fractions(self):
        return tuple(Fraction(w, self.order) for w in self.weights)

    def grade(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp)) % self.order

    def is_faithful(self) -> bool:
        return gcd(self.order, *self.weights) == 1

    def is_trivial(self) -> bool:
        return all(w == 0 for w in self.weights)

    def scaled(self, k: int) -> CyclicAction:
        return CyclicAction(self.order, tuple(k * w for w in self.weights))

    def generator_equivalent(self, other: CyclicAction) -> bool:
        """Same group: other = k * self for a unit k mod n."""
        if self.order != other.order or len(self.weights) != len(other.weights):
            return False
        n = self.order
        return any(gcd(k, n) == 1 and self.scaled(k).weights == other.weights for k in range(1, n + 1))

    def restricted(self, keep: Sequence[int]) -> CyclicAction:
        return CyclicAction(self.order, tuple(self.weights[i] for i in keep))

    def __str__(self):
        return f"1/{self.order}({','.join(str(w) for w in self.weights)})"


def group_elements(actions: Sequence[CyclicAction], nvars: int):
    """All elements (tuples of fractions mod 1) of the group the actions generate."""
    elems = {tuple(Fraction(0) for _ in range(nvars))}
    gens = [a.fractions() for a in actions]
    frontier = list(elems)
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                s = tuple((a + b) % 1 for a, b in zip(e, g))
                if s not in elems:
                    elems.add(s)
                    new.append(s)
        frontier = new
    return elems


def element_order(e) -> int:
    n = 1
    for f in e:
        n = lcm(n, Fraction(f).denominator)
    return n


def merge_actions(actions: Sequence[CyclicAction], nvars: int) -> CyclicAction | None:
    """A single cyclic action generating the same group, or None if not cyclic.

    Among generators, prefer one of the given actions, then the smallest
    weight vector, so that printed forms stay recognisable.
    """
    elems = group_elements(actions, nvars)
    size = len(elems)
    if size == 1:
        return None
    for a in actions:
        if len(group_elements([a], nvars)) == size:
            return a
    gens = [e for e in elems if element_order(e) == size]
    if not gens:
        return None
    return CyclicAction.from_fractions(min(gens, key=lambda e: CyclicAction.from_fractions(e).weights))


def check_semi_invariant(F: Poly, actions) -> None:
    """Raise InvariantViolation unless every monomial of F has one grade per action."""
    for a in actions:
        grades = {}
        for exp in F.terms:
            grades.setdefault(a.grade(exp), exp)
        if len(grades) > 1:
            exps = list(grades.values())
            bad = F._format_monomial(exps[1], 1)
            raise InvariantViolation(
                f"monomial {bad} has grade {a.grade(exps[1])} under {a}, "
                f"but {F._format_monomial(exps[0], 1)} has grade {a.grade(exps[0])}",
                monomial=exps[1], action=a)


@dataclass(frozen=True)
class Germ:
    """X = (F = 0) / actions, at the origin. F = 0 means the ambient space itself."""
    equation: Poly
    actions: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(a for a in self.actions if not a.is_trivial()))
        F = self.equation
        for a in self.actions:
            if len(a.weights) != F.nvars:
                raise InvariantViolation(f"action {a} has {len(a.weights)} weights for {F.nvars} variables",
                                         action=a)
        if F.coefficient((0,) * F.nvars) != 0:
            raise InvariantViolation("F(0) != 0: the origin is not on the hypersurface")
        check_semi_invariant(F, self.actions)

    @property
    def variables(self):
        return self.equation.variables

    @property
    def nvars(self):
        return self.equation.nvars

    def is_smooth_ambient(self) -> bool:
        return self.equation.is_zero()

    def grade(self, action: CyclicAction) -> int:
        if self.equation.is_zero():
            return 0
        return action.grade(next(iter(self.equation.terms)))

    def group(self):
        return group_elements(self.actions, self.nvars)

    def group_order(self) -> int:
        return len(self.group())

    def merged_action(self) -> CyclicAction | None:
        return merge_actions(self.actions, self.nvars)

    def with_equation(self, F: Poly) -> Germ:
        return Germ(F, self.actions, self.name)

    def __str__(self):
        s = str(self.equation)
        for a in self.actions:
            s += f" / {a}"
        return s


# germ text format

_ACTION_RE = re.compile(r"action\s+1\s*/\s*(\d+)\s*\(([^)]*)\)\s*$")
_WEIGHTS_RE = re.compile(r"weights\s*\(?([^)]*)\)?\s*$")
_VARS_RE = re.compile(r"vars\s+(.*)$")


def _int_list(text, line, col):
    try:
        return tuple(int(p) for p in re.split(r"[,\s]+", text.strip()) if p)
    except ValueError:
        raise ParseError(f"expected integers, got {text!r}", line, col) from None


def parse_germ(text: str, truncation: int | None = None):
    """Parse the germ file format. Returns (Germ, weights or None).

    One equation line, then optional ``action 1/n (a,b,c,d)``,
    ``weights (a,b,c,d)`` and ``vars x,y,z`` lines. ``#`` starts a comment.
    """
    eq_line = None
    actions_raw = []
    weights = None
    variables = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.find(line) + 1
        if line.startswith("action"):
            m = _ACTION_RE.match(line)
            if not m:
                raise ParseError("expected 'action 1/n (a,b,...)'", lineno, col)
            actions_raw.append((int(m.group(1)), _int_list(m.group(2), lineno, col), lineno, col))
        elif line.startswith("weights"):
            m = _WEIGHTS_RE.match(line)
            if not m:
                raise ParseError("expected 'weights (a,b,...)'", lineno, col)
            weights = _int_list(m.group(1), lineno, col)
        elif line.startswith("vars"):
            variables = tuple(v for v in re.split(r"[,\s]+", _VARS_RE.match(line).group(1)) if v)
        elif eq_line is None:
            eq_line = (line, lineno, col)
        else:
            raise ParseError("more than one equation line", lineno, col)
    if eq_line is None:
        raise ParseError("missing equation line", 1, 1)
    eq_text, eq_no, eq_col = eq_line
    if variables is None:
        nv = None
        for n, w, _, _ in actions_raw:
            nv = len(w)
        if nv is None and weights is not None:
            nv = len(weights)
        names = set(re.findall(r"[A-Za-z]\d*", eq_text))
        if names <= set(STANDARD_VARS):
            if nv is None:
                nv = 3 if not names else 4
            if nv > 4 or not names <= set(STANDARD_VARS[:nv]):
                raise ParseError("cannot infer variable list; add a 'vars' line", eq_no, eq_col)
            variables = STANDARD_VARS[:nv]
    if eq_text.startswith("=") or eq_text.endswith("=0"):
        eq_text = eq_text.replace("=0", "").strip("=")
    try:
        F = parse_poly(eq_text, variables, truncation, line=eq_no)
    except ParseError as exc:
        raise ParseError(str(exc).rsplit(" (line", 1)[0], eq_no, exc.column + eq_col - 1) from None
    actions = []
    for n, w, lineno, col in actions_raw:
        if len(w) != F.nvars:
            raise ParseError(f"action has {len(w)} weights for {F.nvars} variables", lineno, col)
        actions.append(CyclicAction(n, w))
    if weights is not None and len(weights) != F.nvars:
        raise ParseError("weights do not match the number of variables", 1, 1)
    return Germ(F, tuple(actions)), weights


# classification

TAGS = ("cA0", "cA1", "cA>1+", "cA>1-", "cD4", "cD>4", "cE6", "cE7", "cE8",
        "cA0/n", "cA1/2", "cA>1+/2", "cA>1-/2", "cA/n", "cAx/2", "cAx/4",
        "cD/2", "cD/3", "cE/2")
NOT_NORMAL = "not-in-normal-form"
NOT_TERMINAL_SHAPE = "not-terminal-shape"

_INDEX = {"cA0/n": None, "cA1/2": 2, "cA>1+/2": 2, "cA>1-/2": 2, "cA/n": None,
          "cAx/2": 2, "cAx/4": 4, "cD/2": 2, "cD/3": 3, "cE/2": 2}


@dataclass
class SingularityClass:
    tag: str
    m: int | None = None
    n: int = 1
    r: int | None = None
    parity: str | None = None
    sign: dict = field(default_factory=dict)
    pattern: str | None = None
    witnesses: tuple = ()
    parts: dict = field(default_factory=dict)
    roles: dict = field(default_factory=dict)

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    @property
    def terminal(self) -> bool:
        return self.tag in TAGS

    def describe(self) -> str:
        bits = [self.tag]
        for key in ("m", "n", "r"):
            val = getattr(self, key)
            if val is not None and not (key == "n" and val == 1):
                bits.append(f"{key}={val}")
        if self.parity:
            bits.append(f"mult g {self.parity}")
        if self.witness:
            bits.append(f"witness: {self.witness}")
        return " ".join(bits)


def _fail(*witnesses, tag=NOT_NORMAL):
    return SingularityClass(tag, witnesses=tuple(witnesses))


def _binary(P: Poly, a: str, b: str) -> Poly:
    return P.in_variables((a, b))


def _split_square_shape(F: Poly, x, y):
    """F = a x^2 + b y^2 + g(other vars)? returns (a, b, g) or None."""
    a = F.coeff_of(**{x: 2})
    b = F.coeff_of(**{y: 2})
    if a == 0 or b == 0:
        return None
    rest = F - Poly.monomial(_exp(F, {x: 2}), a, F.variables) - Poly.monomial(_exp(F, {y: 2}), b, F.variables)
    if not rest.free_of(x, y):
        return None
    return a, b, rest


def _split_xy_shape(F: Poly, x, y):
    c = F.coeff_of(**{x: 1, y: 1})
    if c == 0:
        return None
    rest = F - Poly.monomial(_exp(F, {x: 1, y: 1}), c, F.variables)
    if not rest.free_of(x, y):
        return None
    return c, rest


def _exp(F, powers):
    return tuple(powers.get(v, 0) for v in F.variables)


def _two_monomial_shape(g: Poly, z, t):
    """g = c z^p + d t^q ? returns (c, p, d, q) or None."""
    if len(g) != 2:
        return None
    zi, ti = g.index(z), g.index(t)
    pz = [(e, c) for e, c in g if e[zi] > 0 and e[ti] == 0]
    pt = [(e, c) for e, c in g if e[ti] > 0 and e[zi] == 0]
    if len(pz) != 1 or len(pt) != 1:
        return None
    return pz[0][1], pz[0][0][zi], pt[0][1], pt[0][0][ti]


def _unit_for(n, w):
    for k in range(1, n):
        if (k * w) % n == 1:
            return k
    return None


def _match_rr1(action: CyclicAction, ix, iy, iz, rest_zero=()):
    """Is the action 1/n(r,-r,1,...) on (ix, iy, iz) with zeros elsewhere?"""
    n = action.order
    k = _unit_for(n, action.weights[iz]) if n > 1 else None
    if k is None:
        return None
    w = action.scaled(k).weights
    r = w[ix]
    if (w[ix] + w[iy]) % n != 0 or any(w[i] for i in rest_zero):
        return None
    if gcd(r, n) != 1:
        return None
    return r


def _sign_data_for_g(g2: Poly, g: Poly):
    from .signs import sign_behavior
    lead = g2.homogeneous_part(g2.mult_at_origin())
    data = {"leading_definiteness": definiteness(lead)}
    try:
        data["everywhere_negative"] = bool(sign_behavior(g2))
    except Undecided:
        data["everywhere_negative"] = None
    return data


def classify_terminal(germ: Germ) -> SingularityClass:
    """Match a germ against the rows of the terminal normal-form table.

    The input must already be in one of the table's coordinate shapes;
    no normal-form reduction is attempted. On failure the tag is
    ``not-in-normal-form`` and ``witnesses`` lists violated conditions.
    """
    F = germ.equation
    actions = list(germ.actions)
    action = None
    if len(actions) == 1:
        action = actions[0]
    elif len(actions) > 1:
        action = germ.merged_action()
        if action is None:
            return _fail("acting group is not cyclic", tag=NOT_TERMINAL_SHAPE)
    if action is not None and not action.is_faithful():
        return _fail("action is not faithful", tag=NOT_TERMINAL_SHAPE)

    if F.is_zero():
        if germ.nvars != 3:
            return _fail("ambient germ must be 3-dimensional", tag=NOT_TERMINAL_SHAPE)
        return _classify_smooth(action, list(range(3)))
    if F.truncation is not None and F.truncation <= 2:
        raise Undecided("truncation too small to read the multiplicity", 3)
    mult = F.mult_at_origin()
    if mult == 1:
        if germ.nvars != 4:
            return _fail("hypersurface must live in 4 variables", tag=NOT_TERMINAL_SHAPE)
        lin = F.homogeneous_part(1)
        if action is None:
            return SingularityClass("cA0", pattern="smooth hypersurface")
        if len(F) == 1 and len(lin) == 1:
            (exp, _), = lin.terms.items()
            drop = exp.index(1)
            keep = [i for i in range(4) if i != drop]
            return _classify_smooth(action, keep)
        return _fail("F = c*t (linear equation) required with an action")
    if germ.nvars != 4:
        return _fail("singular hypersurface germ must have 4 variables", tag=NOT_TERMINAL_SHAPE)
    x, y, z, t = F.variables
    if action is None:
        return _classify_plain(F, x, y, z, t)
    return _classify_quotient(F, action, x, y, z, t)


def _classify_smooth(action, keep):
    if action is None:
        return SingularityClass("cA0", pattern="smooth")
    a = action.restricted(keep)
    n = a.order
    r = _match_rr1(a, 0, 1, 2)
    if r is None:
        return _fail("action not of the form 1/n(r,-r,1) with (n,r)=1")
    return SingularityClass("cA0/n", n=n, r=r, roles={"action": str(a)})


def _cA_two_monomial(F, a, b, g, z, t, tag, pattern_prefix):
    shape = _two_monomial_shape(g, z, t)
    if shape is None:
        return None
    c, p, d, q = shape
    if min(p, q) != 2:
        return None
    m = q if p == 2 else p
    return c, p, d, q, m


def _nondegenerate_quadratic(g2: Poly) -> bool:
    q = g2.homogeneous_part(2)
    a, b, c = q.coefficient((2, 0)), q.coefficient((1, 1)), q.coefficient((0, 2))
    return b * b - 4 * a * c != 0


def _classify_plain(F, x, y, z, t):
    sq = _split_square_shape(F, x, y)
    if sq is not None:
        a, b, g = sq
        if g.is_zero():
            return _fail("g != 0")
        g2 = _binary(g, z, t)
        mg = g2.mult_at_origin()
        same_sign = (a > 0) == (b > 0)
        if mg == 2:
            shape = _two_monomial_shape(g, z, t)
            if _nondegenerate_quadratic(g2) and (shape is None or min(shape[1], shape[3]) != 2):
                # rank 4 quadratic part: an ordinary double point whatever the higher terms
                return SingularityClass("cA1", m=2, pattern="x^2+y^2+q(z,t)" if same_sign
                                        else "±x^2±y^2+q(z,t)", parts={"a": a, "b": b, "g": g2})
            if shape is None or min(shape[1], shape[3]) != 2:
                return _fail("g = c z^2 + d t^m")
            c, p, d, q = shape
            m = q if p == 2 else p
            pattern = "x^2+y^2±z^2±t^m" if same_sign else "±x^2±y^2±z^2±t^m"
            return SingularityClass("cA1", m=m, pattern=pattern,
                                    parts={"a": a, "b": b, "g": g2},
                                    roles={"square": z if p == 2 else t})
        parity = "even" if mg % 2 == 0 else "odd"
        tag = "cA>1+" if same_sign else "cA>1-"
        sign = _sign_data_for_g(g2, g)
        return SingularityClass(tag, m=mg // 2, parity=parity, sign=sign,
                                pattern="x^2+y^2+g" if same_sign else "x^2-y^2+g",
                                parts={"a": a, "b": b, "g": g2, "mult_g": mg})
    xy = _split_xy_shape(F, x, y)
    if xy is not None:
        c, g = xy
        if g.is_zero():
            return _fail("g != 0")
        g2 = _binary(g, z, t)
        mg = g2.mult_at_origin()
        if mg == 2:
            shape = _two_monomial_shape(g, z, t)
            if _nondegenerate_quadratic(g2) and (shape is None or min(shape[1], shape[3]) != 2):
                return SingularityClass("cA1", m=2, pattern="xy+q(z,t)", parts={"c": c, "g": g2})
            if shape is None or min(shape[1], shape[3]) != 2:
                return _fail("g = c z^2 + d t^m")
            p, q = shape[1], shape[3]
            return SingularityClass("cA1", m=q if p == 2 else p, pattern="xy+z^2+t^m",
                                    parts={"c": c, "g": g2})
        return SingularityClass("cA>1-", m=mg // 2, parity="even" if mg % 2 == 0 else "odd",
                                pattern="xy+g", parts={"c": c, "g": g2, "mult_g": mg})
    a = F.coeff_of(**{x: 2})
    rest = F - Poly.monomial(_exp(F, {x: 2}), a, F.variables) if a else F
    if a == 0 or not rest.free_of(x):
        return _fail("x^2 + f(y,z,t) shape")
    f = rest.in_variables((y, z, t))
    mf = f.mult_at_origin()
    if mf < 3:
        return _fail("f_{>=3}: x^2 + f(y,z,t) needs mult f >= 3")
    f3 = f.homogeneous_part(3)
    if not ternary_cubic_has_square_factor(f3):
        return SingularityClass("cD4", parts={"f": f, "f3": f3})
    witnesses = ["f_3 = l_1^2 l_2"]
    yz_coeff = f3.coeff_of(y=2, z=1)
    if len(f3) == 1 and yz_coeff != 0:
        if f.part_from(4) == f - f3:
            return SingularityClass("cD>4", parts={"f": f, "f3": f3})
    b = f3.coeff_of(y=3)
    if len(f3) == 1 and b != 0:
        result = _classify_E(f, b, y, z, t)
        if result.terminal:
            return result
        witnesses += list(result.witnesses)
    else:
        witnesses.append("f_3 = y^2 z (cD>4 shape)")
    return _fail(*witnesses)


def _classify_E(f: Poly, b, y, z, t):
    rest = f - Poly.monomial(_exp(f, {y: 3}), b, f.variables)
    if rest.degree_in(y) > 1:
        return _fail("x^2 + y^3 + y g(z,t) + h(z,t) shape")
    g = _binary(rest.coefficient_poly(y, 1), z, t)
    h = _binary(rest.coefficient_poly(y, 0), z, t)
    mg = g.mult_at_origin() if g else 99
    mh = h.mult_at_origin() if h else 99
    parts = {"g": g, "h": h, "b": b}
    if mg < 3:
        return _fail("g_{>=3}")
    if mh < 4:
        return _fail("h_{>=4}")
    h4 = h.homogeneous_part(4)
    if h4:
        sq = is_square(h4)
        sign = {"h4_definiteness": definiteness(h4),
                "h4_square": sq is not None and sq.c > 0,
                "minus_h4_square": sq is not None and sq.c < 0,
                "h4_square_root": sq.root if sq else None}
        return SingularityClass("cE6", parts=parts, sign=sign)
    g3 = g.homogeneous_part(3)
    if g3:
        return SingularityClass("cE7", parts=parts)
    h5 = h.homogeneous_part(5)
    if h5:
        return SingularityClass("cE8", parts=parts)
    return _fail("h_4 != 0", "g_3 != 0", "h_5 != 0")


def _classify_quotient(F, action, x, y, z, t):
    n = action.order
    w = action.weights
    sq = _split_square_shape(F, x, y)
    xy = _split_xy_shape(F, x, y)
    names = (x, y, z, t)
    if n == 2 and w in ((1, 1, 1, 0), (1, 1, 0, 1)) and (sq or xy):
        # the weight-one variable plays the role of z
        zr, tr = (z, t) if w == (1, 1, 1, 0) else (t, z)
        if sq:
            a, b, g = sq
            same_sign = (a > 0) == (b > 0)
        else:
            c, g = xy
            a, b, same_sign = c, -c, False
        if g.is_zero():
            return _fail("g != 0")
        g2 = _binary(g, z, t)
        mg = g2.mult_at_origin()
        roles = {"z": zr, "t": tr, "action": str(action)}
        if mg == 2:
            shape = _two_monomial_shape(g, z, t)
            if shape is None or min(shape[1], shape[3]) != 2:
                return _fail("g = c z^n + d t^m with min(n,m) = 2")
            return SingularityClass("cA1/2", n=2, m=max(shape[1], shape[3]), roles=roles,
                                    pattern="x^2+y^2" if same_sign else "x^2-y^2",
                                    parts={"a": a, "b": b, "g": g2})
        tag = "cA>1+/2" if same_sign else "cA>1-/2"
        sign = _sign_data_for_g(g2, g) if same_sign else {}
        return SingularityClass(tag, n=2, m=mg // 2, parity="even" if mg % 2 == 0 else "odd",
                                sign=sign, roles=roles, parts={"a": a, "b": b, "g": g2, "mult_g": mg})
    if n == 2 and w in ((0, 1, 1, 1), (1, 0, 1, 1)) and sq:
        a, b, g = sq
        g2 = _binary(g, z, t)
        if g.is_zero() or g2.mult_at_origin() < 4:
            return _fail("f_{>=4}")
        return SingularityClass("cAx/2", n=2, parts={"a": a, "b": b, "g": g2},
                                roles={"action": str(action)})
    if n == 4 and action.generator_equivalent(CyclicAction(4, (1, 3, 1, 2))) and sq:
        a, b, g = sq
        g2 = _binary(g, z, t)
        if g.is_zero():
            return _fail("f != 0")
        if g2.coeff_of(t=2) != 0:
            return _fail("f_2(0,1) = 0")
        return SingularityClass("cAx/4", n=4, parts={"a": a, "b": b, "g": g2})
    if xy is not None and n >= 3:
        r = _match_rr1(action, 0, 1, 2, rest_zero=(3,))
        if r is None:
            return _fail("action 1/n(r,-r,1,0) with (n,r)=1")
        c, g = xy
        if g.is_zero():
            return _fail("f != 0")
        g2 = _binary(g, z, t)
        mg = g2.mult_at_origin()
        return SingularityClass("cA/n", n=n, r=r, m=mg, pattern="xy+f(z,t)",
                                parts={"c": c, "g": g2, "mult_g": mg})
    a = F.coeff_of(**{x: 2})
    rest = F - Poly.monomial(_exp(F, {x: 2}), a, F.variables) if a else F
    if a == 0 or not rest.free_of(x):
        return _fail("x^2 + f(y,z,t) shape")
    f = rest.in_variables((y, z, t))
    mf = f.mult_at_origin()
    if n == 2 and w == (1, 1, 0, 1):
        if mf < 3:
            return _fail("f_{>=3}")
        return SingularityClass("cD/2", n=2, parts={"f": f})
    if n == 3 and action.generator_equivalent(CyclicAction(3, (0, 1, 1, 2))):
        if mf < 3:
            return _fail("f_{>=3}")
        if f.coeff_of(t=3) == 0:
            return _fail("f_3(0,0,1) != 0")
        return SingularityClass("cD/3", n=3, parts={"f": f})
    if n == 2 and w == (1, 0, 1, 1):
        b = f.coeff_of(y=3)
        rest = f - Poly.monomial(_exp(f, {y: 3}), b, f.variables)
        if b == 0 or (rest and rest.mult_at_origin() < 4):
            return _fail("x^2 + y^3 + f_{>=4}(y,z,t)")
        return SingularityClass("cE/2", n=2, parts={"f": f})
    return _fail(f"no table row with action {action}")


def index_of(cls_or_germ) -> int:
    cls = cls_or_germ if isinstance(cls_or_germ, SingularityClass) else classify_terminal(cls_or_germ)
    if not cls.terminal:
        raise UnclassifiedGerm(f"germ is not classified terminal ({cls.witness})")
    if cls.tag in ("cA0/n", "cA/n"):
        return cls.n
    return _INDEX.get(cls.tag) or 1

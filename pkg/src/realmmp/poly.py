"""Exact multivariate polynomials over the rationals, optionally truncated.

A :class:`Poly` stores a sparse map from exponent tuples to nonzero
``Fraction`` coefficients. When ``truncation`` is an integer N the
polynomial stands for a power series known modulo monomials of total
degree >= N, and every operation keeps that invariant.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

STANDARD_ORDER = ("x", "y", "z", "t", "u", "v", "w", "s")


class ZeroPolynomialError(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def variable_sort_key(name: str):
    m = re.fullmatch(r"([A-Za-z]+)(\d*)", name)
    base, digits = (m.group(1), m.group(2)) if m else (name, "")
    rank = STANDARD_ORDER.index(base) if base in STANDARD_ORDER else len(STANDARD_ORDER)
    return (int(digits) if digits else 0, rank, base)


class Poly:
    __slots__ = ("_terms", "variables", "truncation")

    def __init__(self, terms: Mapping | Iterable, variables: Sequence[str], truncation: int | None = None):
        variables = tuple(variables)
        if truncation is not None and truncation < 1:
            raise ValueError("truncation order must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise ValueError(f"exponent {exp} does not match variables {variables}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if truncation is not None and sum(exp) >= truncation:
                continue
            clean[exp] = clean.get(exp, 0) + Fraction(coeff)
        self._terms = MappingProxyType({e: c for e, c in clean.items() if c != 0})
        self.variables = variables
        self.truncation = truncation

    # construction helpers

    @classmethod
    def zero(cls, variables, truncation=None):
        return cls({}, variables, truncation)

    @classmethod
    def constant(cls, c, variables, truncation=None):
        return cls({(0,) * len(tuple(variables)): c}, variables, truncation)

    @classmethod
    def var(cls, name, variables, truncation=None):
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name}")
        return cls({exp: 1}, variables, truncation)

    @classmethod
    def monomial(cls, exp, coeff, variables, truncation=None):
        return cls({tuple(exp): coeff}, variables, truncation)

    @property
    def terms(self):
        return self._terms

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def coefficient(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def coeff_of(self, **powers) -> Fraction:
        exp = tuple(powers.get(v, 0) for v in self.variables)
        return self.coefficient(exp)

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        return self.variables.index(var)

    def with_truncation(self, truncation):
        return Poly(self._terms, self.variables, truncation)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.variables, _min_trunc(self.truncation, other.truncation))

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self._terms.items()}, self.variables, self.truncation)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly({e: c * other for e, c in self._terms.items()}, self.variables, self.truncation)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = _min_trunc(self.truncation, other.truncation)
        out: dict = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2 in other._terms.items():
                if trunc is not None and d1 + sum(e2) >= trunc:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.variables, trunc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(1, self.variables, self.truncation)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.variables)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    # degrees and graded pieces

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, var) -> int:
        i = self.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def order_in(self, var) -> int:
        """Largest k with var^k dividing every stored monomial."""
        i = self.index(var)
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no order")
        return min(e[i] for e in self._terms)

    def mult_at_origin(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("zero-polynomial")
        return min(sum(e) for e in self._terms)

    def homogeneous_part(self, d: int) -> Poly:
        if self.truncation is not None and d >= self.truncation:
            raise ValueError(f"degree {d} is beyond truncation order {self.truncation}")
        return Poly({e: c for e, c in self._terms.items() if sum(e) == d}, self.variables)

    def part_from(self, d: int) -> Poly:
        return Poly({e: c for e, c in self._terms.items() if sum(e) >= d}, self.variables, self.truncation)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def weighted_multiplicity(self, w) -> Fraction:
        if not self._terms:
            raise ZeroPolynomialError("zero-polynomial")
        w = [Fraction(a) for a in w]
        if any(a <= 0 for a in w):
            raise ValueError("weights must be positive")
        return min(sum(a * e for a, e in zip(w, exp)) for exp in self._terms)

    def weighted_part(self, w, value) -> Poly:
        w = [Fraction(a) for a in w]
        return Poly({e: c for e, c in self._terms.items()
                     if sum(a * k for a, k in zip(w, e)) == value}, self.variables)

    def initial_form(self, w) -> Poly:
        return self.weighted_part(w, self.weighted_multiplicity(w))

    def truncation_is_safe(self, w, bound) -> bool:
        """True when no unknown (truncated) monomial can have w-degree <= bound."""
        if self.truncation is None:
            return True
        return Fraction(min(w)) * self.truncation > bound

    # substitutions

    def substitute_monomial_map(self, images, new_variables=None) -> Poly:
        """Substitute each variable by ``coeff * monomial`` in new variables.

        ``images`` is a sequence (one per variable, or a dict keyed by name)
        of pairs ``(coeff, exponent_tuple)``.
        """
        new_variables = tuple(new_variables) if new_variables is not None else self.variables
        if isinstance(images, Mapping):
            images = [images[v] for v in self.variables]
        images = [(Fraction(c), tuple(e)) for c, e in images]
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        for c, e in images:
            if c == 0 or len(e) != len(new_variables):
                raise ValueError("each image must be a nonzero monomial in the new variables")
        trunc = None
        if self.truncation is not None:
            low = min(sum(e) for _, e in images)
            if low < 1:
                raise ValueError("cannot carry truncation through a map with constant images")
            trunc = self.truncation * low
        out: dict = {}
        for exp, coeff in self._terms.items():
            c = coeff
            new = [0] * len(new_variables)
            for k, (ic, ie) in zip(exp, images):
                if k:
                    c *= ic ** k
                    for j, a in enumerate(ie):
                        new[j] += a * k
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return Poly(out, new_variables, trunc)

    def substitute(self, images: Mapping | Sequence, new_variables=None) -> Poly:
        """Substitute each variable by a Poly (general polynomial map)."""
        new_variables = tuple(new_variables) if new_variables is not None else self.variables
        if isinstance(images, Mapping):
            images = [images.get(v, Poly.var(v, new_variables) if v in new_variables else None)
                      for v in self.variables]
        if any(im is None for im in images):
            raise ValueError("missing image for a variable")
        images = [im if isinstance(im, Poly) else Poly.constant(im, new_variables) for im in images]
        trunc = None
        if self.truncation is not None:
            low = min((im.mult_at_origin() if im else 10**9) for im in images)
            if low < 1:
                raise ValueError("cannot carry truncation through a map with constant terms")
            trunc = self.truncation * low
        for im in images:
            trunc = _min_trunc(trunc, im.truncation)
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i].with_truncation(trunc) ** k
            return cache[key]

        result = Poly.zero(new_variables, trunc)
        for exp, coeff in self._terms.items():
            term = Poly.constant(coeff, new_variables, trunc)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def exact_divide_power(self, var, k: int) -> Poly:
        i = self.index(var)
        for exp in self._terms:
            if exp[i] < k:
                raise NotDivisibleError(
                    f"{self.variables[i]}^{k} does not divide {self._format_monomial(exp, 1)}",
                    witness=exp)
        out = {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in self._terms.items()}
        trunc = None if self.truncation is None else max(1, self.truncation - k)
        return Poly(out, self.variables, trunc)

    def diff(self, var) -> Poly:
        i = self.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        trunc = None if self.truncation is None else max(1, self.truncation - 1)
        return Poly(out, self.variables, trunc)

    def evaluate(self, point) -> Fraction:
        if isinstance(point, Mapping):
            point = [point[v] for v in self.variables]
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for p, k in zip(point, e):
                if k:
                    term *= p ** k
            total += term
        return total

    def partial_evaluate(self, values: Mapping[str, Fraction]) -> Poly:
        """Set some variables to constants, keeping the variable list."""
        idx = {self.index(v): Fraction(val) for v, val in values.items()}
        out: dict = {}
        for e, c in self._terms.items():
            new = list(e)
            for i, val in idx.items():
                c *= val ** e[i]
                new[i] = 0
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return Poly(out, self.variables, self.truncation if not idx else None)

    # variable bookkeeping

    def in_variables(self, new_variables) -> Poly:
        """Re-express over another variable list; dropped variables must not occur."""
        new_variables = tuple(new_variables)
        pos = {v: i for i, v in enumerate(new_variables)}
        out = {}
        for e, c in self._terms.items():
            new = [0] * len(new_variables)
            for v, k in zip(self.variables, e):
                if k:
                    if v not in pos:
                        raise ValueError(f"variable {v} occurs but is dropped")
                    new[pos[v]] = k
            out[tuple(new)] = c
        return Poly(out, new_variables, self.truncation)

    def rename(self, mapping: Mapping[str, str]) -> Poly:
        return Poly(self._terms, [mapping.get(v, v) for v in self.variables], self.truncation)

    def used_variables(self):
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self._terms))

    def free_of(self, *names) -> bool:
        return all(self.degree_in(n) <= 0 for n in names)

    def coefficient_poly(self, var, k: int) -> Poly:
        """Coefficient of var^k, as a Poly over the same variables (free of var)."""
        i = self.index(var)
        out = {e[:i] + (0,) + e[i + 1:]: c for e, c in self._terms.items() if e[i] == k}
        return Poly(out, self.variables)

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def leading_term(self):
        """Lexicographically largest exponent with its coefficient."""
        e = max(self._terms)
        return e, self._terms[e]

    def monomials(self):
        return sorted(self._terms, key=lambda e: (sum(e), tuple(-k for k in e)))

    # display

    def _format_monomial(self, exp, coeff):
        factors = []
        for v, k in zip(self.variables, exp):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        mono = "*".join(factors)
        if not mono:
            return str(coeff)
        if coeff == 1:
            return mono
        if coeff == -1:
            return "-" + mono
        return f"{coeff}*{mono}"

    def __str__(self):
        if not self._terms:
            s = "0"
        else:
            s = ""
            for e in self.monomials():
                piece = self._format_monomial(e, self._terms[e])
                if not s:
                    s = piece
                elif piece.startswith("-"):
                    s += " - " + piece[1:]
                else:
                    s += " + " + piece
        if self.truncation is not None:
            s += f" + O({self.truncation})"
        return s

    def __repr__(self):
        return f"Poly({str(self)!r}, variables={self.variables})"


# text grammar

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z]\d*)|(?P<op>\*\*|[-+*^()]))")


def _tokenize(text: str, line: int = 1):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        col = m.start(m.lastgroup) + 1
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "op" and value == "**":
            value = "^"
        out.append((kind, value, col))
        pos = m.end()
    return out


def parse_poly(text: str, variables: Sequence[str] | None = None,
               truncation: int | None = None, line: int = 1) -> Poly:
    """Parse e.g. ``x^2+y^2-3/2 z t^5`` into a Poly.

    Juxtaposition multiplies, so ``xy`` is ``x*y``. Variable names are one
    letter optionally followed by digits.
    """
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty equation", line, 1)
    if variables is None:
        names = {v for k, v, _ in tokens if k == "id"}
        variables = sorted(names, key=variable_sort_key)
    variables = tuple(variables)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text) + 1)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        sign = 1
        kind, val, _ = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        total = term() * sign
        while True:
            kind, val, _ = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term():
        result = factor()
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                take()
                result = result * factor()
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                result = result * factor()
            else:
                return result

    def factor():
        base = atom()
        kind, val, col = peek()
        if kind == "op" and val == "^":
            take()
            k2, v2, c2 = take()
            if k2 != "num" or "/" in v2:
                raise ParseError("exponent must be a nonnegative integer", line, c2)
            base = base ** int(v2)
        return base

    def atom():
        kind, val, col = take()
        if kind == "num":
            return Poly.constant(Fraction(val), variables, truncation)
        if kind == "id":
            if val not in variables:
                raise ParseError(f"unknown variable {val!r}", line, col)
            return Poly.var(val, variables, truncation)
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, c2 = take()
            if v2 != ")":
                raise ParseError("expected ')'", line, c2)
            return inner
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", line, col)

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"unexpected token {tokens[pos][1]!r}", line, tokens[pos][2])
    return result


def P(text: str, variables: Sequence[str] | None = None, truncation: int | None = None) -> Poly:
    """Shorthand used across tests and scripts."""
    return parse_poly(text, variables, truncation)

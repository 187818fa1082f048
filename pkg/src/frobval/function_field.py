"""The ambient field K = F_p(u_1..u_m, x_1..x_n).

Ground variables u model the imperfection of the coefficient field: the
ground field is k = F_p(u_1..u_m) with [k:k^p] = p^m, and [K:K^p] = p^(m+n).
Coefficients themselves always live in the prime field F_p.

Polynomials are sparse maps from exponent vectors (length m+n) to nonzero
residues mod p.  Rational functions are unreduced num/den pairs; equality is
by cross multiplication, so no multivariate gcd is ever needed.

Power series are lazy: a deterministic coefficient rule plus a memo, used by
series-restriction valuations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import factorial

from .errors import (
    DivisionByZeroError,
    GroundVarInSeriesContextError,
    MissingAssignmentError,
    ParseError,
    SpecMismatchError,
    UnknownVariableError,
    ZeroDenominatorError,
)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """K = F_p(ground_vars + main_vars) with k = F_p(ground_vars)."""

    p: int
    ground_vars: tuple
    main_vars: tuple

    def __post_init__(self):
        object.__setattr__(self, "ground_vars", tuple(self.ground_vars))
        object.__setattr__(self, "main_vars", tuple(self.main_vars))
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        names = list(self.ground_vars) + list(self.main_vars)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if len(self.main_vars) < 1:
            raise ValueError("at least one main variable is required")

    @property
    def m(self) -> int:
        return len(self.ground_vars)

    @property
    def n(self) -> int:
        return len(self.main_vars)

    @property
    def nvars(self) -> int:
        return self.m + self.n

    def var_index(self, name: str) -> int:
        names = self.ground_vars + self.main_vars
        try:
            return names.index(name)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def all_vars(self):
        return self.ground_vars + self.main_vars

    def field_p_degree(self) -> int:
        """[K:K^p] = p^(m+n)."""
        return self.p ** self.nvars

    def ground_p_degree(self) -> int:
        """[k:k^p] = p^m."""
        return self.p**self.m


class Polynomial:
    """Sparse element of F_p[ground_vars, main_vars]."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: dict):
        self.spec = spec
        self.terms = {e: c % spec.p for e, c in terms.items() if c % spec.p}

    @classmethod
    def zero(cls, spec):
        return cls(spec, {})

    @classmethod
    def constant(cls, spec, c):
        return cls(spec, {(0,) * spec.nvars: c})

    @classmethod
    def variable(cls, spec, name):
        i = spec.var_index(name)
        e = [0] * spec.nvars
        e[i] = 1
        return cls(spec, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecMismatchError("polynomials over different field specs")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.spec, out)

    def __neg__(self):
        return Polynomial(self.spec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.spec, out)

    def __pow__(self, k: int):
        result = Polynomial.constant(self.spec, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def uses_main_var(self) -> bool:
        m = self.spec.m
        return any(any(e[m:]) for e in self.terms)

    def is_ground_only(self) -> bool:
        """True iff the polynomial lies in k[ground_vars] (no main variable)."""
        return not self.uses_main_var()

    def sorted_terms(self):
        # graded lex on full exponent vectors, highest first
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.spec.all_vars()
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class RationalFunction:
    """Unreduced fraction num/den; equality via cross multiplication."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDenominatorError("zero denominator")
        if self.num.spec != self.den.spec:
            raise SpecMismatchError("numerator and denominator over different specs")

    @property
    def spec(self):
        return self.num.spec

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __str__(self):
        if self.den == Polynomial.constant(self.den.spec, 1):
            return str(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# Expression parser


_EXPR_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()/]))")


class _ExprParser:
    """Recursive descent over: expr -> term (('+'|'-') term)*;
    term -> factor ('*' factor)*; factor -> atom ('^' int)*;
    atom -> ident | int | '(' expr ')' | '-' atom.

    '/' is not part of the polynomial grammar; parse_ratfun handles the one
    top-level division.
    """

    def __init__(self, text, spec):
        self.text = text
        self.spec = spec
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _EXPR_TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip() == "":
                    break
                raise ParseError(
                    f"unexpected character {text[pos]!r}", position=pos,
                    expected=["identifier", "integer", "operator"],
                )
            self.tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.peek()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", position=t[2], expected=[op])
        return self.take()

    def parse_expr(self):
        t = self.peek()
        sign = 1
        if t[:2] == ("op", "-"):
            self.take()
            sign = -1
        elif t[:2] == ("op", "+"):
            self.take()
        result = self.parse_term()
        if sign < 0:
            result = -result
        while True:
            t = self.peek()
            if t[:2] == ("op", "+"):
                self.take()
                result = result + self.parse_term()
            elif t[:2] == ("op", "-"):
                self.take()
                result = result - self.parse_term()
            else:
                return result

    def parse_term(self):
        result = self.parse_factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_factor(self):
        result = self.parse_atom()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            t = self.peek()
            if t[0] != "int":
                raise ParseError("expected integer exponent", position=t[2], expected=["integer"])
            self.take()
            result = result ** int(t[1])
        return result

    def parse_atom(self):
        t = self.peek()
        if t[0] == "int":
            self.take()
            return Polynomial.constant(self.spec, int(t[1]))
        if t[0] == "ident":
            self.take()
            return Polynomial.variable(self.spec, t[1])
        if t[:2] == ("op", "("):
            self.take()
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if t[:2] == ("op", "-"):
            self.take()
            return -self.parse_atom()
        raise ParseError(
            f"unexpected token {t[1]!r}" if t[0] else "unexpected end of input",
            position=t[2], expected=["identifier", "integer", "("],
        )


def parse_poly(text: str, spec: FieldSpec) -> Polynomial:
    p = _ExprParser(text, spec)
    result = p.parse_expr()
    t = p.peek()
    if t[0] is not None:
        raise ParseError(f"trailing input {t[1]!r}", position=t[2], expected=["end of input"])
    return result


def parse_ratfun(text: str, spec: FieldSpec) -> RationalFunction:
    p = _ExprParser(text, spec)
    num = p.parse_expr()
    t = p.peek()
    if t[:2] == ("op", "/"):
        p.take()
        den = p.parse_expr()
        t = p.peek()
        if t[0] is not None:
            raise ParseError(f"trailing input {t[1]!r}", position=t[2], expected=["end of input"])
    elif t[0] is None:
        den = Polynomial.constant(spec, 1)
    else:
        raise ParseError(f"trailing input {t[1]!r}", position=t[2], expected=["/", "end of input"])
    return RationalFunction(num, den)


def exact_divide(f: Polynomial, g: Polynomial):
    """Quotient q with f = q*g if g divides f exactly, else None.

    Greedy reduction by the leading term of g in graded lex order: when g
    divides f, the leading term of f is divisible by that of g, so the
    reduction terminates at zero exactly in the divisible case.
    """
    if g.is_zero():
        raise DivisionByZeroError("division by the zero polynomial")
    spec = f.spec
    p = spec.p
    lt_e, lt_c = g.sorted_terms()[0]
    lt_c_inv = pow(lt_c, p - 2, p) if p > 2 else lt_c
    quot = {}
    rem = dict(f.terms)
    while rem:
        e, c = max(rem.items(), key=lambda t: (sum(t[0]), t[0]))
        qe = tuple(a - b for a, b in zip(e, lt_e))
        if any(x < 0 for x in qe):
            return None
        qc = (c * lt_c_inv) % p
        quot[qe] = quot.get(qe, 0) + qc
        for e2, c2 in g.terms.items():
            key = tuple(a + b for a, b in zip(qe, e2))
            val = rem.get(key, 0) - qc * c2
            val %= p
            if val:
                rem[key] = val
            elif key in rem:
                del rem[key]
    return Polynomial(spec, quot)


# ---------------------------------------------------------------------------
# Lazy power series over F_p


class PowerSeries:
    """Univariate series over F_p given by a deterministic coefficient rule."""

    def __init__(self, p: int, rule, name: str = "series"):
        self.p = p
        self.rule = rule
        self.name = name
        self._memo = []
        self._power_memo = {}

    def coefficient(self, i: int) -> int:
        while len(self._memo) <= i:
            self._memo.append(self.rule(len(self._memo)) % self.p)
        return self._memo[i]

    def prefix(self, n: int):
        """Coefficients 0..n-1."""
        return [self.coefficient(i) for i in range(n)]

    def power_prefix(self, k: int, n: int):
        """Coefficients 0..n-1 of the k-th power (memoized per exponent)."""
        if k == 0:
            return [1 % self.p] + [0] * (n - 1)
        cached = self._power_memo.get(k)
        if cached is not None and len(cached) >= n:
            return cached[:n]
        if k == 1:
            result = self.prefix(n)
        else:
            result = _trunc_mul(self.power_prefix(k - 1, n), self.prefix(n), self.p, n)
        self._power_memo[k] = result
        return result

    @classmethod
    def variable(cls, p):
        return cls(p, lambda i: 1 if i == 1 else 0, name="t")

    @classmethod
    def zero(cls, p):
        return cls(p, lambda i: 0, name="0")

    @classmethod
    def from_polynomial_coeffs(cls, p, coeffs, name="poly"):
        cs = list(coeffs)
        return cls(p, lambda i: cs[i] if i < len(cs) else 0, name=name)

    @classmethod
    def factorial_gap(cls, p):
        """Coefficient 1 exactly at the indices n! for n >= 1 (1, 2, 6, 24, ...).

        Sparse and believed transcendental over F_p(t); chosen over sum of
        t^(2^n), which satisfies an Artin-Schreier relation in characteristic
        2.  Transcendence is an assumption, not a verified property.
        """

        def rule(i):
            if i < 1:
                return 0
            k = 1
            f = 1
            while f < i:
                k += 1
                f = factorial(k)
            return 1 if f == i else 0

        return cls(p, rule, name="factorial_gap")


def series_ord(s: PowerSeries, cap: int):
    """Least i <= cap with nonzero coefficient (index 0 = constant term);
    None (UNDETERMINED) if every coefficient through `cap` vanishes."""
    for i in range(cap + 1):
        if s.coefficient(i):
            return i
    return None


def _trunc_mul(a, b, p, n):
    out = [0] * n
    for i, ca in enumerate(a):
        if ca == 0 or i >= n:
            continue
        for j, cb in enumerate(b):
            if i + j >= n:
                break
            if cb:
                out[i + j] = (out[i + j] + ca * cb) % p
    return out


def eval_poly_as_series(f: Polynomial, assign: dict, precision: int):
    """Truncated expansion of f under main-variable -> PowerSeries assignment.

    Returns the coefficient list of length precision+1 (orders 0..precision).
    Requires a ground-variable-free spec; every main variable appearing in f
    must be assigned.
    """
    spec = f.spec
    if spec.m != 0:
        raise GroundVarInSeriesContextError(
            "series valuations require a field without ground variables"
        )
    for name in spec.main_vars:
        i = spec.var_index(name)
        if any(e[i] for e in f.terms) and name not in assign:
            raise MissingAssignmentError(f"no series assigned to {name!r}")
    n = precision + 1
    p = spec.p
    out = [0] * n
    for e, c in f.terms.items():
        termc = None
        for name in spec.main_vars:
            k = e[spec.var_index(name)]
            if k == 0:
                continue
            powc = assign[name].power_prefix(k, n)
            termc = powc if termc is None else _trunc_mul(termc, powc, p, n)
        if termc is None:
            out[0] = (out[0] + c) % p
        else:
            for i, x in enumerate(termc):
                if x:
                    out[i] = (out[i] + c * x) % p
    return out

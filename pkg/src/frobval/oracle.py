"""Independent brute-force cross-checks.

These deliberately avoid the algorithms used on the main path: coset
enumeration instead of the p^rank formula, Smith normal form instead of
Hermite, dense re-expansion at higher precision instead of trusting the
first resolved series order, and randomized axiom auditing.  Mutant
implementations (a broken min rule, a broken lex comparator) ship here so
the test suite can prove the audit has teeth.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import RankTooLargeError
from .exact_arith import QuadraticReal
from .function_field import Polynomial, RationalFunction
from .ordered_groups import OrderedGroup, reduce_mod_lattice
from .valuations import MonomialLex, Valuation


def coset_count_bruteforce(g: OrderedGroup, p: int) -> int:
    """|G / pG| by enumerating all basis combinations with coefficients in
    {0..p-1} and counting distinct canonical residues modulo pG."""
    rank = g.rank
    if rank > 4:
        raise RankTooLargeError(f"coset enumeration capped at rank 4, got {rank}")
    if rank == 0:
        return 1
    basis = [list(row) for row in g.basis_int]
    p_basis = [[p * x for x in row] for row in basis]
    seen = set()
    for coeffs in itertools.product(range(p), repeat=rank):
        vec = [0] * g.dim
        for c, row in zip(coeffs, basis):
            vec = [a + c * b for a, b in zip(vec, row)]
        seen.add(reduce_mod_lattice(vec, p_basis))
    return len(seen)


def smith_normal_form(rows):
    """Invariant factors of an integer matrix (nonzero diagonal of the SNF).

    Textbook elimination with both row and column operations; fine at the
    desk scale the oracles run at.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    invariants = []
    top = 0
    while True:
        # find a nonzero entry at or below/right of (top, top)
        pivot = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i0, j0 = pivot
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        # clear row and column `top` via Euclid
        while True:
            changed = False
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // a[top][top]
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                    changed = True
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // a[top][top]
                    for row in a:
                        row[j] -= q * row[top]
                    if a[top][j]:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                    changed = True
            if not changed:
                break
        piv = abs(a[top][top])
        # enforce divisibility d_i | d_{i+1} by folding any non-divisible
        # later entry into the pivot position
        fixed = False
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % piv:
                    a[top] = [x + y for x, y in zip(a[top], a[i])]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        invariants.append(piv)
        top += 1
        if top >= m or top >= n:
            break
    return invariants


@dataclass
class AuditReport:
    trials: int
    passed: bool = True
    failures: list = field(default_factory=list)

    def record(self, kind, detail):
        self.passed = False
        self.failures.append((kind, detail))


def random_polynomial(spec, rng, max_terms=3, max_deg=3, allow_zero=False):
    nterms = rng.randint(0 if allow_zero else 1, max_terms)
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, max_deg) for _ in range(spec.nvars))
        terms[e] = rng.randint(1, spec.p - 1) if spec.p > 2 else 1
    return Polynomial(spec, terms)


def random_nonzero_polynomial(spec, rng, max_terms=3, max_deg=3):
    while True:
        f = random_polynomial(spec, rng, max_terms, max_deg)
        if not f.is_zero():
            return f


def random_ground_polynomial(spec, rng, max_terms=2, max_deg=2):
    """Nonzero polynomial in the ground variables only (empty product = 1)."""
    while True:
        nterms = rng.randint(1, max_terms)
        terms = {}
        for _ in range(nterms):
            e = tuple(
                rng.randint(0, max_deg) if i < spec.m else 0
                for i in range(spec.nvars)
            )
            terms[e] = rng.randint(1, spec.p - 1) if spec.p > 2 else 1
        f = Polynomial(spec, terms)
        if not f.is_zero():
            return f


def _values_equal(a, b):
    if isinstance(a, QuadraticReal):
        return a.compare(b) == 0
    return a == b


def _value_add(a, b):
    if isinstance(a, QuadraticReal):
        return a + b
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _value_min(a, b):
    return a if not _value_less(b, a) else b


def _value_less(a, b):
    if isinstance(a, QuadraticReal):
        return a.compare(b) < 0
    return a < b


def axiom_audit(v: Valuation, seed: int, trials: int, max_deg=3, max_terms=3) -> AuditReport:
    """Randomized check of the valuation axioms.

    Samples pairs of nonzero polynomials and asserts multiplicativity, the
    ultrametric inequality, equality in the strict case, and triviality on
    the ground field.  Failures carry the counterexample.
    """
    rng = random.Random(seed)
    report = AuditReport(trials=trials)
    spec = v.spec
    for _ in range(trials):
        f = random_nonzero_polynomial(spec, rng, max_terms, max_deg)
        g = random_nonzero_polynomial(spec, rng, max_terms, max_deg)
        vf = v.value_of_poly(f)
        vg = v.value_of_poly(g)
        vfg = v.value_of_poly(f * g)
        if not _values_equal(vfg, _value_add(vf, vg)):
            report.record("multiplicativity", (str(f), str(g), vf, vg, vfg))
        h = f + g
        if not h.is_zero():
            vh = v.value_of_poly(h)
            lo = _value_min(vf, vg)
            if _value_less(vh, lo):
                report.record("ultrametric", (str(f), str(g), vf, vg, vh))
            if not _values_equal(vf, vg) and not _values_equal(vh, lo):
                report.record("strict-case-equality", (str(f), str(g), vf, vg, vh))
        if spec.m > 0:
            c = random_ground_polynomial(spec, rng)
            vc = v.value_of_poly(c)
            zero = v.value_of_poly(Polynomial.constant(spec, 1))
            if not _values_equal(vc, zero):
                report.record("ground-field-triviality", (str(c), vc))
        if report.failures:
            break
    return report


def representative_independence_audit(v: Valuation, seed: int, trials: int) -> AuditReport:
    """v((a*h)/(b*h)) must equal v(a/b) for any nonzero h."""
    rng = random.Random(seed)
    report = AuditReport(trials=trials)
    spec = v.spec
    for _ in range(trials):
        a = random_nonzero_polynomial(spec, rng)
        b = random_nonzero_polynomial(spec, rng)
        h = random_nonzero_polynomial(spec, rng)
        v1 = v.value_of(RationalFunction(a, b))
        v2 = v.value_of(RationalFunction(a * h, b * h))
        if not _values_equal(v1, v2):
            report.record("representative-independence", (str(a), str(b), str(h), v1, v2))
            break
    return report


def series_recheck(v: Valuation, c, factor: int = 2):
    """Re-evaluate a series-restriction value at `factor` times the
    precision that first resolved it; any disagreement is a bug."""
    if factor < 2:
        raise ValueError("factor must be at least 2")
    from .function_field import eval_poly_as_series

    def ord_at(f, precision):
        coeffs = eval_poly_as_series(f, v.kind.assign, precision)
        return next((i for i, x in enumerate(coeffs) if x), None)

    first = v.value_of(c) if isinstance(c, RationalFunction) else v.value_of_poly(c)
    if isinstance(c, RationalFunction):
        boost = factor * max(16, abs(first) + 16)
        again = ord_at(c.num, boost) - ord_at(c.den, boost)
    else:
        boost = factor * max(16, first + 1)
        again = ord_at(c, boost)
    assert first == again, f"series order unstable under precision boost: {first} vs {again}"
    return first


# ---------------------------------------------------------------------------
# In-tree mutants, used by tests to prove the audit catches real breakage


class BrokenMinValuation:
    """Monomial valuation with max in place of min: not a valuation."""

    def __init__(self, inner: Valuation):
        self.inner = inner
        self.spec = inner.spec

    def value_of_poly(self, f):
        k = self.inner.kind
        if isinstance(k, MonomialLex):
            return max(self.inner._lex_term_values(f))
        return max(self.inner._arch_term_values(f))


def broken_lex_compare(a, b):
    """Compares from the last coordinate: not the lex order."""
    return (a[::-1] > b[::-1]) - (a[::-1] < b[::-1])

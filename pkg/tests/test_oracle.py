import random
from functools import reduce

import pytest

from frobval.errors import RankTooLargeError
from frobval.fixtures import (
    gauss_valuation,
    irrational_monomial,
    lex_monomial,
    series_factorial_gap,
)
from frobval.function_field import parse_poly
from frobval.oracle import (
    BrokenMinValuation,
    axiom_audit,
    broken_lex_compare,
    coset_count_bruteforce,
    series_recheck,
    smith_normal_form,
)
from frobval.ordered_groups import OrderedGroup

from conftest import random_lattice


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


class TestCosetCount:
    def test_standard_z2(self):
        g = OrderedGroup.from_generators([(1, 0), (0, 1)])
        assert coset_count_bruteforce(g, 2) == 4
        assert coset_count_bruteforce(g, 3) == 9

    def test_rank_one(self):
        g = OrderedGroup.from_generators([(7,)])
        assert coset_count_bruteforce(g, 5) == 5

    def test_rank_cap(self):
        g = OrderedGroup.from_generators(
            [tuple(1 if i == j else 0 for j in range(5)) for i in range(5)]
        )
        with pytest.raises(RankTooLargeError):
            coset_count_bruteforce(g, 2)


class TestSmithNormalForm:
    def test_diagonal(self):
        assert smith_normal_form([[2, 0], [0, 6]]) == [2, 6]

    def test_needs_divisibility_fixup(self):
        # diag(2, 3) has invariant factors 1, 6
        assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]

    def test_textbook_example(self):
        assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]

    def test_divisibility_chain_random(self):
        rng = random.Random(71)
        for _ in range(50):
            m = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            inv = smith_normal_form(m)
            for a, b in zip(inv, inv[1:]):
                assert b % a == 0
            # product of invariant factors = |det| for full-rank matrices
            d = abs(det3(m))
            if d:
                assert reduce(lambda x, y: x * y, inv, 1) == d
            else:
                assert len(inv) < 3

    def test_agrees_with_hnf_index(self):
        rng = random.Random(73)
        for _ in range(30):
            g = random_lattice(rng)
            inv = smith_normal_form([list(r) for r in g.basis_int])
            for p in (2, 3):
                # |G/pG| = p^(number of invariant factors) = p^rank
                assert p ** len(inv) == g.index_p(p)


class TestAuditsPass:
    def test_fixture_valuations(self):
        for v in (irrational_monomial(5), lex_monomial(3), gauss_valuation(2)):
            assert axiom_audit(v, seed=4, trials=150).passed


class TestMutantsCaught:
    def test_broken_min_fails_audit(self):
        for make in (lambda: lex_monomial(3), lambda: gauss_valuation(3)):
            mutant = BrokenMinValuation(make())
            report = axiom_audit(mutant, seed=5, trials=300)
            assert not report.passed
            kinds = {k for k, _ in report.failures}
            assert "strict-case-equality" in kinds or "ultrametric" in kinds

    def test_broken_lex_compare_disagrees(self):
        # the reversed comparator orders (0, 1) above (1, 0)
        assert broken_lex_compare((0, 1), (1, 0)) > 0
        assert ((0, 1) < (1, 0)) is True


class TestSeriesRecheck:
    def test_agrees_on_fixture(self):
        v = series_factorial_gap(2)
        f = parse_poly("y - x - x^2", v.spec)
        assert series_recheck(v, f) == 6

    def test_higher_factor(self):
        v = series_factorial_gap(3)
        f = parse_poly("y - x", v.spec)
        assert series_recheck(v, f, factor=4) == 2

    def test_factor_validation(self):
        v = series_factorial_gap(2)
        with pytest.raises(ValueError):
            series_recheck(v, parse_poly("x", v.spec), factor=1)

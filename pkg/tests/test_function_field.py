import random
from math import comb

import pytest

from frobval.errors import (
    DivisionByZeroError,
    ParseError,
    SpecMismatchError,
    UnknownVariableError,
    ZeroDenominatorError,
)
from frobval.function_field import (
    FieldSpec,
    Polynomial,
    PowerSeries,
    RationalFunction,
    eval_poly_as_series,
    exact_divide,
    parse_poly,
    parse_ratfun,
    series_ord,
)
from frobval.oracle import random_nonzero_polynomial, random_polynomial


@pytest.fixture
def spec():
    return FieldSpec(5, (), ("x", "y"))


class TestFieldSpec:
    def test_degrees(self):
        s = FieldSpec(5, (), ("x", "y"))
        assert s.field_p_degree() == 25
        assert s.ground_p_degree() == 1
        s2 = FieldSpec(2, ("u",), ("x",))
        assert s2.field_p_degree() == 4
        assert s2.ground_p_degree() == 2

    def test_no_main_vars_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec(5, ("u",), ())

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec(6, (), ("x",))

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec(5, ("x",), ("x", "y"))


class TestParser:
    def test_direct_translation(self, spec):
        f = parse_poly("x^2*y + 3", spec)
        assert f.terms == {(2, 1): 1, (0, 0): 3}

    def test_freshman_dream(self):
        spec = FieldSpec(2, (), ("x", "y"))
        f = parse_poly("(x+y)^2", spec)
        # expansion oracle: binomial coefficients mod 2
        expected = {}
        for k in range(3):
            c = comb(2, k) % 2
            if c:
                expected[(2 - k, k)] = c
        assert f.terms == expected == {(2, 0): 1, (0, 2): 1}

    def test_zero_denominator(self, spec):
        with pytest.raises(ZeroDenominatorError):
            parse_ratfun("1/0", spec)

    def test_unknown_variable(self, spec):
        with pytest.raises(UnknownVariableError):
            parse_poly("x + z", spec)

    def test_parse_error_has_position(self, spec):
        with pytest.raises(ParseError) as exc:
            parse_poly("x + + @", spec)
        assert exc.value.position is not None

    def test_top_level_division(self, spec):
        r = parse_ratfun("(x+y)^3/(x)", spec)
        assert r.den == parse_poly("x", spec)

    def test_parse_print_round_trip(self, spec):
        rng = random.Random(3)
        for _ in range(50):
            f = random_nonzero_polynomial(spec, rng)
            assert parse_poly(str(f), spec) == f


class TestRingArithmetic:
    def test_difference_of_squares(self, spec):
        x, y = parse_poly("x", spec), parse_poly("y", spec)
        assert (x + y) * (x - y) == parse_poly("x^2 - y^2", spec)

    def test_additive_identity(self, spec):
        f = parse_poly("x^2*y + 3", spec)
        assert f + Polynomial.zero(spec) == f

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_frobenius_on_sums(self, p):
        spec = FieldSpec(p, (), ("x", "y"))
        f = parse_poly(f"(x+y)^{p}", spec)
        # expansion oracle: comb(p, k) = 0 mod p for 0 < k < p
        assert all(comb(p, k) % p == 0 for k in range(1, p))
        assert f == parse_poly(f"x^{p} + y^{p}", spec)

    def test_spec_mismatch(self, spec):
        other = FieldSpec(3, (), ("x", "y"))
        with pytest.raises(SpecMismatchError):
            parse_poly("x", spec) + parse_poly("x", other)

    def test_ring_axioms_random(self, spec):
        rng = random.Random(5)
        for _ in range(500):
            f = random_polynomial(spec, rng, allow_zero=True)
            g = random_polynomial(spec, rng, allow_zero=True)
            h = random_polynomial(spec, rng, allow_zero=True)
            assert (f + g) + h == f + (g + h)
            assert f * (g + h) == f * g + f * h
            assert (f * g) * h == f * (g * h)
            p_times = Polynomial.zero(spec)
            for _ in range(spec.p):
                p_times = p_times + f
            assert p_times.is_zero()


class TestExactDivide:
    def test_monomial_divisor(self, spec):
        f = parse_poly("x^2*y + x^3", spec)
        q = exact_divide(f, parse_poly("x", spec))
        assert q == parse_poly("x*y + x^2", spec)

    def test_non_divisible(self, spec):
        assert exact_divide(parse_poly("x+y", spec), parse_poly("x", spec)) is None

    def test_power_of_binomial(self, spec):
        f = parse_poly("(x+y)^3", spec)
        q = exact_divide(f, parse_poly("x+y", spec))
        # re-expansion oracle
        assert q * parse_poly("x+y", spec) == f
        assert q == parse_poly("(x+y)^2", spec)

    def test_zero_divisor_rejected(self, spec):
        with pytest.raises(DivisionByZeroError):
            exact_divide(parse_poly("x", spec), Polynomial.zero(spec))

    def test_product_round_trip_random(self, spec):
        rng = random.Random(9)
        for _ in range(200):
            f = random_nonzero_polynomial(spec, rng)
            g = random_nonzero_polynomial(spec, rng)
            assert exact_divide(f * g, g) == f


class TestRationalFunction:
    def test_cross_multiplication_equality(self, spec):
        a = parse_ratfun("x/y", spec)
        b = parse_ratfun("(x*y)/(y^2)", spec)
        assert a == b

    def test_zero_denominator(self, spec):
        with pytest.raises(ZeroDenominatorError):
            RationalFunction(parse_poly("x", spec), Polynomial.zero(spec))


class TestPowerSeries:
    def test_ord_of_polynomial_series(self):
        s = PowerSeries.from_polynomial_coeffs(5, [0, 0, 0, 1, 0, 1])
        assert series_ord(s, 10) == 3

    def test_zero_rule_undetermined(self):
        assert series_ord(PowerSeries.zero(5), 100) is None

    def test_factorial_gap_minus_t(self):
        # 1!, 2!, 3! = 1, 2, 6, so the gap series minus t starts at t^2
        p = 2
        fg = PowerSeries.factorial_gap(p)
        s = PowerSeries(p, lambda i: fg.coefficient(i) - (1 if i == 1 else 0))
        assert series_ord(s, 10) == 2
        assert fg.prefix(8) == [0, 1, 1, 0, 0, 0, 1, 0]

    def test_memo_stability(self):
        fg = PowerSeries.factorial_gap(3)
        first = fg.prefix(30)
        assert fg.prefix(30) == first


class TestEvalAsSeries:
    def test_factorial_gap_difference(self):
        spec = FieldSpec(2, (), ("x", "y"))
        f = parse_poly("y - x", spec)
        assign = {"x": PowerSeries.variable(2), "y": PowerSeries.factorial_gap(2)}
        coeffs = eval_poly_as_series(f, assign, 8)
        assert coeffs == [0, 0, 1, 0, 0, 0, 1, 0, 0]

    def test_identity_assignment(self):
        spec = FieldSpec(3, (), ("x",))
        coeffs = eval_poly_as_series(
            parse_poly("x", spec), {"x": PowerSeries.variable(3)}, 4
        )
        assert coeffs == [0, 1, 0, 0, 0]

    def test_square_by_oracle(self):
        spec = FieldSpec(5, (), ("y",))
        s = PowerSeries.from_polynomial_coeffs(5, [0, 1, 1])  # t + t^2
        coeffs = eval_poly_as_series(parse_poly("y^2", spec), {"y": s}, 5)
        # squaring oracle: (t + t^2)^2 = t^2 + 2t^3 + t^4
        assert coeffs == [0, 0, 1, 2, 1, 0]

    def test_multiplicativity_up_to_truncation(self):
        spec = FieldSpec(3, (), ("x", "y"))
        assign = {"x": PowerSeries.variable(3), "y": PowerSeries.factorial_gap(3)}
        rng = random.Random(21)
        n = 12
        for _ in range(200):
            f = random_nonzero_polynomial(spec, rng, max_terms=2, max_deg=2)
            g = random_nonzero_polynomial(spec, rng, max_terms=2, max_deg=2)
            cf = eval_poly_as_series(f, assign, n)
            cg = eval_poly_as_series(g, assign, n)
            cfg = eval_poly_as_series(f * g, assign, n)
            conv = [0] * (n + 1)
            for i, a in enumerate(cf):
                for j, b in enumerate(cg):
                    if i + j <= n:
                        conv[i + j] = (conv[i + j] + a * b) % 3
            assert cfg == conv

    def test_prefix_consistency(self):
        spec = FieldSpec(2, (), ("x", "y"))
        assign = {"x": PowerSeries.variable(2), "y": PowerSeries.factorial_gap(2)}
        f = parse_poly("y^2 - x^2 - x*y", spec)
        long = eval_poly_as_series(f, assign, 32)
        short = eval_poly_as_series(f, assign, 8)
        assert long[:9] == short

import math
import random
from fractions import Fraction

import pytest

from localarith import (
    FiniteField,
    FqPoly,
    FunctionFieldPlace,
    INFINITY,
    InvalidArgumentError,
    RationalPlace,
    ff_valuation,
    gauss_valuation,
    normalized_absolute_value,
    product_formula_report,
    sum_formula_check,
    vp_rational,
    weak_approximation,
)
from localarith.polynomials import poly_mul

from conftest import random_rational


class TestVpRational:
    def test_examples(self):
        assert vp_rational(2, 12) == 2
        assert vp_rational(13, Fraction(-691, 2730)) == -1
        assert vp_rational(5, Fraction(-1, 4)) == 0

    def test_zero_gives_infinity(self):
        assert vp_rational(7, 0) == INFINITY

    def test_rejects_composite(self):
        with pytest.raises(InvalidArgumentError):
            vp_rational(6, 5)

    def test_multiplicativity(self, rng):
        primes = [p for p in range(2, 51) if all(p % d for d in range(2, p))]
        for _ in range(1000):
            x, y = random_rational(rng), random_rational(rng)
            for p in primes:
                assert vp_rational(p, x * y) == vp_rational(p, x) + vp_rational(p, y)

    def test_ultrametric_with_strict_rule(self, rng):
        for _ in range(400):
            x, y = random_rational(rng), random_rational(rng)
            if x + y == 0:
                continue
            for p in (2, 3, 5, 7):
                vx, vy, vs = vp_rational(p, x), vp_rational(p, y), vp_rational(p, x + y)
                assert vs >= min(vx, vy)
                if vx != vy:
                    assert vs == min(vx, vy)


class TestProductFormula:
    def test_minus_one(self):
        report = product_formula_report(-1)
        assert report.entries == ((RationalPlace.infinite(), Fraction(1)),)
        assert report.product == 1

    def test_twelve(self):
        report = product_formula_report(12)
        as_dict = {str(place): a for place, a in report.entries}
        assert as_dict == {"2": Fraction(1, 4), "3": Fraction(1, 3), "inf": Fraction(12)}
        assert report.product == 1

    def test_single_prime(self):
        for p in (2, 3, 11):
            report = product_formula_report(p)
            as_dict = {str(place): a for place, a in report.entries}
            assert as_dict == {str(p): Fraction(1, p), "inf": Fraction(p)}
            assert report.product == 1

    def test_zero_rejected(self):
        with pytest.raises(InvalidArgumentError):
            product_formula_report(0)

    def test_exact_product_random(self, rng):
        for _ in range(200):
            assert product_formula_report(random_rational(rng)).product == 1


def _poly(q, coeffs):
    return FqPoly(FiniteField(q), coeffs)


class TestFunctionFieldValuations:
    def test_infinite_place(self):
        assert ff_valuation(FunctionFieldPlace.infinite(2), _poly(2, [1]), _poly(2, [0, 1])) == 1

    def test_finite_place(self):
        place = FunctionFieldPlace.finite(_poly(2, [0, 1]))
        assert ff_valuation(place, _poly(2, [0, 0, 0, 1, 0, 1])) == 3

    def test_place_at_itself(self):
        f = _poly(3, [1, 0, 1])  # T^2 + 1, irreducible over GF(3)
        assert ff_valuation(FunctionFieldPlace.finite(f), f) == 1

    def test_reducible_place_rejected(self):
        with pytest.raises(InvalidArgumentError):
            FunctionFieldPlace.finite(_poly(2, [0, 0, 1]))  # T^2 = T*T

    def test_zero_gives_infinity(self):
        assert ff_valuation(FunctionFieldPlace.infinite(2), _poly(2, [])) == INFINITY


class TestSumFormula:
    def test_monic_irreducible(self):
        f = _poly(2, [1, 1, 1])  # T^2 + T + 1
        report = sum_formula_check(f)
        entries = {str(place): v for place, v in report.entries}
        assert entries == {"1 + T + T^2": 1, "inf": -2}
        assert report.total == 0 and report.holds

    def test_constant(self):
        report = sum_formula_check(_poly(4, [2]))
        assert report.entries == () and report.total == 0 and report.holds

    def test_t2_over_t_plus_1(self):
        report = sum_formula_check(_poly(2, [0, 0, 1]), _poly(2, [1, 1]))
        entries = {str(place): v for place, v in report.entries}
        assert entries == {"T": 2, "1 + T": -1, "inf": -1}
        assert report.holds

    def test_random_functions(self, rng):
        for q in (2, 3, 4):
            field = FiniteField(q)
            for _ in range(40):
                num = FqPoly(field, [rng.randrange(q) for _ in range(rng.randint(1, 5))] + [1])
                den = FqPoly(field, [rng.randrange(q) for _ in range(rng.randint(1, 5))] + [1])
                assert sum_formula_check(num, den).holds


class TestGaussValuation:
    def test_examples(self):
        assert gauss_valuation(0, [1, 0]) == (0, frozenset({1}))
        assert gauss_valuation(1, [1, 0]) == (1, frozenset({0, 1}))

    def test_exponential_truncation_attainment(self):
        vals = [vp_rational(2, Fraction(1, math.factorial(i))) for i in range(8)]
        w, attained = gauss_valuation(Fraction(3, 4), vals)
        assert w == 0 and attained == frozenset({0, 4})

    def test_zero_polynomial_rejected(self):
        with pytest.raises(InvalidArgumentError):
            gauss_valuation(0, [INFINITY, INFINITY])

    def test_product_additivity(self, rng):
        for _ in range(150):
            p = rng.choice([2, 3, 5])
            f = [random_rational(rng, 50) for _ in range(rng.randint(1, 5))]
            g = [random_rational(rng, 50) for _ in range(rng.randint(1, 5))]
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
            vf = [vp_rational(p, x) for x in f]
            vg = [vp_rational(p, x) for x in g]
            vfg = [vp_rational(p, x) for x in poly_mul(f, g)]
            assert (
                gauss_valuation(c, vfg)[0]
                == gauss_valuation(c, vf)[0] + gauss_valuation(c, vg)[0]
            )


class TestWeakApproximation:
    def test_crt_example(self):
        y = weak_approximation(
            [
                (RationalPlace.finite(2), Fraction(1), Fraction(1, 7)),
                (RationalPlace.finite(3), Fraction(0), Fraction(1, 2)),
            ]
        )
        assert y == 9

    def test_single_place(self):
        y = weak_approximation([(RationalPlace.finite(5), Fraction(2, 3), Fraction(1, 125))])
        assert y == Fraction(2, 3)

    def test_archimedean_window(self):
        y = weak_approximation(
            [
                (RationalPlace.finite(2), Fraction(1), Fraction(1, 2)),
                (RationalPlace.infinite(), Fraction(1, 2), Fraction(3, 5)),
            ]
        )
        assert y == 1

    def test_duplicate_place_rejected(self):
        with pytest.raises(InvalidArgumentError):
            weak_approximation(
                [
                    (RationalPlace.finite(2), Fraction(0), Fraction(1)),
                    (RationalPlace.finite(2), Fraction(1), Fraction(1)),
                ]
            )

    def test_bad_denominator_rejected(self):
        with pytest.raises(InvalidArgumentError):
            weak_approximation(
                [
                    (RationalPlace.finite(2), Fraction(1, 2), Fraction(1, 4)),
                    (RationalPlace.finite(3), Fraction(0), Fraction(1)),
                ]
            )

    def test_postcondition_random(self, rng):
        for _ in range(60):
            primes = rng.sample([2, 3, 5, 7, 11], rng.randint(1, 3))
            targets = []
            for p in primes:
                x = Fraction(rng.randint(-20, 20), rng.choice([1, 9, 49, 121, 169]))
                if any(x.denominator % q == 0 for q in primes):
                    x = Fraction(rng.randint(-20, 20))
                targets.append(
                    (RationalPlace.finite(p), x, Fraction(1, p ** rng.randint(1, 4)))
                )
            if rng.random() < 0.6:
                targets.append(
                    (
                        RationalPlace.infinite(),
                        Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
                        Fraction(1, rng.randint(1, 40)),
                    )
                )
            y = weak_approximation(targets)
            for place, x, eps in targets:
                assert normalized_absolute_value(place, x - y) < eps

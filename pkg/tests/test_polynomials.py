import math
import random
from fractions import Fraction

import pytest

from localarith import (
    HypothesisFailedError,
    InvalidArgumentError,
    PadicPolynomial,
    PrecisionLossError,
    TruncatedSeries,
    cyclotomic,
    discriminant,
    eisenstein_test,
    hensel_lift_factors,
    newton_polygon,
    primitive_rescale,
    refine_factorization,
    resultant,
    resultant_mn,
    root_valuations,
    slope_factorization,
    vp_rational,
    weierstrass_prepare,
)
from localarith.formats import parse_polynomial
from localarith.polynomials import poly_mul, poly_sub

EXP7 = parse_polynomial(
    "1 + T + 1/2*T^2 + 1/6*T^3 + 1/24*T^4 + 1/120*T^5 + 1/720*T^6 + 1/5040*T^7"
)


def random_poly(rng, degree, bound=40):
    coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(degree)]
    lead = Fraction(rng.randint(1, bound))
    return coeffs + [lead]


class TestResultant:
    def test_layout_examples(self):
        assert resultant([0, 1], [-1, 1]) == -1  # res(T, T-1)
        assert resultant([-1, 1], [-1, 0, 1]) == 0  # common root
        assert discriminant([-3, 0, 1]) == 12  # dis(T^2 - u) = 4u

    def test_zero_polynomial_rejected(self):
        with pytest.raises(InvalidArgumentError):
            resultant([], [1, 1])

    def test_multiplicative_in_second_argument(self, rng):
        for _ in range(60):
            g = random_poly(rng, rng.randint(1, 3))
            h1 = random_poly(rng, rng.randint(1, 3))
            h2 = random_poly(rng, rng.randint(1, 3))
            assert resultant(g, poly_mul(h1, h2)) == resultant(g, h1) * resultant(g, h2)

    def test_discriminant_of_product(self, rng):
        for _ in range(60):
            g = random_poly(rng, rng.randint(1, 3))
            h = random_poly(rng, rng.randint(1, 3))
            lhs = discriminant(poly_mul(g, h))
            rhs = discriminant(g) * discriminant(h) * resultant(g, h) ** 2
            assert lhs == rhs

    def test_specialization_commutes_with_reduction(self, rng):
        for _ in range(40):
            p, k = rng.choice([2, 3, 5]), rng.randint(1, 4)
            m, n = rng.randint(1, 3), rng.randint(1, 3)
            g = [rng.randint(0, 50) for _ in range(m + 1)]
            h = [rng.randint(0, 50) for _ in range(n + 1)]
            full = resultant_mn(g, h, m, n)
            reduced = resultant_mn([c % p**k for c in g], [c % p**k for c in h], m, n)
            assert (full - reduced) % p**k == 0


class TestNewtonPolygon:
    def test_exponential_truncation(self):
        polygon = newton_polygon(PadicPolynomial(2, EXP7))
        assert polygon.sides == (
            (4, Fraction(-3, 4)),
            (2, Fraction(-1, 2)),
            (1, Fraction(0)),
        )
        assert not polygon.is_pure

    def test_eisenstein_shape(self):
        for p, e in [(2, 3), (5, 4), (3, 6)]:
            coeffs = [p] + [0] * (e - 1) + [1]
            polygon = newton_polygon(PadicPolynomial(p, coeffs))
            assert polygon.sides == ((e, Fraction(-1, e)),)

    def test_t_squared_minus_p(self):
        polygon = newton_polygon(PadicPolynomial(3, [-3, 0, 1]))
        assert polygon.is_pure and polygon.sides == ((2, Fraction(-1, 2)),)

    def test_vanishing_constant_term_rejected(self):
        with pytest.raises(InvalidArgumentError):
            newton_polygon(PadicPolynomial(2, [0, 1, 1]))

    def test_points_on_or_above(self, rng):
        for _ in range(100):
            p = rng.choice([2, 3, 5])
            coeffs = [Fraction(rng.randint(1, 10_000)) for _ in range(rng.randint(2, 8))]
            f = PadicPolynomial(p, coeffs)
            polygon = newton_polygon(f)
            # every coefficient point lies on or above the hull
            for j, v in enumerate(f.coefficient_valuations()):
                x0, y0 = polygon.vertices[0]
                height = Fraction(y0)
                for (x1, y1), (x2, y2) in zip(polygon.vertices, polygon.vertices[1:]):
                    if x1 <= j <= x2:
                        height = y1 + (y2 - y1) * Fraction(j - x1, x2 - x1)
                        break
                assert v >= height

    def test_multiplicativity_of_types(self, rng):
        # type(f*g) is the slope-sorted merge of type(f) and type(g)
        for _ in range(500):
            p = rng.choice([2, 3, 5])
            sides = {}
            f = [Fraction(1)]
            for _ in range(rng.randint(1, 3)):
                length = rng.randint(1, 3)
                num = rng.randint(-4, 4)
                den = length
                slope = Fraction(num, den)
                # pure polynomial of type (length, slope): ends of the segment
                coeffs = [Fraction(0)] * (length + 1)
                coeffs[0] = Fraction(p) ** (-num) if num <= 0 else Fraction(p**num)
                coeffs[0] = Fraction(p) ** (-slope * length)
                coeffs[length] = Fraction(1)
                f = poly_mul(f, coeffs)
                sides[slope] = sides.get(slope, 0) + length
            expected = tuple(
                (sides[s], s) for s in sorted(sides)
            )
            assert newton_polygon(PadicPolynomial(p, f)).sides == expected

    def test_pure_coefficient_bound(self, rng):
        for _ in range(200):
            p = rng.choice([2, 3, 5])
            n = rng.randint(1, 4)
            coeffs = [Fraction(p) ** rng.randint(0, 5) * rng.choice([1, 2, 3]) for _ in range(n)]
            coeffs.append(Fraction(1))
            f = PadicPolynomial(p, coeffs)
            polygon = newton_polygon(f)
            if polygon.is_pure:
                vals = f.coefficient_valuations()
                for v in vals:
                    assert v >= min(vals[0], vals[-1])


class TestRootValuations:
    def test_exponential_truncation(self):
        pairs, stripped = root_valuations(PadicPolynomial(2, EXP7))
        assert stripped == 0
        assert pairs == [(Fraction(3, 4), 4), (Fraction(1, 2), 2), (Fraction(0), 1)]

    def test_t_squared_minus_p(self):
        pairs, _ = root_valuations(PadicPolynomial(5, [-5, 0, 1]))
        assert pairs == [(Fraction(1, 2), 2)]

    def test_shifted_cyclotomic(self):
        for p in (3, 5, 7):
            f = PadicPolynomial(p, cyclotomic(p, 1)).shifted_by_one()
            pairs, _ = root_valuations(f)
            assert pairs == [(Fraction(1, p - 1), p - 1)]

    def test_t_power_stripping_and_mass(self, rng):
        for _ in range(100):
            p = rng.choice([2, 3])
            k = rng.randint(0, 2)
            body = [Fraction(rng.randint(1, 200))] + [
                Fraction(rng.randint(0, 200)) for _ in range(rng.randint(1, 5))
            ]
            if body[-1] == 0:
                body[-1] = Fraction(1)
            coeffs = [Fraction(0)] * k + body
            f = PadicPolynomial(p, coeffs)
            pairs, stripped = root_valuations(f)
            assert stripped == k
            assert sum(m for _, m in pairs) == f.degree - k
            vals = PadicPolynomial(p, body).coefficient_valuations()
            assert sum(v * m for v, m in pairs) == vals[0] - vals[-1]


class TestEisenstein:
    def test_shifted_cyclotomic(self):
        for p in (2, 3, 5, 7):
            f = PadicPolynomial(p, cyclotomic(p, 1)).shifted_by_one()
            assert eisenstein_test(f)

    def test_counterexamples(self):
        assert not eisenstein_test(PadicPolynomial(2, [-4, 0, 1]))
        assert eisenstein_test(PadicPolynomial(2, [-2, 0, 0, 1]))

    def test_prime_power_cyclotomic(self):
        assert cyclotomic(2, 1) == [1, 1]
        assert cyclotomic(3, 2) == [1, 0, 0, 1, 0, 0, 1]
        for p, n in [(2, 2), (2, 3), (3, 2), (5, 2)]:
            f = PadicPolynomial(p, cyclotomic(p, n)).shifted_by_one()
            assert eisenstein_test(f)


class TestHenselLiftFactors:
    def test_spec_example(self):
        f = PadicPolynomial(7, [-2, 0, 1])
        g, h = hensel_lift_factors(
            f, PadicPolynomial(7, [-3, 1]), PadicPolynomial(7, [3, 1]), 0, 2
        )
        assert g.coefficients == (39, 1) and h.coefficients == (10, 1)

    def test_exact_factorization_unchanged(self):
        g0 = PadicPolynomial(5, [2, 1])
        h0 = PadicPolynomial(5, [3, 1])
        f = g0 * h0
        g, h = hensel_lift_factors(f, g0, h0, 0, 6)
        assert g.coefficients == g0.coefficients
        assert h.coefficients == h0.coefficients

    def test_non_coprime_residues_rejected(self):
        f = PadicPolynomial(2, [1, 1, 1])
        with pytest.raises(HypothesisFailedError):
            hensel_lift_factors(
                f, PadicPolynomial(2, [0, 1]), PadicPolynomial(2, [-1, 1]), 0, 4
            )

    def test_congruence_conditions_and_uniqueness(self, rng):
        for _ in range(30)[:30]:
            p = rng.choice([2, 3, 5])
            n_prec = 16
            g0, h0 = _coprime_pair(rng, p)
            f = PadicPolynomial(
                p,
                poly_sub(
                    poly_mul(list(g0.coefficients), list(h0.coefficients)),
                    [-p * rng.randint(0, p**3) for _ in range(g0.degree + h0.degree)],
                ),
            )
            g, h = hensel_lift_factors(f, g0, h0, 0, n_prec)
            defect = poly_sub(
                list(f.coefficients), poly_mul(list(g.coefficients), list(h.coefficients))
            )
            assert all(vp_rational(p, c) >= n_prec for c in defect if c)
            assert all(
                vp_rational(p, a - b) >= 1
                for a, b in zip(g.coefficients, g0.coefficients)
            )
            assert g.coefficients[-1] == g0.coefficients[-1]
            # perturbing g inside its congruence class breaks the factorization
            perturbed = list(g.coefficients)
            perturbed[0] += p
            defect2 = poly_sub(
                list(f.coefficients),
                poly_mul(perturbed, list(h.coefficients)),
            )
            assert any(c and vp_rational(p, c) < n_prec for c in defect2)


def _coprime_pair(rng, p):
    """Monic pair with coprime residues mod p."""
    while True:
        g = [rng.randrange(p**2) for _ in range(rng.randint(1, 3))] + [1]
        h = [rng.randrange(p**2) for _ in range(rng.randint(1, 3))] + [1]
        gp = PadicPolynomial(p, g)
        hp = PadicPolynomial(p, h)
        if vp_rational(p, resultant(gp, hp)) == 0:
            return gp, hp


class TestRefineFactorization:
    def test_exact_input_is_fixpoint(self):
        g = PadicPolynomial(3, [1, 1])
        h = PadicPolynomial(3, [2, 0, 1])
        f = g * h
        assert refine_factorization(f, g, h, 10) == (g, h)

    def test_agrees_with_hensel_route(self):
        f = PadicPolynomial(7, [-2, 0, 1])
        g0, h0 = PadicPolynomial(7, [-3, 1]), PadicPolynomial(7, [3, 1])
        assert refine_factorization(f, g0, h0, 6) == hensel_lift_factors(f, g0, h0, 0, 6)

    def test_hypothesis_failure(self):
        f = PadicPolynomial(2, [1, 1, 1])  # residue factors share a root
        with pytest.raises(HypothesisFailedError):
            refine_factorization(
                f, PadicPolynomial(2, [1, 1]), PadicPolynomial(2, [1, 1]), 8
            )

    def test_quadratic_improvement(self, rng):
        # one round must lift the defect from w0 past 2*w0 - 2*beta
        for _ in range(20):
            p = rng.choice([2, 3, 5])
            g0, h0 = _coprime_pair(rng, p)
            f = PadicPolynomial(
                p,
                poly_mul(list(g0.coefficients), list(h0.coefficients)),
            ) + PadicPolynomial(p, [p**2 * rng.randint(1, p)])
            g, h = refine_factorization(f, g0, h0, 3)
            defect = poly_sub(
                list(f.coefficients), poly_mul(list(g.coefficients), list(h.coefficients))
            )
            assert all(vp_rational(p, c) >= 3 for c in defect if c)


class TestSlopeFactorization:
    def test_exponential_truncation(self):
        f = PadicPolynomial(2, EXP7)
        factors = slope_factorization(f, 32)
        assert [g.degree for g, _ in factors] == [4, 2, 1]
        assert [side for _, side in factors] == list(newton_polygon(f).sides)

    def test_pure_input_returned_whole(self):
        f = PadicPolynomial(5, [-5, 0, 1])
        factors = slope_factorization(f, 10)
        assert len(factors) == 1 and factors[0][0] is f

    def test_eisenstein_product(self):
        e2 = PadicPolynomial(2, [2, 2, 1])
        e3 = PadicPolynomial(2, [2, 0, 2, 1])
        f = e2 * e3
        factors = slope_factorization(f, 24)
        assert sorted(g.degree for g, _ in factors) == [2, 3]
        assert [s for _, s in factors] == [(2, Fraction(-1, 2)), (3, Fraction(-1, 3))]
        product = [Fraction(1)]
        for g, _ in factors:
            product = poly_mul(product, list(g.coefficients))
        defect = poly_sub(list(f.coefficients), product)
        assert all(vp_rational(2, c) >= 24 for c in defect if c)

    def test_zero_constant_term_rejected(self):
        with pytest.raises(InvalidArgumentError):
            slope_factorization(PadicPolynomial(2, [0, 1, 1]), 8)


class TestWeierstrass:
    def test_low_degree_example(self):
        f = TruncatedSeries(3, [3, 1, 3], 40)
        g, h = weierstrass_prepare(f, 8)
        assert g.degree == 1
        assert h.coefficients[0] == 1
        assert all(vp_rational(3, c) > 0 for c in h.coefficients[1:] if c)
        prod = poly_mul(list(g.coefficients), list(h.coefficients))[:3]
        defect = poly_sub(list(f.coefficients), prod)
        assert all(vp_rational(3, c) >= 8 for c in defect if c)

    def test_unit_leading_polynomial(self):
        f = TruncatedSeries(5, [5, 25, 1], 30)
        g, h = weierstrass_prepare(f, 8)
        assert g.degree == 2
        assert list(h.coefficients[:1]) == [1] and all(c == 0 for c in h.coefficients[1:])

    def test_geometric_valuations(self):
        f = TruncatedSeries(2, [1, 2, 4, 8], 4)
        g, h = weierstrass_prepare(f, 4)
        assert g.degree == 0
        assert h.coefficients[0] == 1

    def test_undetermined_index_rejected(self):
        with pytest.raises(PrecisionLossError):
            weierstrass_prepare(TruncatedSeries(3, [9, 3, 9], 1), 6)


class TestPrimitiveRescale:
    def test_spec_example(self):
        f = PadicPolynomial(3, [0, 0, 1])
        g = PadicPolynomial(3, [0, Fraction(1, 3)])
        h = PadicPolynomial(3, [0, 3])
        b, g2, h2 = primitive_rescale(f, g, h)
        assert b == Fraction(1, 3)
        assert g2.coefficients == (0, 1) and h2.coefficients == (0, 1)

    def test_already_integral(self):
        f = PadicPolynomial(5, [2, 3, 1])
        g = PadicPolynomial(5, [2, 1])
        h = PadicPolynomial(5, [1, 1])
        b, g2, h2 = primitive_rescale(f, g, h)
        assert b == 1 and g2 == g and h2 == h

    def test_random_round_trip(self, rng):
        for _ in range(50):
            p = rng.choice([2, 3, 5])
            g = PadicPolynomial(p, random_poly(rng, rng.randint(1, 3), 20))
            h = PadicPolynomial(p, random_poly(rng, rng.randint(1, 3), 20))
            f = g * h
            k = rng.randint(-3, 3)
            scale = Fraction(p) ** k
            g_scaled = PadicPolynomial(p, [c * scale for c in g.coefficients])
            h_scaled = PadicPolynomial(p, [c / scale for c in h.coefficients])
            _, g2, h2 = primitive_rescale(f, g_scaled, h_scaled)
            for c in g2.coefficients + h2.coefficients:
                assert vp_rational(p, c) >= 0 or c == 0

    def test_mismatch_rejected(self):
        with pytest.raises(InvalidArgumentError):
            primitive_rescale(
                PadicPolynomial(2, [1, 1]),
                PadicPolynomial(2, [1, 1]),
                PadicPolynomial(2, [2, 1]),
            )


class TestResultantConventions:
    def test_argument_swap_sign(self, rng):
        for _ in range(100):
            g = random_poly(rng, rng.randint(1, 4), 9)
            h = random_poly(rng, rng.randint(1, 4), 9)
            m, n = len(g) - 1, len(h) - 1
            assert resultant(g, h) == (-1) ** (m * n) * resultant(h, g)

    def test_root_product_identity(self):
        # res(g, h) = lead(g)^deg(h) * prod over roots a of g of h(a)
        g = [2, -3, 1]  # (T-1)(T-2)
        h = [-120, 74, -15, 1]  # (T-4)(T-5)(T-6)
        expected = (4 - 1) * (5 - 1) * (6 - 1) * (4 - 2) * (5 - 2) * (6 - 2)
        assert resultant(g, h) == expected

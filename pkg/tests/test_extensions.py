import math
from fractions import Fraction

import pytest

from localarith import (
    InvalidArgumentError,
    PadicPolynomial,
    TameExtensionDescriptor,
    classify_tame,
    count_tame_extensions,
    cyclotomic,
    eisenstein_invariants,
    galois_census,
    orbit_count_oracle,
    splitting_degree_of_unity,
    unit_group_structure,
)


class TestSplittingDegree:
    def test_examples(self):
        assert splitting_degree_of_unity(2, 7) == 3
        assert splitting_degree_of_unity(3, 8) == 2

    def test_divisor_of_q_minus_one(self):
        for q in (3, 4, 5, 7, 9):
            for n in range(1, q):
                if (q - 1) % n == 0:
                    assert splitting_degree_of_unity(q, n) == 1

    def test_gcd_precondition(self):
        with pytest.raises(InvalidArgumentError):
            splitting_degree_of_unity(4, 6)


class TestCounting:
    def test_examples(self):
        assert count_tame_extensions(2, 3, 2) == 2
        assert count_tame_extensions(3, 4, 1) == 2

    def test_totally_ramified_count(self):
        for q in (2, 3, 4, 5, 7, 9):
            p = 2 if q in (2, 4) else (3 if q == 9 else q)
            for e in range(1, 15):
                if e % p == 0:
                    continue
                assert count_tame_extensions(q, e, 1) == math.gcd(e, q - 1)

    def test_oracle_examples(self):
        assert orbit_count_oracle(3, 2) == 2
        assert orbit_count_oracle(1, 5) == 1
        # enumeration: {0},{4} fixed, {1,3},{2,6},{5,7} swapped by x -> 3x
        assert orbit_count_oracle(8, 3) == 5

    def test_wild_rejected(self):
        with pytest.raises(InvalidArgumentError):
            count_tame_extensions(4, 6, 1)

    def test_census(self):
        assert galois_census(2, 3, 2) == math.gcd(3, 1)
        assert galois_census(5, 4, 1) == 4


class TestClassification:
    def test_galois_not_abelian(self):
        c = classify_tame(TameExtensionDescriptor(2, 3, 2, 0))
        assert c.galois and not c.abelian
        assert c.presentation.order == 6

    def test_not_galois(self):
        assert not classify_tame(TameExtensionDescriptor(2, 3, 1, 0)).galois

    def test_abelian(self):
        c = classify_tame(TameExtensionDescriptor(5, 4, 1, 0))
        assert c.galois and c.abelian

    def test_presentation_closes(self):
        for q, e, f in [(2, 3, 2), (3, 4, 2), (2, 7, 3), (4, 5, 2), (5, 4, 1)]:
            g = math.gcd(e, q**f - 1)
            if g != e:
                continue
            for r in range(g):
                d = TameExtensionDescriptor(q, e, f, r)
                c = classify_tame(d)
                if c.galois:
                    assert c.presentation.verified_order() == e * f

    def test_descriptor_validation(self):
        with pytest.raises(InvalidArgumentError):
            TameExtensionDescriptor(2, 2, 1, 0)  # wild: 2 | char
        with pytest.raises(InvalidArgumentError):
            TameExtensionDescriptor(2, 3, 2, 5)  # r out of range

    def test_stacked_invariants_multiply(self):
        inner = TameExtensionDescriptor(2, 3, 2, 0)
        outer_e, outer_f = 5, 2
        stacked = TameExtensionDescriptor(
            inner.q, inner.e * outer_e, inner.f * outer_f, 0
        )
        assert stacked.e == inner.e * outer_e
        assert stacked.f == inner.f * outer_f


class TestUnitGroups:
    def test_examples(self):
        u = unit_group_structure(2, 5)
        assert u.factor_orders == (2, 8) and u.generators == (31, 5)
        assert unit_group_structure(3, 2).factor_orders == (2, 3)
        assert unit_group_structure(2, 2).factor_orders == (2,)

    def test_minimum_size(self):
        with pytest.raises(InvalidArgumentError):
            unit_group_structure(2, 1)

    def test_generators_have_claimed_orders(self):
        for p, n in [(3, 3), (5, 2), (7, 2), (2, 6), (11, 1)]:
            u = unit_group_structure(p, n)
            q = p**n
            for gen, order in zip(u.generators, u.factor_orders):
                assert pow(gen, order, q) == 1
                for d in range(1, order):
                    if order % d == 0 and pow(gen, d, q) == 1:
                        raise AssertionError(f"generator {gen} has smaller order {d}")


class TestEisensteinInvariants:
    def test_binomial(self):
        inv = eisenstein_invariants(PadicPolynomial(5, [-5, 0, 0, 1]))
        assert inv.ramification_index == 3
        assert inv.uniformiser_norm == (-1) ** 3 * (-5)
        assert inv.root_valuation == Fraction(1, 3)

    def test_shifted_cyclotomic(self):
        for p in (3, 5, 7):
            f = PadicPolynomial(p, cyclotomic(p, 1)).shifted_by_one()
            inv = eisenstein_invariants(f)
            assert inv.ramification_index == p - 1
            assert inv.uniformiser_norm == p
            assert inv.root_valuation == Fraction(1, p - 1)

    def test_prime_power_cyclotomic(self):
        for p, n in [(2, 2), (3, 2), (2, 3)]:
            f = PadicPolynomial(p, cyclotomic(p, n)).shifted_by_one()
            inv = eisenstein_invariants(f)
            assert inv.ramification_index == p**n - p ** (n - 1)
            assert abs(inv.uniformiser_norm) == p

    def test_non_eisenstein_rejected(self):
        with pytest.raises(InvalidArgumentError):
            eisenstein_invariants(PadicPolynomial(2, [-4, 0, 1]))


class TestDescriptorOrbits:
    def test_conjugates_collapse(self):
        d = TameExtensionDescriptor(2, 3, 2, 1)
        assert d.conjugates() == frozenset({1, 2})  # r and r*q mod g
        assert d.canonical().r == 1

    def test_canonical_count_matches_formula(self):
        import math as _math

        for q, e, f in [(2, 3, 2), (3, 4, 2), (4, 5, 2), (5, 8, 2), (9, 10, 1)]:
            g = _math.gcd(e, q**f - 1)
            canonical = {
                TameExtensionDescriptor(q, e, f, r).canonical().r for r in range(g)
            }
            assert len(canonical) == count_tame_extensions(q, e, f)

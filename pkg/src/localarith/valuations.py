"""Valuations and normalized absolute values on Q and on GF(q)(T).

On Q the finite place p carries |x|_p = p^(-v_p(x)) and the infinite
place the usual absolute value; with these normalizations the product
over all places is exactly 1.  On GF(q)(T) the places are the monic
irreducibles and the degree place; no transcendental absolute values are
ever materialized there: the product formula is checked additively as
sum deg(place) * v_place(x) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgumentError
from .finitefield import FqPoly, factor_monic
from .numtheory import (
    INFINITY,
    crt,
    factorint,
    is_prime,
    rational_valuation,
    require_prime,
)


# ---------------------------------------------------------------------------
# places of Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalPlace:
    """A place of Q: a finite prime or the archimedean place (prime=None)."""

    prime: int | None

    def __post_init__(self):
        if self.prime is not None:
            require_prime(self.prime)

    @classmethod
    def finite(cls, p: int) -> "RationalPlace":
        return cls(p)

    @classmethod
    def infinite(cls) -> "RationalPlace":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.prime is not None

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


def vp_rational(p: int, x) -> int | float:
    """p-adic valuation of a rational number; v_p(0) = +infinity."""
    require_prime(p)
    return rational_valuation(Fraction(x), p)


def normalized_absolute_value(place: RationalPlace, x) -> Fraction:
    """|x|_v with the product-formula normalization, as an exact Fraction."""
    x = Fraction(x)
    if not place.is_finite:
        return abs(x)
    if x == 0:
        return Fraction(0)
    v = rational_valuation(x, place.prime)
    return Fraction(place.prime) ** (-v)


@dataclass(frozen=True)
class ProductFormulaReport:
    entries: tuple[tuple[RationalPlace, Fraction], ...]
    product: Fraction


def product_formula_report(x) -> ProductFormulaReport:
    """Every place with |x|_v != 1, plus the infinite place; product is 1.

    The product of the listed normalized absolute values is computed
    exactly and returned alongside the per-place report.
    """
    x = Fraction(x)
    if x == 0:
        raise InvalidArgumentError("the product formula concerns nonzero rationals")
    primes = sorted(set(factorint(x.numerator)) | set(factorint(x.denominator)))
    entries = []
    product = Fraction(1)
    for p in primes:
        a = normalized_absolute_value(RationalPlace.finite(p), x)
        if a != 1:
            entries.append((RationalPlace.finite(p), a))
            product *= a
    a_inf = abs(x)
    entries.append((RationalPlace.infinite(), a_inf))
    product *= a_inf
    return ProductFormulaReport(tuple(entries), product)


# ---------------------------------------------------------------------------
# places of GF(q)(T)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionFieldPlace:
    """A place of GF(q)(T): a monic irreducible polynomial, or the degree
    place (poly=None), which has degree 1."""

    q: int
    poly: FqPoly | None

    def __post_init__(self):
        if self.poly is not None:
            if not self.poly.is_monic() or not self.poly.is_irreducible():
                raise InvalidArgumentError(
                    f"{self.poly!r} is not monic irreducible over GF({self.q})"
                )

    @classmethod
    def finite(cls, poly: FqPoly) -> "FunctionFieldPlace":
        return cls(poly.field.q, poly)

    @classmethod
    def infinite(cls, q: int) -> "FunctionFieldPlace":
        return cls(q, None)

    @property
    def is_finite(self) -> bool:
        return self.poly is not None

    @property
    def degree(self) -> int:
        return self.poly.degree if self.poly is not None else 1

    def __str__(self):
        return "inf" if self.poly is None else repr(self.poly)


def _poly_place_valuation(place_poly: FqPoly, f: FqPoly) -> int:
    v = 0
    while not f.is_zero() and place_poly.divides(f):
        f = f // place_poly
        v += 1
    return v


def ff_valuation(place: FunctionFieldPlace, num: FqPoly, den: FqPoly | None = None) -> int | float:
    """Valuation at a place of the rational function num/den over GF(q)."""
    if den is None or den.is_zero():
        if den is not None:
            raise InvalidArgumentError("denominator must be nonzero")
        den = FqPoly(num.field, (1,))
    if num.is_zero():
        return INFINITY
    if not place.is_finite:
        return den.degree - num.degree
    return _poly_place_valuation(place.poly, num) - _poly_place_valuation(place.poly, den)


@dataclass(frozen=True)
class SumFormulaReport:
    entries: tuple[tuple[FunctionFieldPlace, int], ...]
    total: int
    holds: bool


def sum_formula_check(num: FqPoly, den: FqPoly | None = None) -> SumFormulaReport:
    """Verify sum over places of deg(place) * v_place(x) = 0 for x = num/den."""
    if num.is_zero():
        raise InvalidArgumentError("the sum formula concerns nonzero functions")
    field = num.field
    if den is None:
        den = FqPoly(field, (1,))
    if den.is_zero():
        raise InvalidArgumentError("denominator must be nonzero")
    multiplicities: dict[FqPoly, int] = {}
    for f, e in factor_monic(num).items():
        multiplicities[f] = multiplicities.get(f, 0) + e
    for f, e in factor_monic(den).items():
        multiplicities[f] = multiplicities.get(f, 0) - e
    entries = []
    total = 0
    for f in sorted(multiplicities, key=lambda g: (g.degree, g.coeffs)):
        v = multiplicities[f]
        if v != 0:
            entries.append((FunctionFieldPlace.finite(f), v))
            total += f.degree * v
    v_inf = den.degree - num.degree
    if v_inf != 0:
        entries.append((FunctionFieldPlace.infinite(field.q), v_inf))
        total += v_inf
    return SumFormulaReport(tuple(entries), total, total == 0)


# ---------------------------------------------------------------------------
# Gauss valuations on polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussParameter:
    """The assigned value w(T) = C of the Gauss extension of a valuation."""

    C: Fraction

    def __post_init__(self):
        object.__setattr__(self, "C", Fraction(self.C))


def gauss_valuation(C, coeff_valuations) -> tuple[Fraction, frozenset[int]]:
    """Valuation of a polynomial under the extension with w(T) = C.

    ``C`` may be a GaussParameter or a raw rational.  Returns
    min_j (j*C + v_j) together with the set of indices attaining it; the
    infimum is attained more than once exactly when -C is a side slope of
    the Newton polygon.
    """
    C = Fraction(C.C if isinstance(C, GaussParameter) else C)
    best = None
    attaining: set[int] = set()
    for j, v in enumerate(coeff_valuations):
        if v == INFINITY:
            continue
        w = j * C + Fraction(v)
        if best is None or w < best:
            best, attaining = w, {j}
        elif w == best:
            attaining.add(j)
    if best is None:
        raise InvalidArgumentError("the zero polynomial has no Gauss valuation")
    return best, frozenset(attaining)


# ---------------------------------------------------------------------------
# weak approximation on Q
# ---------------------------------------------------------------------------


def weak_approximation(targets) -> Fraction:
    """Find one rational y with |x_j - y|_j < eps_j at every listed place.

    ``targets`` is a list of (RationalPlace, x_j, eps_j) with pairwise
    distinct places, at most one of them infinite.  Finite constraints are
    met by a CRT lift of the x_j; an archimedean window is then hit by
    adding (c/d) * prod p_j^(n_j) for a denominator d prime to every
    listed prime.  Exact and terminating: the classical construction
    through weights z^r/(1+z^r) needs a limit in r and is deliberately
    not used.
    """
    places = [t[0] for t in targets]
    if len(set(places)) != len(places):
        raise InvalidArgumentError("places must be pairwise distinct")
    finite = [(pl.prime, Fraction(x), Fraction(e)) for pl, x, e in targets if pl.is_finite]
    infinite = [(Fraction(x), Fraction(e)) for pl, x, e in targets if not pl.is_finite]
    for _, _, eps in finite:
        if eps <= 0:
            raise InvalidArgumentError("tolerances must be positive")
    primes = [p for p, _, _ in finite]
    for p, x, _ in finite:
        for q in primes:
            if rational_valuation(x, q) < 0:
                raise InvalidArgumentError(
                    f"target {x} has denominator divisible by the listed prime {q}"
                )

    if not finite:
        return infinite[0][0] if infinite else Fraction(0)
    if not infinite and len(finite) == 1:
        return finite[0][1]

    # smallest n with p^(-n) < eps, clamped at 0
    moduli, residues = [], []
    for p, x, eps in finite:
        n = 0
        while Fraction(p) ** (-n) >= eps:
            n += 1
        n = max(n, 0)
        moduli.append(p**n)
        residues.append(
            x.numerator * pow(x.denominator, -1, p**n) % p**n if n > 0 else 0
        )
    y0 = Fraction(crt(residues, moduli))
    if not infinite:
        return y0

    x_inf, eps_inf = infinite[0]
    if abs(y0 - x_inf) < eps_inf:
        return y0
    M = math.prod(moduli)
    aux = 2
    while aux in primes or not is_prime(aux):
        aux += 1
    d = aux
    while Fraction(M, 2 * d) >= eps_inf:
        d *= aux
    c = round((x_inf - y0) * d / M)
    return y0 + Fraction(c, d) * M

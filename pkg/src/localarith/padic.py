"""Finite-precision p-adic numbers.

A nonzero value is stored as unit * p^valuation + O(p^(valuation + N)):
the unit is an integer in [1, p^N) coprime to p and N >= 1 is the
relative precision in digits.  Exact zero (valuation +infinity) is kept
distinct from "zero at precision a" = O(p^a), which arises when equal-
valuation operands cancel through every stored digit; asking whether
such a value is zero raises PrecisionLossError instead of guessing.

Addition of operands with different valuations has exact result
valuation; multiplication and division always do.  Precision follows the
smallest absolute precision of the operands and is never silently
extended.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ExcludedCaseError,
    HypothesisFailedError,
    InvalidArgumentError,
    NotASquareError,
    PrecisionLossError,
)
from .numtheory import INFINITY, int_valuation, rational_valuation, require_prime

DEFAULT_PRECISION = 32


class PadicNumber:
    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p, valuation, unit, precision):
        # use the classmethod constructors; this does no normalization
        self.p = p
        self.valuation = valuation
        self.unit = unit
        self.precision = precision

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "PadicNumber":
        require_prime(p)
        return cls(p, INFINITY, None, INFINITY)

    @classmethod
    def zero_at(cls, p: int, abs_precision: int) -> "PadicNumber":
        """O(p^a): indistinguishable from zero below absolute precision a."""
        require_prime(p)
        return cls(p, abs_precision, None, 0)

    @classmethod
    def from_rational(cls, p: int, x, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        require_prime(p)
        if precision < 1:
            raise InvalidArgumentError("precision must be at least one digit")
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        vn = int_valuation(x.numerator, p)
        vd = int_valuation(x.denominator, p)
        v = vn - vd
        num = abs(x.numerator) // p**vn * (1 if x > 0 else -1)
        den = x.denominator // p**vd
        unit = num * pow(den, -1, p**precision) % p**precision
        return cls(p, v, unit, precision)

    @classmethod
    def _from_integer_at(cls, p, n: int, v, abs_precision) -> "PadicNumber":
        """Value n * p^v known modulo p^abs_precision."""
        if abs_precision == INFINITY:
            raise InvalidArgumentError("unbounded precision needs from_rational")
        rel = abs_precision - v
        n %= p**rel
        if n == 0:
            return cls.zero_at(p, abs_precision)
        t = int_valuation(n, p)
        unit = n // p**t % p ** (rel - t)
        return cls(p, v + t, unit, rel - t)

    # -- predicates -------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.unit is None and self.valuation == INFINITY

    @property
    def is_inexact_zero(self) -> bool:
        return self.unit is None and self.valuation != INFINITY

    @property
    def absolute_precision(self):
        return self.valuation + self.precision

    def is_zero(self) -> bool:
        """True only for exact zero; raises if zero-ness is undecidable."""
        if self.is_exact_zero:
            return True
        if self.is_inexact_zero:
            raise PrecisionLossError(
                f"value is O({self.p}^{self.valuation}): zero-ness undecidable"
            )
        return False

    # -- representatives --------------------------------------------------

    def as_fraction(self) -> Fraction:
        """The canonical rational representative unit * p^valuation."""
        if self.unit is None:
            if self.is_exact_zero:
                return Fraction(0)
            raise PrecisionLossError("no canonical representative of an inexact zero")
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def residue(self, k: int) -> int:
        """The integer representative modulo p^k (requires valuation >= 0)."""
        if self.is_exact_zero:
            return 0
        if self.is_inexact_zero:
            if k > self.valuation:
                raise PrecisionLossError(f"known only modulo {self.p}^{self.valuation}")
            return 0
        if self.valuation < 0:
            raise InvalidArgumentError("negative valuation: not a p-adic integer")
        if k > self.absolute_precision:
            raise PrecisionLossError(f"known only modulo {self.p}^{self.absolute_precision}")
        return self.unit * self.p**self.valuation % self.p**k

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise InvalidArgumentError(
                    f"mixed primes {self.p} and {other.p} in p-adic arithmetic"
                )
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicNumber.zero(self.p)
            v_other = rational_valuation(Fraction(other), self.p)
            if self.is_exact_zero:
                prec = DEFAULT_PRECISION
            elif self.is_inexact_zero:
                prec = max(1, self.valuation - v_other + 1)
            else:
                prec = max(1, self.precision, self.absolute_precision - v_other)
            return PadicNumber.from_rational(self.p, other, int(prec))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        cap = min(self.absolute_precision, other.absolute_precision)
        if self.unit is None or other.unit is None:
            live = other if self.unit is None else self
            if live.unit is None or live.valuation >= cap:
                return PadicNumber.zero_at(self.p, cap)
            return PadicNumber(self.p, live.valuation, live.unit % self.p ** (cap - live.valuation), cap - live.valuation)
        v = min(self.valuation, other.valuation)
        n = self.unit * self.p ** (self.valuation - v) + other.unit * self.p ** (
            other.valuation - v
        )
        return PadicNumber._from_integer_at(self.p, n, v, cap)

    __radd__ = __add__

    def __neg__(self):
        if self.unit is None:
            return self
        return PadicNumber(self.p, self.valuation, self.p**self.precision - self.unit, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_exact_zero or other.is_exact_zero:
            return PadicNumber.zero(self.p)
        if self.unit is None or other.unit is None:
            return PadicNumber.zero_at(self.p, self.valuation + other.valuation)
        n = min(self.precision, other.precision)
        return PadicNumber(
            self.p,
            self.valuation + other.valuation,
            self.unit * other.unit % self.p**n,
            n,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_exact_zero:
            raise InvalidArgumentError("division by exact zero")
        if other.is_inexact_zero:
            raise PrecisionLossError(
                f"division by a value indistinguishable from 0 (O({self.p}^{other.valuation}))"
            )
        if self.is_exact_zero:
            return self
        if self.is_inexact_zero:
            return PadicNumber.zero_at(self.p, self.valuation - other.valuation)
        n = min(self.precision, other.precision)
        return PadicNumber(
            self.p,
            self.valuation - other.valuation,
            self.unit * pow(other.unit, -1, self.p**n) % self.p**n,
            n,
        )

    def __rtruediv__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced / self

    def __eq__(self, other):
        """Indistinguishable at the shared precision (use is_zero for exact tests)."""
        if isinstance(other, (int, Fraction)) or isinstance(other, PadicNumber):
            d = self - other
            return d.unit is None
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        if self.is_exact_zero:
            return f"PadicNumber({self.p}, 0)"
        if self.is_inexact_zero:
            return f"O({self.p}^{self.valuation})"
        return f"{self.unit}*{self.p}^{self.valuation} + O({self.p}^{self.absolute_precision})"


# ---------------------------------------------------------------------------
# digit expansions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DigitExpansion:
    """Digits a_i in [0, p) of x = sum a_i p^i starting at i = start."""

    p: int
    start: int
    digits: tuple[int, ...]

    def value(self) -> Fraction:
        return sum(
            (Fraction(d) * Fraction(self.p) ** (self.start + i) for i, d in enumerate(self.digits)),
            Fraction(0),
        )

    def __str__(self):
        if not self.digits:
            return "0"
        return ",".join(str(d) for d in self.digits) + f" (from {self.p}^{self.start})"


def expansion(x: PadicNumber, count: int) -> DigitExpansion:
    """First ``count`` base-p digits of x, starting at its valuation.

    The digits reconstruct x modulo p^(valuation + count).  The expansion
    of exact zero is the empty expansion, by convention.
    """
    if x.is_exact_zero:
        return DigitExpansion(x.p, 0, ())
    if x.is_inexact_zero:
        raise PrecisionLossError("digits of an inexact zero are unknown")
    if count < 1 or count > x.precision:
        raise InvalidArgumentError(f"count must be in [1, {x.precision}]")
    digits = []
    u = x.unit
    for _ in range(count):
        u, d = divmod(u, x.p)
        digits.append(d)
    return DigitExpansion(x.p, x.valuation, tuple(digits))


# ---------------------------------------------------------------------------
# Teichmuller lift
# ---------------------------------------------------------------------------


def teichmuller(p: int, residue: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """The unique (p-1)-st root of unity congruent to ``residue`` mod p.

    Computed by iterating y <- y^p mod p^N to its fixed point, which each
    step reaches one digit deeper; at most N iterations are needed.
    """
    require_prime(p)
    if residue % p == 0:
        raise InvalidArgumentError("residue must be a unit modulo p")
    modulus = p**precision
    y = residue % modulus
    for _ in range(precision + 1):
        y_next = pow(y, p, modulus)
        if y_next == y:
            break
        y = y_next
    return PadicNumber(p, 0, y, precision)


# ---------------------------------------------------------------------------
# Newton / Hensel root lifting
# ---------------------------------------------------------------------------


def _poly_eval_int(coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_derivative_int(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def newton_lift(f, a0, p: int | None = None, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Lift an approximate root a0 of an integer polynomial to p^precision.

    Requires v(f(a0)) > 2 v(f'(a0)); the iteration a <- a - f(a)/f'(a)
    then converges quadratically and the result satisfies
    f(a) = 0 mod p^precision together with the displacement bound
    v(a - a0) >= v(f(a0)) - 2 v(f'(a0)).
    """
    if isinstance(a0, PadicNumber):
        if p is not None and p != a0.p:
            raise InvalidArgumentError("prime disagrees with the one carried by a0")
        p = a0.p
        if a0.is_inexact_zero:
            raise PrecisionLossError("starting point is an inexact zero")
        a_int = 0 if a0.is_exact_zero else a0.residue(int(a0.absolute_precision))
        a_prec = INFINITY if a0.is_exact_zero else a0.absolute_precision
    else:
        if p is None:
            raise InvalidArgumentError("a prime is required when a0 is an integer")
        require_prime(p)
        a_int, a_prec = int(a0), INFINITY
    raw = f.coefficients if hasattr(f, "coefficients") else list(f)
    coeffs = []
    for c in raw:
        c = Fraction(c)
        if c.denominator != 1:
            raise InvalidArgumentError("newton_lift expects integer coefficients")
        coeffs.append(int(c))

    fpa = _poly_eval_int(_poly_derivative_int(coeffs), a_int)
    t = int_valuation(fpa, p)
    if t == INFINITY:
        raise HypothesisFailedError("f'(a0) = 0: the convergence hypothesis fails")
    fa = _poly_eval_int(coeffs, a_int)
    v_fa = int_valuation(fa, p)
    if v_fa < a_prec:
        if v_fa <= 2 * t:
            raise HypothesisFailedError(
                f"v(f(a0)) = {v_fa} is not > 2 v(f'(a0)) = {2 * t}"
            )
    elif a_prec <= 2 * t:
        raise PrecisionLossError(
            "cannot certify v(f(a0)) > 2v(f'(a0)) at the precision of a0"
        )

    M = precision + 2 * t + 1
    modulus = p**M
    a = a_int % modulus
    for _ in range(2 * precision + 4):
        fa = _poly_eval_int(coeffs, a) % modulus
        if fa == 0 or int_valuation(fa, p) >= precision + t:
            break
        fpa = _poly_eval_int(_poly_derivative_int(coeffs), a)
        w = fpa // p**t
        delta = (fa // p**t) * pow(w, -1, modulus) % modulus
        a = (a - delta) % modulus
    else:
        raise HypothesisFailedError("Newton iteration failed to converge")
    return PadicNumber._from_integer_at(p, a % p**precision, 0, precision)


# ---------------------------------------------------------------------------
# squares and square classes
# ---------------------------------------------------------------------------


def _unit_is_square(p: int, unit: int, known_digits) -> bool:
    if p == 2:
        if known_digits < 3:
            raise PrecisionLossError("squareness mod 2 needs the unit modulo 8")
        return unit % 8 == 1
    return pow(unit % p, (p - 1) // 2, p) == 1


def is_square(x: PadicNumber) -> bool:
    """Whether x is a square in Q_p: even valuation and square unit part
    (a quadratic residue mod p for odd p, congruent to 1 mod 8 for p=2)."""
    if x.is_exact_zero:
        raise InvalidArgumentError("squareness of 0 is excluded; take x nonzero")
    if x.is_inexact_zero:
        raise PrecisionLossError("squareness of an inexact zero is undecidable")
    if x.valuation % 2 != 0:
        return False
    return _unit_is_square(x.p, x.unit, x.precision)


def sqrt(x: PadicNumber) -> PadicNumber:
    """A square root of x, found by Newton lifting from a mod-p witness.

    The result has relative precision N for odd p and N-1 for p = 2,
    which is all the input determines.
    """
    if not is_square(x):
        raise NotASquareError(f"{x!r} is not a square in Q_{x.p}")
    p, u = x.p, x.unit
    if p == 2:
        root = newton_lift([-u, 0, 1], 1, p=2, precision=x.precision + 2)
        out_prec = x.precision - 1
    else:
        a0 = next(r for r in range(1, p) if r * r % p == u % p)
        root = newton_lift([-u, 0, 1], a0, p=p, precision=x.precision)
        out_prec = x.precision
    return PadicNumber(p, x.valuation // 2, root.unit % p**out_prec, out_prec)


def square_class_basis(p: int) -> list[int]:
    """Representatives generating Q_p^x modulo squares.

    For odd p the class group has order 4 with basis [b, p], b the least
    positive non-residue; for p = 2 it has order 8 with basis [5, 3, 2].
    """
    require_prime(p)
    if p == 2:
        return [5, 3, 2]
    b = next(r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1)
    return [b, p]


# ---------------------------------------------------------------------------
# the p-th power map on the unit filtration
# ---------------------------------------------------------------------------


def unit_filtration_level(p: int, u, precision: int = DEFAULT_PRECISION):
    """Largest n with u in U_n, the units congruent to 1 modulo p^n.

    Returns 0 for units outside U_1, +infinity for u = 1; otherwise the
    level is v_p(u - 1).  Raises PrecisionLossError when u is 1 to the
    available precision without being exactly 1.
    """
    require_prime(p)
    if not isinstance(u, PadicNumber) and Fraction(u) == 1:
        return INFINITY
    rep = _unit_representative(p, u, precision)
    if rep == 1:
        raise PrecisionLossError(
            f"u = 1 + O(p^{precision}): the filtration level exceeds the precision"
        )
    return int_valuation(rep - 1, p)


def _unit_representative(p, u, precision):
    if isinstance(u, PadicNumber):
        if u.p != p:
            raise InvalidArgumentError("prime mismatch")
        if u.unit is None or u.valuation != 0:
            raise InvalidArgumentError("u must be a unit")
        if u.precision < precision:
            raise PrecisionLossError(
                f"u carries {u.precision} digits but {precision} are required"
            )
        return u.unit % p**precision
    x = Fraction(u)
    if x.numerator % p == 0 or x.denominator % p == 0:
        raise InvalidArgumentError("u must be a unit")
    return x.numerator * pow(x.denominator, -1, p**precision) % p**precision


def pth_power_on_units(
    p: int, n: int, direction: str, u, precision: int = DEFAULT_PRECISION
) -> PadicNumber:
    """The bijection x -> x^p between U_n and U_{n+1}, either direction.

    Valid for n > 1/(p-1): n >= 1 for odd p, n >= 2 for p = 2.  The case
    p = 2, n = 1 is excluded: squaring on U_1 is neither injective nor
    surjective (the kernel is generated by -1).
    """
    require_prime(p)
    if p == 2 and n == 1:
        raise ExcludedCaseError(
            "p=2, n=1 excluded: squaring U_1 -> U_2 is neither injective nor surjective"
        )
    if n < 1:
        raise InvalidArgumentError("n must be at least 1")
    if direction not in ("forward", "inverse"):
        raise InvalidArgumentError("direction must be 'forward' or 'inverse'")
    modulus = p**precision
    u_int = _unit_representative(p, u, precision)
    level = n if direction == "forward" else n + 1
    if u_int != 1 and int_valuation(u_int - 1, p) < level:
        raise InvalidArgumentError(
            f"u is not in U_{level}: its filtration level is "
            f"{int_valuation(u_int - 1, p)}"
        )

    if direction == "forward":
        return PadicNumber(p, 0, pow(u_int, p, modulus), precision)

    # digit-by-digit lift of the p-th root inside U_n: after the step for
    # exponent m, x^p = u holds modulo p^(m+1)
    x = 1
    for m in range(n + 1, precision):
        diff = (u_int - pow(x, p, p ** (m + 1))) % p ** (m + 1)
        d = diff // p**m % p
        x = x * (1 + d * p ** (m - 1)) % modulus
    if pow(x, p, modulus) != u_int:
        raise HypothesisFailedError("p-th root lifting failed")  # unreachable for valid input
    return PadicNumber(p, 0, x, precision)

"""Bernoulli numbers, power sums and the von Staudt-Clausen decomposition.

B_k is defined by T/(e^T - 1) = sum B_k T^k / k!; computationally we use
the equivalent recurrence sum_{j<=k} C(k+1, j) B_j = 0, which is exact
and O(k^2) with rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InvalidArgumentError
from .numtheory import divisors, is_prime


class BernoulliTable:
    """Memoized Bernoulli numbers.

    The table is append-only and meant for single-writer use; share one
    per thread or guard it externally.
    """

    def __init__(self):
        self._values = [Fraction(1), Fraction(-1, 2)]

    def value(self, k: int) -> Fraction:
        if k < 0:
            raise InvalidArgumentError("Bernoulli numbers have non-negative index")
        if k > 1 and k % 2 == 1:
            return Fraction(0)
        while len(self._values) <= k:
            m = len(self._values)
            acc = sum(comb(m + 1, j) * self._values[j] for j in range(m))
            self._values.append(Fraction(-acc, m + 1))
        return self._values[k]


def bernoulli(k: int, table: BernoulliTable | None = None) -> Fraction:
    """Exact k-th Bernoulli number; B_0 = 1, B_1 = -1/2."""
    return (table or BernoulliTable()).value(k)


def power_sum(k: int, n: int) -> int:
    """S_k(n) = 1^k + 2^k + ... + (n-1)^k by direct summation."""
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    return sum(j**k for j in range(1, n))


def power_sum_faulhaber(k: int, n: int, table: BernoulliTable | None = None) -> int:
    """S_k(n) evaluated through Bernoulli numbers; agrees with power_sum."""
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    table = table or BernoulliTable()
    acc = sum(
        comb(k, m) * table.value(m) * Fraction(n) ** (k + 1 - m) / (k + 1 - m)
        for m in range(k + 1)
    )
    if k == 0:
        acc -= 1  # the closed form counts the j = 0 term, S_k(n) does not
    if acc.denominator != 1:
        raise InvalidArgumentError(f"Faulhaber sum S_{k}({n}) is not an integer")
    return int(acc)


@dataclass(frozen=True)
class StaudtClausen:
    k: int
    integer_part: int  # B_k + sum 1/l over primes with l-1 | k
    denominator: int
    primes: tuple[int, ...]


def staudt_clausen(k: int, table: BernoulliTable | None = None) -> StaudtClausen:
    """Integrality decomposition of B_k for even k > 0.

    The primes are exactly the l with l-1 dividing k; their product is
    the denominator of B_k in lowest terms, and adding sum 1/l to B_k
    leaves an integer.
    """
    if k <= 0 or k % 2 != 0:
        raise InvalidArgumentError("the decomposition applies to even k > 0")
    primes = tuple(d + 1 for d in divisors(k) if is_prime(d + 1))
    w = bernoulli(k, table) + sum(Fraction(1, l) for l in primes)
    if w.denominator != 1:
        raise InvalidArgumentError(f"B_{k} + sum 1/l is not an integer")  # unreachable
    denominator = 1
    for l in primes:
        denominator *= l
    return StaudtClausen(k, int(w), denominator, primes)

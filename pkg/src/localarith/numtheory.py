"""Elementary integer number theory helpers (desk scale, exact).

Everything here works with plain Python integers and stays exact.  The
factoring routines use trial division and are meant for the moderate
sizes this package deals in, not cryptographic ones.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvalidArgumentError

INFINITY = float("inf")

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgumentError(f"{p!r} is not a prime number")
    return p


def factorint(n: int) -> dict[int, int]:
    """Factor |n| by trial division; returns {prime: exponent}."""
    if n == 0:
        raise InvalidArgumentError("cannot factor 0")
    n = abs(n)
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n > 0."""
    ds = [1]
    for p, e in factorint(n).items():
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorint(n).items():
        phi *= p ** (e - 1) * (p - 1)
    return phi


def multiplicative_order(a: int, n: int) -> int:
    """Order of a in (Z/nZ)^*; requires gcd(a, n) = 1."""
    if n <= 0 or math.gcd(a, n) != 1:
        raise InvalidArgumentError(f"{a} is not invertible modulo {n}")
    if n == 1:
        return 1
    order = euler_phi(n)
    for p in factorint(order):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def least_primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)^* for an odd prime p."""
    require_prime(p)
    if p == 2:
        return 1
    target = p - 1
    for g in range(2, p):
        if multiplicative_order(g, p) == target:
            return g
    raise InvalidArgumentError(f"no primitive root modulo {p}")  # unreachable


def crt(residues: list[int], moduli: list[int]) -> int:
    """Least non-negative solution of x = r_i (mod m_i), pairwise coprime m_i."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        if math.gcd(m, mi) != 1:
            raise InvalidArgumentError("crt moduli must be pairwise coprime")
        h = (r - x) * pow(m, -1, mi) % mi
        x += m * h
        m *= mi
    return x % m


def int_valuation(n: int, p: int) -> int | float:
    """Exponent of p in n; n = 0 gives +infinity."""
    if n == 0:
        return INFINITY
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(x, p: int) -> int | float:
    """p-adic valuation of a Fraction or int; 0 gives +infinity."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Write q = p^m with p prime, or raise."""
    if q < 2:
        raise InvalidArgumentError(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise InvalidArgumentError(f"{q} is not a prime power")
    ((p, m),) = factors.items()
    return p, m

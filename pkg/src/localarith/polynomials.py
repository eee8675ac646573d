"""Polynomials over Q_p at finite precision.

Coefficients are exact rationals tagged with the prime p, so coefficient
valuations are always exact; finite-precision outputs (lifted factors,
slope factors) carry integer representatives modulo p^N.  No floating
point is used anywhere: Newton polygons are built with exact rational
slope comparisons, and all linear algebra is either exact over Q or
modular over Z/p^M with minimal-valuation pivoting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HypothesisFailedError,
    InvalidArgumentError,
    PrecisionLossError,
)
from .numtheory import INFINITY, int_valuation, rational_valuation, require_prime
from .valuations import gauss_valuation


# ---------------------------------------------------------------------------
# exact polynomial helpers over Q (ascending coefficient tuples)
# ---------------------------------------------------------------------------


def _trim(coeffs):
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    )


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(0, len(rem) - len(b) + 1)
    inv_lead = 1 / Fraction(b[-1])
    for i in range(len(rem) - len(b), -1, -1):
        c = rem[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return _trim(q), _trim(rem)


def poly_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_derivative(a):
    return _trim([i * c for i, c in enumerate(a)][1:])


def poly_scale(a, c):
    return _trim([c * x for x in a])


# ---------------------------------------------------------------------------
# the polynomial type
# ---------------------------------------------------------------------------


class PadicPolynomial:
    """Polynomial with exact rational coefficients viewed over Q_p."""

    __slots__ = ("p", "coefficients")

    def __init__(self, p: int, coefficients):
        require_prime(p)
        cs = _trim([Fraction(c) for c in coefficients])
        if not cs:
            raise InvalidArgumentError("the zero polynomial is not representable")
        self.p = p
        self.coefficients = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient_valuations(self):
        return [rational_valuation(c, self.p) for c in self.coefficients]

    def evaluate(self, x) -> Fraction:
        return poly_eval(self.coefficients, Fraction(x))

    def derivative(self) -> "PadicPolynomial":
        return PadicPolynomial(self.p, poly_derivative(self.coefficients))

    def __mul__(self, other):
        self._check(other)
        return PadicPolynomial(self.p, poly_mul(self.coefficients, other.coefficients))

    def __add__(self, other):
        self._check(other)
        return PadicPolynomial(self.p, poly_add(self.coefficients, other.coefficients))

    def __sub__(self, other):
        self._check(other)
        return PadicPolynomial(self.p, poly_sub(self.coefficients, other.coefficients))

    def _check(self, other):
        if not isinstance(other, PadicPolynomial) or other.p != self.p:
            raise InvalidArgumentError("operands must share the same prime")

    def __eq__(self, other):
        return (
            isinstance(other, PadicPolynomial)
            and self.p == other.p
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.p, self.coefficients))

    def shifted_by_one(self) -> "PadicPolynomial":
        """The polynomial f(S + 1) in the variable S."""
        out = [Fraction(0)] * len(self.coefficients)
        for j, c in enumerate(self.coefficients):
            if c:
                for k in range(j + 1):
                    out[k] += c * math.comb(j, k)
        return PadicPolynomial(self.p, out)

    def strip_t_power(self) -> tuple[int, "PadicPolynomial"]:
        """Split off the exact power of T dividing the polynomial."""
        k = 0
        while self.coefficients[k] == 0:
            k += 1
        return k, PadicPolynomial(self.p, self.coefficients[k:])

    def __repr__(self):
        from .formats import format_polynomial

        return f"PadicPolynomial(p={self.p}, {format_polynomial(self.coefficients)})"


# ---------------------------------------------------------------------------
# resultants and discriminants (exact Sylvester determinants)
# ---------------------------------------------------------------------------


def sylvester_matrix(g, h, m: int, n: int):
    """The (m+n) x (m+n) matrix whose determinant is res_{m,n}(g, h).

    Column j < n carries the coefficients of g, column n+j those of h:
    entry (i, j) = g_{m-i+j} and entry (i, n+j) = h_{n-i+j}.  This is the
    layout fixed by the m=2, n=3 display and makes the first n unknowns
    of the associated linear system the descending coefficients of the
    cofactor multiplying g.
    """
    if m + n <= 0:
        raise InvalidArgumentError("resultant requires m + n > 0")
    gc = [Fraction(c) for c in g] + [Fraction(0)] * (m + 1 - len(g))
    hc = [Fraction(c) for c in h] + [Fraction(0)] * (n + 1 - len(h))
    size = m + n
    rows = []
    for i in range(size):
        row = []
        for j in range(n):
            k = m - i + j
            row.append(gc[k] if 0 <= k <= m else Fraction(0))
        for j in range(m):
            k = n - i + j
            row.append(hc[k] if 0 <= k <= n else Fraction(0))
        rows.append(row)
    return rows


def _det(matrix) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    a = [row[:] for row in matrix]
    size = len(a)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, size):
            if a[r][col]:
                factor = a[r][col] * inv
                for c in range(col, size):
                    a[r][c] -= factor * a[col][c]
    return det


def _coeffs_of(f):
    if isinstance(f, PadicPolynomial):
        return list(f.coefficients)
    return _trim([Fraction(c) for c in f])


def resultant_mn(g, h, m: int, n: int) -> Fraction:
    return _det(sylvester_matrix(_coeffs_of(g), _coeffs_of(h), m, n))


def resultant(g, h) -> Fraction:
    """res(g, h) at the exact degrees of g and h.

    With the adopted column order, swapping the arguments flips the sign
    by (-1)^(deg g * deg h): res(g, h) = (-1)^(mn) res(h, g).
    """
    gc, hc = _coeffs_of(g), _coeffs_of(h)
    if not gc or not hc:
        raise InvalidArgumentError("resultant of the zero polynomial")
    return resultant_mn(gc, hc, len(gc) - 1, len(hc) - 1)


def discriminant(g) -> Fraction:
    """dis(g), from res_{m,m-1}(g, g') = (-1)^(m(m-1)/2) * lead(g) * dis(g)."""
    gc = _coeffs_of(g)
    if len(gc) < 2:
        raise InvalidArgumentError("discriminant needs degree >= 1")
    m = len(gc) - 1
    r = resultant_mn(gc, poly_derivative(gc), m, m - 1)
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * r / gc[-1]


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex envelope of the points (j, v(a_j)).

    ``sides`` is the type: a tuple of (length, slope) pairs with strictly
    increasing slopes whose lengths sum to the degree.
    """

    vertices: tuple[tuple[int, Fraction], ...]
    sides: tuple[tuple[int, Fraction], ...]

    @property
    def is_pure(self) -> bool:
        return len(self.sides) == 1


def newton_polygon(f: PadicPolynomial) -> NewtonPolygon:
    """Newton polygon of f; requires a_0 != 0 and a_m != 0."""
    if f.coefficients[0] == 0:
        raise InvalidArgumentError(
            "constant term vanishes: strip the exact T power first (strip_t_power)"
        )
    vals = f.coefficient_valuations()
    points = [(j, Fraction(v)) for j, v in enumerate(vals) if v != INFINITY]
    hull: list[tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x2) >= (pt[1] - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    sides = tuple(
        (x2 - x1, Fraction(y2 - y1, x2 - x1))
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(hull), sides)


def root_valuations(f: PadicPolynomial) -> tuple[list[tuple[Fraction, int]], int]:
    """Valuations of the roots of f, read off the Newton polygon.

    Returns ([(valuation, multiplicity), ...], k) where k is the
    multiplicity of the root 0 (the exact power of T stripped first).
    A side of type (l, gamma) contributes l roots of valuation -gamma.
    """
    k, body = f.strip_t_power()
    if body.degree == 0:
        return [], k
    polygon = newton_polygon(body)
    return [(-gamma, length) for length, gamma in polygon.sides], k


# ---------------------------------------------------------------------------
# Eisenstein and cyclotomic polynomials
# ---------------------------------------------------------------------------


def eisenstein_test(f: PadicPolynomial) -> bool:
    """v(a_0) = 1, v(a_i) > 0 for 0 < i < m, v(a_m) = 0.

    A polynomial passing this test is irreducible over Q_p and defines a
    totally ramified extension of degree m.
    """
    vals = f.coefficient_valuations()
    if len(vals) < 2:
        return False
    return (
        vals[0] == 1
        and vals[-1] == 0
        and all(v > 0 for v in vals[1:-1])
    )


def cyclotomic(p: int, n: int) -> list[int]:
    """Coefficients of the p^n-th cyclotomic polynomial Phi_p(T^(p^(n-1)))."""
    require_prime(p)
    if n < 1:
        raise InvalidArgumentError("n must be at least 1")
    step = p ** (n - 1)
    out = [0] * ((p - 1) * step + 1)
    for i in range(p):
        out[i * step] = 1
    return out


# ---------------------------------------------------------------------------
# modular linear algebra (Z/p^M with minimal-valuation pivoting)
# ---------------------------------------------------------------------------


def _solve_mod_prime_power(p, M, matrix, rhs):
    """Solve A x = b over Z/p^M where v_p(det A) = beta < M.

    Entries are integers; returns (x, beta) with x valid modulo
    p^(M - beta).  Pivots are chosen with minimal valuation, so the spent
    precision is exactly beta.
    """
    mod = p**M
    size = len(matrix)
    a = [[matrix[i][j] % mod for j in range(size)] + [rhs[i] % mod] for i in range(size)]
    beta = 0
    for col in range(size):
        best, best_v = None, M
        for r in range(col, size):
            v = int_valuation(a[r][col], p)
            if v < best_v:
                best, best_v = r, v
        if best is None or best_v >= M:
            raise HypothesisFailedError("matrix is singular at this precision")
        if best != col:
            a[col], a[best] = a[best], a[col]
        beta += best_v
        t, u = best_v, a[col][col] // p**best_v
        inv_u = pow(u, -1, mod)
        for r in range(col + 1, size):
            if a[r][col]:
                factor = a[r][col] * inv_u % mod // p**t
                for c in range(col, size + 1):
                    a[r][c] = (a[r][c] - factor * a[col][c]) % mod
    xs = [0] * size
    for col in range(size - 1, -1, -1):
        acc = a[col][size]
        for c in range(col + 1, size):
            acc -= a[col][c] * xs[c]
        acc %= mod
        t = int_valuation(a[col][col], p)
        u = a[col][col] // p**t
        if acc % p**t:
            raise PrecisionLossError("solution is not integral at this precision")
        xs[col] = acc // p**t * pow(u, -1, mod) % mod
    return xs, beta


def _int_reps(p, M, coeffs):
    """Canonical integer representatives modulo p^M of p-integral rationals."""
    mod = p**M
    out = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise InvalidArgumentError(f"coefficient {c} is not p-integral")
        out.append(c.numerator * pow(c.denominator, -1, mod) % mod)
    return out


def _min_val(p, ints, M):
    vals = [int_valuation(c, p) for c in ints if c]
    return min(vals) if vals else M


# ---------------------------------------------------------------------------
# Hensel lifting of factorizations (discrete valuation version)
# ---------------------------------------------------------------------------


def hensel_lift_factors(
    f: PadicPolynomial,
    g0: PadicPolynomial,
    h0: PadicPolynomial,
    alpha: int,
    precision: int,
) -> tuple[PadicPolynomial, PadicPolynomial]:
    """Lift an approximate factorization f = g0*h0 to one modulo p^precision.

    Requires res(g0, h0) != 0 mod p^(alpha+1), f = g0*h0 mod p^(2*alpha+1)
    and equal leading terms.  The returned pair is the unique one with
    g = g0 and h = h0 mod p^(alpha+1) and the leading terms of g0, h0.
    Each round solves the degree-bounded Sylvester system of (g0, h0)
    modulo p^(alpha+1) for the current defect, gaining at least one digit.
    """
    p = f.p
    if g0.p != p or h0.p != p:
        raise InvalidArgumentError("all polynomials must share one prime")
    m, n = g0.degree, h0.degree
    if f.degree != m + n or f.coefficients[-1] != g0.coefficients[-1] * h0.coefficients[-1]:
        raise HypothesisFailedError("f and g0*h0 must have the same leading term")
    res = resultant(g0, h0)
    beta = rational_valuation(res, p)
    if beta == INFINITY or beta > alpha:
        raise HypothesisFailedError(
            f"res(g0, h0) = 0 mod p^{alpha + 1}: residual factors not coprime enough"
        )
    defect0 = poly_sub(f.coefficients, poly_mul(g0.coefficients, h0.coefficients))
    if any(rational_valuation(c, p) < 2 * alpha + 1 for c in defect0):
        raise HypothesisFailedError(f"f != g0*h0 mod p^{2 * alpha + 1}")

    M = precision + 2 * alpha + 2
    mod = p**M
    f_i = _int_reps(p, M, f.coefficients)
    g = _int_reps(p, M, g0.coefficients)
    h = _int_reps(p, M, h0.coefficients)

    # the Sylvester system of (g0, h0); modulo p^(alpha+1) it stays the
    # system of every later (g_i, h_i), so it is built once
    matrix = [[int(c) for c in row] for row in sylvester_matrix(g, h, m, n)]
    m_small = alpha + int(beta) + 2

    def pm(a, b):
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % mod
        return out

    for _ in range(precision + 2):
        gh = pm(g, h)
        diff = [(fc - (gh[i] if i < len(gh) else 0)) % mod for i, fc in enumerate(f_i)]
        d = _min_val(p, diff, M)
        if d >= precision:
            break
        big_f = [c // p**d for c in diff]
        # solve p^alpha * F = g*H1 + h*G1 with deg H1 < n, deg G1 < m
        rhs = [
            p**alpha * (big_f[m + n - 1 - i] if m + n - 1 - i < len(big_f) else 0)
            for i in range(m + n)
        ]
        x, _ = _solve_mod_prime_power(p, m_small, matrix, rhs)
        h1 = list(reversed(x[:n]))
        g1 = list(reversed(x[n:]))
        scale = p ** (d - alpha)
        g = [(gc + scale * (g1[i] if i < len(g1) else 0)) % mod for i, gc in enumerate(g)]
        h = [(hc + scale * (h1[i] if i < len(h1) else 0)) % mod for i, hc in enumerate(h)]
    else:
        raise HypothesisFailedError("factor lifting failed to converge")

    modN = p**precision
    g_out = [c % modN for c in g]
    h_out = [c % modN for c in h]
    # restore the exact leading terms (reduction may have zeroed them)
    g_out[-1] = g0.coefficients[-1]
    h_out[-1] = h0.coefficients[-1]
    return PadicPolynomial(p, g_out), PadicPolynomial(p, h_out)


def refine_factorization(
    f: PadicPolynomial,
    big_g: PadicPolynomial,
    big_h: PadicPolynomial,
    precision: int,
) -> tuple[PadicPolynomial, PadicPolynomial]:
    """Resultant-controlled refinement of f ~ G*H, quadratic per round.

    Requires w(f - GH) > 2 v(res(G, H)) (the discriminant variant
    w(f - GH) > v(dis(f)) implies it) and equal leading terms.  Each round
    solves the Sylvester system of the current pair, so the defect at
    least doubles net of 2 v(res)."""
    p = f.p
    s, t = big_g.degree, big_h.degree
    if f.degree != s + t or f.coefficients[-1] != big_g.coefficients[-1] * big_h.coefficients[-1]:
        raise HypothesisFailedError("f and G*H must have the same leading term")
    res = resultant(big_g, big_h)
    beta = rational_valuation(res, p)
    defect0 = poly_sub(f.coefficients, poly_mul(big_g.coefficients, big_h.coefficients))
    w0 = min((rational_valuation(c, p) for c in defect0), default=INFINITY)
    if w0 == INFINITY:
        return big_g, big_h
    if beta == INFINITY or w0 <= 2 * beta:
        raise HypothesisFailedError(
            f"w(f - GH) = {w0} is not > 2 v(res(G, H)) = {2 * beta}"
        )

    M = precision + 2 * beta + 2
    mod = p**M
    f_i = _int_reps(p, M, f.coefficients)
    g = _int_reps(p, M, big_g.coefficients)
    h = _int_reps(p, M, big_h.coefficients)

    def pm(a, b):
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % mod
        return out

    for _ in range(precision + 2):
        gh = pm(g, h)
        diff = [(f_i[i] - (gh[i] if i < len(gh) else 0)) % mod for i in range(len(f_i))]
        d = _min_val(p, diff, M)
        if d >= precision:
            break
        matrix = sylvester_matrix(g, h, s, t)
        rhs = [diff[s + t - 1 - i] for i in range(s + t)]
        x, _ = _solve_mod_prime_power(p, M, [[int(c) for c in row] for row in matrix], rhs)
        delta = list(reversed(x[:t]))  # added to H
        gamma = list(reversed(x[t:]))  # added to G
        g = [(gc + (gamma[i] if i < len(gamma) else 0)) % mod for i, gc in enumerate(g)]
        h = [(hc + (delta[i] if i < len(delta) else 0)) % mod for i, hc in enumerate(h)]
    else:
        raise HypothesisFailedError("refinement failed to converge")

    modN = p**precision
    g_out = [c % modN for c in g]
    h_out = [c % modN for c in h]
    g_out[-1] = big_g.coefficients[-1]
    h_out[-1] = big_h.coefficients[-1]
    return PadicPolynomial(p, g_out), PadicPolynomial(p, h_out)


# ---------------------------------------------------------------------------
# slope factorization
# ---------------------------------------------------------------------------


def _truncate_coefficient(c: Fraction, p: int, abs_precision: Fraction) -> Fraction:
    """A small representative of c modulo p^ceil(abs_precision)."""
    if c == 0:
        return c
    v = rational_valuation(c, p)
    k = math.ceil(abs_precision - v)
    if k <= 0:
        return Fraction(0)
    unit = c / Fraction(p) ** v
    rep = unit.numerator * pow(unit.denominator, -1, p**k) % p**k
    return rep * Fraction(p) ** v


def _gauss_w(p, coeffs, C):
    vals = [rational_valuation(c, p) for c in coeffs]
    if all(v == INFINITY for v in vals):
        return INFINITY
    return gauss_valuation(C, vals)[0]


def _split_first_side(p, coeffs, n, gamma, target_w, step_budget):
    """Split off the factor carrying the first polygon side (slope gamma).

    Iterates the division step of the side-splitting lemma with the Gauss
    valuation w(T) = -gamma until w(f - G*H) >= target_w; every round
    certifiably gains w(f - f_n) - w(f) > 0.
    """
    C = -gamma
    f_n = coeffs[: n + 1]
    w_f = _gauss_w(p, coeffs, C)
    w_tail = _gauss_w(p, [Fraction(0)] * (n + 1) + coeffs[n + 1 :], C)
    delta = w_tail - w_f
    if delta <= 0:
        raise PrecisionLossError("cannot certify the side gap at this precision")
    budget = step_budget or math.ceil((target_w - w_f) / delta) + 4
    # truncation floors: dropped mass in g stays above target_w, dropped
    # mass in h re-enters through multiplication by g (+w_f) and through
    # division by g (-w_f), which cancel; floors are therefore stable
    cap_g = target_w + 2
    cap_h = target_w + 2 - w_f

    def crop(poly, cap):
        return _trim(
            [_truncate_coefficient(c, p, cap - j * C) for j, c in enumerate(poly)]
        )

    g, h = crop(list(f_n), cap_g), [Fraction(1)]
    for _ in range(budget):
        e = poly_sub(coeffs, poly_mul(g, h))
        if not e or _gauss_w(p, e, C) >= target_w:
            break
        q, r = poly_divmod(e, g)
        g = crop(poly_add(g, r), cap_g)
        h = crop(poly_add(h, q), cap_h)
    else:
        raise PrecisionLossError("side splitting exceeded its step budget")
    return g, h


def slope_factorization(
    f: PadicPolynomial, precision: int, step_budget: int | None = None
) -> list[tuple[PadicPolynomial, tuple[int, Fraction]]]:
    """Factor f into pure polynomials, one per Newton polygon side.

    The factors are ordered by increasing slope, factor i is pure of the
    i-th type entry, and their product agrees with f coefficientwise
    modulo p^precision (exact check; PrecisionLossError if the working
    slack was insufficient).
    """
    if f.coefficients[0] == 0:
        raise InvalidArgumentError("f(0) = 0: strip the exact T power first")
    p = f.p
    polygon = newton_polygon(f)
    if polygon.is_pure:
        return [(f, polygon.sides[0])]

    slack = 8
    work = list(f.coefficients)
    factors: list[list[Fraction]] = []
    for length, gamma in polygon.sides[:-1]:
        deg = len(work) - 1
        target = precision + slack + max(Fraction(0), -gamma * deg)
        g, h = _split_first_side(p, work, length, gamma, target, step_budget)
        if len(g) - 1 != length:
            raise PrecisionLossError("split factor has the wrong degree")
        factors.append(g)
        work = h
    factors.append(work)

    product = [Fraction(1)]
    for fac in factors:
        product = poly_mul(product, fac)
    err = poly_sub(list(f.coefficients), product)
    if any(rational_valuation(c, p) < precision for c in err):
        raise PrecisionLossError(
            "factor product does not match f at the requested precision"
        )
    out = []
    for fac, side in zip(factors, polygon.sides):
        poly = PadicPolynomial(p, fac)
        got = newton_polygon(poly)
        if not got.is_pure or got.sides[0] != side:
            raise PrecisionLossError("split factor is not pure of the expected type")
        out.append((poly, side))
    return out


# ---------------------------------------------------------------------------
# Weierstrass preparation on truncated series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 T + ... + c_M T^M with v(c_i) >= tail for all i > M.

    Models an element of the ring of series whose coefficients tend to 0;
    the finite tail bound is what certifies membership.
    """

    p: int
    coefficients: tuple[Fraction, ...]
    tail: int

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def weighted_valuation(self):
        vals = [rational_valuation(c, self.p) for c in self.coefficients]
        finite = [v for v in vals if v != INFINITY]
        return min(finite + [self.tail])


def weierstrass_prepare(
    f: TruncatedSeries, precision: int
) -> tuple[PadicPolynomial, TruncatedSeries]:
    """Factor f = g * h with g a polynomial of the distinguished degree
    and h a unit series with h(0) = 1, w(h - 1) > 0.

    The distinguished degree is the last index where the minimal
    coefficient valuation is attained; it must be certified by the tail
    bound, otherwise PrecisionLossError is raised.  The product matches f
    coefficientwise modulo p^min(precision, tail).
    """
    p = f.p
    vals = [rational_valuation(c, p) for c in f.coefficients]
    finite = [v for v in vals if v != INFINITY]
    if not finite:
        raise InvalidArgumentError("the zero series cannot be prepared")
    w = min(finite)
    if f.tail <= w:
        raise PrecisionLossError(
            "tail bound does not exceed the minimal valuation: distinguished "
            "index is not determined by the truncation"
        )
    n_dist = max(j for j, v in enumerate(vals) if v == w)

    # scale to w = 0 so division by g loses no precision
    scale = Fraction(p) ** (-w)
    coeffs = [c * scale for c in f.coefficients]
    target = min(precision, f.tail) - w

    g = _trim(coeffs[: n_dist + 1])
    h = [Fraction(1)]
    m_trunc = f.truncation
    if n_dist == m_trunc:
        # minimal valuation attained only at the top stored coefficient
        g_final = g
        h_final = [Fraction(1)]
    else:
        tail_vals = [
            v
            for v in (rational_valuation(c, p) for c in coeffs[n_dist + 1 :])
            if v != INFINITY
        ]
        # scaled coefficients already have w subtracted; the gap is their minimum
        delta = min(tail_vals) if tail_vals else f.tail - w
        budget = math.ceil(target / delta) + 4
        for _ in range(budget):
            e = poly_sub(coeffs, poly_mul(g, h)[: m_trunc + 1])
            if not e or min(rational_valuation(c, p) for c in e if c) >= target:
                break
            q, r = poly_divmod(e, g)
            g = poly_add(g, r)
            h = poly_add(h, q)[: m_trunc + 1]
            g = _trim([_truncate_coefficient(c, p, Fraction(target + 2)) for c in g])
            h = _trim([_truncate_coefficient(c, p, Fraction(target + 2)) for c in h])
        else:
            raise PrecisionLossError("preparation exceeded its step budget")
        g_final, h_final = g, h

    c0 = h_final[0]
    if c0 == 0 or rational_valuation(c0, p) != 0:
        raise PrecisionLossError("unit part has no invertible constant term")
    g_out = poly_scale(g_final, c0 / scale)
    h_out = [c / c0 for c in h_final]
    if len(g_out) - 1 != n_dist:
        raise PrecisionLossError("prepared polynomial has the wrong degree")
    if any(rational_valuation(c, p) <= 0 for c in h_out[1:] if c):
        raise PrecisionLossError("unit part does not satisfy w(h - 1) > 0")
    h_series = TruncatedSeries(p, h_out + [Fraction(0)] * (m_trunc - len(h_out) + 1), int(target))
    return PadicPolynomial(p, g_out), h_series


# ---------------------------------------------------------------------------
# primitive rescaling of a factorization
# ---------------------------------------------------------------------------


def primitive_rescale(
    f: PadicPolynomial, g: PadicPolynomial, h: PadicPolynomial
) -> tuple[Fraction, PadicPolynomial, PadicPolynomial]:
    """Given integral f = g*h over Q_p, rescale so both factors are integral.

    Returns (b, g/b, b*h) with b = p^w(g), w the Gauss valuation with
    w(T) = 0; multiplicativity of w makes both outputs integral.
    """
    p = f.p
    if poly_sub(list(f.coefficients), poly_mul(list(g.coefficients), list(h.coefficients))):
        raise InvalidArgumentError("f must equal g*h exactly")
    if any(rational_valuation(c, p) < 0 for c in f.coefficients):
        raise InvalidArgumentError("f must have integral coefficients")
    w_g = min(rational_valuation(c, p) for c in g.coefficients if c)
    b = Fraction(p) ** w_g
    g_out = PadicPolynomial(p, poly_scale(list(g.coefficients), 1 / b))
    h_out = PadicPolynomial(p, poly_scale(list(h.coefficients), b))
    if any(rational_valuation(c, p) < 0 for c in g_out.coefficients + h_out.coefficients):
        raise InvalidArgumentError("rescaled factors are not integral")  # unreachable
    return b, g_out, h_out

"""Ramification filtrations on explicit finite groups.

A FilteredGroup is a Cayley table together with a positive "depth" per
element (the valuation w(s(w0) - w0) measuring how deeply the
automorphism fixes the integer ring; +infinity at the identity).  The
depth function determines the whole lower filtration via
s in G_n <=> depth(s) >= n+1; this models the Galois group of a totally
ramified extension, so G_0 is the full group.  Herbrand's transition
functions, quotient filtrations, upper numbering and different and
discriminant exponents are all derived from the table and the depths
with exact rational arithmetic.

Tables are verified to be groups on construction (associativity checked
exhaustively, vectorized, for orders up to 512).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    InconsistencyError,
    InvalidArgumentError,
    ResourceLimitError,
)
from .numtheory import INFINITY, int_valuation, require_prime

MAX_VERIFIED_ORDER = 512


# ---------------------------------------------------------------------------
# exact piecewise-linear functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function on [-1, +inf), exact rationals.

    Defined by its values at the breakpoints and a final slope beyond the
    last one.  Instances are normalized (no redundant breakpoints), so
    equality of functions is tuple equality.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    final_slope: Fraction

    @classmethod
    def from_data(cls, breakpoints, values, final_slope) -> "PiecewiseLinear":
        bps = [Fraction(b) for b in breakpoints]
        vals = [Fraction(v) for v in values]
        keep = [0]
        for i in range(1, len(bps) - 1):
            s_in = (vals[i] - vals[keep[-1]]) / (bps[i] - bps[keep[-1]])
            s_out = (vals[i + 1] - vals[i]) / (bps[i + 1] - bps[i])
            if s_in != s_out:
                keep.append(i)
        if len(bps) > 1:
            i = len(bps) - 1
            s_in = (vals[i] - vals[keep[-1]]) / (bps[i] - bps[keep[-1]])
            if s_in != Fraction(final_slope):
                keep.append(i)
        return cls(
            tuple(bps[i] for i in keep),
            tuple(vals[i] for i in keep),
            Fraction(final_slope),
        )

    def evaluate(self, u) -> Fraction:
        u = Fraction(u)
        if u < self.breakpoints[0]:
            raise InvalidArgumentError(f"{u} is left of the domain start")
        if u >= self.breakpoints[-1]:
            return self.values[-1] + self.final_slope * (u - self.breakpoints[-1])
        for i in range(len(self.breakpoints) - 1):
            if u <= self.breakpoints[i + 1]:
                b0, b1 = self.breakpoints[i], self.breakpoints[i + 1]
                v0, v1 = self.values[i], self.values[i + 1]
                return v0 + (v1 - v0) * (u - b0) / (b1 - b0)
        raise AssertionError("unreachable")

    def inverse(self) -> "PiecewiseLinear":
        slopes = [
            (v1 - v0) / (b1 - b0)
            for (b0, v0), (b1, v1) in zip(
                zip(self.breakpoints, self.values),
                zip(self.breakpoints[1:], self.values[1:]),
            )
        ]
        if any(s <= 0 for s in slopes) or self.final_slope <= 0:
            raise InvalidArgumentError("only increasing functions can be inverted")
        return PiecewiseLinear.from_data(
            self.values, self.breakpoints, 1 / self.final_slope
        )

    def compose(self, inner: "PiecewiseLinear") -> "PiecewiseLinear":
        """The function u -> self(inner(u))."""
        inner_inv = inner.inverse()
        bps = set(inner.breakpoints)
        lo, hi = inner.values[0], None
        for b in self.breakpoints:
            if b >= lo:
                bps.add(inner_inv.evaluate(b))
        bps = sorted(bps)
        vals = [self.evaluate(inner.evaluate(b)) for b in bps]
        return PiecewiseLinear.from_data(
            bps, vals, self.final_slope * inner.final_slope
        )


# ---------------------------------------------------------------------------
# filtered groups
# ---------------------------------------------------------------------------


def _check_associativity(table: np.ndarray):
    g = len(table)
    chunk = max(1, 2**22 // (g * g + 1))
    for start in range(0, g, chunk):
        block = table[start : start + chunk]
        left = table[block]  # [a, j, k] = table[table[a+start, j], k]
        right = block[:, table]  # [a, j, k] = table[a+start, table[j, k]]
        if not np.array_equal(left, right):
            raise InvalidArgumentError("multiplication table is not associative")


class FilteredGroup:
    """Finite group as a multiplication table plus per-element depths."""

    def __init__(self, table, identity: int, depths, validate: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.identity = identity
        self.depths = tuple(
            INFINITY if d == INFINITY else int(d) for d in depths
        )
        self.order = len(self.table)
        if validate:
            self._validate()
        self.inverses = tuple(
            next(j for j in range(self.order) if self.table[i][j] == self.identity)
            for i in range(self.order)
        )
        self._validate_depths()

    # -- construction checks ----------------------------------------------

    def _validate(self):
        g = self.order
        if g > MAX_VERIFIED_ORDER:
            raise ResourceLimitError(
                f"group order {g} exceeds the verified bound {MAX_VERIFIED_ORDER}"
            )
        if any(len(row) != g for row in self.table):
            raise InvalidArgumentError("table is not square")
        if any(not 0 <= x < g for row in self.table for x in row):
            raise InvalidArgumentError("table entries out of range")
        if not 0 <= self.identity < g:
            raise InvalidArgumentError("identity index out of range")
        for i in range(g):
            if self.table[self.identity][i] != i or self.table[i][self.identity] != i:
                raise InvalidArgumentError("identity element does not act trivially")
        for i in range(g):
            if all(self.table[i][j] != self.identity for j in range(g)):
                raise InvalidArgumentError(f"element {i} has no inverse")
        _check_associativity(np.array(self.table, dtype=np.int32))

    def _validate_depths(self):
        g = self.order
        if len(self.depths) != g:
            raise InvalidArgumentError("depth list length must match the order")
        for i, d in enumerate(self.depths):
            if i == self.identity:
                if d != INFINITY:
                    raise InvalidArgumentError("identity must have infinite depth")
            elif d == INFINITY or d < 1:
                raise InvalidArgumentError(
                    "depths must be positive integers away from the identity"
                )
        mul, inv, d = self.table, self.inverses, self.depths
        for s in range(g):
            if d[inv[s]] != d[s]:
                raise InvalidArgumentError("depths must be inverse-invariant")
            for t in range(g):
                if d[mul[t][mul[s][inv[t]]]] != d[s]:
                    raise InvalidArgumentError("depths must be a class function")
                if d[mul[s][t]] < min(d[s], d[t]):
                    raise InvalidArgumentError(
                        "depth sets G_n are not closed under multiplication"
                    )

    # -- filtration queries -------------------------------------------------

    def subgroup(self, n: int) -> frozenset[int]:
        """G_n = elements of depth >= n + 1 (all of G for n <= -1).

        Depths are integers, so the exclusive-threshold variant
        {s : depth(s) > r + 1 for real r} adds nothing new: at r = 0 it is
        exactly subgroup(1), which is the only identity relied on here.
        """
        if n <= -1:
            return frozenset(range(self.order))
        return frozenset(i for i in range(self.order) if self.depths[i] >= n + 1)

    def subgroup_at(self, u) -> frozenset[int]:
        """G_u for real u, which is G_ceil(u)."""
        return self.subgroup(math.ceil(Fraction(u)))

    def max_depth(self) -> int:
        return max((d for d in self.depths if d != INFINITY), default=0)

    def lower_jumps(self) -> tuple[int, ...]:
        jumps = []
        u = -1
        while len(self.subgroup(u)) > 1:
            if self.subgroup(u) != self.subgroup(u + 1):
                jumps.append(u)
            u += 1
        return tuple(jumps)


def lower_filtration(group: FilteredGroup) -> list[tuple[int, frozenset[int]]]:
    """The chain G = G_{-1} >= G_0 >= ... down to the first trivial term."""
    out = []
    n = -1
    while True:
        sub = group.subgroup(n)
        if not is_normal(group, sub):
            raise InvalidArgumentError("filtration subgroup is not normal")
        out.append((n, sub))
        if len(sub) == 1:
            return out
        n += 1


def is_subgroup(group: FilteredGroup, elements: frozenset[int]) -> bool:
    if group.identity not in elements:
        return False
    return all(group.table[a][b] in elements for a in elements for b in elements)


def is_normal(group: FilteredGroup, elements: frozenset[int]) -> bool:
    if not is_subgroup(group, elements):
        return False
    mul, inv = group.table, group.inverses
    return all(
        mul[t][mul[s][inv[t]]] in elements
        for t in range(group.order)
        for s in elements
    )


def all_subgroups(group: FilteredGroup) -> list[frozenset[int]]:
    """Every subgroup, found by closing generator sets (desk-scale orders)."""

    def closure(seed: frozenset[int]) -> frozenset[int]:
        elems = set(seed) | {group.identity}
        added = True
        while added:
            added = False
            for a in list(elems):
                for b in list(elems):
                    c = group.table[a][b]
                    if c not in elems:
                        elems.add(c)
                        added = True
        return frozenset(elems)

    found = {frozenset({group.identity})}
    frontier = [frozenset({group.identity})]
    while frontier:
        base = frontier.pop()
        for x in range(group.order):
            if x not in base:
                new = closure(base | {x})
                if new not in found:
                    found.add(new)
                    frontier.append(new)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# Herbrand transition functions
# ---------------------------------------------------------------------------


def herbrand_functions(group: FilteredGroup) -> tuple[PiecewiseLinear, PiecewiseLinear]:
    """The mutually inverse reparameterizations phi and psi.

    phi has slope |G_{m+1}| / |G_0| on [m, m+1] and slope 1 on [-1, 0];
    psi is its inverse and maps integers to integers.
    """
    g0 = len(group.subgroup(0))
    top = group.max_depth()
    bps = [Fraction(-1), Fraction(0)]
    vals = [Fraction(-1), Fraction(0)]
    for m in range(top):
        bps.append(Fraction(m + 1))
        vals.append(vals[-1] + Fraction(len(group.subgroup(m + 1)), g0))
    phi = PiecewiseLinear.from_data(bps, vals, Fraction(1, g0))
    return phi, phi.inverse()


def phi_via_infimum(group: FilteredGroup, u) -> Fraction:
    """phi(u) computed as (1/g0) sum_s min(depth(s), u+1) - 1.

    An independent route to the same function; exposed as a cross-check.
    """
    u = Fraction(u)
    if u < -1:
        raise InvalidArgumentError("u must be >= -1")
    g0 = len(group.subgroup(0))
    total = Fraction(0)
    for d in group.depths:
        total += u + 1 if d == INFINITY or d > u + 1 else Fraction(d)
    return total / g0 - 1


# ---------------------------------------------------------------------------
# sub- and quotient filtrations
# ---------------------------------------------------------------------------


def subgroup_filtration(group: FilteredGroup, elements) -> FilteredGroup:
    """The subgroup with the restricted depth function (depths restrict)."""
    elems = sorted(elements)
    if not is_subgroup(group, frozenset(elems)):
        raise InvalidArgumentError("the given elements do not form a subgroup")
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[group.table[a][b]] for b in elems] for a in elems]
    depths = [group.depths[e] for e in elems]
    return FilteredGroup(table, index[group.identity], depths)


def quotient_filtration(group: FilteredGroup, subgroup_elements) -> FilteredGroup:
    """The quotient G/H with its induced depth function.

    The depth of a nontrivial coset is (1/e) * sum of the depths over the
    coset, with e = |H_0|.  The result is cross-checked against the
    Herbrand route depth(s) - 1 = phi_H(max depth over coset - 1);
    disagreement or a non-integral average raises InconsistencyError.
    """
    return quotient_with_projection(group, subgroup_elements)[0]


def quotient_with_projection(
    group: FilteredGroup, subgroup_elements
) -> tuple[FilteredGroup, tuple[int, ...]]:
    """quotient_filtration plus the element -> coset index projection."""
    h = frozenset(subgroup_elements)
    if not is_normal(group, h):
        raise InvalidArgumentError("H must be a normal subgroup")
    e = sum(1 for t in h if group.depths[t] >= 1)

    cosets: list[frozenset[int]] = []
    seen: set[int] = set()
    for x in range(group.order):
        if x not in seen:
            coset = frozenset(group.table[x][t] for t in h)
            seen |= coset
            cosets.append(coset)
    cosets.sort(key=min)
    coset_of = {x: i for i, coset in enumerate(cosets) for x in coset}
    reps = [min(c) for c in cosets]
    table = [[coset_of[group.table[a][b]] for b in reps] for a in reps]
    identity = coset_of[group.identity]

    phi_h, _ = herbrand_functions(subgroup_filtration(group, h))
    depths: list[int | float] = []
    for i, coset in enumerate(cosets):
        if i == identity:
            depths.append(INFINITY)
            continue
        total = sum(group.depths[x] for x in coset)
        if total % e:
            raise InconsistencyError(
                "depth data is not compatible with the quotient (non-integral average)"
            )
        averaged = total // e
        j_max = max(group.depths[x] for x in coset)
        herbrand = phi_h.evaluate(j_max - 1) + 1
        if herbrand != averaged:
            raise InconsistencyError(
                f"averaging gives {averaged} but the Herbrand route gives {herbrand}"
            )
        depths.append(averaged)
    projection = tuple(coset_of[x] for x in range(group.order))
    return FilteredGroup(table, identity, depths), projection


# ---------------------------------------------------------------------------
# upper numbering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UpperNumbering:
    """Jumps and subgroup map of the filtration in the upper numbering."""

    jumps: tuple[Fraction, ...]
    phi: PiecewiseLinear
    psi: PiecewiseLinear
    group: FilteredGroup

    def subgroup_at(self, v) -> frozenset[int]:
        """G^v = G_psi(v)."""
        return self.group.subgroup_at(self.psi.evaluate(Fraction(v)))


def upper_numbering(group: FilteredGroup) -> UpperNumbering:
    phi, psi = herbrand_functions(group)
    jumps = tuple(phi.evaluate(u) for u in group.lower_jumps())
    return UpperNumbering(jumps, phi, psi, group)


# ---------------------------------------------------------------------------
# different and discriminant exponents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RamificationReport:
    lower_jumps: tuple[int, ...]
    upper_jumps: tuple[Fraction, ...]
    segment_orders: tuple[int, ...]
    different_exponent: int
    discriminant_exponent: int
    residual_degree: int


def different_discriminant(group: FilteredGroup, residual_degree: int = 1) -> RamificationReport:
    """Different exponent sum(depth(s)) over s != 1, equal to
    sum_n (|G_n| - 1); discriminant exponent is the residual degree times it."""
    if residual_degree < 1:
        raise InvalidArgumentError("residual degree must be >= 1")
    by_elements = sum(
        d for i, d in enumerate(group.depths) if i != group.identity
    )
    top = group.max_depth()
    orders = tuple(len(group.subgroup(n)) for n in range(top + 1))
    by_filtration = sum(o - 1 for o in orders)
    if by_elements != by_filtration:
        raise InconsistencyError(
            "the two routes to the different exponent disagree"
        )  # unreachable for a valid group
    upper = upper_numbering(group)
    return RamificationReport(
        lower_jumps=group.lower_jumps(),
        upper_jumps=upper.jumps,
        segment_orders=orders,
        different_exponent=int(by_elements),
        discriminant_exponent=int(by_elements) * residual_degree,
        residual_degree=residual_degree,
    )


# ---------------------------------------------------------------------------
# the cyclotomic instance
# ---------------------------------------------------------------------------


def cyclotomic_group(p: int, n: int, bound: int = 2**10) -> FilteredGroup:
    """The automorphism group (Z/p^nZ)^* of the p^n-th cyclotomic extension,
    with depth p^s for the automorphism x -> x^a, s = v_p(a - 1).

    The lower filtration then satisfies G_u = G(m+1) for u in [p^m, p^(m+1)),
    where G(s) is the kernel of reduction to (Z/p^sZ)^*.
    """
    require_prime(p)
    if n < 1:
        raise InvalidArgumentError("n must be at least 1")
    q = p**n
    if q > bound:
        raise ResourceLimitError(f"p^n = {q} exceeds the configured bound {bound}")
    units = [a for a in range(1, q) if a % p != 0]
    index = {a: i for i, a in enumerate(units)}
    table = [[index[a * b % q] for b in units] for a in units]
    depths = [
        INFINITY if a == 1 else p ** int_valuation(a - 1, p) for a in units
    ]
    return FilteredGroup(table, index[1], depths)


def cyclotomic_reduction_kernel(p: int, n: int, s: int) -> frozenset[int]:
    """Indices (in cyclotomic_group order) of units congruent to 1 mod p^s."""
    q = p**n
    units = [a for a in range(1, q) if a % p != 0]
    return frozenset(i for i, a in enumerate(units) if (a - 1) % p ** min(s, n) == 0)

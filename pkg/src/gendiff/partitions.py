"""Zero-adapted partitions of [0, pi/2], their common refinement, and the
pointwise sine bounds used by the integral estimates.

For integers n != gamma, sin((n-gamma)x) has theta(|n-gamma|) zeros in
[0, pi/2] at c_j = pi*j/|n-gamma|; partition_gamma builds the partition
whose j-th cell contains c_j (left endpoint for j = 0, midpoint for
interior cells, right endpoint for the final even-case cell).

All breakpoints are exact rational multiples of pi (fractions.Fraction in
units of pi), and refinement works on an exact common integer grid, so the
combinatorial cell-count and cell-length bounds are checked without any
floating-point tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateFrequency,
    DomainMismatch,
    InvalidInput,
    OutOfCell,
    StructuralViolation,
)

INEQ_SLACK = 1e-12  # additive slack for inequalities on transcendental values

PI = math.pi


@dataclass(frozen=True)
class Partition:
    """Breakpoint sequence on a closed interval, in exact units of pi.

    breaks[i] * pi is the i-th breakpoint in radians; cells are the closed
    intervals between consecutive breakpoints and share exactly one point.
    """

    breaks: tuple[Fraction, ...]

    def __post_init__(self):
        breaks = tuple(Fraction(b) for b in self.breaks)
        if len(breaks) < 2:
            raise InvalidInput("a partition needs at least two breakpoints")
        for lo, hi in zip(breaks, breaks[1:]):
            if not lo < hi:
                raise InvalidInput("breakpoints must be strictly increasing")
        object.__setattr__(self, "breaks", breaks)

    @property
    def a(self) -> float:
        return float(self.breaks[0]) * PI

    @property
    def b(self) -> float:
        return float(self.breaks[-1]) * PI

    @property
    def cell_count(self) -> int:
        return len(self.breaks) - 1

    def cells(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.breaks, self.breaks[1:]))

    def cells_radians(self) -> list[tuple[float, float]]:
        pts = [float(b) * PI for b in self.breaks]
        return list(zip(pts, pts[1:]))


@dataclass(frozen=True)
class RefinedPartition:
    """Common refinement with per-cell provenance (j, k): cell = R_j /\\ S_k."""

    base: Partition
    provenance: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.provenance) != self.base.cell_count:
            raise InvalidInput("provenance must tag every cell exactly once")

    def cell_of(self, j: int, k: int) -> tuple[Fraction, Fraction]:
        try:
            i = self.provenance.index((j, k))
        except ValueError:
            raise OutOfCell(f"({j}, {k}) is not a cell of this refinement") from None
        return self.base.breaks[i], self.base.breaks[i + 1]


def theta(r: int) -> int:
    """Number of zeros of sin(r*x) in [0, pi/2]: (r+2)/2 for even r, (r+1)/2 odd."""
    r = int(r)
    if r < 1:
        raise InvalidInput("r must be a positive integer")
    return (r + 2) // 2 if r % 2 == 0 else (r + 1) // 2


def sine_zeros(n: int, gamma: int) -> list[float]:
    """Zeros c_j = pi*j/|n-gamma|, j = 0..theta(|n-gamma|)-1, all in [0, pi/2]."""
    r = abs(int(n) - int(gamma))
    if r == 0:
        raise DegenerateFrequency(f"n = gamma = {n}: sin((n-gamma)x) is identically zero")
    return [PI * j / r for j in range(theta(r))]


def partition_gamma(n: int, gamma: int) -> Partition:
    """Zero-adapted partition of [0, pi/2] for sin((n-gamma)x).

    First cell [0, pi/(2r)], interior cells [pi(j-1/2)/r, pi(j+1/2)/r], and
    for even r a final cell [pi(r-1)/(2r), pi/2], where r = |n-gamma|.
    """
    r = abs(int(n) - int(gamma))
    if r == 0:
        raise DegenerateFrequency(f"n = gamma = {n}: no partition is defined")
    breaks = [Fraction(0)]
    breaks += [Fraction(2 * j + 1, 2 * r) for j in range(theta(r) - 1)]
    breaks.append(Fraction(1, 2))
    return Partition(tuple(breaks))


def refine(p1: Partition, p2: Partition) -> RefinedPartition:
    """Common refinement of two partitions of the same interval.

    Cells are the positive-length intersections R_j /\\ S_k with provenance
    (j, k); the cell count is at most cell_count(p1) + cell_count(p2) - 1.
    Worked on an exact common integer grid so coincident breakpoints
    collapse without tolerance.
    """
    if p1.breaks[0] != p2.breaks[0] or p1.breaks[-1] != p2.breaks[-1]:
        raise DomainMismatch("partitions do not share their interval endpoints")
    den = math.lcm(*(b.denominator for b in p1.breaks),
                   *(b.denominator for b in p2.breaks))
    g1 = [b.numerator * (den // b.denominator) for b in p1.breaks]
    g2 = [b.numerator * (den // b.denominator) for b in p2.breaks]
    merged = sorted(set(g1) | set(g2))
    prov = []
    j = k = 0
    for x in merged[:-1]:
        while g1[j + 1] <= x:
            j += 1
        while g2[k + 1] <= x:
            k += 1
        prov.append((j, k))
    base = Partition(tuple(Fraction(v, den) for v in merged))
    return RefinedPartition(base, tuple(prov))


def refinement_for(n: int, alpha: int, beta: int) -> RefinedPartition:
    """Refinement of the zero-adapted partitions for (n, alpha) and (n, beta)."""
    return refine(partition_gamma(n, alpha), partition_gamma(n, beta))


def _zero_grid(r: int) -> list[int]:
    """partition_gamma breakpoints as integer numerators over 2r (units of pi)."""
    return [0] + [2 * j + 1 for j in range(theta(r) - 1)] + [r]


def _merged_grid(r1: int, r2: int) -> tuple[list[int], int]:
    """Merged breakpoint numerators of the two zero grids over the common
    denominator 2*lcm(r1, r2), exactly."""
    L = math.lcm(r1, r2)
    g1 = [v * (L // r1) for v in _zero_grid(r1)]
    g2 = [v * (L // r2) for v in _zero_grid(r2)]
    merged = []
    i = j = 0
    while i < len(g1) or j < len(g2):
        if j >= len(g2) or (i < len(g1) and g1[i] <= g2[j]):
            v = g1[i]
            i += 1
            if j < len(g2) and g2[j] == v:
                j += 1
        else:
            v = g2[j]
            j += 1
        merged.append(v)
    return merged, 2 * L


class RefinementStats(NamedTuple):
    count: int
    count_bound: int
    max_length: float
    length_bound: float


def refinement_stats(n: int, alpha: int, beta: int) -> RefinementStats:
    """Cell count and maximal cell length of the refinement, with their
    combinatorial bounds 2*max(|n-a|, |n-b|) and min(pi/|n-a|, pi/|n-b|).

    Computed on the exact integer grid; only the reported lengths are
    rounded to float radians.
    """
    count, count_bound, max_frac, bound_frac = refinement_stats_exact(n, alpha, beta)
    return RefinementStats(
        count=count,
        count_bound=count_bound,
        max_length=float(max_frac) * PI,
        length_bound=float(bound_frac) * PI,
    )


def refinement_stats_exact(n: int, alpha: int, beta: int
                           ) -> tuple[int, int, Fraction, Fraction]:
    """Exact form of refinement_stats: (count, count_bound, max cell length,
    length bound), lengths as Fractions in units of pi."""
    r1 = abs(int(n) - int(alpha))
    r2 = abs(int(n) - int(beta))
    if r1 == 0 or r2 == 0:
        raise DegenerateFrequency(f"n={n} coincides with alpha or beta")
    merged, den = _merged_grid(r1, r2)
    max_diff = max(b - a for a, b in zip(merged, merged[1:]))
    return (
        len(merged) - 1,
        2 * max(r1, r2),
        Fraction(max_diff, den),
        Fraction(1, max(r1, r2)),
    )


def dist_to_int(x: float) -> float:
    """Distance from x to the nearest integer, in [0, 1/2]."""
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInput(f"{x!r} is not finite")
    return abs(x - round(x))


def sine_lower_bound_check(n: int, alpha: int, beta: int, j: int, k: int,
                           x: float) -> tuple[float, float, bool]:
    """Pointwise lower bound on sin^2((n-a)x) sin^2((n-b)x) over the cell (j, k).

    Returns (lhs, rhs, holds) with
      lhs = sin^2((n-alpha)x) sin^2((n-beta)x),
      rhs = (16 (n-alpha)^2 (n-beta)^2 / pi^4)
            * (x - j*pi/|n-alpha|)^2 * (x - k*pi/|n-beta|)^2,
    and holds = lhs >= rhs - 1e-12.
    """
    r1 = abs(int(n) - int(alpha))
    r2 = abs(int(n) - int(beta))
    if r1 == 0 or r2 == 0:
        raise DegenerateFrequency(f"n={n} coincides with alpha or beta")
    ref = refinement_for(n, alpha, beta)
    lo_f, hi_f = ref.cell_of(j, k)
    lo, hi = float(lo_f) * PI, float(hi_f) * PI
    if not (lo - 1e-12 <= x <= hi + 1e-12):
        raise OutOfCell(f"x={x} is outside cell ({j},{k}) = [{lo}, {hi}]")
    lhs = (math.sin((n - alpha) * x) * math.sin((n - beta) * x)) ** 2
    za = PI * j / r1
    zb = PI * k / r2
    rhs = (16.0 * (n - alpha) ** 2 * (n - beta) ** 2 / PI ** 4
           * (x - za) ** 2 * (x - zb) ** 2)
    return lhs, rhs, lhs >= rhs - INEQ_SLACK


def snap_zero_pair(cell: tuple[float, float], a_zero: float,
                   b_zero: float) -> tuple[float, float]:
    """Move a zero pair into a cell: zeros inside are kept, a zero outside is
    replaced by the nearest endpoint, and when both lie outside on opposite
    sides the endpoints themselves are returned (a-side first)."""
    lo, hi = float(cell[0]), float(cell[1])
    if not lo < hi:
        raise InvalidInput("cell must have positive length")
    a_in = lo <= a_zero <= hi
    b_in = lo <= b_zero <= hi
    if a_in and b_in:
        return a_zero, b_zero
    if a_in:
        return a_zero, (lo if b_zero < lo else hi)
    if b_in:
        return (lo if a_zero < lo else hi), b_zero
    if a_zero < lo and b_zero > hi:
        return lo, hi
    if b_zero < lo and a_zero > hi:
        return hi, lo
    raise StructuralViolation(
        "both zeros fall outside the cell on the same side; "
        "this cannot happen for cells of the zero-adapted refinement"
    )


def quadratic_dominates(c: float, a: float, b: float, d: float,
                        grid: int = 1000) -> bool:
    """Check (x-c)(d-x) >= (x-a)(b-x) >= 0 on a grid of [a, b] plus endpoints.

    Requires c <= a < b <= d.  This is a theorem for real quadratics, so a
    False return indicates an implementation bug, not a property of the data.
    """
    if not (c <= a < b <= d):
        raise InvalidInput("need c <= a < b <= d")
    xs = np.linspace(a, b, int(grid) + 2)  # interior grid plus both endpoints
    outer = (xs - c) * (d - xs)
    inner = (xs - a) * (b - xs)
    return bool(np.all(outer >= inner - INEQ_SLACK) and np.all(inner >= -INEQ_SLACK))


def sine_bound_scan(n: int, alpha: int, beta: int, samples_per_cell: int,
                    seed: int) -> tuple[int, int]:
    """Sample every refinement cell uniformly and count violations of the
    pointwise sine lower bound and of the zero-snapping inequality
    |x-a|^2 |x-b|^2 >= |x-a'|^2 |x-b'|^2.  Returns (samples_checked, violations).
    """
    r1 = abs(int(n) - int(alpha))
    r2 = abs(int(n) - int(beta))
    if r1 == 0 or r2 == 0:
        raise DegenerateFrequency(f"n={n} coincides with alpha or beta")
    ref = refinement_for(n, alpha, beta)
    rng = np.random.default_rng(seed)
    const = 16.0 * (n - alpha) ** 2 * (n - beta) ** 2 / PI ** 4
    checked = violations = 0
    for (lo_f, hi_f), (j, k) in zip(ref.base.cells(), ref.provenance):
        lo, hi = float(lo_f) * PI, float(hi_f) * PI
        xs = rng.uniform(lo, hi, int(samples_per_cell))
        xs[0], xs[-1] = lo, hi
        za, zb = PI * j / r1, PI * k / r2
        lhs = (np.sin((n - alpha) * xs) * np.sin((n - beta) * xs)) ** 2
        rhs = const * (xs - za) ** 2 * (xs - zb) ** 2
        violations += int(np.sum(lhs < rhs - INEQ_SLACK))
        zap, zbp = snap_zero_pair((lo, hi), za, zb)
        orig = (xs - za) ** 2 * (xs - zb) ** 2
        snapped = (xs - zap) ** 2 * (xs - zbp) ** 2
        violations += int(np.sum(orig < snapped - INEQ_SLACK))
        checked += xs.size
    return checked, violations

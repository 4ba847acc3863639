"""Coefficient-space representation of band-limited functions on the circle.

A Spectrum stores finitely many Fourier coefficients f^(n) indexed by
integer frequency, under the 1/(2pi) normalization

    f^(n) = (1/2pi) integral_0^{2pi} f(t) e^{-int} dt,

so that e^{inx} has unit coefficient at n.  Analysis/synthesis run against
uniform grids of M points 2*pi*k/M and are exact (to rounding) whenever
M >= 2N+1 for band limit N.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

from .errors import AliasingRisk, InvalidInput

PRUNE_TOL = 1e-15
_NORM_GUARD = 1e-12  # pruning may not move the L2 norm more than this, relatively


class Spectrum:
    """Immutable finite map frequency -> complex amplitude with a band limit.

    Lookup at an absent frequency returns exactly 0.  Amplitudes with
    modulus below PRUNE_TOL are dropped at construction, but only when the
    dropped mass changes the L2 norm by at most 1e-12 relative.
    """

    __slots__ = ("_coeffs", "_band_limit")

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = (),
                 band_limit: int | None = None):
        items = dict(coeffs)
        for n in items:
            if not isinstance(n, (int, np.integer)):
                raise InvalidInput(f"frequency {n!r} is not an integer")
        items = {int(n): complex(c) for n, c in items.items()}
        max_freq = max((abs(n) for n in items), default=0)
        if band_limit is None:
            band_limit = max_freq
        band_limit = int(band_limit)
        if band_limit < 0:
            raise InvalidInput("band_limit must be non-negative")
        if max_freq > band_limit:
            raise InvalidInput(
                f"frequency of modulus {max_freq} exceeds band limit {band_limit}"
            )
        self._coeffs = _pruned(items)
        self._band_limit = band_limit

    @property
    def band_limit(self) -> int:
        return self._band_limit

    @property
    def frequencies(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def coeff(self, n: int) -> complex:
        return self._coeffs.get(n, 0j)

    def items(self) -> list[tuple[int, complex]]:
        return sorted(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __add__(self, other: "Spectrum") -> "Spectrum":
        out = dict(self._coeffs)
        for n, c in other._coeffs.items():
            out[n] = out.get(n, 0j) + c
        return Spectrum(out, max(self._band_limit, other._band_limit))

    def __sub__(self, other: "Spectrum") -> "Spectrum":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "Spectrum":
        return Spectrum({n: scalar * c for n, c in self._coeffs.items()},
                        self._band_limit)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Spectrum({self._coeffs!r}, band_limit={self._band_limit})"


def _pruned(items: dict[int, complex]) -> dict[int, complex]:
    small = [n for n, c in items.items() if abs(c) < PRUNE_TOL]
    if not small:
        return items
    total = math.sqrt(sum(abs(c) ** 2 for c in items.values()))
    dropped = math.sqrt(sum(abs(items[n]) ** 2 for n in small))
    if total == 0.0 or dropped <= _NORM_GUARD * total:
        return {n: c for n, c in items.items() if abs(c) >= PRUNE_TOL}
    # dropping everything below threshold would move the norm too much;
    # keep the small amplitudes and drop exact zeros only
    return {n: c for n, c in items.items() if c != 0}


class SampleGrid:
    """M complex samples taken at the uniform grid points 2*pi*k/M."""

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise InvalidInput("SampleGrid needs a non-empty 1-d sequence of samples")
        arr = arr.copy()
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def M(self) -> int:
        return self._values.size

    def __repr__(self) -> str:
        return f"SampleGrid(M={self.M})"


def analyze(grid: SampleGrid, band_limit: int) -> Spectrum:
    """Fourier-analyze M uniform samples into coefficients for |n| <= band_limit.

    Coefficient at n is (1/M) sum_k values[k] e^{-i n 2 pi k / M}; this is
    exact for inputs sampled from a band <= N spectrum when M >= 2N+1.
    """
    N = int(band_limit)
    if N < 0:
        raise InvalidInput("band_limit must be non-negative")
    M = grid.M
    if M < 2 * N + 1:
        raise AliasingRisk(f"M={M} grid cannot resolve band limit {N}; need M >= {2 * N + 1}")
    c = np.fft.fft(grid.values) / M
    return Spectrum({n: c[n % M] for n in range(-N, N + 1)}, N)


def synthesize(f: Spectrum, M: int) -> SampleGrid:
    """Evaluate f on the M-point uniform grid: values[k] = sum_n f^(n) e^{in 2 pi k/M}."""
    M = int(M)
    if M < 2 * f.band_limit + 1:
        raise AliasingRisk(
            f"M={M} grid cannot carry band limit {f.band_limit}; need M >= {2 * f.band_limit + 1}"
        )
    arr = np.zeros(M, dtype=np.complex128)
    for n, c in f.items():
        arr[n % M] += c
    return SampleGrid(np.fft.ifft(arr) * M)


def l2_norm(f: Spectrum) -> float:
    """Parseval norm sqrt(sum |f^(n)|^2)."""
    return math.sqrt(sum(abs(c) ** 2 for _, c in f.items()))


def sobolev_energy(f: Spectrum, s: int) -> float:
    """Smoothness energy sum |n|^{2s} |f^(n)|^2 (finite for every finite band)."""
    s = int(s)
    if s < 1:
        raise InvalidInput("s must be a positive integer")
    return sum(abs(n) ** (2 * s) * abs(c) ** 2 for n, c in f.items())


def to_json_dict(f: Spectrum) -> dict:
    """JSON form: {"band_limit": N, "coeffs": [{"n", "re", "im"}...]}, sorted by n."""
    return {
        "band_limit": f.band_limit,
        "coeffs": [
            {"n": n, "re": c.real, "im": c.imag} for n, c in f.items()
        ],
    }


def from_json_dict(d: dict) -> Spectrum:
    coeffs: dict[int, complex] = {}
    for entry in d["coeffs"]:
        n = int(entry["n"])
        if n in coeffs:
            raise ValueError(f"duplicate frequency {n} in spectrum JSON")
        coeffs[n] = complex(float(entry["re"]), float(entry["im"]))
    return Spectrum(coeffs, int(d["band_limit"]))

"""Finite atomic measures on the circle and their convolution algebra.

Atom positions live in [0, 2*pi) radians.  The Fourier transform is
mu^(n) = sum_k w_k e^{-i n x_k}, so a Dirac atom at x transforms to
e^{-inx} and convolution corresponds to pointwise products of transforms.

The shifted three-atom measure produced by lambda_b is the building block
of generalized differences: its transform

    cos(((alpha-beta)/2) b) - cos((n - (alpha+beta)/2) b)

is real and vanishes at n = alpha and n = beta for every shift b.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable

import numpy as np

from .errors import InvalidInput
from .spectrum import Spectrum

TWO_PI = 2.0 * math.pi
MERGE_TOL = 1e-12  # atoms closer than this (circularly) are merged


def _canonical(x: float) -> float:
    """Reduce a finite position into [0, 2*pi)."""
    x = math.fmod(float(x), TWO_PI)
    if x < 0.0:
        x += TWO_PI
    return 0.0 if x == TWO_PI else x


class DiscreteMeasure:
    """Finite weighted sum of Dirac atoms, canonicalized and merged.

    The empty atom list is the zero measure and is a legal value.
    """

    __slots__ = ("_atoms",)

    def __init__(self, atoms: Iterable[tuple[float, complex]] = ()):
        canon = []
        for x, w in atoms:
            x = float(x)
            if not math.isfinite(x):
                raise InvalidInput(f"atom position {x!r} is not finite")
            canon.append((_canonical(x), complex(w)))
        self._atoms = _merged(canon)

    @property
    def atoms(self) -> tuple[tuple[float, complex], ...]:
        return self._atoms

    def is_zero(self) -> bool:
        return not self._atoms

    def __repr__(self) -> str:
        return f"DiscreteMeasure({list(self._atoms)!r})"


def _merged(atoms: list[tuple[float, complex]]) -> tuple[tuple[float, complex], ...]:
    if not atoms:
        return ()
    atoms.sort(key=lambda a: a[0])
    clusters: list[list] = []  # [position of first member, weight sum]
    for x, w in atoms:
        if clusters and x - clusters[-1][0] <= MERGE_TOL:
            clusters[-1][1] += w
        else:
            clusters.append([x, w])
    # circular wrap: a cluster hugging 2*pi merges with one at 0
    if len(clusters) > 1 and (TWO_PI - clusters[-1][0]) + clusters[0][0] <= MERGE_TOL:
        clusters[0][1] += clusters[-1][1]
        clusters.pop()
    return tuple((x, w) for x, w in clusters if w != 0)


def dirac(x: float) -> DiscreteMeasure:
    """Unit point mass at x (mod 2*pi)."""
    return DiscreteMeasure([(x, 1.0)])


def measure_ft(mu: DiscreteMeasure, n: int) -> complex:
    """mu^(n) = sum_k w_k e^{-i n x_k}."""
    n = int(n)
    return sum((w * cmath.exp(-1j * n * x) for x, w in mu.atoms), 0j)


def ft_array(mu: DiscreteMeasure, ns: np.ndarray) -> np.ndarray:
    """Vectorized measure_ft over an integer frequency array."""
    ns = np.asarray(ns, dtype=np.float64)
    out = np.zeros(ns.shape, dtype=np.complex128)
    for x, w in mu.atoms:
        out += w * np.exp(-1j * ns * x)
    return out


def convolve_measures(mu: DiscreteMeasure, nu: DiscreteMeasure) -> DiscreteMeasure:
    """Convolution: atoms at x+y (mod 2*pi) with weights w*v, merged."""
    return DiscreteMeasure(
        (x + y, w * v) for x, w in mu.atoms for y, v in nu.atoms
    )


def measure_power(mu: DiscreteMeasure, s: int) -> DiscreteMeasure:
    """s-fold convolution power (s >= 1); transform is mu^(n)**s."""
    s = int(s)
    if s < 1:
        raise InvalidInput("convolution power needs s >= 1 (use dirac(0) for the identity)")
    out = mu
    for _ in range(s - 1):
        out = convolve_measures(out, mu)
    return out


def lambda_b(alpha: int, beta: int, b: float) -> DiscreteMeasure:
    """Shifted three-atom measure with transform vanishing at alpha and beta.

    Atoms: weight (1/2)(e^{ib(alpha-beta)/2} + e^{-ib(alpha-beta)/2}) at 0,
    weight -(1/2) e^{ib(alpha+beta)/2} at b and -(1/2) e^{-ib(alpha+beta)/2}
    at -b.  The half-integer phases are evaluated with the canonical
    representative b in [0, 2*pi), and coincident atoms merge (b = 0 gives
    the zero measure, b = pi a two-atom measure).
    """
    alpha, beta = int(alpha), int(beta)
    b = _canonical(b)
    half_diff = (alpha - beta) / 2.0
    half_sum = (alpha + beta) / 2.0
    w0 = 0.5 * (cmath.exp(1j * b * half_diff) + cmath.exp(-1j * b * half_diff))
    return DiscreteMeasure([
        (0.0, w0),
        (b, -0.5 * cmath.exp(1j * b * half_sum)),
        (-b, -0.5 * cmath.exp(-1j * b * half_sum)),
    ])


def lambda_ft(alpha: int, beta: int, b: float, n: int) -> float:
    """Closed-form transform of lambda_b at n:
    cos(((alpha-beta)/2) b) - cos((n - (alpha+beta)/2) b); always real,
    exactly 0 at n = alpha and n = beta."""
    alpha, beta = int(alpha), int(beta)
    b = _canonical(b)
    # fabs makes the zeros at n = alpha and n = beta exact floating-point 0
    # (both cosines then receive bit-identical arguments) and makes the
    # symmetry under swapping alpha and beta exact as well.
    a1 = math.fabs(((alpha - beta) / 2.0) * b)
    a2 = math.fabs((int(n) - (alpha + beta) / 2.0) * b)
    return math.cos(a1) - math.cos(a2)


def convolve_with_function(mu: DiscreteMeasure, f: Spectrum) -> Spectrum:
    """Generalized difference mu * f in coefficient space: (mu*f)^(n) = mu^(n) f^(n)."""
    return Spectrum({n: measure_ft(mu, n) * c for n, c in f.items()}, f.band_limit)


def to_json_dict(mu: DiscreteMeasure) -> dict:
    """JSON form: {"atoms": [{"x", "re", "im"}...]}, x in [0, 2*pi)."""
    return {
        "atoms": [
            {"x": x, "re": w.real, "im": w.imag} for x, w in mu.atoms
        ]
    }


def from_json_dict(d: dict) -> DiscreteMeasure:
    return DiscreteMeasure(
        (float(a["x"]), complex(float(a["re"]), float(a["im"]))) for a in d["atoms"]
    )

"""Decomposability criterion and the constructive decomposition of admissible
spectra into sums of generalized differences.

A spectrum f with f^(alpha) = f^(beta) = 0 equals, for almost every choice
of 4s+1 shifts b_j, a sum of convolutions lambda_{b_j}^s * f_j.  The
components are the per-frequency minimal-norm solution

    f_j^(n) = conj(mu_j^(n)) f^(n) / sum_k |mu_k^(n)|^2,

whose squared norms add up exactly to the criterion series
sum_n |f^(n)|^2 / sum_j |mu_j^(n)|^2, turning the existence proof into a
checkable identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadShiftSet, InvalidInput, NotDecomposable, NotInSubspace
from .measures import (
    DiscreteMeasure,
    convolve_with_function,
    ft_array,
    lambda_b,
    measure_power,
)
from .spectrum import Spectrum, l2_norm
from . import spectrum as _spectrum_json

# a squared-denominator at or below this is a structural zero; a numerator
# above this is genuinely nonzero (transform values are O(1))
DEN_ZERO_TOL = 1e-24
NUM_ZERO_TOL = 1e-18

VANISH_TOL = 1e-9


@dataclass(frozen=True)
class DecompositionCertificate:
    """Shift points, components, and the reconstruction quality of one
    decomposition f = sum_j lambda_{b_j}^s * f_j."""

    alpha: int
    beta: int
    s: int
    shifts: tuple[float, ...]
    components: tuple[Spectrum, ...]
    residual: float
    criterion_value: float

    def __post_init__(self):
        if len(self.shifts) != len(self.components):
            raise InvalidInput("one component per shift is required")


def check_vanishing(f: Spectrum, alpha: int, beta: int,
                    tol: float = VANISH_TOL) -> bool:
    """True iff |f^(alpha)| and |f^(beta)| are at most tol * ||f|| (guarded
    against the zero spectrum)."""
    scale = tol * max(l2_norm(f), 1e-300)
    return abs(f.coeff(int(alpha))) <= scale and abs(f.coeff(int(beta))) <= scale


def _denominators(measures: Sequence[DiscreteMeasure],
                  ns: np.ndarray) -> np.ndarray:
    """sum_j |mu_j^(n)|^2 for each n in ns."""
    den = np.zeros(len(ns))
    for mu in measures:
        den += np.abs(ft_array(mu, ns)) ** 2
    return den


def ms_criterion(f: Spectrum, measures: Sequence[DiscreteMeasure]) -> float:
    """Criterion series sum_n |f^(n)|^2 / sum_j |mu_j^(n)|^2 over the support.

    A term with numerator > 1e-18 over a denominator <= 1e-24 makes the
    series infinite (returns math.inf); 0/0 terms are skipped.  Terms are
    accumulated in ascending frequency order with exact summation.
    """
    if not measures:
        raise InvalidInput("at least one measure is required")
    items = f.items()
    if not items:
        return 0.0
    ns = np.array([n for n, _ in items], dtype=np.int64)
    den = _denominators(measures, ns)
    terms = []
    for (n, c), d in zip(items, den):
        num = abs(c) ** 2
        if d <= DEN_ZERO_TOL:
            if num > NUM_ZERO_TOL:
                return math.inf
            continue  # 0/0 convention: neglect
        terms.append(num / d)
    return math.fsum(terms)


def ms_construct(f: Spectrum,
                 measures: Sequence[DiscreteMeasure]) -> list[Spectrum]:
    """Minimal-norm components f_j with sum_j mu_j * f_j = f.

    Raises NotDecomposable (with the first offending frequency, in
    ascending order) when the criterion is infinite.
    """
    if not measures:
        raise InvalidInput("at least one measure is required")
    items = f.items()
    ns = np.array([n for n, _ in items], dtype=np.int64)
    den = _denominators(measures, ns)
    for (n, c), d in zip(items, den):
        if d <= DEN_ZERO_TOL and abs(c) ** 2 > NUM_ZERO_TOL:
            raise NotDecomposable(n)
    components = []
    for mu in measures:
        ft = ft_array(mu, ns)
        coeffs = {}
        for (n, c), d, ftn in zip(items, den, ft):
            if d <= DEN_ZERO_TOL:
                continue  # 0/0 frequency: component vanishes there
            coeffs[n] = ftn.conjugate() * c / d
        components.append(Spectrum(coeffs, f.band_limit))
    return components


def random_shifts(s: int, seed: int) -> tuple[float, ...]:
    """4s+1 independent uniform draws from [0, 2*pi), from a seeded
    numpy PCG64 generator; deterministic for a fixed seed."""
    s = int(s)
    if s < 1:
        raise InvalidInput("s must be a positive integer")
    rng = np.random.default_rng(int(seed))
    return tuple(rng.uniform(0.0, 2.0 * math.pi, 4 * s + 1).tolist())


def shift_measures(alpha: int, beta: int, s: int,
                   shifts: Sequence[float]) -> list[DiscreteMeasure]:
    """The measures lambda_{b_j}^s for a shift vector."""
    return [measure_power(lambda_b(alpha, beta, b), s) for b in shifts]


def decompose_gd(f: Spectrum, alpha: int, beta: int, s: int,
                 shifts: Sequence[float]) -> DecompositionCertificate:
    """Decompose f into generalized differences over the given shifts.

    Requires check_vanishing(f, alpha, beta, 1e-9); raises NotInSubspace
    otherwise, and BadShiftSet (advising a resample) when some support
    frequency is annihilated by every shifted measure.
    """
    alpha, beta, s = int(alpha), int(beta), int(s)
    if s < 1:
        raise InvalidInput("s must be a positive integer")
    if not shifts:
        raise InvalidInput("at least one shift is required")
    if not check_vanishing(f, alpha, beta, VANISH_TOL):
        raise NotInSubspace(
            f"coefficients at {alpha} and {beta} must vanish (tol {VANISH_TOL:g})"
        )
    measures = shift_measures(alpha, beta, s, shifts)
    try:
        components = ms_construct(f, measures)
    except NotDecomposable as exc:
        raise BadShiftSet(exc.frequency) from None
    criterion = ms_criterion(f, measures)
    recon = Spectrum({}, f.band_limit)
    for mu, fj in zip(measures, components):
        recon = recon + convolve_with_function(mu, fj)
    residual = l2_norm(f - recon)
    return DecompositionCertificate(
        alpha=alpha,
        beta=beta,
        s=s,
        shifts=tuple(float(b) for b in shifts),
        components=tuple(components),
        residual=residual,
        criterion_value=criterion,
    )


def verify_certificate(cert: DecompositionCertificate, f: Spectrum) -> float:
    """Recompute the reconstruction residual of a certificate against f."""
    measures = shift_measures(cert.alpha, cert.beta, cert.s, cert.shifts)
    recon = Spectrum({}, f.band_limit)
    for mu, fj in zip(measures, cert.components):
        recon = recon + convolve_with_function(mu, fj)
    return l2_norm(f - recon)


def to_json_dict(cert: DecompositionCertificate) -> dict:
    return {
        "alpha": cert.alpha,
        "beta": cert.beta,
        "s": cert.s,
        "shifts": list(cert.shifts),
        "components": [_spectrum_json.to_json_dict(c) for c in cert.components],
        "residual": cert.residual,
        "criterion": "inf" if math.isinf(cert.criterion_value) else cert.criterion_value,
    }


def from_json_dict(d: dict) -> DecompositionCertificate:
    criterion = d["criterion"]
    return DecompositionCertificate(
        alpha=int(d["alpha"]),
        beta=int(d["beta"]),
        s=int(d["s"]),
        shifts=tuple(float(b) for b in d["shifts"]),
        components=tuple(_spectrum_json.from_json_dict(c) for c in d["components"]),
        residual=float(d["residual"]),
        criterion_value=math.inf if criterion == "inf" else float(criterion),
    )

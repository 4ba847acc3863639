"""Multiplier operators on spectra: derivative powers and the quadratic
operator (D^2 - i(alpha+beta)D - alpha*beta*I)^s.

The quadratic operator multiplies the coefficient at n by the exact integer
(-1)^s (n-alpha)^s (n-beta)^s, so its range is the set of spectra vanishing
at alpha and beta; solve_quadratic inverts it there with the minimal-norm
choice g^(alpha) = g^(beta) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput, MagnitudeLimit, NotInRange
from .spectrum import Spectrum, l2_norm

_MAGNITUDE_GUARD = 1 << 62
_I_POW = (1, 1j, -1, -1j)  # i**s for s mod 4


@dataclass(frozen=True)
class QuadraticSymbol:
    """Multiplier n -> (-1)^s (n-alpha)^s (n-beta)^s with zeros at alpha, beta."""

    alpha: int
    beta: int
    s: int

    def __post_init__(self):
        if int(self.s) < 1:
            raise InvalidInput("s must be a positive integer")
        object.__setattr__(self, "alpha", int(self.alpha))
        object.__setattr__(self, "beta", int(self.beta))
        object.__setattr__(self, "s", int(self.s))


def symbol_value(sym: QuadraticSymbol, n: int) -> int:
    """Exact signed integer (-1)^s (n-alpha)^s (n-beta)^s, guarded at 2^62."""
    n = int(n)
    value = (n - sym.alpha) ** sym.s * (n - sym.beta) ** sym.s
    if abs(value) >= _MAGNITUDE_GUARD:
        raise MagnitudeLimit(
            f"|(n-alpha)^s (n-beta)^s| = {abs(value)} exceeds 2^62 at n={n}"
        )
    return -value if sym.s % 2 else value


def apply_derivative(f: Spectrum, s: int) -> Spectrum:
    """Differentiate s times: coefficient at n is multiplied by (i n)^s."""
    s = int(s)
    if s < 1:
        raise InvalidInput("s must be a positive integer")
    factor = _I_POW[s % 4]
    return Spectrum({n: c * (factor * n ** s) for n, c in f.items()}, f.band_limit)


def apply_quadratic(sym: QuadraticSymbol, g: Spectrum) -> Spectrum:
    """Forward operator: coefficient at n times the symbol value.

    Coefficients at alpha and beta come out exactly zero (and are pruned).
    """
    return Spectrum(
        {n: c * symbol_value(sym, n) for n, c in g.items()}, g.band_limit
    )


def solve_quadratic(sym: QuadraticSymbol, f: Spectrum, tol: float = 1e-9) -> Spectrum:
    """Pseudo-inverse on the range: g^(n) = (-1)^s f^(n) / ((n-alpha)^s (n-beta)^s)
    with g^(alpha) = g^(beta) = 0.

    Requires |f^(alpha)| and |f^(beta)| <= tol * ||f||, else NotInRange.
    """
    norm = l2_norm(f)
    scale = tol * max(norm, 1e-300)
    for zero in dict.fromkeys((sym.alpha, sym.beta)):
        mag = abs(f.coeff(zero))
        if mag > scale:
            raise NotInRange(zero, mag)
    coeffs = {}
    for n, c in f.items():
        if n == sym.alpha or n == sym.beta:
            continue
        coeffs[n] = c / symbol_value(sym, n)
    return Spectrum(coeffs, f.band_limit)

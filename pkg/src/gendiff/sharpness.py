"""Diophantine sharpness witnesses: spectra that no fixed shift set
decomposes.

For shift points c_1..c_m, simultaneous approximation gives, level by
level, integers q with d_Z(q c_j / 2pi) < 1/level^(1/m) for every j.  The
witness spectrum carries coefficient level^-(1/2+s/m) at frequency
q_level + alpha.  Its squared norm is a convergent zeta partial sum, while
the weighted series sum_level level^(2s/m) |coeff|^2 is exactly the
harmonic series, which is what forces the decomposition criterion against
the measures lambda_{c_j}^s to grow without bound (like log L).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .decompose import ms_criterion, shift_measures, _denominators
from .errors import InvalidInput, SearchExhausted
from .spectrum import Spectrum

TWO_PI = 2.0 * math.pi
_CHUNK = 1 << 16


@dataclass(frozen=True)
class PhiPath:
    """One branch of the binary level tree: phi(1) in {1, 2} and
    phi(l+1) in {2 phi(l) - 1, 2 phi(l)}, encoded by one bit per level."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise InvalidInput("a path needs at least one level")
        if any(b not in (0, 1) for b in bits):
            raise InvalidInput("path bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @property
    def depth(self) -> int:
        return len(self.bits)

    @property
    def values(self) -> tuple[int, ...]:
        out = []
        phi = 1 + self.bits[0]
        out.append(phi)
        for b in self.bits[1:]:
            phi = 2 * phi - 1 + b
            out.append(phi)
        return tuple(out)

    @classmethod
    def zeros(cls, depth: int) -> "PhiPath":
        return cls((0,) * int(depth))


@dataclass(frozen=True)
class SharpnessWitness:
    """Shift points, the per-level Diophantine integers, and the witness
    spectrum truncated at depth L."""

    c: tuple[float, ...]
    s: int
    L: int
    q_path: tuple[int, ...]
    spectrum: Spectrum
    alpha: int
    path: PhiPath

    @property
    def m(self) -> int:
        return len(self.c)


def _dz_max(c_over_2pi: np.ndarray, q_lo: int, q_hi: int) -> np.ndarray:
    """max_j d_Z(q * c_j/2pi) for q in [q_lo, q_hi)."""
    q = np.arange(q_lo, q_hi, dtype=np.float64)
    out = np.zeros(q.size)
    for x in c_over_2pi:
        t = q * x
        np.maximum(out, np.abs(t - np.round(t)), out=out)
    return out


def dirichlet_q(c: Sequence[float], q_min: int, q_max: int) -> int:
    """Smallest q in [q_min, q_max] with d_Z(q c_j) < q^(-1/m) for all j.

    Simultaneous approximation guarantees infinitely many such q, so a
    large enough q_max always succeeds; SearchExhausted tells the caller
    to widen the range.
    """
    c = np.asarray([float(v) for v in c], dtype=np.float64)
    m = c.size
    if m < 1:
        raise InvalidInput("need at least one target")
    q_min, q_max = int(q_min), int(q_max)
    if q_min < 1 or q_min > q_max:
        raise InvalidInput("need 1 <= q_min <= q_max")
    for lo in range(q_min, q_max + 1, _CHUNK):
        hi = min(lo + _CHUNK, q_max + 1)
        q = np.arange(lo, hi, dtype=np.float64)
        dz = np.zeros(q.size)
        for x in c:
            t = q * x
            np.maximum(dz, np.abs(t - np.round(t)), out=dz)
        hits = np.nonzero(dz < q ** (-1.0 / m))[0]
        if hits.size:
            return lo + int(hits[0])
    raise SearchExhausted(q_max)


def build_witness(c: Sequence[float], alpha: int, s: int, L: int,
                  path: PhiPath, q_cap: int) -> SharpnessWitness:
    """Construct the depth-L witness for shift points c_1..c_m in [0, 2*pi].

    Level l takes the smallest unused q <= q_cap with
    d_Z(q c_j / 2pi) < l^(-1/m) for all j.  The admissible sets shrink as l
    grows, so every unused q below the previous pick is inadmissible
    forever and a single forward scan realizes the smallest-unused policy;
    the chosen q are strictly increasing, hence distinct.  The spectrum
    gets coefficient l^-(1/2+s/m) at frequency q_l + alpha.
    """
    c = tuple(float(v) for v in c)
    if not c:
        raise InvalidInput("need at least one shift point")
    if any(not (0.0 <= v <= TWO_PI) for v in c):
        raise InvalidInput("shift points must lie in [0, 2*pi]")
    alpha, s, L, q_cap = int(alpha), int(s), int(L), int(q_cap)
    if s < 1 or L < 1 or q_cap < 1:
        raise InvalidInput("s, L and q_cap must be positive")
    if path.depth != L:
        raise InvalidInput(f"path depth {path.depth} does not match L={L}")
    m = len(c)
    targets = np.asarray(c) / TWO_PI

    dz = _dz_max(targets, 1, min(q_cap, _CHUNK) + 1)
    grown_to = dz.size  # q values 1..grown_to are scored
    q_path: list[int] = []
    pos = 0  # index into dz; q = pos + 1
    bound = math.inf
    for level in range(1, L + 1):
        bound = min(bound, float(level) ** (-1.0 / m))
        while True:
            if pos >= grown_to:
                if grown_to >= q_cap:
                    raise SearchExhausted(q_cap, level=level)
                new_hi = min(q_cap, 2 * grown_to)
                dz = np.concatenate([dz, _dz_max(targets, grown_to + 1, new_hi + 1)])
                grown_to = new_hi
            if dz[pos] < bound:
                break
            pos += 1
        q_path.append(pos + 1)
        pos += 1

    coeffs = {
        q + alpha: complex(level ** -(0.5 + s / m))
        for level, q in enumerate(q_path, start=1)
    }
    spec = Spectrum(coeffs, max(abs(q + alpha) for q in q_path))
    return SharpnessWitness(c=c, s=s, L=L, q_path=tuple(q_path),
                            spectrum=spec, alpha=alpha, path=path)


@dataclass(frozen=True)
class DivergenceReport:
    """Partial-sum table for a witness: rows (L, S_L, norm_sq, criterion)
    at checkpoint depths, with the final values broken out.

    S_L = sum_{l<=L} l^(2s/m) |coeff at q_l + alpha|^2 telescopes to the
    harmonic number H_L; norm_sq is the zeta(1+2s/m) partial sum; the
    criterion value is taken against the measures lambda_{c_j}^s and grows
    like log L.
    """

    rows: tuple[tuple[int, float, float, float], ...]
    s_final: float
    harmonic: float
    norm_sq: float
    criterion: float
    beta: int


def _checkpoints(L: int) -> list[int]:
    pts = [10 ** k for k in range(0, math.floor(math.log10(L)) + 1)] if L >= 1 else []
    if L not in pts:
        pts.append(L)
    return pts


def divergence_report(w: SharpnessWitness, beta: int) -> DivergenceReport:
    """Partial sums demonstrating that the witness escapes every fixed
    decomposition: S_L reproduces the harmonic number exactly, the norm
    stays below the convergent zeta partial sum, and the criterion series
    against lambda_{c_j}^s keeps growing."""
    beta = int(beta)
    ells = np.arange(1, w.L + 1, dtype=np.float64)
    coeffs = np.array([abs(w.spectrum.coeff(q + w.alpha)) for q in w.q_path])
    s_terms = ells ** (2.0 * w.s / w.m) * coeffs ** 2
    norm_terms = coeffs ** 2
    measures = shift_measures(w.alpha, beta, w.s, w.c)
    ns = np.asarray(w.q_path, dtype=np.int64) + w.alpha
    den = _denominators(measures, ns)
    with np.errstate(divide="ignore"):
        crit_terms = np.where(den > 0.0, norm_terms / den, np.inf)
    s_cum = np.cumsum(s_terms)
    norm_cum = np.cumsum(norm_terms)
    crit_cum = np.cumsum(crit_terms)
    harmonic = float(np.sum(1.0 / ells))
    rows = tuple(
        (lp, float(s_cum[lp - 1]), float(norm_cum[lp - 1]), float(crit_cum[lp - 1]))
        for lp in _checkpoints(w.L)
    )
    # the authoritative final criterion value goes through the shared
    # criterion implementation rather than the vectorized prefix sums
    criterion = ms_criterion(w.spectrum, measures)
    return DivergenceReport(
        rows=rows,
        s_final=float(s_cum[-1]),
        harmonic=harmonic,
        norm_sq=float(norm_cum[-1]),
        criterion=criterion,
        beta=beta,
    )


def witness_to_json_dict(w: SharpnessWitness,
                         report: DivergenceReport | None = None) -> dict:
    from . import spectrum as _spectrum_json

    out = {
        "c": list(w.c),
        "s": w.s,
        "L": w.L,
        "alpha": w.alpha,
        "path_bits": list(w.path.bits),
        "q_path": list(w.q_path),
        "spectrum": _spectrum_json.to_json_dict(w.spectrum),
    }
    if report is not None:
        out["partial_sums"] = [
            {"L": lp, "S_L": s_l, "norm_sq": n2, "criterion": crit}
            for lp, s_l, n2, crit in report.rows
        ]
    return out

"""Exception hierarchy shared by all gendiff modules.

Every domain error derives from GendiffError so the CLI can map them to
exit code 2 uniformly; I/O and parse failures stay ordinary exceptions
(exit code 1).
"""


class GendiffError(Exception):
    """Base class for domain errors."""


class InvalidInput(GendiffError):
    """An argument is outside the documented domain of the operation."""


class AliasingRisk(GendiffError):
    """Sample grid too short for the requested band limit (needs M >= 2N+1)."""


class MagnitudeLimit(GendiffError):
    """Exact integer symbol value would exceed the 2^62 guard."""


class NotInRange(GendiffError):
    """Spectrum is not in the range of the operator: a coefficient that must
    vanish does not.  Carries the offending frequency."""

    def __init__(self, frequency, magnitude, message=None):
        self.frequency = frequency
        self.magnitude = magnitude
        super().__init__(
            message
            or f"coefficient at frequency {frequency} has modulus {magnitude:.3e}, expected 0"
        )


class NotDecomposable(GendiffError):
    """Criterion series diverges: some support frequency is annihilated by
    every measure.  Carries the first offending frequency."""

    def __init__(self, frequency, message=None):
        self.frequency = frequency
        super().__init__(
            message or f"infinite criterion term at frequency {frequency}"
        )


class NotInSubspace(GendiffError):
    """Input spectrum fails the vanishing condition at the operator zeros."""


class BadShiftSet(GendiffError):
    """The chosen shift points annihilate a support frequency; resample shifts."""

    def __init__(self, frequency, message=None):
        self.frequency = frequency
        super().__init__(
            message
            or f"every shifted measure vanishes at support frequency {frequency}; "
            "resample the shift points"
        )


class DegenerateFrequency(GendiffError):
    """n coincides with a symbol zero, so sin((n-gamma)x) is identically 0."""


class DomainMismatch(GendiffError):
    """Partitions to be refined do not share their interval endpoints."""


class OutOfCell(GendiffError):
    """Evaluation point does not belong to the requested refinement cell."""


class StructuralViolation(GendiffError):
    """Input contradicts a structural guarantee of the partition construction."""


class SearchExhausted(GendiffError):
    """No admissible integer found below the search cap.  Carries the level
    (or None for a flat range search) so the caller can widen the cap."""

    def __init__(self, q_cap, level=None, message=None):
        self.q_cap = q_cap
        self.level = level
        at = "" if level is None else f" at level {level}"
        super().__init__(message or f"no admissible q <= {q_cap}{at}")


class DivergenceRisk(UserWarning):
    """The unregularized integral may be infinite (epsilon = 0 with too few
    coordinates for integrability)."""

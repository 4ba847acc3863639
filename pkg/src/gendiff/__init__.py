"""gendiff: generalized-difference decompositions of band-limited functions
on the circle.

Subpackages cover coefficient-space spectra, atomic measures and their
convolution algebra, the quadratic multiplier operator, the decomposition
criterion and constructive certificates, exact zero-adapted partitions,
singular-integral estimation with closed-form bounds, and Diophantine
sharpness witnesses.  Hot kernels run from a compiled extension when built,
with a numpy fallback selected at import (see gendiff._backend.BACKEND).
"""

from ._backend import BACKEND, get_kernels
from .decompose import (
    DecompositionCertificate,
    check_vanishing,
    decompose_gd,
    ms_construct,
    ms_criterion,
    random_shifts,
)
from .errors import (
    AliasingRisk,
    BadShiftSet,
    DegenerateFrequency,
    DivergenceRisk,
    DomainMismatch,
    GendiffError,
    InvalidInput,
    MagnitudeLimit,
    NotDecomposable,
    NotInRange,
    NotInSubspace,
    OutOfCell,
    SearchExhausted,
    StructuralViolation,
)
from .integrals import (
    BoundConstants,
    IntegralEstimate,
    McConfig,
    estimate_J_cell,
    estimate_lhs,
    estimate_rhs,
    folding_identity_check,
    lemma41_constants,
    uniform_bound_scan,
)
from .measures import (
    DiscreteMeasure,
    convolve_measures,
    convolve_with_function,
    dirac,
    lambda_b,
    lambda_ft,
    measure_ft,
    measure_power,
)
from .operators import (
    QuadraticSymbol,
    apply_derivative,
    apply_quadratic,
    solve_quadratic,
    symbol_value,
)
from .partitions import (
    Partition,
    RefinedPartition,
    dist_to_int,
    partition_gamma,
    quadratic_dominates,
    refine,
    refinement_stats,
    sine_lower_bound_check,
    sine_zeros,
    snap_zero_pair,
    theta,
)
from .sharpness import (
    PhiPath,
    SharpnessWitness,
    build_witness,
    dirichlet_q,
    divergence_report,
)
from .spectrum import SampleGrid, Spectrum, analyze, l2_norm, sobolev_energy, synthesize

__version__ = "0.1.0"

"""Decay bounds for functions of matrices over C*-algebras.

Matrices have entries in a C*-algebra (complex scalars, k x k blocks,
continuous functions on an interval, or quaternions). The package evaluates
f(A) by polynomial approximation and bounds ||[f(A)]_ij|| by an exponentially
decaying function of the distance between i and j.
"""

from . import kernels
from .algebra import (
    COMPLEX,
    QUATERNIONS,
    AlgebraElement,
    BlockElement,
    Blocks,
    ComplexScalarElement,
    ComplexScalars,
    EntryAlgebra,
    FunctionElement,
    Functions,
    QuaternionElement,
    Quaternions,
    block_to_quat,
    elem_mul,
    elem_norm,
    func_sup_norm,
    quat_to_block,
)
from .approx import (
    FUNCTIONS,
    BernsteinEllipse,
    ChebyshevSeries,
    DiskRegion,
    ScalarFunction,
    TaylorSeries,
    cheb_interpolate,
    cheb_tail_bound,
    disk_max,
    ellipse_max,
    taylor_coeffs,
)
from .bounds import (
    CROUZEIX,
    CROUZEIX_CONJECTURE,
    DecayBound,
    asymmetric_ratios,
    bernstein_bound,
    bound_matrix,
    fov_disk_radius,
    optimize_chi,
    taylor_bound,
)
from .errors import (
    ApproximationFailureError,
    DecayError,
    IncompatibleOperandsError,
    InvalidElementError,
    InvalidIntervalError,
    InvalidRadiusError,
    NumericFailureError,
    PreconditionViolationError,
    RegionViolationError,
)
from .funcalc import (
    MatfunResult,
    entry_norm_matrix,
    eval_poly_matrix,
    inverse_unit_triangular,
    matfun_hermitian,
    matfun_quaternion,
    matfun_taylor,
)
from .generators import LCG, generate
from .harness import PipelineParams, VerificationReport, emit, from_json, run_pipeline
from .matrix import (
    Bandwidths,
    CStarMatrix,
    bandwidths,
    graph_distances,
    is_hermitian,
    mat_mul,
    matricial_norm,
    op_norm_upper,
    operator_norm,
    pointwise_invertible,
    rho_upper,
    scale_shift_hermitian,
    spectral_norm_2,
)

__version__ = "0.1.0"

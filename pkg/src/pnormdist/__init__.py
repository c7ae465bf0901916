"""p-norm distance matrices for radial basis function interpolation.

Builds phi(||x^i - x^j||_p) matrices, certifies their invertibility for
p in (1, 2] through almost-negative-definite (AND) spectral tests and
determinant-sign certificates, embeds AND matrices as squared Euclidean
distances, and constructs provably singular point configurations for every
p > 2 from orthogonal cube pairs and Bernstein-polynomial root-finding.
"""

from .andmatrix import (
    AndReport,
    DetSignCertificate,
    Embedding,
    check_and,
    det_sign_certificate,
    psd_factor,
    restrict_to_zero_sum,
    schoenberg_embed,
)
from .errors import (
    CertificationError,
    EmbeddingError,
    InputError,
    NotAndError,
    NotPsdError,
    SingularSystemError,
    VerdictMismatchError,
)
from .geometry import (
    DistanceMatrix,
    PExponent,
    PointSet,
    build_distance_matrix,
    pnorm,
    read_matrix_csv,
    read_points_csv,
    write_matrix_csv,
    write_points_csv,
)
from .interpolation import Interpolant, evaluate_interpolant, fit
from .profiles import (
    RadialProfile,
    classify_composition,
    cm_derivative_spotcheck,
    compose,
    evaluate,
    exponential,
    identity,
    matrix_from_profile,
    multiquadric,
    power,
)
from .singular import (
    CertificationRecord,
    CubeConfig,
    ReducedSystem,
    RootResult,
    bernstein_half,
    certify_singular,
    cube_config,
    find_pmn,
    find_pn,
    find_theta,
    phi,
    phi_scaled,
    psi,
    psi_limit,
    rate_table,
    reduced_system,
    vertex_psum,
)

__version__ = "0.1.0"

__all__ = [
    "AndReport",
    "CertificationError",
    "CertificationRecord",
    "CubeConfig",
    "DetSignCertificate",
    "DistanceMatrix",
    "Embedding",
    "EmbeddingError",
    "InputError",
    "Interpolant",
    "NotAndError",
    "NotPsdError",
    "PExponent",
    "PointSet",
    "RadialProfile",
    "ReducedSystem",
    "RootResult",
    "SingularSystemError",
    "VerdictMismatchError",
    "bernstein_half",
    "build_distance_matrix",
    "certify_singular",
    "check_and",
    "classify_composition",
    "cm_derivative_spotcheck",
    "compose",
    "cube_config",
    "det_sign_certificate",
    "evaluate",
    "evaluate_interpolant",
    "exponential",
    "find_pmn",
    "find_pn",
    "find_theta",
    "fit",
    "identity",
    "matrix_from_profile",
    "multiquadric",
    "phi",
    "phi_scaled",
    "pnorm",
    "power",
    "psd_factor",
    "psi",
    "psi_limit",
    "rate_table",
    "read_matrix_csv",
    "read_points_csv",
    "reduced_system",
    "restrict_to_zero_sum",
    "schoenberg_embed",
    "vertex_psum",
    "write_matrix_csv",
    "write_points_csv",
]

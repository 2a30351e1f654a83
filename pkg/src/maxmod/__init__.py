"""Maximum modulus principle on the unit disc, checked through unitary dilations."""

__version__ = "0.1.0"

from .approx import (
    AnalyticCertificate,
    SeriesSpec,
    SeriesTruncation,
    certify_analytic,
    truncate_series,
)
from .calculus import (
    BoundaryMax,
    Poly,
    boundary_max,
    compression_value,
    eval_matrix,
    eval_point,
)
from .certifier import (
    CertificationReport,
    SweepRecord,
    certify_point,
    max_modulus_check,
    sweep_disc,
)
from .dilation import DilationMatrix, build_dilation, compression_moment, moment_residual
from .errors import MaxModError
from .linalg import (
    SpectralDecomposition,
    adjoint,
    matmul,
    operator_norm,
    unitarity_residual,
    unitary_spectrum,
)

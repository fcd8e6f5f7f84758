"""q-Fourier transforms of admissible densities, backed by the C++ core."""

from ._core import (
    BranchCutError,
    CollapseReport,
    ConvergenceError,
    DegenerateParameterError,
    DensitySpec,
    DomainError,
    EquivalenceClassProbe,
    FirstRegimePrefactor,
    HilhorstFamily,
    InverseConfig,
    NumericError,
    QGaussianDensity,
    QuadratureConfig,
    RecoveryReport,
    RegimeBracket,
    SeparationReport,
    TabulatedDensity,
    TransformSample,
    UnachievableTargetError,
    build_class,
    criterion_names,
    ft_diagonal,
    gauss_2f1,
    hilhorst_full_closed,
    hilhorst_lambda,
    hilhorst_lambda_infimum,
    hilhorst_uts_closed,
    linear_grid,
    q_exp,
    qft_batch,
    qft_complex,
    qft_real,
    roundtrip,
    selftest,
    solve_b_for_lambda,
    verify_collapse,
    verify_normalization,
    verify_separation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Phase estimation in a coherent-light Mach-Zehnder interferometer read out
by multi-outcome (binned) homodyne detection.

Closed-form outcome probabilities, signals, error-propagation sensitivities,
classical Fisher information, and seeded Monte Carlo simulation with an
inversion estimator.  The CLI lives in mzhomodyne.cli.
"""

from .interferometer import (
    LEFTOVER,
    BinningScheme,
    GaussianState,
    InterferometerConfig,
    InvalidOutcome,
    InvalidScheme,
    Outcome,
    OutcomeDistribution,
    bin_probability,
    bin_probability_derivative,
    coherent_vacuum_state,
    default_cutoff,
    g_plus_minus,
    mode_mix_matrix,
    outcome_distribution,
    quadrature_pdf,
    wigner_oracle_pdf,
)
from .metrics import (
    FIXED_RANDOM_EIGENVALUES,
    AlphabetMismatch,
    DegenerateSignal,
    NoFringe,
    NoSolution,
    Observable,
    SchemeNotBinary,
    SignalPoint,
    SweepGrid,
    best_sensitivity,
    binarized_cfi,
    binary_sensitivity,
    cfi,
    continuous_signal,
    crb,
    error_propagation_sensitivity,
    fwhm,
    fwhm_continuous,
    signal,
    signal_peaks,
    sweep,
    visibility,
    visibility_boundary,
)
from .numerics import (
    Interval,
    NoSignChange,
    RandomStream,
    central_diff,
    erf,
    erf_diff,
    erfc,
    find_root,
    minimize_scalar,
)
from .simulate import (
    CalibrationPoint,
    CountsRecord,
    EstimationReport,
    NonMonotoneBranch,
    ReplicaSet,
    calibration_curve,
    estimate,
    invert_signal,
    monotone_branch,
    run_replicas,
    sample_outcomes,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatch",
    "BinningScheme",
    "CalibrationPoint",
    "CountsRecord",
    "DegenerateSignal",
    "EstimationReport",
    "FIXED_RANDOM_EIGENVALUES",
    "GaussianState",
    "Interval",
    "InterferometerConfig",
    "InvalidOutcome",
    "InvalidScheme",
    "LEFTOVER",
    "NoFringe",
    "NoSignChange",
    "NoSolution",
    "NonMonotoneBranch",
    "Observable",
    "Outcome",
    "OutcomeDistribution",
    "RandomStream",
    "ReplicaSet",
    "SchemeNotBinary",
    "SignalPoint",
    "SweepGrid",
    "best_sensitivity",
    "bin_probability",
    "bin_probability_derivative",
    "binarized_cfi",
    "binary_sensitivity",
    "calibration_curve",
    "central_diff",
    "cfi",
    "coherent_vacuum_state",
    "continuous_signal",
    "crb",
    "default_cutoff",
    "erf",
    "erf_diff",
    "erfc",
    "error_propagation_sensitivity",
    "estimate",
    "find_root",
    "fwhm",
    "fwhm_continuous",
    "g_plus_minus",
    "invert_signal",
    "minimize_scalar",
    "mode_mix_matrix",
    "monotone_branch",
    "outcome_distribution",
    "quadrature_pdf",
    "run_replicas",
    "sample_outcomes",
    "signal",
    "signal_peaks",
    "sweep",
    "visibility",
    "visibility_boundary",
    "wigner_oracle_pdf",
]

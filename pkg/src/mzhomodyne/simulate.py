"""Monte Carlo simulation of the binned homodyne measurement.

Repeated N-shot experiments produce occurrence frequencies N_k/N; the
inversion estimator maps the measured signal back through the calibration
curve g(phi) on a monotone branch around the true phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .interferometer import BinningScheme, InterferometerConfig, outcome_distribution
from .metrics import Observable, signal
from .numerics import Interval, RandomStream, find_root

__all__ = [
    "CalibrationPoint",
    "CountsRecord",
    "EstimationReport",
    "NonMonotoneBranch",
    "ReplicaSet",
    "calibration_curve",
    "estimate",
    "invert_signal",
    "monotone_branch",
    "run_replicas",
    "sample_outcomes",
]

_BRANCH_STEP = 1e-3
_SLOPE_TOL = 1e-10


class NonMonotoneBranch(ValueError):
    """Signal slope changes sign on the requested inversion branch."""


@dataclass(frozen=True)
class CountsRecord:
    """Outcome tallies of one N-shot experiment at a fixed phase."""

    phi_true: float
    shots: int
    bin_counts: tuple[int, ...]
    leftover_count: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if self.leftover_count < 0 or any(c < 0 for c in self.bin_counts):
            raise ValueError("counts must be non-negative")
        total = sum(self.bin_counts) + self.leftover_count
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots}")

    def all_counts(self) -> np.ndarray:
        """Bins then leftover, matching the outcome alphabet order."""
        return np.array(self.bin_counts + (self.leftover_count,))

    def frequencies(self) -> np.ndarray:
        return self.all_counts() / self.shots


@dataclass(frozen=True)
class ReplicaSet:
    """M independent repetitions of the same N-shot experiment."""

    phi_true: float
    shots: int
    master_seed: int
    records: tuple[CountsRecord, ...]

    def __post_init__(self):
        if len(self.records) < 1:
            raise ValueError("need at least one record")
        for r in self.records:
            if r.phi_true != self.phi_true or r.shots != self.shots:
                raise ValueError("records disagree on phi_true or shots")

    @property
    def replicas(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class EstimationReport:
    """Inversion-estimator statistics over a ReplicaSet.

    sigma is the sqrt(N)-scaled RMS error about the true phase, the
    shot-normalized spread that a Cramer-Rao bound is stated for;
    std_dev is the population spread of the estimates about their own mean.
    """

    phi_true: float
    shots: int
    estimates: tuple[float, ...]
    mean_estimate: float
    bias: float
    std_dev: float
    sigma: float
    clamp_count: int

    @property
    def clamp_fraction(self) -> float:
        return self.clamp_count / len(self.estimates)


def sample_outcomes(cfg: InterferometerConfig, scheme: BinningScheme, phi: float,
                    shots: int, stream: RandomStream) -> CountsRecord:
    """Classify `shots` uniform draws by cumulative outcome probability.

    The partition is left-open right-closed in the alphabet order -cutoff,
    ..., +cutoff, with everything above the final prefix sum treated as
    Leftover; xi <= P(-cutoff) selects the first bin.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    prefix = np.cumsum(outcome_distribution(cfg, scheme, phi).bin_probs)
    xi = stream.uniform(size=shots)
    idx = np.searchsorted(prefix, xi, side="left")
    counts = np.bincount(idx, minlength=len(prefix) + 1)
    return CountsRecord(
        phi_true=float(phi),
        shots=shots,
        bin_counts=tuple(int(c) for c in counts[:-1]),
        leftover_count=int(counts[-1]),
    )


def _replicas_with_offset(cfg, scheme, phi, shots, replicas, master_seed,
                          stream_offset):
    records = tuple(
        sample_outcomes(cfg, scheme, phi, shots,
                        RandomStream(master_seed, stream_offset + i))
        for i in range(replicas)
    )
    return ReplicaSet(float(phi), shots, master_seed, records)


def run_replicas(cfg: InterferometerConfig, scheme: BinningScheme, phi: float,
                 shots: int, replicas: int, master_seed: int) -> ReplicaSet:
    """M independent records; replica i consumes random stream index i."""
    if replicas < 1:
        raise ValueError(f"replicas must be >= 1, got {replicas}")
    return _replicas_with_offset(cfg, scheme, phi, shots, replicas, master_seed, 0)


def monotone_branch(cfg: InterferometerConfig, scheme: BinningScheme,
                    obs: Observable, phi_true: float) -> Interval:
    """Largest interval around phi_true where the sampled signal slope keeps
    one sign (resolution 1e-3 rad, capped at half a period each way).

    At an exact extremum the sign is taken from the right neighbor, so the
    branch starts at phi_true itself.
    """
    slope = lambda x: signal(cfg, scheme, obs, x).slope
    s0 = slope(phi_true)
    if s0 == 0.0:
        s0 = slope(phi_true + _BRANCH_STEP)
    if s0 == 0.0:
        raise NonMonotoneBranch(f"signal is flat around phi={phi_true}")
    positive = s0 > 0.0

    def walk(direction: float) -> float:
        edge = phi_true
        for i in range(1, int(math.pi / _BRANCH_STEP) + 1):
            x = phi_true + direction * i * _BRANCH_STEP
            if (slope(x) > 0.0) != positive:
                break
            edge = x
        return edge

    lo, hi = walk(-1.0), walk(1.0)
    if lo == hi:
        raise NonMonotoneBranch(f"no monotone run around phi={phi_true}")
    return Interval(lo, hi)


def _check_branch_monotone(cfg, scheme, obs, branch):
    n_samples = max(int(branch.width / _BRANCH_STEP), 2)
    slopes = [
        signal(cfg, scheme, obs, x).slope
        for x in np.linspace(branch.lo, branch.hi, n_samples + 1)
    ]
    if any(s > _SLOPE_TOL for s in slopes) and any(s < -_SLOPE_TOL for s in slopes):
        raise NonMonotoneBranch(
            f"slope changes sign on [{branch.lo}, {branch.hi}]"
        )


def _invert_unchecked(cfg, scheme, obs, measured, branch):
    g = lambda x: signal(cfg, scheme, obs, x).mean
    g_lo, g_hi = g(branch.lo), g(branch.hi)
    if measured > max(g_lo, g_hi):
        return (branch.lo if g_lo >= g_hi else branch.hi), True
    if measured < min(g_lo, g_hi):
        return (branch.lo if g_lo <= g_hi else branch.hi), True
    return find_root(lambda x: g(x) - measured, branch), False


def invert_signal(cfg: InterferometerConfig, scheme: BinningScheme,
                  obs: Observable, measured_value: float,
                  branch: Interval) -> float:
    """Phase whose signal mean equals measured_value on the given branch.

    The branch is re-sampled first and rejected if the slope changes sign.
    Values beyond the branch's signal range clamp to the endpoint whose
    signal is nearest (finite-sample fluctuations routinely overshoot).
    """
    branch = branch if isinstance(branch, Interval) else Interval(*branch)
    _check_branch_monotone(cfg, scheme, obs, branch)
    phi, _ = _invert_unchecked(cfg, scheme, obs, measured_value, branch)
    return phi


def estimate(cfg: InterferometerConfig, scheme: BinningScheme, obs: Observable,
             replicas: ReplicaSet) -> EstimationReport:
    """Invert each replica's measured signal on the monotone branch around
    the true phase and aggregate the estimator statistics."""
    branch = monotone_branch(cfg, scheme, obs, replicas.phi_true)
    _check_branch_monotone(cfg, scheme, obs, branch)
    mu = obs.all_values()
    estimates = []
    clamped = 0
    for record in replicas.records:
        measured = math.fsum(mu * record.all_counts()) / record.shots
        phi_inv, was_clamped = _invert_unchecked(cfg, scheme, obs, measured, branch)
        estimates.append(phi_inv)
        clamped += was_clamped
    m = len(estimates)
    mean = math.fsum(estimates) / m
    std_dev = math.sqrt(math.fsum((e - mean) ** 2 for e in estimates) / m)
    rms = math.sqrt(math.fsum((e - replicas.phi_true) ** 2 for e in estimates) / m)
    return EstimationReport(
        phi_true=replicas.phi_true,
        shots=replicas.shots,
        estimates=tuple(estimates),
        mean_estimate=mean,
        bias=mean - replicas.phi_true,
        std_dev=std_dev,
        sigma=math.sqrt(replicas.shots) * rms,
        clamp_count=clamped,
    )


@dataclass(frozen=True)
class CalibrationPoint:
    """Mean and spread of the occurrence frequencies at one grid phase."""

    phi: float
    mean_freqs: np.ndarray
    std_freqs: np.ndarray


def calibration_curve(cfg: InterferometerConfig, scheme: BinningScheme,
                      phi_grid, shots: int, replicas: int,
                      master_seed: int) -> list[CalibrationPoint]:
    """Replica statistics of N_k/N across a phase grid.

    Grid point p uses stream indices p*replicas .. p*replicas + replicas-1,
    so a single-point grid reproduces run_replicas exactly and no two grid
    points share draws.
    """
    phi_grid = [float(p) for p in phi_grid]
    if len(phi_grid) == 0:
        raise ValueError("phi_grid must be nonempty")
    points = []
    for p, phi in enumerate(phi_grid):
        rs = _replicas_with_offset(cfg, scheme, phi, shots, replicas,
                                   master_seed, p * replicas)
        freqs = np.array([r.frequencies() for r in rs.records])
        points.append(CalibrationPoint(
            phi=phi,
            mean_freqs=freqs.mean(axis=0),
            std_freqs=freqs.std(axis=0, ddof=0),
        ))
    return points

"""Mach-Zehnder interferometer with binned homodyne readout.

A coherent state |alpha0> enters one port, vacuum the other.  After the
phase phi the measured p-quadrature of output mode a is Gaussian,

    P(p|phi) = sqrt(2/pi) * exp(-2*(p + (alpha0/2)*sin(phi))**2),

with the vacuum convention Var(p) = 1/4.  The homodyne record is coarse
grained into 2*cutoff+1 bins of half-width a centered at k*b for
k = -cutoff..cutoff, plus a leftover outcome collecting everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .numerics import erf_diff

__all__ = [
    "BinningScheme",
    "GaussianState",
    "InterferometerConfig",
    "InvalidOutcome",
    "InvalidScheme",
    "LEFTOVER",
    "Outcome",
    "OutcomeDistribution",
    "bin_probability",
    "bin_probability_derivative",
    "coherent_vacuum_state",
    "default_cutoff",
    "g_plus_minus",
    "mode_mix_matrix",
    "outcome_distribution",
    "quadrature_pdf",
    "wigner_oracle_pdf",
]

_SQRT2 = math.sqrt(2.0)
_INV_SQRTPI = 1.0 / math.sqrt(math.pi)


class InvalidScheme(ValueError):
    """Binning parameters violate a > 0, b > 2a, or cutoff >= 0."""


class InvalidOutcome(ValueError):
    """Outcome does not belong to the scheme's alphabet."""


@dataclass(frozen=True)
class InterferometerConfig:
    """Input coherent amplitude alpha0 > 0 (mean photon number alpha0**2)."""

    alpha0: float

    def __post_init__(self):
        if not self.alpha0 > 0:
            raise ValueError(f"alpha0 must be positive, got {self.alpha0}")

    @property
    def nbar(self) -> float:
        return self.alpha0 * self.alpha0

    @classmethod
    def from_nbar(cls, nbar: float) -> "InterferometerConfig":
        if not nbar > 0:
            raise ValueError(f"nbar must be positive, got {nbar}")
        return cls(math.sqrt(nbar))


@dataclass(frozen=True)
class Outcome:
    """One element of the measurement alphabet: Bin(k) or Leftover."""

    index: int | None = None

    @classmethod
    def bin(cls, k: int) -> "Outcome":
        return cls(int(k))

    @classmethod
    def leftover(cls) -> "Outcome":
        return cls(None)

    @property
    def is_leftover(self) -> bool:
        return self.index is None

    def __repr__(self):
        return "Leftover" if self.index is None else f"Bin({self.index})"


LEFTOVER = Outcome(None)


@dataclass(frozen=True)
class BinningScheme:
    """Bins [k*spacing - half_width, k*spacing + half_width], k = -cutoff..cutoff.

    spacing > 2*half_width keeps the bins disjoint.
    """

    half_width: float
    spacing: float
    cutoff: int

    def __post_init__(self):
        if not self.half_width > 0:
            raise InvalidScheme(f"half_width must be positive, got {self.half_width}")
        if not self.spacing > 2.0 * self.half_width:
            raise InvalidScheme(
                f"spacing must exceed 2*half_width, got spacing={self.spacing}, "
                f"half_width={self.half_width}"
            )
        if not (isinstance(self.cutoff, int) and self.cutoff >= 0):
            raise InvalidScheme(f"cutoff must be a non-negative integer, got {self.cutoff}")

    @classmethod
    def binary(cls, half_width: float) -> "BinningScheme":
        # single bin at the origin; spacing is irrelevant for cutoff=0 but
        # must still satisfy the disjointness invariant
        return cls(half_width, 4.0 * half_width, 0)

    @property
    def n_outcomes(self) -> int:
        return 2 * self.cutoff + 2

    def bin_indices(self) -> np.ndarray:
        return np.arange(-self.cutoff, self.cutoff + 1)

    def centers(self) -> np.ndarray:
        return self.spacing * self.bin_indices()

    def center(self, k: int) -> float:
        self._check_bin(k)
        return self.spacing * k

    def outcomes(self) -> tuple[Outcome, ...]:
        bins = tuple(Outcome.bin(int(k)) for k in self.bin_indices())
        return bins + (LEFTOVER,)

    def _check_bin(self, k: int):
        if abs(k) > self.cutoff:
            raise InvalidOutcome(f"bin index {k} outside |k| <= {self.cutoff}")


def default_cutoff(cfg: InterferometerConfig, half_width: float, spacing: float) -> int:
    """Cutoff covering the signal swing: round(alpha0 / (2*spacing)).

    Rounds to nearest, ties away from zero, so the outermost bins sit at
    the quadrature turning points +-alpha0/2.
    """
    if not half_width > 0:
        raise InvalidScheme(f"half_width must be positive, got {half_width}")
    if not spacing > 2.0 * half_width:
        raise InvalidScheme(
            f"spacing must exceed 2*half_width, got spacing={spacing}, half_width={half_width}"
        )
    x = cfg.alpha0 / (2.0 * spacing)
    return int(math.floor(x + 0.5))


# ---------------------------------------------------------------------------
# Quadrature distribution and the Gaussian-propagation oracle.


def quadrature_pdf(cfg: InterferometerConfig, phi: float, p):
    """Closed-form pdf of the measured p quadrature at phase phi."""
    shift = 0.5 * cfg.alpha0 * math.sin(phi)
    arr = np.asarray(p, dtype=np.float64)
    out = math.sqrt(2.0 / math.pi) * np.exp(-2.0 * (arr + shift) ** 2)
    return float(out) if arr.ndim == 0 else out


@dataclass(frozen=True)
class GaussianState:
    """Two-mode Gaussian Wigner function: mean (x_a, p_a, x_b, p_b), 4x4 covariance.

    Vacuum covariance is (1/4)*I in this convention.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        cov = np.asarray(self.cov, dtype=np.float64)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        if mean.shape != (4,):
            raise ValueError(f"mean must have shape (4,), got {mean.shape}")
        if cov.shape != (4, 4):
            raise ValueError(f"cov must have shape (4, 4), got {cov.shape}")
        if not np.allclose(cov, cov.T, rtol=0.0, atol=1e-14):
            raise ValueError("cov must be symmetric")
        if np.min(np.linalg.eigvalsh(cov)) <= 0.0:
            raise ValueError("cov must be positive definite")


def coherent_vacuum_state(cfg: InterferometerConfig) -> GaussianState:
    """|alpha0> in mode a, vacuum in mode b."""
    return GaussianState(
        mean=np.array([cfg.alpha0, 0.0, 0.0, 0.0]),
        cov=0.25 * np.eye(4),
    )


def mode_mix_matrix(phi: float) -> np.ndarray:
    """Real 4x4 form of the mode map used by the output Wigner function.

    The output Wigner function is W_out(v) = W_in(S v) where S represents
    the complex map
        a~ =  a*(e^{i phi}-1)/2 + b*(e^{i phi}+1)/2
        b~ = -a*(e^{i phi}+1)/2 - b*(e^{i phi}-1)/2
    on coordinates (x_a, p_a, x_b, p_b).
    """
    u = complex(math.cos(phi), math.sin(phi))
    t = 0.5 * np.array([[u - 1.0, u + 1.0], [-(u + 1.0), -(u - 1.0)]])
    s = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            c = t[i, j]
            s[2 * i:2 * i + 2, 2 * j:2 * j + 2] = [[c.real, -c.imag], [c.imag, c.real]]
    return s


def wigner_oracle_pdf(cfg: InterferometerConfig, phi: float, p) -> float:
    """p-quadrature pdf obtained by propagating the full two-mode Gaussian.

    Independent check of quadrature_pdf: builds the input Wigner function,
    applies the 4x4 mode map by generic mean/covariance propagation, and
    marginalizes mode a onto p.  No binning formulas are reused.
    """
    state = coherent_vacuum_state(cfg)
    s_inv = np.linalg.inv(mode_mix_matrix(phi))
    mean = s_inv @ state.mean
    cov = s_inv @ state.cov @ s_inv.T
    mu, var = mean[1], cov[1, 1]
    arr = np.asarray(p, dtype=np.float64)
    out = np.exp(-((arr - mu) ** 2) / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)
    return float(out) if arr.ndim == 0 else out


# ---------------------------------------------------------------------------
# Binned outcome probabilities.


def g_plus_minus(cfg: InterferometerConfig, scheme: BinningScheme, phi: float):
    """(g_minus, g_plus) with g+- = sqrt(2)*(alpha0*sin(phi)/2 +- half_width)."""
    c = 0.5 * cfg.alpha0 * math.sin(phi)
    ga = _SQRT2 * scheme.half_width
    return _SQRT2 * c - ga, _SQRT2 * c + ga


def _erf_arguments(cfg, scheme, phi):
    """Arrays (G_minus, G_plus) over k = -cutoff..cutoff.

    P(k|phi) integrates the Gaussian over bin k, which in erf form uses
    G+- = sqrt(2)*(alpha0*sin(phi)/2 + k*spacing +- half_width).
    """
    c = 0.5 * cfg.alpha0 * math.sin(phi)
    shift = _SQRT2 * (c + scheme.centers())
    ga = _SQRT2 * scheme.half_width
    return shift - ga, shift + ga


def _bin_probs(cfg, scheme, phi) -> np.ndarray:
    g_lo, g_hi = _erf_arguments(cfg, scheme, phi)
    return 0.5 * erf_diff(g_lo, g_hi)


def _bin_derivs(cfg, scheme, phi) -> np.ndarray:
    # d/dphi [erf(G)] = (2/sqrt(pi)) exp(-G^2) * dG/dphi with
    # dG/dphi = sqrt(2)*alpha0*cos(phi)/2 = alpha0*cos(phi)/sqrt(2) for both
    # limits, so
    # P'(k|phi) = (1/sqrt(pi)) * (alpha0*cos(phi)/sqrt(2))
    #             * (exp(-G_plus^2) - exp(-G_minus^2))
    g_lo, g_hi = _erf_arguments(cfg, scheme, phi)
    factor = _INV_SQRTPI * cfg.alpha0 * math.cos(phi) / _SQRT2
    return factor * (np.exp(-g_hi * g_hi) - np.exp(-g_lo * g_lo))


def bin_probability(cfg: InterferometerConfig, scheme: BinningScheme,
                    outcome: Outcome, phi: float) -> float:
    """P(outcome | phi); the Leftover outcome takes 1 - sum over bins."""
    probs = _bin_probs(cfg, scheme, phi)
    if outcome.is_leftover:
        return max(0.0, 1.0 - math.fsum(probs))
    scheme._check_bin(outcome.index)
    return float(probs[outcome.index + scheme.cutoff])


def bin_probability_derivative(cfg: InterferometerConfig, scheme: BinningScheme,
                               outcome: Outcome, phi: float) -> float:
    """dP(outcome|phi)/dphi in closed form.

    Bin derivatives follow from differentiating the erf integral bounds
    (see _bin_derivs); the Leftover derivative is the negative sum of the
    bin derivatives, so the alphabet's derivatives sum to zero exactly.
    """
    derivs = _bin_derivs(cfg, scheme, phi)
    if outcome.is_leftover:
        return -math.fsum(derivs)
    scheme._check_bin(outcome.index)
    return float(derivs[outcome.index + scheme.cutoff])


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities and phi-derivatives for the full alphabet at one phase."""

    phi: float
    cutoff: int
    bin_probs: np.ndarray
    leftover_prob: float
    bin_derivs: np.ndarray
    leftover_deriv: float

    def outcomes(self) -> tuple[Outcome, ...]:
        bins = tuple(Outcome.bin(int(k)) for k in range(-self.cutoff, self.cutoff + 1))
        return bins + (LEFTOVER,)

    def prob(self, outcome: Outcome) -> float:
        if outcome.is_leftover:
            return self.leftover_prob
        if abs(outcome.index) > self.cutoff:
            raise InvalidOutcome(f"bin index {outcome.index} outside |k| <= {self.cutoff}")
        return float(self.bin_probs[outcome.index + self.cutoff])

    def deriv(self, outcome: Outcome) -> float:
        if outcome.is_leftover:
            return self.leftover_deriv
        if abs(outcome.index) > self.cutoff:
            raise InvalidOutcome(f"bin index {outcome.index} outside |k| <= {self.cutoff}")
        return float(self.bin_derivs[outcome.index + self.cutoff])

    @cached_property
    def probs(self) -> dict:
        return {o: self.prob(o) for o in self.outcomes()}

    @cached_property
    def derivs(self) -> dict:
        return {o: self.deriv(o) for o in self.outcomes()}

    def all_probs(self) -> np.ndarray:
        """Bins then leftover, matching outcomes() order."""
        return np.append(self.bin_probs, self.leftover_prob)

    def all_derivs(self) -> np.ndarray:
        return np.append(self.bin_derivs, self.leftover_deriv)


def outcome_distribution(cfg: InterferometerConfig, scheme: BinningScheme,
                         phi: float) -> OutcomeDistribution:
    """Full alphabet probabilities and derivatives at one phase."""
    probs = _bin_probs(cfg, scheme, phi)
    derivs = _bin_derivs(cfg, scheme, phi)
    return OutcomeDistribution(
        phi=float(phi),
        cutoff=scheme.cutoff,
        bin_probs=probs,
        leftover_prob=max(0.0, 1.0 - math.fsum(probs)),
        bin_derivs=derivs,
        leftover_deriv=-math.fsum(derivs),
    )

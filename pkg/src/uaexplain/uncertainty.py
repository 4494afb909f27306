"""MC-sample summaries and percentile-based uncertainty profiles.

The uncertainty measure is the per-instance predictive variance of the T
stochastic passes (population variance).  Profiles discretize that variance
against thresholds fitted as percentiles of the training-set variances;
domain experts may override the thresholds outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .predictor import McSamples

LABELS = ("low", "medium", "high")
COLORS = {"low": "green", "medium": "amber", "high": "red"}
_RANK = {label: i for i, label in enumerate(LABELS)}


class UncertaintyError(ValueError):
    pass


class EmptySamples(UncertaintyError):
    pass


class TooFewSamples(UncertaintyError):
    pass


class EmptyList(UncertaintyError):
    pass


@dataclass(frozen=True)
class McSummary:
    """Mean, variance and empirical 95% interval of one sample vector."""

    mean: float
    variance: float
    std: float
    interval_low: float
    interval_high: float
    T: int

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "variance": self.variance,
            "std": self.std,
            "interval_low": self.interval_low,
            "interval_high": self.interval_high,
            "t": self.T,
        }


@dataclass(frozen=True)
class ProfileConfig:
    """Variance thresholds separating low/medium/high uncertainty.

    ``source`` records whether the thresholds came from training-set
    percentiles or from an expert override.
    """

    t_low: float
    t_high: float
    source: str = "percentile"
    p_low: float | None = 0.25
    p_high: float | None = 0.75

    labels = LABELS
    colors = COLORS

    def __post_init__(self):
        if not (0.0 <= self.t_low <= self.t_high):
            raise UncertaintyError("thresholds must satisfy 0 <= t_low <= t_high")
        if self.source not in ("percentile", "expert_override"):
            raise UncertaintyError(f"unknown source {self.source!r}")

    @classmethod
    def expert(cls, t_low: float, t_high: float) -> "ProfileConfig":
        return cls(t_low=t_low, t_high=t_high, source="expert_override",
                   p_low=None, p_high=None)

    def to_dict(self) -> dict:
        return {"t_low": self.t_low, "t_high": self.t_high, "source": self.source,
                "p_low": self.p_low, "p_high": self.p_high}

    @classmethod
    def from_dict(cls, obj: dict) -> "ProfileConfig":
        return cls(t_low=float(obj["t_low"]), t_high=float(obj["t_high"]),
                   source=obj.get("source", "percentile"),
                   p_low=obj.get("p_low"), p_high=obj.get("p_high"))


@dataclass(frozen=True)
class ProfileDistribution:
    counts: dict  # label -> count
    dominant: str

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def shares(self) -> dict:
        n = self.total
        return {label: (self.counts[label] / n if n else 0.0) for label in LABELS}

    def to_dict(self) -> dict:
        return {"counts": {l: self.counts[l] for l in LABELS}, "dominant": self.dominant}


def mc_variance(values: np.ndarray) -> float:
    """Population variance of a sample vector, exactly 0.0 when all passes
    agree (plain ``np.var`` leaves rounding dust of order ulp^2 there)."""
    values = np.asarray(values, dtype=np.float64)
    if values.size <= 1 or np.ptp(values) == 0.0:
        return 0.0
    return float(np.var(values))


def mc_variance_rows(matrix: np.ndarray) -> np.ndarray:
    """Row-wise ``mc_variance`` over an (n, T) sample matrix."""
    matrix = np.asarray(matrix, dtype=np.float64)
    out = np.var(matrix, axis=1)
    out[np.ptp(matrix, axis=1) == 0.0] = 0.0
    return out


def summarize(samples) -> McSummary:
    """Summarize MC samples: mean, population variance, 95% interval.

    The interval is the interpolated [2.5th, 97.5th] percentile range of the
    samples themselves (no normality assumption).  A single sample has
    variance 0 by convention.
    """
    values = samples.values if isinstance(samples, McSamples) else np.asarray(samples, dtype=np.float64)
    if values.size == 0:
        raise EmptySamples("no MC samples to summarize")
    t = int(values.size)
    mean = float(np.mean(values))
    variance = mc_variance(values)
    lo, hi = (float(v) for v in np.percentile(values, [2.5, 97.5]))
    return McSummary(mean=mean, variance=variance, std=math.sqrt(variance),
                     interval_low=lo, interval_high=hi, T=t)


def fit_profiles(train_variances, p_low: float = 0.25, p_high: float = 0.75) -> ProfileConfig:
    """Thresholds at the given percentiles of per-instance training variances.

    Percentiles interpolate linearly between order statistics (h = (n-1)*p).
    """
    v = np.asarray(train_variances, dtype=np.float64)
    if v.size < 2:
        raise TooFewSamples("need at least 2 training variances to fit profiles")
    if np.any(v < 0):
        raise UncertaintyError("variances must be nonnegative")
    if not (0.0 <= p_low <= p_high <= 1.0):
        raise UncertaintyError("percentiles must satisfy 0 <= p_low <= p_high <= 1")
    t_low, t_high = (float(x) for x in np.percentile(v, [100.0 * p_low, 100.0 * p_high]))
    return ProfileConfig(t_low=t_low, t_high=t_high, source="percentile",
                         p_low=p_low, p_high=p_high)


def assign_profile(variance: float, cfg: ProfileConfig) -> str:
    """low if v <= t_low, medium if v <= t_high, high above (boundaries inclusive below)."""
    if variance < 0:
        raise UncertaintyError("variance must be nonnegative")
    if variance <= cfg.t_low:
        return "low"
    if variance <= cfg.t_high:
        return "medium"
    return "high"


def profile_distribution(variances, cfg: ProfileConfig) -> ProfileDistribution:
    """Counts per profile; ties for dominant break toward higher uncertainty."""
    v = np.asarray(variances, dtype=np.float64)
    if v.size == 0:
        raise EmptyList("no variances given")
    counts = {label: 0 for label in LABELS}
    for value in v:
        counts[assign_profile(float(value), cfg)] += 1
    dominant = max(LABELS, key=lambda l: (counts[l], _RANK[l]))
    return ProfileDistribution(counts=counts, dominant=dominant)


def describe(summary: McSummary, label: str, cfg: ProfileConfig) -> str:
    """Plain-language recap of the MC-dropout estimate for one prediction."""
    color = COLORS[label]
    head = (f"Uncertainty was estimated with MC dropout "
            f"({summary.T} stochastic forward passes). "
            f"The mean predicted duration is {summary.mean:.1f} minutes. ")
    if summary.interval_high == summary.interval_low:
        body = (f"All passes agree, so the 95 % prediction interval collapses "
                f"to the single value {summary.interval_low:.1f} minutes. ")
    else:
        body = (f"With 95 % probability the prediction falls between "
                f"{summary.interval_low:.1f} and {summary.interval_high:.1f} minutes. ")
    tail = (f"The predictive variance of {summary.variance:.1f} places this "
            f"prediction in the '{label}' uncertainty profile ({color}).")
    return head + body + tail

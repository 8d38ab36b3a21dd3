"""Component lifetime laws.

Times are in hours and rates in failures per hour throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FailureDistribution:
    """Exponential time-to-failure law with a constant ``rate``."""

    rate: float
    kind: str = "exponential"

    def __post_init__(self):
        if self.kind != "exponential":
            raise ValueError(f"unsupported lifetime law: {self.kind!r}")
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise ValueError(f"rate must be positive and finite, got {self.rate!r}")

    # methods sit on quadrature hot paths, hence the inlined time checks

    def cdf(self, t: float) -> float:
        if not t >= 0:
            _check_time(t)
        return -math.expm1(-self.rate * t)

    def sf(self, t: float) -> float:
        """Survival function 1 - F(t)."""
        if not t >= 0:
            _check_time(t)
        return math.exp(-self.rate * t)

    def pdf(self, t: float) -> float:
        if not t >= 0:
            _check_time(t)
        return self.rate * math.exp(-self.rate * t)

    def ppf(self, u: float) -> float:
        """Quantile function, the inverse of :meth:`cdf` on [0, 1)."""
        if not 0.0 <= u < 1.0:
            if u == 1.0:
                return math.inf
            raise ValueError(f"quantile level must be in [0, 1], got {u!r}")
        return -math.log1p(-u) / self.rate

    def sample(self, rng: np.random.Generator, size=None):
        return rng.exponential(1.0 / self.rate, size)


@dataclass(frozen=True)
class DormancyFactor:
    """Ratio of a spare's dormant failure rate to its active rate.

    ``alpha == 1`` is a hot spare; smaller values model a warm spare.
    """

    alpha: float

    def __post_init__(self):
        if not (0 < self.alpha <= 1):
            raise ValueError(f"dormancy factor must be in (0, 1], got {self.alpha!r}")

    def dormant(self, active: FailureDistribution) -> FailureDistribution:
        return FailureDistribution(self.alpha * active.rate)


def _check_time(t: float) -> None:
    if t < 0 or math.isnan(t):
        raise ValueError(f"time must be >= 0, got {t!r}")


def cdf(dist: FailureDistribution, t: float) -> float:
    """Probability that a component with lifetime law ``dist`` has failed by ``t``."""
    return dist.cdf(t)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Random stream fully determined by ``(seed, stream)``.

    Distinct stream indices give statistically independent generators, so
    parallel workers can each own one without coordination.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def sample_lifetime(dist: FailureDistribution, rng: np.random.Generator) -> float:
    return float(dist.sample(rng))

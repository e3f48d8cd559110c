"""Lyapunov-exponent extraction from finite entropy-production records.

The production rate h(n) of a discretized hyperbolic map tracks the Lyapunov
exponent only over a finite window before grid saturation kills it, so the
n -> infinity limit is estimated by compactifying time with
t_n = (2/pi) arctan(n - 1) and extrapolating the first m points of the
(t, h) record to t = 1 with the unique degree-(m-1) Lagrange polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .maps import HYPERBOLIC, classify_regime
from .entropy import EntropySeries


@dataclass(eq=False)
class CompactifiedSeries:
    """Production rates indexed by compactified time t in [0, 1)."""

    t: np.ndarray
    h: np.ndarray


@dataclass(frozen=True)
class LyapunovEstimate:
    """Extrapolated exponent of accuracy degree m (m points used)."""

    m: int
    value: float


def compactify(series: EntropySeries) -> CompactifiedSeries:
    """Map step index n to t_n = (2/pi) arctan(n - 1), keeping h values."""
    if len(series) == 0:
        raise ValueError("series is empty")
    t = (2.0 / math.pi) * np.arctan(series.n - 1.0)
    return CompactifiedSeries(t=t, h=np.asarray(series.h, dtype=float).copy())


def lagrange_extrapolate(series: CompactifiedSeries, m: int) -> LyapunovEstimate:
    """Value at t = 1 of the Lagrange polynomial through the first m points.

    l(m) = sum_i h_i prod_{j != i} (1 - t_j) / (t_i - t_j).  Exactly the
    first m points enter; duplicate abscissae cannot arise from compactified
    indices but are rejected defensively.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if m > len(series.t):
        raise ValueError(f"m={m} exceeds the {len(series.t)} available points")
    t = np.asarray(series.t, dtype=float)[:m]
    h = np.asarray(series.h, dtype=float)[:m]
    total = 0.0
    for i in range(m):
        weight = 1.0
        for j in range(m):
            if j == i:
                continue
            dt = t[i] - t[j]
            if dt == 0.0:
                raise ValueError(f"duplicate abscissae t[{i}] == t[{j}]")
            weight *= (1.0 - t[j]) / dt
        total += h[i] * weight
    return LyapunovEstimate(m=m, value=float(total))


def theoretical_lyapunov(alpha: float) -> float:
    """ln of the expanding eigenvalue modulus; hyperbolic alpha only.

    For alpha > 0 this equals ln(alpha + 2 + sqrt(alpha (alpha + 4))) - ln 2.
    The parabolic boundary (alpha in {0, -4}) is rejected; its exponent is 0
    and is reported through the regime classification instead.
    """
    regime = classify_regime(alpha)
    if regime.tag != HYPERBOLIC:
        raise ValueError(
            f"alpha={alpha} is {regime.tag}; the Lyapunov exponent formula "
            "applies only to hyperbolic maps"
        )
    return regime.log_expansion


def breaking_time(alpha: float, n_grid: int) -> float:
    """Steps after which the N^2-state grid stops mimicking the continuum.

    The grid resolves at most 2 ln N nats, produced at rate ln(lambda), so
    the crossover sits at 2 ln N / ln(lambda).
    """
    if n_grid < 2:
        raise ValueError("n_grid must be >= 2")
    return 2.0 * math.log(n_grid) / theoretical_lyapunov(alpha)


def naive_transition(d: int, n_grid: int) -> float:
    """Partition-dependent crossover 2 ln N / ln D.

    This is where D^n first exceeds the number of grid states.  It depends
    on the chosen partition size, not on the dynamics, so it is not a
    realistic breaking time; use :func:`breaking_time` for that.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if n_grid < 2:
        raise ValueError("n_grid must be >= 2")
    return 2.0 * math.log(n_grid) / math.log(d)

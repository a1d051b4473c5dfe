"""Descriptive statistics, boxplot outlier screening, and Shapiro-Wilk normality.

The Shapiro-Wilk test follows Royston's AS R94 approximation: weights from
normal order-statistic quantiles with polynomial corrections at the tails,
and a log-normal transform of 1 - W for the p-value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .distributions import PValue, normal_cdf, normal_quantile
from .errors import DegenerateDataError, DomainError, InsufficientDataError


@dataclass(frozen=True)
class DescriptiveStats:
    valid: int
    missing: int
    mean: float
    std_deviation: float
    minimum: float
    maximum: float


@dataclass(frozen=True)
class NormalityResult:
    w: float
    p: PValue


def _values(series: Sequence[float]) -> list[float]:
    return [float(v) for v in series]


def describe(series: Sequence[float]) -> DescriptiveStats:
    """Mean, sample standard deviation (n-1 denominator), min, and max."""
    x = _values(series)
    n = len(x)
    if n < 2:
        raise InsufficientDataError(f"describe needs at least 2 values, got {n}")
    mean = math.fsum(x) / n
    ss = math.fsum((v - mean) ** 2 for v in x)
    return DescriptiveStats(
        valid=n,
        missing=0,
        mean=mean,
        std_deviation=math.sqrt(ss / (n - 1)),
        minimum=min(x),
        maximum=max(x),
    )


def _poly(coeffs: Sequence[float], x: float) -> float:
    """Evaluate c[0] + c[1]*x + c[2]*x^2 + ... (AS R94 ordering)."""
    total = 0.0
    for c in reversed(coeffs):
        total = total * x + c
    return total


# Tail-coefficient corrections from AS R94 (Royston 1995).
_C1 = (0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
# Small-sample p-value transform, 4 <= n <= 11.
_C3 = (0.544, -0.39978, 0.025054, -0.0006714)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
# Large-sample p-value transform, n >= 12.
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)


def _sw_coefficients(n: int) -> list[float]:
    """AS R94 weights a_1..a_n for the ordered sample."""
    m = [normal_quantile((i - 0.375) / (n + 0.25)) for i in range(1, n + 1)]
    ssumm2 = math.fsum(v * v for v in m)
    rsn = 1.0 / math.sqrt(n)
    a = [v / math.sqrt(ssumm2) for v in m]
    if n > 5:
        an = -a[0]
        an1 = -a[1]
        a_n = _poly(_C1, rsn) + an
        a_n1 = _poly(_C2, rsn) + an1
        # renormalize the interior so the weight vector stays unit length
        phi = ((ssumm2 - 2.0 * m[-1] ** 2 - 2.0 * m[-2] ** 2)
               / (1.0 - 2.0 * a_n ** 2 - 2.0 * a_n1 ** 2))
        a = [v / math.sqrt(phi) for v in m]
        a[0] = -a_n
        a[1] = -a_n1
        a[-1] = a_n
        a[-2] = a_n1
    elif n > 3:
        an = -a[0]
        a_n = _poly(_C1, rsn) + an
        phi = (ssumm2 - 2.0 * m[-1] ** 2) / (1.0 - 2.0 * a_n ** 2)
        a = [v / math.sqrt(phi) for v in m]
        a[0] = -a_n
        a[-1] = a_n
    return a


def shapiro_wilk(series: Sequence[float]) -> NormalityResult:
    """Shapiro-Wilk W and its p-value per the AS R94 approximation."""
    x = sorted(_values(series))
    n = len(x)
    if n < 3 or n > 5000:
        raise DomainError(f"shapiro_wilk needs 3 <= n <= 5000, got {n}")
    if x[0] == x[-1]:
        raise DegenerateDataError("shapiro_wilk needs non-constant data")

    a = _sw_coefficients(n)
    mean = math.fsum(x) / n
    ssq = math.fsum((v - mean) ** 2 for v in x)
    wnum = math.fsum(ai * v for ai, v in zip(a, x)) ** 2
    w = min(1.0, wnum / ssq)

    if n == 3:
        # exact distribution for the minimum sample size
        pw = 6.0 / math.pi * (math.asin(math.sqrt(w)) - math.asin(math.sqrt(0.75)))
        return NormalityResult(w=w, p=PValue(max(0.0, min(1.0, pw))))
    if n <= 11:
        gamma = -2.273 + 0.459 * n
        mu = _poly(_C3, n)
        sigma = math.exp(_poly(_C4, n))
        z = (-math.log(gamma - math.log1p(-w)) - mu) / sigma
    else:
        ln_n = math.log(n)
        mu = _poly(_C5, ln_n)
        sigma = math.exp(_poly(_C6, ln_n))
        z = (math.log1p(-w) - mu) / sigma
    return NormalityResult(w=w, p=PValue(max(0.0, min(1.0, 1.0 - normal_cdf(z)))))


def _median(sorted_x: Sequence[float]) -> float:
    n = len(sorted_x)
    mid = n // 2
    if n % 2 == 1:
        return sorted_x[mid]
    return 0.5 * (sorted_x[mid - 1] + sorted_x[mid])


def tukey_hinges(series: Sequence[float]) -> tuple[float, float]:
    """Lower and upper hinges: medians of the two halves, median included when n is odd."""
    x = sorted(_values(series))
    n = len(x)
    if n < 4:
        raise InsufficientDataError(f"hinges need at least 4 values, got {n}")
    half = (n + 1) // 2
    return _median(x[:half]), _median(x[n - half:])


def boxplot_outliers(series: Sequence[float]) -> list[int]:
    """Indices of values outside [Q1 - 1.5 IQR, Q3 + 1.5 IQR] with Tukey-hinge quartiles."""
    x = _values(series)
    q1, q3 = tukey_hinges(x)
    iqr = q3 - q1
    lo = q1 - 1.5 * iqr
    hi = q3 + 1.5 * iqr
    return [i for i, v in enumerate(x) if v < lo or v > hi]

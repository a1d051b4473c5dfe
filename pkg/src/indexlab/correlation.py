"""Pearson correlations, two-tailed significance, and star annotations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .dataset import Dataset
from .distributions import PValue, t_two_tailed_p
from .errors import DegenerateDataError, InsufficientDataError, ValidationError

_STAR_LEVELS = ((0.001, "***"), (0.01, "**"), (0.05, "*"))


def significance_stars(p: PValue | float) -> str:
    """Annotation for a p-value: strict thresholds at .001, .01, .05."""
    value = float(p)
    for threshold, stars in _STAR_LEVELS:
        if value < threshold:
            return stars
    return ""


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    p: PValue
    n: int

    @property
    def stars(self) -> str:
        return significance_stars(self.p)


@dataclass(frozen=True)
class CorrelationMatrix:
    variables: tuple[str, ...]
    r: tuple[tuple[float, ...], ...]
    p: tuple[tuple[float, ...], ...]
    stars: tuple[tuple[str, ...], ...]
    n: int

    def pair(self, a: str, b: str) -> CorrelationResult:
        i = self.variables.index(a)
        j = self.variables.index(b)
        return CorrelationResult(r=self.r[i][j], p=PValue(self.p[i][j], "two-tailed"), n=self.n)


def pearson(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Sample Pearson correlation with a two-tailed t-test on n-2 df."""
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    if len(xs) != len(ys):
        raise ValidationError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 3:
        raise InsufficientDataError(f"pearson needs at least 3 pairs, got {n}")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((v - mx) ** 2 for v in xs)
    syy = math.fsum((v - my) ** 2 for v in ys)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateDataError("pearson needs nonzero variance in both series")
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(xs, ys))
    r = max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))
    if abs(r) == 1.0:
        t = math.inf
    else:
        t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return CorrelationResult(r=r, p=t_two_tailed_p(t, n - 2), n=n)


def correlation_matrix(dataset: Dataset, variables: Sequence[str]) -> CorrelationMatrix:
    """Full symmetric r/p/star matrices over the named dataset columns."""
    if len(variables) < 2:
        raise ValidationError("correlation matrix needs at least 2 variables")
    names = tuple(dataset.resolve_column(v) for v in variables)
    cols = [list(dataset.column(name).values) for name in names]
    k = len(names)
    r = [[1.0] * k for _ in range(k)]
    p = [[0.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            res = pearson(cols[i], cols[j])
            r[i][j] = r[j][i] = res.r
            p[i][j] = p[j][i] = res.p.value
    stars = tuple(tuple(significance_stars(v) for v in row) for row in p)
    return CorrelationMatrix(
        variables=names,
        r=tuple(tuple(row) for row in r),
        p=tuple(tuple(row) for row in p),
        stars=stars,
        n=len(cols[0]),
    )

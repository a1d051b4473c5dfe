"""Distribution tail probabilities on top of from-scratch special functions.

The regularized incomplete beta and gamma functions are evaluated by
continued fractions with the modified Lentz iteration (tolerance 1e-14,
at most 300 terms), which is well conditioned across the degree-of-freedom
range this package meets (1 to a few hundred).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

_TOL = 1e-14
_MAX_ITER = 300
_TINY = 1e-300

ONE_TAILED = "one-tailed"
TWO_TAILED = "two-tailed"


@dataclass(frozen=True)
class PValue:
    value: float
    tails: str = ONE_TAILED

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            raise DomainError(f"p-value {self.value!r} outside [0, 1]")
        if self.tails not in (ONE_TAILED, TWO_TAILED):
            raise DomainError(f"unknown tails spec {self.tails!r}")

    def __float__(self) -> float:
        return self.value


def normal_cdf(z: float) -> float:
    """Standard normal Phi(z) via the complementary error function."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


# Rational approximation for the normal quantile (relative error < 1.2e-9),
# then one Newton step against normal_cdf pushes the error near machine level.
_NQ_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_NQ_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01)
_NQ_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
         -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_NQ_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
         3.754408661907416e+00)


def normal_quantile(p: float) -> float:
    """Inverse of normal_cdf on (0, 1)."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal quantile needs 0 < p < 1, got {p!r}")
    p_low = 0.02425
    if p < p_low:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((((_NQ_C[0] * q + _NQ_C[1]) * q + _NQ_C[2]) * q + _NQ_C[3]) * q
              + _NQ_C[4]) * q + _NQ_C[5])
             / ((((_NQ_D[0] * q + _NQ_D[1]) * q + _NQ_D[2]) * q + _NQ_D[3]) * q + 1.0))
    elif p <= 1.0 - p_low:
        q = p - 0.5
        r = q * q
        x = ((((((_NQ_A[0] * r + _NQ_A[1]) * r + _NQ_A[2]) * r + _NQ_A[3]) * r
              + _NQ_A[4]) * r + _NQ_A[5]) * q
             / (((((_NQ_B[0] * r + _NQ_B[1]) * r + _NQ_B[2]) * r + _NQ_B[3]) * r
                + _NQ_B[4]) * r + 1.0))
    else:
        q = math.sqrt(-2.0 * math.log1p(-p))
        x = -((((((_NQ_C[0] * q + _NQ_C[1]) * q + _NQ_C[2]) * q + _NQ_C[3]) * q
               + _NQ_C[4]) * q + _NQ_C[5])
              / ((((_NQ_D[0] * q + _NQ_D[1]) * q + _NQ_D[2]) * q + _NQ_D[3]) * q + 1.0))
    err = normal_cdf(x) - p
    x -= err * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _TOL:
            return h
    raise DomainError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def regularized_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0.0 or b <= 0.0:
        raise DomainError("beta parameters must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    # split point keeps the continued fraction in its fast-converging region
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def _gamma_series(a: float, x: float) -> float:
    """Lower regularized gamma P(a, x) by series; valid for x < a + 1."""
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _TOL:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise DomainError(f"incomplete gamma series did not converge for a={a}, x={x}")


def _gamma_cf(a: float, x: float) -> float:
    """Upper regularized gamma Q(a, x) by continued fraction (modified Lentz)."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _TOL:
            return h * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise DomainError(f"incomplete gamma fraction did not converge for a={a}, x={x}")


def regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = P(X > x) for Gamma(a, 1)."""
    if a <= 0.0:
        raise DomainError("gamma shape must be positive")
    if x < 0.0:
        raise DomainError("gamma argument must be non-negative")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def t_two_tailed_p(t: float, df: float) -> PValue:
    """Two-tailed Student t tail probability 2*P(T >= |t|)."""
    if df < 1:
        raise DomainError(f"t test needs df >= 1, got {df!r}")
    if not math.isfinite(t):
        return PValue(0.0, TWO_TAILED)
    if t == 0.0:
        return PValue(1.0, TWO_TAILED)
    x = df / (df + t * t)
    return PValue(min(1.0, regularized_beta(x, 0.5 * df, 0.5)), TWO_TAILED)


def f_tail_p(f: float, df1: float, df2: float) -> PValue:
    """Upper tail P(F' >= f) of the F distribution."""
    if df1 < 1 or df2 < 1:
        raise DomainError("F test needs df1, df2 >= 1")
    if f < 0.0:
        raise DomainError(f"F statistic must be non-negative, got {f!r}")
    if f == 0.0:
        return PValue(1.0, ONE_TAILED)
    if not math.isfinite(f):
        return PValue(0.0, ONE_TAILED)
    x = df2 / (df2 + df1 * f)
    return PValue(min(1.0, regularized_beta(x, 0.5 * df2, 0.5 * df1)), ONE_TAILED)


def chi2_tail_p(x: float, df: float) -> PValue:
    """Upper tail P(chi2 >= x)."""
    if df < 1:
        raise DomainError("chi-square test needs df >= 1")
    if x < 0.0:
        raise DomainError(f"chi-square statistic must be non-negative, got {x!r}")
    return PValue(regularized_gamma_q(0.5 * df, 0.5 * x), ONE_TAILED)

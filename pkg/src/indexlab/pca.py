"""Principal component analysis on correlation matrices.

Eigenvalues come from a cyclic Jacobi sweep, which is exact to rounding at
the matrix sizes this package handles (p <= 10ish). Component retention uses
the Kaiser criterion (eigenvalue >= 1) by default, and loadings are
eigenvectors scaled by the square root of their eigenvalue with the sign
fixed so each component's largest-magnitude entry is positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .correlation import CorrelationMatrix, correlation_matrix
from .dataset import Dataset
from .distributions import PValue, chi2_tail_p
from .errors import DomainError, SingularDesignError, ValidationError

_OFFDIAG_TOL = 1e-12
_MAX_SWEEPS = 100
KAISER_THRESHOLD = 1.0


@dataclass(frozen=True)
class HypothesisTestResult:
    statistic: float
    df: int
    p: PValue
    test: str


@dataclass(frozen=True)
class PcaResult:
    variables: tuple[str, ...]
    eigenvalues: tuple[float, ...]
    retained: int
    loadings: tuple[tuple[float, ...], ...]
    variance_explained_pct: tuple[float, ...]
    cumulative_pct: tuple[float, ...]
    kmo: float
    bartlett: HypothesisTestResult


def eigen_symmetric(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a symmetric matrix.

    Cyclic Jacobi rotations run until every off-diagonal entry is below 1e-12.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValidationError("matrix is empty")
    if float(np.max(np.abs(a - a.T))) > 1e-10:
        raise ValidationError("matrix is not symmetric within 1e-10")
    p = a.shape[0]
    v = np.eye(p)
    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for i in range(p - 1):
            row_max = float(np.max(np.abs(a[i, i + 1:])))
            off = max(off, row_max)
        if off < _OFFDIAG_TOL:
            break
        for i in range(p - 1):
            for j in range(i + 1, p):
                aij = a[i, j]
                if aij == 0.0:
                    continue
                tau = (a[j, j] - a[i, i]) / (2.0 * aij)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                row_i = a[i, :].copy()
                row_j = a[j, :].copy()
                a[i, :] = c * row_i - s * row_j
                a[j, :] = s * row_i + c * row_j
                col_i = a[:, i].copy()
                col_j = a[:, j].copy()
                a[:, i] = c * col_i - s * col_j
                a[:, j] = s * col_i + c * col_j
                a[i, j] = a[j, i] = 0.0
                col_i = v[:, i].copy()
                col_j = v[:, j].copy()
                v[:, i] = c * col_i - s * col_j
                v[:, j] = s * col_i + c * col_j
    else:
        raise DomainError("Jacobi iteration did not converge")
    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def kmo(corr: CorrelationMatrix) -> float:
    """Kaiser-Meyer-Olkin sampling adequacy from a correlation matrix.

    Anti-image partial correlations come from the inverse correlation matrix
    scaled to unit diagonal and negated off the diagonal.
    """
    r = np.array(corr.r)
    p = r.shape[0]
    if p < 2:
        raise ValidationError("KMO needs at least 2 variables")
    eigenvalues, eigenvectors = eigen_symmetric(r)
    if float(np.min(eigenvalues)) <= 1e-12:
        raise SingularDesignError("correlation matrix is singular; KMO undefined")
    r_inv = eigenvectors @ np.diag(1.0 / eigenvalues) @ eigenvectors.T
    d = 1.0 / np.sqrt(np.diag(r_inv))
    partial = -(r_inv * np.outer(d, d))
    off = ~np.eye(p, dtype=bool)
    sum_r2 = float(np.sum(r[off] ** 2))
    sum_q2 = float(np.sum(partial[off] ** 2))
    return sum_r2 / (sum_r2 + sum_q2)


def bartlett_sphericity(corr: CorrelationMatrix, n: int) -> HypothesisTestResult:
    """Bartlett's test that the correlation matrix is the identity."""
    r = np.array(corr.r)
    p = r.shape[0]
    if n <= p:
        raise ValidationError(f"Bartlett's test needs n > p, got n={n}, p={p}")
    eigenvalues, _ = eigen_symmetric(r)
    det = float(np.prod(eigenvalues))
    if det <= 0.0:
        raise DomainError("correlation matrix has non-positive determinant")
    statistic = -(n - 1 - (2 * p + 5) / 6.0) * math.log(det)
    df = p * (p - 1) // 2
    return HypothesisTestResult(
        statistic=statistic,
        df=df,
        p=chi2_tail_p(max(0.0, statistic), df),
        test="Bartlett's test of sphericity",
    )


def run_pca(dataset: Dataset, variables: Sequence[str],
            retention: float = KAISER_THRESHOLD) -> PcaResult:
    """PCA of the Pearson correlation matrix over the named columns."""
    corr = correlation_matrix(dataset, variables)
    r = np.array(corr.r)
    p = r.shape[0]
    eigenvalues, eigenvectors = eigen_symmetric(r)
    if float(np.min(eigenvalues)) < -1e-8:
        raise DomainError("correlation matrix is not positive semidefinite")
    eigenvalues = np.maximum(eigenvalues, 0.0)
    retained = int(np.sum(eigenvalues >= retention))

    loadings_cols = []
    for j in range(retained):
        col = eigenvectors[:, j] * math.sqrt(float(eigenvalues[j]))
        anchor = int(np.argmax(np.abs(col)))
        if col[anchor] < 0.0:
            col = -col
        loadings_cols.append(col)
    loadings = tuple(
        tuple(float(loadings_cols[j][i]) for j in range(retained)) for i in range(p)
    )

    pct = tuple(100.0 * float(ev) / p for ev in eigenvalues)
    cumulative = []
    running = 0.0
    for v in pct:
        running += v
        cumulative.append(running)

    return PcaResult(
        variables=corr.variables,
        eigenvalues=tuple(float(ev) for ev in eigenvalues),
        retained=retained,
        loadings=loadings,
        variance_explained_pct=pct,
        cumulative_pct=tuple(cumulative),
        kmo=kmo(corr),
        bartlett=bartlett_sphericity(corr, corr.n),
    )

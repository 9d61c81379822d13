"""Principal-component basis of the standardized data and the linear index.

The covariance is 4 x 4, so the eigenproblem is solved with cyclic Jacobi
rotations rather than a general-purpose solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import StandardizedMatrix
from .errors import ConvergenceFailure

JACOBI_SWEEP_BUDGET = 100
JACOBI_OFFDIAG_TOL = 1e-12


@dataclass(frozen=True)
class PrincipalBasis:
    """Orthonormal eigenvectors (rows of ``components``) with eigenvalues descending."""

    components: np.ndarray
    eigenvalues: np.ndarray
    total_variance: float

    def __post_init__(self):
        self.components.setflags(write=False)
        self.eigenvalues.setflags(write=False)


def covariance(matrix: StandardizedMatrix) -> np.ndarray:
    """Population covariance C = X^T X / N of the zero-mean data."""
    values = matrix.values
    return values.T @ values / values.shape[0]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt((off * off).sum()))


def eigendecompose(cov: np.ndarray) -> PrincipalBasis:
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues come out in descending order; each eigenvector's sign is
    fixed so its largest-magnitude coordinate is positive.

    Raises ConvergenceFailure if the sweep budget is exhausted.
    """
    a = np.array(cov, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, atol=1e-12):
        raise ValueError("covariance must be symmetric")
    v = np.eye(n)

    for _ in range(JACOBI_SWEEP_BUDGET):
        if _offdiag_norm(a) <= JACOBI_OFFDIAG_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # classical Jacobi rotation annihilating a[p, q]
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    if _offdiag_norm(a) > JACOBI_OFFDIAG_TOL:
        raise ConvergenceFailure(
            f"off-diagonal norm {_offdiag_norm(a):.3e} after {JACOBI_SWEEP_BUDGET} sweeps"
        )

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    components = v.T[order]
    for k in range(n):
        j = int(np.argmax(np.abs(components[k])))
        if components[k, j] < 0:
            components[k] = -components[k]
    return PrincipalBasis(components, eigenvalues, float(eigenvalues.sum()))


def explained_variance_ratio(basis: PrincipalBasis, k: int) -> float:
    """Fraction of total variance captured by the first k components."""
    if not 1 <= k <= len(basis.eigenvalues):
        raise ValueError(f"k must be in 1..{len(basis.eigenvalues)}, got {k}")
    return float(basis.eigenvalues[:k].sum() / basis.total_variance)


def pc1_scores(matrix: StandardizedMatrix, basis: PrincipalBasis) -> np.ndarray:
    """Projection of every row onto the first principal component."""
    return matrix.values @ basis.components[0]

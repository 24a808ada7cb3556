"""Symmetric-definite generalized eigensolver for ``(M + K/Bo) c = lambda L c``.

The left-hand matrix ``A = M + K/Bo`` is always positive definite, so it is
the one that gets Cholesky-factored: ``A = R^T R``. The smallest sloshing
eigenvalues are the reciprocals of the largest eigenvalues of
``R^{-T} L R^{-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import IndefiniteProblemError, NotPositiveDefiniteError, NumericalError
from .strip_assembly import SpectralSystem


@dataclass(frozen=True, eq=False)
class EigenSolution:
    lambdas: np.ndarray       # ascending
    vectors: np.ndarray       # columns, L-normalized
    residuals: np.ndarray
    system: SpectralSystem | None
    bond: float

    def __len__(self):
        return len(self.lambdas)


def _cholesky(A: np.ndarray) -> np.ndarray:
    R, info = sla.lapack.dpotrf(A, lower=0, clean=1)
    if info != 0:
        d = sla.ldl(A)[1]
        pivot = np.min(np.diag(d)) if d.size else float("nan")
        raise NotPositiveDefiniteError(
            f"left-hand matrix is not numerically positive definite: Cholesky failed at "
            f"leading minor {info}, smallest LDL pivot {pivot:.3e}")
    return R


def solve_pair(A: np.ndarray, L: np.ndarray, count: int | None = None):
    """Smallest ``count`` eigenpairs of ``A c = lambda L c`` with A SPD.

    Returns ``(lambdas, vectors)``, eigenvalues ascending, vectors
    normalized to ``c^T L c = 1`` with their first nonzero entry positive.
    """
    A = np.asarray(A, dtype=float)
    L = np.asarray(L, dtype=float)
    d = A.shape[0]
    count = d if count is None else count
    if not 1 <= count <= d:
        raise ValueError(f"count must be in 1..{d}, got {count}")

    R = _cholesky(A)
    X = sla.solve_triangular(R, L, trans="T", lower=False)        # R^{-T} L
    C = sla.solve_triangular(R, X.T, trans="T", lower=False).T   # R^{-T} L R^{-1}
    C = 0.5 * (C + C.T)
    try:
        theta, Y = sla.eigh(C, subset_by_index=[d - count, d - 1])
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"symmetric eigensolver did not converge: {exc}") from exc
    theta = theta[::-1]
    Y = Y[:, ::-1]
    if theta[-1] <= 0:
        raise IndefiniteProblemError(
            f"kernel matrix is not positive definite on the basis: "
            f"transformed eigenvalue {theta[-1]:.3e} <= 0")

    vecs = sla.solve_triangular(R, Y, lower=False) / np.sqrt(theta)
    for k in range(count):
        nz = np.flatnonzero(np.abs(vecs[:, k]) > 1e-14 * np.abs(vecs[:, k]).max())
        if vecs[nz[0], k] < 0:
            vecs[:, k] = -vecs[:, k]
    return 1.0 / theta, vecs


def solve_gevp(system: SpectralSystem, bond: float | None = None, count: int = 1) -> EigenSolution:
    """Smallest ``count`` eigenpairs of the assembled system at Bond number ``bond``."""
    bond = system.bond if bond is None else float(bond)
    if bond is None or not bond > 0:
        raise ValueError(f"Bond number must be positive or inf, got {bond}")
    A = system.lhs(bond)
    lambdas, vecs = solve_pair(A, system.L, count)
    res = np.linalg.norm(A @ vecs - (system.L @ vecs) * lambdas, axis=0)
    return EigenSolution(lambdas, vecs, res, system, bond)

"""Mass, stiffness and Bessel-kernel matrices for the circular hole, mode m."""
from __future__ import annotations

import numpy as np

from .polybasis import Geometry, hole_basis, hole_mu
from .strip_assembly import SpectralSystem, _readonly


def hole_L_tilde(m: int, i, j, literal: bool = False):
    """Kernel integral of h_i^m against h_j^m in closed form.

    Uses the factor ``(1/4 - (i-j)^2)``, which is what the Bessel-product
    integral evaluates to. ``literal=True`` swaps in ``(1/4 - (j-1)^2)``, a
    variant that agrees only at i = j = 1 and is not symmetric in (i, j);
    it exists so the validation can show it failing.
    """
    i = np.asarray(i, dtype=float)
    j = np.asarray(j, dtype=float)
    last = (j - 1) ** 2 if literal else (i - j) ** 2
    return hole_mu(m, i) * hole_mu(m, j) / (
        4 * np.pi * ((i + j + m - 1) ** 2 - 0.25) * (0.25 - last))


def hole_K_tilde(m: int, i, j):
    """Stiffness entries between radial polynomials h_i^m and h_j^m."""
    i = np.asarray(i, dtype=float)
    j = np.asarray(j, dtype=float)
    k = np.minimum(i, j)
    return hole_mu(m, i) * hole_mu(m, j) * (m + 2 * (k - 1) * (k + m))


def assemble_hole(m: int, n: int) -> SpectralSystem:
    """Assemble the hole system for azimuthal mode m on q_j^m.

    Indices run over j = 1..n for m >= 1 and j = 2..n for m = 0.
    """
    if m < 0 or n < (2 if m == 0 else 1):
        raise ValueError(f"invalid hole configuration m={m}, n={n}")
    basis = hole_basis(m, n)
    idx = basis.indices
    beta = basis.betas[idx - 1]
    d = len(idx)

    M = np.diag(1 + beta ** 2)
    if d > 1:
        t = np.arange(d - 1)
        M[t, t + 1] = beta[:-1]
        M[t + 1, t] = beta[:-1]

    jf = idx.astype(float)
    K = np.diag(-hole_mu(m, jf) * hole_mu(m, jf + 1) * hole_mu(m + 1, jf) ** 2 * beta)

    I, J = np.meshgrid(jf, jf, indexing="ij")
    bi = beta[:, None]
    bj = beta[None, :]
    L = (hole_L_tilde(m, I, J) + bi * hole_L_tilde(m, I + 1, J)
         + bj * hole_L_tilde(m, I, J + 1) + bi * bj * hole_L_tilde(m, I + 1, J + 1))
    L = 0.5 * (L + L.T)

    return SpectralSystem(Geometry.HOLE, m, basis, _readonly(M), _readonly(K), _readonly(L))

"""Mass, stiffness and log-kernel matrices for the infinite parallel strip."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .polybasis import BasisSpec, Geometry, strip_basis


@dataclass(frozen=True, eq=False)
class SpectralSystem:
    """Assembled Galerkin matrices for ``(M + K/Bo) c = lambda L c``.

    ``bond`` is ``None`` until a Bond number is attached with
    :meth:`with_bond`; ``float('inf')`` drops the stiffness term.
    """

    geometry: Geometry
    mode: int | None
    basis: BasisSpec
    M: np.ndarray
    K: np.ndarray
    L: np.ndarray
    bond: float | None = None

    @property
    def dim(self) -> int:
        return self.M.shape[0]

    @property
    def n(self) -> int:
        return self.basis.dim

    def with_bond(self, bond: float) -> "SpectralSystem":
        if not bond > 0:
            raise ValueError(f"Bond number must be positive, got {bond}")
        return dataclasses.replace(self, bond=float(bond))

    def lhs(self, bond: float | None = None) -> np.ndarray:
        """The matrix ``M + K/Bo`` (just ``M`` for Bo = inf)."""
        bond = self.bond if bond is None else bond
        if bond is None:
            raise ValueError("no Bond number attached to the system")
        if np.isinf(bond):
            return self.M.copy()
        return self.M + self.K / bond


def _readonly(a):
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


def strip_L_tilde(i, j):
    """-(1/pi) double integral of ln|x - s| p_i(x) p_j(s), closed form.

    Zero whenever i + j is odd.
    """
    i = np.asarray(i, dtype=float)
    j = np.asarray(j, dtype=float)
    even = (i + j) % 2 == 0
    den = (i + j) * (i + j + 2) * (1 - (i - j) ** 2)
    den = np.where(even, den, 1.0)
    val = 4 / np.pi * np.sqrt(2 * i + 1) * np.sqrt(2 * j + 1) / den
    return np.where(even, val, 0.0)


def assemble_strip(n: int) -> SpectralSystem:
    """Assemble the strip system on the basis q_1..q_{n-2}."""
    if n < 3:
        raise ValueError(f"strip assembly needs n >= 3, got {n}")
    basis = strip_basis(n)
    d = basis.size
    j = np.arange(1, d + 1)
    beta = basis.betas
    alpha = basis.alphas

    M = np.eye(d)
    off = -beta[:-2] / (alpha[:-2] * alpha[2:])
    M[j[:-2] - 1, j[2:] - 1] = off
    M[j[2:] - 1, j[:-2] - 1] = off

    kdiag = beta * np.sqrt(2 * j + 5) / (alpha ** 2 * np.sqrt(2 * j + 1)) * (2 * j + 1) * (2 * j + 3)
    K = np.diag(kdiag)

    I, J = np.meshgrid(j, j, indexing="ij")
    bi, bj = beta[I - 1], beta[J - 1]
    # q_j = (p_j - beta_j p_{j+2}) / alpha_j expanded bilinearly
    L = (strip_L_tilde(I, J) - bi * strip_L_tilde(I + 2, J)
         - bj * strip_L_tilde(I, J + 2) + bi * bj * strip_L_tilde(I + 2, J + 2))
    L /= np.outer(alpha, alpha)
    L[(I + J) % 2 == 1] = 0.0
    L = 0.5 * (L + L.T)

    return SpectralSystem(Geometry.STRIP, None, basis, _readonly(M), _readonly(K), _readonly(L))

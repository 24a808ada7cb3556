"""Orthogonal polynomial bases for the strip and circular-hole problems.

Strip: normalized Legendre polynomials ``p_j`` on [-1, 1] combined into
Neumann, mean-zero functions ``q_j = (p_j - beta_j p_{j+2}) / alpha_j``.

Hole: radial polynomials ``h_j^m(r) = mu_j^m r^m P_{j-1}^{(0,m)}(2r^2 - 1)``,
orthonormal on (0, 1) with weight ``r``, combined into
``q_j^m = h_j^m + beta_j h_{j+1}^m`` with ``(q_j^m)'(1) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BasisIndexError


class Geometry(str, Enum):
    STRIP = "strip"
    HOLE = "hole"


# ---------------------------------------------------------------------------
# basis constants

def strip_beta(j):
    j = np.asarray(j, dtype=float)
    return j * (j + 1) * np.sqrt(2 * j + 1) / ((j + 2) * (j + 3) * np.sqrt(2 * j + 5))


def strip_alpha(j):
    return np.sqrt(1.0 + strip_beta(j) ** 2)


def hole_mu(m, j):
    j = np.asarray(j, dtype=float)
    return 2.0 * np.sqrt(j + 0.5 * (m - 1))


def hole_beta(m, j):
    j = np.asarray(j, dtype=float)
    num = hole_mu(m, j) * (m + 2 * (j - 1) * (j + m))
    den = hole_mu(m, j + 1) * (m + 2 * j * (j + m + 1))
    return -num / den


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class BasisSpec:
    """Geometry, mode, cutoff and cached constants of a Galerkin basis.

    ``betas[k]`` (and ``alphas[k]``, ``mus[k]``) hold the constant for
    index ``j = k + 1``.
    """

    geometry: Geometry
    dim: int
    mode: int | None
    alphas: np.ndarray
    betas: np.ndarray
    mus: np.ndarray

    @property
    def indices(self) -> np.ndarray:
        """Admissible basis indices j, in matrix order."""
        if self.geometry is Geometry.STRIP:
            return np.arange(1, self.dim - 1)
        start = 2 if self.mode == 0 else 1
        return np.arange(start, self.dim + 1)

    @property
    def size(self) -> int:
        return len(self.indices)

    def check_index(self, j: int) -> None:
        idx = self.indices
        if not idx[0] <= j <= idx[-1]:
            if self.geometry is Geometry.HOLE and self.mode == 0 and j == 1:
                raise BasisIndexError(
                    "j = 1 is excluded for m = 0 (constant function is not mean-zero)")
            raise BasisIndexError(
                f"basis index {j} outside admissible range {idx[0]}..{idx[-1]}")


def strip_basis(n: int) -> BasisSpec:
    if n < 3:
        raise ValueError(f"strip basis needs n >= 3, got {n}")
    j = np.arange(1, n - 1)
    return BasisSpec(Geometry.STRIP, n, None,
                     _frozen(strip_alpha(j)), _frozen(strip_beta(j)), _frozen([]))


def hole_basis(m: int, n: int) -> BasisSpec:
    if m < 0:
        raise ValueError(f"mode must be >= 0, got {m}")
    if n < (2 if m == 0 else 1):
        raise ValueError(f"hole basis with m = {m} needs n >= {2 if m == 0 else 1}, got {n}")
    j = np.arange(1, n + 1)
    mus = hole_mu(m, np.arange(1, n + 2))
    return BasisSpec(Geometry.HOLE, n, m, _frozen([]),
                     _frozen(hole_beta(m, j)), _frozen(mus))


# ---------------------------------------------------------------------------
# Legendre

def legendre_table(nmax: int, x, deriv: int = 0) -> np.ndarray:
    """Normalized Legendre polynomials p_0..p_nmax (or a derivative) at x.

    Returns an array of shape ``(nmax + 1,) + np.shape(x)``.
    """
    x = np.asarray(x, dtype=float)
    P = np.zeros((nmax + 1,) + x.shape)
    dP = np.zeros_like(P)
    d2P = np.zeros_like(P)
    P[0] = 1.0
    if nmax >= 1:
        P[1] = x
        dP[1] = 1.0
    for k in range(1, nmax):
        P[k + 1] = ((2 * k + 1) * x * P[k] - k * P[k - 1]) / (k + 1)
        dP[k + 1] = dP[k - 1] + (2 * k + 1) * P[k]
        d2P[k + 1] = d2P[k - 1] + (2 * k + 1) * dP[k]
    out = (P, dP, d2P)[deriv]
    scale = np.sqrt((2 * np.arange(nmax + 1) + 1) / 2.0)
    return out * scale.reshape((-1,) + (1,) * x.ndim)


def legendre_eval(j: int, x, deriv: int = 0):
    """Normalized Legendre polynomial p_j (or its derivative) at x."""
    if j < 0:
        raise BasisIndexError(f"Legendre degree must be >= 0, got {j}")
    return legendre_table(j, x, deriv)[j]


# ---------------------------------------------------------------------------
# Jacobi / radial

def jacobi_table(nmax: int, a: float, b: float, x) -> np.ndarray:
    """Classical Jacobi polynomials P_0^{(a,b)}..P_nmax^{(a,b)} at x."""
    x = np.asarray(x, dtype=float)
    P = np.zeros((max(nmax, 0) + 1,) + x.shape)
    if nmax < 0:
        return P[:0]
    P[0] = 1.0
    if nmax >= 1:
        P[1] = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(1, nmax):
        s = 2 * k + a + b
        c1 = 2 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * ((s + 2) * s * x + a * a - b * b)
        c3 = 2 * (k + a) * (k + b) * (s + 2)
        P[k + 1] = (c2 * P[k] - c3 * P[k - 1]) / c1
    return P


def _rpow(r, k):
    # only reached with a zero coefficient when k < 0
    return r ** k if k >= 0 else np.zeros_like(r)


def radial_h_table(m: int, jmax: int, r, deriv: int = 0) -> np.ndarray:
    """h_1^m..h_jmax^m (or a derivative in r) at r; shape ``(jmax,) + r.shape``."""
    r = np.asarray(r, dtype=float)
    x = 2 * r * r - 1
    j = np.arange(1, jmax + 1, dtype=float)
    mu = hole_mu(m, j).reshape((-1,) + (1,) * r.ndim)
    # P_{j-1}^{(0,m)} and its x-derivatives via dP_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}
    u = jacobi_table(jmax - 1, 0, m, x)
    if deriv == 0:
        return mu * r ** m * u
    du = np.zeros_like(u)
    if jmax >= 2:
        fac = ((j[1:] + m) / 2).reshape((-1,) + (1,) * r.ndim)
        du[1:] = fac * jacobi_table(jmax - 2, 1, m + 1, x)
    if deriv == 1:
        return mu * (m * _rpow(r, m - 1) * u + 4 * r ** (m + 1) * du)
    d2u = np.zeros_like(u)
    if jmax >= 3:
        fac = ((j[2:] + m) * (j[2:] + m + 1) / 4).reshape((-1,) + (1,) * r.ndim)
        d2u[2:] = fac * jacobi_table(jmax - 3, 2, m + 2, x)
    if deriv == 2:
        return mu * (m * (m - 1) * _rpow(r, m - 2) * u
                     + (8 * m + 4) * r ** m * du
                     + 16 * r ** (m + 2) * d2u)
    raise ValueError(f"deriv must be 0, 1 or 2, got {deriv}")


def radial_h_eval(m: int, j: int, r, deriv: int = 0):
    if j < 1 or m < 0:
        raise BasisIndexError(f"radial polynomial needs j >= 1 and m >= 0, got j={j}, m={m}")
    return radial_h_table(m, j, r, deriv)[j - 1]


# ---------------------------------------------------------------------------
# combined bases

def strip_q_table(spec: BasisSpec, x, deriv: int = 0) -> np.ndarray:
    """All q_j (j = 1..n-2) at x, shape ``(n-2,) + x.shape``."""
    x = np.asarray(x, dtype=float)
    P = legendre_table(spec.dim, x, deriv)
    shape = (-1,) + (1,) * x.ndim
    b = spec.betas.reshape(shape)
    a = spec.alphas.reshape(shape)
    d = spec.size
    return (P[1:d + 1] - b * P[3:d + 3]) / a


def strip_q_eval(spec: BasisSpec, j: int, x, deriv: int = 0):
    spec.check_index(j)
    P = legendre_table(j + 2, x, deriv)
    return (P[j] - spec.betas[j - 1] * P[j + 2]) / spec.alphas[j - 1]


def hole_q_table(spec: BasisSpec, r, deriv: int = 0) -> np.ndarray:
    """All admissible q_j^m at r, shape ``(size,) + r.shape``."""
    r = np.asarray(r, dtype=float)
    H = radial_h_table(spec.mode, spec.dim + 1, r, deriv)
    q = H[:-1] + spec.betas.reshape((-1,) + (1,) * r.ndim) * H[1:]
    return q[spec.indices - 1]


def hole_q_eval(spec: BasisSpec, j: int, r, deriv: int = 0):
    spec.check_index(j)
    H = radial_h_table(spec.mode, j + 1, r, deriv)
    return H[j - 1] + spec.betas[j - 1] * H[j]


def q_table(spec: BasisSpec, x, deriv: int = 0) -> np.ndarray:
    if spec.geometry is Geometry.STRIP:
        return strip_q_table(spec, x, deriv)
    return hole_q_table(spec, x, deriv)

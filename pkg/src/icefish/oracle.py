"""Brute-force references for every closed-form matrix entry.

Nothing here uses the closed forms it checks: Gram and stiffness entries
come from Gauss quadrature of the basis polynomials, log-kernel entries
from a singularity-aligned tensor quadrature, and Bessel-kernel entries
from truncated Bessel-product integrals with an explicit tail estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OracleAccuracyError
from .polybasis import (hole_basis, hole_mu, hole_q_eval, legendre_eval,
                        radial_h_eval, strip_basis, strip_q_eval)

# ---------------------------------------------------------------------------
# Bessel functions of the first kind, integer order


def _series(m, x):
    h = 0.5 * x
    if m == 0:
        term = np.ones_like(h)
    else:
        term = np.zeros_like(h)
        nz = h > 0   # h underflows for subnormal x
        term[nz] = np.exp(m * np.log(h[nz]) - math.lgamma(m + 1))
    total = term.copy()
    q = -h * h
    for k in range(1, 40):
        term = term * q / (k * (k + m))
        total += term
    return total


def _miller(m, x):
    top = max(m, float(x.max()))
    N = int(top + 30 + 20 * top ** (1 / 3))
    N += N % 2
    big, small = 1e250, 1e-250
    jp = np.zeros_like(x)            # J_{k+1}
    jk = np.full_like(x, 1e-300)     # J_k, arbitrary start
    norm = np.zeros_like(x)
    res = np.zeros_like(x)
    for k in range(N, 0, -1):
        jm = (2 * k / x) * jk - jp
        jp, jk = jk, jm
        # jk now holds J_{k-1}
        if (k - 1) == m:
            res = jk.copy()
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2 * jk
        over = np.abs(jk) > big
        if over.any():
            jk = np.where(over, jk * small, jk)
            jp = np.where(over, jp * small, jp)
            norm = np.where(over, norm * small, norm)
            res = np.where(over, res * small, res)
    norm += jk  # J_0
    return res / norm


def _hankel_asymptotic(m, x):
    mu = 4.0 * m * m
    P = np.ones_like(x)
    Q = np.zeros_like(x)
    term = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    live = np.ones(x.shape, dtype=bool)
    for k in range(1, 200):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = np.abs(term)
        live &= mag < prev
        if not live.any():
            break
        t = np.where(live, term, 0.0)
        # a_k / x^k enters P (k even) or Q (k odd) with sign (-1)^{floor(k/2)}
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            P += sign * t
        else:
            Q += sign * t
        prev = np.where(live, mag, prev)
        live &= mag > 1e-18
    phase = math.fmod((0.5 * m + 0.25) * math.pi, 2 * math.pi)
    c = np.cos(x) * math.cos(phase) + np.sin(x) * math.sin(phase)
    s = np.sin(x) * math.cos(phase) - np.cos(x) * math.sin(phase)
    return np.sqrt(2.0 / (math.pi * x)) * (P * c - Q * s)


def asymptotic_threshold(m: int) -> float:
    return max(50.0, 0.5 * m * m + 25.0)


def bessel_j(m: int, x):
    """Bessel function J_m(x) for integer m >= 0 and x >= 0.

    Ascending series where ``x^2 <= 4(m+1)``, Miller backward recurrence
    normalized by ``J_0 + 2 sum J_2k = 1`` in the transition region, and the
    Hankel asymptotic expansion for large x.
    """
    if m < 0:
        raise ValueError("order must be >= 0")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("argument must be >= 0")
    flat = np.atleast_1d(x).ravel()
    out = np.empty_like(flat)
    ser = flat * flat <= 4 * (m + 1)
    asy = ~ser & (flat >= asymptotic_threshold(m))
    mil = ~ser & ~asy
    if ser.any():
        out[ser] = _series(m, flat[ser])
    if asy.any():
        out[asy] = _hankel_asymptotic(m, flat[asy])
    if mil.any():
        out[mil] = _miller(m, flat[mil])
    return out.reshape(x.shape) if x.ndim else float(out[0])


# ---------------------------------------------------------------------------
# Bessel-product integrals  int_0^inf J_a(k) J_b(k) k^{-p} dk

_PANEL = 1.0
_GL_PANEL = np.polynomial.legendre.leggauss(16)
_K_MAX = 2.0 ** 17


@lru_cache(maxsize=8)
def _panel_nodes(K: float):
    npan = int(math.ceil(K / _PANEL))
    edges = np.linspace(0.0, K, npan + 1)
    t, w = _GL_PANEL
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


@lru_cache(maxsize=64)
def _bessel_on_nodes(order: int, K: float):
    nodes, _ = _panel_nodes(K)
    v = bessel_j(order, nodes)
    v.flags.writeable = False
    return v


def _tail_estimate(a, b, p, K):
    """Leading non-oscillatory part of int_K^inf J_a J_b k^{-p} dk.

    From the Hankel expansion, J_a J_b averages to
    ``(1/(pi k)) [cos d + (b^2 - a^2)/(2k) sin d]`` with ``d = (b - a) pi / 2``.
    """
    d = 0.5 * (b - a) * math.pi
    cd = round(math.cos(d))
    sd = round(math.sin(d))
    return (cd / p * K ** (-p) + sd * (b * b - a * a) / (2 * (p + 1)) * K ** (-p - 1)) / math.pi


def _tail_bound(a, b, p, K):
    s = a * a + b * b + 1.0
    return (1.0 + s / K + (s / K) ** 2) / (math.pi * K ** (p + 1)) * 2


def bessel_product_integral(a: int, b: int, p: int, tol: float = 1e-9, K: float | None = None):
    """``int_0^inf J_a(k) J_b(k) k^{-p} dk`` as ``(value, tail_bound)``.

    The integral is truncated at K (doubled from 512 until the tail bound
    drops below ``tol`` unless given) and the leading asymptotic tail is
    added back in.
    """
    if K is None:
        K = 512.0
        while _tail_bound(a, b, p, K) > tol:
            K *= 2
            if K > _K_MAX:
                raise OracleAccuracyError(
                    f"tail bound {tol:g} unattainable within panel budget (orders {a}, {b}, p={p})")
    nodes, weights = _panel_nodes(float(K))
    f = _bessel_on_nodes(a, float(K)) * _bessel_on_nodes(b, float(K)) * nodes ** (-p)
    val = float(np.dot(weights, f)) + _tail_estimate(a, b, p, K)
    return val, _tail_bound(a, b, p, K)


# ---------------------------------------------------------------------------
# hole kernel entries


def oracle_hole_L(m: int, i: int, j: int, basis: str = "h", tol: float = 1e-11):
    """Kernel matrix entry for the hole by truncated Bessel integrals.

    Uses the Hankel transform of h_j^m,
    ``int_0^1 h_j^m(s) J_m(ks) s ds = (-1)^{j-1} mu_j^m J_{2j+m-1}(k) / k``.
    Returns ``(value, tail_bound)``.
    """
    if basis == "h":
        a, b = 2 * i + m - 1, 2 * j + m - 1
        v, tb = bessel_product_integral(a, b, 2, tol)
        s = (-1) ** (i + j) * hole_mu(m, i) * hole_mu(m, j)
        return float(s * v), float(abs(s) * tb)
    if basis == "q":
        spec = hole_basis(m, max(i, j))
        bi, bj = spec.betas[i - 1], spec.betas[j - 1]
        total, bound = 0.0, 0.0
        for ii, wi in ((i, 1.0), (i + 1, bi)):
            for jj, wj in ((j, 1.0), (j + 1, bj)):
                v, tb = oracle_hole_L(m, ii, jj, "h", tol)
                total += wi * wj * v
                bound += abs(wi * wj) * tb
        return total, bound
    raise ValueError(f"basis must be 'h' or 'q', got {basis!r}")


def oracle_S_hat_at_one(m: int, j: int, tol: float = 1e-9):
    """Surface operator applied to h_j^m, evaluated at r = 1, by direct integration.

    Returns ``(value, tail_bound)``.
    """
    if m < 1 or j < 1:
        raise ValueError("need m >= 1 and j >= 1")
    v, tb = bessel_product_integral(2 * j + m - 1, m, 1, tol)
    mu = hole_mu(m, j)
    return float((-1) ** (j - 1) * mu * v), float(mu * tb)


def hankel_transform_h(m: int, j: int, k, nodes: int = 200):
    """``int_0^1 h_j^m(s) J_m(ks) s ds`` by Gauss quadrature (for checking)."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    s = 0.5 * (t + 1)
    w = 0.5 * w
    k = np.atleast_1d(np.asarray(k, dtype=float))
    h = radial_h_eval(m, j, s)
    J = np.array([bessel_j(m, kk * s) for kk in k])
    return J @ (w * h * s)


# ---------------------------------------------------------------------------
# strip log-kernel entries

_GL_LOG = np.polynomial.legendre.leggauss(20)
_GL_INNER = np.polynomial.legendre.leggauss(48)


def _log_nodes(length=2.0, ratio=0.25, levels=48):
    edges = length * ratio ** np.arange(levels + 1)
    t, w = _GL_LOG
    lo, hi = edges[1:], edges[:-1]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return (mid[:, None] + half[:, None] * t).ravel(), (half[:, None] * w).ravel()


def log_kernel_integral(f, g) -> float:
    """``int int ln|x - s| f(x) g(s) ds dx`` over [-1, 1]^2 for polynomial f, g.

    Split along x = s; on each triangle substitute u = |x - s| so the
    logarithm depends on one variable, integrate the polynomial direction
    exactly with Gauss-Legendre and the ln u direction on panels
    geometrically refined toward u = 0.
    """
    u, wu = _log_nodes()
    t, w = _GL_INNER
    # x = s + u, s in [-1, 1 - u]
    lo, hi = -1.0, 1.0 - u
    s = 0.5 * (hi - lo)[:, None] * (t + 1) + lo
    ws = 0.5 * (hi - lo)[:, None] * w
    Fp = np.sum(ws * f(s + u[:, None]) * g(s), axis=1)
    # s = x + u, x in [-1, 1 - u]
    Fm = np.sum(ws * f(s) * g(s + u[:, None]), axis=1)
    return float(np.sum(wu * np.log(u) * (Fp + Fm)))


def oracle_strip_L(i: int, j: int, basis: str = "p") -> float:
    """``-(1/pi) int int ln|x - s| b_i(x) b_j(s) ds dx`` with b = p or q."""
    if basis == "p":
        def fi(x):
            return legendre_eval(i, x)

        def fj(x):
            return legendre_eval(j, x)
    elif basis == "q":
        spec = strip_basis(max(i, j) + 2)

        def fi(x):
            return strip_q_eval(spec, i, x)

        def fj(x):
            return strip_q_eval(spec, j, x)
    else:
        raise ValueError(f"basis must be 'p' or 'q', got {basis!r}")
    return -log_kernel_integral(fi, fj) / math.pi


# ---------------------------------------------------------------------------
# Gram and stiffness entries

def _gauss(a, b, n=96):
    t, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * (t + 1) + a, 0.5 * (b - a) * w


def oracle_strip_M(i: int, j: int) -> float:
    spec = strip_basis(max(i, j) + 2)
    x, w = _gauss(-1, 1)
    return float(np.sum(w * strip_q_eval(spec, i, x) * strip_q_eval(spec, j, x)))


def oracle_strip_K(i: int, j: int) -> float:
    spec = strip_basis(max(i, j) + 2)
    x, w = _gauss(-1, 1)
    return float(np.sum(w * strip_q_eval(spec, i, x, 1) * strip_q_eval(spec, j, x, 1)))


def oracle_hole_M(m: int, i: int, j: int) -> float:
    spec = hole_basis(m, max(i, j))
    r, w = _gauss(0, 1)
    return float(np.sum(w * hole_q_eval(spec, i, r) * hole_q_eval(spec, j, r) * r))


def oracle_hole_K(m: int, i: int, j: int) -> float:
    spec = hole_basis(m, max(i, j))
    r, w = _gauss(0, 1)
    val = np.sum(w * hole_q_eval(spec, i, r, 1) * hole_q_eval(spec, j, r, 1) * r)
    if m != 0:
        val += m * m * np.sum(w * hole_q_eval(spec, i, r) * hole_q_eval(spec, j, r) / r)
    return float(val)


def oracle_hole_K_tilde(m: int, i: int, j: int) -> float:
    r, w = _gauss(0, 1)
    hi, hj = radial_h_eval(m, i, r), radial_h_eval(m, j, r)
    val = np.sum(w * radial_h_eval(m, i, r, 1) * radial_h_eval(m, j, r, 1) * r)
    if m != 0:
        val += m * m * np.sum(w * hi * hj / r)
    return float(val)


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class OracleReport:
    geometry: str
    m: int
    i: int
    j: int
    quantity: str
    closed_form: float
    oracle: float
    tolerance: float
    tail_bound: float = 0.0

    @property
    def abs_err(self) -> float:
        return abs(self.closed_form - self.oracle)

    @property
    def passed(self) -> bool:
        return self.abs_err <= self.tolerance

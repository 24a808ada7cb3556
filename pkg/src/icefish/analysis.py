"""Sloshing profiles, high-spot location and the critical Bond number.

The boundary curvature of a mode-m hole profile scaled to xi(1) = 1 is

    xi''(1) = m^2 + Bo (1 - lambda * S(1)),

where S(1) is the surface operator applied to the profile and evaluated
on the rim. Its zero in Bo is the critical Bond number Bo*, found either as
a fixed point of ``T(Bo) = m^2 / (lambda S(1) - 1)`` through the slope-alpha
map ``T~(x) = (1/T(1/x) - alpha x) / (1 - alpha)`` with ``x = 1/Bo``, or by
bisection on the sign of the curvature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.integrate import trapezoid

from .errors import NoFixedPointError, NumericalError, PoleError
from .gevp import EigenSolution, solve_gevp, solve_pair
from .hole_assembly import assemble_hole
from .polybasis import BasisSpec, Geometry, hole_mu, q_table
from .strip_assembly import SpectralSystem, assemble_strip

GRID_POINTS = 2048
ROOT_TOL = 1e-12


class Normalization(str, Enum):
    BOUNDARY_ONE = "boundary_one"
    MAX_ABS_ONE = "max_abs_one"


@lru_cache(maxsize=64)
def get_system(geometry: str, m: int | None, n: int) -> SpectralSystem:
    """Assembled system, cached per (geometry, m, n)."""
    if Geometry(geometry) is Geometry.STRIP:
        return assemble_strip(n)
    return assemble_hole(m, n)


# ---------------------------------------------------------------------------
# profiles

@dataclass(frozen=True, eq=False)
class SurfaceProfile:
    basis: BasisSpec
    coeffs: np.ndarray
    normalization: Normalization
    _rim: tuple = field(default=(), repr=False)

    @property
    def geometry(self) -> Geometry:
        return self.basis.geometry

    @property
    def mode(self):
        return self.basis.mode

    def __call__(self, x, deriv: int = 0):
        x = np.asarray(x, dtype=float)
        return np.tensordot(self.coeffs, q_table(self.basis, x, deriv), axes=1)

    @property
    def rim(self) -> tuple[float, float, float]:
        """(xi, xi', xi'') at x = 1."""
        return self._rim

    @property
    def d2_at_one(self) -> float:
        return self._rim[2]


def _rim_values(basis, coeffs):
    return tuple(float(coeffs @ q_table(basis, 1.0, d)) for d in range(3))


def make_profile(basis: BasisSpec, coeffs, norm: Normalization = Normalization.BOUNDARY_ONE,
                 tol: float = 1e-12) -> SurfaceProfile:
    """Scale a coefficient vector into a normalized profile.

    BoundaryOne scales to xi(1) = 1; if xi(1) vanishes to ``tol`` the
    profile falls back to MaxAbsOne with a positive maximum.
    """
    c = np.array(coeffs, dtype=float)
    if not np.any(c):
        raise ValueError("degenerate all-zero coefficient vector")
    norm = Normalization(norm)
    x1 = float(c @ q_table(basis, 1.0))
    if norm is Normalization.BOUNDARY_ONE and abs(x1) > tol * np.abs(c).sum():
        c = c / x1
    else:
        norm = Normalization.MAX_ABS_ONE
        lo = -1.0 if basis.geometry is Geometry.STRIP else 0.0
        vals = c @ q_table(basis, np.linspace(lo, 1.0, GRID_POINTS))
        k = int(np.argmax(np.abs(vals)))
        c = c / vals[k]
    c.flags.writeable = False
    return SurfaceProfile(basis, c, norm, _rim_values(basis, c))


def profile_from_solution(solution: EigenSolution, j: int = 1,
                          norm: Normalization = Normalization.BOUNDARY_ONE) -> SurfaceProfile:
    if not 1 <= j <= len(solution):
        raise ValueError(f"eigen index {j} outside 1..{len(solution)}")
    return make_profile(solution.system.basis, solution.vectors[:, j - 1], norm)


def fundamental(geometry: str, m: int | None, n: int, bond: float):
    """(lambda_1, BoundaryOne profile) of the cached system at ``bond``."""
    system = get_system(Geometry(geometry).value, m, n)
    lam, vec = solve_pair(system.lhs(bond), system.L, 1)
    return float(lam[0]), make_profile(system.basis, vec[:, 0])


# ---------------------------------------------------------------------------
# critical points

def _derivative_roots(profile: SurfaceProfile, points: int = GRID_POINTS, tol: float = ROOT_TOL):
    """Sign-change roots of xi' in (0, 1), refined by bisection."""
    r = np.linspace(0.0, 1.0, points)
    d = profile(r, 1)
    # the last cell ends on the Neumann zero at r = 1, where the sign is noise
    k = np.flatnonzero(np.sign(d[:-2]) * np.sign(d[1:-1]) < 0)
    z0 = np.flatnonzero(d[1:-1] == 0) + 1
    lo, hi = r[k].copy(), r[k + 1].copy()
    flo = d[k].copy()
    while lo.size and np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        fm = profile(mid, 1)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return np.sort(np.concatenate([0.5 * (lo + hi), r[z0]]))


class HighSpot(NamedTuple):
    location: float
    is_boundary: bool


def high_spot(profile: SurfaceProfile, points: int = GRID_POINTS, tol: float = ROOT_TOL) -> HighSpot:
    """Location of the maximum of xi over [0, 1].

    Candidates are the refined interior zeros of xi' plus both endpoints;
    ties go to the interior point.
    """
    roots = _derivative_roots(profile, points, tol)
    interior = np.concatenate([[0.0], roots])
    vi = profile(interior)
    k = int(np.argmax(vi))
    v1 = profile.rim[0]
    if vi[k] >= v1 - tol * max(1.0, abs(v1)) and interior[k] < 1.0:
        return HighSpot(float(interior[k]), False)
    return HighSpot(1.0, True)


def first_zeros_of_derivative(m: int, bond: float, n: int = 80) -> list[float]:
    """Zeros of the fundamental hole profile's derivative in (0, 1], ascending."""
    _, prof = fundamental("hole", m, n, bond)
    roots = [float(z) for z in _derivative_roots(prof) if z > 0]
    return roots + [1.0]


# ---------------------------------------------------------------------------
# boundary curvature and the maps T, T~

def shat_h_at_one(m: int, j):
    """Surface operator applied to h_j^m, evaluated at r = 1 (closed form)."""
    j = np.asarray(j, dtype=float)
    return hole_mu(m, j) / (2 * np.pi * (j + m - 0.5) * (j - 0.5))


def S_hat_at_one(profile: SurfaceProfile) -> float:
    basis = profile.basis
    if basis.geometry is not Geometry.HOLE or basis.mode < 1:
        raise ValueError("S_hat_at_one needs a hole profile with m >= 1")
    m = basis.mode
    j = basis.indices.astype(float)
    beta = basis.betas[basis.indices - 1]
    return float(profile.coeffs @ (shat_h_at_one(m, j) + beta * shat_h_at_one(m, j + 1)))


def curvature_at_boundary(profile: SurfaceProfile, lam: float, bond: float, m: int) -> float:
    """``m^2 + Bo (1 - lambda S(1))`` for a BoundaryOne hole profile.

    The direct polynomial value is ``profile.d2_at_one``.
    """
    if profile.normalization is not Normalization.BOUNDARY_ONE:
        raise ValueError("curvature formula needs a BoundaryOne profile")
    if not (bond > 0 and math.isfinite(bond)):
        raise ValueError(f"finite positive Bond number required, got {bond}")
    return m * m + bond * (1.0 - lam * S_hat_at_one(profile))


def inverse_T(x: float, m: int, n: int = 80) -> float:
    """``1/T(1/x) = (lambda S(1) - 1) / m^2``; finite where T has its pole."""
    lam, prof = fundamental("hole", m, n, 1.0 / x)
    return (lam * S_hat_at_one(prof) - 1.0) / (m * m)


def map_T(bond: float, m: int, n: int = 80) -> float:
    if m < 1:
        raise ValueError("T is defined for m >= 1")
    lam, prof = fundamental("hole", m, n, bond)
    den = lam * S_hat_at_one(prof) - 1.0
    if abs(den) < 1e-13:
        raise PoleError(f"pole of T at Bo = {bond:.17g} (denominator {den:.3e})")
    return m * m / den


def _check_alpha(alpha):
    if not alpha > 1:
        raise ValueError(f"slope alpha must be > 1, got {alpha}")


def map_T_tilde(x: float, alpha: float, m: int, n: int = 80) -> float:
    _check_alpha(alpha)
    if not 0 < x <= 1:
        raise ValueError(f"x = 1/Bo must lie in (0, 1], got {x}")
    return (inverse_T(x, m, n) - alpha * x) / (1.0 - alpha)


@dataclass(frozen=True)
class BondStarResult:
    bond_star: float
    m: int
    alpha: float
    iterations: int
    threshold: float
    n: int
    trace: tuple = ()


def bond_star_hole(m: int, alpha: float = 2.0, n: int = 80, threshold: float = 1e-14,
                   bond0: float = 2.0, max_iter: int = 10_000) -> BondStarResult:
    """Fixed-point iteration ``x <- T~(x)`` from ``x = 1/bond0``."""
    _check_alpha(alpha)
    if m < 1:
        raise ValueError("Bo* is defined for m >= 1")
    if not bond0 > 1 or not threshold > 0:
        raise ValueError("need bond0 > 1 and threshold > 0")
    x = 1.0 / bond0
    trace = [x]
    for it in range(1, max_iter + 1):
        xn = (inverse_T(x, m, n) - alpha * x) / (1.0 - alpha)
        trace.append(xn)
        if not (math.isfinite(xn) and 0 < xn <= 1):
            raise NoFixedPointError(
                f"no fixed point for m = {m}: iterate left the range Bo >= 1 after {it} steps "
                f"(Bo = {1 / xn:.6g})")
        if abs(xn - x) <= threshold:
            return BondStarResult(1.0 / xn, m, alpha, it, threshold, n, tuple(trace))
        x = xn
    if m >= 6:
        raise NoFixedPointError(f"no fixed point for m = {m} within {max_iter} iterations")
    raise NumericalError(f"iteration budget {max_iter} exhausted for m = {m}, alpha = {alpha}")


def _bisect(f, lo, hi, tol):
    flo, fhi = f(lo), f(hi)
    if np.sign(flo) == np.sign(fhi):
        raise ValueError(f"no sign change on bracket ({lo}, {hi}): {flo:.3e}, {fhi:.3e}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def strip_boundary_curvature(bond: float, n: int = 400) -> float:
    """xi''(1) of the BoundaryOne fundamental strip profile."""
    return fundamental("strip", None, n, bond)[1].d2_at_one


def bond_star_strip(n: int = 400, bracket=(5.0, 15.0), tol: float = 1e-6) -> float:
    """Bisection on the sign of the strip's boundary curvature."""
    return _bisect(lambda b: strip_boundary_curvature(b, n), *bracket, tol)


def hole_boundary_curvature(bond: float, m: int, n: int = 80) -> float:
    lam, prof = fundamental("hole", m, n, bond)
    return curvature_at_boundary(prof, lam, bond, m)


def bond_star_hole_bisect(m: int, n: int = 80, bracket=(1.0, 100.0), tol: float = 1e-12) -> float:
    """Bisection on the sign of the hole's boundary curvature."""
    return _bisect(lambda b: hole_boundary_curvature(b, m, n), *bracket, tol)


# ---------------------------------------------------------------------------
# sweeps and energy

@dataclass(frozen=True)
class SweepRecord:
    bond: float
    lambda1: float
    high_spot: float
    on_boundary: bool
    first_interior_zero: float | None = None


def sweep(geometry: str, bonds, m: int | None = None, n: int | None = None) -> list[SweepRecord]:
    geometry = Geometry(geometry)
    if n is None:
        n = 400 if geometry is Geometry.STRIP else 80
    out = []
    for bo in bonds:
        lam, prof = fundamental(geometry.value, m, n, float(bo))
        hs = high_spot(prof)
        fz = None
        if geometry is Geometry.HOLE:
            roots = [z for z in _derivative_roots(prof) if z > 0]
            fz = float(roots[0]) if roots else None
        out.append(SweepRecord(float(bo), lam, hs.location, hs.is_boundary, fz))
    return out


def energy_split(profile: SurfaceProfile, system: SpectralSystem | None = None) -> tuple[float, float]:
    """``(c^T M c, c^T K c)`` with the profile rescaled to ``c^T L c = 1``.

    These are the gravity integral and the surface-tension integral of the
    free-surface energy.
    """
    if system is None:
        b = profile.basis
        system = get_system(b.geometry.value, b.mode, b.dim)
    c = np.asarray(profile.coeffs, dtype=float)
    q = float(c @ system.L @ c)
    if not q > 0:
        raise ValueError("zero profile")
    c = c / math.sqrt(q)
    return float(c @ system.M @ c), float(c @ system.K @ c)


def profile_error(p: SurfaceProfile, ref: SurfaceProfile, points: int = GRID_POINTS) -> float:
    """Relative profile error: H1-type on [-1, 1] (strip), weighted L2 (hole)."""
    if p.geometry is Geometry.STRIP:
        x = np.linspace(-1.0, 1.0, points)
        e0 = p(x) - ref(x)
        e1 = p(x, 1) - ref(x, 1)
        num = trapezoid(e0 ** 2 + e1 ** 2, x)
        den = trapezoid(ref(x) ** 2 + ref(x, 1) ** 2, x)
    else:
        r = np.linspace(0.0, 1.0, points)
        num = trapezoid((p(r) - ref(r)) ** 2 * r, r)
        den = trapezoid(ref(r) ** 2 * r, r)
    return float(math.sqrt(num / den))

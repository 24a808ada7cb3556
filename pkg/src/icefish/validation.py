"""Closed-form matrix entries checked against independent quadrature oracles."""
from __future__ import annotations

from .analysis import get_system, shat_h_at_one
from .hole_assembly import hole_L_tilde
from .oracle import (OracleReport, oracle_hole_K, oracle_hole_L, oracle_hole_M,
                     oracle_S_hat_at_one, oracle_strip_K, oracle_strip_L, oracle_strip_M)
from .strip_assembly import strip_L_tilde

TOLERANCES = {
    ("strip", "M"): 1e-10,
    ("strip", "K"): 1e-9,
    ("strip", "L"): 1e-7,
    ("strip", "L_tilde"): 1e-7,
    ("hole", "M"): 1e-8,
    ("hole", "K"): 1e-8,
    ("hole", "L"): 1e-8,
    ("hole", "L_tilde"): 1e-8,
    ("hole", "L_tilde_sym"): 1e-14,
    ("hole", "S_hat"): 1e-8,
}


def strip_reports(imax: int = 10) -> list[OracleReport]:
    sys_ = get_system("strip", None, imax + 2)
    tol = TOLERANCES
    out = []
    for i in range(1, imax + 1):
        for j in range(1, imax + 1):
            a, b = i - 1, j - 1
            out.append(OracleReport("strip", 0, i, j, "M", float(sys_.M[a, b]),
                                    oracle_strip_M(i, j), tol["strip", "M"]))
            out.append(OracleReport("strip", 0, i, j, "K", float(sys_.K[a, b]),
                                    oracle_strip_K(i, j), tol["strip", "K"]))
            out.append(OracleReport("strip", 0, i, j, "L", float(sys_.L[a, b]),
                                    oracle_strip_L(i, j, "q"), tol["strip", "L"]))
            out.append(OracleReport("strip", 0, i, j, "L_tilde", float(strip_L_tilde(i, j)),
                                    oracle_strip_L(i, j, "p"), tol["strip", "L_tilde"]))
    return out


def hole_reports(mmax: int = 3, imax: int = 8, literal: bool = False) -> list[OracleReport]:
    out = []
    tol = TOLERANCES
    for m in range(mmax + 1):
        sys_ = get_system("hole", m, imax)
        idx = list(sys_.basis.indices)
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                out.append(OracleReport("hole", m, i, j, "M", float(sys_.M[a, b]),
                                        oracle_hole_M(m, i, j), tol["hole", "M"]))
                out.append(OracleReport("hole", m, i, j, "K", float(sys_.K[a, b]),
                                        oracle_hole_K(m, i, j), tol["hole", "K"]))
                v, tb = oracle_hole_L(m, i, j, "q")
                out.append(OracleReport("hole", m, i, j, "L", float(sys_.L[a, b]),
                                        v, tol["hole", "L"], tb))
        for i in range(1, imax + 1):
            for j in range(1, imax + 1):
                closed = float(hole_L_tilde(m, i, j, literal=literal))
                v, tb = oracle_hole_L(m, i, j, "h")
                out.append(OracleReport("hole", m, i, j, "L_tilde", closed, v,
                                        tol["hole", "L_tilde"], tb))
                mirror = float(hole_L_tilde(m, j, i, literal=literal))
                scale = max(abs(closed), abs(mirror), 1.0)
                out.append(OracleReport("hole", m, i, j, "L_tilde_sym", closed, mirror,
                                        tol["hole", "L_tilde_sym"] * scale))
    return out


def shat_reports(mmax: int = 5, jmax: int = 10) -> list[OracleReport]:
    """Rim values of the surface operator on h_j^m; a negative value fails."""
    out = []
    for m in range(1, mmax + 1):
        for j in range(1, jmax + 1):
            closed = float(shat_h_at_one(m, j))
            v, tb = oracle_S_hat_at_one(m, j)
            tol = TOLERANCES["hole", "S_hat"] if closed > 0 and v > 0 else -1.0
            out.append(OracleReport("hole", m, j, j, "S_hat", closed, v, tol, tb))
    return out


def run_validation(geometry: str | None = None, strip_imax: int = 10, hole_mmax: int = 3,
                   hole_imax: int = 8, shat_mmax: int = 5, shat_jmax: int = 10,
                   literal: bool = False) -> list[OracleReport]:
    """All reports, sorted by (geometry, quantity, m, i, j)."""
    rows = []
    if geometry in (None, "strip"):
        rows += strip_reports(strip_imax)
    if geometry in (None, "hole"):
        rows += hole_reports(hole_mmax, hole_imax, literal)
        rows += shat_reports(shat_mmax, shat_jmax)
    return sorted(rows, key=lambda r: (r.geometry, r.quantity, r.m, r.i, r.j))

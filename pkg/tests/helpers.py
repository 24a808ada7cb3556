"""Brute-force references shared by the unit and acceptance suites."""
import numpy as np


def count_below(A, L, sigma):
    """Number of eigenvalues of A c = lam L c below sigma (Sylvester inertia).

    Plain LDL^T elimination on A - sigma L, no pivoting: the count of
    negative pivots equals the count of negative eigenvalues.
    """
    B = A - sigma * L
    n = B.shape[0]
    B = B.copy()
    neg = 0
    for k in range(n):
        p = B[k, k]
        if p == 0.0:
            p = 1e-300
        neg += p < 0
        B[k + 1:, k + 1:] -= np.outer(B[k + 1:, k], B[k, k + 1:]) / p
    return neg


def brute_eigs(A, L, tol=1e-13):
    n = A.shape[0]
    hi = 1.0
    while count_below(A, L, hi) < n:
        hi *= 2
    out = []
    for k in range(1, n + 1):
        lo, up = 0.0, hi
        while up - lo > tol * up:
            mid = 0.5 * (lo + up)
            if count_below(A, L, mid) >= k:
                up = mid
            else:
                lo = mid
        out.append(0.5 * (lo + up))
    return np.array(out)


def random_spd(rng, d, cond):
    Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    return (Q * np.geomspace(1.0, cond, d)) @ Q.T

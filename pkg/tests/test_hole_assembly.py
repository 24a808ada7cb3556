import math

import numpy as np
import pytest
from scipy import special

from icefish.analysis import shat_h_at_one
from icefish.hole_assembly import assemble_hole, hole_K_tilde, hole_L_tilde
from icefish.oracle import (hankel_transform_h, oracle_hole_K, oracle_hole_K_tilde,
                            oracle_hole_L, oracle_hole_M, oracle_S_hat_at_one)
from icefish.polybasis import hole_mu, radial_h_eval


@pytest.fixture(scope="module", params=[0, 1, 2, 3])
def system(request):
    return assemble_hole(request.param, 8)


def test_sizes():
    assert assemble_hole(0, 8).dim == 7
    assert assemble_hole(2, 8).dim == 8


def test_M_tridiagonal_K_diagonal(system):
    M, K = system.M, system.K
    assert np.count_nonzero(np.triu(M, 2)) == 0
    np.testing.assert_array_equal(K, np.diag(np.diag(K)))
    assert np.all(np.diag(K) > 0)


def test_positive_definite(system):
    for A in (system.M, system.K, system.L):
        assert np.linalg.eigvalsh(A).min() > 0


def test_entries_against_oracles(system):
    m = system.mode
    idx = list(system.basis.indices)
    for a, i in enumerate(idx[:5]):
        for b, j in enumerate(idx[:5]):
            assert system.M[a, b] == pytest.approx(oracle_hole_M(m, i, j), abs=1e-12)
            assert system.K[a, b] == pytest.approx(oracle_hole_K(m, i, j), abs=1e-10)
            v, tb = oracle_hole_L(m, i, j, "q")
            assert tb < 1e-9
            assert system.L[a, b] == pytest.approx(v, abs=1e-9)


@pytest.mark.parametrize("m", [1, 2, 4])
def test_K_tilde_against_quadrature(m):
    for i in range(1, 6):
        for j in range(1, 6):
            assert hole_K_tilde(m, i, j) == pytest.approx(oracle_hole_K_tilde(m, i, j),
                                                          rel=1e-12, abs=1e-12)


def test_L_tilde_index_form_is_the_symmetric_one():
    m = 2
    I, J = np.meshgrid(np.arange(1, 7), np.arange(1, 7), indexing="ij")
    corrected = hole_L_tilde(m, I, J)
    literal = hole_L_tilde(m, I, J, literal=True)
    np.testing.assert_array_equal(corrected, corrected.T)
    assert np.abs(literal - literal.T).max() > 1e-3
    # arbitration: the Bessel-product integral agrees with the symmetric form only
    for i, j in [(3, 1), (2, 5), (4, 1)]:
        v, _ = oracle_hole_L(m, i, j)
        assert hole_L_tilde(m, i, j) == pytest.approx(v, abs=1e-10)
        assert abs(hole_L_tilde(m, i, j, literal=True) - v) > 1e-4


@pytest.mark.parametrize("m,j", [(1, 1), (1, 4), (3, 2), (5, 7), (2, 10)])
def test_hankel_transform_of_h(m, j):
    # [DERIVED] int_0^1 h_j^m(s) J_m(ks) s ds = (-1)^{j-1} mu J_{2j+m-1}(k) / k
    k = np.array([0.3, 1.7, 5.0, 12.5, 40.0])
    expect = (-1) ** (j - 1) * hole_mu(m, j) * special.jv(2 * j + m - 1, k) / k
    np.testing.assert_allclose(hankel_transform_h(m, j, k), expect, rtol=1e-10, atol=1e-13)


@pytest.mark.parametrize("m", range(1, 6))
def test_surface_operator_rim_value_is_positive(m):
    # the closed form carries (j - 1/2), not (1/2 - j): both it and the integral are > 0
    for j in range(1, 11):
        closed = shat_h_at_one(m, j)
        v, tb = oracle_S_hat_at_one(m, j)
        assert closed > 0 and v > 0
        assert closed == pytest.approx(v, abs=1e-8)
        assert closed == pytest.approx(
            hole_mu(m, j) / (2 * math.pi * (j + m - 0.5) * (j - 0.5)), rel=1e-14)


def test_invalid():
    with pytest.raises(ValueError):
        assemble_hole(0, 1)
    with pytest.raises(ValueError):
        assemble_hole(-1, 5)


# stiffness derivation chain, small indices --------------------------------

_T, _W = np.polynomial.legendre.leggauss(80)
_R, _WR = 0.5 * (_T + 1), 0.5 * _W
_X = 2 * _R ** 2 - 1


def _jac(n, a, b):
    return special.eval_jacobi(n, a, b, _X) if n >= 0 else 0 * _X


def A_quad(m, i, j):
    return np.sum(_WR * _R ** (2 * m - 1) * _jac(j - 1, 0, m) * _jac(i - 1, 0, m))


def B_quad(m, i, j):
    # measure r dr; without it the closed form below does not hold
    return np.sum(_WR * radial_h_eval(m, j, _R) * _R ** (m + 1) * _jac(i - 2, 1, m + 1))


def C_quad(m, i, j):
    return 2 * np.sum(_WR * _R ** (2 * m + 3) * _jac(j - 2, 1, m + 1) * _jac(i - 2, 1, m + 1))


def A_closed(m, i, j):
    return (-1) ** (i + j) / (2 * m) * special.poch(min(i, j), m) / special.poch(max(i, j), m)


def B_closed(m, i, j):
    if j >= i:
        return 0.0
    return hole_mu(m, j) / (2 * (m + i)) * (1 - (-1) ** (i + j) * special.poch(j, m) / special.poch(i, m))


def C_closed(m, i, j):
    return (min(i, j) - 1) / (max(i, j) + m)


IDX = [(i, j) for i in range(1, 7) for j in range(1, 7)]


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_intermediate_integrals_closed_forms(m):
    for i, j in IDX:
        assert A_quad(m, i, j) == pytest.approx(A_closed(m, i, j), abs=1e-13)
        assert B_quad(m, i, j) == pytest.approx(B_closed(m, i, j), abs=1e-12)
        assert C_quad(m, i, j) == pytest.approx(C_closed(m, i, j), abs=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_intermediates_combine_to_K_tilde(m):
    for i, j in IDX:
        mi, mj = hole_mu(m, i), hole_mu(m, j)
        combo = 2 * mi * mj * (m * m * A_closed(m, i, j) + m / mj * (i + m) * B_closed(m, i, j)
                               + m / mi * (j + m) * B_closed(m, j, i)
                               + (i + m) * (j + m) * C_closed(m, i, j))
        assert combo == pytest.approx(hole_K_tilde(m, i, j), rel=1e-12)


@pytest.mark.parametrize("m", [1, 2, 4, 7])
def test_pochhammer_sum_identity(m):
    # ((nu-1)! / (m+1)_{nu-1})^2 sum_{l<nu} (m + 2l) ((m)_l / l!)^2 = m
    for nu in range(1, 9):
        s = sum((m + 2 * ell) * (special.poch(m, ell) / math.factorial(ell)) ** 2
                for ell in range(nu))
        assert (math.factorial(nu - 1) / special.poch(m + 1, nu - 1)) ** 2 * s == pytest.approx(m)


@pytest.mark.parametrize("m", [1, 3])
def test_connection_sum_to_h(m):
    # r^m P_{i-1}^{(1,m)}(2r^2-1) = (1 / (2(m+i))) sum_{l<=i} mu_l h_l
    for i in range(1, 6):
        lhs = _R ** m * _jac(i - 1, 1, m)
        rhs = sum(hole_mu(m, ell) * radial_h_eval(m, ell, _R) for ell in range(1, i + 1)) / (2 * (m + i))
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("m", [0, 1, 4])
def test_K_from_K_tilde_is_diagonal_closed_form(m):
    sys_ = assemble_hole(m, 7)
    idx = sys_.basis.indices
    beta = sys_.basis.betas[idx - 1]
    I, J = np.meshgrid(idx, idx, indexing="ij")
    bi, bj = beta[:, None], beta[None, :]
    full = (hole_K_tilde(m, I, J) + bi * hole_K_tilde(m, I + 1, J)
            + bj * hole_K_tilde(m, I, J + 1) + bi * bj * hole_K_tilde(m, I + 1, J + 1))
    np.testing.assert_allclose(full, sys_.K, atol=1e-10 * np.abs(sys_.K).max())

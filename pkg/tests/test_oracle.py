import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from icefish.errors import OracleAccuracyError
from icefish.oracle import (OracleReport, asymptotic_threshold, bessel_j,
                            bessel_product_integral, log_kernel_integral, oracle_strip_L)


def mp_j(m, x):
    with mp.workdps(40):
        return float(mp.besselj(m, x))


def weber_schafheitlin(a, b, lam):
    """int_0^inf J_a(t) J_b(t) t^{-lam} dt (general closed form, 1/Gamma at poles is 0)."""
    with mp.workdps(30):
        lam = mp.mpf(lam)
        v = (mp.gamma(lam) * mp.gamma((a + b - lam + 1) / 2) / 2 ** lam
             * mp.rgamma((-a + b + lam + 1) / 2) * mp.rgamma((a + b + lam + 1) / 2)
             * mp.rgamma((a - b + lam + 1) / 2))
        return float(v)


@given(st.integers(0, 60), st.floats(0, 2e4))
def test_bessel_matches_mpmath(m, x):
    assert bessel_j(m, x) == pytest.approx(mp_j(m, x), abs=1e-14)


@pytest.mark.parametrize("m", [0, 1, 5, 20, 45])
def test_bessel_every_regime(m):
    thr = asymptotic_threshold(m)
    xs = [0.0, 0.5 * math.sqrt(4 * (m + 1)), math.sqrt(4 * (m + 1)) * 1.01, 0.5 * thr,
          thr * 0.999, thr, thr * 1.001, 3 * thr]
    for x in xs:
        assert bessel_j(m, x) == pytest.approx(mp_j(m, x), abs=1e-14), x


def test_bessel_matches_scipy_on_grid():
    x = np.linspace(0, 300, 3001)
    for m in (0, 3, 17):
        np.testing.assert_allclose(bessel_j(m, x), special.jv(m, x), atol=1e-13)


def test_bessel_shapes_and_domain():
    assert isinstance(bessel_j(2, 1.5), float)
    assert bessel_j(0, 0.0) == 1.0 and bessel_j(3, 0.0) == 0.0
    assert bessel_j(1, np.ones((2, 3))).shape == (2, 3)
    with pytest.raises(ValueError):
        bessel_j(-1, 1.0)
    with pytest.raises(ValueError):
        bessel_j(1, -1.0)


@pytest.mark.parametrize("a,b,p", [(1, 1, 2), (3, 1, 2), (5, 8, 2), (2, 2, 1), (1, 4, 1),
                                   (7, 2, 1), (9, 5, 2)])
def test_product_integral_closed_form(a, b, p):
    val, tb = bessel_product_integral(a, b, p, tol=1e-10)
    assert tb <= 1e-10
    assert val == pytest.approx(weber_schafheitlin(a, b, p), abs=1e-10)


def test_product_integral_p1_elementary():
    # [DERIVED] int J_a J_b / t = 2 sin((a - b) pi / 2) / (pi (a^2 - b^2)), a != b
    for a, b in [(1, 2), (3, 6), (4, 1)]:
        val, _ = bessel_product_integral(a, b, 1, tol=1e-10)
        assert val == pytest.approx(2 * math.sin((a - b) * math.pi / 2) / (math.pi * (a * a - b * b)),
                                    abs=1e-10)


@pytest.mark.parametrize("a,b,p", [(3, 5, 2), (2, 4, 1), (6, 1, 1)])
def test_tail_bound_shrinks_and_covers_the_error(a, b, p):
    exact = weber_schafheitlin(a, b, p)
    prev = None
    for K in (512.0, 1024.0, 2048.0):
        val, tb = bessel_product_integral(a, b, p, K=K)
        assert abs(val - exact) <= tb
        if prev is not None:
            assert prev / tb >= 0.9 * 2 ** (p + 1)
        prev = tb


def test_unreachable_tolerance():
    with pytest.raises(OracleAccuracyError):
        bessel_product_integral(1, 1, 1, tol=1e-20)


def test_log_kernel_constant():
    # [DERIVED] int int ln|x - s| over [-1,1]^2 = 4 ln 2 - 6
    one = lambda x: np.ones_like(x)  # noqa: E731
    assert log_kernel_integral(one, one) == pytest.approx(4 * math.log(2) - 6, abs=1e-13)


def test_log_kernel_linear():
    # [DERIVED] inner integral in closed form with u = s - x:
    # int (u + x) ln|u| du = u^2/2 ln|u| - u^2/4 + x (u ln|u| - u)
    def F(u, x):
        lu = mp.log(abs(u)) if u != 0 else 0
        return u * u / 2 * lu - u * u / 4 + x * (u * lu - u)

    with mp.workdps(30):
        ref = float(mp.quad(lambda x: x * (F(1 - x, x) - F(-1 - x, x)), [-1, 0, 1]))
    ident = lambda x: np.asarray(x, dtype=float)  # noqa: E731
    assert log_kernel_integral(ident, ident) == pytest.approx(ref, abs=1e-12)


def test_strip_oracle_odd_even_decoupled():
    assert abs(oracle_strip_L(1, 2)) < 1e-14


def test_report_properties():
    r = OracleReport("hole", 1, 2, 3, "L", 1.0, 1.0 + 2e-9, 1e-8)
    assert r.abs_err == pytest.approx(2e-9)
    assert r.passed
    assert not OracleReport("hole", 1, 2, 3, "L", 1.0, 1.1, 1e-8).passed


def test_bessel_subnormal_argument():
    assert bessel_j(0, 5e-324) == 1.0
    assert bessel_j(2, 5e-324) == 0.0
    assert bessel_j(1, 1e-300) == pytest.approx(5e-301)

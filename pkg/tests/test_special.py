import numpy as np
import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from wigsim.special import airy_ai, airy_ai_scaled, laguerre


def test_airy_pinned_values():
    # Ai(0) = 3^(-2/3)/Gamma(2/3) and two tabulated points
    assert abs(airy_ai(0.0) - 0.3550280538878172) < 1e-12
    assert abs(airy_ai(1.0) - 0.1352924163128814) < 1e-10
    assert abs(airy_ai(-2.0) - 0.2274074282016856) < 1e-10


def test_airy_against_scipy_lattice():
    x = np.linspace(-30.0, 20.0, 4001)
    ref = scipy.special.airy(x)[0]
    assert np.max(np.abs(airy_ai(x) - ref)) < 1e-9


def test_airy_scaled_matches_unscaled_in_range():
    x = np.linspace(0.0, 30.0, 301)
    scale = np.exp((2.0 / 3.0) * x ** 1.5)
    assert np.max(np.abs(airy_ai_scaled(x) - scale * airy_ai(x))) < 1e-9


def test_airy_scaled_far_right_no_underflow():
    # bare Ai underflows near x ~ 700^(2/3); the scaled variant stays finite
    x = np.array([200.0, 500.0, 2000.0])
    v = airy_ai_scaled(x)
    assert np.all(np.isfinite(v)) and np.all(v > 0)
    ref = scipy.special.airye(x)[0]
    assert np.max(np.abs(v - ref) / ref) < 1e-9


@given(st.floats(min_value=-25.0, max_value=15.0))
def test_airy_pointwise_vs_scipy(x):
    assert abs(airy_ai(x) - scipy.special.airy(x)[0]) < 1e-9


def test_laguerre_exact_small_orders():
    # L_3(2.5) = 13/48 by the closed form, L_2^(1)(1.5) = -3/8
    assert abs(laguerre(3, 2.5) - 13.0 / 48.0) < 1e-12
    assert abs(laguerre(2, 1.5, alpha=1) - (-0.375)) < 1e-12
    assert laguerre(0, 7.7) == 1.0


@pytest.mark.parametrize("n,alpha", [(5, 0), (12, 0), (12, 3), (40, 2), (80, 5)])
def test_laguerre_against_scipy(n, alpha):
    x = np.linspace(0.0, 60.0, 601)
    ref = scipy.special.genlaguerre(n, alpha)(x)
    scale = np.maximum(np.abs(ref), 1.0)
    assert np.max(np.abs(laguerre(n, x, alpha=alpha) - ref) / scale) < 1e-9


@given(
    st.integers(min_value=1, max_value=30),
    st.integers(min_value=0, max_value=4),
    st.floats(min_value=0.0, max_value=40.0),
)
def test_laguerre_recurrence_consistency(n, alpha, x):
    # (n+1) L_{n+1} = (2n + 1 + alpha - x) L_n - (n + alpha) L_{n-1}
    lhs = (n + 1) * laguerre(n + 1, x, alpha=alpha)
    rhs = (2 * n + 1 + alpha - x) * laguerre(n, x, alpha=alpha) - (
        n + alpha
    ) * laguerre(n - 1, x, alpha=alpha)
    scale = max(abs(lhs), abs(rhs), 1.0)
    assert abs(lhs - rhs) / scale < 1e-10

import cmath
import math

import numpy as np
import pytest

from dengfan import (BoundaryNotDecayedError, DEFAULT_PARAMS,
                     IntegrationConfig, StepTooCoarseError, compute_rt,
                     default_config, integrate_scatter, plane_wave_decompose,
                     potential)

# closed-form transmission for the sharp rectangular barrier
# (v0=2, width 1, E=1, m=1): 1/(1 + sinh^2 sqrt(2))
T_RECT = 0.21077109396613054


def barrier(x):
    return potential(x, DEFAULT_PARAMS)


def rect_barrier(x):
    # mean value inside a 2e-9 window at the jumps keeps fixed-step samples
    # consistent; the induced shift of T is O(1e-9)
    x = np.abs(np.asarray(x, dtype=float))
    return np.where(x < 0.5 - 1e-9, 2.0, np.where(x > 0.5 + 1e-9, 0.0, 1.0))


# ---------------------------------------------------------------------------
# plane-wave decomposition
# ---------------------------------------------------------------------------

def test_decompose_pure_right_mover():
    k, x = 0.7, -3.2
    psi = cmath.exp(1j * k * x)
    A, B = plane_wave_decompose(psi, 1j * k * psi, k, x)
    assert A == pytest.approx(1.0, abs=1e-14)
    assert abs(B) <= 1e-14


def test_decompose_cosine():
    k, x = 1.3, 0.4
    A, B = plane_wave_decompose(cmath.cos(k * x), -k * cmath.sin(k * x), k, x)
    assert A == pytest.approx(0.5, abs=1e-14)
    assert B == pytest.approx(0.5, abs=1e-14)


def test_decompose_round_trip():
    rng = np.random.default_rng(41)
    for _ in range(1000):
        A = complex(rng.normal(), rng.normal())
        B = complex(rng.normal(), rng.normal())
        k = float(rng.uniform(0.05, 5.0))
        x = float(rng.uniform(-30.0, 30.0))
        ep, em = cmath.exp(1j * k * x), cmath.exp(-1j * k * x)
        psi = A * ep + B * em
        dpsi = 1j * k * (A * ep - B * em)
        A2, B2 = plane_wave_decompose(psi, dpsi, k, x)
        scale = max(abs(A), abs(B), 1.0)
        assert abs(A2 - A) <= 1e-12 * scale
        assert abs(B2 - B) <= 1e-12 * scale


def test_decompose_rejects_zero_k():
    with pytest.raises(ValueError):
        plane_wave_decompose(1.0 + 0j, 0.0j, 0.0, 0.0)


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

# numerov's tolerance reflects the (k h)^4 dispersion of its discrete mode
@pytest.mark.parametrize("method,tol", [("rk4", 1e-9), ("numerov", 1e-7)])
def test_free_propagation(method, tol):
    cfg = IntegrationConfig(x_max=10.0, step=0.01, method=method)
    res = integrate_scatter(1.0, lambda x: np.zeros_like(np.asarray(x, float)),
                            1.0, cfg)
    assert res.T == pytest.approx(1.0, abs=tol)
    assert res.R <= tol
    assert res.boundary_potential == 0.0


def test_rectangular_barrier_rk4():
    cfg = IntegrationConfig(x_max=2.0, step=2.0**-10)
    res = integrate_scatter(1.0, rect_barrier, 1.0, cfg)
    assert abs(res.T - T_RECT) <= 1e-6
    assert abs(res.R - (1.0 - T_RECT)) <= 1e-6


def test_rectangular_barrier_numerov():
    cfg = IntegrationConfig(x_max=2.0, step=2.0**-11, method="numerov")
    res = integrate_scatter(1.0, rect_barrier, 1.0, cfg)
    assert abs(res.T - T_RECT) <= 1e-6


def test_matches_analytic_at_default_config():
    for E in (0.005, 0.05, 0.1):
        cfg = default_config(E, barrier, m=1.0, x_max_seed=50.0)
        res = integrate_scatter(E, barrier, 1.0, cfg)
        ana = compute_rt(E, DEFAULT_PARAMS)
        assert abs(res.T - ana.T) <= 1e-6
        assert res.flux_residual <= 1e-6


def test_numerov_on_cusped_barrier_default_step():
    # the |x| cusp at the origin limits Numerov to 2nd order here; at the
    # default step it still lands within a few 1e-6 of the closed form
    cfg = IntegrationConfig(x_max=50.0, step=1e-3, method="numerov")
    res = integrate_scatter(0.005, barrier, 1.0, cfg)
    ana = compute_rt(0.005, DEFAULT_PARAMS)
    assert abs(res.T - ana.T) <= 5e-6


def test_rk4_flux_residual_order():
    # coarse steps where truncation dominates roundoff: halving the step
    # should cut the residual by at least 2^4
    residuals = []
    for h in (0.05, 0.025, 0.0125):
        cfg = IntegrationConfig(x_max=50.0, step=h)
        residuals.append(integrate_scatter(0.05, barrier, 1.0, cfg).flux_residual)
    assert residuals[0] / residuals[1] >= 8.0
    assert residuals[1] / residuals[2] >= 8.0


def test_rk4_richardson_order():
    Ts = {}
    for h in (0.04, 0.02, 0.01):
        cfg = IntegrationConfig(x_max=50.0, step=h)
        Ts[h] = integrate_scatter(0.05, barrier, 1.0, cfg).T
    ratio = (Ts[0.04] - Ts[0.02]) / (Ts[0.02] - Ts[0.01])
    assert 10.0 <= ratio <= 24.0


def test_numerov_richardson_order_smooth_potential():
    # on a smooth barrier Numerov shows its full 4th order
    gauss = lambda x: 2.0 * np.exp(-np.asarray(x, float) ** 2)
    Ts = {}
    for h in (0.032, 0.016, 0.008):
        cfg = IntegrationConfig(x_max=12.0, step=h, method="numerov")
        Ts[h] = integrate_scatter(1.0, gauss, 1.0, cfg).T
    ratio = (Ts[0.032] - Ts[0.016]) / (Ts[0.016] - Ts[0.008])
    assert 10.0 <= ratio <= 24.0


def test_step_too_coarse_raises():
    cfg = IntegrationConfig(x_max=50.0, step=0.2)
    with pytest.raises(StepTooCoarseError):
        integrate_scatter(0.05, barrier, 1.0, cfg)


def test_unstable_step_raises_cleanly():
    # k*h = 4.5: the explicit march blows up; must surface as
    # StepTooCoarseError, not an arithmetic exception
    cfg = IntegrationConfig(x_max=50.0, step=0.45)
    with pytest.raises(StepTooCoarseError):
        integrate_scatter(50.0, barrier, 1.0, cfg)


def test_boundary_not_decayed_raises():
    flat = lambda x: np.full_like(np.asarray(x, float), 0.5)
    cfg = IntegrationConfig(x_max=20.0, step=0.01)
    with pytest.raises(BoundaryNotDecayedError):
        integrate_scatter(1.0, flat, 1.0, cfg)


def test_default_config_doubles_until_decay():
    slow = lambda x: np.exp(-np.abs(np.asarray(x, float)) / 20.0)
    cfg = default_config(1.0, slow, m=1.0, x_max_seed=20.0)
    assert cfg.x_max == 640.0  # 20 * 2^5 is the first width with |V| <= 1e-12
    assert cfg.step == min(1e-3, 0.02 / math.sqrt(2.0))


def test_default_config_gives_up_on_nondecaying_potential():
    flat = lambda x: np.full_like(np.asarray(x, float), 0.5)
    with pytest.raises(BoundaryNotDecayedError):
        default_config(1.0, flat, m=1.0)


def test_result_reports_boundary_potential():
    cfg = default_config(0.05, barrier, m=1.0, x_max_seed=50.0)
    res = integrate_scatter(0.05, barrier, 1.0, cfg)
    assert 0.0 < res.boundary_potential <= cfg.decay_tol


@pytest.mark.parametrize("bad", [
    dict(x_max=0.0, step=0.001),
    dict(x_max=10.0, step=0.0),
    dict(x_max=10.0, step=0.2),      # step > x_max/100
    dict(x_max=10.0, step=0.01, decay_tol=0.0),
    dict(x_max=10.0, step=0.01, method="euler"),
])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        IntegrationConfig(**bad)


def test_nonpositive_energy_rejected():
    cfg = IntegrationConfig(x_max=10.0, step=0.01)
    with pytest.raises(ValueError):
        integrate_scatter(0.0, barrier, 1.0, cfg)
    with pytest.raises(ValueError):
        integrate_scatter(1.0, barrier, 0.0, cfg)


def test_scalar_potential_callback_supported():
    # callbacks that only accept scalars are evaluated pointwise
    def scalar_only(x):
        if isinstance(x, np.ndarray) and x.ndim > 0:
            raise TypeError("scalar only")
        return float(potential(float(x), DEFAULT_PARAMS))

    cfg = IntegrationConfig(x_max=50.0, step=0.02)
    res = integrate_scatter(0.05, scalar_only, 1.0, cfg)
    ana = compute_rt(0.05, DEFAULT_PARAMS)
    assert abs(res.T - ana.T) <= 1e-5

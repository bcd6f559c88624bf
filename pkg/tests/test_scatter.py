import math

import numpy as np
import pytest

from dengfan import (BarrierParams, DEFAULT_PARAMS, SingularMatchingError,
                     barrier_top, compute_rt, match_coefficients, scan,
                     side_coefficients, solve_amplitudes)

from helpers import draw_barrier_params, hyp2f1_bruteforce

# corrected-matching values at the table edges (40-digit reference run)
T_AT_0p005 = 0.0992153077497754
R_AT_0p005 = 0.9007846922502246


def test_rho_values_for_default_params():
    mc = match_coefficients(0.05, DEFAULT_PARAMS)
    assert (mc.rho1, mc.rho3) == (0.8, 0.8)
    assert mc.rho2 == 1.0 - 0.8 == pytest.approx(0.2, abs=1e-15)
    assert mc.rho4 == 1.0 - 0.8
    assert all(0.0 < r < 1.0 for r in (mc.rho1, mc.rho2, mc.rho3, mc.rho4))


def test_symmetric_barrier_collapses_right_onto_left():
    mc = match_coefficients(0.05, DEFAULT_PARAMS)
    assert mc.zeta3 == mc.zeta2
    assert mc.zeta6 == mc.zeta5
    assert mc.lambda3 == mc.lambda2
    assert mc.c3 == mc.c2
    assert mc.c6 == mc.c5


def test_zetas_against_bruteforce_series():
    # every zeta at E = 0.05 versus the 40-digit term-by-term summation
    E = 0.05
    mc = match_coefficients(E, DEFAULT_PARAMS)
    left = side_coefficients(E, DEFAULT_PARAMS, "left")
    right = side_coefficients(E, DEFAULT_PARAMS, "right")
    al, bl, gl = left.alpha, left.beta, left.gamma
    ar, br, gr = right.alpha, right.beta, right.gamma
    cases = {
        "zeta1": (al, bl, gl, mc.rho1),
        "zeta2": (al + 1 - gl, bl + 1 - gl, 2 - gl, mc.rho1),
        "zeta3": (ar + 1 - gr, br + 1 - gr, 2 - gr, mc.rho3),
        "zeta4": (al + 1, bl + 1, gl + 1, mc.rho1),
        "zeta5": (al + 2 - gl, bl + 2 - gl, 3 - gl, mc.rho1),
        "zeta6": (ar + 2 - gr, br + 2 - gr, 3 - gr, mc.rho3),
    }
    for name, (a, b, c, z) in cases.items():
        ref = hyp2f1_bruteforce(a, b, c, z)
        got = getattr(mc, name)
        assert abs(got - ref) <= 1e-13 * abs(ref), name


def test_lambda_prefactors():
    mc = match_coefficients(0.05, DEFAULT_PARAMS)
    left = side_coefficients(0.05, DEFAULT_PARAMS, "left")
    al, bl, gl = left.alpha, left.beta, left.gamma
    assert mc.lambda1 == al * bl / gl
    assert mc.lambda2 == (al + 1 - gl) * (bl + 1 - gl) / (2 - gl)


def test_corrected_mode_reference_point():
    res = compute_rt(0.005, DEFAULT_PARAMS)
    assert res.T == pytest.approx(T_AT_0p005, abs=1e-12)
    assert res.R == pytest.approx(R_AT_0p005, abs=1e-12)
    assert res.unitarity_residual <= 1e-12
    assert res.mode == "corrected"


def test_paper_mode_singular_for_symmetric_barrier():
    mc = match_coefficients(0.05, DEFAULT_PARAMS)
    with pytest.raises(SingularMatchingError):
        solve_amplitudes(mc, mode="paper")


def test_paper_mode_breaks_unitarity_on_asymmetric_barrier():
    p = BarrierParams(q=0.8, q_tilde=0.6)
    paper = compute_rt(0.5, p, mode="paper")
    corrected = compute_rt(0.5, p, mode="corrected")
    assert paper.unitarity_residual > 0.5
    assert corrected.unitarity_residual <= 1e-12


def test_asymmetric_barrier_conserves_flux_in_corrected_mode():
    rng = np.random.default_rng(31)
    for _ in range(15):
        p = draw_barrier_params(rng, symmetric=False)
        E = float(rng.uniform(0.01, 3.0))
        res = compute_rt(E, p)
        assert res.unitarity_residual <= 1e-9


def test_tau_branch_invariance():
    for branch in ("minus", ("plus", "minus"), ("minus", "plus")):
        base = compute_rt(0.05, DEFAULT_PARAMS, tau_branch="plus")
        flip = compute_rt(0.05, DEFAULT_PARAMS, tau_branch=branch)
        assert abs(base.R - flip.R) <= 1e-10
        assert abs(base.T - flip.T) <= 1e-10


def test_sqrt_branch_invariance():
    base = compute_rt(0.05, DEFAULT_PARAMS, sqrt_branch="plus")
    for branch in ("minus", ("plus", "minus")):
        flip = compute_rt(0.05, DEFAULT_PARAMS, sqrt_branch=branch)
        assert abs(base.R - flip.R) <= 1e-10
        assert abs(base.T - flip.T) <= 1e-10


def test_free_particle_transmits_fully():
    p = BarrierParams(v0=0.0)
    res = compute_rt(0.05, p)
    assert res.T == pytest.approx(1.0, abs=1e-12)
    assert res.R <= 1e-12


def test_transmission_grows_as_barrier_shrinks():
    # T -> 1 monotonically once v0 is small enough
    previous = 0.0
    for v0 in (1.25, 0.6, 0.3, 0.15, 0.05, 0.01):
        res = compute_rt(0.05, BarrierParams(v0=v0))
        assert res.T > previous
        previous = res.T
    assert previous > 0.99


def test_unitarity_over_energy_sweep():
    v_max = barrier_top(DEFAULT_PARAMS)
    for E in np.geomspace(1e-3 * v_max, 5 * v_max, 25):
        res = compute_rt(float(E), DEFAULT_PARAMS)
        assert res.unitarity_residual <= 1e-9
        assert 0.0 <= res.R <= 1.0
        assert 0.0 <= res.T <= 1.0


def test_left_right_swap_for_symmetric_barrier():
    p = BarrierParams(q=0.7, q_tilde=0.7)
    swapped = BarrierParams(q=0.7, q_tilde=0.7)  # swap is the identity here
    a = compute_rt(0.3, p)
    b = compute_rt(0.3, swapped)
    assert a.R == b.R and a.T == b.T


def test_scan_matches_pointwise_solve():
    energies = [0.01, 0.05, 0.25]
    entries = scan(energies, DEFAULT_PARAMS)
    assert [e.E for e in entries] == energies
    for entry in entries:
        assert entry.error is None
        direct = compute_rt(entry.E, DEFAULT_PARAMS)
        assert entry.result.T == direct.T
        assert entry.result.R == direct.R


def test_scan_single_point():
    entries = scan([0.05], DEFAULT_PARAMS)
    assert len(entries) == 1
    assert entries[0].result.T == compute_rt(0.05, DEFAULT_PARAMS).T


def test_scan_records_errors_inline():
    entries = scan([0.01, 0.05], DEFAULT_PARAMS, mode="paper")
    assert all(e.result is None for e in entries)
    assert all("SingularMatching" in e.error for e in entries)


@pytest.mark.parametrize("grid", [[0.05, 0.05], [0.1, 0.05], [0.0, 0.1], [-1.0, 0.1]])
def test_scan_rejects_bad_grids(grid):
    with pytest.raises(ValueError):
        scan(grid, DEFAULT_PARAMS)


def test_solve_rejects_unknown_mode():
    mc = match_coefficients(0.05, DEFAULT_PARAMS)
    with pytest.raises(ValueError):
        solve_amplitudes(mc, mode="literal")


def test_amplitudes_reconstruct_rt():
    res = compute_rt(0.07, DEFAULT_PARAMS)
    assert abs(res.r_amp) ** 2 == pytest.approx(res.R, rel=1e-14)
    assert abs(res.t_amp) ** 2 == pytest.approx(res.T, rel=1e-14)

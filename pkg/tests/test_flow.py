"""Explicit solver, L-factor transport, and their closed-form cross-checks."""
from __future__ import annotations

import math

import numpy as np
import pytest

from vortexflow import (
    FlowState,
    NonpositiveW,
    PdeConfig,
    Profile,
    StepTooLarge,
    UnstableStep,
    evolve,
    family_from_params,
    l_factor,
    l_factor_ode,
    local_flow_check,
    pde_step,
    tau_sigma_closed,
)
from vortexflow.catalog import lookup


def _family(key):
    entry = lookup(key)
    return family_from_params(entry.params, hat_eps=entry.hat_eps), entry


def _state(key: str, t: float, lo: float, hi: float, ds: float) -> FlowState:
    fm, entry = _family(key)
    n = int(round((hi - lo) / ds)) + 1
    s = lo + ds * np.arange(n)
    st = tau_sigma_closed(entry.params, t)
    return FlowState(t, Profile(lo, ds, 1.0 / np.asarray(fm.w(t, s)), t=t), st.tau, st.sigma)


def test_pde_config_validation():
    with pytest.raises(ValueError):
        PdeConfig(ds=-1e-2, dt=1e-5)
    with pytest.raises(ValueError):
        PdeConfig(ds=1e-2, dt=0.0)
    with pytest.raises(ValueError):
        PdeConfig(ds=1e-2, dt=1e-5, boundary="soap-bubble")
    with pytest.raises(ValueError):
        PdeConfig(ds=1e-2, dt=1e-5, stability_factor=0.6)


def test_pde_step_exact_on_linear_profile():
    # w = 2s - 4t has w_ss = 0 and w_s = 2, so w_t = -4 and one Euler step
    # reproduces the closed form up to rounding
    fm, entry = _family("A-plus")
    state = _state("A-plus", 0.0, 0.5, 3.0, 2e-2)
    dt = 1e-5
    cfg = PdeConfig(ds=2e-2, dt=dt)
    ends = (float(fm.w(dt, 0.5)), float(fm.w(dt, 3.0)))
    new = pde_step(state, cfg, entry.params, ends)
    assert new.t == pytest.approx(dt, rel=1e-12)
    s = new.profile.s_grid
    np.testing.assert_allclose(new.profile.w, fm.w(dt, s), atol=5e-15)
    # tag was refreshed from the closed form
    st = tau_sigma_closed(entry.params, dt)
    assert new.tau == pytest.approx(st.tau, rel=1e-14)


def test_pde_step_freezes_ends_without_dirichlet_data():
    state = _state("E", -1.0, -2.0, 2.0, 1e-2)
    new = pde_step(state, PdeConfig(ds=1e-2, dt=1e-5))
    assert new.profile.w[0] == state.profile.w[0]
    assert new.profile.w[-1] == state.profile.w[-1]
    assert new.tau == state.tau  # no params, tag carried over


def test_pde_step_grid_mismatch():
    state = _state("E", -1.0, -2.0, 2.0, 1e-2)
    with pytest.raises(ValueError):
        pde_step(state, PdeConfig(ds=2e-2, dt=1e-5))


def test_pde_step_stability_guard():
    state = _state("E", -1.0, -2.0, 2.0, 1e-2)
    with pytest.raises(UnstableStep) as exc:
        pde_step(state, PdeConfig(ds=1e-2, dt=1e-3))
    assert "exceeds" in str(exc.value)


def test_pde_step_positivity_guard():
    state = _state("E", -1.0, -2.0, 2.0, 1e-2)
    with pytest.raises(NonpositiveW):
        pde_step(state, PdeConfig(ds=1e-2, dt=1e-5), end_values=(-1.0, 1.0))


def test_evolve_steady_family_is_exact_to_rounding():
    fm, entry = _family("A-plus")
    run = entry.pde
    cfg = PdeConfig(ds=run.ds, dt=run.dt)
    state, err = evolve(fm, run.t0, run.t1, cfg, s_window=(run.s_lo, run.s_hi))
    assert state.t == pytest.approx(run.t1, rel=1e-12)
    assert err < run.tol


def test_evolve_sausage_tracks_closed_form():
    fm, entry = _family("E")
    run = entry.pde
    cfg = PdeConfig(ds=run.ds, dt=run.dt)
    state, err = evolve(fm, run.t0, run.t1, cfg, s_window=(run.s_lo, run.s_hi))
    assert err < run.tol


def test_evolve_default_window_stays_stable():
    # without an explicit window the solver trims to where w is moderate,
    # so the coarse ds = 1e-2, dt = 1e-5 pairing satisfies the CFL guard
    fm, _ = _family("E")
    state, err = evolve(fm, -1.0, -0.98, PdeConfig(ds=1e-2, dt=1e-5))
    assert err < 1e-4
    assert float(np.max(state.profile.w)) < 3.2


def test_evolve_rejects_unstable_pairing():
    fm, _ = _family("E")
    with pytest.raises(UnstableStep):
        evolve(fm, -1.0, -0.98, PdeConfig(ds=1e-2, dt=1e-3))


def test_evolve_argument_validation():
    fm, _ = _family("E")
    with pytest.raises(ValueError):
        evolve(fm, -0.9, -1.0, PdeConfig(ds=1e-2, dt=1e-5))
    with pytest.raises(ValueError):
        evolve(fm, -1.0, -0.9, PdeConfig(ds=1e-2, dt=1e-5), s_window=(0.0, 0.02))


# one entry per closed-form branch of the L equation
_L_BRANCHES = ["E", "B-cigar", "D-immortal", "A-plus"]


@pytest.mark.parametrize("key", _L_BRANCHES)
@pytest.mark.parametrize("u_p", [0.0, 0.3])
def test_l_factor_matches_rk4(key, u_p):
    entry = lookup(key)
    closed = l_factor(entry.params, u_p, entry.l_t1)
    ode = l_factor_ode(entry.params, u_p, entry.l_t1, dt=1e-4)
    np.testing.assert_allclose(closed, ode, rtol=1e-10)


def test_l_factor_at_up_zero_is_sigma_ratio():
    p = lookup("E").params
    lf = l_factor(p, 0.0, -0.7)
    sig0 = tau_sigma_closed(p, p.t0).sigma
    sig1 = tau_sigma_closed(p, -0.7).sigma
    np.testing.assert_allclose(lf, math.sqrt(sig1 / sig0), rtol=1e-12)


def test_l_factor_input_guards():
    p = lookup("E").params
    with pytest.raises(ValueError):
        l_factor(p, -0.1, -0.7)
    with pytest.raises(ValueError):
        l_factor_ode(p, 0.0, -0.7, dt=-1e-4)
    with pytest.raises(StepTooLarge):
        l_factor_ode(p, 0.0, -0.5, dt=0.5)


def test_local_flow_check_on_sausage():
    fm, _ = _family("E")
    res = local_flow_check(fm, -1.0, -0.7, (-2.8, 2.8, 1e-3))
    assert res.t0 == -1.0 and res.t1 == -0.7
    assert res.sup_deviation < 1e-10
    assert res.vortex_residual < 1e-4

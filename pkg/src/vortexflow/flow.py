"""Time evolution of the profiles.

Two independent routes from a state at t0 to a state at t1:

  * an explicit method-of-lines solver for w_t = w*w_ss - w_s**2 (the
    logarithmic diffusion form of the flow), forward Euler in time with
    central second-order differences in s, guarded by the usual explicit
    stability bound dt <= c*ds**2/max(w);

  * the pointwise L-factor construction u(t, s) = u(t0, s)/L(t, u(t0, s)),
    where L solves L_t = tau(t)*L - 4*eps*u_p with L(t0) = 1, in closed
    form (four branches by rho = 0? sigma0 = 0? tau0 = 0?) and by RK4.

Both are compared against the closed-form catalog by the callers here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NonpositiveW,
    OutsideTimeDomain,
    StepTooLarge,
    UnstableStep,
)
from .families import FamilyMetric
from .geometry import Profile, vortex_residual
from .params import MAX_TAU_DT, RegimeParameters, rebase, tau_sigma_closed

_BOUNDARIES = ("dirichlet-from-closed-form", "frozen-ends")


@dataclass(frozen=True)
class FlowState:
    """One snapshot of the evolving metric: profile plus its (tau, sigma) tag."""

    t: float
    profile: Profile
    tau: float
    sigma: float


@dataclass(frozen=True)
class PdeConfig:
    """Grid and stepping controls for the explicit solver."""

    ds: float
    dt: float
    boundary: str = "dirichlet-from-closed-form"
    stability_factor: float = 0.5

    def __post_init__(self) -> None:
        if self.ds <= 0.0 or self.dt <= 0.0:
            raise ValueError(f"ds and dt must be positive, got ds={self.ds!r} dt={self.dt!r}")
        if self.boundary not in _BOUNDARIES:
            raise ValueError(f"boundary must be one of {_BOUNDARIES}, got {self.boundary!r}")
        if not 0.0 < self.stability_factor <= 0.5:
            raise ValueError(f"stability_factor must be in (0, 0.5], got {self.stability_factor!r}")


def pde_step(
    state: FlowState,
    cfg: PdeConfig,
    params: RegimeParameters | None = None,
    end_values: tuple[float, float] | None = None,
) -> FlowState:
    """One forward-Euler step of w_t = w*w_ss - w_s**2.

    end_values are the w boundary values at the new time (Dirichlet data);
    without them the end nodes are frozen.  When params is given the new
    state is tagged with the closed-form (tau, sigma) at t + dt, otherwise
    the old tag is carried over (the caller owns the refresh).
    """
    p = state.profile
    if abs(p.ds - cfg.ds) > 1e-12 * max(1.0, abs(cfg.ds)):
        raise ValueError(f"profile ds {p.ds!r} does not match config ds {cfg.ds!r}")
    w = p.w
    wmax = float(np.max(w))
    if cfg.dt > cfg.stability_factor * cfg.ds * cfg.ds / wmax:
        raise UnstableStep(
            f"dt={cfg.dt!r} exceeds {cfg.stability_factor}*ds**2/max(w) = "
            f"{cfg.stability_factor * cfg.ds * cfg.ds / wmax:.3e}"
        )
    ds2 = cfg.ds * cfg.ds
    w_new = w.copy()
    wss = (w[2:] - 2.0 * w[1:-1] + w[:-2]) / ds2
    ws = (w[2:] - w[:-2]) / (2.0 * cfg.ds)
    w_new[1:-1] = w[1:-1] + cfg.dt * (w[1:-1] * wss - ws * ws)
    if end_values is not None:
        w_new[0], w_new[-1] = end_values
    if np.any(w_new <= 0.0):
        raise NonpositiveW(f"profile lost positivity at t={state.t + cfg.dt!r}")
    t_new = state.t + cfg.dt
    tau, sigma = state.tau, state.sigma
    if params is not None:
        st = tau_sigma_closed(params, t_new)
        tau, sigma = st.tau, st.sigma
    return FlowState(t_new, Profile(p.s0, p.ds, 1.0 / w_new, t_new, p.period_r), tau, sigma)


_W_CAP = 3.0  # default-window w ceiling; keeps dt <= sf*ds**2/max(w) attainable


def _default_window(family: FamilyMetric, t0: float, t1: float) -> tuple[float, float]:
    # intersect the s-domains at both endpoint times, cap unbounded ends,
    # inset blow-up edges by 5% of the resulting span, then trim to the
    # region where w stays under _W_CAP at both times (w can grow without
    # bound toward cone/cusp ends, which would force an absurd dt)
    d0, d1 = family.domain(t0), family.domain(t1)
    lo = max(d0.lower.location, d1.lower.location)
    hi = min(d0.upper.location, d1.upper.location)
    lo_cap = max(lo, -8.0) if math.isinf(lo) else lo
    hi_cap = min(hi, 8.0) if math.isinf(hi) else hi
    span = hi_cap - lo_cap
    if not math.isinf(lo):
        lo_cap += 0.05 * span
    if not math.isinf(hi):
        hi_cap -= 0.05 * span
    s = np.linspace(lo_cap, hi_cap, 2001)
    w_max = np.maximum(
        np.asarray(family.w(t0, s), dtype=float), np.asarray(family.w(t1, s), dtype=float)
    )
    inside = np.flatnonzero(w_max <= _W_CAP)
    if inside.size >= 2:
        return float(s[inside[0]]), float(s[inside[-1]])
    return lo_cap, hi_cap


def evolve(
    family: FamilyMetric,
    t0: float,
    t1: float,
    cfg: PdeConfig,
    s_window: tuple[float, float] | None = None,
) -> tuple[FlowState, float]:
    """March the solver from the closed form at t0 to t1.

    Returns the final state and the maximum over all steps of the sup-norm
    deviation of the numerical w from the closed-form w at the same time.
    Boundary data follow cfg.boundary; uniform steps of size <= cfg.dt land
    on t1 exactly.
    """
    if t1 <= t0:
        raise ValueError(f"need t1 > t0, got t0={t0!r} t1={t1!r}")
    lo, hi = s_window if s_window is not None else _default_window(family, t0, t1)
    n_nodes = int(round((hi - lo) / cfg.ds)) + 1
    if n_nodes < 5:
        raise ValueError(f"window [{lo!r}, {hi!r}] too small for ds={cfg.ds!r}")
    s = lo + cfg.ds * np.arange(n_nodes)
    dirichlet = cfg.boundary == "dirichlet-from-closed-form"

    st0 = family.state(t0)
    state = FlowState(t0, Profile(lo, cfg.ds, 1.0 / family.w(t0, s), t0), st0.tau, st0.sigma)
    n_steps = max(1, math.ceil((t1 - t0) / cfg.dt - 1e-12))
    h = (t1 - t0) / n_steps
    step_cfg = PdeConfig(cfg.ds, h, cfg.boundary, cfg.stability_factor)
    max_error = 0.0
    for k in range(n_steps):
        t_next = t0 + (k + 1) * h
        ends = None
        if dirichlet:
            ends = (float(family.w(t_next, lo)), float(family.w(t_next, s[-1])))
        state = pde_step(state, step_cfg, family.params, ends)
        deviation = float(np.max(np.abs(state.profile.w - family.w(t_next, s))))
        max_error = max(max_error, deviation)
    return state, max_error


def l_factor(params: RegimeParameters, u_p: float, t: float) -> float:
    """Closed-form L(t, p) solving L_t = tau*L - 4*eps*u_p, L(t0) = 1.

    Branches by (rho = 0?, sigma0 = 0?, tau0 = 0?); u_p is the initial
    conformal factor at the tracked point.
    """
    if u_p < 0.0:
        raise ValueError(f"u_p must be nonnegative, got {u_p!r}")
    eps, tau0, sigma0, rho, t0 = params.epsilon, params.tau0, params.sigma0, params.rho, params.t0
    if rho != 0.0:
        a = (tau0 / rho) * u_p
        if sigma0 != 0.0:
            st = tau_sigma_closed(params, t)
            return (1.0 - a) * math.sqrt(st.sigma / sigma0) + (st.tau / rho) * u_p
        return (1.0 - a) * math.exp(tau0 * (t - t0)) + a
    if tau0 != 0.0:
        v = tau_sigma_closed(params, t).tau / tau0
        return v - (2.0 * eps * u_p / tau0) * (v - 1.0 / v)
    return 1.0 + 4.0 * eps * (t0 - t) * u_p


def l_factor_ode(params: RegimeParameters, u_p: float, t1: float, dt: float = 1e-4) -> float:
    """RK4 for the L initial value problem; independent oracle for l_factor."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if u_p < 0.0:
        raise ValueError(f"u_p must be nonnegative, got {u_p!r}")
    four_eu = 4.0 * params.epsilon * u_p

    def rhs(t: float, val: float) -> float:
        tau = tau_sigma_closed(params, t).tau
        if abs(tau) * dt > MAX_TAU_DT:
            raise StepTooLarge(f"|tau|*dt = {abs(tau) * dt:.3e} exceeds {MAX_TAU_DT}")
        return tau * val - four_eu

    t, val = params.t0, 1.0
    total = t1 - t
    if total == 0.0:
        return 1.0
    n = max(1, math.ceil(abs(total) / dt - 1e-12))
    h = total / n
    for k in range(n):
        k1 = rhs(t, val)
        k2 = rhs(t + 0.5 * h, val + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, val + 0.5 * h * k2)
        k4 = rhs(t + h, val + h * k3)
        val += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = params.t0 + (k + 1) * h
    return val


@dataclass(frozen=True)
class LocalFlowResult:
    """Outcome of transporting a profile by the pointwise L-factor."""

    t0: float
    t1: float
    sup_deviation: float  # max |u_transported - u_closed(t1)| over the grid
    vortex_residual: float  # FD residual of the transported profile with tau(t1)


def local_flow_check(
    family: FamilyMetric,
    t0: float,
    t1: float,
    grid: tuple[float, float, float],
) -> LocalFlowResult:
    """Transport u(t0, .) to t1 through L and compare with the closed form.

    grid is (s_lo, s_hi, ds).  The L-factor is evaluated with the family
    rebased to reference time t0, so its branch data match the transport.
    """
    s_lo, s_hi, ds = grid
    n = int(round((s_hi - s_lo) / ds)) + 1
    s = s_lo + ds * np.arange(n)
    based = rebase(family.params, t0)
    u0 = np.asarray(family.u(t0, s), dtype=float)
    lvals = np.array([l_factor(based, float(up), t1) for up in u0])
    if np.any(lvals <= 0.0):
        raise NonpositiveW(f"L-factor lost positivity transporting t0={t0!r} to t1={t1!r}")
    u1 = u0 / lvals
    deviation = float(np.max(np.abs(u1 - np.asarray(family.u(t1, s), dtype=float))))
    tau1 = family.state(t1).tau
    residual = vortex_residual(Profile(s_lo, ds, u1, t1), family.params.epsilon, tau1)
    return LocalFlowResult(t0, t1, deviation, residual)

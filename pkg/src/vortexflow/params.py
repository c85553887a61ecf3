"""Scalar parameter algebra of a rotationally symmetric vortex Ricci flow.

The state of one flow is the tuple (epsilon, tau0, sigma0, rho, t0).  tau and
sigma evolve by the Riccati system dtau/dt = tau**2 - 4*eps*rho,
dsigma/dt = 2*tau*sigma; rho = (tau**2 - sigma)/(4*eps) is conserved.  This
module holds the closed-form solutions of that system, an independent RK4
oracle for them, and the classifier that names the metric family (regimes
A through J) a parameter tuple belongs to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InconsistentParameters, InvalidRegime, OutsideTimeDomain, StepTooLarge

# Closed-form evaluators reject times this close to a pole of tau.
POLE_TOLERANCE = 1e-12
# |tau| beyond this counts as blow-up inside the ODE integrators.
TAU_BLOWUP = 1e12
# Default stability bound for the RK4 integrators: require |tau|*dt <= this.
MAX_TAU_DT = 0.25

_LIFESPANS = ("ancient", "immortal", "eternal", "finite-time")


@dataclass(frozen=True)
class RegimeParameters:
    """Defining constants of one flow: (epsilon, tau0, sigma0, rho, t0).

    Invariants enforced at construction:
      * epsilon is +1 or -1,
      * 4*epsilon*rho == tau0**2 - sigma0 to a couple of ulp,
      * sigma0 < 0 forces epsilon == +1 and rho > 0.

    Use from_tau_sigma / from_tau_rho to build tuples whose consistency
    constraint holds exactly in floating point.
    """

    epsilon: int
    tau0: float
    sigma0: float
    rho: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise InconsistentParameters(f"epsilon must be +1 or -1, got {self.epsilon!r}")
        lhs = 4.0 * self.epsilon * self.rho
        rhs = self.tau0 * self.tau0 - self.sigma0
        scale = max(abs(lhs), abs(rhs), self.tau0 * self.tau0, abs(self.sigma0))
        if abs(lhs - rhs) > 2.0 * math.ulp(scale):
            raise InconsistentParameters(
                f"4*eps*rho = {lhs!r} but tau0**2 - sigma0 = {rhs!r}; "
                "construct via from_tau_sigma or from_tau_rho"
            )
        if self.sigma0 < 0.0 and (self.epsilon != 1 or self.rho <= 0.0):
            raise InconsistentParameters(
                "sigma0 < 0 requires epsilon = +1 and rho > 0 "
                f"(got epsilon={self.epsilon}, rho={self.rho!r})"
            )

    @staticmethod
    def from_tau_sigma(epsilon: int, tau0: float, sigma0: float, t0: float = 0.0) -> "RegimeParameters":
        """Build with rho derived from (tau0, sigma0); consistency is exact."""
        return RegimeParameters(epsilon, tau0, sigma0, derive_rho(epsilon, tau0, sigma0), t0)

    @staticmethod
    def from_tau_rho(epsilon: int, tau0: float, rho: float, t0: float = 0.0) -> "RegimeParameters":
        """Build with sigma0 derived from (tau0, rho); consistency is exact."""
        return RegimeParameters(epsilon, tau0, tau0 * tau0 - 4.0 * epsilon * rho, rho, t0)


@dataclass(frozen=True)
class ParameterState:
    """tau and sigma at one time t."""

    t: float
    tau: float
    sigma: float


@dataclass(frozen=True)
class FamilyDescriptor:
    """Which explicit metric family a parameter tuple selects.

    family_id is one of "A".."J"; hat_eps / tau_sign carry the branch data
    where the regime splits; time_interval is the open maximal interval of the
    flow; lifespan is one of "ancient", "immortal", "eternal", "finite-time".
    """

    family_id: str
    hat_eps: int | None
    tau_sign: int | None
    surface_note: str
    time_interval: tuple[float, float]
    lifespan: str

    def __post_init__(self) -> None:
        assert self.lifespan in _LIFESPANS, self.lifespan


@dataclass(frozen=True)
class Normalization:
    """Pole data of the closed tau/sigma forms for one parameter tuple.

    kind is "steady" (sigma0 = 0), "rho0", "coth" (eps*rho > 0, sigma0 > 0),
    "cot" (eps*rho < 0) or "tanh" (sigma0 < 0).  rate is sqrt(|eps*rho|),
    t_pole the center/pole time t_c, and that0 = t0 - t_pole.  Steady flows
    have no pole; their t_pole/that0 are NaN.
    """

    kind: str
    rate: float
    t_pole: float
    that0: float


def derive_rho(epsilon: int, tau0: float, sigma0: float) -> float:
    """Conserved constant rho = (tau0**2 - sigma0)/(4*epsilon)."""
    return (tau0 * tau0 - sigma0) / (4.0 * epsilon)


def normalize(params: RegimeParameters) -> Normalization:
    """Locate the pole of the closed tau/sigma forms through (tau0, sigma0, t0)."""
    eps, tau0, sigma0, rho = params.epsilon, params.tau0, params.sigma0, params.rho
    if sigma0 == 0.0:
        return Normalization("steady", 0.0, math.nan, math.nan)
    if rho == 0.0:
        that0 = -1.0 / tau0  # tau(that) = -1/that
        return Normalization("rho0", 0.0, params.t0 - that0, that0)
    if sigma0 < 0.0:
        m = math.sqrt(rho)  # eps = +1, rho > 0 by the constructor invariant
        that0 = math.atanh(-tau0 / (2.0 * m)) / (2.0 * m)
        return Normalization("tanh", m, params.t0 - that0, that0)
    er = eps * rho
    if er > 0.0:
        m = math.sqrt(er)
        # sigma0 > 0 gives |tau0| > 2m, so the argument is inside (-1, 1)
        that0 = math.atanh(-2.0 * m / tau0) / (2.0 * m)
        return Normalization("coth", m, params.t0 - that0, that0)
    n = math.sqrt(-er)
    theta0 = math.atan2(2.0 * n, -tau0)  # arccot(-tau0/(2n)) in (0, pi)
    if eps == -1:
        theta0 -= math.pi  # this sign of eps lives on the (-pi, 0) branch
    that0 = theta0 / (2.0 * n)
    return Normalization("cot", n, params.t0 - that0, that0)


def _require_component(that: float, that0: float, label: str) -> None:
    # one pole at that = 0; t must stay on the reference side of it
    if abs(that) <= POLE_TOLERANCE or (that > 0.0) != (that0 > 0.0):
        raise OutsideTimeDomain(
            f"t is outside the {label} component through t0 (normalized offset {that!r})"
        )


def _require_cot_component(that: float, that0: float, n: float) -> None:
    half = math.pi / (2.0 * n)  # pole spacing of cot(2n*that)
    k = math.floor(that / half)
    if k != math.floor(that0 / half):
        raise OutsideTimeDomain(f"t crossed a pole of the trigonometric form (offset {that!r})")
    if that - k * half <= POLE_TOLERANCE or (k + 1) * half - that <= POLE_TOLERANCE:
        raise OutsideTimeDomain(f"t within {POLE_TOLERANCE} of a pole (offset {that!r})")


def tau_sigma_closed(params: RegimeParameters, t: float) -> ParameterState:
    """Closed-form (tau(t), sigma(t)) on the component of the pole set holding t0.

    Raises OutsideTimeDomain when t falls within POLE_TOLERANCE of a pole or on
    the wrong side of one.
    """
    nz = normalize(params)
    if nz.kind == "steady":
        return ParameterState(t, params.tau0, 0.0)
    that = t - nz.t_pole
    if nz.kind == "rho0":
        _require_component(that, nz.that0, "rho = 0")
        return ParameterState(t, -1.0 / that, 1.0 / (that * that))
    m = nz.rate
    if nz.kind == "tanh":
        th = 2.0 * m * that
        if abs(th) > 350.0:  # asymptotic branch; cosh would overflow
            e = math.exp(-2.0 * abs(th))
            return ParameterState(t, -2.0 * m * math.copysign(1.0 - 2.0 * e, th), -16.0 * m * m * e)
        sech = 1.0 / math.cosh(th)
        return ParameterState(t, -2.0 * m * math.tanh(th), -4.0 * m * m * sech * sech)
    if nz.kind == "coth":
        _require_component(that, nz.that0, "hyperbolic")
        th = 2.0 * m * that
        if abs(th) > 350.0:
            e = math.exp(-2.0 * abs(th))
            return ParameterState(t, -2.0 * m * math.copysign(1.0 + 2.0 * e, th), 16.0 * m * m * e)
        sh = math.sinh(th)
        return ParameterState(t, -2.0 * m / math.tanh(th), 4.0 * m * m / (sh * sh))
    _require_cot_component(that, nz.that0, m)
    th = 2.0 * m * that
    sn = math.sin(th)
    return ParameterState(t, -2.0 * m / math.tan(th), 4.0 * m * m / (sn * sn))


def tau_sigma_ode(
    params: RegimeParameters,
    t1: float,
    dt: float = 1e-4,
    max_tau_dt: float = MAX_TAU_DT,
    tau_cap: float = TAU_BLOWUP,
) -> ParameterState:
    """RK4 integration of the Riccati system from (tau0, sigma0) at t0 to t1.

    Independent oracle for tau_sigma_closed.  The right-hand side uses
    tau**2 - 4*eps*rho (not sigma), so rho-conservation of the result is a
    real check and sigma0 = 0 is preserved exactly (every sigma stage
    derivative is 2*tau*0).
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    four_er = 4.0 * params.epsilon * params.rho
    t, tau, sigma = params.t0, params.tau0, params.sigma0
    total = t1 - t
    if total == 0.0:
        return ParameterState(t1, tau, sigma)
    n = max(1, math.ceil(abs(total) / dt - 1e-12))
    h = total / n  # uniform steps, |h| <= dt, landing on t1 exactly
    for _ in range(n):
        if abs(tau) > tau_cap:
            raise OutsideTimeDomain(f"tau blew up (|tau| = {abs(tau):.3e}) at t = {t!r}")
        if abs(tau) * abs(h) > max_tau_dt:
            raise StepTooLarge(f"|tau|*dt = {abs(tau) * abs(h):.3e} exceeds {max_tau_dt}")
        k1t = tau * tau - four_er
        k1s = 2.0 * tau * sigma
        a, b = tau + 0.5 * h * k1t, sigma + 0.5 * h * k1s
        k2t = a * a - four_er
        k2s = 2.0 * a * b
        a, b = tau + 0.5 * h * k2t, sigma + 0.5 * h * k2s
        k3t = a * a - four_er
        k3s = 2.0 * a * b
        a, b = tau + h * k3t, sigma + h * k3s
        k4t = a * a - four_er
        k4s = 2.0 * a * b
        tau += (h / 6.0) * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
        sigma += (h / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        t += h
    if abs(tau) > tau_cap:
        raise OutsideTimeDomain(f"tau blew up (|tau| = {abs(tau):.3e}) at t = {t!r}")
    return ParameterState(t1, tau, sigma)


def rebase(params: RegimeParameters, t: float) -> RegimeParameters:
    """Same flow with the reference time moved to t (tau0/sigma0 re-derived)."""
    state = tau_sigma_closed(params, t)
    return RegimeParameters.from_tau_rho(params.epsilon, state.tau, params.rho, t)


def _sign(x: float) -> int:
    return 1 if x > 0.0 else -1


def classify_regime(params: RegimeParameters, hat_eps: int | None = None) -> FamilyDescriptor:
    """Name the metric family of a parameter tuple.

    hat_eps selects the profile branch where one exists (regimes A, B and the
    E/G split); it defaults to the branch with a nonempty profile.  Raises
    InvalidRegime for tuples that name no cataloged family.
    """
    if hat_eps not in (None, 1, -1):
        raise InvalidRegime(f"hat_eps must be +1, -1 or None, got {hat_eps!r}")
    eps, tau0, sigma0, rho = params.epsilon, params.tau0, params.sigma0, params.rho
    interval = maximal_interval_from_params(params)

    if sigma0 < 0.0:
        # constructor guarantees eps = +1, rho > 0 here
        note = (
            "plane-like disk; blow-up edge on the left, cone of angle pi*sqrt(rho) "
            "at infinity (smooth when rho = 4)"
        )
        return FamilyDescriptor("J", None, None, note, interval, "eternal")

    if sigma0 == 0.0:
        if eps == -1:
            raise InvalidRegime("sigma0 = 0 with epsilon = -1 is the flat parallel case; no cataloged family")
        if rho == 0.0:
            he = 1 if hat_eps is None else hat_eps
            side = "+inf" if he == 1 else "-inf"
            note = f"plane domain; blow-up edge at w = 0, complete unbounded end as s -> {side}"
            return FamilyDescriptor("A", he, None, note, interval, "eternal")
        # rho > 0, so tau0 = +-2*sqrt(rho) and is nonzero
        if tau0 > 0.0:
            he = 1 if hat_eps is None else hat_eps
            if he == 1:
                note = (
                    "plane; cone of angle pi*tau/2 at the tip (smooth cigar when tau = 4), "
                    "cusp end at s -> +inf"
                )
            else:
                note = "half-infinite cylinder; blow-up edge at s = 2t, cusp end at s -> +inf"
        else:
            if hat_eps == 1:
                raise InvalidRegime("hat_eps = +1 with tau0 < 0 gives no positive profile in regime B")
            he = -1
            note = (
                "disk; blow-up edge at s = 2t, cone of angle pi*|tau|/2 at infinity "
                "(smooth exploding soliton when tau = -4)"
            )
        return FamilyDescriptor("B", he, _sign(tau0), note, interval, "eternal")

    # sigma0 > 0 from here on
    if rho == 0.0:
        if eps == -1:
            if tau0 > 0.0:
                raise InvalidRegime("epsilon = -1, rho = 0, tau0 > 0 forces an identically zero symmetry field")
            return FamilyDescriptor(
                "C", None, -1, "punctured plane, complete at both ends", interval, "immortal"
            )
        if tau0 > 0.0:
            return FamilyDescriptor(
                "D", None, 1, "annulus, metric blow-up at both edges", interval, "ancient"
            )
        return FamilyDescriptor(
            "D", None, -1,
            "half-infinite cylinder pair; canonical component has a blow-up edge and a complete end",
            interval, "immortal",
        )
    er = eps * rho
    if er < 0.0:
        if eps == -1:
            # hat_eps = -1 is the documented time reflection of +1; canonicalized
            note = "sphere with two cone points of angle pi*sqrt(rho) (smooth when rho = 4)"
            return FamilyDescriptor("F", 1, None, note, interval, "finite-time")
        return FamilyDescriptor(
            "H", None, None, "bounded cylinder, metric blow-up at both edges", interval, "finite-time"
        )
    if eps == 1:
        he = hat_eps if hat_eps is not None else (1 if tau0 > 0.0 else -1)
        if he == 1:
            if tau0 <= 0.0:
                raise InvalidRegime("the hat_eps = +1 branch needs tau0 > 0 (empty profile otherwise)")
            note = "sphere with two cone points of angle pi*sqrt(rho) (smooth sausage when rho = 4)"
            return FamilyDescriptor("E", 1, 1, note, interval, "ancient")
        if tau0 > 0.0:
            return FamilyDescriptor(
                "G", -1, 1, "annulus, metric blow-up at both edges", interval, "ancient"
            )
        return FamilyDescriptor(
            "G", -1, -1,
            "funnel-disk pair; canonical component has a blow-up edge and a cone of angle "
            "pi*sqrt(rho) at infinity",
            interval, "immortal",
        )
    if tau0 >= 0.0:
        raise InvalidRegime("the torus flow needs tau0 < 0")
    return FamilyDescriptor(
        "I", None, -1, "torus, s-periodic with period 2*pi/sqrt(|rho|)", interval, "immortal"
    )


def maximal_interval_from_params(params: RegimeParameters) -> tuple[float, float]:
    """Open maximal t-interval of the closed forms through (t0, tau0, sigma0)."""
    nz = normalize(params)
    inf = math.inf
    if nz.kind in ("steady", "tanh"):
        return (-inf, inf)
    if nz.kind == "cot":
        half = math.pi / (2.0 * nz.rate)
        k = math.floor(nz.that0 / half)
        return (nz.t_pole + k * half, nz.t_pole + (k + 1) * half)
    # one pole at t_pole; the component containing t0
    if nz.that0 < 0.0:
        return (-inf, nz.t_pole)
    return (nz.t_pole, inf)


def maximal_time_interval(desc: FamilyDescriptor, params: RegimeParameters) -> tuple[float, float]:
    """Maximal interval for a classified family (same as the descriptor's)."""
    interval = maximal_interval_from_params(params)
    assert interval == desc.time_interval, (interval, desc.time_interval)
    return interval

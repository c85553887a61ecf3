"""Closed-form catalog of the explicit rotationally symmetric flow metrics.

Every family is stored through its inverse conformal factor w(t, s) = 1/u,
so the metric is h = u(s)(dr**2 + ds**2) with Killing field d/dr.  The
families split by (sign sigma0, sign rho, epsilon) into regimes:

  A  sigma0 = 0, tau0 = rho = 0         w affine in s (two branches hat_eps)
  B  sigma0 = 0, rho > 0                steady solitons (cigar and relatives)
  C  sigma0 > 0, rho = 0, eps = -1      complete immortal punctured plane
  D  sigma0 > 0, rho = 0, eps = +1      ancient annulus / immortal cylinders
  E  sigma0 > 0, eps = +1, hat_eps = +1 two-cone sphere flow (ancient)
  F  sigma0 > 0, rho > 0, eps = -1      two-cone sphere on a finite window
  G  sigma0 > 0, eps = +1, hat_eps = -1 annulus (tau > 0) / funnel (tau < 0)
  H  sigma0 > 0, rho < 0, eps = +1      bounded cylinder, finite window
  I  sigma0 > 0, rho < 0, eps = -1      torus flow, s-periodic
  J  sigma0 < 0 (eps = +1, rho > 0)     eternal flow with one conical end

Each evaluator returns the displayed per-regime expression; the generic
rho**-1 * (tau + hat_eps*sqrt(sigma)*cosh(sqrt(rho)*s)) form is not used
directly because its principal-root reading picks the wrong sign on one
branch of regime G.  All w satisfy w_ss = rho*w - tau and
w_s**2 - 4*eps + 2*tau*w - rho*w**2 = 0 identically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRegime, NoDocumentedLimit, OutsideDomain
from .params import (
    FamilyDescriptor,
    Normalization,
    ParameterState,
    RegimeParameters,
    classify_regime,
    derive_rho,
    normalize,
    tau_sigma_closed,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DomainEnd:
    """One end of the s-interval: its coordinate and geometric character."""

    location: float  # s value; +-inf for unbounded ends
    kind: str  # "blowup" | "complete" | "cone" | "cusp" | "periodic"


@dataclass(frozen=True)
class SDomain:
    """Open s-interval where w > 0, with end annotations."""

    lower: DomainEnd
    upper: DomainEnd
    period: float | None = None  # s-period for the torus regime, else None


@dataclass(frozen=True)
class ConicalData:
    """Cone angle, cusp or smooth-point report for one end of the surface."""

    location: str  # "s->-inf" | "s->+inf" | "boundary"
    kind: str  # "cone" | "cusp" | "smooth"
    angle: float | None  # radians for cone/smooth entries, None for a cusp


def _cone_entry(location: str, angle: float) -> ConicalData:
    if math.isclose(angle, TWO_PI, rel_tol=1e-12):
        return ConicalData(location, "smooth", TWO_PI)
    return ConicalData(location, "cone", angle)


@dataclass(frozen=True)
class LimitMetric:
    """Documented pointwise limit of a rescaled family at a time endpoint.

    kind is "conical-sphere" (curvature +1), "conical-hyperbolic" (-1) or
    "flat-cylinder" (0); scale_factor(t) is the documented rescaling k(t),
    either tau(t) or sqrt(sigma(t)), so that k(t)*u(t, s) -> u_limit(s).
    """

    kind: str
    rho: float
    rescale_kind: str  # "tau" | "sqrt-sigma"
    params: RegimeParameters

    def scale_factor(self, t: float) -> float:
        state = tau_sigma_closed(self.params, t)
        if self.rescale_kind == "tau":
            return state.tau
        return math.sqrt(state.sigma)

    def u_limit(self, s):
        x = np.cosh(math.sqrt(self.rho) * np.asarray(s, dtype=float))
        if self.kind == "conical-sphere":
            return self.rho / (x + 1.0)
        if self.kind == "conical-hyperbolic":
            with np.errstate(divide="ignore"):
                return self.rho / (x - 1.0)
        return self.rho * np.ones_like(x)

    def w_limit(self, s):
        x = np.cosh(math.sqrt(self.rho) * np.asarray(s, dtype=float))
        if self.kind == "conical-sphere":
            return (x + 1.0) / self.rho
        if self.kind == "conical-hyperbolic":
            return (x - 1.0) / self.rho
        return np.ones_like(x) / self.rho


def _scalarize(value, like):
    if np.ndim(like) == 0:
        return float(value)
    return value


@dataclass(frozen=True)
class FamilyMetric:
    """Evaluator bundle for one cataloged family.

    All spatial evaluators accept scalar or array s and enforce the open
    (t, s) domain; time validation happens through the closed tau/sigma
    forms, so a t outside the maximal interval raises OutsideTimeDomain.
    """

    descriptor: FamilyDescriptor
    params: RegimeParameters
    nz: Normalization

    # -- time helpers ------------------------------------------------------

    def state(self, t: float) -> ParameterState:
        return tau_sigma_closed(self.params, t)

    def _that(self, t: float) -> float:
        # steady regimes (A, B) use raw t; every other form is centered
        if self.nz.kind == "steady":
            return t
        return t - self.nz.t_pole

    # -- s-domain ----------------------------------------------------------

    def _bounds(self, t: float) -> tuple[float, float]:
        fid, he = self.descriptor.family_id, self.descriptor.hat_eps
        that = self._that(t)
        inf = math.inf
        if fid == "A":
            return (2.0 * t, inf) if he == 1 else (-inf, -2.0 * t)
        if fid == "B":
            return (-inf, inf) if he == 1 else (2.0 * t, inf)
        if fid == "D" and self.descriptor.tau_sign == 1:
            return (2.0 * that, -2.0 * that)
        if fid == "D":
            return (2.0 * that, inf)
        if fid == "G" and self.descriptor.tau_sign == 1:
            return (2.0 * that, -2.0 * that)
        if fid == "G":
            return (2.0 * that, inf)
        if fid == "H":
            q = self.nz.rate
            return (2.0 * that, TWO_PI / q - 2.0 * that)
        if fid == "J":
            return (2.0 * that, inf)
        # C, E, F, I live on the whole line
        return (-inf, inf)

    def domain(self, t: float) -> SDomain:
        self.state(t)  # time validation
        fid, he = self.descriptor.family_id, self.descriptor.hat_eps
        lo, hi = self._bounds(t)
        if fid == "A":
            ends = (DomainEnd(lo, "blowup"), DomainEnd(hi, "complete"))
            if he == -1:
                ends = (DomainEnd(lo, "complete"), DomainEnd(hi, "blowup"))
            return SDomain(*ends)
        if fid == "B":
            if he == 1:
                return SDomain(DomainEnd(lo, "cone"), DomainEnd(hi, "cusp"))
            upper = "cusp" if self.descriptor.tau_sign == 1 else "cone"
            return SDomain(DomainEnd(lo, "blowup"), DomainEnd(hi, upper))
        if fid == "C":
            return SDomain(DomainEnd(lo, "complete"), DomainEnd(hi, "complete"))
        if fid == "D":
            upper = "blowup" if self.descriptor.tau_sign == 1 else "complete"
            return SDomain(DomainEnd(lo, "blowup"), DomainEnd(hi, upper))
        if fid in ("E", "F"):
            return SDomain(DomainEnd(lo, "cone"), DomainEnd(hi, "cone"))
        if fid == "G":
            upper = "blowup" if self.descriptor.tau_sign == 1 else "cone"
            return SDomain(DomainEnd(lo, "blowup"), DomainEnd(hi, upper))
        if fid == "H":
            return SDomain(DomainEnd(lo, "blowup"), DomainEnd(hi, "blowup"))
        if fid == "I":
            period = TWO_PI / self.nz.rate
            return SDomain(DomainEnd(lo, "periodic"), DomainEnd(hi, "periodic"), period)
        return SDomain(DomainEnd(lo, "blowup"), DomainEnd(hi, "cone"))

    def _checked(self, t: float, s):
        self.state(t)
        arr = np.asarray(s)
        if not np.issubdtype(arr.dtype, np.floating):
            arr = arr.astype(float)
        lo, hi = self._bounds(t)
        if np.any(arr <= lo) or np.any(arr >= hi):
            raise OutsideDomain(
                f"s sample outside the open interval ({lo!r}, {hi!r}) "
                f"of regime {self.descriptor.family_id} at t={t!r}"
            )
        return arr

    # -- closed-form evaluators --------------------------------------------

    def _pieces(self, t: float, s):
        """(w, w_s, w_ss) at (t, s) from the displayed per-regime forms."""
        fid, he = self.descriptor.family_id, self.descriptor.hat_eps
        arr = self._checked(t, s)
        if fid == "A":
            w = 2.0 * he * arr - 4.0 * t
            return w, np.full_like(arr, 2.0 * he), np.zeros_like(arr)
        if fid == "B":
            tau = self.params.tau0
            grow = np.exp(tau * (t - 0.5 * arr))
            w = (4.0 / tau) * (1.0 + he * grow)
            return w, -2.0 * he * grow, tau * he * grow
        that = self._that(t)
        if fid in ("C", "D"):
            eps = self.params.epsilon
            w = (arr * arr - 4.0 * eps * that * that) / (2.0 * that)
            return w, arr / that, np.full_like(arr, 1.0 / that)
        m = self.nz.rate
        theta = 2.0 * m * that
        if fid in ("E", "G"):
            sh, ch = math.sinh(theta), math.cosh(theta)
            cx, sx = np.cosh(m * arr), np.sinh(m * arr)
            w = -2.0 * (ch + he * cx) / (m * sh)
            return w, -2.0 * he * sx / sh, -2.0 * he * m * cx / sh
        if fid == "F":
            sn, cs = math.sin(theta), math.cos(theta)
            cx, sx = np.cosh(m * arr), np.sinh(m * arr)
            w = -2.0 * (cs + cx) / (m * sn)
            return w, -2.0 * sx / sn, -2.0 * m * cx / sn
        if fid == "H":
            sn, cs = math.sin(theta), math.cos(theta)
            cq, sq = np.cos(m * arr), np.sin(m * arr)
            w = 2.0 * (cs - cq) / (m * sn)
            return w, 2.0 * sq / sn, 2.0 * m * cq / sn
        if fid == "I":
            sh, ch = math.sinh(theta), math.cosh(theta)
            cq, sq = np.cos(m * arr), np.sin(m * arr)
            w = 2.0 * (ch - cq) / (m * sh)
            return w, 2.0 * sq / sh, 2.0 * m * cq / sh
        # J
        sh, ch = math.sinh(theta), math.cosh(theta)
        sx, cx = np.sinh(m * arr), np.cosh(m * arr)
        w = 2.0 * (sx - sh) / (m * ch)
        return w, 2.0 * cx / ch, 2.0 * m * sx / ch

    def w(self, t: float, s):
        return _scalarize(self._pieces(t, s)[0], s)

    def w_s(self, t: float, s):
        return _scalarize(self._pieces(t, s)[1], s)

    def w_ss(self, t: float, s):
        return _scalarize(self._pieces(t, s)[2], s)

    def u(self, t: float, s):
        return _scalarize(1.0 / self._pieces(t, s)[0], s)

    def curvature(self, t: float, s):
        fid, he = self.descriptor.family_id, self.descriptor.hat_eps
        arr = self._checked(t, s)
        if fid == "A":
            r = -4.0 / (2.0 * he * arr - 4.0 * t)
            return _scalarize(r, s)
        if fid == "B":
            tau = self.params.tau0
            x = tau * (t - 0.5 * arr)
            if he == 1:
                # logistic form, stable on both exponential tails
                z = np.exp(-np.abs(x))
                r = tau * np.where(x >= 0.0, 1.0 / (1.0 + z), z / (1.0 + z))
            else:
                grow = np.exp(x)  # in-domain points have x < 0
                r = -tau * grow / (1.0 - grow)
            return _scalarize(r, s)
        that = self._that(t)
        if fid in ("C", "D"):
            eps = self.params.epsilon
            s2, t2 = arr * arr, 4.0 * that * that
            r = (t2 + eps * s2) / (that * (t2 - eps * s2))
            return _scalarize(r, s)
        m = self.nz.rate
        theta = 2.0 * m * that
        if fid in ("E", "G"):
            sh, ch = math.sinh(theta), math.cosh(theta)
            cx = np.cosh(m * arr)
            r = (-2.0 * he * m / sh) * (ch * cx + he) / (ch + he * cx)
        elif fid == "F":
            sn, cs = math.sin(theta), math.cos(theta)
            cx = np.cosh(m * arr)
            r = (-2.0 * m / sn) * (cs * cx + 1.0) / (cs + cx)
        elif fid == "H":
            sn, cs = math.sin(theta), math.cos(theta)
            cq = np.cos(m * arr)
            r = (2.0 * m / sn) * (cs * cq - 1.0) / (cs - cq)
        elif fid == "I":
            sh, ch = math.sinh(theta), math.cosh(theta)
            cq = np.cos(m * arr)
            r = (2.0 * m / sh) * (ch * cq - 1.0) / (ch - cq)
        else:  # J
            sh, ch = math.sinh(theta), math.cosh(theta)
            sx = np.sinh(m * arr)
            r = (-2.0 * m / ch) * (sh * sx + 1.0) / (sx - sh)
        return _scalarize(r, s)

    def faraday(self, t: float, s):
        # F = 2*w_s/w = -2*(log u)_s in every regime
        w, ws, _ = self._pieces(t, s)
        return _scalarize(2.0 * ws / w, s)


# -- module-level operations ------------------------------------------------


def build_family(desc: FamilyDescriptor, params: RegimeParameters) -> FamilyMetric:
    """Bundle the closed-form evaluators for a classified parameter tuple."""
    if classify_regime(params, desc.hat_eps) != desc:
        raise InvalidRegime(
            f"descriptor {desc.family_id!r} does not match the classification of {params!r}"
        )
    return FamilyMetric(desc, params, normalize(params))


def family_from_params(params: RegimeParameters, hat_eps: int | None = None) -> FamilyMetric:
    """Classify and build in one step."""
    return build_family(classify_regime(params, hat_eps), params)


def w_profile(fm: FamilyMetric, t: float, s):
    return fm.w(t, s)


def curvature_closed(fm: FamilyMetric, t: float, s):
    return fm.curvature(t, s)


def faraday_closed(fm: FamilyMetric, t: float, s):
    return fm.faraday(t, s)


def domain_s(fm: FamilyMetric, t: float) -> SDomain:
    return fm.domain(t)


def conical_data(fm: FamilyMetric) -> list[ConicalData]:
    """Hard-coded cone/cusp/smooth reports per family branch.

    Angles follow the decay-rate rule: an end with u ~ const*exp(-k|s|) is
    conical with angle pi*k; angle 2*pi is reported as a smooth point.
    """
    fid, he = fm.descriptor.family_id, fm.descriptor.hat_eps
    rho, tau0 = fm.params.rho, fm.params.tau0
    if fid == "B":
        if he == 1:
            return [
                _cone_entry("s->-inf", 0.5 * math.pi * tau0),
                ConicalData("s->+inf", "cusp", None),
            ]
        if tau0 > 0.0:
            return [ConicalData("s->+inf", "cusp", None)]
        return [_cone_entry("s->+inf", 0.5 * math.pi * abs(tau0))]
    angle = math.pi * math.sqrt(abs(rho)) if rho != 0.0 else 0.0
    if fid in ("E", "F"):
        return [_cone_entry("s->-inf", angle), _cone_entry("s->+inf", angle)]
    if fid == "G" and fm.descriptor.tau_sign == -1:
        return [_cone_entry("s->+inf", angle)]
    if fid == "J":
        return [_cone_entry("s->+inf", angle)]
    return []


_LIMIT_TABLE = {
    # (family_id, tau_sign) -> {direction: (kind, rescale_kind)}
    ("E", 1): {
        "upper": ("conical-sphere", "tau"),
        "lower": ("flat-cylinder", "tau"),
    },
    ("F", None): {
        "upper": ("conical-sphere", "sqrt-sigma"),
        "lower": ("conical-hyperbolic", "sqrt-sigma"),
    },
    ("G", -1): {"lower": ("conical-hyperbolic", "sqrt-sigma")},
    ("G", 1): {"lower": ("flat-cylinder", "tau")},
}


def limit_metric(fm: FamilyMetric, direction: str) -> LimitMetric:
    """Documented rescaled limit at one time endpoint ("lower" or "upper")."""
    if direction not in ("lower", "upper"):
        raise ValueError(f"direction must be 'lower' or 'upper', got {direction!r}")
    key = (fm.descriptor.family_id, fm.descriptor.tau_sign)
    entry = _LIMIT_TABLE.get(key, {}).get(direction)
    if entry is None:
        raise NoDocumentedLimit(
            f"regime {fm.descriptor.family_id} has no documented limit at its {direction} endpoint"
        )
    kind, rescale_kind = entry
    return LimitMetric(kind, fm.params.rho, rescale_kind, fm.params)


def rescale(fm: FamilyMetric, c: float) -> FamilyMetric:
    """Scaling action: (tau0, sigma0, rho, t0) -> (k*tau0, k**2*sigma0, k**2*rho, t0/k)
    with k = exp(-2c).  Structural zeros of sigma0 and rho are preserved so the
    regime is unchanged; w scales as w(t, s) -> w(k*t, k*s)/k.
    """
    k = math.exp(-2.0 * c)
    eps, tau1, t1 = fm.params.epsilon, k * fm.params.tau0, fm.params.t0 / k
    if fm.params.sigma0 == 0.0:
        scaled = RegimeParameters(eps, tau1, 0.0, derive_rho(eps, tau1, 0.0), t1)
    elif fm.params.rho == 0.0:
        scaled = RegimeParameters.from_tau_sigma(eps, tau1, tau1 * tau1, t1)
    else:
        scaled = RegimeParameters.from_tau_rho(eps, tau1, k * k * fm.params.rho, t1)
    return family_from_params(scaled, fm.descriptor.hat_eps)

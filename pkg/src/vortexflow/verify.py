"""Residual bench: every documented identity checked per cataloged family.

For each catalog entry the suite evaluates one aggregated residual per
check id, over a deterministic 10x10 (t, s) closed-form grid plus
finite-difference profiles at the three representative sample times:

  w-ode-1 / w-ode-2          closed w solves w_ss = rho*w - tau and
                             w_s**2 - 4*eps + 2*tau*w - rho*w**2 = 0
  vortex-closed / vortex-fd  R + 4*eps*u = tau, closed and FD curvature
  sigma-spread-closed/-fd    R**2 - eps*F**2 spatially constant (= sigma)
  rho-residual-closed/-fd    F**2 + 8*tau*u - 16*eps*u**2 = 4*rho
  grad-R / grad-F            R_s = 2*eps*F*u and F_s = 2*R*u
  laplace-F / laplace-R      the two elliptic identities in u**-1 d2/ds2
  curvature-bounds           regime-specific sign/ordering corollaries
  cone-data                  tabulated end data vs measured u decay rates
  soliton-defect/-potential  steady families only: R -+ F cancellation
  pde-evolve                 tuned explicit solver run vs closed form
  l-factor                   closed L-factor vs its RK4 integration
  l-flow-dev / l-flow-vortex transport by L vs closed form at t1
  limit-lower / limit-upper  documented rescaled limits: distances decrease

A failing or raising check is recorded (residual inf on an internal
error), never raised, so one bad family cannot hide the others.  Reports
serialize to JSON deterministically except for the timestamp; two reports
on the same grid diff check-by-check with a x2 regression flag.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

import numpy as np

from .catalog import ENTRIES, CatalogEntry, lookup
from .errors import IncomparableReports, VortexflowError
from .families import FamilyMetric, conical_data, family_from_params, limit_metric
from .flow import PdeConfig, evolve, l_factor, l_factor_ode, local_flow_check
from .geometry import (
    Profile,
    laplacian_identity_F,
    laplacian_identity_R,
    rho_residual,
    sigma_field,
    soliton_defect,
    soliton_potential_spread,
    structure_identities,
    vortex_residual,
)

DS_DEFAULT = 1e-3

DEFAULT_TOLERANCES: dict[str, float] = {
    "w-ode-1": 1e-9,
    "w-ode-2": 1e-9,
    "vortex-closed": 1e-10,
    "vortex-fd": 1e-4,
    "sigma-spread-closed": 1e-9,
    "sigma-spread-fd": 1e-3,
    "rho-residual-closed": 1e-9,
    "rho-residual-fd": 1e-3,
    "grad-R": 1e-3,
    "grad-F": 1e-3,
    "laplace-F": 1e-2,
    "laplace-R": 1e-2,
    "curvature-bounds": 1e-9,
    "cone-data": 1e-6,
    "soliton-defect": 1e-4,
    "soliton-potential": 1e-3,
    "l-factor": 1e-8,
    "l-flow-dev": 1e-8,
    "l-flow-vortex": 1e-4,
    "limit-lower": 0.0,
    "limit-upper": 0.0,
}

# second-order FD residuals; --scale-tol multiplies these by (ds/1e-3)**2
_DS_SCALED = frozenset(
    {
        "vortex-fd",
        "sigma-spread-fd",
        "rho-residual-fd",
        "grad-R",
        "grad-F",
        "laplace-F",
        "laplace-R",
        "soliton-defect",
        "soliton-potential",
        "l-flow-vortex",
    }
)

_N_T = 10
_N_S = 10


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    family_id: str
    params_summary: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    created_at: str
    grid_spec: dict
    results: tuple[CheckResult, ...]
    summary: dict


@dataclass(frozen=True)
class ReportDiff:
    ratios: tuple[tuple[str, str, float, float, float], ...]
    regressions: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.regressions


def resolve_tolerances(
    ds: float = DS_DEFAULT,
    scale_tol: bool = False,
    overrides: dict[str, float] | None = None,
) -> dict[str, float]:
    tols = dict(DEFAULT_TOLERANCES)
    if overrides:
        tols.update(overrides)
    if scale_tol:
        factor = (ds / DS_DEFAULT) ** 2
        if factor > 1.0:  # coarser grids relax FD tolerances, finer never tighten
            for key in _DS_SCALED:
                tols[key] = tols[key] * factor
    return tols


def _params_summary(params) -> str:
    return (
        f"eps={params.epsilon:+d} tau0={params.tau0:.17g} "
        f"sigma0={params.sigma0:.17g} rho={params.rho:.17g} t0={params.t0:.17g}"
    )


class _Recorder:
    """Runs one check, records the outcome, swallows library errors."""

    def __init__(self, results: list[CheckResult], family_id: str, summary: str):
        self.results = results
        self.family_id = family_id
        self.summary = summary

    def run(self, check_id: str, tolerance: float, fn) -> None:
        detail = ""
        try:
            residual = float(fn())
        except VortexflowError as exc:
            residual, detail = math.inf, type(exc).__name__
        self.results.append(
            CheckResult(
                check_id,
                self.family_id,
                self.summary,
                residual,
                tolerance,
                residual <= tolerance,
                detail,
            )
        )


def _profile(fm: FamilyMetric, t: float, window: tuple[float, float], ds: float) -> Profile:
    lo, hi = window
    n = int(math.floor((hi - lo) / ds + 1e-9)) + 1
    s = lo + ds * np.arange(n)
    return Profile(lo, ds, np.asarray(fm.u(t, s), dtype=float), t)


def _closed_grid_checks(rec: _Recorder, fm: FamilyMetric, entry: CatalogEntry, tols) -> None:
    params = entry.params
    eps, rho = params.epsilon, params.rho
    times = np.linspace(entry.t_range[0], entry.t_range[1], _N_T)
    s = np.linspace(entry.sample_window[0], entry.sample_window[1], _N_S)
    acc = {k: 0.0 for k in ("w-ode-1", "w-ode-2", "vortex-closed", "sigma-spread-closed", "rho-residual-closed")}
    bound_viol = -math.inf
    is_j = fm.descriptor.family_id == "J"
    is_e = fm.descriptor.family_id == "E"
    for t in times:
        st = fm.state(float(t))
        w, w_s, w_ss = fm.w(t, s), fm.w_s(t, s), fm.w_ss(t, s)
        u = 1.0 / w
        r = np.asarray(fm.curvature(t, s), dtype=float)
        f = np.asarray(fm.faraday(t, s), dtype=float)
        acc["w-ode-1"] = max(acc["w-ode-1"], float(np.max(np.abs(w_ss - (rho * w - st.tau)))))
        acc["w-ode-2"] = max(
            acc["w-ode-2"],
            float(np.max(np.abs(w_s * w_s - 4.0 * eps + 2.0 * st.tau * w - rho * w * w))),
        )
        acc["vortex-closed"] = max(acc["vortex-closed"], float(np.max(np.abs(r + 4.0 * eps * u - st.tau))))
        acc["sigma-spread-closed"] = max(
            acc["sigma-spread-closed"], float(np.max(np.abs(r * r - eps * f * f - st.sigma)))
        )
        acc["rho-residual-closed"] = max(
            acc["rho-residual-closed"],
            float(np.max(np.abs(f * f + 8.0 * st.tau * u - 16.0 * eps * u * u - 4.0 * rho))),
        )
        if is_j:
            # sigma < 0 forces |F| > |R| with F > 0 here: R - F < 0 < R + F
            bound_viol = max(bound_viol, float(np.max(r - f)), float(np.max(-(r + f))))
        elif eps == 1:
            bound_viol = max(bound_viol, float(np.max(r - st.tau)), float(np.max(st.sigma - r * r)))
            if is_e:
                bound_viol = max(bound_viol, float(np.max(math.sqrt(st.sigma) - r)))
        else:
            bound_viol = max(
                bound_viol,
                float(np.max(st.tau - r)),
                float(np.max(r * r - st.sigma)),
                float(np.max(np.abs(f) - math.sqrt(st.sigma))),
            )
    for check_id, residual in acc.items():
        rec.run(check_id, tols[check_id], lambda residual=residual: residual)
    rec.run("curvature-bounds", tols["curvature-bounds"], lambda: bound_viol)


def _fd_checks(rec: _Recorder, fm: FamilyMetric, entry: CatalogEntry, ds: float, tols) -> None:
    params = entry.params
    acc: dict[str, float] = {}

    def bump(key: str, value: float) -> None:
        acc[key] = max(acc.get(key, -math.inf), value)

    steady = params.sigma0 == 0.0
    try:
        for t in entry.sample_times:
            st = fm.state(float(t))
            p = _profile(fm, float(t), entry.sample_window, ds)
            bump("vortex-fd", vortex_residual(p, params.epsilon, st.tau))
            bump("sigma-spread-fd", sigma_field(p, params.epsilon)[1])
            bump("rho-residual-fd", rho_residual(p, params.epsilon, st.tau, params.rho))
            res_r, res_f = structure_identities(p, params.epsilon)
            bump("grad-R", res_r)
            bump("grad-F", res_f)
            bump("laplace-F", laplacian_identity_F(p, st.tau))
            r_closed = np.asarray(fm.curvature(float(t), p.s_grid), dtype=float)
            bump("laplace-R", laplacian_identity_R(p, st.tau, st.sigma, r_closed))
            if steady:
                bump("soliton-defect", soliton_defect(p))
                bump("soliton-potential", soliton_potential_spread(p))
    except VortexflowError as exc:
        for key in acc:
            acc[key] = math.inf
        rec.results.append(
            CheckResult("vortex-fd", rec.family_id, rec.summary, math.inf, tols["vortex-fd"], False, type(exc).__name__)
        )
        acc.pop("vortex-fd", None)
    for check_id, residual in acc.items():
        rec.run(check_id, tols[check_id], lambda residual=residual: residual)


def _cone_check(fm: FamilyMetric, entry: CatalogEntry) -> float:
    table = conical_data(fm)
    if not table:
        return 0.0
    t0, viol = entry.params.t0, 0.0
    for cd in table:
        sign = 1.0 if cd.location == "s->+inf" else -1.0
        u_in = float(fm.u(t0, sign * 18.0))
        u_out = float(fm.u(t0, sign * 20.0))
        k = (math.log(u_in) - math.log(u_out)) / 2.0
        if cd.kind == "cusp":
            viol = max(viol, abs(math.pi * k))
        else:
            viol = max(viol, abs(math.pi * k - cd.angle) / cd.angle)
    return viol


def _limit_check(fm: FamilyMetric, probe) -> float:
    lm = limit_metric(fm, probe.direction)
    s = np.linspace(probe.s_lo, probe.s_hi, 201)
    w_lim = lm.w_limit(s)
    dists = []
    for t in probe.t_seq:
        k = lm.scale_factor(float(t))
        u = np.asarray(fm.u(float(t), s), dtype=float)
        dists.append(float(np.max(np.abs(k * u * w_lim - 1.0))))
    return max(b - a for a, b in zip(dists, dists[1:]))


def run_family_suite(
    entry: CatalogEntry | str,
    *,
    ds: float = DS_DEFAULT,
    scale_tol: bool = False,
    tolerances: dict[str, float] | None = None,
) -> list[CheckResult]:
    """All applicable checks for one catalog entry, failures recorded not raised."""
    if isinstance(entry, str):
        entry = lookup(entry)
    tols = resolve_tolerances(ds, scale_tol, tolerances)
    results: list[CheckResult] = []
    rec = _Recorder(results, entry.key, _params_summary(entry.params))
    try:
        fm = family_from_params(entry.params, entry.hat_eps)
    except VortexflowError as exc:
        rec.results.append(
            CheckResult("classify", entry.key, rec.summary, math.inf, 0.0, False, type(exc).__name__)
        )
        return results

    _closed_grid_checks(rec, fm, entry, tols)
    _fd_checks(rec, fm, entry, ds, tols)
    if conical_data(fm):
        rec.run("cone-data", tols["cone-data"], lambda: _cone_check(fm, entry))
    pde = entry.pde
    rec.run(
        "pde-evolve",
        pde.tol,
        lambda: evolve(fm, pde.t0, pde.t1, PdeConfig(pde.ds, pde.dt), (pde.s_lo, pde.s_hi))[1],
    )

    def l_factor_residual() -> float:
        worst = 0.0
        for u_p in (0.0, 0.3):
            closed = l_factor(entry.params, u_p, entry.l_t1)
            ode = l_factor_ode(entry.params, u_p, entry.l_t1)
            worst = max(worst, abs(closed - ode) / max(1.0, abs(closed)))
        return worst

    rec.run("l-factor", tols["l-factor"], l_factor_residual)

    grid = (entry.sample_window[0], entry.sample_window[1], ds)
    flow_result = None

    def flow_dev() -> float:
        nonlocal flow_result
        flow_result = local_flow_check(fm, entry.params.t0, entry.l_t1, grid)
        return flow_result.sup_deviation

    rec.run("l-flow-dev", tols["l-flow-dev"], flow_dev)
    if flow_result is not None:
        rec.run("l-flow-vortex", tols["l-flow-vortex"], lambda: flow_result.vortex_residual)

    for probe in entry.limit_probes:
        rec.run(f"limit-{probe.direction}", tols[f"limit-{probe.direction}"], lambda probe=probe: _limit_check(fm, probe))
    return results


def make_report(
    results: list[CheckResult],
    ds: float,
    scale_tol: bool,
    families: tuple[str, ...],
) -> Report:
    passed = sum(1 for r in results if r.passed)
    return Report(
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        grid_spec={"ds": ds, "scale_tol": scale_tol, "families": list(families)},
        results=tuple(results),
        summary={"total": len(results), "passed": passed, "failed": len(results) - passed},
    )


def run_all(
    *,
    ds: float = DS_DEFAULT,
    scale_tol: bool = False,
    tolerances: dict[str, float] | None = None,
) -> Report:
    results: list[CheckResult] = []
    for entry in ENTRIES:
        results.extend(run_family_suite(entry, ds=ds, scale_tol=scale_tol, tolerances=tolerances))
    return make_report(results, ds, scale_tol, tuple(e.key for e in ENTRIES))


def report_to_json(report: Report) -> str:
    payload = {
        "created_at": report.created_at,
        "grid_spec": report.grid_spec,
        "results": [asdict(r) for r in report.results],
        "summary": report.summary,
    }
    return json.dumps(payload, indent=2) + "\n"


def report_from_json(text: str) -> Report:
    payload = json.loads(text)
    return Report(
        created_at=payload["created_at"],
        grid_spec=payload["grid_spec"],
        results=tuple(CheckResult(**r) for r in payload["results"]),
        summary=payload["summary"],
    )


def compare_reports(old: Report, new: Report) -> ReportDiff:
    """Check-by-check residual ratios; a >2x growth is flagged as a regression."""
    if old.grid_spec != new.grid_spec:
        raise IncomparableReports(f"grid specs differ: {old.grid_spec!r} vs {new.grid_spec!r}")
    old_map = {(r.family_id, r.check_id): r for r in old.results}
    new_map = {(r.family_id, r.check_id): r for r in new.results}
    if old_map.keys() != new_map.keys():
        raise IncomparableReports("reports cover different (family, check) sets")
    ratios = []
    regressions = []
    for key in old_map:
        r_old, r_new = old_map[key].residual, new_map[key].residual
        if r_old > 0.0:
            ratio = r_new / r_old
        else:
            ratio = math.inf if r_new > 0.0 else 1.0
        ratios.append((key[0], key[1], r_old, r_new, ratio))
        if r_new > 2.0 * r_old and r_new > 1e-14:  # ignore noise-floor wiggle
            regressions.append(key)
    ratios.sort()
    regressions.sort()
    return ReportDiff(tuple(ratios), tuple(regressions))

"""Check-suite driver, tolerance resolution, and report plumbing."""
from __future__ import annotations

import dataclasses

import pytest

from vortexflow import IncomparableReports
from vortexflow.verify import (
    DEFAULT_TOLERANCES,
    compare_reports,
    make_report,
    report_from_json,
    report_to_json,
    resolve_tolerances,
    run_family_suite,
)
from vortexflow.catalog import lookup

_E_CHECKS = [
    "w-ode-1",
    "w-ode-2",
    "vortex-closed",
    "sigma-spread-closed",
    "rho-residual-closed",
    "curvature-bounds",
    "vortex-fd",
    "sigma-spread-fd",
    "rho-residual-fd",
    "grad-R",
    "grad-F",
    "laplace-F",
    "laplace-R",
    "cone-data",
    "pde-evolve",
    "l-factor",
    "l-flow-dev",
    "l-flow-vortex",
    "limit-upper",
    "limit-lower",
]


def test_sausage_suite_is_green():
    results = run_family_suite("E")
    assert [r.check_id for r in results] == _E_CHECKS
    assert all(r.passed for r in results), [r.check_id for r in results if not r.passed]


def test_alias_resolves_to_same_suite():
    a = run_family_suite("sausage")
    b = run_family_suite("E")
    assert [r.check_id for r in a] == [r.check_id for r in b]
    assert all(r.family_id == "E" for r in a)


def test_steady_suite_swaps_limits_for_soliton_checks():
    ids = [r.check_id for r in run_family_suite("B-cigar")]
    assert "soliton-defect" in ids and "soliton-potential" in ids
    assert not any(i.startswith("limit-") for i in ids)


def test_unknown_key_raises_with_known_keys():
    with pytest.raises(KeyError) as exc:
        lookup("Z-nonsense")
    assert "unknown family" in str(exc.value)
    assert "B-cigar" in str(exc.value)


def test_resolve_tolerances_scaling_rules():
    base = resolve_tolerances()
    assert base == DEFAULT_TOLERANCES
    assert base is not DEFAULT_TOLERANCES  # caller-owned copy

    # coarser grid with scale_tol relaxes only the FD family of checks
    scaled = resolve_tolerances(ds=1e-2, scale_tol=True)
    assert scaled["vortex-fd"] == pytest.approx(1e-4 * 100.0)
    assert scaled["w-ode-1"] == base["w-ode-1"]
    assert scaled["cone-data"] == base["cone-data"]

    # finer grids never tighten
    fine = resolve_tolerances(ds=1e-4, scale_tol=True)
    assert fine == base

    # without the flag nothing moves
    assert resolve_tolerances(ds=1e-2, scale_tol=False) == base

    # overrides land before scaling
    over = resolve_tolerances(ds=1e-2, scale_tol=True, overrides={"vortex-fd": 5e-5})
    assert over["vortex-fd"] == pytest.approx(5e-3)


def test_coarse_grid_failure_is_recorded_not_raised():
    results = run_family_suite("E", ds=10.0)
    assert len(results) == 13
    failed = {r.check_id: r.detail for r in results if not r.passed}
    assert failed == {"vortex-fd": "GridTooSmall", "l-flow-dev": "GridTooSmall"}


def _small_report():
    results = run_family_suite("E")
    return make_report(results, 1e-3, False, ("E",))


def test_report_json_round_trip():
    report = _small_report()
    text = report_to_json(report)
    back = report_from_json(text)
    assert back == report
    assert back.summary["failed"] == 0
    assert back.grid_spec == {"ds": 1e-3, "scale_tol": False, "families": ["E"]}


def test_compare_reports_clean():
    report = _small_report()
    diff = compare_reports(report, report)
    assert diff.ok
    assert diff.regressions == ()
    assert len(diff.ratios) == len(report.results)


def test_compare_reports_flags_regression():
    old = _small_report()
    bumped = []
    for r in old.results:
        if r.check_id == "vortex-fd":
            r = dataclasses.replace(r, residual=3.0 * r.residual)
        bumped.append(r)
    new = dataclasses.replace(old, results=tuple(bumped))
    diff = compare_reports(old, new)
    assert not diff.ok
    assert diff.regressions == (("E", "vortex-fd"),)


def test_compare_reports_rejects_mismatched_grids():
    old = _small_report()
    new = dataclasses.replace(old, grid_spec={**old.grid_spec, "ds": 2e-3})
    with pytest.raises(IncomparableReports):
        compare_reports(old, new)


def test_compare_reports_rejects_mismatched_coverage():
    old = _small_report()
    new = dataclasses.replace(old, results=old.results[:-1])
    with pytest.raises(IncomparableReports):
        compare_reports(old, new)

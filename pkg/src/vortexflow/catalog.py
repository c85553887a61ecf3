"""Built-in representative parameter sets, one or more per regime A..J.

Each entry carries everything a verification run needs: the parameter
tuple and branch choice, a time range with three representative sample
times, an s-window that stays inside the domain (with margin from any
blow-up edge) at every time in the range, an ODE cross-check window, the
tuned explicit-solver run, the L-factor target time, and the documented
limit probes.  Windows are chosen so that second-order finite-difference
residuals at ds = 1e-3 sit well below their tolerances while closed-form
rounding noise stays an order of magnitude below the truncation error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .params import RegimeParameters

_PI = math.pi


@dataclass(frozen=True)
class PdeRun:
    """Window and stepping for one tuned evolve cross-check."""

    s_lo: float
    s_hi: float
    ds: float
    dt: float
    t0: float
    t1: float
    tol: float


@dataclass(frozen=True)
class LimitProbe:
    """One documented limit-convergence probe: times approaching an endpoint."""

    direction: str  # "lower" | "upper"
    t_seq: tuple[float, ...]
    s_lo: float
    s_hi: float


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    aliases: tuple[str, ...]
    params: RegimeParameters
    hat_eps: int | None
    t_range: tuple[float, float]
    sample_times: tuple[float, float, float]
    sample_window: tuple[float, float]
    ode_window: tuple[float, float]
    pde: PdeRun
    l_t1: float
    limit_probes: tuple[LimitProbe, ...] = ()


def _p(epsilon: int, tau0: float, rho: float, t0: float) -> RegimeParameters:
    return RegimeParameters.from_tau_rho(epsilon, tau0, rho, t0)


_STEADY = lambda epsilon, tau0, rho: RegimeParameters(epsilon, tau0, 0.0, rho, 0.0)

ENTRIES: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        key="A-plus",
        aliases=(),
        params=_STEADY(1, 0.0, 0.0),
        hat_eps=1,
        t_range=(-0.5, 0.5),
        sample_times=(-0.5, 0.0, 0.5),
        sample_window=(1.3, 5.3),
        ode_window=(0.0, 0.5),
        pde=PdeRun(0.5, 3.0, 2e-2, 1e-5, 0.0, 0.01, 1e-12),
        l_t1=0.4,
    ),
    CatalogEntry(
        key="A-minus",
        aliases=(),
        params=_STEADY(1, 0.0, 0.0),
        hat_eps=-1,
        t_range=(-0.5, 0.5),
        sample_times=(-0.5, 0.0, 0.5),
        sample_window=(-5.3, -1.3),
        ode_window=(0.0, 0.5),
        pde=PdeRun(-3.0, -0.5, 2e-2, 1e-5, 0.0, 0.01, 1e-12),
        l_t1=0.4,
    ),
    CatalogEntry(
        key="B-cigar",
        aliases=("cigar",),
        params=_STEADY(1, 4.0, 4.0),
        hat_eps=1,
        t_range=(-0.3, 0.4),
        sample_times=(-0.3, 0.0, 0.4),
        sample_window=(-0.9, 4.0),
        ode_window=(0.0, 0.5),
        pde=PdeRun(0.0, 4.0, 1e-2, 1e-5, 0.0, 0.01, 1e-5),
        l_t1=0.3,
    ),
    CatalogEntry(
        key="B-cone",
        aliases=(),
        params=_STEADY(1, 2.0, 1.0),
        hat_eps=1,
        t_range=(-0.3, 0.4),
        sample_times=(-0.3, 0.0, 0.4),
        sample_window=(0.5, 5.0),
        ode_window=(0.0, 0.5),
        pde=PdeRun(0.0, 5.0, 1e-2, 5e-6, 0.0, 0.01, 1e-5),
        l_t1=0.3,
    ),
    CatalogEntry(
        key="B-cusp",
        aliases=(),
        params=_STEADY(1, 4.0, 4.0),
        hat_eps=-1,
        t_range=(-0.3, 0.4),
        sample_times=(-0.3, 0.0, 0.4),
        sample_window=(1.1, 5.0),
        ode_window=(0.0, 0.5),
        pde=PdeRun(0.3, 3.0, 1e-2, 1e-5, 0.0, 0.01, 1e-5),
        l_t1=0.3,
    ),
    CatalogEntry(
        key="B-exploding",
        aliases=("exploding",),
        params=_STEADY(1, -4.0, 4.0),
        hat_eps=-1,
        t_range=(0.0, 0.4),
        sample_times=(0.0, 0.2, 0.4),
        sample_window=(1.1, 1.75),
        ode_window=(0.0, 0.5),
        pde=PdeRun(0.3, 1.2, 5e-3, 1e-6, 0.0, 0.005, 1e-4),
        l_t1=0.3,
    ),
    CatalogEntry(
        key="C",
        aliases=(),
        params=_p(-1, -1.0, 0.0, 1.0),
        hat_eps=None,
        t_range=(0.7, 1.6),
        sample_times=(0.7, 1.0, 1.6),
        sample_window=(-6.0, 6.0),
        ode_window=(1.0, 1.5),
        pde=PdeRun(-10.0, 10.0, 5e-2, 1e-5, 1.0, 1.1, 1e-4),
        l_t1=1.5,
    ),
    CatalogEntry(
        key="D-ancient",
        aliases=(),
        params=_p(1, 1.0, 0.0, -1.0),
        hat_eps=None,
        t_range=(-1.5, -0.6),
        sample_times=(-1.5, -1.0, -0.6),
        sample_window=(-0.9, 0.9),
        ode_window=(-1.0, -0.5),
        pde=PdeRun(-0.85, 0.85, 1e-2, 1e-5, -1.0, -0.95, 1e-5),
        l_t1=-0.7,
    ),
    CatalogEntry(
        key="D-immortal",
        aliases=(),
        params=_p(1, -1.0, 0.0, 1.0),
        hat_eps=None,
        t_range=(0.6, 1.8),
        sample_times=(0.6, 1.0, 1.8),
        sample_window=(3.9, 7.0),
        ode_window=(1.0, 1.5),
        pde=PdeRun(2.3, 4.0, 1e-2, 5e-6, 1.0, 1.05, 1e-5),
        l_t1=1.5,
    ),
    CatalogEntry(
        key="E",
        aliases=("sausage",),
        params=_p(1, 4.0 / math.tanh(4.0), 4.0, -1.0),
        hat_eps=1,
        t_range=(-2.0, -0.5),
        sample_times=(-2.0, -1.0, -0.5),
        sample_window=(-2.8, 2.8),
        ode_window=(-1.0, -0.5),
        pde=PdeRun(-2.0, 2.0, 1e-2, 1e-5, -1.0, -0.9, 1e-4),
        l_t1=-0.7,
        limit_probes=(
            LimitProbe("upper", (-1e-1, -1e-2, -1e-3), -5.0, 5.0),
            LimitProbe("lower", (-3.0, -5.0, -8.0), -2.0, 2.0),
        ),
    ),
    CatalogEntry(
        key="E-cone",
        aliases=(),
        params=_p(1, 2.0 / math.tanh(2.0), 1.0, -1.0),
        hat_eps=1,
        t_range=(-2.0, -0.5),
        sample_times=(-2.0, -1.0, -0.5),
        sample_window=(-4.0, 4.0),
        ode_window=(-1.0, -0.5),
        pde=PdeRun(-2.0, 2.0, 1e-2, 5e-6, -1.0, -0.95, 2e-5),
        l_t1=-0.7,
        limit_probes=(
            LimitProbe("upper", (-1e-1, -1e-2, -1e-3), -5.0, 5.0),
            LimitProbe("lower", (-3.0, -5.0, -8.0), -2.0, 2.0),
        ),
    ),
    CatalogEntry(
        key="F",
        aliases=(),
        params=_p(-1, 0.0, 4.0, -_PI / 8.0),
        hat_eps=1,
        t_range=(-0.6, -0.15),
        sample_times=(-0.6, -_PI / 8.0, -0.15),
        sample_window=(-1.6, 1.6),
        ode_window=(-0.64, -0.14),
        pde=PdeRun(-1.2, 1.2, 5e-3, 1e-6, -_PI / 8.0, -_PI / 8.0 + 0.01, 1e-4),
        l_t1=-0.2,
        limit_probes=(
            LimitProbe("upper", (-1e-1, -1e-2, -1e-3), -5.0, 5.0),
            LimitProbe(
                "lower",
                (-_PI / 4.0 + 1e-1, -_PI / 4.0 + 1e-2, -_PI / 4.0 + 1e-3),
                0.5,
                5.0,
            ),
        ),
    ),
    CatalogEntry(
        key="F-cone",
        aliases=(),
        params=_p(-1, 0.0, 1.0, -_PI / 4.0),
        hat_eps=1,
        t_range=(-1.2, -0.2),
        sample_times=(-1.2, -_PI / 4.0, -0.2),
        sample_window=(-2.2, 2.2),
        ode_window=(-1.3, -0.8),
        pde=PdeRun(-1.5, 1.5, 1e-2, 5e-6, -_PI / 4.0, -_PI / 4.0 + 0.02, 5e-5),
        l_t1=-0.5,
        limit_probes=(
            LimitProbe("upper", (-1e-1, -1e-2, -1e-3), -5.0, 5.0),
            LimitProbe(
                "lower",
                (-_PI / 2.0 + 1e-1, -_PI / 2.0 + 1e-2, -_PI / 2.0 + 1e-3),
                0.5,
                5.0,
            ),
        ),
    ),
    CatalogEntry(
        key="G-annulus",
        aliases=(),
        params=_p(1, 4.0 / math.tanh(4.0), 4.0, -1.0),
        hat_eps=-1,
        t_range=(-2.0, -0.6),
        sample_times=(-2.0, -1.0, -0.6),
        sample_window=(-0.9, 0.9),
        ode_window=(-1.0, -0.5),
        pde=PdeRun(-0.8, 0.8, 1e-2, 1e-5, -1.0, -0.98, 1e-5),
        l_t1=-0.7,
        limit_probes=(LimitProbe("lower", (-3.0, -5.0, -8.0), -2.0, 2.0),),
    ),
    CatalogEntry(
        key="G-funnel",
        aliases=(),
        params=_p(1, -4.0 / math.tanh(4.0), 4.0, 1.0),
        hat_eps=-1,
        t_range=(1.0, 1.8),
        sample_times=(1.0, 1.4, 1.8),
        sample_window=(4.0, 4.6),
        ode_window=(1.0, 1.5),
        pde=PdeRun(2.3, 2.8, 5e-3, 2e-6, 1.0, 1.01, 1e-4),
        l_t1=1.5,
        limit_probes=(LimitProbe("lower", (1e-1, 1e-2, 1e-3), 0.5, 5.0),),
    ),
    CatalogEntry(
        key="H",
        aliases=(),
        params=_p(1, 0.0, -4.0, _PI / 8.0),
        hat_eps=None,
        t_range=(0.15, 0.55),
        sample_times=(0.15, _PI / 8.0, 0.55),
        sample_window=(1.4, 1.74),
        ode_window=(0.14, 0.64),
        pde=PdeRun(1.0, 2.1, 5e-3, 5e-6, _PI / 8.0, _PI / 8.0 + 0.01, 1e-5),
        l_t1=0.5,
    ),
    CatalogEntry(
        key="I",
        aliases=("torus",),
        params=_p(-1, -4.0 / math.tanh(1.0), -4.0, 0.25),
        hat_eps=None,
        t_range=(0.25, 0.8),
        sample_times=(0.25, 0.5, 0.8),
        sample_window=(-1.5, 1.5),
        ode_window=(0.25, 0.75),
        pde=PdeRun(0.0, _PI, _PI / 400.0, 5e-6, 0.25, 0.26, 5e-5),
        l_t1=0.5,
    ),
    CatalogEntry(
        key="J",
        aliases=("eternal",),
        params=_p(1, 0.0, 4.0, 0.0),
        hat_eps=None,
        t_range=(-0.4, 0.5),
        sample_times=(-0.4, 0.0, 0.5),
        sample_window=(1.4, 3.6),
        ode_window=(0.0, 0.5),
        pde=PdeRun(0.3, 1.2, 5e-3, 2e-6, 0.0, 0.01, 1e-4),
        l_t1=0.4,
    ),
    CatalogEntry(
        key="J-cone",
        aliases=(),
        params=_p(1, 0.0, 1.0, 0.0),
        hat_eps=None,
        t_range=(-0.4, 0.5),
        sample_times=(-0.4, 0.0, 0.5),
        sample_window=(1.4, 5.5),
        ode_window=(0.0, 0.5),
        pde=PdeRun(0.4, 2.5, 1e-2, 2e-6, 0.0, 0.01, 1e-4),
        l_t1=0.4,
    ),
)

_BY_KEY = {e.key: e for e in ENTRIES}
_ALIASES = {a: e.key for e in ENTRIES for a in e.aliases}
# bare regime letters resolve to the first entry of that regime
_BY_LETTER: dict[str, str] = {}
for _e in ENTRIES:
    _BY_LETTER.setdefault(_e.key.split("-")[0], _e.key)


def lookup(name: str) -> CatalogEntry:
    """Resolve a catalog key, alias, or bare regime letter."""
    key = name
    if key in _ALIASES:
        key = _ALIASES[key]
    elif key not in _BY_KEY and key in _BY_LETTER:
        key = _BY_LETTER[key]
    if key not in _BY_KEY:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(sorted(_BY_KEY))}")
    return _BY_KEY[key]


def keys() -> tuple[str, ...]:
    return tuple(e.key for e in ENTRIES)

"""Closed-form rotation-invariant surface flows and their verification bench."""
from __future__ import annotations

from .catalog import ENTRIES, CatalogEntry, LimitProbe, PdeRun, lookup
from .errors import (
    GridTooSmall,
    IncomparableReports,
    InconsistentParameters,
    InvalidRegime,
    NonpositiveW,
    NoDocumentedLimit,
    OutsideDomain,
    OutsideTimeDomain,
    StepTooLarge,
    UnstableStep,
    VortexflowError,
)
from .families import (
    ConicalData,
    DomainEnd,
    FamilyMetric,
    LimitMetric,
    SDomain,
    build_family,
    conical_data,
    curvature_closed,
    domain_s,
    faraday_closed,
    family_from_params,
    limit_metric,
    rescale,
    w_profile,
)
from .flow import (
    FlowState,
    LocalFlowResult,
    PdeConfig,
    evolve,
    l_factor,
    l_factor_ode,
    local_flow_check,
    pde_step,
)
from .geometry import (
    GeometrySample,
    Profile,
    curvature_fd,
    faraday_fd,
    laplacian_identity_F,
    laplacian_identity_R,
    moment_map,
    rho_residual,
    s_length,
    sigma_field,
    soliton_defect,
    soliton_potential_spread,
    structure_identities,
    tabulate,
    total_curvature,
    vortex_residual,
)
from .params import (
    FamilyDescriptor,
    Normalization,
    ParameterState,
    RegimeParameters,
    classify_regime,
    derive_rho,
    maximal_time_interval,
    normalize,
    rebase,
    tau_sigma_closed,
    tau_sigma_ode,
)
from .verify import (
    CheckResult,
    Report,
    ReportDiff,
    compare_reports,
    make_report,
    report_from_json,
    report_to_json,
    run_all,
    run_family_suite,
)

__version__ = "1.0.0"

"""Exception hierarchy shared by all vortexflow modules."""


class VortexflowError(Exception):
    """Base class for every error raised by this package."""


class InconsistentParameters(VortexflowError, ValueError):
    """Parameter tuple violates the 4*eps*rho = tau0**2 - sigma0 constraint."""


class InvalidRegime(VortexflowError, ValueError):
    """Parameter tuple is valid but names no cataloged metric family."""


class OutsideTimeDomain(VortexflowError, ValueError):
    """Requested time is outside (or too close to a pole of) the flow interval."""


class OutsideDomain(VortexflowError, ValueError):
    """Requested spatial point is outside the metric's s-domain."""


class StepTooLarge(VortexflowError, RuntimeError):
    """ODE step violates the |tau|*dt stability bound."""


class UnstableStep(VortexflowError, RuntimeError):
    """PDE step violates the dt <= c*ds**2/max(w) explicit-scheme guard."""


class NonpositiveW(VortexflowError, RuntimeError):
    """PDE step produced a nonpositive conformal profile value."""


class GridTooSmall(VortexflowError, ValueError):
    """Profile has too few points for second-order interior stencils."""


class NoDocumentedLimit(VortexflowError, LookupError):
    """The family has no cataloged rescaled limit at that time endpoint."""


class IncomparableReports(VortexflowError, ValueError):
    """Reports were produced on different grids or check sets."""

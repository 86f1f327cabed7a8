"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class so
tests (and the CLI) can assert on the precise condition instead of matching
message strings.
"""


class GeometryError(Exception):
    """Base class for all package-specific errors."""


class WrongAmbient(GeometryError):
    """An operation was asked of an ambient space it does not apply to
    (e.g. a height-function identity outside a product ambient)."""


class MissingKillingData(GeometryError):
    """The ambient space carries no conformal Killing field."""


class NotEinstein(GeometryError):
    """The Einstein specialization of the integral formula was requested on
    an ambient whose Ricci tensor is not a multiple of the metric."""


class DegenerateFrame(GeometryError):
    """The tangent vectors failed to span a nondegenerate hypersurface
    (Gram determinant below tolerance, or a null normal direction)."""


class NotSpacelike(GeometryError):
    """A hypersurface of a Lorentzian ambient has a point where the induced
    metric is not positive definite (for graphs: |Du|^2 >= 1)."""


class NonCompactDomain(GeometryError):
    """Surface integration was requested on a grid that only samples a
    non-compact surface."""


class StencilOutOfDomain(GeometryError):
    """A finite-difference stencil would leave the domain on which the
    sampled data is defined."""


class SingularPoint(GeometryError):
    """The radial graph ODE was evaluated at or below the coordinate
    singularity x0 = 1."""


class StepFailure(GeometryError):
    """The adaptive ODE integrator failed to reach the requested endpoint."""


class ParameterOutOfRange(GeometryError):
    """A parameter left the validity range of a closed-form solution
    (signature/curvature combinations, geodesic-sphere radii, ...)."""


class ConstantInput(GeometryError):
    """A graph function is constant where a non-constant one is required.
    (The curvature-comparison harness catches this internally and routes
    to a slice report; it is raised only by lower-level helpers.)"""


class UnknownScenario(GeometryError):
    """A scenario name is not in the catalog."""


class OverrideOutOfRange(GeometryError):
    """A scenario override has an invalid value."""

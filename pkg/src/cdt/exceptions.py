"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`CDTError`.
Input-shape problems additionally derive from :class:`ValueError` so callers
that only know the standard library can still catch them.
"""


class CDTError(Exception):
    """Base class for all package errors."""


class DimensionError(CDTError, ValueError):
    """Array shapes disagree with the problem dimensions."""


class AsymmetricMatrixError(CDTError, ValueError):
    """A supposedly symmetric matrix is too far from symmetric."""


class InvalidParameterError(CDTError, ValueError):
    """Parameters of a canonical function are inconsistent."""


class BoundaryOrOutsideDomain(CDTError, ValueError):
    """A point lies on the boundary of, or outside, a required open domain."""


class UnsupportedForKind(CDTError):
    """The operation is not defined for this kind of canonical function."""


class NotInX0(BoundaryOrOutsideDomain):
    """q(x) is not in the interior of dom V."""


class NotInYcol(CDTError, ValueError):
    """b(sigma) is not in the range of A(sigma)."""


class PreconditionFailed(CDTError):
    """A verdict was requested for a pair that does not meet its hypotheses.

    The ``clause`` attribute names the violated condition.
    """

    def __init__(self, clause, detail=""):
        self.clause = clause
        self.detail = detail
        msg = clause if not detail else f"{clause}: {detail}"
        super().__init__(msg)


class NotNegativeDefinite(PreconditionFailed):
    def __init__(self, detail=""):
        super().__init__("A(sigma) is not negative definite", detail)


class NotGammaSC2(PreconditionFailed):
    def __init__(self, detail=""):
        super().__init__("V is not twice differentiable Legendre type", detail)


class NotCritical(PreconditionFailed):
    def __init__(self, detail=""):
        super().__init__("pair is not critical", detail)


class NewtonFailure(CDTError):
    """Base class for failures of the dual Newton solver.

    Carries the last accepted iterate and the iteration count.
    """

    def __init__(self, message, sigma=None, iterations=0):
        super().__init__(message)
        self.sigma = sigma
        self.iterations = iterations


class SingularHessian(NewtonFailure):
    pass


class LeftRegion(NewtonFailure):
    pass


class StalledLineSearch(NewtonFailure):
    pass


class MaxIterations(NewtonFailure):
    pass


class StencilLeftDomain(CDTError):
    """A finite-difference stencil hit a non-finite function value."""


class EmptySearchRegion(CDTError, ValueError):
    """No grid point of the search box lies in the function's domain."""


class ProblemDocumentError(CDTError, ValueError):
    """A problem document could not be parsed or validated."""

"""
Error types for renyi_convex.

Every error carries the process exit code the CLI returns for it:

    1  verification failure
    2  invalid input (body, argument, smoothness, weight)
    3  non-convergence
"""


class RenyiConvexError(Exception):
    """Base class. Subclasses set exit_code."""

    exit_code = 2


class InvalidBody(RenyiConvexError):
    """Descriptor or construction does not give a convex body with the origin inside."""


class InvalidArgument(RenyiConvexError):
    """A parameter is outside its admissible range (p = -n, singular matrix, ...)."""


class UnsupportedSmoothness(RenyiConvexError):
    """The operation needs a C2+ body (curvature, boundary point, densities)."""


class InvalidWeight(RenyiConvexError):
    """A boundary weight is not strictly positive where it has to be."""


class DegenerateBody(RenyiConvexError):
    """A construction collapsed (surface body parameter s too large)."""


class NonConvergence(RenyiConvexError):
    """A quadrature or root solve did not reach its tolerance."""

    exit_code = 3


class VerificationFailure(RenyiConvexError):
    """One or more verification checks failed."""

    exit_code = 1

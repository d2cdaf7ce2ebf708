"""Error taxonomy shared by every module.

All failures raised on purpose derive from SaddleNodeError so callers (and
the CLI) can distinguish domain errors from genuine bugs.
"""


class SaddleNodeError(Exception):
    """Base class for every deliberate failure mode."""


class NonConvergence(SaddleNodeError):
    """Adaptive quadrature ran out of subdivisions above tolerance."""


class InvalidPath(SaddleNodeError):
    """Disconnected path, or a path touching 0 without a removable flag."""


class StepFailure(SaddleNodeError):
    """ODE step size underflowed (path too close to the singular line)."""


class OutOfRange(SaddleNodeError):
    """Argument outside the supported table or interval."""


class ZeroInput(SaddleNodeError):
    """x = 0 where a nonzero point is required."""


class OutsideSector(SaddleNodeError):
    """Point not contained in the requested sector."""


class OutsideAnnulus(SaddleNodeError):
    """|x| outside the direct-evaluation annulus."""


class Overflow(SaddleNodeError):
    """An exponent exceeded the configured cap."""


class WrongHalfPlane(SaddleNodeError):
    """Stokes estimate requested on the wrong side of the imaginary axis."""


class AlphaTooLarge(SaddleNodeError):
    """|alpha| >= 1/10: outside the regime of the construction."""


class BranchViolation(SaddleNodeError):
    """Radicand of the X change of variable left the right half-plane."""


class AnnulusGap(SaddleNodeError):
    """0 < |x| < r_min: the map is defined there but not evaluated."""


class ChartUndefined(SaddleNodeError):
    """Requested chart transition divides by zero."""


class UnknownSuite(SaddleNodeError):
    """Verification suite name not recognized."""

"""Exception types shared across the package."""


class HollowCoreError(Exception):
    """Base class for all package-specific errors."""


class VelocityExceedsC(HollowCoreError):
    """Derived group velocity is not below c: parameters are outside the
    slow-light regime the propagation solution assumes."""


class InvalidQuantumNumbers(HollowCoreError):
    """Rydberg quantum numbers violate n >= 1, 0 <= q <= n-1 or |m| < n."""


class ZeroSeparation(HollowCoreError):
    """Point-contact evaluation of the unregularized 3D dipole-dipole
    potential was requested."""


class QuadratureNonConvergence(HollowCoreError):
    """An adaptive integration did not reach the requested tolerance
    within its subdivision budget."""


class GridTooCoarse(HollowCoreError):
    """Two-photon grid step exceeds a quarter of the transverse width, too
    coarse to resolve the interaction kernel."""


class PulseLeftMedium(HollowCoreError):
    """A pulse envelope's support has (partially) left the medium at the
    requested evolution time."""


class EnvelopeTooSharp(HollowCoreError):
    """Signal envelope varies too fast on the scale of the transverse
    width for the kernel approximations to hold."""


class EnvelopeNotNormalized(HollowCoreError):
    """Pulse envelope fails the (1/L) integral |f|^2 = 1 normalization."""


class EnvelopeOutsideMedium(HollowCoreError):
    """Pulse envelope support does not fit inside [0, L] while support
    enforcement was requested."""


class PhaseWrapInfeasible(HollowCoreError):
    """phi * n_max exceeds pi: photon numbers cannot be distinguished
    unambiguously by the homodyne signal."""


class MissingInput(HollowCoreError):
    """A named input required by a check is not available."""

    def __init__(self, name: str, message: str | None = None):
        self.name = name
        super().__init__(message or f"missing input: {name}")


class ScenarioParseError(HollowCoreError):
    """Scenario file is malformed, has unknown keys, or misses required
    keys."""


class ConstraintFailure(HollowCoreError):
    """A strict operating condition is violated (strict mode)."""

"""Exception types shared across the package."""


class OscPhaseError(Exception):
    """Base class for all package errors."""


class PoleError(OscPhaseError):
    """Evaluation point lies on (or within tolerance of) a pole."""


class DomainError(OscPhaseError):
    """Argument outside the operation's domain."""


class ClassError(OscPhaseError):
    """Amplitude growth class incompatible with the phase power (delta >= p-1)."""


class OrderError(OscPhaseError):
    """Requested derivative order exceeds an oracle's max_order."""


class BudgetError(OscPhaseError):
    """Node budget exhausted before reaching the requested tolerance."""


class ConvergenceError(OscPhaseError):
    """Iterative limit (epsilon ladder) failed to stabilize."""


class NoiseFloorError(OscPhaseError):
    """Too few residuals above the noise floor to fit a slope."""


class UnknownAmplitude(OscPhaseError):
    """Amplitude name not in the built-in catalogue."""

"""Exception hierarchy for LD-Shift.

Two families matter to callers: ScenarioError means the input describes a
scenario that cannot be simulated (CLI exit code 2), NumericalError means a
computation could not reach its tolerance (CLI exit code 3).
"""

from typing import Optional


class LDShiftError(Exception):
    """Base class for all LD-Shift errors."""

    exit_code = 1


class ScenarioError(LDShiftError):
    """Invalid scenario or configuration."""

    exit_code = 2


class ConfigError(ScenarioError):
    """Unknown or malformed configuration key."""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


class ProfileError(ScenarioError):
    """Potential profile violates its invariants."""


class ProfileRangeError(ProfileError):
    """Tabulated profile evaluated outside its table."""

    def __init__(self, message: str, z: float):
        super().__init__(message)
        self.z = z


class TurningPointError(ScenarioError):
    """Kinetic energy reaches the rest mass somewhere on the path."""

    def __init__(self, message: str, z: Optional[float] = None):
        super().__init__(message)
        self.z = z


class DomainError(ScenarioError):
    """Classically forbidden region."""


class WindowError(ScenarioError):
    """Window plateau does not cover the acceleration region."""


class NumericalError(LDShiftError):
    """A numerical route failed to converge."""

    exit_code = 3


class QuadratureError(NumericalError):
    """Adaptive quadrature did not meet its tolerance."""

    def __init__(self, message: str, estimate: float = float("nan"), error: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class SolverError(NumericalError):
    """ODE solver failure."""


class ResolutionError(NumericalError):
    """Oscillatory integrand needs more panels than the budget allows."""

    def __init__(self, message: str, suggested_k_max: float):
        super().__init__(message)
        self.suggested_k_max = suggested_k_max


class ConvergenceError(NumericalError):
    """Iterative refinement stopped before converging."""

    def __init__(self, message: str, tail_fraction: float = float("nan")):
        super().__init__(message)
        self.tail_fraction = tail_fraction


class SpanError(NumericalError):
    """Evaluation requested outside a trajectory's time span."""


class TrajectoryError(NumericalError):
    """Trajectory failed an internal consistency check."""

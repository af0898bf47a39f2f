"""Physical scenario: particle, potential profile and numerical controls."""

from .models import ParticleParams, PotentialProfile, ProfileShape, SimulationConfig
from .potential import (
    ValidationReport,
    potential_eval,
    reflect_scenario,
    support,
    tanh_width,
    validate_scenario,
)

__all__ = [
    "ParticleParams",
    "PotentialProfile",
    "ProfileShape",
    "SimulationConfig",
    "ValidationReport",
    "potential_eval",
    "reflect_scenario",
    "support",
    "tanh_width",
    "validate_scenario",
]

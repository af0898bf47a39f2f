"""Emission amplitude, quantum position shift and radiated energy."""

from .amplitude import (
    EmissionAmplitude,
    amplitude_direct,
    amplitude_ibp,
    four_velocity_xi,
    ibp_amplitudes,
    soft_limit,
    soft_limit_extrapolation,
    spectral_density,
)
from .energy import RadiatedEnergy, angular_density, radiated_energy
from .shifts import DerivativeMode, quantum_shift_angular, quantum_shift_reduced
from .window import WindowFunction, poly_fourier

__all__ = [
    "DerivativeMode",
    "EmissionAmplitude",
    "RadiatedEnergy",
    "WindowFunction",
    "amplitude_direct",
    "amplitude_ibp",
    "angular_density",
    "four_velocity_xi",
    "ibp_amplitudes",
    "poly_fourier",
    "quantum_shift_angular",
    "quantum_shift_reduced",
    "radiated_energy",
    "soft_limit",
    "soft_limit_extrapolation",
    "spectral_density",
]

"""Lorentz-Dirac force along the unperturbed worldline."""

from .force import (
    LDForceSample,
    f_ld_at,
    force_at_z,
    four_force,
    larmor_energy,
    larmor_power,
    work_done,
)

__all__ = [
    "LDForceSample",
    "f_ld_at",
    "force_at_z",
    "four_force",
    "larmor_energy",
    "larmor_power",
    "work_done",
]

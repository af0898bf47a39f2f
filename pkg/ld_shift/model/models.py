"""Scenario and numerical-control models."""

import math
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ProfileShape(str, Enum):
    """Shape of the potential step between the flat regions."""
    QUINTIC = "quintic"
    TANH = "tanh"
    TABULATED = "tabulated"


class ParticleParams(BaseModel):
    """Charged particle moving along +z."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    m: float = Field(1.0, gt=0, description="Rest mass (energy units, c = 1)")
    alpha_c: float = Field(0.01, ge=0, description="Coupling e^2 / 4 pi")
    p: float = Field(1.0, gt=0, description="Final z-momentum")

    @property
    def energy(self) -> float:
        """Total energy E = sqrt(p^2 + m^2)."""
        return math.hypot(self.p, self.m)

    @property
    def final_velocity(self) -> float:
        """Velocity in the late-time free region."""
        return self.p / self.energy

    @property
    def charge(self) -> float:
        """Charge e = sqrt(4 pi alpha_c)."""
        return math.sqrt(4.0 * math.pi * self.alpha_c)


class PotentialProfile(BaseModel):
    """
    Static potential V(z) equal to V0 for z <= -Z1 and to 0 for z >= -Z2.

    Shape parameters: ``tanh_width`` for the tanh step (derived from
    ``eps_profile`` when omitted), ``table_z``/``table_v`` for the tabulated
    shape.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    V0: float = Field(0.2, description="Asymptotic potential energy for z <= -Z1")
    Z1: float = Field(2.0, gt=0, description="Start of the acceleration region is -Z1")
    Z2: float = Field(1.0, gt=0, description="End of the acceleration region is -Z2")
    shape: ProfileShape = Field(ProfileShape.QUINTIC)
    tanh_width: Optional[float] = Field(None, gt=0)
    table_z: Optional[Tuple[float, ...]] = None
    table_v: Optional[Tuple[float, ...]] = None
    eps_profile: float = Field(1e-8, gt=0, description="Asymptotic flatness tolerance")

    @model_validator(mode="after")
    def _check_geometry(self) -> "PotentialProfile":
        if not self.Z1 > self.Z2:
            raise ValueError(f"Z1 must exceed Z2 (got Z1={self.Z1}, Z2={self.Z2})")
        if self.shape is ProfileShape.TABULATED:
            if self.table_z is None or self.table_v is None:
                raise ValueError("tabulated shape needs table_z and table_v")
            if len(self.table_z) != len(self.table_v):
                raise ValueError("table_z and table_v differ in length")
            if len(self.table_z) < 6:
                raise ValueError("tabulated shape needs at least 6 points")
            if any(b <= a for a, b in zip(self.table_z, self.table_z[1:])):
                raise ValueError("table_z must be strictly increasing")
        return self

    @property
    def width(self) -> float:
        """Length Z1 - Z2 of the acceleration region."""
        return self.Z1 - self.Z2

    @property
    def center(self) -> float:
        """Midpoint of the acceleration region."""
        return -0.5 * (self.Z1 + self.Z2)

    @property
    def is_free(self) -> bool:
        """True when V vanishes identically."""
        if self.shape is ProfileShape.TABULATED:
            return self.V0 == 0.0 and not any(self.table_v or ())
        return self.V0 == 0.0


class SimulationConfig(BaseModel):
    """Numerical controls shared by every route."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    ode_rel_tol: float = Field(1e-12, gt=0)
    ode_abs_tol: float = Field(1e-14, gt=0)
    quad_order_angle: int = Field(64, ge=2, description="Gauss-Legendre order in cos(theta)")
    quad_rel_tol: float = Field(1e-10, gt=0)
    fd_step_rel: float = Field(1e-4, gt=0)
    fd_richardson: bool = False
    t_margin: float = Field(1.0, gt=0, description="Padding before the acceleration window")
    window_plateau_pad: float = Field(1.0, ge=0, description="Plateau padding beyond the acceleration image")
    window_rolloff: float = Field(4.0, gt=0, description="Roll-off width of the window")
    energy_window_rolloff: float = Field(1e5, gt=0)
    grid_panels: int = Field(400, ge=8, description="Quadrature panels across the acceleration region")
    sample_count: int = Field(2001, ge=2)
    delta_min: float = Field(1e-6, gt=0)
    max_panels: int = Field(20000, ge=16)
    route_rel_tol: float = Field(1e-5, gt=0)
    fd_route_rel_tol: float = Field(1e-4, gt=0)
    energy_rel_tol: float = Field(2e-2, gt=0)
    spectral_tail_tol: float = Field(1e-5, gt=0)
    max_k_doublings: int = Field(24, ge=1)

"""Data models for the trajectory module."""

from dataclasses import dataclass
from typing import Optional

from ..numerics import ArrayLike


@dataclass
class TrajectoryPoint:
    """
    Kinematic state on the unperturbed worldline.

    Fields hold floats for a single point or aligned arrays for a batch.
    ``t`` is None when the state was evaluated from z alone.
    """

    z: ArrayLike
    zdot: ArrayLike
    zddot: ArrayLike
    zdddot: ArrayLike
    gamma: ArrayLike
    t: Optional[ArrayLike] = None

    @property
    def proper_velocity(self) -> ArrayLike:
        """dz/dtau = gamma * zdot."""
        return self.gamma * self.zdot

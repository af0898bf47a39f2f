"""Shared fixtures: the canonical scenario and its worldline."""

import pytest

from ld_shift.model import ParticleParams, PotentialProfile, ProfileShape, SimulationConfig
from ld_shift.trajectory import Trajectory, build_trajectory


@pytest.fixture(scope="session")
def particle() -> ParticleParams:
    return ParticleParams(m=1.0, alpha_c=0.01, p=1.0)


@pytest.fixture(scope="session")
def profile() -> PotentialProfile:
    return PotentialProfile(V0=0.2, Z1=2.0, Z2=1.0, shape=ProfileShape.QUINTIC)


@pytest.fixture(scope="session")
def sim_config() -> SimulationConfig:
    return SimulationConfig()


@pytest.fixture(scope="session")
def traj(profile: PotentialProfile, particle: ParticleParams, sim_config: SimulationConfig) -> Trajectory:
    """Canonical worldline: m = 1, p = 1, alpha_c = 0.01, V0 = 0.2, Z1 = 2, Z2 = 1."""
    return build_trajectory(profile, particle, config=sim_config)


@pytest.fixture(scope="session")
def free_traj(particle: ParticleParams) -> Trajectory:
    return build_trajectory(PotentialProfile(V0=0.0), particle)


@pytest.fixture(scope="session")
def neutral_traj(profile: PotentialProfile) -> Trajectory:
    """Canonical scenario without coupling."""
    return build_trajectory(profile, ParticleParams(alpha_c=0.0))


@pytest.fixture(scope="session")
def tanh_traj(particle: ParticleParams) -> Trajectory:
    return build_trajectory(PotentialProfile(V0=0.2, shape=ProfileShape.TANH), particle)

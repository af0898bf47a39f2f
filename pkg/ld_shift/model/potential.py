"""Potential evaluation and scenario validation."""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from scipy.interpolate import BSpline, make_interp_spline

from ..errors import ProfileError, ProfileRangeError, TurningPointError
from ..numerics import ArrayLike
from .models import ParticleParams, PotentialProfile, ProfileShape

logger = logging.getLogger(__name__)

# tanh tails are cut where 1 - |tanh| drops below 1e-15
TANH_CUT = math.atanh(1.0 - 2e-15)
# default tanh tails end this fraction of |center| short of z = 0
TANH_EXIT_MARGIN = 0.1
FLATNESS_SCAN_POINTS = 2001


@dataclass
class ValidationReport:
    """Outcome of a successful scenario validation."""
    min_margin: float
    z_at_min: float
    support: Tuple[float, float]
    valid: bool = True
    checks: List[str] = field(default_factory=list)


def tanh_width(profile: PotentialProfile) -> float:
    """
    Width of the tanh step.

    By default the step is flat to eps_profile at -Z1 and -Z2, and narrow
    enough that the cut tails end before z = 0.
    """
    if profile.tanh_width is not None:
        return profile.tanh_width
    ratio = abs(profile.V0) / profile.eps_profile
    flat = 0.5 * profile.width if ratio <= math.e else profile.width / math.log(ratio)
    exit_cap = -profile.center * (1.0 - TANH_EXIT_MARGIN) / TANH_CUT
    return min(flat, exit_cap)


def support(profile: PotentialProfile) -> Tuple[float, float]:
    """Interval outside of which V' and V'' vanish identically."""
    if profile.shape is ProfileShape.TANH:
        half = tanh_width(profile) * TANH_CUT
        return profile.center - half, profile.center + half
    if profile.shape is ProfileShape.TABULATED:
        assert profile.table_z is not None
        return min(profile.table_z[0], -profile.Z1), max(profile.table_z[-1], -profile.Z2)
    return -profile.Z1, -profile.Z2


@lru_cache(maxsize=32)
def _table_spline(table_z: Tuple[float, ...], table_v: Tuple[float, ...]) -> BSpline:
    clamped = [(1, 0.0), (2, 0.0)]
    return make_interp_spline(
        np.asarray(table_z), np.asarray(table_v), k=5, bc_type=(clamped, clamped)
    )


def _shape_values(u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Quintic smoothstep s(u) = 6u^5 - 15u^4 + 10u^3 and its derivatives."""
    s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u))
    ds = 30.0 * u * u * (1.0 - u) ** 2
    d2s = 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u)
    return s, ds, d2s


def _quintic(profile: PotentialProfile, z: np.ndarray) -> Tuple[np.ndarray, ...]:
    width = profile.width
    u = np.clip((z + profile.Z1) / width, 0.0, 1.0)
    s, ds, d2s = _shape_values(u)
    v0 = profile.V0
    return v0 * (1.0 - s), -v0 * ds / width, -v0 * d2s / width**2


def _tanh(profile: PotentialProfile, z: np.ndarray) -> Tuple[np.ndarray, ...]:
    w = tanh_width(profile)
    x = (z - profile.center) / w
    inside = np.abs(x) <= TANH_CUT
    xc = np.where(inside, x, 0.0)
    th = np.tanh(xc)
    sech2 = 1.0 / np.cosh(xc) ** 2
    v0 = profile.V0
    v = np.where(inside, 0.5 * v0 * (1.0 - th), np.where(x < 0, v0, 0.0))
    vp = np.where(inside, -0.5 * v0 * sech2 / w, 0.0)
    vpp = np.where(inside, v0 * sech2 * th / w**2, 0.0)
    return v, vp, vpp


def _tabulated(profile: PotentialProfile, z: np.ndarray) -> Tuple[np.ndarray, ...]:
    """
    Clamped quintic spline over the whole table, constant beyond its ends.

    The clamped ends have V' = V'' = 0, so the continuation is C2.
    """
    assert profile.table_z is not None and profile.table_v is not None
    spline = _table_spline(profile.table_z, profile.table_v)
    lo, hi = profile.table_z[0], profile.table_z[-1]
    interior = (z > -profile.Z1) & (z < -profile.Z2)
    outside = interior & ((z < lo) | (z > hi))
    if np.any(outside):
        bad = float(np.asarray(z)[outside].flat[0])
        raise ProfileRangeError(
            f"z={bad:.6g} lies outside the table range [{lo:.6g}, {hi:.6g}]", z=bad
        )
    inside = (z >= lo) & (z <= hi)
    zc = np.clip(z, lo, hi)
    v = np.where(inside, spline(zc), np.where(z < lo, profile.table_v[0], profile.table_v[-1]))
    vp = np.where(inside, spline(zc, 1), 0.0)
    vpp = np.where(inside, spline(zc, 2), 0.0)
    return v, vp, vpp


_SHAPES = {
    ProfileShape.QUINTIC: _quintic,
    ProfileShape.TANH: _tanh,
    ProfileShape.TABULATED: _tabulated,
}


def potential_eval(profile: PotentialProfile, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """
    Evaluate V, V' and V'' at ``z``.

    Accepts a float or an array; floats come back as floats.

    Returns:
        Tuple of (V, dV/dz, d2V/dz2)
    """
    arr = np.asarray(z, dtype=float)
    v, vp, vpp = _SHAPES[profile.shape](profile, arr)
    if arr.ndim == 0:
        return float(v), float(vp), float(vpp)
    return v, vp, vpp


def _check_profile(profile: PotentialProfile, checks: List[str]) -> Tuple[float, float]:
    lo, hi = support(profile)
    if hi >= 0.0:
        raise ProfileError(
            f"acceleration must end before z=0 (support ends at {hi:.6g}); "
            "reduce the tanh width or increase Z2"
        )
    if profile.shape is ProfileShape.TABULATED:
        assert profile.table_z is not None
        if profile.table_z[0] > -profile.Z1 or profile.table_z[-1] < -profile.Z2:
            raise ProfileError(
                f"table [{profile.table_z[0]:.6g}, {profile.table_z[-1]:.6g}] "
                f"does not cover [-Z1, -Z2] = [{-profile.Z1:.6g}, {-profile.Z2:.6g}]"
            )
        # the spline may ring between the knots of the flat stretches
        z_in = np.linspace(lo, -profile.Z1, FLATNESS_SCAN_POINTS)
        z_out = np.linspace(-profile.Z2, hi, FLATNESS_SCAN_POINTS)
        v_in = _tabulated(profile, z_in)[0]
        v_out = _tabulated(profile, z_out)[0]
        left = float(v_in[np.argmax(np.abs(v_in - profile.V0))])
        right = float(v_out[np.argmax(np.abs(v_out))])
    elif profile.shape is ProfileShape.TANH:
        left = float(_tanh(profile, np.asarray(-profile.Z1))[0])
        right = float(_tanh(profile, np.asarray(-profile.Z2))[0])
    else:
        left, right = profile.V0, 0.0
    if abs(left - profile.V0) > profile.eps_profile:
        raise ProfileError(f"|V - V0| = {abs(left - profile.V0):.3e} for z <= -Z1 exceeds eps_profile")
    if abs(right) > profile.eps_profile:
        raise ProfileError(f"|V| = {abs(right):.3e} for z >= -Z2 exceeds eps_profile")
    checks.append("asymptotic flatness")
    return lo, hi


def validate_scenario(
    profile: PotentialProfile,
    particle: ParticleParams,
    delta_min: float = 1e-6,
    scan_points: int = 20001,
) -> ValidationReport:
    """
    Check the profile invariants and rule out turning points.

    The scan requires E - V(z) >= m (1 + delta_min) on a dense grid over the
    support and a stretch of each flat region.

    Returns:
        ValidationReport for a valid scenario
    """
    checks: List[str] = []
    lo, hi = _check_profile(profile, checks)

    span = hi - lo
    z = np.linspace(lo - 0.1 * span, min(hi + 0.1 * span, 0.0), scan_points)
    v, _, _ = potential_eval(profile, z)
    margin = particle.energy - np.asarray(v) - particle.m * (1.0 + delta_min)
    i = int(np.argmin(margin))
    if margin[i] < 0.0:
        raise TurningPointError(
            f"turning point near z={z[i]:.6g}: E - V = {particle.energy - v[i]:.6g} "
            f"is below m(1 + delta_min) = {particle.m * (1.0 + delta_min):.6g}",
            z=float(z[i]),
        )
    checks.append("no turning point")
    logger.debug(f"Scenario valid: min kinetic margin {margin[i]:.6g} at z={z[i]:.6g}")
    return ValidationReport(
        min_margin=float(margin[i]), z_at_min=float(z[i]), support=(lo, hi), checks=checks
    )


def reflect_scenario(
    profile: PotentialProfile, particle: ParticleParams
) -> Tuple[PotentialProfile, ParticleParams]:
    """
    Time-reversed scenario.

    The profile is mirrored about the centre of the acceleration region and
    shifted so V vanishes at late times; the particle leaves with the speed
    the original one arrived with.
    """
    kinetic_in = particle.energy - profile.V0
    if kinetic_in <= particle.m:
        raise TurningPointError("incoming region is classically forbidden", z=-profile.Z1)
    p_reflected = math.sqrt((kinetic_in - particle.m) * (kinetic_in + particle.m))

    update: dict = {"V0": -profile.V0}
    if profile.shape is ProfileShape.TABULATED:
        assert profile.table_z is not None and profile.table_v is not None
        offset = profile.Z1 + profile.Z2
        update["table_z"] = tuple(-zi - offset for zi in reversed(profile.table_z))
        update["table_v"] = tuple(vi - profile.V0 for vi in reversed(profile.table_v))
    return profile.model_copy(update=update), particle.model_copy(update={"p": p_reflected})

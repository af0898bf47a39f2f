"""Linearized flow about the unperturbed worldline."""

import logging
from typing import Callable, List, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import SolverError
from ..model import potential_eval
from ..numerics import ArrayLike
from ..trajectory import Trajectory
from .models import JacobiPair

logger = logging.getLogger(__name__)

# symplectic product of the two basis solutions seeded at the window end
BASIS_PRODUCT = -1.0


def coeffs(traj: Trajectory, t: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """
    Coefficients of d(dz)/dt = A dP, d(dP)/dt = B dz.

    Returns:
        Tuple of (A, B) with A = 1/(m gamma^3) and B = -V''(z(t))
    """
    z = traj.z_at(t)
    s = traj.state(z)
    _, _, vpp = potential_eval(traj.profile, z)
    return 1.0 / (traj.particle.m * s.gamma**3), -vpp


def symplectic(pair1: Tuple[ArrayLike, ArrayLike], pair2: Tuple[ArrayLike, ArrayLike]) -> ArrayLike:
    """dz1 dP2 - dP1 dz2 for two (dz, dP) pairs at a common time."""
    return pair1[0] * pair2[1] - pair1[1] * pair2[0]


def linear_rhs(traj: Trajectory) -> Callable[[float, np.ndarray], np.ndarray]:
    """
    Right-hand side for the state [z, dz_1, dP_1, dz_2, dP_2, ...].

    Carrying z along keeps every coefficient closed-form in the state.
    """
    m = traj.particle.m
    profile = traj.profile

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        z = float(y[0])
        s = traj.state(z)
        _, _, vpp = potential_eval(profile, z)
        out = np.empty_like(y)
        out[0] = s.zdot
        out[1::2] = y[2::2] / (m * s.gamma**3)
        out[2::2] = -vpp * y[1::2]
        return out

    return rhs


def _free_coefficient(traj: Trajectory, t: float) -> float:
    gamma = traj.gamma_in if t < traj.t_start else traj.gamma_out
    return 1.0 / (traj.particle.m * gamma**3)


def _breakpoints(traj: Trajectory, t0: float, t1: float) -> List[float]:
    lo, hi = min(t0, t1), max(t0, t1)
    inner = [tb for tb in (traj.t_start, traj.t_end) if lo < tb < hi]
    points = [t0, *sorted(inner, reverse=t1 < t0), t1]
    return points


def flow(traj: Trajectory, t0: float, state: np.ndarray, t1: float) -> np.ndarray:
    """
    Carry (dz, dP) pairs from t0 to t1 in either direction.

    Inside the force window the system is integrated with DOP853; outside it
    B vanishes and the flow is a shear dz += A dP dt.
    """
    cfg = traj.config
    y = np.array(state, dtype=float)
    points = _breakpoints(traj, t0, t1)
    for a, b in zip(points, points[1:]):
        if a == b:
            continue
        mid = 0.5 * (a + b)
        if traj.t_start <= mid <= traj.t_end:
            sol = solve_ivp(
                linear_rhs(traj),
                (a, b),
                np.concatenate([[traj.z_at(a)], y]),
                method="DOP853",
                rtol=cfg.ode_rel_tol,
                atol=cfg.ode_abs_tol,
            )
            if not sol.success:
                raise SolverError(f"linearized flow failed on [{a:.6g}, {b:.6g}]: {sol.message}")
            y = sol.y[1:, -1]
        else:
            y = y.copy()
            y[0::2] += _free_coefficient(traj, mid) * y[1::2] * (b - a)
    return y


def propagate(traj: Trajectory, s: float, t: float) -> Tuple[float, float]:
    """(dz_s(t), dP_s(t)) for the pair seeded with (0, 1) at s."""
    dz, dP = flow(traj, s, np.array([0.0, 1.0]), t)
    return float(dz), float(dP)


def solve_pair(traj: Trajectory, s: float, times: np.ndarray) -> JacobiPair:
    """Samples of the pair seeded at s, evaluated through the shared basis."""
    basis = JacobiBasis(traj)
    times = np.asarray(times, dtype=float)
    dz, dP = basis.green(np.full_like(times, s), times)
    return JacobiPair(s=s, t=times, dz=np.asarray(dz), dP=np.asarray(dP))


class JacobiBasis:
    """
    Two solutions seeded at the end of the force window, phi1 = (0, 1) and
    phi2 = (1, 0), integrated backward once with dense output.

    Any seeded pair follows from them: the combination vanishing at s is
    dz_s(t) = [phi1_z(s) phi2(t) - phi2_z(s) phi1(t)] / W with W = <phi1|phi2>.
    """

    def __init__(self, traj: Trajectory):
        self.traj = traj
        cfg = traj.config
        if traj.t_end > traj.t_start:
            sol = solve_ivp(
                linear_rhs(traj),
                (traj.t_end, traj.t_start),
                [traj.z_hi, 0.0, 1.0, 1.0, 0.0],
                method="DOP853",
                rtol=cfg.ode_rel_tol,
                atol=cfg.ode_abs_tol,
                dense_output=True,
            )
            if not sol.success:
                raise SolverError(f"Jacobi basis failed: {sol.message}")
            self._sol = sol.sol
            self.step_times = sol.t
            self.step_states = sol.y[1:]
            logger.debug(f"Jacobi basis: {len(sol.t)} steps, {sol.nfev} evaluations")
        else:
            self._sol = None
            self.step_times = np.array([traj.t_end])
            self.step_states = np.array([[0.0], [1.0], [1.0], [0.0]])
        self._start = self.step_states[:, -1]
        self._end = self.step_states[:, 0]

    def evaluate(self, t: ArrayLike) -> np.ndarray:
        """Rows (phi1_z, phi1_P, phi2_z, phi2_P) at times t."""
        traj = self.traj
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty((4, t.size))
        before = t < traj.t_start
        after = t > traj.t_end
        inside = ~(before | after)
        if np.any(inside):
            if self._sol is not None:
                out[:, inside] = self._sol(t[inside])[1:]
            else:
                out[:, inside] = self._end[:, None]
        for mask, ref, t_ref in ((before, self._start, traj.t_start), (after, self._end, traj.t_end)):
            if np.any(mask):
                shear = _free_coefficient(traj, float(t[mask][0])) * (t[mask] - t_ref)
                out[0, mask] = ref[0] + shear * ref[1]
                out[1, mask] = ref[1]
                out[2, mask] = ref[2] + shear * ref[3]
                out[3, mask] = ref[3]
        return out

    def green(self, s: ArrayLike, t: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        """(dz_s(t), dP_s(t)) assembled from the basis."""
        phi_s = self.evaluate(s)
        phi_t = self.evaluate(t)
        dz = (phi_s[0] * phi_t[2] - phi_s[2] * phi_t[0]) / BASIS_PRODUCT
        dP = (phi_s[0] * phi_t[3] - phi_s[2] * phi_t[1]) / BASIS_PRODUCT
        if np.ndim(s) == 0 and np.ndim(t) == 0:
            return float(dz[0]), float(dP[0])
        return dz, dP

    def symplectic_drift(self) -> float:
        """Largest relative change of <phi1|phi2> over the solver steps."""
        phi1 = (self.step_states[0], self.step_states[1])
        phi2 = (self.step_states[2], self.step_states[3])
        product = symplectic(phi1, phi2)
        return float(np.max(np.abs(product - BASIS_PRODUCT)) / abs(BASIS_PRODUCT))

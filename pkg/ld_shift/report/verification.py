"""Verification suite: every identity the routes must satisfy, as one report."""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..config import RunConfig
from ..errors import LDShiftError
from ..jacobi import (
    JacobiBasis,
    ShiftReport,
    classical_shift_closed,
    classical_shift_green,
    momentum_shift,
    oracle_linear_response,
    propagate,
)
from ..ldforce import f_ld_at, larmor_energy, work_done
from ..model import ProfileShape, SimulationConfig, potential_eval, reflect_scenario, support
from ..numerics import gauss_legendre, relative_difference
from ..qshift import (
    DerivativeMode,
    WindowFunction,
    amplitude_direct,
    amplitude_ibp,
    quantum_shift_angular,
    quantum_shift_reduced,
    radiated_energy,
    soft_limit,
    soft_limit_extrapolation,
)
from ..trajectory import (
    Trajectory,
    XiFrame,
    build_trajectory,
    dzdp_finite_difference,
    dzdp_fixed_t,
    integrate_worldline,
    kappa,
)
from .shift_report import build_shift_report

logger = logging.getLogger(__name__)

SAMPLE_TIMES = 10
RANDOM_POSITIONS = 100
ANTISYMMETRY_PAIRS = 20
AMPLITUDE_POINTS = 10
SOFT_COS_THETA = 0.5
LINEARITY_FACTOR = 4.0
EDGE_OFFSET = 1e-12
# stencil step relative to the step width
STENCIL_STEP = 1e-3


@dataclass
class Check:
    """One verified property: what was measured against which tolerance."""
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""


CheckResult = Tuple[float, float, str]


class Verifier:
    """
    Runs the invariant checks of every module on one scenario.

    Random sample points come from a generator seeded by the run config, so a
    rerun with the same config reproduces the report exactly.
    """

    def __init__(self, config: RunConfig, include_fd: bool = True):
        self.config = config
        self.include_fd = include_fd
        self.rng = np.random.default_rng(config.run.seed)
        self.traj = build_trajectory(config.potential, config.particle, config=config.simulation)
        self._report: Optional[ShiftReport] = None

    @property
    def sim(self) -> SimulationConfig:
        return self.config.simulation

    @property
    def report(self) -> ShiftReport:
        """Every shift route on the scenario, computed once."""
        if self._report is None:
            self._report = build_shift_report(self.traj, include_fd=self.include_fd)
        return self._report

    # -- model -------------------------------------------------------------

    def check_flat_regions(self) -> CheckResult:
        """V = V0 before the step and 0 after it; V', V'' vanish outside the support."""
        profile = self.config.potential
        lo, hi = support(profile)
        left = np.linspace(lo - 1.0, -profile.Z1, 101)
        right = np.linspace(-profile.Z2, 0.0, 101)
        v_left, vp_left, vpp_left = potential_eval(profile, left)
        v_right, vp_right, vpp_right = potential_eval(profile, right)
        beyond_left, beyond_right = left < lo, right > hi
        measured = max(
            float(np.max(np.abs(v_left - profile.V0))),
            float(np.max(np.abs(v_right))),
            float(np.max(np.abs(vp_left[beyond_left]), initial=0.0)),
            float(np.max(np.abs(vpp_left[beyond_left]), initial=0.0)),
            float(np.max(np.abs(vp_right[beyond_right]), initial=0.0)),
            float(np.max(np.abs(vpp_right[beyond_right]), initial=0.0)),
        )
        exact = profile.shape is ProfileShape.QUINTIC
        tolerance = 0.0 if exact else profile.eps_profile
        return measured, tolerance, "exact" if exact else "to eps_profile"

    def check_continuity(self) -> CheckResult:
        """V, V' and V'' agree on both sides of the step edges and the support ends."""
        profile = self.config.potential
        width = profile.width
        scale = np.array([1.0, width, width**2]) / (abs(profile.V0) or 1.0)
        worst = 0.0
        for edge in sorted({-profile.Z1, -profile.Z2, *support(profile)}):
            left = np.array(potential_eval(profile, edge - EDGE_OFFSET))
            right = np.array(potential_eval(profile, edge + EDGE_OFFSET))
            worst = max(worst, float(np.max(np.abs(left - right) * scale)))
        return worst, 1e-9, f"offset {EDGE_OFFSET:g}, scaled by V0 and the step width"

    def check_potential_derivatives(self) -> CheckResult:
        """V' and V'' against 5-point stencils of V at random interior points."""
        profile = self.config.potential
        h = STENCIL_STEP * profile.width
        z = self.rng.uniform(-profile.Z1 + 3 * h, -profile.Z2 - 3 * h, RANDOM_POSITIONS)
        _, vp, vpp = potential_eval(profile, z)
        fm2, fm1, f0, fp1, fp2 = (np.asarray(potential_eval(profile, z + k * h)[0]) for k in (-2, -1, 0, 1, 2))
        d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
        d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
        worst = 0.0
        for exact, numeric in ((vp, d1), (vpp, d2)):
            scale = float(np.max(np.abs(exact)))
            if scale:
                worst = max(worst, float(np.max(np.abs(exact - numeric))) / scale)
        return worst, 1e-6, f"{RANDOM_POSITIONS} random points"

    # -- trajectory --------------------------------------------------------

    def check_worldline(self) -> CheckResult:
        """Quadrature-built z(t) against an independent ODE integration."""
        traj = self.traj
        t = np.linspace(traj.t_min, traj.t_min * 1e-3, 50)
        reference = integrate_worldline(traj, t)
        z = np.asarray(traj.z_at(t))
        scale = max(1.0, float(np.max(np.abs(reference))))
        return float(np.max(np.abs(z - reference)) / scale), 1e-8, "max |z - z_ode| / max(1, |z|)"

    def check_energy_conservation(self) -> CheckResult:
        samples = self.traj.samples
        particle = self.traj.particle
        v, _, _ = potential_eval(self.traj.profile, samples.z)
        residual = np.abs(particle.m * samples.gamma + v - particle.energy) / particle.energy
        return float(np.max(residual)), 1e-10, "m gamma + V = E at every sample"

    def check_kappa(self) -> CheckResult:
        """kappa(z) = m gamma zdot at random positions."""
        traj = self.traj
        z = self.rng.uniform(traj.z_min, 0.0, RANDOM_POSITIONS)
        local = np.asarray(kappa(traj.profile, traj.particle, z))
        expected = traj.particle.m * traj.state(z).proper_velocity
        return float(np.max(np.abs(local - expected) / expected)), 1e-12, f"{RANDOM_POSITIONS} random z"

    def check_monotone_xi(self) -> CheckResult:
        """1 - zdot cos(theta) stays positive at every angular quadrature node."""
        nodes, _ = gauss_legendre(self.sim.quad_order_angle)
        slowest = XiFrame(self.traj, nodes).min_dxi_dt()
        return -slowest, 0.0, f"min d xi/dt = {slowest:.6g} over {len(nodes)} nodes"

    def check_chain_rule(self) -> CheckResult:
        """(dt/dp)_xi = cos(theta) (dz/dp)_xi at every sample."""
        nodes, _ = gauss_legendre(self.sim.quad_order_angle)
        c = nodes[:, None]
        kin = XiFrame(self.traj, c).at_time(self.traj.samples.t)
        expected = c * kin.dzdp_xi
        scale = float(np.max(np.abs(expected)))
        measured = float(np.max(np.abs(kin.dtdp_xi - expected))) / scale if scale else 0.0
        return measured, 1e-14, f"{len(nodes)} directions"

    def check_momentum_partial(self) -> CheckResult:
        """(dz/dp)_t in closed form against differences of rebuilt trajectories."""
        traj = self.traj
        t = np.sort(self.rng.uniform(traj.t_min, 0.0, SAMPLE_TIMES))
        exact = np.asarray(dzdp_fixed_t(traj, t))
        numeric = np.asarray(dzdp_finite_difference(traj, t))
        scale = float(np.max(np.abs(exact)))
        measured = float(np.max(np.abs(exact - numeric)) / scale) if scale else 0.0
        return measured, 1e-5, f"{SAMPLE_TIMES} random times"

    # -- ldforce -----------------------------------------------------------

    def check_force_forms(self) -> CheckResult:
        sample = f_ld_at(self.traj.samples, self.traj.particle.alpha_c)
        scale = float(np.max(np.abs(sample.f_ld)))
        measured = float(np.max(sample.discrepancy) / scale) if scale else 0.0
        return measured, 1e-10, f"{self.sim.sample_count} samples"

    def check_force_support(self) -> CheckResult:
        """F_LD is exactly zero at samples outside the force window."""
        samples = self.traj.samples
        t_start, t_end = self.traj.support_times
        outside = (samples.t < t_start) | (samples.t > t_end)
        force = np.asarray(f_ld_at(samples, self.traj.particle.alpha_c).f_ld)
        measured = float(np.max(np.abs(force[outside]), initial=0.0))
        return measured, 0.0, f"{int(np.count_nonzero(outside))} samples outside"

    def check_work_balance(self) -> CheckResult:
        """LD work equals minus the Larmor energy."""
        work, _ = work_done(self.traj)
        larmor, _ = larmor_energy(self.traj)
        return relative_difference(work, -larmor), 1e-7, "work + larmor energy"

    def check_time_reversal(self) -> CheckResult:
        cfg = self.config
        profile, particle = reflect_scenario(cfg.potential, cfg.particle)
        reflected = build_trajectory(profile, particle, config=cfg.simulation)
        work, _ = work_done(self.traj)
        work_reflected, _ = work_done(reflected)
        return relative_difference(work, work_reflected), 1e-7, "work of the reflected scenario"

    # -- jacobi ------------------------------------------------------------

    def check_symplectic(self) -> CheckResult:
        return JacobiBasis(self.traj).symplectic_drift(), 1e-10, "basis pair product"

    def check_antisymmetry(self) -> CheckResult:
        """
        dz_s(t) = -dz_t(s) from two independent propagations per pair,
        scaled by the free-flight shear A_max |t - s|.
        """
        traj = self.traj
        pairs = self.rng.uniform(traj.t_min, 0.0, (ANTISYMMETRY_PAIRS, 2))
        a_max = float(np.max(1.0 / (traj.particle.m * traj.samples.gamma**3)))
        worst = 0.0
        for s, t in pairs:
            forward = propagate(traj, s, t)[0]
            backward = propagate(traj, t, s)[0]
            scale = max(abs(forward), a_max * abs(t - s))
            if scale > 0.0:
                worst = max(worst, abs(forward + backward) / scale)
        return worst, 1e-8, f"{ANTISYMMETRY_PAIRS} random pairs"

    def check_momentum_shift(self) -> CheckResult:
        """Green-function delta P(0) against the brute-force oracle."""
        green = momentum_shift(self.traj, 0.0)
        return relative_difference(green, self.report.dP_oracle or 0.0), self.sim.route_rel_tol, "delta P(0)"

    # -- shift -------------------------------------------------------------

    def check_linearity(self) -> CheckResult:
        """Every primary route scales exactly with alpha_c."""
        cfg = self.config
        scaled = cfg.particle.model_copy(update={"alpha_c": LINEARITY_FACTOR * cfg.particle.alpha_c})
        other = Trajectory(cfg.potential, scaled, cfg.simulation)
        routes: Dict[str, Callable[[Trajectory], float]] = {
            "dz_classical_closed": classical_shift_closed,
            "dz_classical_green": classical_shift_green,
            "dz_oracle_linear_response": lambda traj: oracle_linear_response(traj)[0],
            "dzq_reduced": quantum_shift_reduced,
            "dzq_angular": lambda traj: quantum_shift_angular(traj, DerivativeMode.ANALYTIC),
        }
        base = self.report.values()
        worst = max(
            relative_difference(LINEARITY_FACTOR * base[name], route(other)) for name, route in routes.items()
        )
        return worst, 1e-10, f"alpha_c x {LINEARITY_FACTOR:g}, {len(routes)} routes"

    def check_sign_contract(self) -> CheckResult:
        """All routes give a shift of the same sign."""
        signs = np.sign(list(self.report.values().values()))
        disagreeing = int(np.count_nonzero(signs != signs[0]))
        return float(disagreeing), 0.0, f"routes disagreeing with the closed form (sign {signs[0]:+.0f})"

    def check_routes(self) -> Tuple[CheckResult, Optional[CheckResult]]:
        report = self.report
        primary = (report.max_relative_difference(), self.sim.route_rel_tol, "primary routes pairwise")
        if report.dzq_angular_fd is None:
            return primary, None
        fd = max(d["rel"] for name, d in report.differences.items() if "dzq_angular_fd" in name)
        return primary, (fd, self.sim.fd_route_rel_tol, "fd-dp against every route")

    # -- qshift ------------------------------------------------------------

    def check_amplitude_forms(self) -> CheckResult:
        """Direct and integrated-by-parts amplitudes at random (k, cos theta)."""
        window = WindowFunction.for_trajectory(self.traj)
        k = self.rng.uniform(0.5, 10.0, AMPLITUDE_POINTS)
        c = self.rng.uniform(-0.95, 0.95, AMPLITUDE_POINTS)
        worst = max(
            amplitude_ibp(self.traj, ki, ci, window).difference(amplitude_direct(self.traj, ki, ci, window))
            for ki, ci in zip(k, c)
        )
        return float(worst), 1e-6, f"{AMPLITUDE_POINTS} random (k, cos theta)"

    def check_soft_limit(self) -> CheckResult:
        expected = soft_limit(self.traj, SOFT_COS_THETA)
        extrapolated = soft_limit_extrapolation(self.traj, SOFT_COS_THETA)
        scale = max(float(np.linalg.norm(expected)), self.traj.particle.charge)
        measured = float(np.linalg.norm(extrapolated - expected)) / scale if scale else 0.0
        return measured, 1e-3, f"cos theta = {SOFT_COS_THETA}"

    def check_energy_balance(self) -> CheckResult:
        energy = radiated_energy(self.traj)
        if self.traj.particle.alpha_c == 0.0:
            return abs(energy.spectral), 0.0, "no coupling"
        if self.traj.profile.is_free:
            # no acceleration: only the window residual is left
            bound = 10.0 * self.traj.particle.alpha_c / self.sim.energy_window_rolloff
            return abs(energy.spectral), bound, "window residual"
        return energy.relative_difference, self.sim.energy_rel_tol, f"k_max = {energy.k_max:.4g}"

    def run(self) -> Dict[str, Any]:
        """
        Run every check.

        Returns:
            Dictionary with 'valid', 'checks', 'errors' and the config echo
        """
        results: Dict[str, Any] = {"valid": True, "checks": [], "errors": [], "config": self.config.echo()}
        single: List[Tuple[str, Callable[[], CheckResult]]] = [
            ("model.flat_regions", self.check_flat_regions),
            ("model.c2_continuity", self.check_continuity),
            ("model.finite_difference", self.check_potential_derivatives),
            ("trajectory.worldline_oracle", self.check_worldline),
            ("trajectory.energy_conservation", self.check_energy_conservation),
            ("trajectory.kappa_identity", self.check_kappa),
            ("trajectory.monotone_xi", self.check_monotone_xi),
            ("trajectory.chain_rule", self.check_chain_rule),
            ("trajectory.momentum_partial", self.check_momentum_partial),
            ("ldforce.form_equivalence", self.check_force_forms),
            ("ldforce.support", self.check_force_support),
            ("ldforce.work_energy_balance", self.check_work_balance),
            ("ldforce.time_reversal", self.check_time_reversal),
            ("jacobi.symplectic_drift", self.check_symplectic),
            ("jacobi.antisymmetry", self.check_antisymmetry),
            ("jacobi.momentum_shift_oracle", self.check_momentum_shift),
            ("shift.alpha_linearity", self.check_linearity),
            ("shift.sign_contract", self.check_sign_contract),
            ("qshift.amplitude_ibp_identity", self.check_amplitude_forms),
            ("qshift.soft_limit", self.check_soft_limit),
            ("qshift.energy_balance", self.check_energy_balance),
        ]
        for name, check in single:
            self._record(results, name, lambda check=check: [check()])

        def routes() -> List[CheckResult]:
            primary, fd = self.check_routes()
            return [primary] if fd is None else [primary, fd]

        self._record(results, "shift.route_equality", routes, names=["shift.route_equality", "shift.fd_route"])
        failed = [c["name"] for c in results["checks"] if not c["passed"]]
        logger.info(f"Verification: {len(results['checks']) - len(failed)} of {len(results['checks'])} checks passed")
        if failed:
            logger.warning(f"Failed checks: {', '.join(failed)}")
        return results

    def _record(
        self,
        results: Dict[str, Any],
        name: str,
        check: Callable[[], List[CheckResult]],
        names: Optional[List[str]] = None,
    ) -> None:
        try:
            outcomes = check()
        except LDShiftError as e:
            logger.error(f"Check {name} raised: {e}")
            results["valid"] = False
            results["errors"].append(f"{name}: {e}")
            results["checks"].append(asdict(Check(name, float("nan"), float("nan"), False, str(e))))
            return
        for label, (measured, tolerance, detail) in zip(names or [name], outcomes):
            passed = bool(measured <= tolerance)
            results["checks"].append(asdict(Check(label, float(measured), float(tolerance), passed, detail)))
            if not passed:
                results["valid"] = False
            logger.debug(f"{label}: {measured:.3e} (tolerance {tolerance:.1e})")


def run_verification(config: RunConfig, include_fd: bool = True) -> Dict[str, Any]:
    """Verify every invariant on the scenario of ``config``."""
    return Verifier(config, include_fd=include_fd).run()

"""Assemble every position-shift route into one report."""

import logging

from ..jacobi import (
    JacobiBasis,
    ShiftReport,
    classical_shift_closed,
    classical_shift_green,
    momentum_shift,
    oracle_linear_response,
)
from ..qshift import DerivativeMode, quantum_shift_angular, quantum_shift_reduced
from ..trajectory import Trajectory

logger = logging.getLogger(__name__)


def build_shift_report(traj: Trajectory, include_fd: bool = True) -> ShiftReport:
    """
    Run the classical, oracle and quantum routes on one trajectory.

    The fd-dp angular route rebuilds trajectories and is the slowest; it can
    be skipped with ``include_fd=False``.
    """
    cfg = traj.config
    basis = JacobiBasis(traj)
    closed, closed_err = classical_shift_closed(traj, full_output=True)
    green, green_err = classical_shift_green(traj, full_output=True, basis=basis)
    dP_green = momentum_shift(traj, 0.0, basis=basis)
    oracle_dz, oracle_dP = oracle_linear_response(traj)
    reduced, reduced_err = quantum_shift_reduced(traj, full_output=True)
    angular, angular_err = quantum_shift_angular(traj, DerivativeMode.ANALYTIC, full_output=True)
    errors = {
        "dz_classical_closed": closed_err,
        "dz_classical_green": green_err,
        # solver tolerance bound
        "dz_oracle_linear_response": cfg.ode_rel_tol * abs(oracle_dz) + cfg.ode_abs_tol,
        "dzq_reduced": reduced_err,
        "dzq_angular": angular_err,
    }

    angular_fd = None
    if include_fd:
        angular_fd, errors["dzq_angular_fd"] = quantum_shift_angular(
            traj, DerivativeMode.FINITE_DIFFERENCE, full_output=True
        )

    report = ShiftReport(
        dz_classical_closed=closed,
        dz_classical_green=green,
        dz_oracle_linear_response=oracle_dz,
        dzq_reduced=reduced,
        dzq_angular=angular,
        dzq_angular_fd=angular_fd,
        dP_green=float(dP_green),
        dP_oracle=oracle_dP,
        errors=errors,
        route_rel_tol=cfg.route_rel_tol,
        fd_route_rel_tol=cfg.fd_route_rel_tol,
    )
    logger.info(
        f"Shift routes: closed={closed:.10e}, green={green:.10e}, reduced={reduced:.10e}, "
        f"angular={angular:.10e}, max rel diff={report.max_relative_difference():.2e}"
    )
    return report

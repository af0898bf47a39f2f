"""The verification suite on the canonical scenario."""

import pytest

from ld_shift.config import RunConfig
from ld_shift.report import Verifier, run_verification
from ld_shift.report import verification as verification_module


@pytest.fixture(scope="module")
def results():
    return run_verification(RunConfig(), include_fd=False)


def test_canonical_scenario_is_valid(results):
    failed = [c for c in results["checks"] if not c["passed"]]
    assert results["valid"], failed
    assert results["errors"] == []


def test_every_module_is_checked(results):
    prefixes = {c["name"].split(".")[0] for c in results["checks"]}
    assert prefixes == {"model", "trajectory", "ldforce", "jacobi", "shift", "qshift"}
    assert "shift.fd_route" not in {c["name"] for c in results["checks"]}


def test_module_invariants_listed(results):
    names = {c["name"] for c in results["checks"]}
    assert {
        "model.flat_regions",
        "model.c2_continuity",
        "model.finite_difference",
        "trajectory.energy_conservation",
        "trajectory.kappa_identity",
        "trajectory.monotone_xi",
        "trajectory.chain_rule",
        "ldforce.support",
        "jacobi.momentum_shift_oracle",
        "shift.sign_contract",
    } <= names


def test_quintic_flat_regions_are_exact(results):
    check = next(c for c in results["checks"] if c["name"] == "model.flat_regions")
    assert check["measured"] == 0.0
    assert check["tolerance"] == 0.0


def test_config_echo(results):
    assert results["config"]["particle"]["alpha_c"] == 0.01


def test_sample_points_follow_seed():
    config = RunConfig()
    first = Verifier(config).check_momentum_partial()
    second = Verifier(config).check_momentum_partial()
    assert first == second


def test_free_particle_energy_check():
    config = RunConfig().with_parameter("V0", 0.0)
    measured, bound, detail = Verifier(config).check_energy_balance()
    assert detail == "window residual"
    assert measured <= bound


def test_zero_coupling_is_degenerate_but_valid():
    results = run_verification(RunConfig().with_parameter("alpha_c", 0.0), include_fd=False)
    failed = [c for c in results["checks"] if not c["passed"]]
    assert results["valid"], failed
    linearity = next(c for c in results["checks"] if c["name"] == "shift.alpha_linearity")
    assert linearity["measured"] == 0.0


class TestAntisymmetryCheck:
    def test_independent_propagations_agree(self):
        measured, tolerance, _ = Verifier(RunConfig()).check_antisymmetry()
        assert measured <= tolerance

    def test_detects_a_symmetric_propagator(self, monkeypatch):
        def symmetric(_traj, s, t):
            return abs(t - s), 1.0

        monkeypatch.setattr(verification_module, "propagate", symmetric)
        measured, tolerance, _ = Verifier(RunConfig()).check_antisymmetry()
        assert measured > tolerance

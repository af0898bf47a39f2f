"""Tests for run configuration loading and overrides."""

import pytest

from ld_shift import config as config_module
from ld_shift.config import RunConfig, Settings, build_run_config, load_run_config
from ld_shift.errors import ConfigError


def write_yaml(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadRunConfig:
    def test_defaults_without_file(self):
        config = load_run_config()
        assert config.particle.p == 1.0
        assert config.potential.V0 == 0.2
        assert config.simulation.quad_order_angle == 64
        assert config.run.formats == ["csv", "json"]

    def test_sections_from_yaml(self, tmp_path):
        path = write_yaml(
            tmp_path,
            "particle:\n  p: 3.0\n  alpha_c: 0.02\n"
            "potential:\n  V0: -0.3\n  shape: tanh\n"
            "simulation:\n  quad_order_angle: 32\n"
            "run:\n  formats: [json]\n  seed: 7\n",
        )
        config = load_run_config(path)
        assert config.particle.p == 3.0
        assert config.potential.shape.value == "tanh"
        assert config.simulation.quad_order_angle == 32
        assert config.run.formats == ["json"]
        assert config.run.seed == 7

    def test_unknown_key_is_named(self, tmp_path):
        path = write_yaml(tmp_path, "particle:\n  mass: 2.0\n")
        with pytest.raises(ConfigError) as exc:
            load_run_config(path)
        assert exc.value.key == "particle.mass"
        assert "particle.mass" in str(exc.value)

    def test_invalid_value(self, tmp_path):
        path = write_yaml(tmp_path, "simulation:\n  grid_panels: 2\n")
        with pytest.raises(ConfigError) as exc:
            load_run_config(path)
        assert exc.value.key == "simulation.grid_panels"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_run_config(tmp_path / "absent.yaml")

    def test_malformed_yaml(self, tmp_path):
        with pytest.raises(ConfigError):
            load_run_config(write_yaml(tmp_path, "particle: [p: 1\n"))

    def test_not_a_mapping(self, tmp_path):
        with pytest.raises(ConfigError):
            load_run_config(write_yaml(tmp_path, "- 1\n- 2\n"))

    def test_empty_file_means_defaults(self, tmp_path):
        assert load_run_config(write_yaml(tmp_path, "")) == RunConfig()


class TestOverrides:
    def test_run_overrides(self):
        config = RunConfig().with_overrides(output_dir="out", workers=3, seed=None)
        assert config.run.output_dir == "out"
        assert config.run.workers == 3
        assert config.run.seed == RunConfig().run.seed

    def test_no_overrides_returns_same(self):
        config = RunConfig()
        assert config.with_overrides(seed=None) is config

    def test_invalid_override(self):
        with pytest.raises(ConfigError) as exc:
            RunConfig().with_overrides(workers=0)
        assert exc.value.key == "run.workers"

    @pytest.mark.parametrize(
        "name,section", [("p", "particle"), ("alpha_c", "particle"), ("V0", "potential"), ("Z2", "potential")]
    )
    def test_with_parameter(self, name, section):
        config = RunConfig().with_parameter(name, 0.5)
        assert getattr(getattr(config, section), name) == 0.5

    def test_with_unknown_parameter(self):
        with pytest.raises(ConfigError):
            RunConfig().with_parameter("m", 2.0)

    def test_parameter_breaking_geometry(self):
        with pytest.raises(ConfigError):
            RunConfig().with_parameter("Z2", 3.0)

    def test_echo_is_plain_data(self):
        echo = build_run_config({"potential": {"shape": "quintic"}}).echo()
        assert echo["potential"]["shape"] == "quintic"
        assert echo["run"]["formats"] == ["csv", "json"]


class TestSettings:
    def test_environment(self, monkeypatch):
        monkeypatch.setenv("LD_SHIFT_WORKERS", "4")
        monkeypatch.setenv("LD_SHIFT_LOG_LEVEL", "DEBUG")
        settings = Settings()
        assert settings.workers == 4
        assert settings.log_level == "DEBUG"

    def test_run_defaults_follow_settings(self, monkeypatch):
        monkeypatch.setattr(config_module, "settings", Settings(output_dir="elsewhere", seed=99))
        run = RunConfig().run
        assert run.output_dir == "elsewhere"
        assert run.seed == 99

"""Configuration management for LD-Shift."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigError
from .model import ParticleParams, PotentialProfile, SimulationConfig

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]


class Settings(BaseSettings):
    """Ambient settings, read from LD_SHIFT_* variables and .env."""

    model_config = SettingsConfigDict(env_prefix="LD_SHIFT_", env_file=".env", env_file_encoding="utf-8")

    log_level: str = "INFO"
    workers: int = 1
    output_dir: str = "results"
    seed: int = 12345


settings = Settings()


class RunSection(BaseModel):
    """Output and execution options of a run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(default_factory=lambda: settings.seed)
    formats: List[OutputFormat] = Field(default_factory=lambda: ["csv", "json"])
    output_dir: str = Field(default_factory=lambda: settings.output_dir)
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)


class RunConfig(BaseModel):
    """Everything a command needs: scenario, numerics and run options."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    particle: ParticleParams = Field(default_factory=ParticleParams)
    potential: PotentialProfile = Field(default_factory=PotentialProfile)
    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    run: RunSection = Field(default_factory=RunSection)

    def with_overrides(self, **run: Any) -> "RunConfig":
        """Copy with run options replaced; None values are ignored."""
        updates = {key: value for key, value in run.items() if value is not None}
        if not updates:
            return self
        return build_run_config({**self.model_dump(), "run": {**self.run.model_dump(), **updates}})

    def with_parameter(self, name: str, value: float) -> "RunConfig":
        """Copy with one scenario parameter replaced (p, alpha_c, V0, Z1, Z2)."""
        section = SWEEP_PARAMETERS.get(name)
        if section is None:
            raise ConfigError(
                f"unknown sweep parameter '{name}'; choose from {', '.join(SWEEP_PARAMETERS)}", key=name
            )
        data = self.model_dump()
        data[section][name] = value
        return build_run_config(data)

    def echo(self) -> Dict[str, Any]:
        """JSON-ready copy of the effective configuration."""
        return self.model_dump(mode="json")


SWEEP_PARAMETERS = {"p": "particle", "alpha_c": "particle", "V0": "potential", "Z1": "potential", "Z2": "potential"}


def _error_key(error: Dict[str, Any]) -> str:
    return ".".join(str(part) for part in error.get("loc", ()))


def build_run_config(data: Optional[Dict[str, Any]]) -> RunConfig:
    """
    Validate a nested mapping into a RunConfig.

    Raises:
        ConfigError: naming the first offending key
    """
    try:
        return RunConfig.model_validate(data or {})
    except ValidationError as e:
        first = e.errors()[0]
        key = _error_key(first)
        raise ConfigError(f"invalid configuration key '{key}': {first['msg']}", key=key) from e


def load_run_config(path: Optional[Union[str, Path]] = None) -> RunConfig:
    """Load a YAML run configuration; no path means built-in defaults."""
    if path is None:
        logger.debug("No config file given, using defaults")
        return build_run_config({})
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigError(f"config file not found: {config_path}", key=str(config_path))
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"could not parse {config_path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{config_path} must hold a mapping of sections")
    logger.info(f"Loaded run configuration from {config_path}")
    return build_run_config(data)

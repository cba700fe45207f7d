"""
Run configuration: defaults < YAML file < LBNN_SEED (.env) < command-line flags
"""

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import yaml
from dotenv import load_dotenv

from ..core.errors import ConfigError
from ..core.validator import Validator
from ..tools.evaluator import DEFAULT_INIT_SEED_COUNT
from ..tools.evolution import GaConfig

logger = logging.getLogger(__name__)

SEED_ENV_VAR = 'LBNN_SEED'
NON_RUN_SECTIONS = ('logging',)


@dataclass(frozen=True)
class RunConfig:
    """Every knob of a workbench run."""

    population_size: int = 8192
    n_nodes: int = 5
    mutation_rate: float = 0.01
    elite_count: int = 2
    envs_per_generation: int = 5
    max_generations: int = 200
    stagnation_limit: int = 50
    master_seed: int = 0
    learnable_penalty_lambda: float = 0.0
    retest_interval: int = 1
    training_passes: int = 1
    init_seeds: Tuple[int, ...] = tuple(range(DEFAULT_INIT_SEED_COUNT))
    workers: int = 1
    out: str = 'runs/latest'
    state_bit_cap: int = 24

    def __post_init__(self):
        object.__setattr__(self, 'init_seeds', tuple(self.init_seeds))
        errors = Validator.validate_run_config(asdict(self))
        if errors:
            raise ConfigError(errors)

    def to_ga_config(self) -> GaConfig:
        ga_fields = {f.name for f in fields(GaConfig)}
        return GaConfig(**{k: v for k, v in asdict(self).items() if k in ga_fields})

    def with_overrides(self, overrides: Mapping[str, Any]) -> 'RunConfig':
        """Copy with every non-None override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes) if changes else self


class ConfigLoader:
    """Builds a RunConfig from its layered sources."""

    @staticmethod
    def read_yaml(path: str) -> Dict[str, Any]:
        """
        Read the run fields of a YAML config file.

        Raises:
            ConfigError: if the file is missing, unparsable or has unknown keys
        """
        if not Path(path).exists():
            raise ConfigError([f"config: file not found: {path}"])
        try:
            with open(path, 'r') as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError([f"config: cannot parse {path}: {e}"]) from e
        if not isinstance(data, dict):
            raise ConfigError([f"config: {path} must hold a mapping"])

        known = {f.name for f in fields(RunConfig)}
        values = {k: v for k, v in data.items() if k not in NON_RUN_SECTIONS}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError([f"{key}: unknown configuration key" for key in unknown])
        if 'init_seeds' in values and isinstance(values['init_seeds'], list):
            values['init_seeds'] = tuple(values['init_seeds'])
        return values

    @staticmethod
    def seed_from_env(dotenv_path: Optional[str] = None) -> Optional[int]:
        """LBNN_SEED from the process environment, after loading .env if present."""
        load_dotenv(dotenv_path, override=False)
        return Validator.parse_seed(os.environ.get(SEED_ENV_VAR))

    @staticmethod
    def load(config_file: Optional[str] = None,
             overrides: Optional[Mapping[str, Any]] = None,
             dotenv_path: Optional[str] = None) -> RunConfig:
        """
        Resolve the run configuration.

        Args:
            config_file: Optional YAML file
            overrides: Command-line values; None means "not given"
            dotenv_path: Optional .env file (default: search from the working directory)

        Returns:
            Validated RunConfig
        """
        values: Dict[str, Any] = {}
        if config_file:
            values.update(ConfigLoader.read_yaml(config_file))
            logger.debug(f"Loaded configuration from {config_file}")

        env_seed = ConfigLoader.seed_from_env(dotenv_path)
        if env_seed is not None:
            values['master_seed'] = env_seed
            logger.debug(f"Seed {env_seed} taken from {SEED_ENV_VAR}")

        values.update({k: v for k, v in (overrides or {}).items() if v is not None})
        try:
            return RunConfig(**values)
        except TypeError as e:
            raise ConfigError([f"config: {e}"]) from e

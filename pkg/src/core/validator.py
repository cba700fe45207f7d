"""
Validator - Configuration and input validation
"""

import logging
from numbers import Integral, Real
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


def _is_int(value: Any) -> bool:
    return isinstance(value, Integral) and not isinstance(value, bool)


class Validator:
    """Validates run parameters; validate_* config methods return error lists."""

    @staticmethod
    def validate_node_count(n: Any) -> bool:
        """
        Validate total node count (input + output need at least 2 nodes).

        Args:
            n: Node count

        Returns:
            True if valid, False otherwise
        """
        return _is_int(n) and n >= 2

    @staticmethod
    def validate_population_size(size: Any, elite_count: Any) -> bool:
        """
        Validate population size against the elite count.

        Returns:
            True if size is even and at least twice the elite count
        """
        if not (_is_int(size) and _is_int(elite_count)):
            return False
        return size > 0 and size % 2 == 0 and elite_count >= 0 and size >= 2 * elite_count

    @staticmethod
    def validate_rate(rate: Any) -> bool:
        """Validate a probability in [0, 1]."""
        return isinstance(rate, Real) and not isinstance(rate, bool) and 0.0 <= rate <= 1.0

    @staticmethod
    def validate_seed(seed: Any) -> bool:
        return _is_int(seed) and seed >= 0

    @staticmethod
    def validate_positive_int(value: Any) -> bool:
        return _is_int(value) and value >= 1

    @staticmethod
    def parse_seed(text: Optional[str]) -> Optional[int]:
        """
        Parse a seed from text (e.g. an environment variable).

        Returns:
            Seed, or None if text is empty or not a non-negative integer
        """
        if text is None or not str(text).strip():
            return None
        try:
            seed = int(str(text).strip())
        except ValueError:
            logger.warning(f"Ignoring non-integer seed value: {text!r}")
            return None
        return seed if seed >= 0 else None

    @staticmethod
    def validate_ga_config(config: Dict[str, Any]) -> List[str]:
        """
        Validate genetic algorithm parameters.

        Args:
            config: Dictionary of GaConfig fields

        Returns:
            List of validation error messages naming the field (empty if valid)
        """
        errors = []

        if not Validator.validate_node_count(config.get('n_nodes')):
            errors.append(f"n_nodes: must be an integer >= 2, got {config.get('n_nodes')!r}")

        size = config.get('population_size')
        elite = config.get('elite_count')
        if not _is_int(elite) or elite < 0:
            errors.append(f"elite_count: must be a non-negative integer, got {elite!r}")
        elif not Validator.validate_population_size(size, elite):
            errors.append(f"population_size: must be an even integer >= 2 * elite_count "
                          f"({2 * elite}), got {size!r}")

        if not Validator.validate_rate(config.get('mutation_rate')):
            errors.append(f"mutation_rate: must be in [0, 1], got {config.get('mutation_rate')!r}")

        for name in ('envs_per_generation', 'max_generations', 'stagnation_limit',
                     'retest_interval', 'training_passes'):
            if not Validator.validate_positive_int(config.get(name)):
                errors.append(f"{name}: must be a positive integer, got {config.get(name)!r}")

        if not Validator.validate_seed(config.get('master_seed')):
            errors.append(f"master_seed: must be a non-negative integer, "
                          f"got {config.get('master_seed')!r}")

        lam = config.get('learnable_penalty_lambda')
        if not isinstance(lam, Real) or isinstance(lam, bool) or lam < 0:
            errors.append(f"learnable_penalty_lambda: must be >= 0, got {lam!r}")

        seeds = config.get('init_seeds')
        if not seeds or not all(Validator.validate_seed(s) for s in seeds):
            errors.append("init_seeds: must be a non-empty list of non-negative integers")

        return errors

    @staticmethod
    def validate_run_config(config: Dict[str, Any]) -> List[str]:
        """
        Validate a complete run configuration (GA fields plus CLI options).

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = Validator.validate_ga_config(config)

        if not Validator.validate_positive_int(config.get('workers')):
            errors.append(f"workers: must be a positive integer, got {config.get('workers')!r}")

        if not config.get('out'):
            errors.append("out: output directory is required")

        cap = config.get('state_bit_cap')
        if not Validator.validate_positive_int(cap) or cap > 30:
            errors.append(f"state_bit_cap: must be an integer in [1, 30], got {cap!r}")

        return errors

"""
Evolution - Generational genetic algorithm over LBNN genomes

Fitness-proportional selection with replacement, single-point crossover,
per-bit mutation and elitism. Each generation every genome is scored on the
same freshly drawn environments; the best network is retested on the full
environment set, and the run stops when that retest is perfect, when the best
fitness stagnates, or at the generation cap.
"""

import contextlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ConfigError, DimensionMismatchError
from ..core.genome import Genome, decode, decode_population, genome_length, random_population
from ..core.network import LearningRule, NetworkSpec
from ..core.rng import RandomStreams
from ..core.validator import Validator
from .evaluator import (DEFAULT_INIT_SEED_COUNT, EvalReport, enumerate_all_environments,
                        evaluate, evaluate_batch, sample_environments)

logger = logging.getLogger(__name__)

# Lambda used when the learnable-weight penalty is switched on without a value:
# small enough that a perfect network with every cell learnable still beats N = 1.
PENALTY_VARIANT_LAMBDA = 0.001


@dataclass(frozen=True)
class GaConfig:
    """Genetic algorithm parameters."""

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

    def __post_init__(self):
        object.__setattr__(self, 'init_seeds', tuple(int(s) for s in self.init_seeds))
        errors = Validator.validate_ga_config(asdict(self))
        if errors:
            raise ConfigError(errors)

    @property
    def genome_length(self) -> int:
        return genome_length(self.n_nodes)


class TerminationReason(str, Enum):
    PERFECT = 'perfect'
    STAGNATED = 'stagnated'
    CAPPED = 'capped'


@dataclass(frozen=True)
class GenerationStats:
    """Per-generation record; env-independent values are None when not retested."""

    generation: int
    max_fitness: Fraction
    avg_fitness: float
    best_fitness: Fraction
    env_independent_fitness: Optional[Fraction]
    env_mean_fitness: Optional[float]
    best_genome: Genome
    rule_of_best: LearningRule
    best_learnable_count: int

    def to_row(self) -> Dict[str, Any]:
        return {
            'generation': self.generation,
            'max_fitness': float(self.max_fitness),
            'avg_fitness': self.avg_fitness,
            'env_independent_fitness': (float(self.env_independent_fitness)
                                        if self.env_independent_fitness is not None else None),
        }


@dataclass
class RunLog:
    """Outcome of one evolutionary run."""

    config: GaConfig
    generations: List[GenerationStats] = field(default_factory=list)
    termination: Optional[TerminationReason] = None

    @property
    def final(self) -> GenerationStats:
        return self.generations[-1]

    @property
    def perfect_genome(self) -> Optional[Genome]:
        if self.termination is TerminationReason.PERFECT:
            return self.final.best_genome
        return None

    def best_genome(self) -> Genome:
        """Best genome of the last generation."""
        return self.final.best_genome

    def fitness_rows(self) -> List[Dict[str, Any]]:
        return [stats.to_row() for stats in self.generations]

    def summary(self) -> Dict[str, Any]:
        final = self.final
        spec = decode(final.best_genome)
        return {
            'termination': self.termination.value if self.termination else None,
            'generations': len(self.generations),
            'config': {k: (list(v) if isinstance(v, tuple) else v)
                       for k, v in asdict(self.config).items()},
            'best_genome': final.best_genome.to_string(),
            'best_fitness': str(final.best_fitness),
            'env_independent_fitness': (str(final.env_independent_fitness)
                                        if final.env_independent_fitness is not None else None),
            'rule': final.rule_of_best.to_bits(),
            'rule_is_hebb': final.rule_of_best.is_hebb,
            'learnable_count': final.best_learnable_count,
            'best_network': spec.to_dict(),
        }


# ---------------------------------------------------------------------------
# Operators


def _penalize(fitness: Fraction, learnable_count: int, lam) -> Fraction:
    if lam < 0:
        raise ValueError(f"Penalty lambda must be >= 0, got {lam}")
    if lam == 0:
        return fitness
    return fitness / (1 + Fraction(str(lam)) * learnable_count)


def penalized_fitness(report: EvalReport, spec: NetworkSpec, lam) -> Fraction:
    """
    Fitness divided by (1 + lambda * number of learnable cells).

    Args:
        report: Evaluation report
        spec: Evaluated network
        lam: Penalty weight (>= 0); exact decimal strings and floats are accepted

    Returns:
        Penalised fitness as an exact fraction
    """
    return _penalize(report.fitness, spec.learnable_count, lam)


def _selection_probabilities(fitnesses: Sequence) -> np.ndarray:
    if len(fitnesses) == 0:
        raise ValueError("Cannot select from an empty population")
    weights = np.array([float(f) for f in fitnesses], dtype=np.float64)
    if np.any(weights <= 0):
        raise ValueError("Selection needs strictly positive fitness values")
    return weights / weights.sum()


def _select_indices(fitnesses: Sequence, count: int, rng: np.random.Generator) -> np.ndarray:
    probs = _selection_probabilities(fitnesses)
    return rng.choice(len(probs), size=count, replace=True, p=probs)


def select_pair(genomes: Sequence[Genome], fitnesses: Sequence,
                rng: np.random.Generator) -> Tuple[Genome, Genome]:
    """
    Draw two parents independently, each with probability proportional to fitness.

    A genome may be drawn twice.
    """
    if len(genomes) == 0:
        raise ValueError("Cannot select from an empty population")
    first, second = _select_indices(fitnesses, 2, rng)
    return genomes[int(first)], genomes[int(second)]


def crossover(a: Genome, b: Genome, cutpoint: int) -> Tuple[Genome, Genome]:
    """
    Swap the material after `cutpoint`: (a[:cut] + b[cut:], b[:cut] + a[cut:]).
    """
    if len(a) != len(b):
        raise DimensionMismatchError(f"Parents differ in length: {len(a)} vs {len(b)}")
    if not 0 <= cutpoint <= len(a):
        raise ValueError(f"Cutpoint {cutpoint} outside [0, {len(a)}]")
    child1 = np.concatenate([a.bits[:cutpoint], b.bits[cutpoint:]])
    child2 = np.concatenate([b.bits[:cutpoint], a.bits[cutpoint:]])
    return Genome(child1, a.n), Genome(child2, a.n)


def mutate(genome: Genome, rate: float, rng: np.random.Generator) -> Genome:
    """Flip each bit independently with probability `rate`."""
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"Mutation rate must be in [0, 1], got {rate}")
    flips = rng.random(len(genome)) < rate
    return Genome(genome.bits ^ flips.astype(np.uint8), genome.n)


def _elite_indices(fitnesses: Sequence, count: int) -> List[int]:
    # Exact comparison; ties go to the lower index.
    return sorted(range(len(fitnesses)), key=lambda k: (-fitnesses[k], k))[:count]


def _next_generation_matrix(population: np.ndarray, fitnesses: Sequence, config: GaConfig,
                            rng: np.random.Generator,
                            mutation_rng: np.random.Generator) -> np.ndarray:
    size, length = population.shape
    if size != config.population_size:
        raise DimensionMismatchError(
            f"Population has {size} genomes, config expects {config.population_size}")
    elites = population[_elite_indices(fitnesses, config.elite_count)]

    needed = size - len(elites)
    pairs = (needed + 1) // 2
    parents = _select_indices(fitnesses, 2 * pairs, rng).reshape(pairs, 2)
    cuts = rng.integers(0, length + 1, size=pairs)
    before_cut = np.arange(length)[None, :] < cuts[:, None]
    mothers = population[parents[:, 0]]
    fathers = population[parents[:, 1]]
    first = np.where(before_cut, mothers, fathers)
    second = np.where(before_cut, fathers, mothers)
    children = np.stack([first, second], axis=1).reshape(2 * pairs, length)[:needed]

    flips = mutation_rng.random(children.shape) < config.mutation_rate
    children = children ^ flips.astype(np.uint8)
    return np.vstack([elites, children]).astype(np.uint8)


def next_generation(genomes: Sequence[Genome], fitnesses: Sequence, config: GaConfig,
                    rng: np.random.Generator,
                    mutation_rng: Optional[np.random.Generator] = None) -> List[Genome]:
    """
    Build the next population: elites copied verbatim, the rest mutated
    crossover offspring of fitness-proportional parents.

    Args:
        genomes: Current population (config.population_size genomes)
        fitnesses: Selection fitness per genome
        config: GA parameters
        rng: Stream for parent selection and cutpoints
        mutation_rng: Stream for mutation (defaults to rng)

    Returns:
        config.population_size genomes
    """
    matrix = np.stack([g.bits for g in genomes])
    new = _next_generation_matrix(matrix, fitnesses, config, rng, mutation_rng or rng)
    return [Genome(row, config.n_nodes) for row in new]


# ---------------------------------------------------------------------------
# Run loop


def run_evolution(config: GaConfig, workers: int = 1,
                  on_generation: Optional[Callable[[GenerationStats], None]] = None) -> RunLog:
    """
    Evolve a population until perfect, stagnated or capped.

    Args:
        config: GA parameters (including master_seed)
        workers: Parallel evaluation shards; does not affect the result
        on_generation: Optional callback invoked with each GenerationStats

    Returns:
        RunLog
    """
    streams = RandomStreams(config.master_seed)
    n = config.n_nodes
    population = random_population(n, config.population_size, streams.fresh('population'))
    full_envs = enumerate_all_environments(init_seeds=config.init_seeds)
    retests: Dict[bytes, EvalReport] = {}

    log = RunLog(config=config)
    best_ever: Optional[Fraction] = None
    since_improvement = 0

    logger.info(f"Starting evolution: population={config.population_size}, n={n}, "
                f"seed={config.master_seed}, workers={workers}")

    with contextlib.ExitStack() as stack:
        executor = (stack.enter_context(ProcessPoolExecutor(max_workers=workers))
                    if workers > 1 else None)

        for generation in range(config.max_generations):
            envs = sample_environments(streams.fresh('environments', generation),
                                       config.envs_per_generation)
            batch = decode_population(population, n)
            reports = evaluate_batch(batch, envs, config.training_passes, workers, executor)
            learnable_counts = batch.learnable_counts()
            fitnesses = [_penalize(r.fitness, int(c), config.learnable_penalty_lambda)
                         for r, c in zip(reports, learnable_counts)]

            best = _elite_indices(fitnesses, 1)[0]
            best_genome = Genome(population[best], n)
            raw = [r.fitness for r in reports]

            env_report = None
            if generation % config.retest_interval == 0:
                key = population[best].tobytes()
                if key not in retests:
                    retests[key] = evaluate(batch.spec(best), full_envs, config.training_passes)
                env_report = retests[key]

            stats = GenerationStats(
                generation=generation,
                max_fitness=max(raw),
                avg_fitness=float(np.mean([float(f) for f in raw])),
                best_fitness=fitnesses[best],
                env_independent_fitness=env_report.fitness if env_report else None,
                env_mean_fitness=float(env_report.mean_env_fitness) if env_report else None,
                best_genome=best_genome,
                rule_of_best=LearningRule(tuple(int(r) for r in batch.rules[best])),
                best_learnable_count=int(learnable_counts[best]),
            )
            log.generations.append(stats)
            logger.info(
                f"Generation {generation}: max={float(stats.max_fitness):.4f} "
                f"avg={stats.avg_fitness:.4f} env-independent="
                f"{'-' if env_report is None else f'{float(env_report.fitness):.6f}'} "
                f"rule={stats.rule_of_best.to_bits()}")
            if on_generation is not None:
                on_generation(stats)

            if env_report is not None and env_report.is_perfect:
                log.termination = TerminationReason.PERFECT
                break

            if best_ever is None or fitnesses[best] > best_ever:
                best_ever = fitnesses[best]
                since_improvement = 0
            else:
                since_improvement += 1
            if since_improvement >= config.stagnation_limit:
                log.termination = TerminationReason.STAGNATED
                break

            if generation == config.max_generations - 1:
                log.termination = TerminationReason.CAPPED
                break

            population = _next_generation_matrix(
                population, fitnesses, config,
                streams.fresh('selection', generation),
                streams.fresh('mutation', generation))

    logger.info(f"Evolution finished after {len(log.generations)} generations: "
                f"{log.termination.value}")
    return log

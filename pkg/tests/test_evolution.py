"""
Tests for the genetic algorithm
"""

from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import ConfigError, DimensionMismatchError
from src.core.genome import Genome, random_genome
from src.core.network import NetworkSpec, WeightCell, hebb_rule
from src.core.rng import make_rng
from src.tools import evolution
from src.tools.evaluator import EvalReport
from src.tools.evolution import (PENALTY_VARIANT_LAMBDA, GaConfig, TerminationReason, crossover,
                                 mutate, next_generation, penalized_fitness, run_evolution,
                                 select_pair)

PERFECT = EvalReport(0, (0, 0, 0, 0), 1, (0,))
IMPERFECT = EvalReport(5, (0, 1, 1, 3), 1, (5,))


@pytest.fixture
def small_config():
    return GaConfig(population_size=16, n_nodes=3, elite_count=2, envs_per_generation=2,
                    max_generations=3, stagnation_limit=50, init_seeds=(0,), master_seed=4)


class TestGaConfig:
    """Parameter validation."""

    def test_defaults(self):
        config = GaConfig()
        assert config.population_size == 8192
        assert config.mutation_rate == 0.01
        assert config.learnable_penalty_lambda == 0.0
        assert config.genome_length == 79

    def test_errors_name_fields(self):
        with pytest.raises(ConfigError) as info:
            GaConfig(population_size=7, mutation_rate=1.5, n_nodes=1)
        fields = ' '.join(info.value.errors)
        assert 'population_size' in fields
        assert 'mutation_rate' in fields
        assert 'n_nodes' in fields

    def test_population_must_hold_elites(self):
        with pytest.raises(ConfigError):
            GaConfig(population_size=2, elite_count=2)


class TestOperators:
    """Selection, crossover, mutation, elitism."""

    def test_crossover_cutpoint(self):
        a = Genome([0] * 16)
        b = Genome([1] * 16)
        c1, c2 = crossover(a, b, 5)
        assert c1.to_string() == '0' * 5 + '1' * 11
        assert c2.to_string() == '1' * 5 + '0' * 11

    def test_crossover_extreme_cutpoints(self):
        a = random_genome(3, 1)
        b = random_genome(3, 2)
        assert crossover(a, b, 0) == (b, a)
        assert crossover(a, b, len(a)) == (a, b)

    def test_crossover_cutpoint_out_of_range(self):
        a = random_genome(3, 1)
        with pytest.raises(ValueError):
            crossover(a, a, len(a) + 1)

    def test_select_from_single_genome(self):
        genome = random_genome(2, 0)
        first, second = select_pair([genome], [Fraction(1, 7)], make_rng(3))
        assert first is genome
        assert second is genome

    def test_identical_population_without_mutation(self):
        config = GaConfig(population_size=8, n_nodes=3, elite_count=2, mutation_rate=0.0)
        genome = random_genome(3, 9)
        genomes = [genome] * 8
        fitnesses = [Fraction(1, 5)] * 8
        new = next_generation(genomes, fitnesses, config, make_rng(6))
        assert new == genomes

    def test_crossover_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            crossover(Genome([0] * 16), Genome([0] * 31), 3)

    def test_mutate_rates(self):
        genome = random_genome(5, 0)
        assert mutate(genome, 0.0, make_rng(1)) == genome
        flipped = mutate(genome, 1.0, make_rng(1))
        assert np.all(flipped.bits != genome.bits)

    def test_mutation_frequency(self):
        genome = random_genome(10, 3)
        rng = make_rng(2)
        flips = sum(int(np.sum(mutate(genome, 0.01, rng).bits != genome.bits)) for _ in range(100))
        total = 100 * len(genome)
        assert 0.007 <= flips / total <= 0.013

    def test_selection_proportional(self):
        genomes = [random_genome(2, k) for k in range(2)]
        fitnesses = [Fraction(1, 1), Fraction(1, 3)]
        rng = make_rng(0)
        picks = [select_pair(genomes, fitnesses, rng)[0] is genomes[0] for _ in range(4000)]
        assert 0.72 <= sum(picks) / len(picks) <= 0.78

    def test_elites_survive(self, small_config):
        genomes = [random_genome(3, k) for k in range(16)]
        fitnesses = [Fraction(1, 10)] * 16
        fitnesses[7] = Fraction(1, 1)
        fitnesses[3] = Fraction(1, 2)
        new = next_generation(genomes, fitnesses, small_config, make_rng(0))
        assert len(new) == 16
        assert new[0] == genomes[7]
        assert new[1] == genomes[3]


class TestPenalty:
    """Learnable-weight penalty variant."""

    @pytest.fixture
    def spec(self):
        weights = ((WeightCell.learnable(), WeightCell.learnable()),
                   (WeightCell.absent(), WeightCell.fixed(1)))
        return NetworkSpec(n=2, m=1, weights=weights, rule=hebb_rule())

    def test_zero_lambda_is_identity(self, spec):
        assert penalized_fitness(PERFECT, spec, 0) == 1

    def test_exact_penalty(self, spec):
        assert penalized_fitness(PERFECT, spec, PENALTY_VARIANT_LAMBDA) == Fraction(1000, 1002)

    def test_perfect_still_beats_one_error(self):
        spec = NetworkSpec.from_arrays(np.zeros((5, 5)), np.ones((5, 5), dtype=bool), hebb_rule())
        one_error = EvalReport(1, (1, 0, 0, 0), 1)
        assert penalized_fitness(PERFECT, spec, PENALTY_VARIANT_LAMBDA) > one_error.fitness

    def test_negative_lambda(self, spec):
        with pytest.raises(ValueError):
            penalized_fitness(PERFECT, spec, -0.1)


class TestRunEvolution:
    """The run loop and its stopping rules."""

    def test_capped(self, mocker, small_config):
        mocker.patch.object(evolution, 'evaluate', return_value=IMPERFECT)
        log = run_evolution(small_config)
        assert log.termination is TerminationReason.CAPPED
        assert len(log.generations) == 3
        assert log.perfect_genome is None

    def test_perfect_stops(self, mocker, small_config):
        mocker.patch.object(evolution, 'evaluate', return_value=PERFECT)
        log = run_evolution(small_config)
        assert log.termination is TerminationReason.PERFECT
        assert len(log.generations) == 1
        assert log.perfect_genome == log.final.best_genome

    def test_stagnation(self, mocker):
        mocker.patch.object(evolution, 'evaluate', return_value=IMPERFECT)
        config = GaConfig(population_size=8, n_nodes=2, envs_per_generation=1,
                          max_generations=100, stagnation_limit=1, init_seeds=(0,))
        log = run_evolution(config)
        assert log.termination is TerminationReason.STAGNATED
        assert len(log.generations) < 100

    def test_retest_interval(self, mocker, small_config):
        retest = mocker.patch.object(evolution, 'evaluate', return_value=IMPERFECT)
        config = GaConfig(**{**small_config.__dict__, 'retest_interval': 2, 'max_generations': 4})
        log = run_evolution(config)
        values = [stats.env_independent_fitness for stats in log.generations]
        assert values[1] is None and values[3] is None
        assert values[0] == IMPERFECT.fitness
        assert retest.call_count <= 2

    def test_deterministic(self, small_config):
        first = run_evolution(small_config)
        second = run_evolution(small_config)
        assert first.fitness_rows() == second.fitness_rows()
        assert first.best_genome() == second.best_genome()

    @pytest.mark.slow
    def test_worker_count_does_not_matter(self, small_config):
        assert run_evolution(small_config, workers=2).fitness_rows() == \
            run_evolution(small_config).fitness_rows()

    def test_log_contents(self, small_config):
        seen = []
        log = run_evolution(small_config, on_generation=seen.append)
        assert seen == log.generations
        rows = log.fitness_rows()
        assert list(rows[0]) == ['generation', 'max_fitness', 'avg_fitness',
                                 'env_independent_fitness']
        for stats in log.generations:
            assert stats.max_fitness >= Fraction(1, 1 + 32 * 2)
            assert 0 < stats.avg_fitness <= float(stats.max_fitness) + 1e-12
        summary = log.summary()
        assert summary['termination'] == log.termination.value
        assert NetworkSpec.from_dict(summary['best_network']).n == 3

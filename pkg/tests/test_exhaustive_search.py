"""
Tests for the exhaustive genome search
"""

import numpy as np
import pytest

from src.core.errors import EnumerationLimitError
from src.core.genome import canonicalize, decode
from src.tools.evaluator import enumerate_all_environments, evaluate
from src.tools.exhaustive_search import all_genomes, exhaustive_search


class TestAllGenomes:
    """Genome enumeration."""

    def test_two_node_space(self):
        genomes = all_genomes(2)
        assert genomes.shape == (65536, 16)
        assert genomes[0].sum() == 0
        assert genomes[-1].sum() == 16
        assert list(genomes[5][-3:]) == [1, 0, 1]

    def test_rows_are_distinct(self):
        genomes = all_genomes(2)
        assert len(np.unique(genomes, axis=0)) == 65536

    def test_distinct_phenotypes(self):
        assert len(np.unique(canonicalize(all_genomes(2), 2), axis=0)) == 4096

    def test_three_nodes_exceed_limit(self):
        with pytest.raises(EnumerationLimitError):
            all_genomes(3)


class TestExhaustiveSearch:
    """Search outcomes."""

    def test_reduced_environment_list(self):
        report = exhaustive_search(2, init_seeds=[0], prefilter_envs=8, top_candidates=4)
        assert report.genomes_enumerated == 65536
        assert report.distinct_phenotypes == 4096
        assert report.prefilter_env_count == 8
        assert report.candidates_retested == (report.prefilter_survivors or 4)
        assert report.best_report.env_count == 480

        rescored = evaluate(decode(report.witness), enumerate_all_environments(init_seeds=[0]))
        assert rescored.errors == report.best_report.errors

        summary = report.to_dict()
        assert summary['witness_genome'] == report.witness.to_string()
        assert summary['any_perfect'] == (report.best_report.errors == 0)
        assert 'any perfect genome:' in report.render()

    def test_deterministic(self):
        first = exhaustive_search(2, init_seeds=[1], prefilter_envs=4, top_candidates=2, seed=3)
        second = exhaustive_search(2, init_seeds=[1], prefilter_envs=4, top_candidates=2, seed=3)
        assert first.to_dict() == second.to_dict()

    @pytest.mark.slow
    def test_full_environment_list(self):
        report = exhaustive_search(2)
        assert report.best_report.env_count == 7680
        assert report.best_fitness == report.best_report.fitness
        assert report.any_perfect == report.best_report.is_perfect

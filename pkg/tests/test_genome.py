"""
Tests for the genome codec
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DimensionMismatchError, GenomeFormatError
from src.core.genome import (RULE_BITS, Genome, canonicalize, decode, decode_population, encode,
                             genome_length, nodes_for_length, random_genome, random_population)
from src.core.network import NetworkSpec, WeightKind, hebb_rule
from src.core.rng import make_rng
from tests.conftest import random_spec


def genome_bits(n):
    length = genome_length(n)
    return st.lists(st.integers(0, 1), min_size=length, max_size=length)


class TestGenomeLength:
    """Length arithmetic."""

    def test_lengths(self):
        assert genome_length(2) == 16
        assert genome_length(5) == 79

    def test_too_few_nodes(self):
        with pytest.raises(ValueError):
            genome_length(1)

    def test_nodes_for_length(self):
        assert nodes_for_length(79) == 5
        with pytest.raises(DimensionMismatchError):
            nodes_for_length(80)

    def test_wrong_length_rejected(self):
        with pytest.raises(DimensionMismatchError):
            Genome([0] * 15, n=2)


class TestDecode:
    """Morphogenesis."""

    def test_all_zero(self):
        spec = decode(Genome([0] * 16))
        assert spec == NetworkSpec.empty(2)
        assert spec.rule.table == (-1, -1, -1, -1)

    def test_rule_bits_1001_is_hebb(self):
        bits = [1, 0, 0, 1] + [0] * 12
        assert decode(Genome(bits)).rule == hebb_rule()

    def test_single_fixed_cell(self):
        bits = [0] * 16
        start = RULE_BITS + 3 * (0 * 2 + 1)
        bits[start:start + 3] = [1, 0, 1]
        spec = decode(Genome(bits))
        assert spec.weights[0][1].kind is WeightKind.FIXED
        assert spec.weights[0][1].value == 1
        assert sum(cell.kind is not WeightKind.ABSENT for row in spec.weights for cell in row) == 1

    def test_learnable_cell(self):
        bits = [0] * 16
        start = RULE_BITS + 3 * (1 * 2 + 0)
        bits[start:start + 3] = [1, 1, 1]
        spec = decode(Genome(bits))
        assert spec.learnable_cells == ((1, 0),)

    def test_population_matches_single(self):
        matrix = random_population(3, 20, make_rng(4))
        batch = decode_population(matrix, 3)
        for k, row in enumerate(matrix):
            assert batch.spec(k) == decode(Genome(row, 3))


class TestRoundTrip:
    """encode/decode and the redundancy of don't-care bits."""

    def test_thousand_canonical_genomes(self):
        matrix = canonicalize(random_population(5, 1000, make_rng(0)), 5)
        mismatches = sum(encode(decode(Genome(row, 5))) != Genome(row, 5) for row in matrix)
        assert mismatches == 0

    def test_random_specs(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            spec = random_spec(rng, n=4, learnable_cells=int(rng.integers(0, 6)))
            assert decode(encode(spec)) == spec

    @settings(max_examples=200, deadline=None)
    @given(bits=genome_bits(3))
    def test_decode_is_total_and_canonical(self, bits):
        genome = Genome(bits, 3)
        spec = decode(genome)
        canonical = canonicalize(genome.bits[None, :], 3)[0]
        assert encode(spec) == Genome(canonical, 3)
        for row in spec.weights:
            for cell in row:
                if cell.kind is not WeightKind.ABSENT:
                    assert cell.value in (-1, 1)

    @settings(max_examples=100, deadline=None)
    @given(bits=genome_bits(2), cell=st.integers(0, 3))
    def test_dont_care_bits(self, bits, cell):
        start = RULE_BITS + 3 * cell
        flipped = list(bits)
        if bits[start] == 0:
            flipped[start + 1] ^= 1
            flipped[start + 2] ^= 1
        elif bits[start + 1] == 1:
            flipped[start + 2] ^= 1
        else:
            return
        assert decode(Genome(flipped)) == decode(Genome(bits))

    def test_non_canonical_learnable(self):
        bits = [0] * 16
        bits[RULE_BITS:RULE_BITS + 3] = [1, 1, 1]
        genome = Genome(bits)
        reencoded = encode(decode(genome))
        assert reencoded != genome
        assert decode(reencoded) == decode(genome)
        differing = np.nonzero(reencoded.bits != genome.bits)[0]
        assert list(differing) == [RULE_BITS + 2]


class TestGenomeText:
    """String form."""

    def test_round_trip(self):
        genome = random_genome(3, 5)
        assert Genome.from_string(genome.to_string()) == genome

    def test_bad_character_column(self):
        with pytest.raises(GenomeFormatError) as info:
            Genome.from_string('0101x' + '0' * 11)
        assert info.value.column == 5

    def test_line_in_message(self):
        with pytest.raises(GenomeFormatError, match='line 3, column 1'):
            Genome.from_string('2' + '0' * 15, line=3)


class TestRandomGenome:
    """Seeded generation."""

    def test_same_seed(self):
        assert random_genome(5, 42) == random_genome(5, 42)
        assert random_genome(5, 42) != random_genome(5, 43)

    def test_length(self):
        assert len(random_genome(4, 0)) == genome_length(4)

    def test_bit_mean(self):
        matrix = random_population(5, 1266, make_rng(1))
        assert matrix.size >= 100_000
        assert 0.49 <= matrix.mean() <= 0.51

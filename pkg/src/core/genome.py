"""
Genome Codec - Bit-string genomes and their decoding into networks (morphogenesis)

Layout of a genome for n nodes (3n^2 + 4 bits):
    bits [0, 4)            learning rule table, index order, 1 -> +1, 0 -> -1
    bits 4 + 3*(i*n + j)   cell i -> j, row-major over ordered pairs (diagonal included):
                           A (non-zero?), B (learnable?), C (sign, 1 -> +1)
A = 0 gives an absent cell, A = 1 and B = 1 a learnable cell, A = 1 and B = 0 a
fixed cell whose value is C. B and C are don't-care bits where they are ignored.
"""

import math
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import DimensionMismatchError, GenomeFormatError
from .network import LearningRule, NetworkBatch, NetworkSpec, WeightKind
from .rng import Seed, make_rng

RULE_BITS = 4
BITS_PER_CELL = 3


def genome_length(n: int) -> int:
    """
    Number of bits encoding an n-node network.

    Raises:
        ValueError: if n < 2 (an input and an output node are required)
    """
    if n < 2:
        raise ValueError(f"Genomes need at least 2 nodes, got n={n}")
    return BITS_PER_CELL * n * n + RULE_BITS


def nodes_for_length(length: int) -> int:
    """Invert genome_length; raises DimensionMismatchError for impossible lengths."""
    cells, remainder = divmod(length - RULE_BITS, BITS_PER_CELL)
    n = math.isqrt(max(cells, 0))
    if remainder or n * n != cells or n < 2:
        raise DimensionMismatchError(f"No node count gives a genome of {length} bits")
    return n


class Genome:
    """Fixed-length bit vector for an n-node network."""

    __slots__ = ('_bits', 'n')

    def __init__(self, bits: Iterable[int], n: Optional[int] = None):
        array = np.array(list(bits) if not isinstance(bits, np.ndarray) else bits,
                         dtype=np.uint8)
        if array.ndim != 1:
            raise DimensionMismatchError("Genome bits must be one-dimensional")
        if np.any(array > 1):
            raise ValueError("Genome bits must be 0 or 1")
        if n is None:
            n = nodes_for_length(len(array))
        expected = genome_length(n)
        if len(array) != expected:
            raise DimensionMismatchError(
                f"Genome for n={n} must have {expected} bits, got {len(array)}")
        array.setflags(write=False)
        self._bits = array
        self.n = n

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return len(self._bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Genome):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((self.n, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"Genome(n={self.n}, bits='{self.to_string()}')"

    def to_string(self) -> str:
        return ''.join('1' if b else '0' for b in self._bits)

    @classmethod
    def from_string(cls, text: str, n: Optional[int] = None,
                    line: Optional[int] = None) -> 'Genome':
        """
        Parse a 0/1 string.

        Raises:
            GenomeFormatError: on any character other than 0 or 1, or a bad length
        """
        text = text.strip()
        for column, char in enumerate(text, 1):
            if char not in '01':
                raise GenomeFormatError(f"unexpected character {char!r} in genome",
                                        line=line, column=column)
        try:
            return cls([int(c) for c in text], n)
        except DimensionMismatchError as e:
            raise GenomeFormatError(str(e), line=line) from e


def decode_arrays(bit_matrix: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Decode a (P, 3n^2 + 4) matrix of genomes at once.

    Returns:
        (values (P, n, n) int8, learnable (P, n, n) bool, rules (P, 4) int8);
        values is 0 at absent and learnable cells
    """
    bit_matrix = np.asarray(bit_matrix, dtype=np.uint8)
    if bit_matrix.ndim != 2 or bit_matrix.shape[1] != genome_length(n):
        raise DimensionMismatchError(
            f"Expected genomes of {genome_length(n)} bits, got shape {bit_matrix.shape}")
    rules = (2 * bit_matrix[:, :RULE_BITS].astype(np.int8) - 1).astype(np.int8)
    cells = bit_matrix[:, RULE_BITS:].reshape(-1, n, n, BITS_PER_CELL)
    nonzero = cells[..., 0] == 1
    learnable = nonzero & (cells[..., 1] == 1)
    fixed = nonzero & ~learnable
    signs = (2 * cells[..., 2].astype(np.int8) - 1).astype(np.int8)
    values = np.where(fixed, signs, 0).astype(np.int8)
    return values, learnable, rules


def decode(genome: Genome, m: int = 1) -> NetworkSpec:
    """Morphogenesis: turn a genome into its network."""
    values, learnable, rules = decode_arrays(genome.bits[None, :], genome.n)
    rule = LearningRule(tuple(int(r) for r in rules[0]))
    return NetworkSpec.from_arrays(values[0], learnable[0], rule, m)


def decode_population(bit_matrix: np.ndarray, n: int, m: int = 1) -> NetworkBatch:
    values, learnable, rules = decode_arrays(bit_matrix, n)
    return NetworkBatch(n=n, m=m, values=values, learnable=learnable, rules=rules)


def encode(spec: NetworkSpec) -> Genome:
    """
    Canonical genome for a network: don't-care bits are written as 0.
    """
    bits = [1 if entry > 0 else 0 for entry in spec.rule.table]
    for row in spec.weights:
        for cell in row:
            if cell.kind is WeightKind.ABSENT:
                bits.extend((0, 0, 0))
            elif cell.kind is WeightKind.LEARNABLE:
                bits.extend((1, 1, 0))
            else:
                bits.extend((1, 0, 1 if cell.value > 0 else 0))
    return Genome(bits, spec.n)


def canonicalize(bit_matrix: np.ndarray, n: int) -> np.ndarray:
    """Zero the don't-care bits of every genome in a (P, L) matrix."""
    out = np.array(bit_matrix, dtype=np.uint8, copy=True)
    cells = out[:, RULE_BITS:].reshape(-1, n, n, BITS_PER_CELL)
    absent = cells[..., 0] == 0
    learnable = ~absent & (cells[..., 1] == 1)
    cells[..., 1][absent] = 0
    cells[..., 2][absent | learnable] = 0
    out[:, RULE_BITS:] = cells.reshape(out.shape[0], -1)
    return out


def random_genome(n: int, seed: Seed) -> Genome:
    """Genome with i.i.d. uniform bits from the seeded stream."""
    rng = make_rng(seed)
    return Genome(rng.integers(0, 2, size=genome_length(n), dtype=np.uint8), n)


def random_population(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """(size, 3n^2 + 4) matrix of i.i.d. uniform bits."""
    return rng.integers(0, 2, size=(size, genome_length(n)), dtype=np.uint8)

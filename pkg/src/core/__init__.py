"""Core network, genome and validation functionality."""

from .errors import (ClampError, ConfigError, DimensionMismatchError, EnumerationLimitError,
                     GenomeFormatError, LBNNError, NetworkFileError)
from .genome import Genome, decode, encode, genome_length, random_genome
from .network import ClampSet, LearningRule, NetworkSpec, NetworkState, WeightCell, step
from .rng import RandomStreams
from .validator import Validator

__all__ = [
    'LBNNError', 'DimensionMismatchError', 'ClampError', 'EnumerationLimitError',
    'GenomeFormatError', 'NetworkFileError', 'ConfigError',
    'Genome', 'decode', 'encode', 'genome_length', 'random_genome',
    'ClampSet', 'LearningRule', 'NetworkSpec', 'NetworkState', 'WeightCell', 'step',
    'RandomStreams', 'Validator',
]

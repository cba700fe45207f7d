"""
Exhaustive Search - Score every genome of a small network size

Used to settle whether any network without hidden nodes can learn all four
functions: for n = 2 there are only 2^16 genomes, 4096 of them distinct once
don't-care bits are zeroed.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..core.errors import EnumerationLimitError
from ..core.genome import Genome, canonicalize, decode_population, genome_length
from ..core.rng import make_rng
from .evaluator import EvalReport, enumerate_all_environments, evaluate_batch

logger = logging.getLogger(__name__)

MAX_GENOME_BITS = 24
DEFAULT_PREFILTER_ENVS = 16
DEFAULT_TOP_CANDIDATES = 16


@dataclass(frozen=True)
class ExhaustReport:
    """Outcome of scoring every genome of one network size."""

    n_nodes: int
    genomes_enumerated: int
    distinct_phenotypes: int
    prefilter_env_count: int
    prefilter_survivors: int
    candidates_retested: int
    best_report: EvalReport
    witness: Genome

    @property
    def best_fitness(self) -> Fraction:
        return self.best_report.fitness

    @property
    def any_perfect(self) -> bool:
        return self.best_report.is_perfect

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n_nodes': self.n_nodes,
            'genomes_enumerated': self.genomes_enumerated,
            'distinct_phenotypes': self.distinct_phenotypes,
            'prefilter_env_count': self.prefilter_env_count,
            'prefilter_survivors': self.prefilter_survivors,
            'candidates_retested': self.candidates_retested,
            'best_fitness': str(self.best_fitness),
            'best_errors': self.best_report.errors,
            'best_per_function_errors': list(self.best_report.per_function_errors),
            'env_count': self.best_report.env_count,
            'witness_genome': self.witness.to_string(),
            'any_perfect': self.any_perfect,
        }

    def render(self) -> str:
        lines = [
            f"Exhaustive search, n={self.n_nodes}",
            f"  genomes enumerated:   {self.genomes_enumerated}",
            f"  distinct phenotypes:  {self.distinct_phenotypes}",
            f"  prefilter survivors:  {self.prefilter_survivors} "
            f"(perfect on {self.prefilter_env_count} environments)",
            f"  candidates retested:  {self.candidates_retested}",
            f"  best fitness:         {self.best_fitness} "
            f"(N={self.best_report.errors} over {self.best_report.env_count} environments)",
            f"  errors per function:  {list(self.best_report.per_function_errors)}",
            f"  witness genome:       {self.witness.to_string()}",
            f"  any perfect genome:   {'yes' if self.any_perfect else 'no'}",
        ]
        return '\n'.join(lines) + '\n'


def all_genomes(n: int) -> np.ndarray:
    """
    Every genome for n nodes, row k holding the bits of k (most significant first).

    Raises:
        EnumerationLimitError: if the genome is longer than MAX_GENOME_BITS
    """
    length = genome_length(n)
    if length > MAX_GENOME_BITS:
        raise EnumerationLimitError(
            f"n={n} gives {length}-bit genomes; at most {MAX_GENOME_BITS} bits can be enumerated")
    codes = np.arange(1 << length, dtype=np.int64)
    shifts = np.arange(length - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


def _rank(reports: Sequence[EvalReport]) -> List[int]:
    return sorted(range(len(reports)), key=lambda i: (reports[i].errors, i))


def exhaustive_search(n: int = 2, init_seeds: Optional[Sequence[int]] = None,
                      prefilter_envs: int = DEFAULT_PREFILTER_ENVS,
                      top_candidates: int = DEFAULT_TOP_CANDIDATES,
                      passes: int = 1, workers: int = 1, seed: int = 0) -> ExhaustReport:
    """
    Environment-independent fitness of the best genome of size n.

    Distinct phenotypes are first scored on a fixed subset of the full
    environment list; a network that is perfect overall is perfect on the
    subset, so only subset-perfect networks need the full retest. When none
    survive, the top candidates of the prefilter are retested instead.

    Args:
        n: Node count
        init_seeds: Init seeds of the full environment list (default 0..15)
        prefilter_envs: Size of the prefilter subset
        top_candidates: Networks retested when nothing survives the prefilter
        passes: Training passes per function
        workers: Parallel evaluation shards
        seed: Seed choosing the prefilter subset

    Returns:
        ExhaustReport
    """
    genomes = all_genomes(n)
    distinct = np.unique(canonicalize(genomes, n), axis=0)
    batch = decode_population(distinct, n)
    logger.info(f"Enumerated {len(genomes)} genomes, {len(distinct)} distinct phenotypes")

    full_envs = enumerate_all_environments(init_seeds=init_seeds)
    picks = np.sort(make_rng(seed).choice(len(full_envs), size=min(prefilter_envs, len(full_envs)),
                                          replace=False))
    subset = [full_envs[int(i)] for i in picks]
    pre_reports = evaluate_batch(batch, subset, passes, workers)

    survivors = [i for i, r in enumerate(pre_reports) if r.is_perfect]
    candidates = survivors or _rank(pre_reports)[:top_candidates]
    logger.info(f"Prefilter: {len(survivors)} survivors; retesting {len(candidates)} candidates "
                f"on {len(full_envs)} environments")

    full_reports = evaluate_batch(batch.select(candidates), full_envs, passes, workers)
    best = _rank(full_reports)[0]
    witness = Genome(distinct[candidates[best]], n)
    logger.info(f"Best fitness {full_reports[best].fitness} (witness {witness.to_string()})")

    return ExhaustReport(
        n_nodes=n,
        genomes_enumerated=len(genomes),
        distinct_phenotypes=len(distinct),
        prefilter_env_count=len(subset),
        prefilter_survivors=len(survivors),
        candidates_retested=len(candidates),
        best_report=full_reports[best],
        witness=witness,
    )

"""
Evaluator - Training/testing protocol and fitness over randomized environments

A network is trained on each of the four boolean functions of one variable in
turn (input and output clamped), then tested with only the input clamped: four
unscored convergence steps followed by four recorded steps per input. Errors are
summed into N and fitness is 1/(1 + N).
"""

import itertools
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core import network
from ..core.network import (REST_SPIN, SPIN_DOWN, SPIN_UP, ClampSet, NetworkBatch,
                            NetworkSpec, NetworkState, bit_spin, initial_draw, spin_bit)

logger = logging.getLogger(__name__)

PAIR_ORDERS: Tuple[Tuple[int, int], ...] = ((SPIN_UP, SPIN_DOWN), (SPIN_DOWN, SPIN_UP))
LEARN_CYCLE_RANGE = (4, 8)
CONVERGENCE_STEPS = 4
RECORDED_STEPS = 4
MAX_ERRORS_PER_FUNCTION = 2 * RECORDED_STEPS
DEFAULT_INIT_SEED_COUNT = 16

# Rows simulated per numpy call; bounds memory for large sweeps.
DEFAULT_CHUNK_ROWS = 1 << 16


@dataclass(frozen=True)
class BooleanFunction:
    """A boolean function of one variable; outputs = (g(-1), g(+1))."""

    id: int
    outputs: Tuple[int, int]

    @property
    def name(self) -> str:
        return f"f{self.id}"

    def __call__(self, x: int) -> int:
        return self.outputs[spin_bit(x)]


BOOLEAN_FUNCTIONS: Tuple[BooleanFunction, ...] = tuple(
    BooleanFunction(k, (bit_spin((k >> 1) & 1), bit_spin(k & 1))) for k in range(4)
)

# FUNCTION_TABLE[id, bit(x)] = g(x)
FUNCTION_TABLE = np.array([f.outputs for f in BOOLEAN_FUNCTIONS], dtype=np.int8)


def function_from_outputs(at_minus: int, at_plus: int) -> BooleanFunction:
    """The function with g(-1) = at_minus and g(+1) = at_plus."""
    return BOOLEAN_FUNCTIONS[2 * spin_bit(at_minus) + spin_bit(at_plus)]


@dataclass(frozen=True)
class Environment:
    """
    One complete set of training/testing conditions.

    function_order holds function ids; the pair orders apply to every function.
    """

    function_order: Tuple[int, int, int, int]
    train_pair_order: Tuple[int, int]
    test_pair_order: Tuple[int, int]
    learn_cycles: int
    init_seed: int

    def __post_init__(self):
        order = tuple(int(f) for f in self.function_order)
        if sorted(order) != [0, 1, 2, 3]:
            raise ValueError(f"function_order must be a permutation of 0..3, got {order}")
        for name in ('train_pair_order', 'test_pair_order'):
            pair = tuple(int(x) for x in getattr(self, name))
            if pair not in PAIR_ORDERS:
                raise ValueError(f"{name} must be one of {PAIR_ORDERS}, got {pair}")
            object.__setattr__(self, name, pair)
        low, high = LEARN_CYCLE_RANGE
        if not low <= int(self.learn_cycles) <= high:
            raise ValueError(f"learn_cycles must be in [{low}, {high}], got {self.learn_cycles}")
        object.__setattr__(self, 'function_order', order)
        object.__setattr__(self, 'learn_cycles', int(self.learn_cycles))
        object.__setattr__(self, 'init_seed', int(self.init_seed))

    def function_seed(self, function_id: int) -> Tuple[int, int]:
        """Seed for the state initialised before training on one function."""
        return (self.init_seed, int(function_id))


@dataclass(frozen=True)
class EvalReport:
    """Error count N over a set of environments and the resulting fitness."""

    errors: int
    per_function_errors: Tuple[int, int, int, int]
    env_count: int
    per_env_errors: Tuple[int, ...] = ()

    @property
    def fitness(self) -> Fraction:
        return Fraction(1, 1 + self.errors)

    @property
    def mean_env_fitness(self) -> Fraction:
        """Average of 1/(1 + N_env) over the environments."""
        if not self.per_env_errors:
            return self.fitness
        total = sum(Fraction(1, 1 + e) for e in self.per_env_errors)
        return total / len(self.per_env_errors)

    @property
    def is_perfect(self) -> bool:
        return self.errors == 0

    @classmethod
    def from_error_matrix(cls, errors: np.ndarray) -> 'EvalReport':
        """Build a report from an (environments, 4) matrix of per-function errors."""
        errors = np.asarray(errors, dtype=np.int64)
        return cls(errors=int(errors.sum()),
                   per_function_errors=tuple(int(e) for e in errors.sum(axis=0)),
                   env_count=int(errors.shape[0]),
                   per_env_errors=tuple(int(e) for e in errors.sum(axis=1)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'errors': self.errors,
            'fitness': str(self.fitness),
            'fitness_value': float(self.fitness),
            'mean_env_fitness': float(self.mean_env_fitness),
            'per_function_errors': list(self.per_function_errors),
            'env_count': self.env_count,
        }


# ---------------------------------------------------------------------------
# Single-network protocol


def train_function(spec: NetworkSpec, state: NetworkState, func: BooleanFunction,
                   env: Environment, passes: int = 1) -> NetworkState:
    """
    Teach one function: for each input x, clamp input to x and output to func(x)
    and run env.learn_cycles steps.

    Args:
        spec: Network
        state: Freshly initialised state
        func: Function being taught
        env: Environment (pair order and cycle count)
        passes: Number of presentations of both pairs

    Returns:
        State after training
    """
    for _ in range(passes):
        for x in env.train_pair_order:
            clamps = ClampSet.of((x,), func(x), m=spec.m)
            for _ in range(env.learn_cycles):
                state = network.step(spec, state, clamps)
    return state


def test_function(spec: NetworkSpec, state: NetworkState, func: BooleanFunction,
                  env: Environment) -> int:
    """
    Count output errors with only the input clamped (0 to 8).
    """
    errors = 0
    for x in env.test_pair_order:
        clamps = ClampSet.of((x,), None, m=spec.m)
        for _ in range(CONVERGENCE_STEPS):
            state = network.step(spec, state, clamps)
        for _ in range(RECORDED_STEPS):
            state = network.step(spec, state, clamps)
            if state.activations[spec.output_node] != func(x):
                errors += 1
    return errors


# ---------------------------------------------------------------------------
# Batched protocol


def _initial_rows(envs: Sequence[Environment], function_ids: np.ndarray,
                  values: np.ndarray, learnable: np.ndarray,
                  m: int) -> Tuple[np.ndarray, np.ndarray]:
    rows, n = values.shape[0], values.shape[1]
    keys = [env.function_seed(fid) for env, fid in zip(envs, function_ids)]
    unique = {}
    index = np.empty(rows, dtype=np.intp)
    for r, key in enumerate(keys):
        index[r] = unique.setdefault(key, len(unique))
    draws = [initial_draw(key, n) for key in unique]
    node_spins = np.stack([d[0] for d in draws])[index]
    cell_spins = np.stack([d[1] for d in draws])[index]

    acts = np.full((rows, n), REST_SPIN, dtype=np.int8)
    acts[:, m + 1:] = node_spins[:, m + 1:]
    weights = np.where(learnable, cell_spins, values).astype(np.int8)
    return acts, weights


def _run_rows(batch: NetworkBatch, net_index: np.ndarray, envs: Sequence[Environment],
              passes: int) -> np.ndarray:
    """
    Simulate rows (network net_index[r] in environment envs[r]); all envs must
    share one learn_cycles value.

    Returns:
        (R, 4) errors indexed by function id
    """
    n, m = batch.n, batch.m
    out = batch.m
    rows = len(envs)
    cycles = envs[0].learn_cycles
    values = batch.values[net_index]
    learnable = batch.learnable[net_index]
    rules = batch.rules[net_index]
    orders = np.array([env.function_order for env in envs], dtype=np.intp)
    train_orders = np.array([env.train_pair_order for env in envs], dtype=np.int8)
    test_orders = np.array([env.test_pair_order for env in envs], dtype=np.int8)
    row_ids = np.arange(rows)

    train_mask = np.zeros(n, dtype=bool)
    train_mask[:m + 1] = True
    test_mask = np.zeros(n, dtype=bool)
    test_mask[:m] = True

    errors = np.zeros((rows, 4), dtype=np.int64)
    for position in range(4):
        function_ids = orders[:, position]
        acts, weights = _initial_rows(envs, function_ids, values, learnable, m)

        for _ in range(passes):
            for p in range(2):
                x = train_orders[:, p]
                clamp_values = np.full((rows, n), REST_SPIN, dtype=np.int8)
                clamp_values[:, :m] = x[:, None]
                clamp_values[:, out] = FUNCTION_TABLE[function_ids, (x > 0).astype(np.intp)]
                for _ in range(cycles):
                    acts, weights = network.step_arrays(acts, weights, learnable, rules,
                                                        train_mask, clamp_values)

        for p in range(2):
            x = test_orders[:, p]
            targets = FUNCTION_TABLE[function_ids, (x > 0).astype(np.intp)]
            clamp_values = np.full((rows, n), REST_SPIN, dtype=np.int8)
            clamp_values[:, :m] = x[:, None]
            for _ in range(CONVERGENCE_STEPS):
                acts, weights = network.step_arrays(acts, weights, learnable, rules,
                                                    test_mask, clamp_values)
            for _ in range(RECORDED_STEPS):
                acts, weights = network.step_arrays(acts, weights, learnable, rules,
                                                    test_mask, clamp_values)
                errors[row_ids, function_ids] += acts[:, out] != targets
    return errors


def error_matrix(batch: NetworkBatch, envs: Sequence[Environment], passes: int = 1,
                 chunk_rows: int = DEFAULT_CHUNK_ROWS) -> np.ndarray:
    """
    Per-function errors of every network in every environment.

    Returns:
        (networks, environments, 4) error counts
    """
    if batch.m != 1:
        raise ValueError(f"Only boolean functions of one variable are supported (m=1), got m={batch.m}")
    if not envs:
        raise ValueError("At least one environment is required")
    result = np.zeros((len(batch), len(envs), 4), dtype=np.int64)

    by_cycles: Dict[int, List[int]] = {}
    for e, env in enumerate(envs):
        by_cycles.setdefault(env.learn_cycles, []).append(e)

    for cycles in sorted(by_cycles):
        env_ids = np.array(by_cycles[cycles], dtype=np.intp)
        net_ids = np.repeat(np.arange(len(batch)), len(env_ids))
        row_envs = np.tile(env_ids, len(batch))
        for start in range(0, len(net_ids), chunk_rows):
            nets = net_ids[start:start + chunk_rows]
            es = row_envs[start:start + chunk_rows]
            errs = _run_rows(batch, nets, [envs[e] for e in es], passes)
            result[nets, es] = errs
    return result


def _evaluate_chunk(args) -> List['EvalReport']:
    batch, envs, passes = args
    return [EvalReport.from_error_matrix(m) for m in error_matrix(batch, envs, passes)]


def evaluate_batch(batch: NetworkBatch, envs: Sequence[Environment], passes: int = 1,
                   workers: int = 1, executor: Optional[Executor] = None) -> List[EvalReport]:
    """
    Evaluate many networks on a shared environment list.

    Networks are split into contiguous shards when workers > 1; reports come back
    in batch order, so results do not depend on the worker count.

    Args:
        batch: Networks to evaluate
        envs: Environments, shared by every network
        passes: Training passes per function
        workers: Number of shards to evaluate in parallel
        executor: Optional executor to reuse across calls

    Returns:
        One EvalReport per network
    """
    if workers <= 1 or len(batch) < 2:
        return _evaluate_chunk((batch, list(envs), passes))

    bounds = np.linspace(0, len(batch), num=min(workers, len(batch)) + 1, dtype=int)
    shards = [(batch.select(range(lo, hi)), list(envs), passes)
              for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    if executor is None:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_evaluate_chunk, shards))
    else:
        parts = list(executor.map(_evaluate_chunk, shards))
    return [report for part in parts for report in part]


def evaluate(spec: NetworkSpec, envs: Sequence[Environment], passes: int = 1) -> EvalReport:
    """
    Train and test one network in every environment.

    For each environment and each function in its order the state is
    re-initialised from (env.init_seed, function id), trained, then tested.
    """
    return evaluate_batch(NetworkBatch.from_specs([spec]), envs, passes)[0]


# ---------------------------------------------------------------------------
# Environments


def enumerate_all_environments(init_seed_count: int = DEFAULT_INIT_SEED_COUNT,
                               init_seeds: Optional[Sequence[int]] = None) -> List[Environment]:
    """
    Every combination of init seed, function order, train/test pair order and
    learning-cycle count (16 x 24 x 2 x 2 x 5 = 7680 with the default seeds).
    """
    seeds = tuple(init_seeds) if init_seeds is not None else tuple(range(init_seed_count))
    low, high = LEARN_CYCLE_RANGE
    return [
        Environment(order, train, test, cycles, seed)
        for seed, order, train, test, cycles in itertools.product(
            seeds, itertools.permutations(range(4)), PAIR_ORDERS, PAIR_ORDERS,
            range(low, high + 1))
    ]


def sample_environments(rng: np.random.Generator, count: int,
                        init_seed: Optional[int] = None) -> List[Environment]:
    """Draw `count` random environments; a given init_seed is shared by all of them."""
    low, high = LEARN_CYCLE_RANGE
    envs = []
    for _ in range(count):
        order = tuple(int(f) for f in rng.permutation(4))
        train = PAIR_ORDERS[int(rng.integers(2))]
        test = PAIR_ORDERS[int(rng.integers(2))]
        cycles = int(rng.integers(low, high + 1))
        seed = int(rng.integers(0, 2 ** 32))
        if init_seed is not None:
            seed = init_seed
        envs.append(Environment(order, train, test, cycles, seed))
    return envs


def env_independent_fitness(spec: NetworkSpec, init_seeds: Optional[Sequence[int]] = None,
                            passes: int = 1) -> EvalReport:
    """Evaluate over every environment (7680 with the default 16 init seeds)."""
    envs = enumerate_all_environments(init_seeds=init_seeds)
    report = evaluate(spec, envs, passes)
    logger.debug(f"Environment-independent test: N={report.errors} over {report.env_count} environments")
    return report


def environment_rows(envs: Sequence[Environment], report: EvalReport) -> List[Dict[str, Any]]:
    """Audit rows: one per environment with its conditions and error total."""
    def order_text(pair):
        return ','.join('1' if x > 0 else '0' for x in pair)

    rows = []
    for env, errs in zip(envs, report.per_env_errors):
        rows.append({
            'function_order': ' '.join(f"f{f}" for f in env.function_order),
            'train_pair_order': order_text(env.train_pair_order),
            'test_pair_order': order_text(env.test_pair_order),
            'learn_cycles': env.learn_cycles,
            'init_seed': env.init_seed,
            'errors': errs,
        })
    return rows

"""
Network Core - Synchronous simulation of Local Binary Neural Networks (LBNNs)

Activations are spins (+1/-1), weights are +1, -1 or 0, and every learnable
weight is rewritten each step by a four-entry local learning rule that reads
only the two endpoint activations.
"""

import functools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import ClampError, DimensionMismatchError
from .rng import Seed, make_rng

SPIN_UP = 1
SPIN_DOWN = -1

# Input/output nodes rest at -1 until first clamped; theta(0) = -1.
REST_SPIN = SPIN_DOWN


def spin_bit(spin: int) -> int:
    """Map +1 to 1 and -1 to 0."""
    return 1 if spin > 0 else 0


def bit_spin(bit: int) -> int:
    """Map 1 to +1 and 0 to -1."""
    return SPIN_UP if bit else SPIN_DOWN


def _check_spin(value: Any, what: str) -> int:
    if value not in (SPIN_UP, SPIN_DOWN):
        raise ValueError(f"{what} must be +1 or -1, got {value!r}")
    return int(value)


def sign_threshold(x: int) -> int:
    """Threshold function: +1 if x > 0, otherwise -1 (ties go to -1)."""
    return SPIN_UP if x > 0 else SPIN_DOWN


@dataclass(frozen=True)
class LearningRule:
    """
    Local learning rule as a truth table.

    Entries are indexed by 2*bit(a_i) + bit(a_j), i.e. in the order
    (-1,-1), (-1,+1), (+1,-1), (+1,+1).
    """

    table: Tuple[int, int, int, int]

    def __post_init__(self):
        table = tuple(self.table)
        if len(table) != 4:
            raise ValueError(f"Learning rule needs 4 entries, got {len(table)}")
        for entry in table:
            _check_spin(entry, "Learning rule entry")
        object.__setattr__(self, 'table', tuple(int(e) for e in table))

    @classmethod
    def from_bits(cls, bits: str) -> 'LearningRule':
        """Build a rule from a 4-character 0/1 string (1 -> +1, 0 -> -1)."""
        if len(bits) != 4 or any(c not in '01' for c in bits):
            raise ValueError(f"Rule bits must be four 0/1 characters, got {bits!r}")
        return cls(tuple(bit_spin(int(c)) for c in bits))

    def to_bits(self) -> str:
        return ''.join(str(spin_bit(e)) for e in self.table)

    @property
    def is_hebb(self) -> bool:
        return self.table == HEBB_TABLE

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int8)


HEBB_TABLE = (1, -1, -1, 1)


def apply_rule(rule: LearningRule, a_i: int, a_j: int) -> int:
    """Return f(a_i, a_j) from the rule's truth table."""
    return rule.table[2 * spin_bit(a_i) + spin_bit(a_j)]


def hebb_rule() -> LearningRule:
    """Hebb's rule f(a, b) = a * b."""
    return LearningRule(HEBB_TABLE)


class WeightKind(str, Enum):
    ABSENT = 'absent'
    FIXED = 'fixed'
    LEARNABLE = 'learnable'


@dataclass(frozen=True)
class WeightCell:
    """
    One ordered connection i -> j.

    Learnable cells carry the nominal value +1: their live value belongs to the
    NetworkState, so two specs that differ only there are the same network.
    """

    value: int
    kind: WeightKind

    def __post_init__(self):
        kind = WeightKind(self.kind)
        object.__setattr__(self, 'kind', kind)
        if kind is WeightKind.ABSENT:
            if self.value != 0:
                raise ValueError(f"Absent weight must have value 0, got {self.value!r}")
        else:
            _check_spin(self.value, f"{kind.value.capitalize()} weight")
            if kind is WeightKind.LEARNABLE:
                object.__setattr__(self, 'value', SPIN_UP)
            else:
                object.__setattr__(self, 'value', int(self.value))

    @classmethod
    def absent(cls) -> 'WeightCell':
        return cls(0, WeightKind.ABSENT)

    @classmethod
    def fixed(cls, value: int) -> 'WeightCell':
        return cls(value, WeightKind.FIXED)

    @classmethod
    def learnable(cls) -> 'WeightCell':
        return cls(SPIN_UP, WeightKind.LEARNABLE)


@dataclass(frozen=True)
class NetworkSpec:
    """
    Decoded network: node counts, weight cells and learning rule.

    Nodes [0, m) are inputs, node m is the output, the rest are hidden.
    weights[i][j] is the connection from source i to destination j.
    """

    n: int
    m: int
    weights: Tuple[Tuple[WeightCell, ...], ...]
    rule: LearningRule

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"Network needs at least one input node, got m={self.m}")
        if self.n < self.m + 1:
            raise ValueError(f"Network needs n >= m + 1 nodes, got n={self.n}, m={self.m}")
        rows = tuple(tuple(row) for row in self.weights)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise DimensionMismatchError(f"Weight matrix must be {self.n}x{self.n}")
        object.__setattr__(self, 'weights', rows)

    @classmethod
    def from_arrays(cls, values: np.ndarray, learnable: np.ndarray,
                    rule: LearningRule, m: int = 1) -> 'NetworkSpec':
        """
        Build a spec from a value matrix and a learnable mask.

        Args:
            values: (n, n) matrix of +1/-1/0; ignored where learnable
            learnable: (n, n) boolean mask
            rule: Learning rule
            m: Number of input nodes

        Returns:
            NetworkSpec
        """
        values = np.asarray(values)
        learnable = np.asarray(learnable, dtype=bool)
        n = values.shape[0]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if learnable[i, j]:
                    row.append(WeightCell.learnable())
                elif values[i, j] == 0:
                    row.append(WeightCell.absent())
                else:
                    row.append(WeightCell.fixed(int(values[i, j])))
            rows.append(tuple(row))
        return cls(n=n, m=m, weights=tuple(rows), rule=rule)

    @classmethod
    def empty(cls, n: int, m: int = 1, rule: Optional[LearningRule] = None) -> 'NetworkSpec':
        """Network with every cell absent."""
        rule = rule or LearningRule((SPIN_DOWN,) * 4)
        return cls.from_arrays(np.zeros((n, n), dtype=np.int8),
                               np.zeros((n, n), dtype=bool), rule, m)

    @property
    def input_nodes(self) -> range:
        return range(0, self.m)

    @property
    def output_node(self) -> int:
        return self.m

    @property
    def hidden_nodes(self) -> range:
        return range(self.m + 1, self.n)

    @functools.cached_property
    def learnable_mask(self) -> np.ndarray:
        mask = np.array([[cell.kind is WeightKind.LEARNABLE for cell in row]
                         for row in self.weights], dtype=bool)
        mask.setflags(write=False)
        return mask

    @functools.cached_property
    def value_matrix(self) -> np.ndarray:
        """Fixed values with 0 at absent and learnable cells."""
        values = np.array([[0 if cell.kind is WeightKind.LEARNABLE else cell.value
                            for cell in row] for row in self.weights], dtype=np.int8)
        values.setflags(write=False)
        return values

    @functools.cached_property
    def learnable_cells(self) -> Tuple[Tuple[int, int], ...]:
        """Learnable (i, j) pairs in row-major order."""
        return tuple((int(i), int(j)) for i, j in zip(*np.nonzero(self.learnable_mask)))

    @property
    def learnable_count(self) -> int:
        return len(self.learnable_cells)

    def weights_for(self, state: 'NetworkState') -> np.ndarray:
        """Current weight matrix: fixed values plus the state's learnable values."""
        weights = self.value_matrix.copy()
        weights[self.learnable_mask] = state.learnable_values
        return weights

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'm': self.m,
            'rule': list(self.rule.table),
            'weights': [[cell.value, cell.kind.value] for row in self.weights for cell in row],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'NetworkSpec':
        """
        Rebuild a spec from its JSON document.

        Raises:
            KeyError, ValueError, TypeError: on malformed documents
        """
        n = int(data['n'])
        m = int(data.get('m', 1))
        flat = list(data['weights'])
        if len(flat) != n * n:
            raise DimensionMismatchError(f"Expected {n * n} weight entries, got {len(flat)}")
        cells = [WeightCell(int(value), WeightKind(kind)) for value, kind in flat]
        rows = tuple(tuple(cells[i * n:(i + 1) * n]) for i in range(n))
        return cls(n=n, m=m, weights=rows, rule=LearningRule(tuple(data['rule'])))


@dataclass(frozen=True)
class NetworkState:
    """Node activations plus the live values of the learnable cells (row-major)."""

    activations: Tuple[int, ...]
    learnable_values: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'activations', tuple(int(a) for a in self.activations))
        object.__setattr__(self, 'learnable_values',
                           tuple(int(v) for v in self.learnable_values))


@dataclass(frozen=True)
class ClampSet:
    """Clamped spins for input and output nodes, as (node, spin) pairs."""

    values: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        pairs = tuple(sorted((int(node), _check_spin(spin, f"Clamp on node {node}"))
                             for node, spin in dict(self.values).items()))
        object.__setattr__(self, 'values', pairs)

    @classmethod
    def of(cls, inputs: Sequence[int] = (), output: Optional[int] = None,
           m: Optional[int] = None) -> 'ClampSet':
        """
        Clamp input nodes 0.. to `inputs` and, if given, the output node to `output`.

        Args:
            inputs: Spins for the first len(inputs) input nodes
            output: Spin for the output node, or None to leave it free
            m: Input node count (defaults to len(inputs)); the output node is m
        """
        m = len(inputs) if m is None else m
        pairs = list(enumerate(inputs))
        if output is not None:
            pairs.append((m, output))
        return cls(tuple(pairs))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.values)

    def validate(self, spec: NetworkSpec):
        for node, _ in self.values:
            if not 0 <= node <= spec.output_node:
                raise ClampError(f"Node {node} is not an input or output node "
                                 f"(hidden nodes are never clamped)")

    def arrays(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Return (mask, values) vectors of length n."""
        mask = np.zeros(n, dtype=bool)
        values = np.full(n, REST_SPIN, dtype=np.int8)
        for node, spin in self.values:
            mask[node] = True
            values[node] = spin
        return mask, values


# ---------------------------------------------------------------------------
# Batched mechanics


def step_arrays(activations: np.ndarray, weights: np.ndarray, learnable: np.ndarray,
                rules: np.ndarray, clamp_mask: np.ndarray,
                clamp_values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Advance R independent rows by one synchronous step.

    Clamps overwrite the time-t activations first; every new activation and every
    learnable weight is then computed from time-t values only.

    Args:
        activations: (R, n) spins
        weights: (R, n, n) current weights, source on axis 1, destination on axis 2
        learnable: (R, n, n) or (n, n) boolean mask
        rules: (R, 4) or (1, 4) rule tables
        clamp_mask: (R, n) or (n,) booleans
        clamp_values: (R, n) or (n,) clamp spins

    Returns:
        (activations, weights) at time t + 1
    """
    rows = activations.shape[0]
    acts = np.where(clamp_mask, clamp_values, activations).astype(np.int8)

    net = np.einsum('ri,rij->rj', acts.astype(np.int32), weights.astype(np.int32))
    new_acts = np.where(net > 0, SPIN_UP, SPIN_DOWN).astype(np.int8)
    new_acts = np.where(clamp_mask, clamp_values, new_acts).astype(np.int8)

    bits = (acts > 0).astype(np.intp)
    index = 2 * bits[:, :, None] + bits[:, None, :]
    tables = np.broadcast_to(rules, (rows, 4))
    learned = tables[np.arange(rows)[:, None, None], index]
    new_weights = np.where(learnable, learned, weights).astype(np.int8)
    return new_acts, new_weights


@dataclass(frozen=True)
class NetworkBatch:
    """
    A stack of networks with the same n and m, as arrays.

    values holds fixed weights (0 where absent or learnable), learnable the masks,
    rules the four-entry tables.
    """

    n: int
    m: int
    values: np.ndarray
    learnable: np.ndarray
    rules: np.ndarray

    @classmethod
    def from_specs(cls, specs: Sequence[NetworkSpec]) -> 'NetworkBatch':
        if not specs:
            raise ValueError("Cannot build a batch from zero networks")
        n, m = specs[0].n, specs[0].m
        if any(s.n != n or s.m != m for s in specs):
            raise DimensionMismatchError("All networks in a batch must share n and m")
        return cls(n=n, m=m,
                   values=np.stack([s.value_matrix for s in specs]).astype(np.int8),
                   learnable=np.stack([s.learnable_mask for s in specs]),
                   rules=np.stack([s.rule.as_array() for s in specs]))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def select(self, indices: Iterable[int]) -> 'NetworkBatch':
        idx = np.asarray(list(indices), dtype=np.intp)
        return NetworkBatch(self.n, self.m, self.values[idx], self.learnable[idx],
                            self.rules[idx])

    def spec(self, index: int) -> NetworkSpec:
        return NetworkSpec.from_arrays(self.values[index], self.learnable[index],
                                       LearningRule(tuple(int(r) for r in self.rules[index])),
                                       self.m)

    def learnable_counts(self) -> np.ndarray:
        return self.learnable.sum(axis=(1, 2))


# ---------------------------------------------------------------------------
# Single-network operations


def _check_state(spec: NetworkSpec, state: NetworkState):
    if len(state.activations) != spec.n:
        raise DimensionMismatchError(
            f"State has {len(state.activations)} activations, network has {spec.n} nodes")
    if len(state.learnable_values) != spec.learnable_count:
        raise DimensionMismatchError(
            f"State has {len(state.learnable_values)} learnable values, "
            f"network has {spec.learnable_count} learnable cells")


def step(spec: NetworkSpec, state: NetworkState, clamps: ClampSet) -> NetworkState:
    """
    One synchronous update of activations and learnable weights.

    Args:
        spec: Network
        state: State at time t
        clamps: Clamped input/output nodes

    Returns:
        State at time t + 1
    """
    _check_state(spec, state)
    clamps.validate(spec)
    mask, values = clamps.arrays(spec.n)
    acts = np.array([state.activations], dtype=np.int8)
    weights = spec.weights_for(state)[None, :, :]
    new_acts, new_weights = step_arrays(acts, weights, spec.learnable_mask,
                                        spec.rule.as_array()[None, :], mask, values)
    return NetworkState(tuple(new_acts[0]), tuple(new_weights[0][spec.learnable_mask]))


def _seed_key(seed: Seed) -> Tuple[int, ...]:
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    return tuple(int(s) for s in seed)


@functools.lru_cache(maxsize=4096)
def _initial_draw_cached(seed_key: Tuple[int, ...], n: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = make_rng(seed_key if len(seed_key) > 1 else seed_key[0])
    spins = (2 * rng.integers(0, 2, size=n + n * n, dtype=np.int8) - 1).astype(np.int8)
    acts = spins[:n]
    weights = spins[n:].reshape(n, n)
    acts.setflags(write=False)
    weights.setflags(write=False)
    return acts, weights


def initial_draw(seed: Seed, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw one spin per node and one per ordered pair from the seeded stream.

    Every network with n nodes reads the same draw for the same seed, which is what
    makes an initialisation shared across a population.

    Returns:
        (node spins (n,), cell spins (n, n)), read-only
    """
    return _initial_draw_cached(_seed_key(seed), n)


def random_state(spec: NetworkSpec, seed: Seed) -> NetworkState:
    """
    Random hidden activations and learnable values; inputs/output rest at -1.

    Args:
        spec: Network
        seed: Integer seed or sequence of integer keys

    Returns:
        NetworkState
    """
    node_spins, cell_spins = initial_draw(seed, spec.n)
    activations = [REST_SPIN] * spec.n
    for node in spec.hidden_nodes:
        activations[node] = int(node_spins[node])
    return NetworkState(tuple(activations), tuple(cell_spins[spec.learnable_mask]))

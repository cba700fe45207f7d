"""
Attractor Atlas - Exhaustive fixed-point and basin analysis of a network

The state of a network (activations plus live learnable values) evolves under
a deterministic map, so every state drains into exactly one cycle. For each
clamp mode the atlas enumerates the states consistent with the clamps, finds
the cycles (periodic points) and labels every state with its cycle and
transient length. Pairing the input=+1 and input=-1 attractors explains which
boolean function each pair of fixed points represents.

States are packed as integers over (input, output, hidden..., learnable...)
with the first component in the most significant bit, so format(s, '0kb')
prints the usual "0 for -1" notation.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..core import network
from ..core.errors import ClampError, DimensionMismatchError, EnumerationLimitError
from ..core.network import ClampSet, NetworkSpec, NetworkState, bit_spin, spin_bit
from .evaluator import function_from_outputs

logger = logging.getLogger(__name__)

DEFAULT_STATE_BIT_CAP = 24
MAX_STATE_WIDTH = 62
SUCCESSOR_CHUNK = 1 << 16

INPUT_MODES = ('1', '0')
IO_MODES = ('11', '10', '01', '00')
# Label order on diagram edges, e.g. "1,10".
PERTURBATION_ORDER = ('1', '11', '10', '0', '01', '00')


def state_width(spec: NetworkSpec) -> int:
    """Bits per packed state: one per node plus one per learnable cell."""
    return spec.n + spec.learnable_count


def format_state(state: int, width: int) -> str:
    return format(state, f'0{width}b')


def pack_state(spec: NetworkSpec, state: NetworkState) -> int:
    value = 0
    for spin in tuple(state.activations) + tuple(state.learnable_values):
        value = (value << 1) | spin_bit(spin)
    return value


def unpack_state(spec: NetworkSpec, index: int) -> NetworkState:
    width = state_width(spec)
    if not 0 <= index < (1 << width):
        raise DimensionMismatchError(f"State {index} does not fit in {width} bits")
    spins = [bit_spin((index >> (width - 1 - c)) & 1) for c in range(width)]
    return NetworkState(tuple(spins[:spec.n]), tuple(spins[spec.n:]))


def _unpack_many(states: np.ndarray, n: int, width: int) -> Tuple[np.ndarray, np.ndarray]:
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    bits = (states[:, None] >> shifts[None, :]) & 1
    spins = (2 * bits - 1).astype(np.int8)
    return spins[:, :n], spins[:, n:]


def _pack_many(spins: np.ndarray) -> np.ndarray:
    width = spins.shape[1]
    weights = np.left_shift(np.int64(1), np.arange(width - 1, -1, -1, dtype=np.int64))
    return ((spins > 0).astype(np.int64) * weights[None, :]).sum(axis=1)


def _mode_clamps(label: str) -> ClampSet:
    x = bit_spin(int(label[0]))
    y = bit_spin(int(label[1])) if len(label) > 1 else None
    return ClampSet.of((x,), y, m=1)


def transition(spec: NetworkSpec, state: int, clamps: ClampSet) -> int:
    """
    Packed successor of a packed state under the given clamps.

    Raises:
        ClampError: if a clamped component of `state` differs from its clamp value
    """
    clamps.validate(spec)
    unpacked = unpack_state(spec, state)
    for node, spin in clamps.values:
        if unpacked.activations[node] != spin:
            raise ClampError(f"State {format_state(state, state_width(spec))} has node {node} "
                             f"at {unpacked.activations[node]}, clamp says {spin}")
    return pack_state(spec, network.step(spec, unpacked, clamps))


@dataclass(frozen=True)
class Orbit:
    """A cycle of packed states, rotated to start at its smallest state."""

    states: Tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class BasinMap:
    """Orbit id and transient length of every labeled state (states sorted)."""

    states: np.ndarray
    orbit_ids: np.ndarray
    transients: np.ndarray
    partial: bool = False

    def __len__(self) -> int:
        return int(len(self.states))

    def lookup(self, state: int) -> Tuple[int, int]:
        pos = int(np.searchsorted(self.states, state))
        if pos >= len(self.states) or int(self.states[pos]) != state:
            raise KeyError(f"State {state} is not in this basin map")
        return int(self.orbit_ids[pos]), int(self.transients[pos])

    def basin_sizes(self, orbit_count: int) -> np.ndarray:
        return np.bincount(self.orbit_ids, minlength=orbit_count)

    def basin(self, orbit_id: int) -> np.ndarray:
        return self.states[self.orbit_ids == orbit_id]


class _OrbitFinder:
    """
    Cycle labeling for one clamp mode.

    Exhaustive when the free bits fit under the cap, otherwise lazy from sampled
    starts. Orbit ids are provisional until finalize().
    """

    def __init__(self, spec: NetworkSpec, clamps: ClampSet, cap: int,
                 sample_size: Optional[int], rng: Optional[np.random.Generator]):
        clamps.validate(spec)
        self.spec = spec
        self.clamps = clamps
        self.width = state_width(spec)
        if self.width > MAX_STATE_WIDTH:
            raise EnumerationLimitError(f"State width {self.width} exceeds {MAX_STATE_WIDTH} bits")

        clamped = clamps.as_dict()
        self.base = 0
        for node, spin in clamped.items():
            self.base |= spin_bit(spin) << (self.width - 1 - node)
        self.free_bits = sorted(self.width - 1 - c for c in range(self.width) if c not in clamped)
        self.free_count = len(self.free_bits)
        self._mask, self._values = clamps.arrays(spec.n)
        self._rules = spec.rule.as_array()[None, :]
        self.cycles: List[List[int]] = []

        self.exhaustive = self.free_count <= cap
        if self.exhaustive:
            self._label_all()
        else:
            if not sample_size:
                raise EnumerationLimitError(
                    f"{self.free_count} free state bits exceed the cap of {cap}; "
                    f"use sampling mode")
            cache: Dict[int, int] = {}

            def lazy(local: int) -> int:
                if local not in cache:
                    cache[local] = int(self._successors(np.array([local], dtype=np.int64))[0])
                return cache[local]

            self._succ = lazy
            self.orbit_of = defaultdict(lambda: -1)
            self.transient = defaultdict(lambda: -1)
            rng = rng if rng is not None else np.random.default_rng(0)
            starts = rng.integers(0, 1 << self.free_count, size=sample_size, dtype=np.int64)
            self.label(int(s) for s in starts)
            logger.info(f"Sampling mode: {sample_size} starts over 2^{self.free_count} states")

    # -- index conversion

    def to_global(self, locals_: np.ndarray) -> np.ndarray:
        out = np.full(locals_.shape, self.base, dtype=np.int64)
        for q, bit in enumerate(self.free_bits):
            out |= ((locals_ >> q) & 1) << bit
        return out

    def to_local(self, globals_: np.ndarray) -> np.ndarray:
        out = np.zeros(globals_.shape, dtype=np.int64)
        for q, bit in enumerate(self.free_bits):
            out |= ((globals_ >> bit) & 1) << q
        return out

    def local_of(self, state: int) -> int:
        clamp_bits = sum(1 << (self.width - 1 - node) for node, _ in self.clamps.values)
        if state & clamp_bits != self.base:
            raise ClampError(f"State {format_state(state, self.width)} disagrees with the clamps")
        return int(self.to_local(np.array([state], dtype=np.int64))[0])

    def global_of(self, local: int) -> int:
        return int(self.to_global(np.array([local], dtype=np.int64))[0])

    def _successors(self, locals_: np.ndarray) -> np.ndarray:
        spec = self.spec
        states = self.to_global(locals_)
        acts, learn = _unpack_many(states, spec.n, self.width)
        weights = np.broadcast_to(spec.value_matrix, (len(states), spec.n, spec.n)).copy()
        weights[:, spec.learnable_mask] = learn
        new_acts, new_weights = network.step_arrays(acts, weights, spec.learnable_mask,
                                                    self._rules, self._mask, self._values)
        spins = np.concatenate([new_acts, new_weights[:, spec.learnable_mask]], axis=1)
        return self.to_local(_pack_many(spins))

    # -- labeling

    def _label_all(self):
        """
        Label every state with array operations.

        After k rounds of pointer jumping `jump` is f^(2^k) and `low[s]` the
        smallest index among the first 2^k states of the orbit of s. With
        2^k >= size, jump[s] is periodic and low[jump[s]] names its cycle.
        """
        size = 1 << self.free_count
        dtype = np.int32 if self.free_count < 31 else np.int64
        succ = np.empty(size, dtype=dtype)
        for start in range(0, size, SUCCESSOR_CHUNK):
            chunk = np.arange(start, min(size, start + SUCCESSOR_CHUNK), dtype=np.int64)
            succ[start:start + len(chunk)] = self._successors(chunk)

        jump = succ.copy()
        low = np.arange(size, dtype=dtype)
        for _ in range(self.free_count):
            low = np.minimum(low, low[jump])
            jump = jump[jump]

        periodic = np.zeros(size, dtype=bool)
        periodic[jump] = True
        cycle_key = low[jump]
        reps = np.unique(cycle_key)
        for rep in reps.tolist():
            cycle = [rep]
            s = int(succ[rep])
            while s != rep:
                cycle.append(s)
                s = int(succ[s])
            self.cycles.append(cycle)

        transient = np.where(periodic, 0, -1).astype(np.int64)
        pending = np.flatnonzero(~periodic)
        while pending.size:
            ahead = transient[succ[pending]]
            done = ahead >= 0
            transient[pending[done]] = ahead[done] + 1
            pending = pending[~done]

        self._succ = lambda local: int(succ[local])
        self.orbit_of = np.searchsorted(reps, cycle_key).astype(np.int64)
        self.transient = transient
        logger.debug(f"Labeled {size} states: {len(reps)} cycles, "
                     f"longest transient {int(transient.max())}")

    def label(self, starts: Iterable[int]):
        orbit_of, transient, succ = self.orbit_of, self.transient, self._succ
        for start in starts:
            if orbit_of[start] >= 0:
                continue
            path: List[int] = []
            position: Dict[int, int] = {}
            s = start
            while orbit_of[s] < 0 and s not in position:
                position[s] = len(path)
                path.append(s)
                s = succ(s)
            if orbit_of[s] < 0:
                first = position[s]
                oid = len(self.cycles)
                cycle = path[first:]
                self.cycles.append(cycle)
                for c in cycle:
                    orbit_of[c] = oid
                    transient[c] = 0
                tail, base = path[:first], 0
            else:
                oid, base, tail = orbit_of[s], transient[s], path
            for depth, t in enumerate(reversed(tail), 1):
                orbit_of[t] = oid
                transient[t] = base + depth

    def attractor(self, state: int) -> int:
        """Provisional orbit id reached from a packed state."""
        local = self.local_of(state)
        self.label([local])
        return self.orbit_of[local]

    def entry_state(self, state: int) -> int:
        """First periodic point reached from a packed state."""
        local = self.local_of(state)
        self.label([local])
        while self.transient[local] > 0:
            local = self._succ(local)
        return self.global_of(local)

    def finalize(self) -> Tuple[List[Orbit], List[int], BasinMap]:
        """Canonical orbits sorted by smallest state, provisional-to-final id map, basins."""
        orbits = []
        for cycle in self.cycles:
            states = [self.global_of(c) for c in cycle]
            k = states.index(min(states))
            orbits.append(Orbit(tuple(states[k:] + states[:k])))
        order = sorted(range(len(orbits)), key=lambda i: orbits[i].states[0])
        remap = [0] * len(orbits)
        for final, provisional in enumerate(order):
            remap[provisional] = final
        orbits = [orbits[i] for i in order]
        remap_arr = np.array(remap, dtype=np.int64)

        if self.exhaustive:
            locals_ = np.arange(len(self.orbit_of), dtype=np.int64)
            states = self.to_global(locals_)
            ids = remap_arr[np.array(self.orbit_of, dtype=np.int64)]
            trans = np.array(self.transient, dtype=np.int64)
            sort = np.argsort(states, kind='stable')
            basins = BasinMap(states[sort], ids[sort], trans[sort], partial=False)
        else:
            labeled = sorted(k for k, v in self.orbit_of.items() if v >= 0)
            locals_ = np.array(labeled, dtype=np.int64)
            states = self.to_global(locals_)
            ids = remap_arr[np.array([self.orbit_of[k] for k in labeled], dtype=np.int64)]
            trans = np.array([self.transient[k] for k in labeled], dtype=np.int64)
            sort = np.argsort(states, kind='stable')
            basins = BasinMap(states[sort], ids[sort], trans[sort], partial=True)
        return orbits, remap, basins


def find_orbits(spec: NetworkSpec, clamps: ClampSet, cap: int = DEFAULT_STATE_BIT_CAP,
                sample_size: Optional[int] = None,
                rng: Optional[np.random.Generator] = None) -> Tuple[List[Orbit], BasinMap]:
    """
    All cycles of the clamped map and the basin of every state.

    Args:
        spec: Network
        clamps: Clamped input/output nodes
        cap: Maximum number of free state bits to enumerate
        sample_size: If the cap is exceeded, number of sampled start states
        rng: Generator for sampled starts

    Returns:
        (orbits sorted by smallest state, BasinMap)

    Raises:
        EnumerationLimitError: if the cap is exceeded and no sample size is given
    """
    finder = _OrbitFinder(spec, clamps, cap, sample_size, rng)
    orbits, _, basins = finder.finalize()
    return orbits, basins


# ---------------------------------------------------------------------------
# Atlas


@dataclass
class ModeAnalysis:
    """Orbits and basins for one clamp mode."""

    label: str
    clamps: ClampSet
    orbits: List[Orbit]
    basins: BasinMap

    def to_dict(self, width: int) -> Dict[str, Any]:
        sizes = self.basins.basin_sizes(len(self.orbits))
        result = []
        for oid, orbit in enumerate(self.orbits):
            in_basin = self.basins.orbit_ids == oid
            result.append({
                'id': oid,
                'states': [format_state(s, width) for s in orbit.states],
                'period': orbit.period,
                'basin_size': int(sizes[oid]),
                'max_transient': int(self.basins.transients[in_basin].max()) if in_basin.any() else 0,
            })
        return {
            'clamps': {str(node): spin for node, spin in self.clamps.values},
            'states_labeled': len(self.basins),
            'orbits': result,
        }


@dataclass(frozen=True)
class Pairing:
    """Mutually paired attractors of the input=+1 and input=-1 modes."""

    plus_orbit: int
    minus_orbit: int
    function: Optional[int]


@dataclass(frozen=True)
class DiagramEdge:
    tail: int
    head: int
    labels: Tuple[str, ...]


@dataclass
class AttractorAtlas:
    """Everything classify_functions learns about one network."""

    spec: NetworkSpec
    width: int
    modes: Dict[str, ModeAnalysis]
    pairings: List[Pairing]
    unpaired: List[Dict[str, Any]]
    releases: Dict[str, List[int]]
    edges: List[DiagramEdge]
    consistency_violations: List[str] = field(default_factory=list)
    partial: bool = False

    def periodic_points(self) -> List[int]:
        points = set()
        for label in INPUT_MODES:
            for orbit in self.modes[label].orbits:
                points.update(orbit.states)
        return sorted(points)

    def fixed_point_count(self) -> int:
        return sum(1 for label in INPUT_MODES for o in self.modes[label].orbits if o.period == 1)

    def represented_functions(self) -> List[int]:
        return sorted(p.function for p in self.pairings if p.function is not None)

    def covers_all_functions(self) -> bool:
        """Exactly four pairings representing f0..f3 once each."""
        return len(self.pairings) == 4 and self.represented_functions() == [0, 1, 2, 3]

    def to_dict(self) -> Dict[str, Any]:
        plus, minus = self.modes['1'], self.modes['0']
        return {
            'n': self.spec.n,
            'learnable_count': self.spec.learnable_count,
            'state_width': self.width,
            'partial': self.partial,
            'modes': {label: mode.to_dict(self.width) for label, mode in self.modes.items()},
            'pairings': [{
                'plus_orbit': p.plus_orbit,
                'minus_orbit': p.minus_orbit,
                'plus_states': [format_state(s, self.width)
                                for s in plus.orbits[p.plus_orbit].states],
                'minus_states': [format_state(s, self.width)
                                 for s in minus.orbits[p.minus_orbit].states],
                'function': f"f{p.function}" if p.function is not None else None,
            } for p in self.pairings],
            'unpaired': self.unpaired,
            'releases': self.releases,
            'functions': [f"f{f}" for f in self.represented_functions()],
            'covers_all_functions': self.covers_all_functions(),
            'consistency_violations': self.consistency_violations,
        }


def _set_bits(state: int, width: int, components: Dict[int, int]) -> int:
    for component, spin in components.items():
        bit = 1 << (width - 1 - component)
        state = (state | bit) if spin > 0 else (state & ~bit)
    return state


def _common_destination(finder: _OrbitFinder, states: Sequence[int],
                        width: int, input_spin: int) -> Optional[int]:
    targets = {finder.attractor(_set_bits(s, width, {0: input_spin})) for s in states}
    return targets.pop() if len(targets) == 1 else None


def classify_functions(spec: NetworkSpec, cap: int = DEFAULT_STATE_BIT_CAP,
                       sample_size: Optional[int] = None,
                       rng: Optional[np.random.Generator] = None,
                       include_free: bool = True) -> AttractorAtlas:
    """
    Build the attractor atlas of a one-input network.

    Finds orbits with the input clamped to each value (output free) and with
    input and output clamped to all four combinations, pairs input=+1 and
    input=-1 attractors that lead into each other when the input is flipped,
    names the function each pair of fixed points represents, records where each
    input+output orbit goes when the output is released, and collects the
    perturbation edges of the state transition diagram.

    Args:
        spec: Network with m = 1
        cap: Maximum free state bits to enumerate per mode
        sample_size: Sampled starts per mode when the cap is exceeded
        rng: Generator for sampled starts
        include_free: Also analyse the unclamped map when it fits under the cap

    Returns:
        AttractorAtlas
    """
    if spec.m != 1:
        raise ValueError(f"Function classification needs exactly one input node, got m={spec.m}")
    width = state_width(spec)
    out = spec.output_node

    finders = {label: _OrbitFinder(spec, _mode_clamps(label), cap, sample_size, rng)
               for label in INPUT_MODES + IO_MODES}

    # Pairing, releases and edges on provisional ids. In sampling mode each of
    # them can discover new orbits, so repeat until nothing new turns up.
    plus, minus = finders['1'], finders['0']
    forward: Dict[int, Optional[int]] = {}
    backward: Dict[int, Optional[int]] = {}
    raw_releases: Dict[str, List[int]] = {label: [] for label in IO_MODES}
    edge_labels: Dict[Tuple[int, int], List[str]] = defaultdict(list)
    visited: Set[int] = set()
    while True:
        for oid in range(len(forward), len(plus.cycles)):
            forward[oid] = _common_destination(
                minus, [plus.global_of(c) for c in plus.cycles[oid]], width, -1)
        for oid in range(len(backward), len(minus.cycles)):
            backward[oid] = _common_destination(
                plus, [minus.global_of(c) for c in minus.cycles[oid]], width, +1)

        # Release of every input+output orbit into the input-only map
        for label in IO_MODES:
            finder, target = finders[label], finders[label[0]]
            for cycle in finder.cycles[len(raw_releases[label]):]:
                raw_releases[label].append(target.attractor(finder.global_of(cycle[0])))

        # Diagram edges from every input-only periodic point
        tails = sorted({finders[label].global_of(c) for label in INPUT_MODES
                        for cycle in finders[label].cycles for c in cycle} - visited)
        for tail in tails:
            for label in PERTURBATION_ORDER:
                x = bit_spin(int(label[0]))
                if len(label) == 1:
                    head = finders[label].entry_state(_set_bits(tail, width, {0: x}))
                else:
                    y = bit_spin(int(label[1]))
                    settled = finders[label].entry_state(_set_bits(tail, width, {0: x, out: y}))
                    head = finders[label[0]].entry_state(settled)
                if head != tail:
                    edge_labels[(tail, head)].append(label)
        visited.update(tails)

        settled_all = (len(forward) == len(plus.cycles) and len(backward) == len(minus.cycles)
                       and all(len(raw_releases[label]) == len(finders[label].cycles)
                               for label in IO_MODES))
        if not tails and settled_all:
            break

    # Everything is labeled now; fix the numbering
    finals = {label: finder.finalize() for label, finder in finders.items()}
    modes = {label: ModeAnalysis(label, finders[label].clamps, orbits, basins)
             for label, (orbits, _, basins) in finals.items()}
    remaps = {label: remap for label, (_, remap, _) in finals.items()}
    plus_remap, minus_remap = remaps['1'], remaps['0']

    pairings: List[Pairing] = []
    unpaired: List[Dict[str, Any]] = []
    for p_oid, m_oid in sorted(forward.items(), key=lambda kv: plus_remap[kv[0]]):
        if m_oid is not None and backward.get(m_oid) == p_oid:
            p_orbit = modes['1'].orbits[plus_remap[p_oid]]
            m_orbit = modes['0'].orbits[minus_remap[m_oid]]
            function = None
            if p_orbit.period == 1 and m_orbit.period == 1:
                at_plus = bit_spin((p_orbit.states[0] >> (width - 1 - out)) & 1)
                at_minus = bit_spin((m_orbit.states[0] >> (width - 1 - out)) & 1)
                function = function_from_outputs(at_minus, at_plus).id
            pairings.append(Pairing(plus_remap[p_oid], minus_remap[m_oid], function))
        else:
            unpaired.append({
                'mode': '1', 'orbit': plus_remap[p_oid],
                'leads_to': minus_remap[m_oid] if m_oid is not None else 'ambiguous',
            })
    paired_minus = {p.minus_orbit for p in pairings}
    for m_oid, p_oid in sorted(backward.items(), key=lambda kv: minus_remap[kv[0]]):
        if minus_remap[m_oid] not in paired_minus:
            unpaired.append({
                'mode': '0', 'orbit': minus_remap[m_oid],
                'leads_to': plus_remap[p_oid] if p_oid is not None else 'ambiguous',
            })
    if unpaired:
        logger.debug(f"{len(unpaired)} attractors without a mutual partner")

    releases = {label: [remaps[label[0]][t] for t in targets]
                for label, targets in raw_releases.items()}
    # finalize() sorted the io orbits; reorder releases to match
    for label in IO_MODES:
        order = sorted(range(len(remaps[label])), key=lambda i: remaps[label][i])
        releases[label] = [releases[label][i] for i in order]

    violations = []
    for x_label in INPUT_MODES:
        for orbit in modes[x_label].orbits:
            outputs = {(s >> (width - 1 - out)) & 1 for s in orbit.states}
            if len(outputs) != 1:
                continue
            io_label = x_label + str(outputs.pop())
            if orbit not in modes[io_label].orbits:
                violations.append(f"orbit {[format_state(s, width) for s in orbit.states]} "
                                  f"of mode {x_label} is not an orbit of mode {io_label}")

    if include_free and spec.n + spec.learnable_count <= cap:
        free_orbits, free_basins = find_orbits(spec, ClampSet(), cap)
        modes['free'] = ModeAnalysis('free', ClampSet(), free_orbits, free_basins)

    edges = [DiagramEdge(tail, head, tuple(labels))
             for (tail, head), labels in sorted(edge_labels.items())]
    for label in INPUT_MODES:
        for orbit in modes[label].orbits:
            if orbit.period > 1:
                for a, b in zip(orbit.states, orbit.states[1:] + orbit.states[:1]):
                    edges.append(DiagramEdge(a, b, ()))
    edges.sort(key=lambda e: (e.tail, e.head, e.labels))

    return AttractorAtlas(
        spec=spec, width=width, modes=modes, pairings=pairings, unpaired=unpaired,
        releases=releases, edges=edges, consistency_violations=violations,
        partial=any(not f.exhaustive for f in finders.values()),
    )


# ---------------------------------------------------------------------------
# Reports


def _quote(text: str) -> str:
    return '"{}"'.format(text.replace('"', r'\"'))


def export_transition_diagram(atlas: AttractorAtlas) -> str:
    """
    State transition diagram in the DOT language.

    One node per periodic point of the input-clamped maps, one edge per
    (tail, head) with the perturbations that cause it as label: "1" means input
    set to 1 with the output free, "10" input 1 with the output clamped to 0.
    Unlabeled dashed edges follow cycles of period > 1.
    """
    lines = ['digraph "transitions" {', '\trankdir=LR;']
    for point in atlas.periodic_points():
        text = format_state(point, atlas.width)
        lines.append(f'\t{_quote(text)} [label={_quote(text)}];')
    for edge in atlas.edges:
        tail = _quote(format_state(edge.tail, atlas.width))
        head = _quote(format_state(edge.head, atlas.width))
        if edge.labels:
            lines.append(f'\t{tail} -> {head} [label={_quote(",".join(edge.labels))}];')
        else:
            lines.append(f'\t{tail} -> {head} [style=dashed];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def render_fixed_point_table(atlas: AttractorAtlas, columns: int = 3) -> str:
    """
    Periodic points with clamped input and their basins, "0" written for -1.
    """
    width = atlas.width
    header = 'Input Output ' + ' '.join(f"H{i}" for i in range(1, len(atlas.spec.hidden_nodes) + 1))
    header += ' ' + ' '.join(f"L{i}" for i in range(1, atlas.spec.learnable_count + 1))
    lines = [f"State layout: {header.strip()}", ""]
    if atlas.partial:
        lines.append("(partial: sampled state space)")
        lines.append("")
    for label in ('0', '1'):
        mode = atlas.modes[label]
        lines.append(f"Input clamped to {label}: {len(mode.orbits)} orbit(s)")
        lines.append("-" * 60)
        for oid, orbit in enumerate(mode.orbits):
            points = ' '.join(format_state(s, width) for s in orbit.states)
            basin = [format_state(int(s), width) for s in mode.basins.basin(oid)]
            lines.append(f"{points}  (period {orbit.period}, basin {len(basin)})")
            for start in range(0, len(basin), columns):
                lines.append("    " + "  ".join(basin[start:start + columns]))
        lines.append("")
    plus, minus = atlas.modes['1'], atlas.modes['0']
    lines.append("Fixed point pairs")
    lines.append("-" * 60)
    for p in atlas.pairings:
        a = ' '.join(format_state(s, width) for s in plus.orbits[p.plus_orbit].states)
        b = ' '.join(format_state(s, width) for s in minus.orbits[p.minus_orbit].states)
        name = f"f{p.function}" if p.function is not None else "-"
        lines.append(f"{a}  {b}  {name}")
    if atlas.unpaired:
        lines.append(f"Unpaired attractors: {len(atlas.unpaired)}")
    return '\n'.join(lines) + '\n'

"""
Shared fixtures for the LBNN Workbench tests
"""

import os

import numpy as np
import pytest

from src.core.network import LearningRule, NetworkSpec, WeightCell, hebb_rule


def random_spec(rng: np.random.Generator, n: int = 5, learnable_cells: int = 2) -> NetworkSpec:
    """Random network with exactly `learnable_cells` learnable cells."""
    values = rng.choice(np.array([-1, 0, 1], dtype=np.int8), size=(n, n))
    learnable = np.zeros(n * n, dtype=bool)
    learnable[rng.choice(n * n, size=learnable_cells, replace=False)] = True
    rule = LearningRule(tuple(int(v) for v in rng.choice([-1, 1], size=4)))
    return NetworkSpec.from_arrays(values, learnable.reshape(n, n), rule)


@pytest.fixture
def empty_two_node():
    """Input and output only, no connections."""
    return NetworkSpec.empty(2)


@pytest.fixture
def relay_spec():
    """Two nodes with a fixed +1 connection from input to output."""
    weights = ((WeightCell.absent(), WeightCell.fixed(1)),
               (WeightCell.absent(), WeightCell.absent()))
    return NetworkSpec(n=2, m=1, weights=weights, rule=hebb_rule())


@pytest.fixture
def learnable_relay_spec():
    """Two nodes with a learnable connection from input to output under Hebb's rule."""
    weights = ((WeightCell.absent(), WeightCell.learnable()),
               (WeightCell.absent(), WeightCell.absent()))
    return NetworkSpec(n=2, m=1, weights=weights, rule=hebb_rule())


@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    monkeypatch.delenv('LBNN_SEED', raising=False)
    yield
    os.environ.pop('LBNN_SEED', None)

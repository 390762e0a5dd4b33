"""Shared fixtures: the packaged worlds plus one induced L-shape run.

The induction run is session-scoped because several test modules assert
against the same frozen trace and rerunning it per test would dominate
suite time.
"""

from __future__ import annotations

import pytest

from oneshot.advice import ScriptedOracle
from oneshot.loop import LoopConfig, run_induction
from oneshot.worlds import (
    assembly_domain,
    blocks_domain,
    l_shape_example,
    l_truth,
    std_constraints,
)


@pytest.fixture(scope="session")
def blocks():
    return blocks_domain()


@pytest.fixture(scope="session")
def assembly():
    return assembly_domain()


@pytest.fixture(scope="session")
def lib():
    return std_constraints()


@pytest.fixture(scope="session")
def lshape():
    return l_shape_example()


@pytest.fixture(scope="session")
def truth():
    return l_truth()


@pytest.fixture(scope="session")
def lshape_result(lshape, blocks, lib, truth):
    """One guided induction run on the L shape with the default config."""
    return run_induction(lshape, blocks, lib, ScriptedOracle(truth), LoopConfig())

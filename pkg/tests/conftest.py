import sys
import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from floodnet import _kernels
from floodnet.graph import GraphSequence, GraphSnapshot

BACKENDS = [k for k in (_kernels.numpy_kernels, _kernels.numba_kernels) if k is not None]


@pytest.fixture(params=BACKENDS, ids=lambda k: k.name)
def backend(request, monkeypatch):
    """Run the test once per kernel implementation."""
    monkeypatch.setattr(_kernels, "active", request.param)
    return request.param


def naive_flood(n, rounds):
    """Set-based flooding straight from the update rule; returns list of list-of-sets."""
    state = [{i} for i in range(1, n + 1)]
    trace = [[set(s) for s in state]]
    for edges in rounds:
        new = [set(s) for s in state]
        for a, b in edges:
            new[b - 1] |= state[a - 1]
        state = new
        trace.append([set(s) for s in state])
    return trace


def all_simple_cycles(n, edges):
    """Every directed simple cycle as a tuple, by brute force over node orders."""
    es = set(edges)
    found = set()
    for size in range(2, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            first = combo[0]
            for rest in itertools.permutations(combo[1:]):
                cyc = (first,) + rest
                if all((cyc[t], cyc[(t + 1) % size]) in es for t in range(size)):
                    found.add(cyc)
    return found


@st.composite
def snapshots(draw, min_n=1, max_n=8, round=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return GraphSnapshot(n, frozenset(edges), round)


@st.composite
def sequences(draw, min_n=1, max_n=8, max_len=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    length = draw(st.integers(0, max_len))
    rounds = []
    for _ in range(length):
        rounds.append(draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set())
    return GraphSequence.from_edge_sets(n, rounds)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

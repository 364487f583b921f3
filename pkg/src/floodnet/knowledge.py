"""Flooding update over a graph sequence and the FCS/FDS/FKS predicates.

Node ``i`` holds datum ``j`` at round ``k`` when bit ``j-1`` of its packed
row is set. Each round every node keeps what it has and merges the full
sets of all its in-neighbours.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Sequence

import numpy as np

from . import _kernels
from ._kernels import full_mask, identity_words, unpack_rows
from .errors import ContractError, InvalidNodeError, InvalidSizeError
from .graph import GraphSequence, GraphSnapshot


@dataclass(frozen=True, eq=False)
class KnowledgeState:
    """Knowledge sets of all nodes at one round, packed one row per node."""

    n: int
    words: np.ndarray
    round: int = 0

    def __post_init__(self) -> None:
        words = np.array(self.words, dtype=np.uint64, copy=True)
        if words.shape != (self.n, _kernels.n_words(self.n)):
            raise ContractError(f"packed rows have shape {words.shape} for n={self.n}")
        words.setflags(write=False)
        object.__setattr__(self, "words", words)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeState):
            return NotImplemented
        return (self.n == other.n and self.round == other.round
                and bool(np.array_equal(self.words, other.words)))

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_bool(cls, bits: np.ndarray, round: int = 0) -> "KnowledgeState":
        bits = np.asarray(bits, dtype=bool)
        return cls(bits.shape[0], _kernels.pack_rows(bits), round)

    def to_bool(self) -> np.ndarray:
        """``(n, n)`` array, entry ``[i-1, j-1]`` true iff node i holds d_j."""
        return unpack_rows(self.words, self.n)

    @cached_property
    def cardinalities(self) -> np.ndarray:
        """``|K_i(k)|`` for i = 1..n."""
        return _kernels.active.popcount_rows(self.words)

    def knows(self, i: int, j: int) -> bool:
        _check_node(self.n, i)
        _check_node(self.n, j)
        w, b = divmod(j - 1, _kernels.WORD_BITS)
        return bool((int(self.words[i - 1, w]) >> b) & 1)

    def holders(self, j: int) -> int:
        """Number of nodes whose set contains datum ``j``."""
        _check_node(self.n, j)
        w, b = divmod(j - 1, _kernels.WORD_BITS)
        return int(((self.words[:, w] >> np.uint64(b)) & np.uint64(1)).sum())

    def total(self) -> int:
        return int(self.cardinalities.sum())


def _check_node(n: int, v: int) -> None:
    if not 1 <= v <= n:
        raise InvalidNodeError(f"node {v} outside 1..{n}")


def initial_state(n: int) -> KnowledgeState:
    if n < 1:
        raise InvalidSizeError(f"network needs n >= 1, got {n}")
    return KnowledgeState(n, identity_words(n), 0)


def flood_step(state: KnowledgeState, g: GraphSnapshot) -> KnowledgeState:
    if g.n != state.n:
        raise ContractError(f"snapshot has n={g.n}, state has n={state.n}")
    if g.round != state.round:
        raise ContractError(f"snapshot round {g.round} applied to state at round {state.round}")
    e = g.edge_array - 1
    words = _kernels.active.flood_scatter(state.words, np.ascontiguousarray(e[:, 0]),
                                          np.ascontiguousarray(e[:, 1]))
    return KnowledgeState(state.n, words, state.round + 1)


def run(seq: GraphSequence, initial: KnowledgeState | None = None) -> list[KnowledgeState]:
    """States at rounds ``0..len(seq)``."""
    state = initial_state(seq.n) if initial is None else initial
    if state.n != seq.n:
        raise ContractError(f"initial state has n={state.n}, sequence has n={seq.n}")
    trace = [state]
    for g in seq:
        state = flood_step(state, g)
        trace.append(state)
    return trace


def is_fcs(state: KnowledgeState, i: int) -> bool:
    """Node ``i`` holds every datum."""
    _check_node(state.n, i)
    return bool(np.array_equal(state.words[i - 1], full_mask(state.n)))


def is_fds(state: KnowledgeState, j: int) -> bool:
    """Datum ``j`` is held by every node."""
    return state.holders(j) == state.n


def is_fks(state: KnowledgeState) -> bool:
    return bool((state.words == full_mask(state.n)).all())


def fcs_nodes(state: KnowledgeState) -> np.ndarray:
    """Boolean mask over nodes ``1..n`` of those in full collection state."""
    return (state.words == full_mask(state.n)).all(axis=1)


def first_fks_round(trace: Sequence[KnowledgeState]) -> int | None:
    for s in trace:
        if is_fks(s):
            return s.round
    return None


@dataclass(frozen=True)
class TerminationView:
    """Per-node inferred network size and the round it was inferred at."""

    inferred_size: tuple[int | None, ...]
    inferred_at: tuple[int | None, ...]

    def all_inferred(self, size: int, at: int | None = None) -> bool:
        return all(s == size for s in self.inferred_size) and (
            at is None or all(r == at for r in self.inferred_at))


def infer_size(trace: Sequence[KnowledgeState]) -> TerminationView:
    """Apply the stopping rule ``|K_i(k)| < k + 1  =>  n = |K_i(k)|``.

    The rule is only guaranteed correct when every round ``k <= n-2`` puts
    each node on a directed cycle of at least ``psi(k)`` nodes; on other
    sequences the inferred size can be wrong. Nodes that never trip the rule
    within the trace keep ``None``.
    """
    if not trace:
        return TerminationView((), ())
    n = trace[0].n
    size: list[int | None] = [None] * n
    at: list[int | None] = [None] * n
    for state in trace:
        card = state.cardinalities
        for i in np.flatnonzero(card < state.round + 1):
            if size[i] is None:
                size[i] = int(card[i])
                at[i] = state.round
    return TerminationView(tuple(size), tuple(at))


TRACE_COLUMNS = ("round", "node", "cardinality", "is_fcs")


def write_trace_csv(trace: Sequence[KnowledgeState], out: IO[str] | None = None) -> str:
    """Write ``round,node,cardinality,is_fcs`` rows; returns the CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for state in trace:
        full = fcs_nodes(state)
        for i, c in enumerate(state.cardinalities.tolist(), start=1):
            w.writerow([state.round, i, c, int(full[i - 1])])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text

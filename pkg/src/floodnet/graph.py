"""Per-round digraphs, random Hamiltonian-cycle sampling and sequences.

Nodes are the integers ``1..n``. Randomness always comes from an explicit
:class:`numpy.random.Generator`; the package uses PCG64 via
``numpy.random.default_rng(seed)`` so a seed fixes every draw.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidNodeError, InvalidSizeError

Edge = tuple[int, int]


@dataclass(frozen=True)
class GraphSnapshot:
    """The digraph ``G(k)`` of a single round.

    Edges are stored as an order-free, deduplicated set of ``(from, to)``
    pairs. Self-loops are rejected: a node keeping its own knowledge is part
    of the update rule, not an edge.
    """

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)
    round: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidSizeError(f"node count must be >= 1, got {self.n}")
        if self.round < 0:
            raise ValueError(f"round must be nonnegative, got {self.round}")
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        for a, b in edges:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise InvalidNodeError(f"edge ({a}, {b}) outside 1..{self.n}")
            if a == b:
                raise InvalidNodeError(f"self-loop ({a}, {a}) is not an edge")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Sorted ``(m, 2)`` int64 array of 1-based edges."""
        if not self.edges:
            return np.empty((0, 2), dtype=np.int64)
        return np.array(sorted(self.edges), dtype=np.int64)

    @cached_property
    def successors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in range(1, self.n + 1)}
        for a, b in sorted(self.edges):
            out[a].append(b)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def predecessors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in range(1, self.n + 1)}
        for a, b in sorted(self.edges):
            out[b].append(a)
        return {k: tuple(v) for k, v in out.items()}

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edges

    def reversed(self, round: int | None = None) -> "GraphSnapshot":
        """Same nodes, every edge ``(i, j)`` replaced by ``(j, i)``."""
        return GraphSnapshot(
            self.n, frozenset((b, a) for a, b in self.edges),
            self.round if round is None else round,
        )

    def with_round(self, round: int) -> "GraphSnapshot":
        return GraphSnapshot(self.n, self.edges, round)

    def is_single_cycle(self) -> bool:
        """True iff the edges form one directed cycle through all ``n`` nodes."""
        return _walk_check(self)


def _walk_check(g: GraphSnapshot) -> bool:
    if g.n < 2 or len(g.edges) != g.n:
        return False
    succ = g.successors
    if any(len(v) != 1 for v in succ.values()):
        return False
    if any(len(v) != 1 for v in g.predecessors.values()):
        return False
    start = 1
    node = start
    for step in range(1, g.n + 1):
        node = succ[node][0]
        if node == start:
            return step == g.n
    return False


def cycle_edges(order: Sequence[int]) -> frozenset[Edge]:
    """Edges of the directed cycle visiting ``order`` and closing back."""
    m = len(order)
    if m < 2:
        return frozenset()
    return frozenset((order[j], order[(j + 1) % m]) for j in range(m))


def path_edges(order: Sequence[int]) -> frozenset[Edge]:
    return frozenset(zip(order[:-1], order[1:]))


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform permutation of ``1..n`` (one ``Generator.permutation`` draw)."""
    return rng.permutation(n) + 1


def random_cycle_graph(n: int, rng: np.random.Generator, round: int = 0) -> GraphSnapshot:
    """Directed Hamiltonian cycle ``p_1 -> p_2 -> ... -> p_n -> p_1``.

    ``p`` is a uniformly random permutation of ``1..n``, so each of the
    ``(n-1)!`` directed Hamiltonian cycles is equally likely.
    """
    if n < 2:
        raise InvalidSizeError(f"random cycle graph needs n >= 2, got {n}")
    perm = random_permutation(n, rng)
    return GraphSnapshot(n, cycle_edges(perm.tolist()), round)


@dataclass(frozen=True)
class GraphSequence:
    """Ordered snapshots ``G(0), ..., G(len-1)`` sharing one node count."""

    n: int
    snapshots: tuple[GraphSnapshot, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidSizeError(f"node count must be >= 1, got {self.n}")
        snaps = tuple(self.snapshots)
        for k, g in enumerate(snaps):
            if g.n != self.n:
                raise InvalidSizeError(f"snapshot {k} has n={g.n}, sequence has n={self.n}")
            if g.round != k:
                raise ValueError(f"snapshot at position {k} carries round {g.round}")
        object.__setattr__(self, "snapshots", snaps)

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self) -> Iterator[GraphSnapshot]:
        return iter(self.snapshots)

    def __getitem__(self, k: int) -> GraphSnapshot:
        return self.snapshots[k]

    @classmethod
    def from_edge_sets(cls, n: int, rounds: Iterable[Iterable[Edge]]) -> "GraphSequence":
        return cls(n, tuple(GraphSnapshot(n, frozenset(map(tuple, es)), k)
                            for k, es in enumerate(rounds)))

    def edge_sets(self) -> list[frozenset[Edge]]:
        return [g.edges for g in self.snapshots]

    def extended(self, rounds: Iterable[Iterable[Edge]]) -> "GraphSequence":
        """Append further rounds after the last snapshot."""
        sets = self.edge_sets() + [frozenset(map(tuple, es)) for es in rounds]
        return GraphSequence.from_edge_sets(self.n, sets)

    def padded(self, extra: int) -> "GraphSequence":
        """Append ``extra`` edgeless rounds."""
        return self.extended([()] * extra)

    def to_json_dict(self) -> dict:
        return {"n": self.n,
                "rounds": [[list(e) for e in g.edge_array.tolist()] for g in self.snapshots]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, data: dict) -> "GraphSequence":
        try:
            n = int(data["n"])
            rounds = data["rounds"]
        except (KeyError, TypeError) as exc:
            raise ValueError("graph JSON needs keys 'n' and 'rounds'") from exc
        return cls.from_edge_sets(n, ([tuple(e) for e in r] for r in rounds))

    @classmethod
    def from_json(cls, text: str) -> "GraphSequence":
        return cls.from_json_dict(json.loads(text))


def random_sequence(n: int, steps: int, rng: np.random.Generator) -> GraphSequence:
    """``steps`` independent random cycle graphs at rounds ``0..steps-1``."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if n < 2:
        raise InvalidSizeError(f"random cycle graph needs n >= 2, got {n}")
    return GraphSequence(n, tuple(random_cycle_graph(n, rng, k) for k in range(steps)))


def reverse_transpose(seq: GraphSequence) -> GraphSequence:
    """Time-reverse the sequence and reverse every edge.

    Round ``k`` of the result is the edge-reversed round ``len-1-k`` of the
    input, so the reachability product of the result is the transpose of
    the input's.
    """
    m = len(seq)
    return GraphSequence(seq.n, tuple(seq[m - 1 - k].reversed(round=k) for k in range(m)))

"""Input-cords, output-cords, closed cords and chi-cycle containment.

An input-cord to ``target`` is a simple directed path of nodes other than
the target whose last node feeds the target. An output-cord from ``target``
is the mirror image: the target feeds the cord's last node and each node
feeds its predecessor in the list. A cord is closed when the target also
links back to (input) or is fed from (output) the cord's first node, so
the cord plus target is a directed cycle.

Longest-cord and cycle searches are exhaustive DFS over simple paths and
refuse graphs above ``search_limit`` nodes (default :data:`SEARCH_LIMIT`).
A snapshot made only of disjoint directed cycles is decided structurally
without search at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from .errors import InvalidNodeError, SearchLimitError
from .graph import GraphSnapshot

SEARCH_LIMIT = 20

Direction = Literal["input", "output"]


@dataclass(frozen=True)
class Cord:
    target: int
    nodes: tuple[int, ...] = ()
    direction: Direction = "input"
    closed: bool = False

    def __post_init__(self) -> None:
        if self.direction not in ("input", "output"):
            raise ValueError(f"direction must be 'input' or 'output', got {self.direction!r}")
        object.__setattr__(self, "nodes", tuple(int(v) for v in self.nodes))

    def __len__(self) -> int:
        return len(self.nodes)

    def required_edges(self) -> list[tuple[int, int]]:
        """Edges the cord asserts, closure edge included when closed."""
        nodes, t = self.nodes, self.target
        if not nodes:
            return []
        if self.direction == "input":
            edges = list(zip(nodes[:-1], nodes[1:])) + [(nodes[-1], t)]
            if self.closed:
                edges.append((t, nodes[0]))
        else:
            edges = [(b, a) for a, b in zip(nodes[:-1], nodes[1:])] + [(t, nodes[-1])]
            if self.closed:
                edges.append((nodes[0], t))
        return edges

    def as_cycle(self) -> tuple[int, ...]:
        """Closed cord as a cycle in edge order, starting at the target."""
        if not self.closed:
            raise ValueError("only closed cords describe a cycle")
        if self.direction == "input":
            return (self.target,) + self.nodes
        return (self.target,) + self.nodes[::-1]

    def to_json_dict(self) -> dict:
        return {"target": self.target, "nodes": list(self.nodes),
                "direction": self.direction, "closed": self.closed}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Cord":
        return cls(int(data["target"]), tuple(data["nodes"]),
                   data.get("direction", "input"), bool(data.get("closed", False)))


def _check_node(g: GraphSnapshot, v: int) -> None:
    if not 1 <= v <= g.n:
        raise InvalidNodeError(f"node {v} outside 1..{g.n}")


def verify_cord(cord: Cord, g: GraphSnapshot) -> bool:
    """Check a cord against a snapshot's edges.

    Raises :class:`InvalidNodeError` if the target or any cord node is not a
    node of ``g``. The empty cord is valid when open; an empty closed cord is
    never valid since there is no first node to close onto.
    """
    _check_node(g, cord.target)
    for v in cord.nodes:
        _check_node(g, v)
    if not cord.nodes:
        return not cord.closed
    if len(set(cord.nodes)) != len(cord.nodes) or cord.target in cord.nodes:
        return False
    return all(g.has_edge(a, b) for a, b in cord.required_edges())


def _guard(g: GraphSnapshot, search_limit: int | None) -> None:
    limit = SEARCH_LIMIT if search_limit is None else search_limit
    if g.n > limit:
        raise SearchLimitError(
            f"exhaustive search capped at n <= {limit}, snapshot has n = {g.n}")


def longest_input_cord(g: GraphSnapshot, target: int,
                       search_limit: int | None = None) -> Cord:
    """A maximum-cardinality input-cord to ``target`` (open)."""
    _check_node(g, target)
    _guard(g, search_limit)
    preds = g.predecessors
    best: list[int] = []
    path: list[int] = []
    on_path = {target}

    # walk backwards from the target; path[-1] is the cord's first node
    def dfs(v: int) -> bool:
        nonlocal best
        if len(path) > len(best):
            best = path.copy()
            if len(best) == g.n - 1:
                return True
        for u in preds[v]:
            if u not in on_path:
                on_path.add(u)
                path.append(u)
                if dfs(u):
                    return True
                path.pop()
                on_path.discard(u)
        return False

    dfs(target)
    return Cord(target, tuple(reversed(best)), "input", False)


def _regular_cycles(g: GraphSnapshot) -> dict[int, tuple[int, ...]] | None:
    """Cycle through each node when ``g`` is a disjoint union of cycles."""
    succ, pred = g.successors, g.predecessors
    if any(len(succ[i]) != 1 or len(pred[i]) != 1 for i in range(1, g.n + 1)):
        return None
    through: dict[int, tuple[int, ...]] = {}
    for start in range(1, g.n + 1):
        if start in through:
            continue
        cyc = [start]
        v = succ[start][0]
        while v != start:
            cyc.append(v)
            v = succ[v][0]
        for pos, v in enumerate(cyc):
            through[v] = tuple(cyc[pos:] + cyc[:pos])
    return through


def _closed_cord_from_cycle(cycle: tuple[int, ...]) -> Cord:
    # cycle starts at the target and follows edges
    return Cord(cycle[0], cycle[1:], "input", True)


def _find_cycle_through(g: GraphSnapshot, i: int, min_nodes: int) -> tuple[int, ...] | None:
    succ = g.successors
    path = [i]
    on_path = {i}

    def dfs(v: int) -> bool:
        for u in succ[v]:
            if u == i and len(path) >= min_nodes and len(path) >= 2:
                return True
            if u not in on_path:
                on_path.add(u)
                path.append(u)
                if dfs(u):
                    return True
                path.pop()
                on_path.discard(u)
        return False

    return tuple(path) if dfs(i) else None


def _required_cycle_nodes(chi: int) -> int:
    # closed cord cardinality > chi - 2  <=>  cycle of >= chi nodes; a cycle
    # needs at least two nodes, which is how chi <= 2 reads "on any cycle"
    return max(chi, 2)


@lru_cache(maxsize=1024)
def _certificates(g: GraphSnapshot, chi: int, search_limit: int | None,
                  stop_early: bool) -> tuple[tuple[int, Cord | None], ...]:
    need = _required_cycle_nodes(chi)
    out: list[tuple[int, Cord | None]] = []
    through = _regular_cycles(g)
    if through is None:
        _guard(g, search_limit)
    for i in range(1, g.n + 1):
        if through is not None:
            cyc = through[i] if len(through[i]) >= need else None
        else:
            cyc = _find_cycle_through(g, i, need)
        out.append((i, None if cyc is None else _closed_cord_from_cycle(cyc)))
        if cyc is None and stop_early:
            break
    return tuple(out)


def _check_chi(g: GraphSnapshot, chi: int) -> None:
    if not 1 <= chi <= g.n:
        raise ValueError(f"chi must lie in 1..{g.n}, got {chi}")


def chi_cycle_check(g: GraphSnapshot, chi: int, search_limit: int | None = None) -> bool:
    """True iff every node lies on a directed cycle of at least ``chi`` nodes.

    Equivalently every node has a closed input-cord of cardinality greater
    than ``chi - 2``. For ``chi <= 2`` this only asks that every node sits on
    some cycle.
    """
    _check_chi(g, chi)
    return all(c is not None for _, c in _certificates(g, chi, search_limit, True))


def chi_certificates(g: GraphSnapshot, chi: int,
                     search_limit: int | None = None) -> dict[int, Cord | None]:
    """Per-node closed input-cord witnessing chi-cycle membership, or None."""
    _check_chi(g, chi)
    return dict(_certificates(g, chi, search_limit, False))

"""Deterministic graph schedules with their connectivity certificates.

Every schedule carries, per round, the witness for the condition it is
built to satisfy: explicit cords for the path schedules, a disjoint cycle
decomposition for the chi-profile schedules. Checking a certificate only
looks up the edges it names, so it is linear in the schedule size.

Free node choices are fixed to consecutive labels counted from the
distinguished node, wrapping modulo ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .bounds import min_fks_time
from .cords import Cord, verify_cord
from .errors import InvalidNodeError, InvalidSizeError
from .graph import (GraphSequence, GraphSnapshot, cycle_edges, path_edges,
                    random_sequence)

ScheduleName = Literal["dp_path", "cp_path", "psi", "nu", "eta",
                       "fixed_cycle", "doubling", "random"]

SCHEDULE_NAMES: tuple[str, ...] = ("dp_path", "cp_path", "psi", "nu", "eta",
                                   "fixed_cycle", "doubling", "random")


@dataclass(frozen=True)
class RoundCertificate:
    """Witness for one round: cords, or a cycle cover with its chi."""

    round: int
    cords: tuple[Cord, ...] = ()
    cycles: tuple[tuple[int, ...], ...] = ()
    chi: int | None = None

    def to_json_dict(self) -> dict:
        return {"round": self.round, "chi": self.chi,
                "cycles": [list(c) for c in self.cycles],
                "cords": [c.to_json_dict() for c in self.cords]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "RoundCertificate":
        return cls(int(data["round"]),
                   tuple(Cord.from_json_dict(c) for c in data.get("cords", ())),
                   tuple(tuple(c) for c in data.get("cycles", ())),
                   data.get("chi"))


@dataclass(frozen=True)
class Schedule:
    name: str
    sequence: GraphSequence
    certificates: tuple[RoundCertificate, ...] = ()
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.sequence.n

    def __len__(self) -> int:
        return len(self.sequence)

    def to_json_dict(self) -> dict:
        out = self.sequence.to_json_dict()
        out["name"] = self.name
        out["params"] = dict(self.params)
        out["certificates"] = [c.to_json_dict() for c in self.certificates]
        return out


def verify_round_certificate(cert: RoundCertificate, g: GraphSnapshot) -> bool:
    if not all(verify_cord(c, g) for c in cert.cords):
        return False
    if cert.cycles:
        seen: set[int] = set()
        for cyc in cert.cycles:
            if len(cyc) < 2 or len(set(cyc)) != len(cyc) or seen.intersection(cyc):
                return False
            if cert.chi is not None and len(cyc) < max(cert.chi, 2):
                return False
            if not all(g.has_edge(a, b) for a, b in cycle_edges(cyc)):
                return False
            seen.update(cyc)
        if seen != set(range(1, g.n + 1)):
            return False
    return True


def verify_certificates(schedule: Schedule) -> bool:
    """Every round certificate holds against its snapshot."""
    by_round = {c.round: c for c in schedule.certificates}
    if len(by_round) != len(schedule.certificates):
        return False
    for k, cert in by_round.items():
        if not 0 <= k < len(schedule.sequence):
            return False
        try:
            if not verify_round_certificate(cert, schedule.sequence[k]):
                return False
        except InvalidNodeError:
            return False
    return True


# chi profiles -------------------------------------------------------------

def psi(n: int, k: int) -> int:
    """Cycle length for collection-first knowledge: ``n`` early, then ``n-k``."""
    return n if k <= math.ceil(n / 2) - 1 else n - k


def nu(n: int, k: int) -> int:
    """Cycle length for dissemination-first knowledge: ``k+2`` early, then ``n``."""
    return k + 2 if k <= math.ceil(n / 2) - 1 else n


def eta(n: int, k: int) -> int:
    return min(psi(n, k), nu(n, k))


PROFILES: dict[str, Callable[[int, int], int]] = {"psi": psi, "nu": nu, "eta": eta}


def _labels_from(start: int, n: int) -> list[int]:
    return [(start - 1 + t) % n + 1 for t in range(n)]


def _check_node(n: int, v: int) -> None:
    if not 1 <= v <= n:
        raise InvalidNodeError(f"node {v} outside 1..{n}")


def block_cycles(n: int, chi: int) -> tuple[tuple[int, ...], ...]:
    """Split ``1..n`` into ``n // chi`` consecutive cycles, the last absorbing the rest."""
    chi = max(chi, 2)
    count = n // chi
    cycles = []
    start = 1
    for b in range(count):
        length = chi if b < count - 1 else n - start + 1
        cycles.append(tuple(range(start, start + length)))
        start += length
    return tuple(cycles)


def chi_schedule(name: str, n: int, profile: Callable[[int, int], int]) -> Schedule:
    if n < 3:
        raise InvalidSizeError(f"{name} schedule needs n >= 3, got {n}")
    snaps, certs = [], []
    for k in range(n - 1):
        chi = profile(n, k)
        cycles = block_cycles(n, chi)
        edges = frozenset().union(*(cycle_edges(c) for c in cycles))
        snaps.append(GraphSnapshot(n, edges, k))
        certs.append(RoundCertificate(k, cycles=cycles, chi=chi))
    return Schedule(name, GraphSequence(n, tuple(snaps)), tuple(certs), {"n": n, "steps": n - 1})


def psi_schedule(n: int) -> Schedule:
    return chi_schedule("psi", n, psi)


def nu_schedule(n: int) -> Schedule:
    return chi_schedule("nu", n, nu)


def eta_schedule(n: int) -> Schedule:
    return chi_schedule("eta", n, eta)


def dp_path_schedule(n: int, w: int = 1) -> Schedule:
    """A path out of ``w`` growing by one node per round.

    Round ``k`` is ``w -> w+1 -> ... -> w+k+1``, an output-cord of exactly
    ``k+1`` nodes and nothing else.
    """
    if n < 2:
        raise InvalidSizeError(f"dp_path schedule needs n >= 2, got {n}")
    _check_node(n, w)
    labels = _labels_from(w, n)
    snaps, certs = [], []
    for k in range(n - 1):
        path = labels[: k + 2]
        snaps.append(GraphSnapshot(n, path_edges(path), k))
        certs.append(RoundCertificate(k, cords=(Cord(w, tuple(reversed(path[1:])), "output"),)))
    return Schedule("dp_path", GraphSequence(n, tuple(snaps)), tuple(certs),
                    {"n": n, "steps": n - 1, "w": w})


def cp_path_schedule(n: int, q: int | None = None) -> Schedule:
    """A path into ``q`` losing its first node every round.

    With ``o_1, ..., o_{n-1}`` the other nodes in label order after ``q``,
    round ``k`` is ``o_{k+1} -> ... -> o_{n-1} -> q``: an input-cord of
    exactly ``n-k-1`` nodes.
    """
    if n < 2:
        raise InvalidSizeError(f"cp_path schedule needs n >= 2, got {n}")
    q = n if q is None else q
    _check_node(n, q)
    others = _labels_from(q, n)[1:]
    snaps, certs = [], []
    for k in range(n - 1):
        cord_nodes = others[k:]
        snaps.append(GraphSnapshot(n, path_edges(cord_nodes + [q]), k))
        certs.append(RoundCertificate(k, cords=(Cord(q, tuple(cord_nodes), "input"),)))
    return Schedule("cp_path", GraphSequence(n, tuple(snaps)), tuple(certs),
                    {"n": n, "steps": n - 1, "q": q})


def fixed_cycle_schedule(n: int, steps: int | None = None) -> Schedule:
    """The cycle ``1 -> 2 -> ... -> n -> 1`` repeated (default ``n-1`` rounds)."""
    if n < 2:
        raise InvalidSizeError(f"fixed_cycle schedule needs n >= 2, got {n}")
    steps = n - 1 if steps is None else steps
    order = tuple(range(1, n + 1))
    edges = cycle_edges(order)
    snaps = tuple(GraphSnapshot(n, edges, k) for k in range(steps))
    certs = tuple(RoundCertificate(k, cycles=(order,), chi=n) for k in range(steps))
    return Schedule("fixed_cycle", GraphSequence(n, snaps), certs, {"n": n, "steps": steps})


def doubling_schedule(n: int) -> Schedule:
    """Shift graphs ``i -> i + 2^k (mod n)`` for ``k < ceil(log2 n)``.

    Every node's set stays a contiguous label interval and doubles each
    round, so the whole network is informed after ``ceil(log2 n)`` rounds.
    For odd ``n`` every round is a single Hamiltonian cycle; for even ``n``
    rounds can split into several cycles.
    """
    if n < 2:
        raise InvalidSizeError(f"doubling schedule needs n >= 2, got {n}")
    steps = min_fks_time(n)
    snaps, certs = [], []
    for k in range(steps):
        shift = 2 ** k
        edges = frozenset((i, (i + shift - 1) % n + 1) for i in range(1, n + 1))
        g = GraphSnapshot(n, edges, k)
        snaps.append(g)
        period = n // math.gcd(shift, n)
        cycles = []
        seen: set[int] = set()
        for start in range(1, n + 1):
            if start in seen:
                continue
            cyc = [start]
            for _ in range(period - 1):
                cyc.append((cyc[-1] + shift - 1) % n + 1)
            seen.update(cyc)
            cycles.append(tuple(cyc))
        certs.append(RoundCertificate(k, cycles=tuple(cycles), chi=period))
    return Schedule("doubling", GraphSequence(n, tuple(snaps)), tuple(certs),
                    {"n": n, "steps": steps})


def random_schedule(n: int, steps: int | None = None, seed: int = 0) -> Schedule:
    """Independent random Hamiltonian cycles; each round certifies chi = n."""
    steps = n - 1 if steps is None else steps
    seq = random_sequence(n, steps, np.random.default_rng(seed))
    certs = []
    for g in seq:
        succ = g.successors
        cyc = [1]
        for _ in range(n - 1):
            cyc.append(succ[cyc[-1]][0])
        certs.append(RoundCertificate(g.round, cycles=(tuple(cyc),), chi=n))
    return Schedule("random", seq, tuple(certs), {"n": n, "steps": steps, "seed": seed})


def build_schedule(name: str, n: int, *, steps: int | None = None, seed: int = 0,
                   node: int | None = None) -> Schedule:
    """Construct a schedule by name (the CLI entry point)."""
    if name == "dp_path":
        return dp_path_schedule(n, 1 if node is None else node)
    if name == "cp_path":
        return cp_path_schedule(n, node)
    if name in PROFILES:
        return chi_schedule(name, n, PROFILES[name])
    if name == "fixed_cycle":
        return fixed_cycle_schedule(n, steps)
    if name == "doubling":
        return doubling_schedule(n)
    if name == "random":
        return random_schedule(n, steps, seed)
    raise ValueError(f"unknown schedule {name!r}; choose from {', '.join(SCHEDULE_NAMES)}")

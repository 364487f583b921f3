"""Boolean-matrix reachability, an independent check on the flooding engine.

Each round is the adjacency pattern ``M(k)`` with a true diagonal, and the
sequence product ``M(0) M(1) ... M(k)`` has entry ``(j, i)`` true exactly
when node ``i`` holds datum ``j`` after round ``k``. Products run in the
OR/AND semiring; no numeric weights are kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import GraphSequence, GraphSnapshot, random_sequence, reverse_transpose
from .knowledge import run


@dataclass(frozen=True, eq=False)
class BoolMatrix:
    n: int
    bits: np.ndarray

    def __post_init__(self) -> None:
        bits = np.array(self.bits, dtype=bool, copy=True)
        if bits.shape != (self.n, self.n):
            raise ValueError(f"expected ({self.n}, {self.n}) pattern, got {bits.shape}")
        np.fill_diagonal(bits, True)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.bits, other.bits))

    __hash__ = None  # type: ignore[assignment]

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        return BoolMatrix(self.n, _kernels.active.bool_matmul(self.bits, other.bits))

    def __getitem__(self, ij: tuple[int, int]) -> bool:
        """1-based entry lookup."""
        i, j = ij
        return bool(self.bits[i - 1, j - 1])

    @property
    def T(self) -> "BoolMatrix":
        return BoolMatrix(self.n, self.bits.T)

    def packed_rows(self) -> np.ndarray:
        return _kernels.pack_rows(self.bits)

    def all_true(self) -> bool:
        return bool(self.bits.all())

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, np.eye(n, dtype=bool))


def from_snapshot(g: GraphSnapshot) -> BoolMatrix:
    bits = np.eye(g.n, dtype=bool)
    if g.edges:
        e = g.edge_array - 1
        bits[e[:, 0], e[:, 1]] = True
    return BoolMatrix(g.n, bits)


def fixed_cycle_matrix(n: int) -> BoolMatrix:
    """Pattern with true diagonal, superdiagonal and the ``(n, 1)`` corner."""
    bits = np.eye(n, dtype=bool)
    idx = np.arange(n - 1)
    bits[idx, idx + 1] = True
    bits[n - 1, 0] = True
    return BoolMatrix(n, bits)


def matrix_power(m: BoolMatrix, p: int) -> BoolMatrix:
    out = BoolMatrix.identity(m.n)
    for _ in range(p):
        out = out @ m
    return out


def product_reachability(seq: GraphSequence) -> BoolMatrix:
    """Ordered product over all rounds; identity for the empty sequence."""
    out = BoolMatrix.identity(seq.n)
    for g in seq:
        out = out @ from_snapshot(g)
    return out


def matches_simulation(seq: GraphSequence) -> bool:
    """Final flooding state equals the transposed product, bit for bit."""
    final = run(seq)[-1]
    return bool(np.array_equal(final.words, product_reachability(seq).T.packed_rows()))


def duality_check(seq: GraphSequence, w: int, q: int | None = None) -> bool:
    """Dissemination of ``w`` forward equals collection at ``q`` time-reversed.

    Row ``w`` of the forward product lists who ends up holding ``d_w``.
    The reversed, edge-flipped sequence is relabelled by swapping ``w`` and
    ``q``; the column of ``q`` in its product lists whose data ``q`` ends
    up collecting. The check compares the two after undoing the relabelling.
    """
    q = w if q is None else q
    n = seq.n
    for v in (w, q):
        if not 1 <= v <= n:
            raise ValueError(f"node {v} outside 1..{n}")
    sigma = np.arange(n)
    sigma[[w - 1, q - 1]] = sigma[[q - 1, w - 1]]
    rev = reverse_transpose(seq)
    relabelled = GraphSequence.from_edge_sets(
        n, ([(int(sigma[a - 1]) + 1, int(sigma[b - 1]) + 1) for a, b in g.edges] for g in rev))
    fwd = product_reachability(seq).bits
    back = product_reachability(relabelled).bits
    # back[sigma(a), q] must equal fwd[w, a] for every node a
    return bool(np.array_equal(fwd[w - 1, :], back[sigma, q - 1]))


@dataclass(frozen=True)
class EquivalenceReport:
    n: int
    sequences: int
    matches: int
    mismatched_indices: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.matches == self.sequences

    def summary(self) -> str:
        return f"{self.matches}/{self.sequences} match"


def equivalence_suite(n: int, sequences: int, rng: np.random.Generator,
                      steps: int | None = None) -> EquivalenceReport:
    """Compare engine and oracle on random cycle-graph sequences.

    With ``steps=None`` each sequence length is drawn uniformly from
    ``1..n-1`` so partially informed states get compared as well as the
    saturated ones.
    """
    bad = []
    for t in range(sequences):
        length = steps if steps is not None else int(rng.integers(1, max(n - 1, 1) + 1))
        if not matches_simulation(random_sequence(n, length, rng)):
            bad.append(t)
    return EquivalenceReport(n, sequences, sequences - len(bad), tuple(bad))

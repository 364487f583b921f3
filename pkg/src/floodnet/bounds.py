"""Closed-form expected-time quantities for random Hamiltonian-cycle rounds.

All logarithms are base 2. ``phi(n) = -log(1 - log(n-2)/log(n))`` anchors
both windows: the expected round at which the last node completes its
collection lies in ``[phi+2, phi+3]`` and the first node in
``[phi, phi+1]``.

``E_k`` is the expected number of foreign data a node holds after ``k``
rounds, defined by ``E_0 = 0`` and

    E_k = n - 1 - prod_{r<k} (n - 2 - E_r) / (n - 1)^(k-1).

The recursion is only a probability model while every factor
``n - 2 - E_r`` stays positive; past that point it overshoots ``n - 1`` and
oscillates around it. :func:`expected_knowledge_curve` evaluates it as
written, :func:`regular_curve` stops before the first nonpositive factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

TOL = 1e-9


def _need(n: int, low: int, what: str) -> None:
    if n < low:
        raise DomainError(f"{what} needs n >= {low}, got {n}")


def phi(n):
    """``-log2(1 - log2(n-2)/log2(n))``; accepts an int or an integer array."""
    arr = np.asarray(n)
    if np.any(arr < 3):
        raise DomainError("phi needs n >= 3")
    nf = arr.astype(np.float64)
    val = -np.log2(1.0 - np.log2(nf - 2.0) / np.log2(nf))
    val = np.where(arr == 3, 0.0, val) + 0.0
    return float(val) if val.ndim == 0 else val


def latest_window(n: int) -> tuple[float, float]:
    f = phi(n)
    return (f + 2.0, f + 3.0)


def earliest_window(n: int) -> tuple[float, float]:
    f = phi(n)
    return (f, f + 1.0)


def bound_windows(n: int) -> tuple[tuple[float, float], tuple[float, float]]:
    """``(latest, earliest)`` windows for the expected full-knowledge rounds."""
    return latest_window(n), earliest_window(n)


def min_fks_time(n: int) -> int:
    """``ceil(log2 n)``: no round sequence in which each node hears from at
    most one other node informs everyone sooner."""
    if n < 1:
        raise DomainError(f"min_fks_time needs n >= 1, got {n}")
    return (n - 1).bit_length()


def expected_knowledge_curve(n: int, k_max: int) -> list[float]:
    """``[E_0, ..., E_{k_max}]`` from the recursion.

    The product is carried pre-divided by ``(n-1)``, one factor per round,
    so every multiplier has magnitude at most one: large ``n`` and ``k``
    cannot overflow and underflow only rounds an already negligible
    remainder to zero.
    """
    _need(n, 3, "expected_knowledge_curve")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    curve = [0.0]
    scaled = 0.0
    for k in range(1, k_max + 1):
        factor = n - 2 - curve[k - 1]
        scaled = float(factor) if k == 1 else scaled * (factor / (n - 1))
        curve.append(n - 1 - scaled)
    return curve


def regular_curve(n: int, k_max: int) -> list[float]:
    """Prefix of the curve in which every factor ``n-2-E_r`` is positive.

    On this prefix ``E_k`` is strictly increasing and strictly below
    ``n - 1``.
    """
    curve = expected_knowledge_curve(n, k_max)
    out = [curve[0]]
    for k in range(1, len(curve)):
        if n - 2 - curve[k - 1] <= 0:
            break
        out.append(curve[k])
    return out


def knowledge_lower_bound(n: int, k: int) -> float:
    """``n (1 - ((n-2)/n)^(k-1)) - 1``, a lower bound on ``E_k`` for ``k >= 2``."""
    _need(n, 3, "knowledge_lower_bound")
    return n * (1.0 - ((n - 2) / n) ** (k - 1)) - 1.0


def doubled_lower_bound(n: int, k: int) -> float:
    """``n (1 - ((n-2)/n)^(2^(k-1))) - 1``; bounds ``E_k`` on the regular prefix."""
    _need(n, 3, "doubled_lower_bound")
    return n * (1.0 - ((n - 2) / n) ** (2.0 ** (k - 1))) - 1.0


def proposition_check(n: int) -> bool:
    """``log2(n^2) > 2 + phi(n) > log2(n)`` with a ``TOL`` margin on both sides."""
    _need(n, 3, "proposition_check")
    mid = 2.0 + phi(n)
    return bool(math.log2(n * n) - mid > TOL and mid - math.log2(n) > TOL)


def proposition_check_many(ns) -> np.ndarray:
    """Vectorised :func:`proposition_check` over an integer array."""
    ns = np.asarray(ns, dtype=np.int64)
    mid = 2.0 + phi(ns)
    nf = ns.astype(np.float64)
    return (2.0 * np.log2(nf) - mid > TOL) & (mid - np.log2(nf) > TOL)


def tightness_round(n: int) -> int:
    """Integer round ``floor(2 + phi(n)) - 1``, the last whole round not after
    one round short of the latest-window lower end."""
    return math.floor(2.0 + phi(n)) - 1


def tightness_threshold(n: int) -> float:
    return (n * n - n - 1) / n


def tightness_check(n: int) -> bool:
    """``E`` at :func:`tightness_round` is below ``(n^2 - n - 1)/n``.

    One round before the latest window the network is not yet expected to
    be fully informed.
    """
    _need(n, 4, "tightness_check")
    r = tightness_round(n)
    return expected_knowledge_curve(n, r)[r] < tightness_threshold(n)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    phi: float
    latest_window: tuple[float, float]
    earliest_window: tuple[float, float]
    min_fks_time: int
    e_curve: list[tuple[int, float]] = field(default_factory=list)


def bounds_report(n: int, k_max: int | None = None) -> BoundsReport:
    """Everything closed-form about size ``n``; ``e_curve`` is the regular prefix."""
    k_max = n - 2 if k_max is None else k_max
    f = phi(n)
    curve = regular_curve(n, max(k_max, 0))
    return BoundsReport(n, f, (f + 2.0, f + 3.0), (f, f + 1.0), min_fks_time(n),
                        list(enumerate(curve)))


BOUNDS_COLUMNS = ("n", "phi", "latest_low", "latest_high",
                  "earliest_low", "earliest_high", "min_fks")


def bounds_rows(ns) -> list[dict]:
    rows = []
    for n in ns:
        f = phi(int(n))
        rows.append({"n": int(n), "phi": f, "latest_low": f + 2.0, "latest_high": f + 3.0,
                     "earliest_low": f, "earliest_high": f + 1.0,
                     "min_fks": min_fks_time(int(n))})
    return rows

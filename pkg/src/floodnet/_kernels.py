"""Hot loops on packed knowledge bitsets.

Rows are node knowledge sets packed little-endian into uint64 words: datum
``j`` (0-based) lives in word ``j // 64`` at bit ``j % 64``.

Each kernel exists twice, as a numba ``njit`` function and as a pure-numpy
function, and the two must agree bit for bit. Setting ``FLOODNET_NO_NUMBA=1``
(or running without numba installed) makes :data:`active` the numpy set.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

WORD_BITS = 64


def n_words(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a boolean ``(rows, m)`` array into ``(rows, n_words(m))`` uint64."""
    bits = np.asarray(bits, dtype=bool)
    rows, m = bits.shape
    width = n_words(m) * WORD_BITS
    padded = np.zeros((rows, width), dtype=bool)
    padded[:, :m] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def unpack_rows(words: np.ndarray, m: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    as_bytes = words.view(np.uint8).reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little", count=m).astype(bool)


def full_mask(n: int) -> np.ndarray:
    """Word pattern of a row holding all ``n`` data."""
    mask = np.full(n_words(n), np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    rem = n % WORD_BITS
    if rem:
        mask[-1] = np.uint64((1 << rem) - 1)
    return mask


def identity_words(n: int) -> np.ndarray:
    return pack_rows(np.eye(n, dtype=bool))


# --------------------------------------------------------------------------
# pure numpy


def _np_flood_scatter(words, src, dst):
    out = words.copy()
    if src.shape[0]:
        np.bitwise_or.at(out, dst, words[src])
    return out


def _np_popcount_rows(words):
    return np.bitwise_count(words).sum(axis=1, dtype=np.int64)


def _np_cycle_trial(perms, mask):
    steps, n = perms.shape
    cur = identity_words(n)
    earliest = -1
    pred = np.empty(n, dtype=np.int64)
    for k in range(steps):
        p = perms[k]
        pred[np.roll(p, -1)] = p
        cur = cur | cur[pred]
        full = (cur == mask).all(axis=1)
        if earliest < 0 and full.any():
            earliest = k + 1
        if full.all():
            return earliest, k + 1
    return earliest, -1


def _np_bool_matmul(a, b):
    # float32 goes through BLAS; 0/1 sums stay exact below 2**24 terms
    if a.shape[1] < 1 << 24:
        return (a.astype(np.float32) @ b.astype(np.float32)) > 0
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


numpy_kernels = SimpleNamespace(
    name="numpy",
    flood_scatter=_np_flood_scatter,
    popcount_rows=_np_popcount_rows,
    cycle_trial=_np_cycle_trial,
    bool_matmul=_np_bool_matmul,
)


# --------------------------------------------------------------------------
# numba


def _build_numba_kernels():
    from numba import njit

    jit = njit(cache=True, nogil=True)

    m1 = np.uint64(0x5555555555555555)
    m2 = np.uint64(0x3333333333333333)
    m4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    h01 = np.uint64(0x0101010101010101)
    s1, s2, s4, s56 = np.uint64(1), np.uint64(2), np.uint64(4), np.uint64(56)

    @jit
    def popcount64(x):
        x = x - ((x >> s1) & m1)
        x = (x & m2) + ((x >> s2) & m2)
        x = (x + (x >> s4)) & m4
        return (x * h01) >> s56

    @jit
    def flood_scatter(words, src, dst):
        out = words.copy()
        nw = words.shape[1]
        for e in range(src.shape[0]):
            s = src[e]
            d = dst[e]
            for w in range(nw):
                out[d, w] |= words[s, w]
        return out

    @jit
    def popcount_rows(words):
        rows, nw = words.shape
        out = np.zeros(rows, dtype=np.int64)
        for i in range(rows):
            c = 0
            for w in range(nw):
                c += np.int64(popcount64(words[i, w]))
            out[i] = c
        return out

    @jit
    def cycle_trial(perms, mask):
        steps, n = perms.shape
        nw = mask.shape[0]
        cur = np.zeros((n, nw), dtype=np.uint64)
        for i in range(n):
            cur[i, i // 64] = np.uint64(1) << np.uint64(i % 64)
        nxt = cur.copy()
        earliest = -1
        for k in range(steps):
            for j in range(n):
                s = perms[k, j]
                d = perms[k, (j + 1) % n]
                for w in range(nw):
                    nxt[d, w] = cur[d, w] | cur[s, w]
            cur, nxt = nxt, cur
            nfull = 0
            for i in range(n):
                ok = True
                for w in range(nw):
                    if cur[i, w] != mask[w]:
                        ok = False
                        break
                if ok:
                    nfull += 1
            if earliest < 0 and nfull > 0:
                earliest = k + 1
            if nfull == n:
                return earliest, k + 1
        return earliest, -1

    @jit
    def _or_rows(a, bw):
        n = a.shape[0]
        nw = bw.shape[1]
        out = np.zeros((n, nw), dtype=np.uint64)
        for i in range(n):
            for l in range(a.shape[1]):
                if a[i, l]:
                    for w in range(nw):
                        out[i, w] |= bw[l, w]
        return out

    def bool_matmul(a, b):
        m = b.shape[1]
        return unpack_rows(_or_rows(np.ascontiguousarray(a, dtype=np.bool_), pack_rows(b)), m)

    return SimpleNamespace(
        name="numba",
        flood_scatter=flood_scatter,
        popcount_rows=popcount_rows,
        cycle_trial=cycle_trial,
        bool_matmul=bool_matmul,
    )


try:
    numba_kernels = _build_numba_kernels()
except ImportError:  # numba not installed
    numba_kernels = None


def _env_disabled() -> bool:
    return os.environ.get("FLOODNET_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


active = numpy_kernels if (numba_kernels is None or _env_disabled()) else numba_kernels

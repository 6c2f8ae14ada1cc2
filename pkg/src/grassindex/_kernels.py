"""Packed-bitset GF(2) elimination kernels.

Rows are uint64 word arrays; column j lives in word j >> 6 at bit j & 63.
Each kernel has a numba version and a pure-numpy version with the same
contract.  The numba path is used unless GRASSINDEX_NUMBA=0 is set or numba
cannot be imported.
"""

from __future__ import annotations

import os

import numpy as np

WORD_BITS = 64


def n_words(dim: int) -> int:
    return max(1, (dim + WORD_BITS - 1) // WORD_BITS)


# --- pure numpy -----------------------------------------------------------


def _np_first_set(row: np.ndarray, start: int) -> int:
    nz = np.flatnonzero(row[start:])
    if nz.size == 0:
        return -1
    w = start + int(nz[0])
    v = int(row[w])
    return w * WORD_BITS + (v & -v).bit_length() - 1


def np_reduce_lowest(row: np.ndarray, pivots: np.ndarray, slot: np.ndarray) -> int:
    """Cancel the lowest set bit while it is a pivot column.

    Returns the surviving lowest column, or -1 when the row reduced to zero.
    """
    col = _np_first_set(row, 0)
    while col >= 0:
        s = slot[col]
        if s < 0:
            return col
        w = col >> 6
        row[w:] ^= pivots[s, w:]
        col = _np_first_set(row, w)
    return -1


def np_reduce_full(row: np.ndarray, pivots: np.ndarray, slot: np.ndarray) -> int:
    """Cancel every pivot column; returns the lowest surviving column or -1."""
    lowest = -1
    for w in range(row.size):
        v = int(row[w])
        while v:
            bit = (v & -v).bit_length() - 1
            col = w * WORD_BITS + bit
            s = slot[col]
            if s >= 0:
                row[w:] ^= pivots[s, w:]
            elif lowest < 0:
                lowest = col
            v = int(row[w]) & ~((2 << bit) - 1)
    return lowest


def np_dual_vector(pivots: np.ndarray, slot: np.ndarray, pivot_cols_desc: np.ndarray,
                   col: int, nwords: int) -> np.ndarray:
    """Covector equal to 1 at non-pivot `col`, 0 at other non-pivots, orthogonal to all pivot rows."""
    phi = np.zeros(nwords, dtype=np.uint64)
    phi[col >> 6] = np.uint64(1 << (col & 63))
    for p in pivot_cols_desc:
        w = int(p) >> 6
        folded = np.bitwise_xor.reduce(phi[w:] & pivots[slot[p], w:])
        if int(np.bitwise_count(folded)) & 1:
            phi[w] |= np.uint64(1 << (int(p) & 63))
    return phi


def np_parity_dot(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.bitwise_count(np.bitwise_xor.reduce(a & b))) & 1


# --- numba ----------------------------------------------------------------

try:
    import numba as nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    nb = None

HAVE_NUMBA = nb is not None

if HAVE_NUMBA:
    _ONE = np.uint64(1)
    _ZERO = np.uint64(0)

    @nb.njit(cache=True, inline="always")
    def _ctz(v):
        n = 0
        if (v & np.uint64(0xFFFFFFFF)) == _ZERO:
            n += 32
            v >>= np.uint64(32)
        if (v & np.uint64(0xFFFF)) == _ZERO:
            n += 16
            v >>= np.uint64(16)
        if (v & np.uint64(0xFF)) == _ZERO:
            n += 8
            v >>= np.uint64(8)
        if (v & np.uint64(0xF)) == _ZERO:
            n += 4
            v >>= np.uint64(4)
        if (v & np.uint64(0x3)) == _ZERO:
            n += 2
            v >>= np.uint64(2)
        if (v & _ONE) == _ZERO:
            n += 1
        return n

    @nb.njit(cache=True, inline="always")
    def _popcount(v):
        v = v - ((v >> np.uint64(1)) & np.uint64(0x5555555555555555))
        v = (v & np.uint64(0x3333333333333333)) + ((v >> np.uint64(2)) & np.uint64(0x3333333333333333))
        v = (v + (v >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return (v * np.uint64(0x0101010101010101)) >> np.uint64(56)

    @nb.njit(cache=True, nogil=True)
    def nb_reduce_lowest(row, pivots, slot):
        nw = row.size
        w = 0
        while w < nw:
            v = row[w]
            if v == _ZERO:
                w += 1
                continue
            col = w * 64 + _ctz(v)
            s = slot[col]
            if s < 0:
                return col
            prow = pivots[s]
            for k in range(w, nw):
                row[k] ^= prow[k]
        return -1

    @nb.njit(cache=True, nogil=True)
    def nb_reduce_full(row, pivots, slot):
        nw = row.size
        lowest = -1
        for w in range(nw):
            v = row[w]
            while v != _ZERO:
                bit = _ctz(v)
                col = w * 64 + bit
                s = slot[col]
                if s >= 0:
                    prow = pivots[s]
                    for k in range(w, nw):
                        row[k] ^= prow[k]
                elif lowest < 0:
                    lowest = col
                if bit == 63:
                    v = _ZERO
                else:
                    v = row[w] & ~((_ONE << np.uint64(bit + 1)) - _ONE)
        return lowest

    @nb.njit(cache=True, nogil=True)
    def nb_dual_vector(pivots, slot, pivot_cols_desc, col, nwords):
        phi = np.zeros(nwords, dtype=np.uint64)
        phi[col >> 6] = _ONE << np.uint64(col & 63)
        for i in range(pivot_cols_desc.size):
            p = pivot_cols_desc[i]
            prow = pivots[slot[p]]
            acc = _ZERO
            for k in range(p >> 6, nwords):
                acc ^= phi[k] & prow[k]
            if _popcount(acc) & _ONE:
                phi[p >> 6] |= _ONE << np.uint64(p & 63)
        return phi

    @nb.njit(cache=True, nogil=True)
    def nb_parity_dot(a, b):
        acc = _ZERO
        for k in range(a.size):
            acc ^= a[k] & b[k]
        return int(_popcount(acc) & _ONE)


def _numba_requested() -> bool:
    return os.environ.get("GRASSINDEX_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


USE_NUMBA = HAVE_NUMBA and _numba_requested()
BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:
    reduce_lowest = nb_reduce_lowest
    reduce_full = nb_reduce_full
    dual_vector = nb_dual_vector
    parity_dot = nb_parity_dot
else:
    reduce_lowest = np_reduce_lowest
    reduce_full = np_reduce_full
    dual_vector = np_dual_vector
    parity_dot = np_parity_dot

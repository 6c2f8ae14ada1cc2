"""Incremental row echelon form over GF(2).

Rows come in sparse (sorted column indices) and are stored packed, one uint64
word per 64 columns.  Pivots are always the lowest column of a row.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Iterator

import numpy as np

from . import _kernels
from ._kernels import n_words

MAGIC = b"GF2E"
DUMP_VERSION = 1


class StructureError(ValueError):
    """Column index outside the state's dimension, or a write to a frozen state."""


def sparse_row(indices: Iterable[int]) -> np.ndarray:
    """Canonical sparse row: sorted indices, repeated indices cancelling in pairs."""
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
    if idx.size == 0:
        return idx
    vals, counts = np.unique(idx, return_counts=True)
    return vals[counts % 2 == 1]


def pack(indices: Iterable[int], dim: int) -> np.ndarray:
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
    words = np.zeros(n_words(dim), dtype=np.uint64)
    if idx.size:
        if idx.min() < 0 or idx.max() >= dim:
            raise StructureError(f"column index out of range for dimension {dim}")
        np.bitwise_xor.at(words, idx >> 6, np.left_shift(np.uint64(1), (idx & 63).astype(np.uint64)))
    return words


def unpack(words: np.ndarray) -> np.ndarray:
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return np.flatnonzero(bits).astype(np.int64)


def parity_dot(a: Iterable[int], b: Iterable[int]) -> int:
    """<a, b> over GF(2) for two sparse supports."""
    return len(set(sparse_row(a).tolist()) & set(sparse_row(b).tolist())) & 1


@dataclass(frozen=True)
class Membership:
    member: bool
    certificate: np.ndarray | None = None

    def __bool__(self) -> bool:
        return self.member


class EchelonState:
    """Row space of the rows inserted so far, as a semi-echelon basis.

    Each stored row has its lowest set column as pivot and no two rows share
    a pivot.  Stored rows are not back-substituted against later pivots.
    """

    def __init__(self, dim: int, capacity: int | None = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        self.nwords = n_words(dim)
        cap = min(max(dim, 1), capacity if capacity is not None else 256)
        self._rows = np.zeros((max(cap, 1), self.nwords), dtype=np.uint64)
        self._slot = np.full(max(dim, 1), -1, dtype=np.int64)
        self._cols: list[int] = []
        self.insertions = 0
        self.frozen = False

    @property
    def rank(self) -> int:
        return len(self._cols)

    @property
    def pivot_columns(self) -> list[int]:
        return sorted(self._cols)

    def freeze(self) -> EchelonState:
        self.frozen = True
        return self

    def _install(self, words: np.ndarray, col: int) -> None:
        r = len(self._cols)
        if r == self._rows.shape[0]:
            grown = np.zeros((min(2 * r, max(self.dim, 1)), self.nwords), dtype=np.uint64)
            grown[:r] = self._rows
            self._rows = grown
        self._rows[r] = words
        self._slot[col] = r
        self._cols.append(col)

    def insert_packed(self, words: np.ndarray) -> bool:
        """Insert a packed row (modified in place).  Returns True if the rank grew."""
        if self.frozen:
            raise StructureError("state is frozen")
        self.insertions += 1
        col = _kernels.reduce_lowest(words, self._rows, self._slot)
        if col < 0:
            return False
        self._install(words, col)
        return True

    def insert(self, row: Iterable[int]) -> bool:
        return self.insert_packed(pack(row, self.dim))

    def membership_packed(self, words: np.ndarray) -> Membership:
        words = words.copy()
        col = _kernels.reduce_full(words, self._rows, self._slot)
        if col < 0:
            return Membership(True)
        desc = np.array(sorted(self._cols, reverse=True), dtype=np.int64)
        phi = _kernels.dual_vector(self._rows, self._slot, desc, col, self.nwords)
        return Membership(False, unpack(phi))

    def membership(self, vector: Iterable[int]) -> Membership:
        """Whether `vector` lies in the row space.

        A negative answer carries a certificate: a covector orthogonal to
        every stored row whose pairing with `vector` is 1.
        """
        return self.membership_packed(pack(vector, self.dim))

    def rows(self) -> Iterator[tuple[int, np.ndarray]]:
        """(pivot column, sparse support) pairs in increasing pivot order."""
        for col in self.pivot_columns:
            yield col, unpack(self._rows[self._slot[col]])

    def dump(self, fp: BinaryIO) -> None:
        fp.write(MAGIC)
        fp.write(bytes([DUMP_VERSION]))
        fp.write(struct.pack("<Q", self.dim))
        for col, support in self.rows():
            fp.write(struct.pack("<QQ", col, support.size))
            fp.write(support.astype("<u8").tobytes())

    @classmethod
    def load(cls, fp: BinaryIO) -> EchelonState:
        head = fp.read(5)
        if len(head) != 5 or head[:4] != MAGIC:
            raise ValueError("not a GF2E echelon dump")
        if head[4] != DUMP_VERSION:
            raise ValueError(f"unsupported GF2E version {head[4]}")
        (dim,) = struct.unpack("<Q", fp.read(8))
        state = cls(dim)
        while True:
            rec = fp.read(16)
            if not rec:
                break
            if len(rec) != 16:
                raise ValueError("truncated GF2E record")
            col, count = struct.unpack("<QQ", rec)
            raw = fp.read(8 * count)
            if len(raw) != 8 * count:
                raise ValueError("truncated GF2E record")
            support = np.frombuffer(raw, dtype="<u8").astype(np.int64)
            if count == 0 or support[0] != col or np.any(np.diff(support) <= 0):
                raise ValueError(f"malformed pivot row at column {col}")
            if state._slot[col] >= 0:
                raise ValueError(f"duplicate pivot column {col}")
            state._install(pack(support, dim), int(col))
            state.insertions += 1
        return state

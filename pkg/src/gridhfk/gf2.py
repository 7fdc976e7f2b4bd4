"""Exact linear algebra over GF(2).

``SparseBoolMatrix`` stores coordinates; the elimination engine packs
rows into uint64 words so the hot XOR loops run word-parallel in numpy.
Pivots are chosen per column in left-to-right order after a one-off
column permutation by increasing column weight, a cheap stand-in for
lowest-fill pivoting that keeps elimination deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SparseBoolMatrix:
    """Immutable sparse matrix over GF(2); duplicate coords cancel."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, coords=()):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = int(rows)
        self.cols = int(cols)
        seen: set[tuple[int, int]] = set()
        for r, c in coords:
            r, c = int(r), int(c)
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) out of range {rows}x{cols}")
            if (r, c) in seen:
                seen.remove((r, c))
            else:
                seen.add((r, c))
        self.entries = frozenset(seen)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseBoolMatrix":
        return SparseBoolMatrix(self.cols, self.rows, [(c, r) for r, c in self.entries])

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for r, c in self.entries:
            m[r, c] = 1
        return m

    def to_packed(self) -> np.ndarray:
        """Rows packed into uint64 words, shape (rows, ceil(cols/64))."""
        words = max(1, (self.cols + 63) // 64)
        out = np.zeros((self.rows, words), dtype=np.uint64)
        if self.entries:
            rr = np.fromiter((r for r, _ in self.entries), dtype=np.int64, count=self.nnz)
            cc = np.fromiter((c for _, c in self.entries), dtype=np.int64, count=self.nnz)
            np.bitwise_xor.at(out, (rr, cc // 64), np.uint64(1) << (cc % 64).astype(np.uint64))
        return out

    @staticmethod
    def from_dense(m) -> "SparseBoolMatrix":
        m = np.asarray(m) % 2
        rr, cc = np.nonzero(m)
        return SparseBoolMatrix(m.shape[0], m.shape[1], list(zip(rr.tolist(), cc.tolist())))

    def matmul(self, other: "SparseBoolMatrix") -> "SparseBoolMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        by_row: dict[int, list[int]] = {}
        for r, c in other.entries:
            by_row.setdefault(r, []).append(c)
        acc: dict[tuple[int, int], int] = {}
        for r, k in self.entries:
            for c in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) ^ 1
        coords = [rc for rc, v in acc.items() if v]
        return SparseBoolMatrix(self.rows, other.cols, coords)

    def apply(self, vec: frozenset[int] | set[int]) -> frozenset[int]:
        """Matrix times a column vector given as a support set."""
        out: set[int] = set()
        cols = set(vec)
        for r, c in self.entries:
            if c in cols:
                out.symmetric_difference_update({r})
        return frozenset(out)

    def column(self, c: int) -> frozenset[int]:
        return frozenset(r for r, cc in self.entries if cc == c)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseBoolMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"SparseBoolMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# packed elimination


def _echelon_packed(packed: np.ndarray, ncols: int, col_order=None):
    """In-place forward elimination; returns (pivot list, row owner list).

    pivots are (column, row) pairs in elimination order.
    """
    rows = packed.shape[0]
    if col_order is None:
        col_order = range(ncols)
    pivot_of_row = -np.ones(rows, dtype=np.int64)
    pivots: list[tuple[int, int]] = []
    free = np.ones(rows, dtype=bool)
    for c in col_order:
        w, b = divmod(int(c), 64)
        mask = np.uint64(1) << np.uint64(b)
        hits = np.flatnonzero((packed[:, w] & mask) != 0)
        if hits.size == 0:
            continue
        cand = hits[free[hits]]
        if cand.size == 0:
            continue
        piv = int(cand[0])
        others = hits[hits != piv]
        if others.size:
            packed[others, :] ^= packed[piv, :]
        free[piv] = False
        pivot_of_row[piv] = c
        pivots.append((int(c), piv))
    return pivots


def rank(m: SparseBoolMatrix) -> int:
    """GF(2) rank via packed elimination on the shorter axis."""
    if m.is_zero():
        return 0
    work = m if m.rows <= m.cols * 2 else m.transpose()
    packed = work.to_packed()
    dense_cols = work.cols
    weights = np.zeros(dense_cols, dtype=np.int64)
    for _, c in work.entries:
        weights[c] += 1
    order = np.argsort(weights, kind="stable")
    order = [int(c) for c in order if weights[c] > 0]
    pivots = _echelon_packed(packed, dense_cols, order)
    return len(pivots)


def rank_dense_oracle(m: SparseBoolMatrix) -> int:
    """Naive dense eliminator kept as an independent cross-check."""
    a = m.to_dense().astype(np.uint8)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i, :] ^= a[r, :]
        r += 1
        if r == rows:
            break
    return r


@dataclass
class Span:
    """Row space of ``basis`` (packed), with pivot bookkeeping."""

    ncols: int
    packed: np.ndarray  # (k, words) reduced basis rows
    pivot_cols: list[int]

    @property
    def dim(self) -> int:
        return len(self.pivot_cols)

    def reduce(self, vec_packed: np.ndarray) -> np.ndarray:
        v = vec_packed.copy()
        for i, c in enumerate(self.pivot_cols):
            w, b = divmod(c, 64)
            if (v[w] >> np.uint64(b)) & np.uint64(1):
                v ^= self.packed[i]
        return v

    def contains(self, vec_packed: np.ndarray) -> bool:
        return not self.reduce(vec_packed).any()


def pack_support(support, ncols: int) -> np.ndarray:
    words = max(1, (ncols + 63) // 64)
    v = np.zeros(words, dtype=np.uint64)
    for c in support:
        w, b = divmod(int(c), 64)
        v[w] ^= np.uint64(1) << np.uint64(b)
    return v


def unpack_support(vec_packed: np.ndarray) -> frozenset[int]:
    out = []
    for w, word in enumerate(vec_packed):
        word = int(word)
        while word:
            b = word & -word
            out.append(w * 64 + b.bit_length() - 1)
            word ^= b
    return frozenset(out)


def row_span(vectors: list[np.ndarray], ncols: int) -> Span:
    """Reduced row echelon span of the given packed vectors (in order)."""
    basis: list[np.ndarray] = []
    pivot_cols: list[int] = []
    for vec in vectors:
        v = vec.copy()
        for i, c in enumerate(pivot_cols):
            w, b = divmod(c, 64)
            if (v[w] >> np.uint64(b)) & np.uint64(1):
                v ^= basis[i]
        if not v.any():
            continue
        # leading column = lowest set bit
        lead = None
        for w in range(len(v)):
            word = int(v[w])
            if word:
                lead = w * 64 + (word & -word).bit_length() - 1
                break
        # back-substitute into existing basis rows
        wl, bl = divmod(lead, 64)
        for i in range(len(basis)):
            if (basis[i][wl] >> np.uint64(bl)) & np.uint64(1):
                basis[i] ^= v
        basis.append(v)
        pivot_cols.append(lead)
    if basis:
        packed = np.vstack(basis)
    else:
        packed = np.zeros((0, max(1, (ncols + 63) // 64)), dtype=np.uint64)
    return Span(ncols=ncols, packed=packed, pivot_cols=pivot_cols)


def kernel_basis(m: SparseBoolMatrix) -> list[np.ndarray]:
    """Deterministic basis of ker(m) as packed vectors of length m.cols.

    Gaussian elimination on the transpose: vectors are combinations of
    the standard basis tracked through column reduction.
    """
    cols = m.cols
    words = max(1, (cols + 63) // 64)
    if cols == 0:
        return []
    # augmented: each column vector of m alongside identity tracker
    colvecs = m.transpose().to_packed()  # (cols, words_rows): column c as row
    tracker = np.zeros((cols, words), dtype=np.uint64)
    for c in range(cols):
        w, b = divmod(c, 64)
        tracker[c, w] = np.uint64(1) << np.uint64(b)
    pivot_rows: dict[int, int] = {}  # leading row index -> colvec index
    kernel: list[np.ndarray] = []
    for c in range(cols):
        v = colvecs[c]
        t = tracker[c]
        while True:
            lead = None
            for w in range(len(v)):
                word = int(v[w])
                if word:
                    lead = w * 64 + (word & -word).bit_length() - 1
                    break
            if lead is None:
                kernel.append(t.copy())
                break
            if lead in pivot_rows:
                j = pivot_rows[lead]
                v ^= colvecs[j]
                t ^= tracker[j]
            else:
                pivot_rows[lead] = c
                colvecs[c] = v
                tracker[c] = t
                break
    return kernel


def solve(m: SparseBoolMatrix, target: frozenset[int]) -> frozenset[int] | None:
    """One solution x of m @ x = target, or None if inconsistent."""
    cols = m.cols
    words_rhs = max(1, (m.rows + 63) // 64)
    colvecs = m.transpose().to_packed()
    words_track = max(1, (cols + 63) // 64)
    tracker = np.zeros((cols, words_track), dtype=np.uint64)
    for c in range(cols):
        w, b = divmod(c, 64)
        tracker[c, w] = np.uint64(1) << np.uint64(b)
    pivot_rows: dict[int, int] = {}
    order: list[int] = []
    for c in range(cols):
        v = colvecs[c]
        t = tracker[c]
        while True:
            lead = _lowest_bit(v)
            if lead is None:
                break
            if lead in pivot_rows:
                j = pivot_rows[lead]
                v ^= colvecs[j]
                t ^= tracker[j]
            else:
                pivot_rows[lead] = c
                order.append(c)
                break
    b = pack_support(target, m.rows)
    sol = np.zeros(words_track, dtype=np.uint64)
    while True:
        lead = _lowest_bit(b)
        if lead is None:
            return unpack_support(sol)
        if lead not in pivot_rows:
            return None
        j = pivot_rows[lead]
        b = b ^ colvecs[j]
        sol ^= tracker[j]


def _lowest_bit(v: np.ndarray) -> int | None:
    for w in range(len(v)):
        word = int(v[w])
        if word:
            return w * 64 + (word & -word).bit_length() - 1
    return None

"""Bit-packed linear algebra over GF(2).

Rows are stored as little-endian ``uint64`` words; column ``j`` lives in word
``j // 64`` at bit ``j % 64``.  Padding bits past the last column are kept at
zero so popcount inner products are exact.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

WORD = 64
_U64 = np.dtype("<u8")


def _nwords(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def _pack(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into rows of uint64 words."""
    rows, cols = dense.shape
    nw = _nwords(cols)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(_U64).reshape(rows, nw).copy()


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words, dtype=_U64).view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols].copy()


def _as_bits(v: Sequence[int] | np.ndarray) -> np.ndarray:
    arr = np.asarray(v, dtype=np.int64).ravel()
    return (arr & 1).astype(np.uint8)


class BinaryMatrix:
    """Immutable dense binary matrix with bit-packed rows."""

    __slots__ = ("_rows", "_cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        nw = _nwords(cols)
        if words is None:
            words = np.zeros((rows, nw), dtype=_U64)
        else:
            words = np.array(words, dtype=_U64, copy=True).reshape(rows, nw)
            if cols == 0:
                words[:] = 0
            elif cols % WORD and rows:
                words[:, -1] &= np.uint64((1 << (cols % WORD)) - 1)
        words.setflags(write=False)
        self._rows = rows
        self._cols = cols
        self._words = words

    # construction ---------------------------------------------------------

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]] | np.ndarray) -> "BinaryMatrix":
        arr = np.asarray(dense, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        arr = (arr & 1).astype(np.uint8)
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_strings(cls, rows: Iterable[str], cols: int | None = None) -> "BinaryMatrix":
        """Parse rows such as ``"0110"``; whitespace inside a row is ignored."""
        parsed = []
        for line in rows:
            bits = [c for c in line if not c.isspace()]
            if any(c not in "01" for c in bits):
                raise ValueError(f"invalid character in matrix row {line!r}")
            parsed.append([int(c) for c in bits])
        if not parsed:
            return cls.zeros(0, cols or 0)
        width = len(parsed[0])
        if any(len(r) != width for r in parsed):
            raise ValueError("ragged matrix rows")
        if cols is not None and cols != width:
            raise ValueError(f"expected {cols} columns, got {width}")
        return cls.from_dense(np.array(parsed, dtype=np.uint8).reshape(len(parsed), width))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8)) if n else cls(0, 0)

    # basic accessors ------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def words(self) -> np.ndarray:
        """Read-only packed storage, shape ``(rows, ceil(cols / 64))``."""
        return self._words

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self._rows}x{self._cols} matrix")

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        self._check(i, j)
        return int((int(self._words[i, j // WORD]) >> (j % WORD)) & 1)

    def row(self, i: int) -> np.ndarray:
        if not 0 <= i < self._rows:
            raise IndexError(f"row {i} out of range for {self._rows} rows")
        return _unpack(self._words[i : i + 1], self._cols)[0]

    def row_support(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.row(i))

    def to_dense(self) -> np.ndarray:
        return _unpack(self._words, self._cols)

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self._words).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0).astype(np.int64)

    def is_zero(self) -> bool:
        return not self._words.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._words, other._words)

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self._rows}x{self._cols}, weight={int(self.row_weights().sum())})"

    def to_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in r) for r in self.to_dense()]

    # algebra --------------------------------------------------------------

    @property
    def T(self) -> "BinaryMatrix":
        return BinaryMatrix.from_dense(self.to_dense().T) if self._rows else BinaryMatrix(self._cols, 0)

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BinaryMatrix(self._rows, self._cols, self._words ^ other._words)

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self._cols != other._rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = np.zeros((self._rows, _nwords(other._cols)), dtype=_U64)
        dense = self.to_dense()
        for i in range(self._rows):
            sel = np.flatnonzero(dense[i])
            if sel.size:
                out[i] = np.bitwise_xor.reduce(other._words[sel], axis=0)
        return BinaryMatrix(self._rows, other._cols, out)

    def mul_vec(self, v: Sequence[int] | np.ndarray) -> np.ndarray:
        """Return ``M v^T`` over GF(2) as a uint8 vector."""
        bits = _as_bits(v)
        if bits.size != self._cols:
            raise ValueError(f"vector length {bits.size} != {self._cols} columns")
        packed = _pack(bits.reshape(1, -1))[0]
        return (np.bitwise_count(self._words & packed).sum(axis=1) & 1).astype(np.uint8)

    def overlaps(self, other: "BinaryMatrix | None" = None) -> np.ndarray:
        """Integer row inner products ``|row_i(self) & row_j(other)|`` via popcount."""
        other = self if other is None else other
        if self._cols != other._cols:
            raise ValueError("column counts differ")
        acc = np.zeros((self._rows, other._rows), dtype=np.int64)
        for w in range(self._words.shape[1]):
            acc += np.bitwise_count(self._words[:, w, None] & other._words[None, :, w]).astype(np.int64)
        return acc

    def take_rows(self, idx: Sequence[int] | np.ndarray) -> "BinaryMatrix":
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= self._rows):
            raise IndexError("row index out of range")
        return BinaryMatrix(idx.size, self._cols, self._words[idx])

    def take_cols(self, idx: Sequence[int] | np.ndarray) -> "BinaryMatrix":
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= self._cols):
            raise IndexError("column index out of range")
        return BinaryMatrix.from_dense(self.to_dense()[:, idx].reshape(self._rows, idx.size))


def hstack(mats: Sequence[BinaryMatrix]) -> BinaryMatrix:
    rows = {m.rows for m in mats}
    if len(rows) != 1:
        raise ValueError("hstack needs equal row counts")
    return BinaryMatrix.from_dense(np.hstack([m.to_dense() for m in mats]))


def vstack(mats: Sequence[BinaryMatrix]) -> BinaryMatrix:
    cols = {m.cols for m in mats}
    if len(cols) != 1:
        raise ValueError("vstack needs equal column counts")
    n = cols.pop()
    words = np.vstack([m.words for m in mats]) if mats else np.zeros((0, _nwords(n)), _U64)
    return BinaryMatrix(words.shape[0], n, words)


# elimination ----------------------------------------------------------------


def _eliminate(words: np.ndarray, pivot_cols: int) -> list[int]:
    """Reduce ``words`` in place to reduced row echelon form.

    Pivots are searched left to right among the first ``pivot_cols`` columns;
    the lowest eligible row is swapped up.  Returns the pivot columns.
    """
    nrows = words.shape[0]
    pivots: list[int] = []
    r = 0
    for col in range(pivot_cols):
        if r == nrows:
            break
        w, b = divmod(col, WORD)
        bits = (words[:, w] >> np.uint64(b)) & np.uint64(1)
        cand = np.flatnonzero(bits[r:])
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
            bits[[r, p]] = bits[[p, r]]
        hit = np.flatnonzero(bits)
        hit = hit[hit != r]
        if hit.size:
            words[hit] ^= words[r]
        pivots.append(col)
        r += 1
    return pivots


def rref(M: BinaryMatrix) -> tuple[BinaryMatrix, list[int]]:
    """Reduced row echelon form (zero rows kept at the bottom) and pivot columns."""
    work = np.array(M.words, copy=True)
    pivots = _eliminate(work, M.cols)
    return BinaryMatrix(M.rows, M.cols, work), pivots


def rank(M: BinaryMatrix) -> int:
    """GF(2) rank by Gaussian elimination; ``M`` is not modified."""
    work = np.array(M.words, copy=True)
    return len(_eliminate(work, M.cols))


def independent_rows(M: BinaryMatrix) -> list[int]:
    """Indices of a maximal independent subset of rows, greedily in row order."""
    work = np.array(M.T.words, copy=True) if M.rows else np.zeros((0, 1), _U64)
    # pivots of M^T are the first independent rows of M
    return _eliminate(work, M.rows) if M.rows else []


def kron(A: BinaryMatrix, B: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix.from_dense(np.kron(A.to_dense(), B.to_dense()).reshape(A.rows * B.rows, A.cols * B.cols))


def rowspace_contains(M: BinaryMatrix, v: Sequence[int] | np.ndarray) -> bool:
    bits = _as_bits(v)
    if bits.size != M.cols:
        raise ValueError(f"vector length {bits.size} != {M.cols} columns")
    if not bits.any():
        return True
    return rank(vstack([M, BinaryMatrix.from_dense(bits.reshape(1, -1))])) == rank(M)


def circulant(coefficients: Sequence[int] | np.ndarray, l: int) -> BinaryMatrix:
    """``l x l`` circulant whose row ``i`` is ``coefficients`` shifted right by ``i``."""
    c = _as_bits(coefficients)
    if c.size != l:
        raise ValueError(f"expected {l} coefficients, got {c.size}")
    return BinaryMatrix.from_dense(np.array([np.roll(c, i) for i in range(l)], dtype=np.uint8).reshape(l, l))


def gf2_solve(M: BinaryMatrix, s: Sequence[int] | np.ndarray) -> np.ndarray | None:
    """Some ``u`` with ``M u^T = s``, or ``None`` when the system is inconsistent."""
    bits = _as_bits(s)
    if bits.size != M.rows:
        raise ValueError(f"syndrome length {bits.size} != {M.rows} rows")
    n = M.cols
    aug = np.hstack([M.to_dense(), bits.reshape(-1, 1)]) if M.rows else np.zeros((0, n + 1), np.uint8)
    work = _pack(aug) if M.rows else np.zeros((0, _nwords(n + 1)), _U64)
    pivots = _eliminate(work, n)
    w, b = divmod(n, WORD)
    rhs = ((work[:, w] >> np.uint64(b)) & np.uint64(1)).astype(np.uint8)
    if rhs[len(pivots) :].any():
        return None
    u = np.zeros(n, dtype=np.uint8)
    for i, col in enumerate(pivots):
        u[col] = rhs[i]
    return u


def nullspace(M: BinaryMatrix) -> BinaryMatrix:
    """Kernel basis read off the reduced row echelon form, one row per free column."""
    R, pivots = rref(M)
    n = M.cols
    dense = R.to_dense()
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(pivots):
            if dense[i, f]:
                basis[k, p] = 1
    return BinaryMatrix.from_dense(basis) if free else BinaryMatrix(0, n)


def is_orthogonal(A: BinaryMatrix, B: BinaryMatrix) -> bool:
    return (A @ B.T).is_zero()


# file formats ---------------------------------------------------------------


def write_alist(M: BinaryMatrix, path: str | Path) -> None:
    dense = M.to_dense()
    cols = [np.flatnonzero(dense[:, j]) + 1 for j in range(M.cols)]
    rows = [np.flatnonzero(dense[i]) + 1 for i in range(M.rows)]
    max_c = max((len(c) for c in cols), default=0)
    max_r = max((len(r) for r in rows), default=0)

    def pad(v: np.ndarray, width: int) -> str:
        vals = list(map(int, v)) + [0] * (width - len(v))
        return " ".join(map(str, vals))

    lines = [f"{M.cols} {M.rows}", f"{max_c} {max_r}"]
    lines.append(" ".join(str(len(c)) for c in cols))
    lines.append(" ".join(str(len(r)) for r in rows))
    lines += [pad(c, max_c) for c in cols]
    lines += [pad(r, max_r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def read_alist(path: str | Path) -> BinaryMatrix:
    tokens = [int(t) for t in Path(path).read_text().split()]
    pos = 0

    def take(k: int) -> list[int]:
        nonlocal pos
        out = tokens[pos : pos + k]
        if len(out) != k:
            raise ValueError(f"truncated alist file {path}")
        pos += k
        return out

    n, m = take(2)
    take(2)
    col_w = take(n)
    row_w = take(m)
    dense = np.zeros((m, n), dtype=np.uint8)
    max_c = max(col_w, default=0)
    # column lists may or may not be zero padded; detect from the token count
    padded = len(tokens) - pos == n * max_c + m * max(row_w, default=0)
    for j in range(n):
        entries = take(max_c if padded else col_w[j])
        for i in entries:
            if i:
                dense[i - 1, j] = 1
    return BinaryMatrix.from_dense(dense.reshape(m, n))


def write_dense(M: BinaryMatrix, path: str | Path) -> None:
    Path(path).write_text("\n".join(M.to_strings()) + ("\n" if M.rows else ""))


def read_dense(path: str | Path) -> BinaryMatrix:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    return BinaryMatrix.from_strings(lines)

"""Binary vectors and matrices over GF(2).

Vectors and matrices are immutable wrappers around ``uint8`` numpy arrays.
Public docs and error messages count rows and columns from 1; Python
indexing into ``.bits`` / ``.array`` is the usual 0-based one.

Row order of a Kronecker product is the standard one: row ``(i-1)*r + j``
of ``A (x) B`` is ``a_i (x) b_j``.  (A commonly reproduced row listing for
``A (x) B`` that interleaves ``a_1 (x) b_1, a_2 (x) b_2, ...`` is a typo;
it contradicts both the block definition and the index map
``k = (i-1) l_2 + j`` used for partial distances.)
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ExceedsEnumerationBudget,
    KernelFormatError,
    LengthMismatch,
    NotInvertible,
    NotSquare,
)

# 2^28 coset members is the desk-scale ceiling for exhaustive span search.
MAX_SPAN_GENERATORS = 28
# generators enumerated as one vectorised block; the rest are walked in Gray order
_INNER_GENERATORS = 16


def _as_bits(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("binary entries must be 0 or 1")
    return arr.astype(np.uint8)


class BitVector:
    """Fixed-length binary vector."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[int]):
        arr = _as_bits(list(bits) if not isinstance(bits, np.ndarray) else bits)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a BitVector needs a positive length")
        arr.setflags(write=False)
        self._bits = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "BitVector":
        # trusted 0/1 uint8 data from internal operations
        arr.setflags(write=False)
        out = object.__new__(cls)
        out._bits = arr
        return out

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(np.zeros(length, dtype=np.uint8))

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(np.ones(length, dtype=np.uint8))

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        return cls([int(c) for c in text])

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return self._bits.size

    def __iter__(self):
        return (int(b) for b in self._bits)

    def __getitem__(self, i):
        return int(self._bits[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return len(self) == len(other) and bool((self._bits == other._bits).all())

    def __hash__(self) -> int:
        return hash((len(self), self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector('{self}')"

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self._bits)

    def __add__(self, other: "BitVector") -> "BitVector":
        return add(self, other)

    def __and__(self, other: "BitVector") -> "BitVector":
        return hadamard(self, other)

    def __invert__(self) -> "BitVector":
        return complement(self)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self._bits))

    def support(self) -> frozenset:
        """1-based indices of the nonzero entries."""
        return frozenset(int(i) + 1 for i in np.flatnonzero(self._bits))


def _check_same_length(a: BitVector, b: BitVector) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"vector lengths differ: {len(a)} != {len(b)}")


def weight(v: BitVector) -> int:
    return v.weight


def add(a: BitVector, b: BitVector) -> BitVector:
    _check_same_length(a, b)
    return BitVector._wrap(a.bits ^ b.bits)


def hadamard(a: BitVector, b: BitVector) -> BitVector:
    _check_same_length(a, b)
    return BitVector._wrap(a.bits & b.bits)


def complement(a: BitVector) -> BitVector:
    return BitVector._wrap(a.bits ^ 1)


def kron_vec(a: BitVector, b: BitVector) -> BitVector:
    """``[a_1 b, a_2 b, ..., a_l b]``."""
    return BitVector._wrap(np.outer(a.bits, b.bits).ravel())


def vec_sum(vectors: Sequence[BitVector]) -> BitVector:
    """XOR of a non-empty sequence of equal-length vectors."""
    out = vectors[0]
    for v in vectors[1:]:
        out = add(out, v)
    return out


def hadamard_all(vectors: Sequence[BitVector]) -> BitVector:
    out = vectors[0]
    for v in vectors[1:]:
        out = hadamard(out, v)
    return out


class BinaryMatrix:
    """Rectangular binary matrix; rows are BitVectors of a common length."""

    __slots__ = ("_array",)

    def __init__(self, rows):
        if isinstance(rows, BinaryMatrix):
            arr = rows.array.copy()
        elif isinstance(rows, np.ndarray):
            arr = _as_bits(rows)
        else:
            rows = [r.bits if isinstance(r, BitVector) else list(r) for r in rows]
            lengths = {len(r) for r in rows}
            if len(lengths) > 1:
                raise LengthMismatch(f"rows have differing lengths {sorted(lengths)}")
            arr = _as_bits(rows)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError("a BinaryMatrix needs positive row and column counts")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        self._array = arr

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def shape(self) -> tuple:
        return self._array.shape

    @property
    def nrows(self) -> int:
        return self._array.shape[0]

    @property
    def ncols(self) -> int:
        return self._array.shape[1]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> BitVector:
        """Row ``i`` counted from 1."""
        if not 1 <= i <= self.nrows:
            raise IndexError(f"row {i} out of range 1..{self.nrows}")
        return BitVector(self._array[i - 1])

    def rows(self) -> list:
        return [BitVector(r) for r in self._array]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool((self._array == other._array).all())

    def __hash__(self) -> int:
        return hash((self.shape, self._array.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self._array.tolist()})"

    def __str__(self) -> str:
        return "\n".join("".join(str(int(b)) for b in r) for r in self._array)

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.ncols != other.nrows:
            raise LengthMismatch(f"cannot multiply {self.shape} by {other.shape}")
        prod = self._array.astype(np.int64) @ other.array.astype(np.int64)
        return BinaryMatrix((prod & 1).astype(np.uint8))


def kron_mat(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix(np.kron(a.array, b.array))


def kron_power(a: BinaryMatrix, n: int) -> BinaryMatrix:
    if n < 1:
        raise ValueError("Kronecker power needs n >= 1")
    out = a
    for _ in range(n - 1):
        out = kron_mat(out, a)
    return out


def _row_ints(arr: np.ndarray) -> list:
    return [int("".join(map(str, r.tolist())) or "0", 2) for r in arr]


def rank(a: BinaryMatrix) -> int:
    """GF(2) rank by Gaussian elimination on integer-packed rows."""
    rows = [r for r in _row_ints(a.array) if r]
    r = 0
    while rows:
        pivot = max(rows)
        top = pivot.bit_length() - 1
        rows = [x ^ pivot if (x >> top) & 1 else x for x in rows if x != pivot]
        rows = [x for x in rows if x]
        r += 1
    return r


def is_invertible(a: BinaryMatrix) -> bool:
    return a.is_square and rank(a) == a.nrows


def inverse(a: BinaryMatrix) -> BinaryMatrix:
    """Inverse over GF(2) by Gauss-Jordan elimination."""
    if not a.is_square:
        raise NotSquare(f"matrix is {a.nrows}x{a.ncols}")
    n = a.nrows
    aug = np.concatenate([a.array, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        pivots = np.flatnonzero(aug[col:, col])
        if pivots.size == 0:
            raise NotInvertible("matrix is singular over GF(2)")
        p = col + pivots[0]
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        hits = np.flatnonzero(aug[:, col])
        hits = hits[hits != col]
        aug[hits] ^= aug[col]
    return BinaryMatrix(aug[:, n:])


def _pack(vectors: Sequence[BitVector], length: int) -> np.ndarray:
    """Pack vectors into rows of uint64 words, shape (len(vectors), words)."""
    words = (length + 63) // 64
    padded = np.zeros((len(vectors), words * 64), dtype=np.uint8)
    for k, v in enumerate(vectors):
        padded[k, :length] = v.bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").reshape(len(vectors), words)


def span_min_weight(rows: Sequence[BitVector], target: BitVector) -> int:
    """Minimum weight over the coset ``target + span(rows)``.

    Exhaustive over all ``2^K`` combinations: the first generators are
    expanded into one array by doubling, the remaining ones are walked in
    Gray-code order so each step costs a single XOR.
    """
    rows = list(rows)
    for r in rows:
        _check_same_length(r, target)
    k = len(rows)
    if k > MAX_SPAN_GENERATORS:
        raise ExceedsEnumerationBudget(
            f"span of {k} generators exceeds the {MAX_SPAN_GENERATORS}-generator budget"
        )
    packed = _pack([target] + rows, len(target))
    base, gens = packed[0], packed[1:]
    inner, outer = gens[:_INNER_GENERATORS], gens[_INNER_GENERATORS:]

    block = base[None, :].copy()
    for g in inner:
        block = np.concatenate([block, block ^ g], axis=0)

    def block_min(offset):
        return int(np.bitwise_count(block ^ offset).sum(axis=1, dtype=np.int64).min())

    offset = np.zeros_like(base)
    best = block_min(offset)
    for step in range(1, 1 << len(outer)):
        offset = offset ^ outer[(step & -step).bit_length() - 1]
        best = min(best, block_min(offset))
        if best == 0:
            break
    return best


def read_kernel(text: str) -> BinaryMatrix:
    """Parse the ``.pm`` kernel text format.

    Line 1 holds ``rows cols``; each following line holds ``cols``
    characters from ``{0,1}``.
    """
    lines = text.splitlines()
    if not lines:
        raise KernelFormatError("empty kernel file", 1)
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise KernelFormatError("expected header 'rows cols'", 1, 1)
    nrows, ncols = int(head[0]), int(head[1])
    if nrows < 1 or ncols < 1:
        raise KernelFormatError("row and column counts must be positive", 1, 1)
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != nrows:
        raise KernelFormatError(f"expected {nrows} rows, found {len(body)}", len(body) + 2)
    out = np.zeros((nrows, ncols), dtype=np.uint8)
    for r, line in enumerate(body):
        lineno = r + 2
        for c, ch in enumerate(line):
            if c >= ncols:
                raise KernelFormatError(f"row longer than {ncols} columns", lineno, c + 1)
            if ch not in "01":
                raise KernelFormatError(f"unexpected character {ch!r}", lineno, c + 1)
            out[r, c] = ch == "1"
        if len(line) < ncols:
            raise KernelFormatError(f"row shorter than {ncols} columns", lineno, len(line) + 1)
    return BinaryMatrix(out)


def write_kernel(matrix: BinaryMatrix) -> str:
    return f"{matrix.nrows} {matrix.ncols}\n{matrix}\n"


def load_kernel(path) -> BinaryMatrix:
    with open(path, encoding="ascii") as fh:
        return read_kernel(fh.read())

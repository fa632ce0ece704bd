"""Dense linear algebra over a finite field.

Matrices are plain ``numpy`` integer arrays whose entries are field element
encodings; every routine takes the field explicitly. :class:`MatrixGF` is a
thin immutable wrapper for callers that want the field carried along.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CodingError, FieldMismatch, GuardExceeded

DTYPE = np.int64


def as_matrix(field, rows, ncols: int | None = None) -> np.ndarray:
    """Validate ``rows`` as a 2-D array of elements of ``field``."""
    A = np.array(rows, dtype=DTYPE)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, ncols or 0)
    if A.ndim != 2:
        raise CodingError(f"expected a 2-D matrix, got shape {A.shape}")
    if ncols is not None and A.shape[1] != ncols:
        raise CodingError(f"expected {ncols} columns, got {A.shape[1]}")
    if A.size and (A.min() < 0 or A.max() >= field.q):
        raise CodingError(f"entries must lie in [0, {field.q})")
    return A


def rref(field, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the RREF (one per pivot) and the pivot
    column indices.
    """
    R = np.array(A, dtype=DTYPE, copy=True)
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r] = field.mul_arr(field.inv(lead), R[r])
        factors = R[:, c].copy()
        factors[r] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            R[rows] = field.sub_arr(R[rows], field.mul_arr(factors[rows, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(field, A: np.ndarray) -> int:
    return len(rref(field, A)[1])


def null_space(field, A: np.ndarray) -> np.ndarray:
    """Rows spanning ``{x : A x^T = 0}``; shape ``(ncols - rank, ncols)``."""
    A = np.asarray(A, dtype=DTYPE)
    ncols = A.shape[1]
    R, pivots = rref(field, A)
    free = [c for c in range(ncols) if c not in set(pivots)]
    N = np.zeros((len(free), ncols), dtype=DTYPE)
    for i, f in enumerate(free):
        N[i, f] = 1
        for r, pc in enumerate(pivots):
            N[i, pc] = field.neg(int(R[r, f]))
    return N


def matmul(field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=DTYPE)
    B = np.asarray(B, dtype=DTYPE)
    if A.shape[1] != B.shape[0]:
        raise CodingError(f"shape mismatch {A.shape} @ {B.shape}")
    if field.e == 1:
        # entries < p <= 2**16, so partial sums stay far below int64 range
        return (A @ B) % field.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=DTYPE)
    for t in range(A.shape[1]):
        out = field.add_arr(out, field.mul_arr(A[:, t, None], B[None, t, :]))
    return out


def inverse(field, A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=DTYPE)
    n = A.shape[0]
    if A.shape != (n, n):
        raise CodingError("inverse of a non-square matrix")
    R, pivots = rref(field, np.hstack([A, np.eye(n, dtype=DTYPE)]))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise CodingError("matrix is singular")
    return R[:n, n:]


def weight(v) -> int:
    """Number of nonzero coordinates."""
    return int(np.count_nonzero(np.asarray(v)))


def span_array(field, rows: np.ndarray) -> np.ndarray:
    """All ``q**k`` linear combinations of ``rows``.

    Row ``idx`` of the result is ``sum_i a_i * rows[i]`` where ``a_i`` is the
    ``i``-th base-q digit of ``idx`` (little-endian).
    """
    rows = np.asarray(rows, dtype=DTYPE)
    n = rows.shape[1]
    S = np.zeros((1, n), dtype=DTYPE)
    for g in rows:
        multiples = field.mul_arr(np.arange(field.q, dtype=DTYPE)[:, None], g[None, :])
        S = field.add_arr(multiples[:, None, :], S[None, :, :]).reshape(-1, n)
    return S


def message_digits(field, index: int, k: int) -> list[int]:
    """Inverse of the :func:`span_array` indexing: coefficient vector of ``index``."""
    out = []
    for _ in range(k):
        index, d = divmod(index, field.q)
        out.append(d)
    return out


def iter_span(field, rows: np.ndarray, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield the row space of ``rows`` in blocks of at most ``chunk`` vectors."""
    rows = np.asarray(rows, dtype=DTYPE)
    k = rows.shape[0]
    inner = 0
    while inner < k and field.q ** (inner + 1) <= chunk:
        inner += 1
    inner = max(inner, 1) if k else 0
    S = span_array(field, rows[:inner])
    outer_rows = rows[inner:]
    for coeffs in itertools.product(range(field.q), repeat=outer_rows.shape[0]):
        offset = np.zeros(rows.shape[1], dtype=DTYPE)
        for a, g in zip(coeffs, outer_rows):
            if a:
                offset = field.add_arr(offset, field.mul_arr(a, g))
        yield field.add_arr(S, offset[None, :])


def min_nonzero_weight(field, rows: np.ndarray, guard: int) -> int | None:
    """Minimum weight of a nonzero vector in the row space, or ``None`` if it is {0}."""
    rows = np.asarray(rows, dtype=DTYPE)
    if rows.shape[0] == 0:
        return None
    size = field.q ** rows.shape[0]
    if size > guard:
        raise GuardExceeded("span enumeration", size, guard)
    best = None
    for block in iter_span(field, rows):
        w = np.count_nonzero(block, axis=1)
        w = w[w > 0]
        if w.size:
            m = int(w.min())
            best = m if best is None else min(best, m)
    return best


@dataclass(frozen=True, eq=False)
class MatrixGF:
    """A matrix over a finite field."""

    field: object
    entries: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.field, self.entries)
        A.setflags(write=False)
        object.__setattr__(self, "entries", A)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def rank(self) -> int:
        return rank(self.field, self.entries)

    def rref(self) -> "MatrixGF":
        return MatrixGF(self.field, rref(self.field, self.entries)[0])

    def null_space(self) -> "MatrixGF":
        return MatrixGF(self.field, null_space(self.field, self.entries))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, self.entries.T)

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        if other.field != self.field:
            raise FieldMismatch("matrix product over different fields")
        return MatrixGF(self.field, matmul(self.field, self.entries, other.entries))

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and np.array_equal(self.entries, other.entries)
        )

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

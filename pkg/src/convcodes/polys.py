"""Univariate polynomials over GF(q) and polynomial matrices.

A polynomial is a tuple of field elements, low degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .errors import CodingError
from .galois import Field

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (1,)


def trim(c: Sequence[int]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(x) for x in c)


def deg(a: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def add(f: Field, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = f.add(out[i], y)
    return trim(out)


def neg(f: Field, a: Poly) -> Poly:
    return tuple(f.neg(x) for x in a)


def sub(f: Field, a: Poly, b: Poly) -> Poly:
    return add(f, a, neg(f, b))


def scale(f: Field, c: int, a: Poly) -> Poly:
    if c == 0:
        return ZERO
    return tuple(f.mul(c, x) for x in a)


def mul(f: Field, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
    return trim(out)


def divmod_(f: Field, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = f.inv(b[-1])
    qt = [0] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        c = f.mul(r[-1], inv_lead)
        shift = len(r) - 1 - db
        qt[shift] = c
        for j, bj in enumerate(b):
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj))
        r = list(trim(r))
    return trim(qt), trim(r)


def exact_div(f: Field, a: Poly, b: Poly) -> Poly:
    q, r = divmod_(f, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(f: Field, a: Poly) -> Poly:
    if not a:
        return ZERO
    return scale(f, f.inv(a[-1]), a)


def gcd(f: Field, a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (``()`` only if both are zero)."""
    while b:
        a, b = b, divmod_(f, a, b)[1]
    return monic(f, a)


def evaluate(f: Field, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = f.add(f.mul(acc, x), c)
    return acc


def weight(a: Poly) -> int:
    return sum(1 for c in a if c)


# -- matrices of polynomials ------------------------------------------------

def det(f: Field, M: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination over GF(q)[D]."""
    n = len(M)
    if n == 0:
        return ONE
    A = [list(row) for row in M]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return ZERO
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = sub(f, mul(f, A[i][j], akk), mul(f, aik, A[k][j]))
                A[i][j] = exact_div(f, num, prev)
            A[i][k] = ZERO
        prev = akk
    d = A[n - 1][n - 1]
    return neg(f, d) if sign < 0 else d


def smith_invariants(f: Field, M: Sequence[Sequence[Poly]]) -> list[Poly]:
    """Monic invariant factors ``d_1 | d_2 | ...`` of a polynomial matrix.

    Only the nonzero ones are returned, so their count is the rank.
    """
    A = [list(row) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    out: list[Poly] = []
    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if A[i][j] and (best is None or deg(A[i][j]) < deg(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return out
            i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            piv = A[t][t]
            clean = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    qt, r = divmod_(f, A[i][t], piv)
                    A[i] = [sub(f, A[i][c], mul(f, qt, A[t][c])) for c in range(cols)]
                    clean = clean and not r
            for j in range(t + 1, cols):
                if A[t][j]:
                    qt, r = divmod_(f, A[t][j], piv)
                    for row in A:
                        row[j] = sub(f, row[j], mul(f, qt, row[t]))
                    clean = clean and not r
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if divmod_(f, A[i][j], piv)[1]),
                None,
            )
            if bad is None:
                break
            A[t] = [add(f, A[t][c], A[bad][c]) for c in range(cols)]
        out.append(monic(f, A[t][t]))
    return out


@dataclass(frozen=True, eq=False)
class PolyMatrix:
    """``G(D) = A_0 + A_1 D + ... + A_m D^m`` with coefficient stack ``coeffs[t] = A_t``."""

    field: Field
    coeffs: np.ndarray

    def __post_init__(self):
        C = np.array(self.coeffs, dtype=np.int64)
        if C.ndim != 3 or C.shape[0] < 1:
            raise CodingError("coefficient stack must have shape (m+1, rows, cols)")
        if C.size and (C.min() < 0 or C.max() >= self.field.q):
            raise CodingError("coefficients must be field elements")
        # tight memory: drop trailing zero coefficient matrices
        while C.shape[0] > 1 and not C[-1].any():
            C = C[:-1]
        C.setflags(write=False)
        object.__setattr__(self, "coeffs", C)

    @classmethod
    def from_entries(cls, field: Field, entries: Sequence[Sequence[Sequence[int]]]) -> "PolyMatrix":
        """Build from a rows x cols grid of coefficient lists (low-to-high)."""
        rows = len(entries)
        cols = len(entries[0])
        m = max((len(trim(e)) for row in entries for e in row), default=1) - 1
        C = np.zeros((max(m, 0) + 1, rows, cols), dtype=np.int64)
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise CodingError("ragged polynomial matrix")
            for j, e in enumerate(row):
                for t, c in enumerate(trim(e)):
                    C[t, i, j] = c
        return cls(field, C)

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[1], self.coeffs.shape[2]

    @property
    def memory(self) -> int:
        return self.coeffs.shape[0] - 1

    def entry(self, i: int, j: int) -> Poly:
        return trim(self.coeffs[:, i, j])

    def entries(self) -> list[list[Poly]]:
        k, n = self.shape
        return [[self.entry(i, j) for j in range(n)] for i in range(k)]

    def row_degrees(self) -> list[int]:
        """Largest ``t`` with a nonzero ``A_t`` row; -1 for a zero row."""
        out = []
        for i in range(self.shape[0]):
            nz = np.nonzero(self.coeffs[:, i, :].any(axis=1))[0]
            out.append(int(nz[-1]) if nz.size else -1)
        return out

    @property
    def external_degree(self) -> int:
        return sum(max(d, 0) for d in self.row_degrees())

    def leading_row_matrix(self) -> np.ndarray:
        """Row ``i`` is the coefficient of ``D^{gamma_i}`` in row ``i``."""
        degs = self.row_degrees()
        return np.array([self.coeffs[max(d, 0), i, :] for i, d in enumerate(degs)], dtype=np.int64).reshape(self.shape)

    def minors(self) -> Iterator[tuple[tuple[int, ...], Poly]]:
        """All full-size (rows x rows) minors with their column sets."""
        k, n = self.shape
        E = self.entries()
        for cols in itertools.combinations(range(n), k):
            yield cols, det(self.field, [[row[c] for c in cols] for row in E])

    def permute_rows(self, order: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.field, self.coeffs[:, list(order), :])

    def scale_row(self, i: int, c: int) -> "PolyMatrix":
        C = self.coeffs.copy()
        C[:, i, :] = self.field.mul_arr(c, C[:, i, :])
        return PolyMatrix(self.field, C)

    def at(self, x: int) -> np.ndarray:
        """Evaluate ``G(x)`` for a field element ``x``."""
        f = self.field
        out = np.zeros(self.shape, dtype=np.int64)
        for A in self.coeffs[::-1]:
            out = f.add_arr(f.mul_arr(x, out), A)
        return out

    def rank_at_zero(self) -> int:
        return linalg.rank(self.field, self.coeffs[0])

    def to_json(self) -> list:
        return self.coeffs.tolist()

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and other.field == self.field
            and np.array_equal(other.coeffs, self.coeffs)
        )

    def __repr__(self):
        k, n = self.shape
        return f"PolyMatrix({k}x{n}, memory={self.memory}, over {self.field!r})"

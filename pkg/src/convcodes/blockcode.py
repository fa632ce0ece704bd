"""Linear block codes over GF(q).

A :class:`LinearCode` stores its generator in reduced row echelon form, so
two codes with the same row space have identical generators. Distances are
computed by exhaustive message enumeration behind a guard; codes produced by
constructions may also carry a proven distance interval ``[d_lo, d_hi]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from . import linalg
from .errors import CertificationError, CodingError, FieldMismatch, GuardExceeded
from .galois import Field

DEFAULT_MAX_CODEWORDS = 1 << 24


@dataclass(frozen=True, eq=False)
class ZeroCode:
    """The zero-dimensional code {0} of length ``n``."""

    field: Field
    n: int
    k: int = 0
    meta: dict = dc_field(default_factory=dict)

    def __repr__(self):
        return f"ZeroCode([{self.n},0]_{self.field.q})"


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An ``[n, k]`` linear code given by a full-rank generator matrix.

    Build with :func:`code_from_generator`; the constructor assumes its
    ``generator`` is already in canonical RREF form.
    """

    field: Field
    generator: np.ndarray
    d_lo: int | None = None
    d_hi: int | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @cached_property
    def parity_check(self) -> np.ndarray:
        H = linalg.null_space(self.field, self.generator)
        H.setflags(write=False)
        return H

    @property
    def pivots(self) -> list[int]:
        return [int(np.nonzero(row)[0][0]) for row in self.generator]

    @property
    def name(self) -> str:
        return self.meta.get("name", "")

    def distance_interval(self) -> tuple[int, int]:
        """Best known bounds on the minimum distance without enumerating."""
        exact = self.__dict__.get("_exact_d")
        if exact is not None:
            return exact, exact
        lo = self.d_lo if self.d_lo is not None else 1
        hi = self.n - self.k + 1
        if self.d_hi is not None:
            hi = min(hi, self.d_hi)
        # every generator row is a codeword
        hi = min(hi, int(np.count_nonzero(self.generator, axis=1).min()))
        return lo, hi

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if self.k == self.n:
            return True
        syn = linalg.matmul(self.field, v.reshape(-1, self.n), self.parity_check.T)
        return not np.any(syn)

    def encode(self, message) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64).reshape(1, self.k)
        return linalg.matmul(self.field, msg, self.generator)[0]

    def with_meta(self, **meta) -> "LinearCode":
        out = LinearCode(self.field, self.generator, self.d_lo, self.d_hi, {**self.meta, **meta})
        if "_exact_d" in self.__dict__:
            out.__dict__["_exact_d"] = self.__dict__["_exact_d"]
        return out

    def __repr__(self):
        lo, hi = self.distance_interval()
        d = lo if lo == hi else f"{lo}..{hi}"
        return f"LinearCode([{self.n},{self.k},{d}]_{self.field.q}{', ' + self.name if self.name else ''})"


def code_from_generator(
    field: Field,
    M,
    *,
    d_lo: int | None = None,
    d_hi: int | None = None,
    meta: dict | None = None,
) -> LinearCode:
    """Row space of ``M`` as a :class:`LinearCode` (generator in RREF)."""
    if isinstance(M, linalg.MatrixGF):
        if M.field != field:
            raise FieldMismatch("matrix and field differ")
        M = M.entries
    A = linalg.as_matrix(field, M)
    if A.shape[1] < 1:
        raise CodingError("code length must be >= 1")
    G, _ = linalg.rref(field, A)
    if G.shape[0] == 0:
        raise CodingError("generator spans the zero code; use ZeroCode")
    G.setflags(write=False)
    return LinearCode(field, G, d_lo, d_hi, dict(meta or {}))


def full_code(field: Field, n: int) -> LinearCode:
    return code_from_generator(field, np.eye(n, dtype=np.int64), meta={"name": f"full{n}"})


def dual(C: LinearCode | ZeroCode) -> LinearCode | ZeroCode:
    """Euclidean dual; the parity check of ``C`` generates ``C^perp``."""
    if isinstance(C, ZeroCode):
        return full_code(C.field, C.n)
    if C.k == C.n:
        return ZeroCode(C.field, C.n)
    D = code_from_generator(C.field, C.parity_check)
    return D.with_meta(name=f"dual({C.name})" if C.name else "dual")


def same_code(A: LinearCode, B: LinearCode) -> bool:
    return (
        A.field == B.field
        and A.generator.shape == B.generator.shape
        and np.array_equal(A.generator, B.generator)
    )


def weight(v) -> int:
    """Hamming weight: number of nonzero coordinates."""
    return linalg.weight(v)


def min_distance(C: LinearCode, guard: int = DEFAULT_MAX_CODEWORDS) -> int:
    """Exact minimum distance by enumerating all ``q**k`` messages.

    The result is cached on ``C``.
    """
    if isinstance(C, ZeroCode):
        raise CodingError("the zero code has no minimum distance")
    cached = C.__dict__.get("_exact_d")
    if cached is not None:
        return cached
    d = linalg.min_nonzero_weight(C.field, C.generator, guard)
    lo, hi = C.distance_interval()
    if not lo <= d <= hi:
        raise CertificationError(f"exact distance {d} outside the claimed interval [{lo}, {hi}]")
    C.__dict__["_exact_d"] = d
    return d


def try_min_distance(C: LinearCode, guard: int = DEFAULT_MAX_CODEWORDS) -> int | None:
    try:
        return min_distance(C, guard)
    except GuardExceeded:
        return None


def weight_distribution(C: LinearCode, guard: int = DEFAULT_MAX_CODEWORDS) -> list[int]:
    """``A[w]`` = number of codewords of weight ``w``."""
    size = C.field.q**C.k
    if size > guard:
        raise GuardExceeded("weight distribution", size, guard)
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for block in linalg.iter_span(C.field, C.generator):
        counts += np.bincount(np.count_nonzero(block, axis=1), minlength=C.n + 1)
    return counts.tolist()


def is_self_orthogonal(C: LinearCode) -> bool:
    G = C.generator
    return not np.any(linalg.matmul(C.field, G, G.T))


def is_self_dual(C: LinearCode) -> bool:
    return C.n % 2 == 0 and 2 * C.k == C.n and is_self_orthogonal(C)


def cyclic_shift(v, s: int = 1) -> np.ndarray:
    return np.roll(np.asarray(v), s, axis=-1)


def is_cyclic(C: LinearCode) -> bool:
    """Whether the right cyclic shift of every generator row stays in ``C``."""
    return C.contains(cyclic_shift(C.generator))


def transitivity(C: LinearCode) -> str:
    """``"certified"`` for cyclic codes; otherwise ``"unknown"`` (never "false")."""
    return "certified" if is_cyclic(C) else "unknown"


def certify_labels(C: LinearCode) -> dict[str, object]:
    return {
        "transitive": transitivity(C),
        "cyclic": is_cyclic(C),
        "self_orthogonal": is_self_orthogonal(C),
        "self_dual": is_self_dual(C),
    }


def check_code(C: LinearCode) -> dict[str, object]:
    """Structural invariants of a code, as a report dictionary."""
    H = C.parity_check
    G = C.generator
    f = C.field
    report = {
        "rank_G": linalg.rank(f, G),
        "rank_H": linalg.rank(f, H) if H.shape[0] else 0,
        "GHt_zero": bool(H.shape[0] == 0 or not np.any(linalg.matmul(f, G, H.T))),
    }
    report["ok"] = report["rank_G"] == C.k and report["rank_H"] == C.n - C.k and report["GHt_zero"]
    return report

"""Convolutional codes from block codes, certification, and free distance.

The construction splits a full-row-rank matrix ``H`` into row blocks
``H_0, ..., H_m`` (``H_0`` the largest), pads the later blocks with zero rows
at the bottom and reads ``G(D) = H~_0 + H~_1 D + ... + H~_m D^m``. Used with
a block code's generator matrix as ``H``, the resulting code has free
distance at least the block code's minimum distance.

Free distance of unit-memory codes is exact: a shortest-path search over the
``q**gamma`` encoder states whose edge weights are coset minimum weights.
:func:`free_distance_truncated` is an independent brute-force check.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import linalg, polys
from .blockcode import DEFAULT_MAX_CODEWORDS, LinearCode, min_distance
from .errors import CertificationError, CodingError, GuardExceeded
from .polys import PolyMatrix

DEFAULT_MAX_STATES = 1 << 12
DEFAULT_MAX_COSETS = 1 << 20
DEFAULT_MAX_TRUNCATED = 1 << 26
DEFAULT_MAX_MINORS = 10**5


@dataclass(frozen=True)
class SingletonData:
    n: int
    k: int
    gamma: int
    s: int
    r: int


def generalized_singleton(n: int, k: int, gamma: int) -> SingletonData:
    """``s = (n - k)(floor(gamma / k) + 1) + gamma + 1`` and ``r = max(n, s)``."""
    if not 1 <= k <= n or gamma < 0:
        raise CodingError(f"need 1 <= k <= n and gamma >= 0, got n={n} k={k} gamma={gamma}")
    s = (n - k) * (gamma // k + 1) + gamma + 1
    return SingletonData(n, k, gamma, s, max(n, s))


# -- certification ------------------------------------------------------------

def _full_rank_error(G: PolyMatrix):
    return CodingError(f"{G!r} is not of full row rank over GF(q)(D)")


def is_basic(G: PolyMatrix, method: str = "minors", max_minors: int = DEFAULT_MAX_MINORS) -> bool:
    """Whether ``G(D)`` has a polynomial right inverse.

    ``method="minors"`` tests that the gcd of all full-size minors is a
    nonzero constant, falling back to the Smith form when there are more
    than ``max_minors`` minors; ``method="smith"`` checks that every Smith
    invariant factor is a unit.
    """
    k, n = G.shape
    if k > n:
        raise _full_rank_error(G)
    if method == "minors" and math.comb(n, k) <= max_minors:
        g = polys.ZERO
        for _, m in G.minors():
            g = polys.gcd(G.field, g, m)
            if polys.deg(g) == 0:
                return True
        if not g:
            raise _full_rank_error(G)
        return False
    if method not in ("minors", "smith"):
        raise CodingError(f"unknown method {method!r}")
    inv = polys.smith_invariants(G.field, G.entries())
    if len(inv) < k:
        raise _full_rank_error(G)
    return all(polys.deg(d) == 0 for d in inv)


def is_reduced(G: PolyMatrix) -> bool:
    """Whether the leading-row-coefficient matrix has full row rank."""
    k, _ = G.shape
    if min(G.row_degrees()) < 0:
        raise _full_rank_error(G)
    return linalg.rank(G.field, G.leading_row_matrix()) == k


def internal_degree(G: PolyMatrix) -> int:
    """Largest degree among the full-size minors."""
    best = -1
    for _, m in G.minors():
        best = max(best, polys.deg(m))
    if best < 0:
        raise _full_rank_error(G)
    return best


# -- codes --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConvCode:
    """A convolutional code with a reduced basic generator ``G(D)``.

    ``df_lb`` is a proven lower bound on the free distance (from the block
    code the matrix was built from); ``df`` is the exact value once known.
    """

    generator: PolyMatrix
    df_lb: int | None = None
    df: int | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def field(self):
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def gamma(self) -> int:
        return self.generator.external_degree

    @property
    def memory(self) -> int:
        return max(self.generator.row_degrees())

    @property
    def singleton(self) -> SingletonData:
        return generalized_singleton(self.n, self.k, self.gamma)

    @property
    def s(self) -> int:
        return self.singleton.s

    @property
    def r(self) -> int:
        return self.singleton.r

    def with_df(self, df: int) -> "ConvCode":
        if self.df_lb is not None and df < self.df_lb:
            raise CertificationError(f"free distance {df} below the proven bound {self.df_lb}")
        if df > self.s:
            raise CertificationError(f"free distance {df} exceeds the Singleton bound {self.s}")
        return ConvCode(self.generator, self.df_lb, df, self.meta)

    def params(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "gamma": self.gamma,
            "memory": self.memory,
            "df_lb": self.df_lb,
            "s": self.s,
            "r": self.r,
        }
        if self.df is not None:
            out["df"] = self.df
        return out

    def encode(self, inputs: Sequence[Sequence[int]]) -> np.ndarray:
        """Output blocks ``v_t = sum_i u_{t-i} A_i`` for an input block sequence."""
        f = self.field
        U = np.asarray(inputs, dtype=np.int64).reshape(-1, self.k)
        C = self.generator.coeffs
        L = U.shape[0] + C.shape[0] - 1
        out = np.zeros((L, self.n), dtype=np.int64)
        for t, u in enumerate(U):
            for i, A in enumerate(C):
                out[t + i] = f.add_arr(out[t + i], linalg.matmul(f, u[None, :], A)[0])
        return out

    def __repr__(self):
        df = self.df if self.df is not None else (f">={self.df_lb}" if self.df_lb is not None else "?")
        return f"ConvCode(({self.n}, {self.k}, {self.gamma}; {self.memory}, {df})_{self.field.q})"


def conv_code(
    G: PolyMatrix,
    *,
    df_lb: int | None = None,
    df: int | None = None,
    meta: dict | None = None,
    max_minors: int = DEFAULT_MAX_MINORS,
) -> ConvCode:
    """Wrap ``G`` as a :class:`ConvCode` after checking it is basic and reduced."""
    if not is_basic(G, max_minors=max_minors):
        raise CodingError("generator matrix is not basic")
    if not is_reduced(G):
        raise CodingError("generator matrix is not reduced")
    V = ConvCode(G, df_lb, None, dict(meta or {}))
    return V.with_df(df) if df is not None else V


# -- construction -------------------------------------------------------------

def piret_split(H: linalg.MatrixGF, counts: Sequence[int]) -> list[linalg.MatrixGF]:
    """Split the rows of ``H`` into consecutive blocks of the given sizes.

    Block 0 must be the largest, so that every block has rank at most the
    rank ``kappa`` of block 0. Blocks 1.. are padded with zero rows at the
    bottom to ``kappa`` rows.
    """
    field, A = H.field, H.entries
    counts = [int(c) for c in counts]
    if not counts or any(c < 1 for c in counts):
        raise CodingError("every block needs at least one row")
    if sum(counts) != A.shape[0]:
        raise CodingError(f"row counts {counts} do not add up to {A.shape[0]} rows")
    if linalg.rank(field, A) != A.shape[0]:
        raise CodingError("H must have full row rank")
    kappa = counts[0]
    for i, c in enumerate(counts[1:], start=1):
        if c > kappa:
            raise CodingError(f"block {i} has rank {c} > kappa = {kappa}")
    parts = []
    start = 0
    for c in counts:
        P = np.zeros((kappa, A.shape[1]), dtype=np.int64)
        P[:c] = A[start : start + c]
        parts.append(linalg.MatrixGF(field, P))
        start += c
    return parts


def piret_generator(parts: Sequence[linalg.MatrixGF], *, max_minors: int = DEFAULT_MAX_MINORS) -> PolyMatrix:
    """``G(D) = sum_t parts[t] D^t``, re-verified to be basic and reduced."""
    G = PolyMatrix(parts[0].field, np.stack([P.entries for P in parts]))
    if not is_basic(G, max_minors=max_minors) or not is_reduced(G):
        raise CertificationError("split construction produced a matrix that is not reduced basic")
    return G


def unit_memory_from_block(
    C: LinearCode,
    gamma0: int,
    *,
    row_order: Sequence[int] | None = None,
    max_codewords: int = DEFAULT_MAX_CODEWORDS,
    max_minors: int = DEFAULT_MAX_MINORS,
) -> ConvCode:
    """Unit-memory code ``(n, k - gamma0, gamma0; 1)`` from an ``[n, k]`` code.

    The first ``k - gamma0`` rows of the generator (canonical RREF order,
    or ``row_order`` if given) form ``A_0``; the last ``gamma0`` rows,
    followed by ``k - 2 gamma0`` zero rows, form ``A_1``.
    """
    k = C.k
    if gamma0 < 1:
        raise CodingError("gamma0 must be >= 1")
    if k < 2 * gamma0:
        raise CodingError(f"need k >= 2*gamma0 (k={k}, gamma0={gamma0})")
    order = list(range(k)) if row_order is None else [int(i) for i in row_order]
    if sorted(order) != list(range(k)):
        raise CodingError(f"row_order must be a permutation of 0..{k - 1}")
    Gm = C.generator[order]
    G = piret_generator(piret_split(linalg.MatrixGF(C.field, Gm), [k - gamma0, gamma0]), max_minors=max_minors)
    try:
        lb, exact = min_distance(C, max_codewords), True
    except GuardExceeded:
        lb, exact = C.distance_interval()[0], False
    meta = {
        "construction": "unit_memory",
        "gamma0": gamma0,
        "source": C.name or f"[{C.n},{C.k}]_{C.field.q}",
        "source_n": C.n,
        "source_k": C.k,
        "row_order": order,
        "df_lb_source": "exact" if exact else "interval",
    }
    return ConvCode(G, lb, None, meta)


# -- free distance ------------------------------------------------------------

@dataclass(frozen=True)
class FreeDistance:
    value: int
    witness_length: int
    witness: tuple[tuple[int, ...], ...]
    d_zero: int | None
    d_loop: int | None


def free_distance_search(
    V: ConvCode,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> FreeDistance:
    """Exact free distance of a code of memory <= 1, with a minimal witness.

    Rows of ``A_1`` that are nonzero carry state. Between consecutive states
    ``s -> s'`` the remaining ("free") input coordinates only affect the
    current output block, so the edge weight is the minimum weight of the
    coset ``s' A_0|M + s A_1|M + span(A_0|F)``. The answer is the smaller of
    the best zero-state path (a nonzero word of ``span(A_0|F)``) and the
    shortest path that leaves the zero state and returns to it.
    """
    if V.memory > 1:
        raise CodingError("exact free distance needs memory <= 1; use free_distance_truncated")
    f = V.field
    C = V.generator.coeffs
    A0 = C[0]
    A1 = C[1] if C.shape[0] > 1 else np.zeros_like(A0)
    kappa, n = A0.shape
    mem = [i for i in range(kappa) if A1[i].any()]
    free = [i for i in range(kappa) if not A1[i].any()]
    nstates = f.q ** len(mem)
    ncos = f.q ** len(free)
    if nstates > max_states:
        raise GuardExceeded("encoder states", nstates, max_states)
    if ncos > max_cosets:
        raise GuardExceeded("free-input cosets", ncos, max_cosets)

    S_free = linalg.span_array(f, A0[free])
    w_free = np.count_nonzero(S_free, axis=1)

    def block(mem_digits, free_index):
        u = [0] * kappa
        for i, a in zip(mem, mem_digits):
            u[i] = a
        for i, a in zip(free, linalg.message_digits(f, free_index, len(free))):
            u[i] = a
        return tuple(u)

    d_zero = None
    zero_witness = None
    if free:
        j = 1 + int(np.argmin(w_free[1:]))
        d_zero = int(w_free[j])
        zero_witness = (block([0] * len(mem), j),)
        if d_zero == 0:
            raise CertificationError("nonzero input with zero output: generator is not full rank")

    d_loop = None
    loop_witness = None
    if mem:
        P0 = linalg.span_array(f, A0[mem])
        P1 = linalg.span_array(f, A1[mem])
        W = np.empty((nstates, nstates), dtype=np.int64)
        ARG = np.empty((nstates, nstates), dtype=np.int64)
        batch = max(1, (1 << 22) // max(ncos * n, 1))
        for s in range(nstates):
            offsets = f.add_arr(P0, P1[s][None, :])
            for lo in range(0, nstates, batch):
                tot = f.add_arr(offsets[lo : lo + batch, None, :], S_free[None, :, :])
                wt = np.count_nonzero(tot, axis=2)
                W[s, lo : lo + batch] = wt.min(axis=1)
                ARG[s, lo : lo + batch] = wt.argmin(axis=1)

        # Dijkstra keyed on (weight, edges) so the witness is as short as possible
        INF = (math.inf, math.inf)
        dist = {s: INF for s in range(nstates)}
        parent: dict[int, int] = {}
        heap = []
        for s in range(1, nstates):
            key = (int(W[0, s]), 1)
            dist[s] = key
            parent[s] = 0
            heapq.heappush(heap, (key, s))
        target = None
        done = set()
        while heap:
            key, s = heapq.heappop(heap)
            if s in done or key != dist[s]:
                continue
            if s == 0:
                target = key
                break
            done.add(s)
            for t in range(nstates):
                if t in done:
                    continue
                cand = (key[0] + int(W[s, t]), key[1] + 1)
                if cand < dist[t]:
                    dist[t] = cand
                    parent[t] = s
                    heapq.heappush(heap, (cand, t))
        if target is None:
            raise CertificationError("no path returns to the zero state")
        d_loop = int(target[0])
        if d_loop == 0:
            raise CertificationError("zero-weight cycle: generator is catastrophic")
        path = [0]
        node = parent[0]
        while node != 0:
            path.append(node)
            node = parent[node]
        path.append(0)
        path.reverse()
        blocks = [block(linalg.message_digits(f, b, len(mem)), int(ARG[a, b])) for a, b in zip(path, path[1:])]
        # the tail output of the last nonzero block is emitted without further input
        while not any(blocks[-1]):
            blocks.pop()
        loop_witness = tuple(blocks)

    cands = [(d, len(w), w) for d, w in ((d_zero, zero_witness), (d_loop, loop_witness)) if d is not None]
    d, length, witness = min(cands, key=lambda c: (c[0], c[1]))
    return FreeDistance(d, length, witness, d_zero, d_loop)


def free_distance(V: ConvCode, **guards) -> int:
    return free_distance_search(V, **guards).value


def free_distance_truncated(V: ConvCode, L: int, guard: int = DEFAULT_MAX_TRUNCATED) -> int:
    """Minimum output weight over inputs of at most ``L`` blocks with ``u_0 != 0``.

    Brute force over all ``q**(k L)`` input sequences. For memory > 1 codes
    this is only an upper bound on the free distance.
    """
    if L < 1:
        raise CodingError("horizon L must be >= 1")
    f = V.field
    C = V.generator.coeffs
    m = C.shape[0] - 1
    kappa, n = V.k, V.n
    size = f.q ** (kappa * L)
    if size > guard:
        raise GuardExceeded("truncated input enumeration", size, guard)
    T = np.zeros((kappa * L, n * (L + m)), dtype=np.int64)
    for t in range(L):
        for i in range(m + 1):
            T[t * kappa : (t + 1) * kappa, (t + i) * n : (t + i + 1) * n] = C[i]
    first = linalg.span_array(f, T[:kappa])[1:]
    best = None
    for rest in linalg.iter_span(f, T[kappa:]):
        for v in first:
            w = np.count_nonzero(f.add_arr(rest, v[None, :]), axis=1)
            m_ = int(w.min())
            if best is None or m_ < best:
                best = m_
    if best == 0:
        raise CertificationError("nonzero input with zero output")
    return best

"""Block-code transformations: expansion, extension, puncturing, direct sum,
the (u | u+v) construction and the direct (Kronecker) product.

Each combinator returns a new :class:`~convcodes.blockcode.LinearCode` whose
``meta["transform"]`` holds a :class:`TransformRecord`. Distance claims are
intervals derived from the inputs' known intervals; they collapse to exact
values only when the inputs' distances are exact.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field

import numpy as np

from . import linalg
from .blockcode import LinearCode, ZeroCode, code_from_generator
from .errors import CodingError, FieldMismatch, GuardExceeded
from .galois import SubfieldEmbedding, same_field

KINDS = ("expand", "extend", "puncture", "direct_sum", "u_u_plus_v", "product", "dual")
DEFAULT_MAX_PRODUCT_LENGTH = 4096


@dataclass(frozen=True)
class TransformRecord:
    kind: str
    inputs: tuple[str, ...]
    n: int
    k: int
    d_lo: int
    d_hi: int
    params: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out["inputs"] = list(self.inputs)
        return out


def _label(C: LinearCode) -> str:
    return C.name or f"[{C.n},{C.k}]_{C.field.q}"


def _finish(field, G, kind, inputs, d_lo, d_hi, params=None) -> LinearCode:
    code = code_from_generator(field, G)
    k_expected = params.pop("_k") if params and "_k" in params else None
    if k_expected is not None and code.k != k_expected:
        raise CodingError(f"{kind}: dimension dropped from {k_expected} to {code.k}")
    d_hi = min(d_hi, code.n - code.k + 1)
    rec = TransformRecord(kind, tuple(_label(c) for c in inputs), code.n, code.k, d_lo, d_hi, params or {})
    name = f"{kind}({', '.join(rec.inputs)})"
    return LinearCode(field, code.generator, d_lo, d_hi, {"name": name, "transform": rec})


def _operand(C) -> LinearCode:
    if isinstance(C, ZeroCode):
        raise CodingError("the zero code is not a valid combinator operand")
    return C


def expand(C: LinearCode, emb: SubfieldEmbedding) -> LinearCode:
    """Replace every GF(q^m) symbol by its ``m`` basis coordinates over GF(q).

    The generator of the expanded code consists of the expansions of
    ``b * g`` for every row ``g`` and every basis element ``b``; these
    ``m k`` rows are independent, so the result is ``[m n, m k, >= d]``.
    """
    C = _operand(C)
    if C.field != emb.big:
        raise FieldMismatch(f"code over {C.field!r}, embedding big field {emb.big!r}")
    big = emb.big
    rows = [
        emb.expand_array(big.mul_arr(b, g))
        for g in C.generator
        for b in emb.basis
    ]
    lo, hi = C.distance_interval()
    return _finish(
        emb.small,
        np.array(rows),
        "expand",
        [C],
        lo,
        emb.m * hi,
        {"m": emb.m, "basis": list(emb.basis), "small": emb.small.to_json(), "_k": emb.m * C.k},
    )


def extend(C: LinearCode) -> LinearCode:
    """Append the coordinate ``c_{n+1} = -(c_1 + ... + c_n)``."""
    C = _operand(C)
    f = C.field
    G = C.generator
    parity = np.zeros(G.shape[0], dtype=np.int64)
    for j in range(G.shape[1]):
        parity = f.add_arr(parity, G[:, j])
    G2 = np.hstack([G, f.neg_arr(parity)[:, None]])
    lo, hi = C.distance_interval()
    return _finish(f, G2, "extend", [C], lo, hi + 1)


def puncture(C: LinearCode, i: int | None = None) -> LinearCode:
    """Delete coordinate ``i`` (1-based; defaults to the last coordinate).

    Rejected when the deletion would lower the dimension, i.e. when ``C``
    has a weight-1 codeword supported on ``i``.
    """
    C = _operand(C)
    if i is None:
        i = C.n
    if not 1 <= i <= C.n:
        raise CodingError(f"coordinate {i} out of range 1..{C.n}")
    if C.n == 1:
        raise CodingError("cannot puncture a length-1 code")
    G = np.delete(C.generator, i - 1, axis=1)
    if linalg.rank(C.field, G) < C.k:
        raise CodingError(f"puncturing coordinate {i} would drop the dimension (weight-1 codeword)")
    lo, hi = C.distance_interval()
    return _finish(C.field, G, "puncture", [C], max(lo - 1, 1), hi, {"coord": i})


def direct_sum(C1: LinearCode, C2: LinearCode) -> LinearCode:
    C1, C2 = _operand(C1), _operand(C2)
    f = same_field(C1.field, C2.field)
    G = np.zeros((C1.k + C2.k, C1.n + C2.n), dtype=np.int64)
    G[: C1.k, : C1.n] = C1.generator
    G[C1.k :, C1.n :] = C2.generator
    (lo1, hi1), (lo2, hi2) = C1.distance_interval(), C2.distance_interval()
    return _finish(f, G, "direct_sum", [C1, C2], min(lo1, lo2), min(hi1, hi2))


def u_u_plus_v(C1: LinearCode, C2: LinearCode) -> LinearCode:
    """``{(u, u + v) : u in C1, v in C2}`` for codes of equal length."""
    C1, C2 = _operand(C1), _operand(C2)
    f = same_field(C1.field, C2.field)
    if C1.n != C2.n:
        raise CodingError(f"(u|u+v) needs equal lengths, got {C1.n} and {C2.n}")
    top = np.hstack([C1.generator, C1.generator])
    bottom = np.hstack([np.zeros_like(C2.generator), C2.generator])
    (lo1, hi1), (lo2, hi2) = C1.distance_interval(), C2.distance_interval()
    return _finish(f, np.vstack([top, bottom]), "u_u_plus_v", [C1, C2], min(2 * lo1, lo2), min(2 * hi1, hi2))


def kron(field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product; entry ``(i, j)`` of ``A`` scales the block ``(i, j)``."""
    out = field.mul_arr(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def product(C1: LinearCode, C2: LinearCode, max_length: int = DEFAULT_MAX_PRODUCT_LENGTH) -> LinearCode:
    C1, C2 = _operand(C1), _operand(C2)
    f = same_field(C1.field, C2.field)
    if C1.n * C2.n > max_length:
        raise GuardExceeded("product length", C1.n * C2.n, max_length)
    (lo1, hi1), (lo2, hi2) = C1.distance_interval(), C2.distance_interval()
    return _finish(f, kron(f, C1.generator, C2.generator), "product", [C1, C2], lo1 * lo2, hi1 * hi2)

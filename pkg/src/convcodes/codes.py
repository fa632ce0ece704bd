"""Constructors for standard block-code families.

BCH and Reed-Solomon codes are built from their defining zeros in a
splitting field; cyclic codes from a generator polynomial dividing
``x^n - 1``. Distance bounds that follow from the construction (BCH bound,
MDS property, Reed-Muller distance) are attached as claims, and are
checked against brute force by the test suite rather than trusted.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import polys
from .blockcode import LinearCode, code_from_generator, dual
from .combinators import extend
from .errors import CodingError
from .galois import Field, embedding_new, field_new


def multiplicative_order(q: int, n: int) -> int:
    if np.gcd(q, n) != 1:
        raise CodingError(f"gcd(q={q}, n={n}) != 1")
    if n == 1:
        return 1
    t, x = 1, q % n
    while x != 1:
        x = x * q % n
        t += 1
    return t


def cyclotomic_coset(i: int, q: int, n: int) -> list[int]:
    out, x = [], i % n
    while x not in out:
        out.append(x)
        x = x * q % n
    return sorted(out)


def cyclic_code(field: Field, n: int, g, **kw) -> LinearCode:
    """Cyclic code of length ``n`` generated by the polynomial ``g`` (low-to-high)."""
    g = polys.trim(g)
    xn1 = polys.sub(field, polys.trim([0] * n + [1]), polys.ONE)
    if not g or polys.divmod_(field, xn1, g)[1]:
        raise CodingError("generator polynomial must divide x^n - 1")
    k = n - polys.deg(g)
    if k < 1:
        raise CodingError("generator polynomial gives the zero code")
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        rows[i, i : i + len(g)] = g
    kw.setdefault("d_hi", polys.weight(g))
    return code_from_generator(field, rows, **kw)


def _root_field(field: Field, n: int):
    """Field containing a primitive ``n``-th root of unity, with restriction map."""
    t = multiplicative_order(field.q, n)
    if t == 1:
        big, restrict = field, (lambda x: x)
    else:
        if field.q**t > 1 << 16:
            raise CodingError(f"splitting field GF({field.q}^{t}) for n={n} is too large")
        emb = embedding_new(field, t)
        big, restrict = emb.big, emb.restrict
    beta = big.pow(big.generator, (big.q - 1) // n)
    return big, restrict, beta


def generator_from_zeros(field: Field, n: int, zeros) -> tuple[int, ...]:
    """``prod (x - beta^z)`` over ``z`` in ``zeros`` (a union of cyclotomic cosets)."""
    big, restrict, beta = _root_field(field, n)
    g = polys.ONE
    for z in sorted(zeros):
        g = polys.mul(big, g, (big.neg(big.pow(beta, z)), 1))
    return tuple(restrict(c) for c in g)


def bch_code(field: Field, n: int, delta: int, b: int = 1) -> LinearCode:
    """BCH code of length ``n`` and designed distance ``delta`` over ``field``."""
    if delta < 2:
        raise CodingError("designed distance must be >= 2")
    zeros = set()
    for i in range(b, b + delta - 1):
        zeros.update(cyclotomic_coset(i, field.q, n))
    g = generator_from_zeros(field, n, zeros)
    return cyclic_code(
        field,
        n,
        g,
        d_lo=delta,
        meta={"name": f"BCH({n},{delta})_{field.q}", "designed_distance": delta},
    )


def reed_solomon(field: Field, n: int, k: int) -> LinearCode:
    """Evaluation code of polynomials of degree < ``k`` at ``n`` distinct points.

    When ``n`` divides ``q - 1`` the points are the ``n``-th roots of unity
    (a cyclic code); otherwise the first ``n`` powers of the primitive
    element, plus 0 when ``n = q``.
    """
    q = field.q
    if not 1 <= k <= n <= q:
        raise CodingError(f"need 1 <= k <= n <= q, got n={n} k={k} q={q}")
    if (q - 1) % n == 0:
        w = field.pow(field.generator, (q - 1) // n)
        pts = [field.pow(w, i) for i in range(n)]
    elif n < q:
        pts = [field.pow(field.generator, i) for i in range(n)]
    else:
        pts = [0] + [field.pow(field.generator, i) for i in range(q - 1)]
    rows = [[field.pow(x, i) for x in pts] for i in range(k)]
    d = n - k + 1
    return code_from_generator(field, rows, d_lo=d, d_hi=d, meta={"name": f"RS({n},{k})_{q}"})


def reed_muller(r: int, m: int) -> LinearCode:
    """Binary Reed-Muller code RM(r, m): ``[2^m, sum C(m,i), 2^(m-r)]``."""
    if not 0 <= r <= m:
        raise CodingError("need 0 <= r <= m")
    F = field_new(2)
    points = list(itertools.product((0, 1), repeat=m))
    rows = []
    for deg in range(r + 1):
        for S in itertools.combinations(range(m), deg):
            rows.append([int(all(x[i] for i in S)) for x in points])
    d = 2 ** (m - r)
    return code_from_generator(F, rows, d_lo=d, d_hi=d, meta={"name": f"RM({r},{m})"})


def repetition(field: Field, n: int) -> LinearCode:
    return code_from_generator(field, [[1] * n], d_lo=n, d_hi=n, meta={"name": f"rep{n}"})


def hamming(m: int, field: Field | None = None) -> LinearCode:
    """Hamming code of redundancy ``m``; cyclic (BCH, delta = 3) for binary."""
    field = field or field_new(2)
    if field.q == 2:
        C = bch_code(field, 2**m - 1, 3)
        return C.with_meta(name=f"Hamming({2**m - 1})")
    cols = [
        v
        for v in itertools.product(range(field.q), repeat=m)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]
    H = np.array(cols, dtype=np.int64).T
    C = dual(code_from_generator(field, H))
    return C.with_meta(name=f"Hamming({len(cols)})_{field.q}")


def _golay23():
    F = field_new(2)
    return cyclic_code(F, 23, [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1], d_lo=7, meta={"name": "Golay23"})


def _golay11():
    F = field_new(3)
    # x^5 + x^4 - x^3 + x^2 - 1
    return cyclic_code(F, 11, [2, 0, 1, 2, 1, 1], d_lo=5, meta={"name": "Golay11_3"})


def _ext_hamming8():
    return extend(hamming(3)).with_meta(name="ExtHamming8")


def _golay24():
    return extend(_golay23()).with_meta(name="Golay24")


CATALOG = {
    "hamming7": lambda: hamming(3),
    "hamming15": lambda: hamming(4),
    "hamming31": lambda: hamming(5),
    "hamming63": lambda: hamming(6),
    "golay23": _golay23,
    "golay11": _golay11,
    "golay24": _golay24,
    "ext_hamming8": _ext_hamming8,
    "simplex7": lambda: dual(hamming(3)).with_meta(name="Simplex7"),
    "rep3": lambda: repetition(field_new(2), 3),
    "rep5": lambda: repetition(field_new(2), 5),
}


def catalog(name: str) -> LinearCode:
    try:
        return CATALOG[name]()
    except KeyError:
        raise CodingError(f"unknown catalog code {name!r}; known: {sorted(CATALOG)}") from None

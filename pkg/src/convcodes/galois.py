"""Exact arithmetic in GF(p^e) and subfield coordinate expansion.

An element of GF(p^e) is encoded as the integer ``sum_i c_i * p**i`` where
``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` is its residue modulo the field's
fixed irreducible modulus. Multiplication goes through log/antilog tables;
fields up to 256 elements also keep full addition/multiplication tables for
vectorised work.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from ._moduli import MODULI
from .errors import CodingError, FieldMismatch

MAX_ORDER = 1 << 16
_TABLE_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**e``; raises if ``q`` is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1 or not is_prime(p):
                break
            return p, e
    raise CodingError("field order must be a prime power")


# -- polynomials over GF(p), coefficient lists low-to-high -----------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for j, fj in enumerate(f):
            a[shift + j] = (a[shift + j] - c * fj) % p
        _ptrim(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    return _pmod(res, f, p)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    e = len(f) - 1
    if e == 1:
        return True
    # no roots in GF(p) settles degrees 2 and 3
    for a in range(p):
        if sum(c * pow(a, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    if e < 4:
        return True
    # Rabin: gcd(f, x^(p^i) - x) = 1 for every i <= e/2
    x = [0, 1]
    power = x
    for _ in range(1, e // 2 + 1):
        power = _ppow(power, p, f, p)
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _ptrim(diff), p)) > 1:
            return False
    return True


def _ppow(a, k, f, p):
    result = [1]
    base = a
    while k:
        if k & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        k >>= 1
    return result


class Field:
    """The finite field GF(p^e) under a fixed modulus.

    Construct through :func:`field_new`, which caches instances so that equal
    fields are also identical objects.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        q = self.q
        self._digit_pows = [p**i for i in range(e)]
        digits = np.zeros((q, e), dtype=np.int64)
        vals = np.arange(q, dtype=np.int64)
        for i in range(e):
            digits[:, i] = (vals // p**i) % p
        self.digits = digits
        self.digits.setflags(write=False)

        self.generator = self._find_generator()
        exp = [0] * (2 * (q - 1) + 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, self.generator)
        for i in range(q - 1, len(exp)):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log
        self._exp_arr = np.array(exp, dtype=np.int64)
        self._log_arr = np.array(log, dtype=np.int64)
        self._neg = [self._raw_neg(a) for a in range(q)]
        self._neg_arr = np.array(self._neg, dtype=np.int64)
        self._inv = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]
        self._inv_arr = np.array(self._inv, dtype=np.int64)
        self._add_tab = self._mul_tab = None
        if e > 1 and q <= _TABLE_ORDER:
            self._add_tab = self._raw_add_arr(vals[:, None], vals[None, :])
            self._mul_tab = self.mul_arr(vals[:, None], vals[None, :])

    # construction helpers --------------------------------------------------

    def _raw_add_arr(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._digit_pows:
            out += ((a // pw + b // pw) % self.p) * pw
        return out

    def _raw_neg(self, a: int) -> int:
        return sum(((self.p - (a // pw) % self.p) % self.p) * pw for pw in self._digit_pows)

    def _to_poly(self, a: int) -> list[int]:
        return [(a // pw) % self.p for pw in self._digit_pows]

    def _from_poly(self, c: Sequence[int]) -> int:
        return sum(int(x) * pw for x, pw in zip(c, self._digit_pows))

    def _raw_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if self.p == 2:
            mod = self._from_poly(self.modulus) + (1 << self.e)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.e:
                    a ^= mod
            return r
        return self._from_poly(_pmulmod(self._to_poly(a), self._to_poly(b), self.modulus, self.p))

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        factors = [r for r in range(2, q) if (q - 1) % r == 0 and is_prime(r)]
        cands = range(2, q) if self.e == 1 else [self.p] + [g for g in range(2, q) if g != self.p]
        for g in cands:
            if all(self._raw_pow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise CodingError("modulus is not irreducible")  # pragma: no cover

    def _raw_pow(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            k >>= 1
        return result

    # scalar arithmetic -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_tab is not None:
            return int(self._add_tab[a, b])
        return int(self._raw_add_arr(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def element(self, coeffs: Sequence[int]) -> int:
        """Encode the residue ``c_0 + c_1 x + ...`` (low-to-high, reduced mod p)."""
        return self._from_poly(_pmod([int(c) % self.p for c in coeffs], self.modulus, self.p))

    # vectorised arithmetic -------------------------------------------------

    def add_arr(self, a, b) -> np.ndarray:
        if self.e == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_tab is not None:
            return self._add_tab[a, b]
        return self._raw_add_arr(np.asarray(a), np.asarray(b))

    def neg_arr(self, a) -> np.ndarray:
        return self._neg_arr[a]

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self._neg_arr[b])

    def mul_arr(self, a, b) -> np.ndarray:
        if self.e == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        if self._mul_tab is not None:
            return self._mul_tab[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        prod = self._exp_arr[self._log_arr[a] + self._log_arr[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv_arr[a]

    # misc ------------------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def check(self, a) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise CodingError(f"{a!r} is not an element of {self!r}")
        return int(a)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"


def field_new(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Return GF(p^e), with the shipped default modulus unless one is given.

    ``modulus`` is a monic coefficient list, low-to-high, of degree ``e``.
    """
    if not is_prime(p):
        raise CodingError(f"characteristic {p} is not prime")
    if e < 1:
        raise CodingError("extension degree must be >= 1")
    if p**e > MAX_ORDER:
        raise CodingError(f"GF({p}^{e}) exceeds the {MAX_ORDER}-element limit")
    if modulus is None:
        mod = (0, 1) if e == 1 else MODULI[(p, e)]
    else:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != e + 1:
            raise CodingError(f"modulus must have degree {e}")
        if any(not 0 <= c < p for c in mod):
            raise CodingError(f"modulus coefficients must lie in [0, {p})")
        if mod[-1] != 1:
            raise CodingError("modulus must be monic")
        if not _is_irreducible(mod, p):
            raise CodingError(f"modulus {list(mod)} is reducible over GF({p})")
    return _cached_field(p, e, mod)


@lru_cache(maxsize=None)
def _cached_field(p: int, e: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, e, modulus)


def field_from_order(q: int) -> Field:
    return field_new(*prime_power(q))


def field_from_json(obj: dict) -> Field:
    try:
        return field_new(int(obj["p"]), int(obj.get("e", 1)), obj.get("modulus"))
    except KeyError as exc:
        raise CodingError(f"field object missing key {exc}") from None


def same_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"{first!r} vs {f!r}")
    return first


# -- subfield embeddings --------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubfieldEmbedding:
    """GF(q) inside GF(q^m) together with a GF(q)-basis of the big field.

    ``image[a]`` is the big-field encoding of small-field element ``a``;
    ``table[x]`` holds the basis coordinates of big-field element ``x``.
    """

    small: Field
    big: Field
    m: int
    basis: tuple[int, ...]
    image: np.ndarray
    table: np.ndarray

    def embed(self, a: int) -> int:
        return int(self.image[a])

    def restrict(self, x: int) -> int:
        """Small-field preimage of a big-field element lying in the subfield."""
        hits = np.nonzero(self.image == x)[0]
        if hits.size == 0:
            raise CodingError(f"{x} does not lie in the subfield {self.small!r}")
        return int(hits[0])

    def expand(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.table[self.big.check(x)])

    def expand_array(self, X) -> np.ndarray:
        """Coordinate-wise expansion; trailing axis grows by a factor of ``m``."""
        X = np.asarray(X)
        out = self.table[X]
        return out.reshape(X.shape[:-1] + (X.shape[-1] * self.m,))

    def combine(self, coords: Sequence[int]) -> int:
        if len(coords) != self.m:
            raise CodingError(f"expected {self.m} coordinates")
        big = self.big
        x = 0
        for c, b in zip(coords, self.basis):
            x = big.add(x, big.mul(self.embed(self.small.check(c)), b))
        return x

    def to_json(self) -> dict:
        return {"small": self.small.to_json(), "m": self.m, "basis": list(self.basis)}


def _find_root(poly: Sequence[int], field: Field) -> int:
    for x in range(field.q):
        acc = 0
        for c in reversed(poly):
            acc = field.add(field.mul(acc, x), c)
        if acc == 0:
            return x
    raise CodingError("no root of the subfield modulus in the extension")  # pragma: no cover


def embedding_new(small: Field, m: int, basis: Sequence[int] | None = None) -> SubfieldEmbedding:
    """Build GF(q^m) over ``small`` = GF(q).

    The big field is GF(p^(e m)) with its default modulus. The default basis
    is ``(1, b, ..., b^(m-1))`` with ``b`` the class of ``x`` in the big field.
    """
    if m < 2:
        raise CodingError("extension degree m must be >= 2")
    p, e = small.p, small.e
    big = field_new(p, e * m)
    if e == 1:
        image = np.arange(p, dtype=np.int64)
    else:
        rho = _find_root(small.modulus, big)
        image = np.array([_horner_embed(small._to_poly(a), rho, big) for a in range(small.q)], dtype=np.int64)
    if basis is None:
        beta = p  # the class of x
        basis = [big.pow(beta, i) for i in range(m)]
    basis = tuple(big.check(b) for b in basis)
    if len(basis) != m:
        raise CodingError(f"basis must have {m} elements")

    # GF(p)-coordinates of rho^j * b_i, row index i*e + j
    B = np.array(
        [big.digits[big.mul(int(image[p**j]), b)] for b in basis for j in range(e)],
        dtype=np.int64,
    )
    prime = field_new(p)
    if linalg.rank(prime, B) < e * m:
        raise CodingError("basis elements are linearly dependent over the subfield")
    Binv = linalg.inverse(prime, B)
    coords = linalg.matmul(prime, big.digits, Binv)  # q^m x (e m)
    pows = np.array([p**j for j in range(e)], dtype=np.int64)
    table = (coords.reshape(big.q, m, e) * pows).sum(axis=2)
    image.setflags(write=False)
    table.setflags(write=False)
    return SubfieldEmbedding(small, big, m, basis, image, table)


def _horner_embed(coeffs, rho, big):
    acc = 0
    for c in reversed(coeffs):
        acc = big.add(big.mul(acc, rho), c)
    return acc


def expand_element(x: int, emb: SubfieldEmbedding) -> tuple[int, ...]:
    return emb.expand(x)

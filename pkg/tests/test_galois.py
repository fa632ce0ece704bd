import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from convcodes._moduli import MODULI
from convcodes.errors import CodingError, FieldMismatch
from convcodes.galois import (
    embedding_new,
    field_from_json,
    field_from_order,
    field_new,
    prime_power,
    same_field,
)
from oracles import RefField, ref_field

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5)]


@pytest.mark.parametrize("p,e", SMALL)
def test_tables_match_reference_arithmetic(p, e):
    F = field_new(p, e)
    R = ref_field(F)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.add(a, b) == R.add(a, b)
        assert F.mul(a, b) == R.mul(a, b)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.inv(a) == R.inv(a)


@pytest.mark.parametrize("p,e", SMALL)
def test_array_ops_agree_with_scalar_ops(p, e):
    F = field_new(p, e)
    a = np.arange(F.q)[:, None]
    b = np.arange(F.q)[None, :]
    assert F.add_arr(a, b).tolist() == [[F.add(x, y) for y in range(F.q)] for x in range(F.q)]
    assert F.mul_arr(a, b).tolist() == [[F.mul(x, y) for y in range(F.q)] for x in range(F.q)]
    assert F.sub_arr(a, b).tolist() == [[F.sub(x, y) for y in range(F.q)] for x in range(F.q)]
    assert F.neg_arr(np.arange(F.q)).tolist() == [F.neg(x) for x in range(F.q)]


@pytest.mark.parametrize("q", [256, 729, 1024, 3125, 4096, 65536])
def test_large_fields_sampled_against_reference(q):
    F = field_from_order(q)
    R = ref_field(F)
    rng = np.random.default_rng(q)
    for a, b in rng.integers(0, q, size=(200, 2)):
        assert F.mul(int(a), int(b)) == R.mul(int(a), int(b))
        assert F.add(int(a), int(b)) == R.add(int(a), int(b))


def test_frozen_products():
    # computed with the reference arithmetic and checked by hand
    gf4 = field_new(2, 2)
    assert gf4.mul(2, 2) == 3 and gf4.inv(2) == 3
    gf8 = field_new(2, 3)
    assert gf8.modulus == (1, 1, 0, 1)
    assert gf8.mul(3, 5) == 4 and gf8.inv(2) == 5
    gf9 = field_new(3, 2)
    assert gf9.mul(3, 5) == 4 and gf9.inv(2) == 2


@pytest.mark.parametrize("pe", sorted(k for k in MODULI if k[0] ** k[1] <= 4096))
def test_shipped_moduli_are_primitive(pe):
    p, e = pe
    F = field_new(p, e)
    x = p  # the class of x
    seen = {1}
    y = 1
    for _ in range(F.q - 2):
        y = F.mul(y, x)
        assert y not in seen
        seen.add(y)
    assert F.mul(y, x) == 1


def test_field_validation():
    with pytest.raises(CodingError):
        field_new(4)
    with pytest.raises(CodingError):
        field_new(2, 17)
    with pytest.raises(CodingError, match="reducible"):
        field_new(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(CodingError, match="monic"):
        field_new(3, 2, (1, 0, 2))
    with pytest.raises(CodingError):
        field_new(2, 2, (1, 1))
    with pytest.raises(CodingError):
        field_from_order(6)
    with pytest.raises(ZeroDivisionError):
        field_new(5).inv(0)


def test_custom_modulus_gives_distinct_field():
    F = field_new(2, 3, (1, 0, 1, 1))
    assert F != field_new(2, 3)
    R = RefField(2, 3, (1, 0, 1, 1))
    for a, b in itertools.product(range(8), repeat=2):
        assert F.mul(a, b) == R.mul(a, b)
    with pytest.raises(FieldMismatch):
        same_field(F, field_new(2, 3))


def test_prime_power_and_json_round_trip():
    assert prime_power(81) == (3, 4)
    assert prime_power(2) == (2, 1)
    for q in (2, 9, 16, 243):
        F = field_from_order(q)
        assert field_from_json(F.to_json()) is F


@given(st.sampled_from(SMALL), st.data())
def test_field_axioms(pe, data):
    F = field_new(*pe)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.pow(a, F.q) == a
    if b:
        assert F.mul(F.div(a, b), b) == a


# -- subfield embeddings -----------------------------------------------------

EXTENSIONS = [((2, 1), 2), ((2, 1), 3), ((3, 1), 2), ((2, 2), 2), ((2, 2), 3), ((2, 3), 2), ((3, 1), 3)]


@pytest.mark.parametrize("small,m", EXTENSIONS)
def test_embedding_is_a_ring_homomorphism(small, m):
    S = field_new(*small)
    emb = embedding_new(S, m)
    B = emb.big
    for a, b in itertools.product(range(S.q), repeat=2):
        assert emb.embed(S.add(a, b)) == B.add(emb.embed(a), emb.embed(b))
        assert emb.embed(S.mul(a, b)) == B.mul(emb.embed(a), emb.embed(b))
        assert emb.restrict(emb.embed(a)) == a


@pytest.mark.parametrize("small,m", EXTENSIONS)
def test_expand_is_linear_bijection(small, m):
    S = field_new(*small)
    emb = embedding_new(S, m)
    B = emb.big
    seen = set()
    for x in range(B.q):
        coords = emb.expand(x)
        assert emb.combine(coords) == x
        seen.add(coords)
    assert len(seen) == B.q
    rng = np.random.default_rng(0)
    for x, y, a in zip(*(rng.integers(0, B.q, 50), rng.integers(0, B.q, 50), rng.integers(0, S.q, 50))):
        lhs = emb.expand(B.add(int(x), B.mul(emb.embed(int(a)), int(y))))
        rhs = tuple(S.add(u, S.mul(int(a), v)) for u, v in zip(emb.expand(int(x)), emb.expand(int(y))))
        assert lhs == rhs


def test_frozen_gf16_over_gf4_expansion():
    emb = embedding_new(field_new(2, 2), 2)
    assert emb.image.tolist() == [0, 1, 6, 7]
    assert emb.basis == (1, 2)
    assert emb.expand(13) == (1, 2)
    # alpha * beta + 1 with alpha = image(2), beta = x
    assert emb.expand(emb.big.add(emb.big.mul(6, 2), 1)) == (1, 2)


def test_alternative_basis_and_dependent_basis():
    emb = embedding_new(field_new(2), 2, basis=(2, 3))  # normal basis of GF(4)/GF(2)
    assert {emb.expand(x) for x in range(4)} == set(itertools.product(range(2), repeat=2))
    with pytest.raises(CodingError, match="dependent"):
        embedding_new(field_new(2), 2, basis=(1, 1))
    with pytest.raises(CodingError):
        embedding_new(field_new(2), 1)


def test_expand_array_shape():
    emb = embedding_new(field_new(2, 2), 2)
    X = np.array([[13, 0, 1], [2, 3, 15]])
    out = emb.expand_array(X)
    assert out.shape == (2, 6)
    assert tuple(out[0, :2]) == emb.expand(13)

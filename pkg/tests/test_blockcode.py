import numpy as np
import pytest
from hypothesis import given, strategies as st

from convcodes import codes, linalg
from convcodes.blockcode import (
    ZeroCode,
    code_from_generator,
    dual,
    full_code,
    is_cyclic,
    is_self_dual,
    is_self_orthogonal,
    min_distance,
    same_code,
    transitivity,
    try_min_distance,
    weight_distribution,
)
from convcodes.errors import CertificationError, CodingError, GuardExceeded
from convcodes.galois import field_new
from oracles import ref_codeword_set, ref_field, ref_min_distance, ref_rank
from strategies import codes as code_st
from strategies import fields


@given(fields(), st.data())
def test_rank_matches_reference(F, data):
    r, c = data.draw(st.integers(1, 5)), data.draw(st.integers(1, 6))
    A = data.draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    assert linalg.rank(F, A) == ref_rank(ref_field(F), A)


@given(fields(), st.data())
def test_rref_is_canonical_and_null_space_is_orthogonal(F, data):
    r, c = data.draw(st.integers(1, 4)), data.draw(st.integers(2, 6))
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=c, max_size=c), min_size=r, max_size=r)))
    R, piv = linalg.rref(F, A)
    assert R.shape[0] == len(piv) == ref_rank(ref_field(F), A)
    for i, pc in enumerate(piv):
        assert R[i, pc] == 1 and np.count_nonzero(R[:, pc]) == 1
    N = linalg.null_space(F, A)
    assert N.shape == (c - len(piv), c)
    assert not np.any(linalg.matmul(F, A, N.T))
    assert linalg.rank(F, N) == N.shape[0] if N.shape[0] else True


def test_inverse():
    F = field_new(2, 2)
    rng = np.random.default_rng(1)
    done = 0
    while done < 10:
        A = rng.integers(0, 4, size=(3, 3))
        if linalg.rank(F, A) < 3:
            with pytest.raises(CodingError):
                linalg.inverse(F, A)
            continue
        assert (linalg.matmul(F, A, linalg.inverse(F, A)) == np.eye(3, dtype=int)).all()
        done += 1


def test_span_array_indexing():
    F = field_new(3)
    rows = np.array([[1, 0, 2], [0, 1, 1]])
    S = linalg.span_array(F, rows)
    assert S.shape == (9, 3)
    for idx in range(9):
        a = linalg.message_digits(F, idx, 2)
        expect = [(a[0] * x + a[1] * y) % 3 for x, y in zip(*rows)]
        assert S[idx].tolist() == expect


@given(code_st())
def test_min_distance_matches_brute_force(C):
    R = ref_field(C.field)
    assert min_distance(C) == ref_min_distance(R, C.generator.tolist())


@given(code_st())
def test_rref_generator_spans_same_space(C):
    R = ref_field(C.field)
    words = ref_codeword_set(R, C.generator.tolist())
    assert len(words) == C.field.q**C.k
    assert all(C.contains(w) for w in words)
    assert sum(weight_distribution(C)) == C.field.q**C.k


@given(code_st())
def test_dual_properties(C):
    D = dual(C)
    assert D.k == C.n - C.k
    if D.k:
        assert not np.any(linalg.matmul(C.field, C.generator, D.generator.T))
        assert same_code(dual(D), C)
    else:
        assert isinstance(D, ZeroCode)
        assert same_code(dual(D), C)


def test_zero_and_full_code_sentinels():
    F = field_new(2)
    with pytest.raises(CodingError):
        code_from_generator(F, [[0, 0, 0]])
    Z = ZeroCode(F, 3)
    with pytest.raises(CodingError):
        min_distance(Z)
    U = full_code(F, 3)
    assert U.k == 3 and min_distance(U) == 1
    assert isinstance(dual(U), ZeroCode)


def test_guard_and_interval_check():
    C = codes.hamming(4)
    with pytest.raises(GuardExceeded):
        min_distance(C, guard=100)
    assert try_min_distance(C, guard=100) is None
    bogus = code_from_generator(field_new(2), codes.hamming(3).generator, d_lo=4)
    with pytest.raises(CertificationError):
        min_distance(bogus)


def test_entries_validated():
    with pytest.raises(CodingError):
        code_from_generator(field_new(3), [[0, 3, 1]])


# -- standard codes, values known in the literature and re-checked here --------

FROZEN_WEIGHTS = {
    "hamming7": [1, 0, 0, 7, 7, 0, 0, 1],
    "ext_hamming8": [1, 0, 0, 0, 14, 0, 0, 0, 1],
    "simplex7": [1, 0, 0, 0, 7, 0, 0, 0],
    "golay23": [1] + [0] * 6 + [253, 506, 0, 0, 1288, 1288, 0, 0, 506, 253] + [0] * 6 + [1],
    "golay24": [1] + [0] * 7 + [759, 0, 0, 0, 2576, 0, 0, 0, 759] + [0] * 7 + [1],
    "golay11": [1, 0, 0, 0, 0, 132, 132, 0, 330, 110, 0, 24],
}


@pytest.mark.parametrize("name", sorted(FROZEN_WEIGHTS))
def test_catalog_weight_distributions(name):
    assert weight_distribution(codes.catalog(name)) == FROZEN_WEIGHTS[name]


@pytest.mark.parametrize(
    "name,n,k,d,cyclic,self_dual",
    [
        ("hamming7", 7, 4, 3, True, False),
        ("hamming15", 15, 11, 3, True, False),
        ("hamming31", 31, 26, 3, True, False),
        ("golay23", 23, 12, 7, True, False),
        ("golay11", 11, 6, 5, True, False),
        ("golay24", 24, 12, 8, False, True),
        ("ext_hamming8", 8, 4, 4, False, True),
        ("simplex7", 7, 3, 4, True, False),
        ("rep3", 3, 1, 3, True, False),
        ("rep5", 5, 1, 5, True, False),
    ],
)
def test_catalog_parameters(name, n, k, d, cyclic, self_dual):
    C = codes.catalog(name)
    assert (C.n, C.k) == (n, k)
    if C.field.q**k <= 1 << 20:
        assert min_distance(C) == d
    else:
        assert C.distance_interval() == (d, d)
    assert is_cyclic(C) is cyclic
    assert is_self_dual(C) is self_dual
    assert transitivity(C) == ("certified" if cyclic else "unknown")


def test_hamming63_interval_without_enumeration():
    C = codes.catalog("hamming63")
    assert (C.n, C.k) == (63, 57)
    assert C.distance_interval() == (3, 3)  # BCH bound meets the weight-3 generator row
    with pytest.raises(CodingError):
        codes.catalog("nope")


def test_self_orthogonal_not_self_dual():
    C = dual(codes.hamming(4))  # simplex [15, 4, 8]
    assert is_self_orthogonal(C) and not is_self_dual(C)


@pytest.mark.parametrize("q,n,k", [(8, 7, 3), (8, 8, 4), (9, 8, 2), (16, 15, 5), (16, 4, 2), (5, 5, 3), (7, 3, 2)])
def test_reed_solomon_is_mds(q, n, k):
    from convcodes.galois import field_from_order

    C = codes.reed_solomon(field_from_order(q), n, k)
    assert (C.n, C.k) == (n, k)
    assert min_distance(C) == n - k + 1
    if (q - 1) % n == 0:
        assert is_cyclic(C)


@pytest.mark.parametrize("q,n,delta,k,d", [(2, 15, 5, 7, 5), (2, 31, 5, 21, 5), (2, 15, 7, 5, 7), (3, 13, 4, 7, 4), (4, 15, 3, 11, 3), (4, 17, 3, 9, 5)])
def test_bch_parameters(q, n, delta, k, d):
    from convcodes.galois import field_from_order

    C = codes.bch_code(field_from_order(q), n, delta)
    assert C.k == k
    assert is_cyclic(C)
    assert min_distance(C) == d >= delta


@pytest.mark.parametrize("r,m,k,d", [(1, 3, 4, 4), (1, 4, 5, 8), (2, 4, 11, 4), (0, 3, 1, 8), (3, 3, 8, 1)])
def test_reed_muller(r, m, k, d):
    C = codes.reed_muller(r, m)
    assert (C.n, C.k) == (2**m, k)
    assert min_distance(C) == d


def test_nonbinary_hamming():
    C = codes.hamming(2, field_new(3))
    assert (C.n, C.k) == (4, 2)
    assert min_distance(C) == 3


def test_cyclic_code_validation():
    F = field_new(2)
    assert codes.cyclic_code(F, 7, [1, 1]).k == 6
    with pytest.raises(CodingError):
        codes.cyclic_code(F, 7, [1, 0, 1])  # (x + 1)^2 does not divide x^7 - 1
    with pytest.raises(CodingError):
        codes.cyclic_code(F, 3, [1, 1, 1, 1])


def test_binary_repetition_2_is_self_dual():
    assert is_self_dual(codes.repetition(field_new(2), 2))
    assert not is_self_dual(codes.repetition(field_new(3), 2))  # 1 + 1 != 0 in GF(3)

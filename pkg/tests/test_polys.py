import numpy as np
import pytest
from hypothesis import given, strategies as st

from convcodes import polys
from convcodes.errors import CodingError
from convcodes.galois import field_new
from convcodes.polys import PolyMatrix
from oracles import coeff_stack_to_entries, laplace_det, pgcd, pmul, ref_field
from strategies import fields


def poly_st(F, max_deg=4):
    return st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1).map(polys.trim)


@given(fields(), st.data())
def test_division_identity(F, data):
    a = data.draw(poly_st(F, 6))
    b = data.draw(poly_st(F, 3))
    if not b:
        with pytest.raises(ZeroDivisionError):
            polys.divmod_(F, a, b)
        return
    q, r = polys.divmod_(F, a, b)
    assert polys.deg(r) < polys.deg(b)
    assert polys.add(F, polys.mul(F, q, b), r) == a


@given(fields(), st.data())
def test_gcd_matches_reference(F, data):
    a, b = data.draw(poly_st(F)), data.draw(poly_st(F))
    R = ref_field(F)
    assert list(polys.gcd(F, a, b)) == pgcd(R, list(a), list(b))
    assert list(polys.mul(F, a, b)) == pmul(R, list(a), list(b))


@given(fields(), st.integers(1, 4), st.data())
def test_bareiss_matches_laplace(F, n, data):
    M = [[data.draw(poly_st(F, 2)) for _ in range(n)] for _ in range(n)]
    assert list(polys.det(F, M)) == laplace_det(ref_field(F), [[list(e) for e in row] for row in M])


@given(fields(), st.data())
def test_smith_invariants_multiply_to_minor_gcds(F, data):
    k = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(k, 4))
    M = [[data.draw(poly_st(F, 2)) for _ in range(n)] for _ in range(k)]
    inv = polys.smith_invariants(F, M)
    for a, b in zip(inv, inv[1:]):
        assert not polys.divmod_(F, b, a)[1]
    G = PolyMatrix.from_entries(F, M)
    g = polys.ZERO
    for _, m in G.minors():
        g = polys.gcd(F, g, m)
    if len(inv) == k:
        prod = polys.ONE
        for d in inv:
            prod = polys.mul(F, prod, d)
        assert prod == g
    else:
        assert g == polys.ZERO


def test_frozen_smith_form():
    F = field_new(2)
    # [[1+D, 0], [0, 1+D]] -> invariants 1+D, 1+D
    M = [[(1, 1), ()], [(), (1, 1)]]
    assert polys.smith_invariants(F, M) == [(1, 1), (1, 1)]
    assert polys.smith_invariants(F, [[(1, 1), (1,)]]) == [(1,)]
    assert polys.det(F, [[(0, 1), (1,)], [(1,), (1, 1)]]) == (1, 1, 1)


def test_poly_matrix_basics():
    F = field_new(3)
    G = PolyMatrix.from_entries(F, [[(1, 2), (0, 0, 1)], [(2,), (1,)]])
    assert G.shape == (2, 2)
    assert G.memory == 2
    assert G.row_degrees() == [2, 0]
    assert G.external_degree == 2
    assert G.leading_row_matrix().tolist() == [[0, 1], [2, 1]]
    assert G.entry(0, 0) == (1, 2)
    assert G.at(1).tolist() == [[0, 1], [2, 1]]
    assert PolyMatrix(F, np.array(G.to_json())) == G
    with pytest.raises(CodingError):
        PolyMatrix(F, np.zeros((2, 2)))
    with pytest.raises(CodingError):
        PolyMatrix(F, np.full((1, 1, 1), 3))
    # trailing zero coefficients are dropped
    assert PolyMatrix(F, np.zeros((3, 1, 2), dtype=int)).memory == 0


def test_entries_round_trip():
    rng = np.random.default_rng(3)
    F = field_new(2, 2)
    C = rng.integers(0, 4, size=(3, 2, 3))
    C[-1, 0, 0] = 1
    G = PolyMatrix(F, C)
    assert [[list(e) for e in row] for row in G.entries()] == coeff_stack_to_entries(C.tolist())

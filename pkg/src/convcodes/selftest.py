"""Quick seeded invariant checks behind ``convcodes selftest``."""

from __future__ import annotations

import numpy as np

from . import linalg
from .blockcode import code_from_generator, dual, min_distance, same_code
from .convolutional import (
    free_distance_search,
    free_distance_truncated,
    is_basic,
    is_reduced,
    unit_memory_from_block,
)
from .errors import CodingError
from .galois import field_new
from .polys import PolyMatrix

FIELDS = ((2, 1), (3, 1), (2, 2), (2, 3), (3, 2))


def random_code(field, n: int, k: int, rng: np.random.Generator):
    """Random ``[n, k]`` code (rank drawn again until it is exactly ``k``)."""
    while True:
        G = rng.integers(0, field.q, size=(k, n))
        if linalg.rank(field, G) == k:
            return code_from_generator(field, G)


def _field_axioms(rng) -> bool:
    for p, e in FIELDS:
        F = field_new(p, e)
        a, b, c = (rng.integers(0, F.q, 64) for _ in range(3))
        lhs = F.mul_arr(a, F.add_arr(b, c))
        rhs = F.add_arr(F.mul_arr(a, b), F.mul_arr(a, c))
        if not np.array_equal(lhs, rhs):
            return False
        nz = np.arange(1, F.q)
        if not np.all(F.mul_arr(nz, F.inv_arr(nz)) == 1):
            return False
    return True


def _dual_involution(rng) -> bool:
    for p, e in FIELDS:
        F = field_new(p, e)
        n = int(rng.integers(3, 9))
        C = random_code(F, n, int(rng.integers(1, n)), rng)
        if not same_code(dual(dual(C)), C):
            return False
    return True


def _sandwich(rng) -> bool:
    for p, e in FIELDS[:3]:
        F = field_new(p, e)
        for _ in range(3):
            n = int(rng.integers(4, 9))
            C = random_code(F, n, int(rng.integers(2, min(n, 5) + 1)), rng)
            V = unit_memory_from_block(C, 1)
            df = free_distance_search(V).value
            if not min_distance(C) <= df <= V.s:
                return False
    return True


def _oracle(rng) -> bool:
    for p, e in FIELDS[:3]:
        F = field_new(p, e)
        for _ in range(3):
            n = int(rng.integers(4, 8))
            C = random_code(F, n, int(rng.integers(2, 5)), rng)
            V = unit_memory_from_block(C, 1)
            fd = free_distance_search(V)
            if free_distance_truncated(V, fd.witness_length) != fd.value:
                return False
    return True


def _certification(rng) -> bool:
    F = field_new(2)
    for _ in range(30):
        k, n = int(rng.integers(1, 3)), int(rng.integers(2, 5))
        G = PolyMatrix(F, rng.integers(0, 2, size=(3, k, n)))
        try:
            a, b = is_basic(G, "minors"), is_basic(G, "smith")
            if a != b:
                return False
            is_reduced(G)
        except CodingError:
            continue  # rank-deficient draw
    return True


CHECKS = {
    "field_axioms": _field_axioms,
    "dual_involution": _dual_involution,
    "free_distance_sandwich": _sandwich,
    "free_distance_oracle": _oracle,
    "basic_minors_vs_smith": _certification,
}


def run(seed: int = 0) -> dict:
    results = []
    for name, check in CHECKS.items():
        rng = np.random.default_rng([seed, len(results)])
        results.append({"name": name, "ok": bool(check(rng))})
    failed = sum(not r["ok"] for r in results)
    return {"passed": len(results) - failed, "failed": failed, "seed": seed, "checks": results}

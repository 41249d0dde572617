"""Smith normal form and K0 invariants.

The random matrix checks verify the algebraic postconditions directly
(exact transform identity, unimodularity, divisor chain) and cross-check
the diagonal against gcds of k-by-k minors, which determine the Smith
diagonal independently of any elimination order.
"""

import random
from itertools import combinations
from math import gcd

import pytest

from leavitt_lab.fixtures import fixture_graph
from leavitt_lab.graphs import build_graph, matrix_graph, rose_graph
from leavitt_lab.ktheory import (
    IntMatrix,
    class_in_k0,
    det,
    identity_matrix,
    k0_of_graph,
    k0_to_json,
    mat_mul,
    relation_matrix,
    smith_normal_form,
    unit_generates_k0,
    unit_multiple_candidates,
)
from leavitt_lab.monoid import make_element


def minor_gcd(m: IntMatrix, k: int) -> int:
    """gcd of the absolute values of all k-by-k minors (0 if all vanish)."""
    acc = 0
    for rows in combinations(range(m.nrows), k):
        for cols in combinations(range(m.ncols), k):
            sub = IntMatrix(
                tuple(tuple(m.entries[i][j] for j in cols) for i in rows), k
            )
            acc = gcd(acc, abs(det(sub)))
    return acc


def check_snf(m: IntMatrix):
    s, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v).entries == s.entries
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    diag = [s.entries[i][i] for i in range(min(s.nrows, s.ncols))]
    for i in range(s.nrows):
        for j in range(s.ncols):
            if i != j:
                assert s.entries[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    return s, u, v


def test_snf_known_instances():
    s, _, _ = smith_normal_form(IntMatrix(((-1,),), 1))
    assert s.entries == ((1,),)

    s, _, _ = smith_normal_form(IntMatrix(((0, 0), (-1, -1)), 2))
    assert [s.entries[i][i] for i in range(2)] == [1, 0]

    m = IntMatrix(((1, -1, -1), (-1, 0, 0), (-1, 0, 0)), 3)
    s, _, _ = check_snf(m)
    assert [s.entries[i][i] for i in range(3)] == [1, 1, 0]

    # nontrivial torsion; diagonal fixed by the minor gcds 2, 4, 624
    m = IntMatrix(((2, 4, 4), (-6, 6, 12), (10, 4, 16)), 3)
    s, _, _ = check_snf(m)
    diag = [s.entries[i][i] for i in range(3)]
    assert diag == [2, 2, 156]
    assert [minor_gcd(m, k) for k in (1, 2, 3)] == [2, 4, 624]


def test_snf_degenerate_shapes():
    for m in [
        IntMatrix((), 0),
        IntMatrix((), 3),
        IntMatrix(((),) * 2, 0),
        IntMatrix(((0, 0),), 2),
    ]:
        s, u, v = smith_normal_form(m)
        assert u.nrows == u.ncols == m.nrows
        assert v.nrows == v.ncols == m.ncols
        assert mat_mul(mat_mul(u, m), v).entries == s.entries


def test_snf_random_postconditions():
    rng = random.Random(20240817)
    for _ in range(200):
        nr = rng.randint(1, 6)
        nc = rng.randint(1, 6)
        m = IntMatrix(
            tuple(tuple(rng.randint(-9, 9) for _ in range(nc)) for _ in range(nr)),
            nc,
        )
        check_snf(m)


def test_snf_matches_minor_gcd_oracle_on_3x3():
    rng = random.Random(99)
    for _ in range(80):
        m = IntMatrix(
            tuple(tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(3)), 3
        )
        s, _, _ = check_snf(m)
        diag = [s.entries[i][i] for i in range(3)]
        prod = 1
        for k in (1, 2, 3):
            prod *= diag[k - 1]
            assert prod == minor_gcd(m, k)


def test_det_is_exact():
    assert det(identity_matrix(4)) == 1
    assert det(IntMatrix(((2, 0), (0, 3)), 2)) == 6
    assert det(IntMatrix(((0, 1), (1, 0)), 2)) == -1
    assert det(IntMatrix(((1, 2), (2, 4)), 2)) == 0
    big = IntMatrix(tuple(tuple(10 ** (i + j) for j in range(4)) for i in range(4)), 4)
    assert det(big) == 0  # rank one in disguise: rows are scalar multiples


def test_relation_matrix_shapes():
    g = build_graph(["a", "b"], [("a", "b")])  # b is a sink: one column only
    m = relation_matrix(g)
    assert (m.nrows, m.ncols) == (2, 1)
    assert m.column(0) == (1, -1)

    m = relation_matrix(matrix_graph(3, 5))
    assert m.entries == ((1, 0), (-2, -4))


def test_k0_of_roses():
    for n in range(2, 10):
        k0 = k0_of_graph(rose_graph(n))
        assert k0.free_rank == 0
        if n == 2:
            assert k0.torsion_divisors == ()
            assert k0.unit_class == ()
        else:
            assert k0.torsion_divisors == (n - 1,)
            assert k0.unit_class == (1,)


def test_k0_frozen_fixture_values():
    k0 = k0_of_graph(fixture_graph("ex34-1"))
    assert (k0.free_rank, k0.torsion_divisors) == (1, ())
    assert k0.unit_class == (0,)
    assert k0.vertex_class("u") == (0,)
    assert k0.vertex_class("v") == (1,)
    assert k0.vertex_class("z") == (-1,)

    k0 = k0_of_graph(fixture_graph("ex34-2"))
    assert (k0.free_rank, k0.torsion_divisors) == (1, ())
    assert k0.unit_class == (1,)
    assert k0.vertex_class("v") == (1,)
    assert k0.vertex_class("z") == (0,)

    k0 = k0_of_graph(fixture_graph("matrix-3-5"))
    assert (k0.free_rank, k0.torsion_divisors) == (0, (4,))
    assert k0.unit_class == (3,)
    assert k0.vertex_class("u") == (2,)


def test_class_is_additive_and_kills_relations():
    g = fixture_graph("e2-minus")
    a = make_element(g, {"u": 2, "v": 1})
    b = make_element(g, {"w": 3})
    za = class_in_k0(g, a)
    zb = class_in_k0(g, b)
    k0 = k0_of_graph(g)
    assert k0.class_of_coefficients(tuple(x + y for x, y in zip(a.dense(), b.dense()))) \
        == tuple(x + y for x, y in zip(za, zb))


def test_unit_order():
    assert k0_of_graph(rose_graph(4)).unit_order() == 3
    assert k0_of_graph(fixture_graph("ex34-1")).unit_order() == 1  # the zero class
    assert k0_of_graph(fixture_graph("ex34-2")).unit_order() is None
    assert k0_of_graph(rose_graph(2)).unit_order() == 1


def test_unit_multiple_candidates_pinned_free():
    k0 = k0_of_graph(fixture_graph("ex34-2"))  # K0 = Z, unit -> 1
    got = unit_multiple_candidates(k0, (3,))
    assert got.exhaustive and got.multipliers == (3,)
    got = unit_multiple_candidates(k0, (0,))  # k = 0 is below the minimum
    assert got.exhaustive and got.multipliers == ()


def test_unit_multiple_candidates_no_solution():
    k0 = k0_of_graph(fixture_graph("ex34-1"))  # unit -> 0
    got = unit_multiple_candidates(k0, (1,))
    assert got.exhaustive and got.multipliers == ()


def test_unit_multiple_candidates_torsion_progression():
    k0 = k0_of_graph(rose_graph(4))  # Z/3, unit -> 1
    got = unit_multiple_candidates(k0, (2,), cap=4)
    assert not got.exhaustive
    assert got.multipliers == (2, 5, 8, 11)


def test_unit_multiple_candidates_torsion_unsolvable():
    k0 = k0_of_graph(matrix_graph(2, 5))  # Z/4, unit -> 2
    got = unit_multiple_candidates(k0, k0.vertex_class("v"))  # class 1: 2k = 1 mod 4
    assert got.exhaustive and got.multipliers == ()


def test_unit_generates():
    assert unit_generates_k0(rose_graph(4)).generates  # Z/3 with unit 1
    assert unit_generates_k0(fixture_graph("ex34-2")).generates  # Z with unit 1
    res = unit_generates_k0(fixture_graph("ex34-2"))
    assert res.multipliers == {"v": 1, "z": 0}
    assert not unit_generates_k0(fixture_graph("ex34-1")).generates  # unit 0
    assert not unit_generates_k0(matrix_graph(2, 5)).generates  # gcd(2, 4) > 1


def test_k0_json_shape():
    doc = k0_to_json(k0_of_graph(rose_graph(3)))
    assert doc == {
        "free_rank": 0,
        "torsion": [2],
        "unit": [1],
        "vertices": {"u": [1]},
    }

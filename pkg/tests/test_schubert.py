"""Schubert calculus on Gr(k, n): Pieri, Schur products, duality, counts."""

import random
from itertools import combinations

import pytest

from chowkit.schubert import (
    CodimMismatchError,
    GrChowClass,
    box_partitions,
    complement_partition,
    duality_pairing,
    format_partition,
    parse_partition,
    pieri,
    point_count,
    schur_product,
)


def sch(parts):
    return GrChowClass.schubert(3, 6, parts)


# -- Pieri rule ----------------------------------------------------------------


def test_pieri_adds_one_box():
    assert pieri(sch((2, 1, 1))) == GrChowClass(3, 6, 5, {(2, 2, 1): 1, (3, 1, 1): 1})


def test_pieri_on_empty_partition():
    assert pieri(sch(())) == sch((1,))


def test_pieri_full_box_vanishes():
    assert pieri(sch((3, 3, 3))).is_zero


# -- Schur-polynomial products ---------------------------------------------------


def test_schur_matches_pieri_for_the_example():
    assert schur_product(sch((1,)), sch((2, 1, 1))) == pieri(sch((2, 1, 1)))


def test_schur_unit():
    x = sch((2, 1)) + sch((3,)).scale(4)
    assert schur_product(sch(()), x) == x


def test_schur_double_hyperplane_on_22():
    result = schur_product(schur_product(sch((2, 2)), sch((1,))), sch((1,)))
    assert result == GrChowClass(3, 6, 6, {(3, 3): 1, (3, 2, 1): 2, (2, 2, 2): 1})


def test_pieri_schur_agreement_exhaustive():
    hyper = sch((1,))
    for parts in box_partitions(3, 3):
        if sum(parts) == 9:
            continue
        cls = sch(parts)
        assert pieri(cls) == schur_product(hyper, cls), parts


def test_schur_commutative_associative_random():
    rng = random.Random(20260808)
    partitions = box_partitions(3, 3)
    for _ in range(25):
        x, y, z = (sch(rng.choice(partitions)) for _ in range(3))
        assert schur_product(x, y) == schur_product(y, x)
        assert schur_product(schur_product(x, y), z) == schur_product(x, schur_product(y, z))


def test_product_grading():
    rng = random.Random(99)
    partitions = box_partitions(3, 3)
    for _ in range(40):
        x, y = sch(rng.choice(partitions)), sch(rng.choice(partitions))
        prod = schur_product(x, y)
        if not prod.is_zero:
            assert prod.codim == x.codim + y.codim


# -- duality -------------------------------------------------------------------


def test_pairing_point_against_fundamental():
    assert duality_pairing(sch((3, 3, 3)), sch(())) == 1


def test_pairing_complementary_pair():
    # Independent rule: nonzero exactly on complementary partitions.
    assert complement_partition((3, 1), 3, 3) == (3, 2)
    assert duality_pairing(sch((3, 1)), sch((3, 2))) == 1


def test_pairing_non_complementary():
    assert duality_pairing(sch((3, 1)), sch((2, 2, 1))) == 0


def test_pairing_codim_mismatch():
    with pytest.raises(CodimMismatchError):
        duality_pairing(sch((1,)), sch((1,)))


def test_full_basis_pairing_is_a_permutation_matrix():
    partitions = box_partitions(3, 3)
    matrix = []
    for lam in partitions:
        row = []
        for mu in partitions:
            if sum(lam) + sum(mu) == 9:
                row.append(duality_pairing(sch(lam), sch(mu)))
            else:
                row.append(0)
        matrix.append(row)
    for i, lam in enumerate(partitions):
        assert sum(matrix[i]) == 1
        assert sum(matrix[j][i] for j in range(len(partitions))) == 1
        j = partitions.index(complement_partition(lam, 3, 3))
        assert matrix[i][j] == 1


# -- point counts -----------------------------------------------------------------


def mat_rank_f2(rows):
    m = [list(r) for r in rows]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] % 2), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] % 2:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def rref_f2(rows):
    m = [list(r) for r in rows]
    rank = 0
    for col in range(len(m[0])):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] % 2), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] % 2:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[rank])]
        rank += 1
    return tuple(tuple(r) for r in m[:rank])


def test_point_count_small():
    assert point_count(1, 2, 2) == 3
    assert point_count(0, 5, 3) == 1
    assert point_count(2, 2, 7) == 1


def test_point_count_gr36_f2_against_enumeration():
    # Brute force: canonicalize the row space of every independent 3-set of
    # nonzero vectors in F_2^6.
    vectors = [tuple((v >> i) & 1 for i in range(6)) for v in range(1, 64)]
    seen = set()
    for triple in combinations(vectors, 3):
        if mat_rank_f2(list(triple)) == 3:
            seen.add(rref_f2(list(triple)))
    assert len(seen) == 1395
    assert point_count(3, 6, 2) == 1395


def test_point_count_duality():
    for n in range(1, 7):
        for k in range(n + 1):
            for q in (2, 3, 4):
                assert point_count(k, n, q) == point_count(n - k, n, q)


# -- parsing and formatting ----------------------------------------------------------


def test_partition_roundtrip():
    for parts in box_partitions(3, 3):
        assert parse_partition(format_partition(parts)) == parts
    assert parse_partition("()") == ()
    assert format_partition((3, 2, 1)) == "(3,2,1)"


def test_box_partition_count():
    assert len(box_partitions(3, 3)) == 20
    assert box_partitions(3, 3, weight_filter=4) == [(2, 1, 1), (2, 2), (3, 1)]

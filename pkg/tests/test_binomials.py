import pytest

from polytropes.binomials import (BadBlockSize, binomial_count, block_members,
                                  canonical_orientation, enumerate_binomials,
                                  enumerate_monomials, flow, kernel_dimension, monomial_count,
                                  normal_matrix, relation_circuits, winner_blocks)
from polytropes.core import WeightMatrix


@pytest.mark.parametrize("n,m,count", [(4, 2, 6), (5, 2, 30), (6, 2, 90), (6, 3, 60)])
def test_binomial_counts(n, m, count):
    assert len(enumerate_binomials(n, m)) == count == binomial_count(n, m)


def test_monomial_counts():
    for n, m in [(4, 2), (5, 2), (6, 2), (6, 3)]:
        assert len(enumerate_monomials(n, m)) == monomial_count(n, m)


def test_block_size_checked():
    with pytest.raises(BadBlockSize):
        enumerate_binomials(4, 3)
    with pytest.raises(BadBlockSize):
        enumerate_monomials(5, 1)


def test_orientation():
    assert canonical_orientation([0, -1, 1]) == ((0, 1, -1), True)
    for n in (4, 5, 6):
        for b in enumerate_binomials(n, 2):
            first = next(x for x in b.normal if x)
            assert first == 1


@pytest.mark.parametrize("n", [4, 5, 6])
def test_flow_conservation(n):
    for m in range(2, n // 2 + 1):
        for b in enumerate_binomials(n, m):
            assert flow(b.normal, n) == [0] * n
            assert flow(b.plus.incidence(n), n) == flow(b.minus.incidence(n), n)


def test_evaluate_matches_normal():
    c = WeightMatrix.from_rows([[0, 1, 2, 3], [4, 0, 5, 6], [7, 8, 0, 9], [1, 3, 5, 0]])
    v = c.edge_vector()
    for b in enumerate_binomials(4, 2):
        assert b.evaluate(c) == sum(x * y for x, y in zip(b.normal, v))


def test_distinct_normals():
    for n in (4, 5, 6):
        rows = [tuple(r) for r in normal_matrix(n).tolist()]
        assert len(set(rows)) == len(rows)


def test_kernel_dimension_n4():
    assert kernel_dimension(4) == 1


def test_circuits_n4():
    classes = relation_circuits(4)
    assert len(classes) == 1
    (circ,) = classes[0]
    assert circ.terms == ((0, 1), (1, -1), (2, 1), (3, 1), (4, -1), (5, 1))
    assert circ.combination() == (0,) * 12


def test_rotation_and_matching_families():
    K, L = (0, 1, 2), (3, 4, 5)
    rot = block_members(K, L, "rotations")
    mat = block_members(K, L, "matchings")
    assert len(rot) == 3 and len(mat) == 6
    assert rot[0] == mat[0] == L
    assert set(rot) <= set(mat)
    assert len(winner_blocks(6)) == 20

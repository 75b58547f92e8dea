from fractions import Fraction

import pytest

from polytropes.exactlp import (ConeSystem, Infeasible, InfeasibleSystem, cone_dimension,
                                feasible, interior_witness, simplex_max)


def test_opposite_strict_pair_is_infeasible():
    s = ConeSystem(1).add([1], ">").add([-1], ">")
    for pre in (True, False):
        got = feasible(s, prefilter=pre)
        assert isinstance(got, Infeasible) and not got
        y = got.certificate
        assert all(v >= 0 for v in y) and sum(y) > 0
        assert y[0] * 1 + y[1] * -1 == 0


@pytest.mark.parametrize("pre", [True, False])
def test_witness_satisfies_system(pre):
    s = ConeSystem(3)
    s.add([1, -1, 0], ">").add([0, 1, -1], ">=").add([1, 1, 1], "=").add([0, 0, 1], "<")
    w = feasible(s, prefilter=pre)
    assert w and s.check(w.point)
    assert all(isinstance(x, Fraction) for x in w.point)


def test_dimensions():
    assert cone_dimension(ConeSystem(3)) == 3
    assert cone_dimension(ConeSystem(3).add([1, 0, 0], "=")) == 2
    assert cone_dimension(ConeSystem(2).add([1, 0], ">=").add([-1, 0], ">=")) == 1
    assert cone_dimension(ConeSystem(1).add([1], ">=")) == 1


def test_interior_witness_and_forced_strict():
    s = ConeSystem(2).add([1, 0], ">=").add([-1, 0], ">=").add([0, 1], ">=")
    w = interior_witness(s)
    assert w.point[0] == 0 and w.point[1] > 0
    bad = ConeSystem(1).add([1], ">").add([-1], ">=")
    with pytest.raises(InfeasibleSystem):
        interior_witness(bad)


def test_simplex_small():
    # max x + y, x + 2y <= 4, 3x + y <= 6
    val, v, y = simplex_max([[1, 2], [3, 1]], [4, 6], [1, 1])
    assert val == Fraction(14, 5)
    assert v == [Fraction(8, 5), Fraction(6, 5)]
    assert y == [Fraction(2, 5), Fraction(1, 5)]
    assert simplex_max([[-1]], [0], [1]) is None


def test_n4_empty_pair_certified():
    """The sign pattern excluded by the single relation has a certificate."""
    from polytropes.binomials import enumerate_binomials

    bs = enumerate_binomials(4, 2)
    s = ConeSystem(12)
    for b, z in zip(bs, (1, -1, 1, 1, -1, 1)):
        s.add(b.normal, ">" if z > 0 else "<")
    got = feasible(s, prefilter=False)
    assert not got and all(v > 0 for v in got.certificate)

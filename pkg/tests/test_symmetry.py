import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_matrix
from polytropes.fans import Catalog
from polytropes.symmetry import (NodePermutation, NonInvariantFamily, SignVector, act,
                                 canonical_form, orbit)


def test_permutation_algebra():
    a = NodePermutation((1, 2, 0))
    b = NodePermutation((0, 2, 1))
    assert a.compose(a.inverse()) == NodePermutation.identity(3)
    assert a.compose(b)(1) == a(b(1))
    with pytest.raises(ValueError):
        NodePermutation((0, 0, 1))


@given(st.integers(3, 5), st.integers(0, 2 ** 32))
@settings(max_examples=150, deadline=None)
def test_act_is_equivariant(n, seed):
    rng = random.Random(seed)
    cat = Catalog(n)
    c = random_matrix(rng, n, den=1)
    p = list(range(n))
    rng.shuffle(p)
    lhs = act(p, cat.sign_vector(c))
    rhs = cat.sign_vector(c.permuted(p))
    assert lhs == rhs


@given(st.integers(3, 5), st.integers(0, 2 ** 32))
@settings(max_examples=100, deadline=None)
def test_canonical_form_is_orbit_invariant(n, seed):
    rng = random.Random(seed)
    cat = Catalog(n)
    s = cat.sign_vector(random_matrix(rng, n, den=1))
    p = list(range(n))
    rng.shuffle(p)
    cs, o = canonical_form(s)
    ct, o2 = canonical_form(act(p, s))
    assert cs == ct and o == o2
    orb = orbit(s)
    assert len(orb) == o and cs == min(orb)


def test_equivariant_with_winner_blocks():
    rng = random.Random(5)
    cat = Catalog(6, family="matchings")
    for _ in range(5):
        c = random_matrix(rng, 6, den=1)
        p = list(range(6))
        rng.shuffle(p)
        assert act(p, cat.sign_vector(c), "matchings") == cat.sign_vector(c.permuted(p))


def test_rotations_family_is_not_invariant():
    cat = Catalog(6, family="rotations")
    K, L = cat.blocks[0]
    s = SignVector(6, (1,) * 120, (1,) * 90, (1,) + (1,) * (len(cat.blocks) - 1))
    # swapping two sinks of the first block turns rotation 0 into an odd matching
    p = list(range(6))
    p[L[0]], p[L[1]] = p[L[1]], p[L[0]]
    with pytest.raises(NonInvariantFamily):
        act(p, s, "rotations")


def test_sign_vector_json():
    s = SignVector(4, (1, 0, -1), (1, -1), (3, 4))
    assert SignVector.from_json(4, s.to_json()) == s

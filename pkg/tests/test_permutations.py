from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from gdet.errors import BadPermutation
from gdet.permutations import PermutationSpec, all_permutations, even_permutations, odd_permutations

from oracles import inversion_parity


@given(st.permutations(list(range(7))))
def test_parity_matches_inversions(w):
    assert PermutationSpec(tuple(w)).parity == inversion_parity(w)


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_composition_parity_is_multiplicative(a, b):
    p, q = PermutationSpec(tuple(a)), PermutationSpec(tuple(b))
    assert (p * q).parity == p.parity * q.parity
    assert (p * p.inverse()) == PermutationSpec.identity(6)


def test_not_a_bijection():
    with pytest.raises(BadPermutation):
        PermutationSpec((0, 0, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_parity_classes_partition(n):
    assert len(all_permutations(n)) == len(list(permutations(range(n))))
    assert len(even_permutations(n)) + len(odd_permutations(n)) == len(all_permutations(n))
    if n > 1:
        assert len(even_permutations(n)) == len(odd_permutations(n))


def test_json_is_one_based():
    s = PermutationSpec((1, 0, 2))
    assert s.to_json() == [2, 1, 3]
    assert PermutationSpec.from_json([2, 1, 3]) == s

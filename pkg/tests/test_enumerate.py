import numpy as np
import pytest

from gromovclass.canon import canonical_form
from gromovclass.core import from_code, parse, serialize
from gromovclass.enumerate import (
    allowable_codes,
    enumerate_allowable,
    exclusions_of,
    is_allowable,
    subtree_masks,
)
from gromovclass.errors import UnsupportedN
from gromovclass import kernels

from oracles import all_candidates, brute_allowable


def test_exclusions_of_single_pick():
    ex = exclusions_of(1, (2, 4), 4)
    assert ex[2] == {(3, 4), (1, 4)}
    assert ex[4] == {(1, 2), (2, 3)}
    assert ex[3] == {(1, 2), (1, 4)}
    assert 1 not in ex


def test_rejected_structure_names_the_node():
    v = is_allowable(parse("124,214,324,413"))
    assert not v
    assert "node 2" in v.reason


@pytest.mark.parametrize("n,count", [(4, 3), (5, 102), (6, 13140)])
def test_allowable_counts(n, count):
    assert len(allowable_codes(n)) == count


@pytest.mark.slow
def test_allowable_count_seven():
    assert len(allowable_codes(7)) == 2068320


@pytest.mark.parametrize("n", [4, 5])
def test_pruned_search_equals_filtering_every_candidate(n):
    brute = sorted(serialize(s) for s in all_candidates(n) if brute_allowable(s))
    assert brute == sorted(serialize(s) for s in enumerate_allowable(n))
    assert all(bool(is_allowable(s)) == brute_allowable(s) for s in all_candidates(n))


def test_output_sorted_and_unique():
    codes = allowable_codes(6)
    assert len(np.unique(codes, axis=0)) == len(codes)
    assert (np.lexsort(codes.T[::-1]) == np.arange(len(codes))).all()


@pytest.mark.parametrize("n", [5, 6])
def test_subtrees_partition_the_search(n):
    parts = [kernels.enumerate_codes(n, m) for m in subtree_masks(n)]
    merged = np.concatenate([p for p in parts if len(p)])
    assert len(merged) == len(allowable_codes(n))
    assert len(np.unique(merged, axis=0)) == len(merged)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_chain_seeded_mode_reaches_every_class(n):
    full = {canonical_form(from_code(n, c)).text for c in allowable_codes(n)}
    seeded_codes = allowable_codes(n, "chain-seeded")
    seeded = {canonical_form(from_code(n, c)).text for c in seeded_codes}
    assert seeded == full
    assert len(seeded_codes) < len(allowable_codes(n)) or n == 4


@pytest.mark.parametrize("n", [3, 9])
def test_unsupported_sizes(n):
    with pytest.raises(UnsupportedN):
        allowable_codes(n)
    with pytest.raises(UnsupportedN):
        list(enumerate_allowable(n))


def test_unknown_mode():
    with pytest.raises(ValueError):
        allowable_codes(5, "sideways")

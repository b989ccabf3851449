from itertools import combinations

import pytest

from gridtamari.grassmann import (grassmann_tamari, is_crossing, kissing_agrees_with_crossing, lex_orientation,
                                  path_to_subset, render, subset, subset_to_path)
from gridtamari.grid import Path
from gridtamari.nkcomplex import Direction


def test_crossing_examples():
    assert not is_crossing("145", "236")
    assert is_crossing("145", "246")
    assert not is_crossing("145", "145")
    with pytest.raises(ValueError):
        is_crossing("14", "236")


def test_subset_to_path_examples():
    assert subset_to_path("145", 3, 6) == Path([(0, 2), (1, 2), (2, 2), (2, 1), (2, 0)])
    assert subset_to_path("234", 3, 6) == Path([(1, 3), (1, 2), (1, 1), (1, 0)])
    assert subset_to_path("123", 3, 6) is None
    assert subset_to_path("456", 3, 6) is None


@pytest.mark.parametrize("k, n", [(2, 5), (3, 6), (3, 7), (4, 8)])
def test_round_trip(k, n):
    for s in combinations(range(1, n + 1), k):
        p = subset_to_path(s, k, n)
        if p is not None:
            assert path_to_subset(p, k, n) == s


@pytest.mark.parametrize("k, n", [(2, 5), (2, 6), (3, 6), (3, 7)])
def test_crossing_is_kissing(k, n):
    assert kissing_agrees_with_crossing(k, n) == []


def test_lex_orientation():
    f1 = ["145", "146", "236", "245"]
    f2 = ["146", "236", "245", "246"]
    assert lex_orientation(f1, f2) is Direction.OUTGOING
    assert lex_orientation(f2, f1) is Direction.INCOMING
    with pytest.raises(ValueError):
        lex_orientation(f1, f1)


def test_grassmann_tamari_36():
    fams, poset = grassmann_tamari(3, 6)
    assert poset.n == 42 and len(poset.covers) == 84
    i = fams.index(tuple(subset(x) for x in ["145", "146", "236", "245"]))
    j = fams.index(tuple(subset(x) for x in ["146", "236", "245", "246"]))
    assert (i, j) in poset.covers
    assert poset.labels[(i, j)] == (1, 5)


def test_subset_parsing():
    assert subset("541") == (1, 4, 5) == subset([5, 4, 1])
    assert render((1, 4, 5)) == "145"
    with pytest.raises(ValueError):
        subset("1a")
    with pytest.raises(ValueError):
        subset("11")

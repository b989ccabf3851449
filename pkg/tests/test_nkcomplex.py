import pytest

from gridtamari.grassmann import facet_from_subsets, path_to_subset, subset_to_path
from gridtamari.grid import Path, Shape, lazy
from gridtamari.nkcomplex import (Direction, Facet, FlipError, complex_of, enumerate_facets, f_vector, flip,
                                  grid_tamari, initial_facet, maximal_cliques, top_bottom_at_edge)
from gridtamari.poset_kit import check_cn_labeling

SQUARE = Shape.rectangle(3, 3)
F = facet_from_subsets(["145", "146", "236", "245"], 3, 6)


def P(*vs):
    return Path(list(vs))


def sub(p):
    return "".join(map(str, path_to_subset(p, 3, 6)))


def test_initial_facets():
    assert set(initial_facet(Shape.rectangle(2, 3))) == {P((0, 1), (1, 1), (1, 0)),
                                                         P((0, 1), (1, 1), (2, 1), (2, 0))}
    assert initial_facet(Shape.rectangle(2, 2)).codes() == ["(0,1)ES"]
    assert all(p.word.startswith("E") for p in initial_facet(SQUARE))


@pytest.mark.parametrize("rows, cols, count", [(2, 2, 2), (2, 3, 5), (2, 4, 14), (2, 5, 42), (3, 3, 42),
                                               (3, 4, 462)])
def test_facet_counts(rows, cols, count):
    s = Shape.rectangle(rows, cols)
    assert len(enumerate_facets(s, "flips")) == count
    assert enumerate_facets(s, "flips") == enumerate_facets(s, "cliques")


def test_f_vectors():
    assert f_vector(Shape.rectangle(2, 2)) == (1, 2)
    assert f_vector(Shape.rectangle(2, 3)) == (1, 5, 5)
    fv = f_vector(SQUARE)
    assert fv[1] == 14 and fv[-1] == 42 and len(fv) - 2 == 3


def test_flip_example_from_subsets():
    res = flip(SQUARE, F, subset_to_path("145", 3, 6))
    assert sub(res.added) == "246"
    assert sorted(sub(p) for p in res.facet) == ["146", "236", "245", "246"]
    assert res.direction is Direction.OUTGOING
    # the kissing segment is the NE hook of 245 between its two top edges
    assert res.segment.code() == "(1,2)ES"


def test_flip_in_two_by_three():
    s = Shape.rectangle(2, 3)
    f = initial_facet(s)
    b = P((0, 1), (1, 1), (2, 1), (2, 0))
    res = flip(s, f, b)
    # (1,2)(1,1)(2,1)(2,0) kisses the other hook at (1,1), so only this one fits
    assert res.added == P((2, 2), (2, 1), (3, 1))
    assert res.segment == lazy(2, 1)
    assert res.direction is Direction.OUTGOING


def test_flip_is_an_involution():
    cx = complex_of(SQUARE)
    for f in enumerate_facets(SQUARE):
        for p in f:
            res = cx.flip(f, p)
            back = cx.flip(res.facet, res.added)
            assert back.facet == f and back.added == p
            assert back.direction is not res.direction
            assert back.segment == res.segment


def test_flip_rejects_foreign_path():
    with pytest.raises(FlipError):
        flip(SQUARE, F, subset_to_path("246", 3, 6))


def test_top_paths_at_vertical_edges():
    cx = complex_of(SQUARE)
    edges = SQUARE.interior_vertical_edges
    assert len(edges) == 6
    tops = [top_bottom_at_edge(SQUARE, F, e, "top") for e in edges]
    assert sorted(sub(p) for p in tops) == ["145", "146", "234", "236", "245", "345"]
    rest = set(F) - {subset_to_path("145", 3, 6)}
    tops = [cx.extreme_at_edge(rest, e, "top") for e in edges]
    assert sum(sub(p) == "245" for p in tops) == 2


def test_two_by_two_top():
    s = Shape.rectangle(2, 2)
    f = initial_facet(s)
    assert top_bottom_at_edge(s, f, ((1, 1), (1, 0)), "top") == next(iter(f))


def test_grid_tamari_shapes():
    two = grid_tamari(Shape.rectangle(2, 2))
    assert two.poset.n == 2 and two.poset.covers == [(0, 1)]
    pent = grid_tamari(Shape.rectangle(2, 3))
    assert pent.poset.n == 5 and len(pent.poset.covers) == 5
    gt = grid_tamari(SQUARE)
    assert gt.poset.n == 42 and len(gt.poset.covers) == 84


def test_unique_source_and_sink():
    for s in (SQUARE, Shape.rectangle(2, 4), Shape.parse_ascii("###\n###\n##.")):
        gt = grid_tamari(s)
        (src,), (snk,) = gt.poset.minimal(), gt.poset.maximal()
        assert gt.facets[src] == initial_facet(s)
        # the top facet takes every path North then East
        assert all(p.word.startswith("S") for p in gt.facets[snk])


def test_gt_labels_form_cn_labeling():
    lat = grid_tamari(SQUARE).lattice()
    assert check_cn_labeling(lat, order=lambda a, b: a != b and b.contains(a)) is None


def test_json_dump():
    data = grid_tamari(Shape.rectangle(2, 3)).to_dict()
    assert set(data) == {"shape", "facets", "flips"}
    assert len(data["facets"]) == 5 and len(data["flips"]) == 5
    assert all(isinstance(lab, str) for _, _, lab in data["flips"])


def test_maximal_cliques_on_small_graph():
    # path graph 0-1-2: cliques {0,1} and {1,2}
    adj = [0b010, 0b101, 0b010]
    assert sorted(maximal_cliques(adj)) == [0b011, 0b110]


def test_facet_identity():
    a = Facet.of([P((0, 1), (1, 1), (1, 0))])
    b = Facet.of([P((0, 1), (1, 1), (1, 0))])
    assert a == b and hash(a) == hash(b)
    assert F.name() == "{" + " ".join(F.codes()) + "}"

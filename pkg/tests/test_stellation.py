import json

import pytest

from gridtamari.grid import Shape
from gridtamari.nkcomplex import enumerate_facets
from gridtamari.stellation import SimplicialComplex, build_by_stellation, choose_corner, log_json


def test_suspension_of_empty_complex():
    cx = SimplicialComplex([frozenset()]).suspension("a", "b")
    assert cx.facets == {frozenset("a"), frozenset("b")}


def test_suspension_of_point():
    cx = SimplicialComplex([{"x"}]).suspension("a", "b")
    assert cx.facets == {frozenset("xa"), frozenset("xb")}
    with pytest.raises(ValueError):
        cx.suspension("x", "c")


def test_stellate_edge():
    cx = SimplicialComplex([{"a", "b"}]).stellate({"a", "b"}, "v")
    assert cx.facets == {frozenset("av"), frozenset("bv")}
    with pytest.raises(ValueError):
        cx.stellate({"a", "b"}, "w")
    with pytest.raises(ValueError):
        cx.stellate({"a"}, "v")


def test_stellate_facet_of_triangle_boundary():
    tri = SimplicialComplex([{"a", "b"}, {"b", "c"}, {"a", "c"}])
    out = tri.stellate({"a", "b"}, "v")
    assert len(out.facets) == len(tri.facets) + 1
    assert out.is_pure() and out.is_thin()


def test_complex_basics():
    sq = SimplicialComplex([{1, 2}, {2, 3}, {3, 4}, {4, 1}])
    assert sq.dimension == 1 and sq.f_vector() == (1, 4, 4)
    assert sq.is_face({1}) and not sq.is_face({1, 3})
    assert SimplicialComplex([{1, 2}, {1}]).facets == {frozenset({1, 2})}


def test_two_by_two_is_two_points():
    cx, log = build_by_stellation(Shape.rectangle(2, 2))
    assert len(cx.facets) == 2 and cx.dimension == 0
    assert [e["op"] for e in log] == ["suspend"]


def test_two_by_three_is_pentagon():
    cx, _ = build_by_stellation(Shape.rectangle(2, 3))
    assert cx.f_vector() == (1, 5, 5) and cx.is_thin()


@pytest.mark.parametrize("text", ["###\n###\n###", "####\n###.\n##..", "###.\n####\n.###", "##\n##\n##\n##"])
def test_matches_enumeration(text):
    s = Shape.parse_ascii(text)
    cx, _ = build_by_stellation(s)
    assert cx == SimplicialComplex(frozenset(f) for f in enumerate_facets(s))


def test_corner_order_and_log():
    s = Shape.rectangle(3, 3)
    assert choose_corner(s) == (3, 0)
    assert choose_corner(Shape.parse_ascii("###\n##.")) == (3, 1)
    _, log = build_by_stellation(s)
    assert sum(e["op"] == "suspend" for e in log) == 4
    assert sum(e["op"] == "stellate" for e in log) == 6
    data = json.loads(log_json(log))
    assert data[0] == {"op": "suspend", "corner": [2, 1], "labels": ["(0,2)ESS", "(1,3)SEE"]}

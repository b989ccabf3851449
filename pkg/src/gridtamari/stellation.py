"""Simplicial complexes by facets, and the corner-peeling construction of
the non-kissing complex by suspensions and edge stellations."""
from __future__ import annotations

import json
from functools import cmp_to_key
from itertools import combinations

from .grid import E, N, S, W, Path, Shape, add, compare_at_edge


class SimplicialComplex:
    """Given by its facets (maximal faces).  {frozenset()} is the complex {∅}."""

    def __init__(self, facets):
        fs = {frozenset(f) for f in facets}
        if not fs:
            raise ValueError("a complex needs at least the empty face")
        self.facets = frozenset(f for f in fs if not any(f < g for g in fs))

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets)"

    @property
    def vertices(self) -> frozenset:
        return frozenset().union(*self.facets)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_face(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self) -> set:
        out = set()
        for f in self.facets:
            for k in range(len(f) + 1):
                out.update(frozenset(c) for c in combinations(f, k))
        return out

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dimension + 2)
        for face in self.faces():
            counts[len(face)] += 1
        return tuple(counts)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def ridge_degrees(self) -> dict:
        deg = {}
        for f in self.facets:
            for x in f:
                r = f - {x}
                deg[r] = deg.get(r, 0) + 1
        return deg

    def is_thin(self) -> bool:
        """Every codimension-one face lies in exactly two facets."""
        if self.dimension < 0:
            return True
        return all(d == 2 for d in self.ridge_degrees().values())

    def relabel(self, fn) -> "SimplicialComplex":
        return SimplicialComplex(frozenset(fn(v) for v in f) for f in self.facets)

    def suspension(self, a, b) -> "SimplicialComplex":
        if a == b or a in self.vertices or b in self.vertices:
            raise ValueError("suspension points must be new and distinct")
        return SimplicialComplex([f | {a} for f in self.facets] + [f | {b} for f in self.facets])

    def stellate(self, face, new) -> "SimplicialComplex":
        """Replace the star of `face` by the cone from `new` over its link
        joined with the boundary of `face`."""
        face = frozenset(face)
        if not self.is_face(face):
            raise ValueError(f"{sorted(map(str, face))} is not a face")
        if new in self.vertices:
            raise ValueError("the stellation vertex must be new")
        out = []
        for f in self.facets:
            if face <= f:
                rest = f - face
                out.extend(rest | (face - {x}) | {new} for x in face)
            else:
                out.append(f)
        return SimplicialComplex(out)


def _extend_over(p: Path, v) -> Path:
    """A path of the shape without the corner, ending at v, continued
    straight through v."""
    if p.term != v:
        return p
    step = E if p.entry(len(p) - 1) == "W" else S
    return Path(p.vertices + (add(v, step),))


def _straighten(p: Path, v) -> Path:
    i = p.position(v)
    step = E if p.entry(i) == "W" else S
    return Path(p.vertices[: i + 1] + (add(v, step),))


def choose_corner(shape: Shape):
    """Peeling order: the South-East corner with the largest (x, y)."""
    return max(shape.se_corners())


def build_by_stellation(shape: Shape):
    """Returns (complex on essential paths, log).

    The log is a list of {"op": "suspend", "labels": [...]} and
    {"op": "stellate", "edge": [...], "new": ...} entries with paths of the
    final shape, in order of construction."""
    cx, log = _build(shape)
    return cx, [
        {k: ([p.code() for p in v] if isinstance(v, list) else v.code() if isinstance(v, Path) else v) for k, v in e.items()}
        for e in log
    ]


def _build(shape: Shape):
    if not shape.interior:
        return SimplicialComplex([frozenset()]), []
    c = choose_corner(shape)
    v = add(c, (-1, 1))
    smaller = shape.without(c)
    sub, log = _build(smaller)
    if v not in shape.interior:
        return sub, log

    def ext(p):
        return _extend_over(p, v)

    gamma = sub.relabel(ext)
    for entry in log:
        for k, val in entry.items():
            if isinstance(val, list):
                entry[k] = [ext(p) for p in val]
            elif isinstance(val, Path):
                entry[k] = ext(val)

    inner = shape.interior
    west = [v]
    while west[0] in inner:
        west.insert(0, add(west[0], W))
    q_w = Path(west + [add(v, S)])
    north = [v]
    while north[0] in inner:
        north.insert(0, add(north[0], N))
    q_n = Path(north + [add(v, E)])
    gamma = gamma.suspension(q_w, q_n)
    log.append({"op": "suspend", "corner": tuple(c), "labels": [q_w, q_n]})

    e_w, e_n = (add(v, W), v), (add(v, N), v)
    turning = [p for p in shape.essential_paths if v in p and p.position(v) not in (0, len(p) - 1)]
    through_w = [p for p in turning if p.contains_edge(e_w) and p.contains_edge((v, add(v, S))) and p != q_w]
    through_n = [p for p in turning if p.contains_edge(e_n) and p.contains_edge((v, add(v, E))) and p != q_n]
    through_w.sort(key=cmp_to_key(lambda a, b: compare_at_edge(e_w, a, b)))
    through_n.sort(key=cmp_to_key(lambda a, b: compare_at_edge(e_n, b, a)))
    for ps, q in ((through_w, q_w), (through_n, q_n)):
        for p in ps:
            r = _straighten(p, v)
            gamma = gamma.stellate({r, q}, p)
            log.append({"op": "stellate", "edge": [r, q], "new": p})
    return gamma, log


def log_json(log) -> str:
    return json.dumps(log, indent=1)

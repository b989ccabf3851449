"""Shapes in the square grid, their paths and segments.

A shape is a finite set of lattice points in Z x Z, taken with every unit
edge between two of its points.  x grows to the East, y to the North.
"""
from __future__ import annotations

import json
import warnings
from functools import cached_property
from pathlib import Path as FilePath

Vertex = tuple[int, int]
Cell = tuple[int, int]  # identified with its South-West corner

N = (0, 1)
S = (0, -1)
E = (1, 0)
W = (-1, 0)


class ShapeError(ValueError):
    pass


def add(v: Vertex, d: tuple[int, int]) -> Vertex:
    return (v[0] + d[0], v[1] + d[1])


def _step_letter(u: Vertex, v: Vertex) -> str:
    d = (v[0] - u[0], v[1] - u[1])
    if d == E:
        return "E"
    if d == S:
        return "S"
    raise ShapeError(f"{u} -> {v} is not a South or East step")


def _fmt_vertex(v: Vertex) -> str:
    return f"({v[0]},{v[1]})"


class _Walk:
    """A South/East walk; shared base of Path and Segment."""

    __slots__ = ("vertices", "word", "_hash")

    def __init__(self, vertices):
        vs = tuple((int(x), int(y)) for x, y in vertices)
        if not vs:
            raise ShapeError("a walk needs at least one vertex")
        self.vertices = vs
        self.word = "".join(_step_letter(a, b) for a, b in zip(vs, vs[1:]))
        self._hash = hash((type(self).__name__, vs))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return type(self) is type(other) and self.vertices == other.vertices

    def __lt__(self, other):
        return self.key() < other.key()

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    @property
    def init(self) -> Vertex:
        return self.vertices[0]

    @property
    def term(self) -> Vertex:
        return self.vertices[-1]

    def key(self):
        return (self.vertices[0], self.word)

    def code(self) -> str:
        return _fmt_vertex(self.vertices[0]) + self.word

    def edges(self):
        return list(zip(self.vertices, self.vertices[1:]))

    def position(self, v: Vertex) -> int | None:
        try:
            return self.vertices.index(v)
        except ValueError:
            return None

    def entry(self, i: int) -> str | None:
        """Direction the walk arrives from at index i ('N', 'W' or None)."""
        if i == 0:
            return None
        return "N" if self.word[i - 1] == "S" else "W"

    def exit(self, i: int) -> str | None:
        """Direction the walk leaves by at index i ('S', 'E' or None)."""
        if i == len(self.vertices) - 1:
            return None
        return self.word[i]

    def turns(self) -> list[int]:
        return [i for i in range(1, len(self.word)) if self.word[i] != self.word[i - 1]]

    def transpose_vertices(self):
        return [(-y, -x) for x, y in self.vertices]

    def __repr__(self):
        return f"{type(self).__name__}({self.code()})"


class Path(_Walk):
    """v0..vt with t >= 1, boundary endpoints, interior intermediates."""

    __slots__ = ()

    def __init__(self, vertices):
        super().__init__(vertices)
        if len(self.vertices) < 2:
            raise ShapeError("a path has at least one edge")

    @property
    def is_horizontal(self) -> bool:
        return set(self.word) == {"E"}

    @property
    def is_vertical(self) -> bool:
        return set(self.word) == {"S"}

    @property
    def is_essential(self) -> bool:
        return len(set(self.word)) == 2

    def transpose(self) -> "Path":
        return Path(self.transpose_vertices())

    def contains_edge(self, e) -> bool:
        i = self.position(e[0])
        return i is not None and i + 1 < len(self.vertices) and self.vertices[i + 1] == e[1]

    def sub(self, i: int, j: int) -> "Segment":
        return Segment(self.vertices[i : j + 1])


class Segment(_Walk):
    """South/East walk through interior vertices; may be a single vertex."""

    __slots__ = ()

    @property
    def is_lazy(self) -> bool:
        return len(self.vertices) == 1

    def transpose(self) -> "Segment":
        return Segment(self.transpose_vertices())

    def key(self):
        return (len(self.vertices), self.vertices[0], self.word)

    def contains(self, other: "Segment") -> bool:
        i = self.position(other.init)
        return i is not None and self.vertices[i : i + len(other)] == other.vertices

    def subsegments(self, mode: str = "SW") -> list["Segment"]:
        """SW-subsegments enter vertically and leave horizontally; NE the reverse.

        A missing edge at an end of the segment satisfies either condition.
        """
        if mode not in ("SW", "NE"):
            raise ValueError(f"mode must be 'SW' or 'NE', got {mode!r}")
        enter_ok, leave_ok = ("S", "E") if mode == "SW" else ("E", "S")
        n = len(self.vertices)
        starts = [i for i in range(n) if i == 0 or self.word[i - 1] == enter_ok]
        ends = [j for j in range(n) if j == n - 1 or self.word[j] == leave_ok]
        return [Segment(self.vertices[i : j + 1]) for i in starts for j in ends if i <= j]


def lazy(x: int, y: int) -> Segment:
    return Segment([(x, y)])


def compose(s: Segment, t: Segment, shape: "Shape | None" = None) -> Segment | None:
    """s followed by t when t starts one step South or East of where s ends."""
    if t.init not in (add(s.term, S), add(s.term, E)):
        return None
    u = Segment(s.vertices + t.vertices)
    if shape is not None and not all(v in shape.interior for v in u):
        return None
    return u


def bending_vector(seg: Segment) -> dict[Cell, int]:
    """Sum over the vertices of seg of +1 on the cells having v as SE or NW
    corner and -1 on the cells having v as SW or NE corner.  Zero entries
    are dropped."""
    out: dict[Cell, int] = {}
    for x, y in seg:
        for cell, sign in (((x - 1, y), 1), ((x, y - 1), 1), ((x, y), -1), ((x - 1, y - 1), -1)):
            out[cell] = out.get(cell, 0) + sign
    return {c: k for c, k in out.items() if k}


class Shape:
    def __init__(self, vertices):
        try:
            verts = frozenset((_as_int(x), _as_int(y)) for x, y in vertices)
        except (TypeError, ValueError) as exc:
            raise ShapeError(f"malformed vertex list: {exc}") from None
        if not verts:
            raise ShapeError("empty shape")
        self.vertices = verts
        self.interior = frozenset(
            v for v in verts
            if all((v[0] + dx, v[1] + dy) in verts for dx in (-1, 0, 1) for dy in (-1, 0, 1))
        )
        self.boundary = verts - self.interior
        if not self.is_connected:
            warnings.warn("shape is not connected", stacklevel=2)

    # construction -------------------------------------------------------

    @classmethod
    def from_cells(cls, cells) -> "Shape":
        cells = list(cells)
        if not cells:
            raise ShapeError("empty shape")
        return cls({(x + dx, y + dy) for x, y in cells for dx in (0, 1) for dy in (0, 1)})

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> "Shape":
        if rows < 1 or cols < 1:
            raise ShapeError("rectangle sides must be positive")
        return cls.from_cells((x, y) for x in range(cols) for y in range(rows))

    @classmethod
    def parse_ascii(cls, text: str) -> "Shape":
        rows = [ln.rstrip() for ln in text.splitlines()]
        while rows and not rows[-1]:
            rows.pop()
        while rows and not rows[0]:
            rows.pop(0)
        h = len(rows)
        cells = []
        for r, line in enumerate(rows):
            for c, ch in enumerate(line):
                if ch == "#":
                    cells.append((c, h - r - 1))
                elif ch != ".":
                    raise ShapeError(f"line {r + 1}: unexpected character {ch!r}")
        return cls.from_cells(cells)

    @classmethod
    def parse_json(cls, text: str) -> "Shape":
        try:
            data = json.loads(text)
            verts = data["vertices"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ShapeError(f"malformed shape JSON: {exc}") from None
        if not isinstance(verts, list) or not all(isinstance(v, list) and len(v) == 2 for v in verts):
            raise ShapeError("'vertices' must be a list of [x, y] pairs")
        return cls(verts)

    @classmethod
    def load(cls, path) -> "Shape":
        text = FilePath(path).read_text()
        if text.lstrip().startswith("{"):
            return cls.parse_json(text)
        return cls.parse_ascii(text)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in sorted(self.vertices)]}

    def to_ascii(self) -> str:
        cells = self.cells
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        lines = []
        for y in range(max(ys), min(ys) - 1, -1):
            lines.append("".join("#" if (x, y) in cells else "." for x in range(min(xs), max(xs) + 1)))
        return "\n".join(lines)

    # basic structure ----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Shape) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    def __repr__(self):
        return f"Shape({len(self.vertices)} vertices, {len(self.interior)} interior)"

    @cached_property
    def cells(self) -> frozenset:
        vs = self.vertices
        return frozenset(
            (x, y) for x, y in vs if (x + 1, y) in vs and (x, y + 1) in vs and (x + 1, y + 1) in vs
        )

    @cached_property
    def is_connected(self) -> bool:
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for d in (N, S, E, W):
                u = add(v, d)
                if u in self.vertices and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)

    def is_interior(self, v: Vertex) -> bool:
        return v in self.interior

    @cached_property
    def vertical_edges(self) -> list:
        """Pairs (upper, lower)."""
        return sorted((v, add(v, S)) for v in self.vertices if add(v, S) in self.vertices)

    @cached_property
    def horizontal_edges(self) -> list:
        """Pairs (left, right)."""
        return sorted((v, add(v, E)) for v in self.vertices if add(v, E) in self.vertices)

    @cached_property
    def interior_vertical_edges(self) -> list:
        return [e for e in self.vertical_edges if e[0] in self.interior or e[1] in self.interior]

    def se_corners(self) -> list[Vertex]:
        vs = self.vertices
        return sorted(v for v in vs if add(v, S) not in vs and add(v, E) not in vs)

    def without(self, v: Vertex) -> "Shape":
        rest = self.vertices - {v}
        if not rest:
            raise ShapeError("removing the last vertex")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return Shape(rest)

    def transpose(self) -> "Shape":
        """Reflection (x, y) -> (-y, -x); South and East steps swap."""
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return Shape((-y, -x) for x, y in self.vertices)

    # paths and segments -------------------------------------------------

    @cached_property
    def paths(self) -> list[Path]:
        vs, inner = self.vertices, self.interior
        out = []

        def extend(walk):
            last = walk[-1]
            for d in (E, S):
                nxt = add(last, d)
                if nxt not in vs:
                    continue
                if nxt in inner:
                    extend(walk + [nxt])
                else:
                    out.append(Path(walk + [nxt]))

        for v in self.boundary:
            extend([v])
        return sorted(out)

    @cached_property
    def essential_paths(self) -> list[Path]:
        return [p for p in self.paths if p.is_essential]

    @cached_property
    def cone_paths(self) -> list[Path]:
        return [p for p in self.paths if not p.is_essential]

    @cached_property
    def segments(self) -> list[Segment]:
        inner = self.interior
        out = []

        def extend(walk):
            out.append(Segment(walk))
            for d in (E, S):
                nxt = add(walk[-1], d)
                if nxt in inner:
                    extend(walk + [nxt])

        for v in inner:
            extend([v])
        return sorted(out)


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v:
        raise ShapeError(f"non-integer coordinate {v!r}")
    return int(v)


def _kissing_runs(p: Path, q: Path):
    """Segments along which p (entering West, leaving South) kisses q
    (entering North, leaving East)."""
    qpos = {v: j for j, v in enumerate(q.vertices)}
    pv, qv = p.vertices, q.vertices
    for i in range(1, len(pv) - 1):
        j = qpos.get(pv[i])
        if j is None or j == 0 or j == len(qv) - 1:
            continue
        if p.entry(i) != "W" or q.entry(j) != "N":
            continue
        a, b = i, j
        while a + 1 < len(pv) and b + 1 < len(qv) and pv[a + 1] == qv[b + 1]:
            a += 1
            b += 1
        if a + 1 == len(pv) or b + 1 == len(qv):
            continue
        if p.exit(a) == "S" and q.exit(b) == "E":
            yield Segment(pv[i : a + 1])


def kissing_segments(p: Path, q: Path) -> list[Segment]:
    return sorted(set(_kissing_runs(p, q)) | set(_kissing_runs(q, p)))


def is_kissing(p: Path, q: Path) -> bool:
    if p == q:
        return False
    return next(_kissing_runs(p, q), None) is not None or next(_kissing_runs(q, p), None) is not None


class KissingError(ValueError):
    pass


def compare_at_edge(e, p: Path, q: Path) -> int:
    """-1 if p precedes q in the order at edge e, +1 if q precedes p.

    Both paths must contain e and must not kiss."""
    i, j = p.position(e[0]), q.position(e[0])
    if i is None or j is None or not p.contains_edge(e) or not q.contains_edge(e):
        raise ValueError(f"both paths must contain the edge {e}")
    if p == q:
        raise ValueError("cannot compare a path with itself")
    pv, qv = p.vertices, q.vertices
    a, b = i, j
    while a > 0 and b > 0 and pv[a - 1] == qv[b - 1]:
        a -= 1
        b -= 1
    c, d = i + 1, j + 1
    while c + 1 < len(pv) and d + 1 < len(qv) and pv[c + 1] == qv[d + 1]:
        c += 1
        d += 1
    votes = set()
    if a > 0 and b > 0:
        votes.add(-1 if p.entry(a) == "N" else 1)
    if c + 1 < len(pv) and d + 1 < len(qv):
        votes.add(-1 if p.exit(c) == "S" else 1)
    if len(votes) != 1:
        if len(votes) == 2:
            raise KissingError(f"{p} and {q} kiss along their common segment at {e}")
        raise ValueError("paths are not comparable")  # unreachable for distinct paths
    return votes.pop()

"""The non-kissing complex of a shape, its flips, and the flip poset."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .grid import Path, Segment, Shape, W, S, add, compare_at_edge, is_kissing, kissing_segments
from .poset_kit import FinitePoset, Lattice


class Direction(enum.Enum):
    OUTGOING = "outgoing"  # facet -> flipped facet
    INCOMING = "incoming"


@dataclass(frozen=True)
class Facet:
    paths: tuple[Path, ...]

    @classmethod
    def of(cls, paths) -> "Facet":
        return cls(tuple(sorted(set(paths))))

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)

    def __contains__(self, p):
        return p in self.paths

    def key(self):
        return tuple(p.key() for p in self.paths)

    def codes(self) -> list[str]:
        return [p.code() for p in self.paths]

    def name(self) -> str:
        return "{" + " ".join(self.codes()) + "}"

    def replace(self, old: Path, new: Path) -> "Facet":
        return Facet.of([p for p in self.paths if p != old] + [new])


@dataclass(frozen=True)
class FlipResult:
    facet: Facet
    removed: Path
    added: Path
    segment: Segment
    direction: Direction


class FlipError(ValueError):
    pass


class NonKissingComplex:
    """Reduced complex on the essential paths; cones stay implicit."""

    def __init__(self, shape: Shape):
        self.shape = shape
        self.essential = list(shape.essential_paths)
        self.cones = list(shape.cone_paths)
        self.index = {p: i for i, p in enumerate(self.essential)}
        k = len(self.essential)
        self.compat = [0] * k  # bitmask of essential paths not kissing path i
        for i in range(k):
            for j in range(i + 1, k):
                if not is_kissing(self.essential[i], self.essential[j]):
                    self.compat[i] |= 1 << j
                    self.compat[j] |= 1 << i
        self.through = {}  # edge -> paths (essential or cone) using it
        for p in shape.paths:
            for e in p.edges():
                self.through.setdefault(e, []).append(p)
        self.cone_set = frozenset(self.cones)

    def mask(self, paths) -> int:
        m = 0
        for p in paths:
            m |= 1 << self.index[p]
        return m

    def facet_of_mask(self, mask: int) -> Facet:
        return Facet.of(self.essential[i] for i in range(len(self.essential)) if mask >> i & 1)

    def is_face(self, paths) -> bool:
        m = self.mask(paths)
        return all((self.compat[i] | 1 << i) & m == m for i in range(len(self.essential)) if m >> i & 1)

    def is_facet(self, paths) -> bool:
        m = self.mask(paths)
        if not self.is_face(paths):
            return False
        common = (1 << len(self.essential)) - 1
        for i in range(len(self.essential)):
            if m >> i & 1:
                common &= self.compat[i]
        return common & ~m == 0

    # --- extremes along an edge ---

    def _members(self, pathset, e):
        return [p for p in self.through.get(e, ()) if p in pathset or p in self.cone_set]

    def extreme_at_edge(self, pathset, e, side: str) -> Path:
        """Maximum ('top') or minimum ('bottom') at e among the given
        essential paths together with all cone paths."""
        members = self._members(pathset, e)
        if not members:
            raise ValueError(f"no path uses edge {e}")
        best = members[0]
        want = 1 if side == "top" else -1
        for q in members[1:]:
            if compare_at_edge(e, q, best) == want:
                best = q
        return best

    def tops(self, pathset) -> dict:
        return {e: self.extreme_at_edge(pathset, e, "top") for e in self.shape.vertical_edges}

    def bottoms(self, pathset) -> dict:
        return {e: self.extreme_at_edge(pathset, e, "bottom") for e in self.shape.horizontal_edges}

    # --- flips ---

    def initial_facet(self) -> Facet:
        """West-then-South hook through every vertical edge with an interior end."""
        out = []
        for u, v in self.shape.interior_vertical_edges:
            back = [u]
            while back[0] in self.shape.interior:
                back.insert(0, add(back[0], W))
            fwd = [v]
            while fwd[-1] in self.shape.interior:
                fwd.append(add(fwd[-1], S))
            p = Path(back + fwd)
            if p.is_essential:
                out.append(p)
        return Facet.of(out)

    def top_owner(self, facet: Facet) -> dict:
        """Path -> the vertical edge where it is on top."""
        owner = {}
        for e, t in self.tops(set(facet.paths)).items():
            if t in owner:
                raise FlipError("input is not a facet: a path is on top at two edges")
            owner[t] = e
        return owner

    def flip(self, facet: Facet, p: Path, owner=None) -> FlipResult:
        """Exchange p for the unique other path compatible with the rest."""
        if p not in facet:
            raise FlipError(f"{p} is not in the facet")
        if not p.is_essential:
            raise FlipError("cone paths cannot be flipped")
        full = set(facet.paths)
        if owner is None:
            owner = self.top_owner(facet)
        e_p = owner.get(p)
        if e_p is None:
            raise FlipError("input is not a facet: path is on top nowhere")
        rest = full - {p}
        r = self.extreme_at_edge(rest, e_p, "top")
        e_r = owner[r]
        i_p, i_r = r.position(e_p[0]), r.position(e_r[0])
        (e1, e2) = (e_p, e_r) if i_p < i_r else (e_r, e_p)
        v1, v2 = e1[1], e2[0]
        r_low = self.extreme_at_edge(rest, (add(v1, W), v1), "bottom")
        a, b = r.position(v2), r_low.position(v2)
        if b is None:
            raise FlipError("bottom path misses the turning vertex; input is not a facet")
        cand1 = Path(r.vertices[:a] + r_low.vertices[b:])
        cand2 = Path(r_low.vertices[:b] + r.vertices[a:])
        if cand1 == p:
            q = cand2
        elif cand2 == p:
            q = cand1
        else:
            raise FlipError("spliced paths do not recover the removed path")
        seg = Segment(r.vertices[r.position(v1) : a + 1])
        i = p.position(v1)
        direction = Direction.OUTGOING if p.entry(i) == "W" else Direction.INCOMING
        return FlipResult(facet.replace(p, q), p, q, seg, direction)

    def flip_candidates(self, facet: Facet, p: Path) -> list[Path]:
        """Every essential q != p with (facet - p) + q pairwise non-kissing."""
        common = (1 << len(self.essential)) - 1
        for x in facet:
            if x != p:
                common &= self.compat[self.index[x]]
        common &= ~self.mask(facet)
        return [self.essential[i] for i in range(len(self.essential)) if common >> i & 1]

    def flip_bruteforce(self, facet: Facet, p: Path) -> FlipResult:
        cands = self.flip_candidates(facet, p)
        if len(cands) != 1:
            raise FlipError(f"expected one replacement for {p}, found {len(cands)}")
        q = cands[0]
        segs = kissing_segments(p, q)
        if len(segs) != 1:
            raise FlipError(f"{p} and {q} kiss along {len(segs)} segments")
        seg = segs[0]
        i = p.position(seg.init)
        direction = Direction.OUTGOING if p.entry(i) == "W" else Direction.INCOMING
        return FlipResult(facet.replace(p, q), p, q, seg, direction)

    # --- enumeration ---

    def facets_by_flips(self, flip=None):
        """BFS from the initial facet; returns (facets, oriented edges)."""
        if flip is None:
            last = [None, None]  # the top-path map only depends on the facet

            def flip(f, p):
                if last[0] != f:
                    last[:] = [f, self.top_owner(f)]
                return self.flip(f, p, last[1])

        start = self.initial_facet()
        order = [start]
        seen = {start: 0}
        edges = {}
        queue = deque([start])
        while queue:
            f = queue.popleft()
            i = seen[f]
            for p in f:
                res = flip(f, p)
                g = res.facet
                if g not in seen:
                    seen[g] = len(order)
                    order.append(g)
                    queue.append(g)
                j = seen[g]
                if res.direction is Direction.OUTGOING:
                    edges[(i, j)] = res.segment
                else:
                    edges[(j, i)] = res.segment
        return order, edges

    def facets_by_cliques(self) -> list[Facet]:
        return [self.facet_of_mask(m) for m in maximal_cliques(self.compat)]

    def f_vector(self) -> tuple[int, ...]:
        counts = {}
        adj = self.compat

        def go(size, cand):
            counts[size] = counts.get(size, 0) + 1
            while cand:
                low = cand & -cand
                i = low.bit_length() - 1
                cand ^= low
                go(size + 1, cand & adj[i])

        go(0, (1 << len(self.essential)) - 1)
        return tuple(counts[k] for k in sorted(counts))


def maximal_cliques(adj: list[int]):
    """Bron-Kerbosch with pivoting over bitmask adjacency."""
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pu = p | x
        best, pivot = -1, 0
        while pu:
            low = pu & -pu
            u = low.bit_length() - 1
            pu ^= low
            c = bin(p & adj[u]).count("1")
            if c > best:
                best, pivot = c, u
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            bk(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low

    if adj:
        bk(0, (1 << len(adj)) - 1, 0)
    else:
        out.append(0)
    return out


@lru_cache(maxsize=64)
def complex_of(shape: Shape) -> NonKissingComplex:
    return NonKissingComplex(shape)


# ------------------------------------------------------------------ API


def initial_facet(shape: Shape) -> Facet:
    return complex_of(shape).initial_facet()


def top_bottom_at_edge(shape: Shape, facet: Facet, edge, side: str = "top") -> Path:
    if side not in ("top", "bottom"):
        raise ValueError("side must be 'top' or 'bottom'")
    return complex_of(shape).extreme_at_edge(set(facet.paths), tuple(edge), side)


def flip(shape: Shape, facet: Facet, path: Path) -> FlipResult:
    return complex_of(shape).flip(facet, path)


def enumerate_facets(shape: Shape, method: str = "flips") -> list[Facet]:
    c = complex_of(shape)
    if method == "flips":
        facets = c.facets_by_flips()[0]
    elif method == "cliques":
        facets = c.facets_by_cliques()
    else:
        raise ValueError("method must be 'flips' or 'cliques'")
    return sorted(facets, key=Facet.key)


def f_vector(shape: Shape) -> tuple[int, ...]:
    return complex_of(shape).f_vector()


@dataclass
class GridTamari:
    shape: Shape
    facets: list[Facet]
    poset: FinitePoset

    def lattice(self) -> Lattice:
        if not hasattr(self, "_lattice"):
            self._lattice = Lattice(self.poset)
        return self._lattice

    def index(self, facet: Facet) -> int:
        return self.poset.index(facet)

    def to_dict(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "facets": [f.codes() for f in self.facets],
            "flips": [[a, b, self.poset.labels[(a, b)].code()] for a, b in self.poset.covers],
        }


@lru_cache(maxsize=32)
def grid_tamari(shape: Shape) -> GridTamari:
    facets, edges = complex_of(shape).facets_by_flips()
    return GridTamari(shape, facets, FinitePoset(facets, list(edges), edges))

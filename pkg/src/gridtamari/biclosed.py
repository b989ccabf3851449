"""Biclosed sets of segments, the projections X -> X_down / X_up, and the
maps eta (sets to facets) and phi (facets to sets).

Sets of segments are int bit masks over `SegmentSystem.segments`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .grid import E, N, S, W, Path, Segment, Shape, add, compose
from .nkcomplex import Facet, GridTamari, grid_tamari
from .poset_kit import Congruence, FinitePoset


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SegmentSystem:
    def __init__(self, shape: Shape):
        self.shape = shape
        self.segments: list[Segment] = list(shape.segments)
        self.index = {s: i for i, s in enumerate(self.segments)}
        m = len(self.segments)
        self.full = (1 << m) - 1
        comps = []
        for i, s in enumerate(self.segments):
            for j, t in enumerate(self.segments):
                u = compose(s, t)
                if u is not None:
                    comps.append((i, j, self.index[u]))
        # a composite is longer than both parts, so one pass in length order closes
        comps.sort(key=lambda c: (len(self.segments[c[2]]), c))
        self.compositions = comps
        self.sw = [self.mask(s.subsegments("SW")) for s in self.segments]
        self.ne = [self.mask(s.subsegments("NE")) for s in self.segments]
        self.supersegments = [
            self.mask(t for t in self.segments if t.contains(s)) for s in self.segments
        ]

    def __len__(self):
        return len(self.segments)

    def mask(self, segs) -> int:
        m = 0
        for s in segs:
            m |= 1 << self.index[s]
        return m

    def decode(self, mask: int) -> list[Segment]:
        return [self.segments[i] for i in _bits(mask)]

    # --- closure ---

    def closure(self, mask: int) -> int:
        for i, j, k in self.compositions:
            if mask >> i & 1 and mask >> j & 1:
                mask |= 1 << k
        return mask

    def is_closed(self, mask: int) -> bool:
        return all(not (mask >> i & 1 and mask >> j & 1) or mask >> k & 1 for i, j, k in self.compositions)

    def is_biclosed(self, mask: int) -> bool:
        return self.is_closed(mask) and self.is_closed(self.full ^ mask)

    def join(self, x: int, y: int) -> int:
        return self.closure(x | y)

    def meet(self, x: int, y: int) -> int:
        return self.full ^ self.closure((self.full ^ x) | (self.full ^ y))

    # --- projections ---

    def down(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            if self.sw[i] & ~mask == 0:
                out |= 1 << i
        return out

    def up(self, mask: int) -> int:
        out = 0
        for i in range(len(self.segments)):
            if self.ne[i] & mask:
                out |= 1 << i
        return out

    def project(self, mask: int, direction: str) -> int:
        if direction == "down":
            return self.down(mask)
        if direction == "up":
            return self.up(mask)
        raise ValueError("direction must be 'down' or 'up'")

    def down_s(self, mask: int, s: Segment) -> int:
        """closure(X_down minus every segment containing s)."""
        return self.closure(self.down(mask) & ~self.supersegments[self.index[s]])

    # --- eta and phi ---

    def _has(self, mask: int, vertices) -> bool:
        i = self.index.get(Segment(vertices))
        return i is not None and bool(mask >> i & 1)

    def eta_paths(self, mask: int) -> list[Path]:
        """The path p_e for each vertical edge e with an interior endpoint."""
        inner = self.shape.interior
        out = []
        for u, v in self.shape.interior_vertical_edges:
            back = [u]
            while back[0] in inner:
                step = N if self._has(mask, back) else W
                back.insert(0, add(back[0], step))
            fwd = [v]
            while fwd[-1] in inner:
                step = E if self._has(mask, fwd) else S
                fwd.append(add(fwd[-1], step))
            out.append(Path(back + fwd))
        return out

    def eta(self, mask: int) -> Facet:
        return Facet.of(p for p in self.eta_paths(mask) if p.is_essential)

    def sw_parts(self, p: Path) -> int:
        """Segments p[v, v'] where p enters v from the North and leaves v' East."""
        n = len(p)
        starts = [i for i in range(1, n - 1) if p.entry(i) == "N"]
        ends = [j for j in range(1, n - 1) if p.exit(j) == "E"]
        return self.mask(p.sub(i, j) for i in starts for j in ends if i <= j)

    def phi(self, facet: Facet) -> int:
        m = 0
        for p in facet:
            m |= self.sw_parts(p)
        return self.closure(m)

    # --- transposition ---

    def transpose_mask(self, mask: int, other: "SegmentSystem") -> int:
        return other.mask(s.transpose() for s in self.decode(mask))


@lru_cache(maxsize=64)
def segment_system(shape: Shape) -> SegmentSystem:
    return SegmentSystem(shape)


def closure(shape: Shape, segs) -> frozenset:
    sysm = segment_system(shape)
    return frozenset(sysm.decode(sysm.closure(sysm.mask(segs))))


def is_biclosed(shape: Shape, segs) -> bool:
    sysm = segment_system(shape)
    return sysm.is_biclosed(sysm.mask(segs))


@dataclass
class BiclosedLattice:
    system: SegmentSystem
    masks: list[int]
    poset: FinitePoset
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.masks)}


@lru_cache(maxsize=32)
def enumerate_biclosed(shape: Shape) -> BiclosedLattice:
    """Breadth-first from the empty set, adding one segment at a time."""
    sysm = segment_system(shape)
    masks = [0]
    index = {0: 0}
    covers, labels = [], {}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for i in range(len(sysm)):
            if x >> i & 1:
                continue
            y = x | 1 << i
            if not sysm.is_biclosed(y):
                continue
            if y not in index:
                index[y] = len(masks)
                masks.append(y)
                queue.append(y)
            covers.append((index[x], index[y]))
            labels[(index[x], index[y])] = sysm.segments[i]
    return BiclosedLattice(sysm, masks, FinitePoset(masks, covers, labels))


def biclosed_bruteforce(shape: Shape) -> list[int]:
    sysm = segment_system(shape)
    return [m for m in range(sysm.full + 1) if sysm.is_biclosed(m)]


def bic_join(shape: Shape, x: int, y: int) -> int:
    return segment_system(shape).join(x, y)


def bic_meet(shape: Shape, x: int, y: int) -> int:
    return segment_system(shape).meet(x, y)


def project(shape: Shape, x: int, direction: str) -> int:
    return segment_system(shape).project(x, direction)


def eta(shape: Shape, x: int) -> Facet:
    return segment_system(shape).eta(x)


def phi(shape: Shape, facet: Facet) -> int:
    return segment_system(shape).phi(facet)


# ------------------------------------------------------------- quotient


@dataclass
class ThetaClass:
    bottom: int
    top: int
    facet: Facet
    members: list[int]

    def to_dict(self, sysm: SegmentSystem) -> dict:
        return {
            "bottom": [s.code() for s in sysm.decode(self.bottom)],
            "top": [s.code() for s in sysm.decode(self.top)],
            "facet": self.facet.codes(),
        }


@dataclass
class Quotient:
    bic: BiclosedLattice
    gt: GridTamari
    classes: list[ThetaClass]
    poset: FinitePoset  # classes ordered by inclusion of bottoms
    to_facet: list[int]  # class index -> index in gt
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def quotient_gt(shape: Shape) -> Quotient:
    """Group biclosed sets by X_down, order the groups, and compare with the
    flip poset through eta.  `checks` records each comparison."""
    bic = enumerate_biclosed(shape)
    sysm = bic.system
    gt = grid_tamari(shape)
    groups: dict[int, list[int]] = {}
    for x in bic.masks:
        groups.setdefault(sysm.down(x), []).append(x)
    bottoms = sorted(groups, key=lambda m: (bin(m).count("1"), m))
    classes = []
    checks = {"bottom_in_class": True, "interval": True, "eta_constant": True, "eta_separates": True}
    for b in bottoms:
        members = groups[b]
        top = sysm.up(b)
        if b not in members or top not in members:
            checks["bottom_in_class"] = False
        interval = [x for x in bic.masks if x & b == b and x & ~top == 0]
        if sorted(interval) != sorted(members):
            checks["interval"] = False
        facets = {sysm.eta(x) for x in members}
        if len(facets) != 1:
            checks["eta_constant"] = False
        classes.append(ThetaClass(b, top, sysm.eta(b), sorted(members)))
    if len({c.facet for c in classes}) != len(classes):
        checks["eta_separates"] = False
    q = FinitePoset.from_order(range(len(classes)), lambda i, j: classes[i].bottom & ~classes[j].bottom == 0)
    facet_index = {f: i for i, f in enumerate(gt.facets)}
    to_facet = [facet_index.get(c.facet, -1) for c in classes]
    checks["onto_facets"] = sorted(to_facet) == list(range(len(gt.facets)))
    checks["isomorphic"] = checks["onto_facets"] and sorted(
        (to_facet[a], to_facet[b]) for a, b in q.covers
    ) == gt.poset.covers
    checks["phi_eta"] = all(sysm.phi(c.facet) == c.bottom for c in classes)
    return Quotient(bic, gt, classes, q, to_facet, checks)


def theta_s(shape: Shape, s: Segment) -> Congruence:
    """Congruence on the flip poset identifying facets with equal phi(F)^(down s)."""
    sysm = segment_system(shape)
    gt = grid_tamari(shape)
    keys = [sysm.down_s(sysm.phi(f), s) for f in gt.facets]
    return Congruence(keys)


def join_irreducible_facet(shape: Shape, s: Segment) -> Facet:
    """eta of the SW-subsegments of s."""
    sysm = segment_system(shape)
    return sysm.eta(sysm.sw[sysm.index[s]])


def incoming_labels(shape: Shape, facet: Facet) -> dict:
    """Segments s whose removal from phi(F) stays biclosed, mapped to
    eta of the smaller set."""
    sysm = segment_system(shape)
    x = sysm.phi(facet)
    out = {}
    for i in _bits(x):
        y = x & ~(1 << i)
        if sysm.is_biclosed(y):
            out[sysm.segments[i]] = sysm.eta(y)
    return out


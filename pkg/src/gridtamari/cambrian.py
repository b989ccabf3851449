"""Triangulations of a polygon read off an orientation of a path quiver, and
the matching double-ribbon shape.

An orientation word has n-2 letters over {'>', '<'}; letter i (i = 2..n-1)
is '>' when the arrow goes v_{i-1} -> v_i and '<' when it goes v_i -> v_{i-1}.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .grid import E, N, S, W, Shape, add, is_kissing
from .nkcomplex import grid_tamari
from .poset_kit import FinitePoset


class OrientationError(ValueError):
    pass


def parse_orientation(word: str) -> str:
    word = word.replace("→", ">").replace("←", "<").strip()
    if any(ch not in "<>" for ch in word):
        raise OrientationError(f"orientation must use only '<' and '>': {word!r}")
    return word


def above_flags(word: str) -> list[bool]:
    """Whether w_0 .. w_{n+1} lie above the axis."""
    word = parse_orientation(word)
    n = len(word) + 2
    flags = [True] + [False] * n + [True]
    for i in range(2, n):
        flags[i] = word[i - 2] == ">"
    return flags


def polygon_from_orientation(word: str, variant: int = 0) -> list[tuple[Fraction, Fraction]]:
    """Points w_0 .. w_{n+1} in convex position, x(w_i) = i.

    Above points sit on a concave parabola, below points on a convex one;
    `variant` changes the curvature so slope comparisons can be cross-checked.
    """
    flags = above_flags(word)
    m = len(flags)
    mid = Fraction(m - 1, 2) + Fraction(variant, 7)
    big = (1 + variant) * m * m + 1
    pts = []
    for i, up in enumerate(flags):
        h = big - (1 + variant) * (i - mid) ** 2
        pts.append((Fraction(i), h if up else -h))
    return pts


def cyclic_order(word: str) -> list[int]:
    flags = above_flags(word)
    m = len(flags)
    below = [i for i in range(m) if not flags[i]]
    above = [i for i in range(m) if flags[i] and i not in (0, m - 1)]
    return [0] + below + [m - 1] + above[::-1]


def diagonals(word: str) -> list[tuple[int, int]]:
    cyc = cyclic_order(word)
    m = len(cyc)
    edges = {frozenset((cyc[i], cyc[(i + 1) % m])) for i in range(m)}
    return sorted((a, b) for a, b in combinations(range(m), 2) if frozenset((a, b)) not in edges)


def crosses(d1, d2, word: str, pos=None) -> bool:
    if pos is None:
        pos = {w: i for i, w in enumerate(cyclic_order(word))}
    a, b = sorted((pos[d1[0]], pos[d1[1]]))
    c, d = sorted((pos[d2[0]], pos[d2[1]]))
    return a < c < b < d or c < a < d < b


def triangulations(word: str) -> list[frozenset]:
    """All triangulations, each a frozenset of diagonals (i, j), i < j."""
    cyc = cyclic_order(word)
    m = len(cyc)

    def tri(a, b):
        if b - a < 2:
            return [frozenset()]
        out = []
        for c in range(a + 1, b):
            here = set()
            if c > a + 1:
                here.add(tuple(sorted((cyc[a], cyc[c]))))
            if c < b - 1:
                here.add(tuple(sorted((cyc[c], cyc[b]))))
            for left in tri(a, c):
                for right in tri(c, b):
                    out.append(frozenset(here) | left | right)
        return out

    return sorted(tri(0, m - 1), key=sorted)


def is_convex(word: str, variant: int = 0) -> bool:
    """Every consecutive triple of the cyclic order turns the same way."""
    pts = polygon_from_orientation(word, variant)
    cyc = cyclic_order(word)
    m = len(cyc)
    signs = set()
    for i in range(m):
        (ax, ay), (bx, by), (cx, cy) = (pts[cyc[(i + k) % m]] for k in range(3))
        cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
        signs.add(cross > 0 if cross else None)
    return len(signs) == 1 and None not in signs


def slope(d, pts) -> Fraction:
    (x1, y1), (x2, y2) = pts[d[0]], pts[d[1]]
    return (y2 - y1) / (x2 - x1)


def cambrian_poset(word: str, variant: int = 0) -> FinitePoset:
    """Triangulations; T below T' when they differ by one diagonal and the
    diagonal leaving has the smaller slope."""
    pts = polygon_from_orientation(word, variant)
    tris = triangulations(word)
    index = {t: i for i, t in enumerate(tris)}
    diags = diagonals(word)
    pos = {w: i for i, w in enumerate(cyclic_order(word))}
    covers, labels = [], {}
    for t in tris:
        for d in t:
            rest = t - {d}
            for d2 in diags:
                if d2 == d or d2 in t:
                    continue
                if all(not crosses(d2, x, word, pos) for x in rest):
                    t2 = rest | {d2}
                    if slope(d, pts) < slope(d2, pts):
                        covers.append((index[t], index[t2]))
                        labels[(index[t], index[t2])] = (d, d2)
    return FinitePoset(tris, covers, labels)


# ---------------------------------------------------------------- ribbon


def ribbon(word: str):
    """The double ribbon with interior vertices v_1 .. v_{n-1} and boundary
    labels u_i (path starts) and u'_j (path ends).

    Returns (shape, interior list, starts, ends) where starts maps a vertex to
    i and ends maps a vertex to j.
    """
    word = parse_orientation(word)
    n = len(word) + 2
    vs = [(0, 0)]
    for ch in word:
        vs.append(add(vs[-1], S if ch == ">" else E))
    cells = {(x + dx, y + dy) for x, y in vs for dx in (-1, 0) for dy in (-1, 0)}
    shape = Shape.from_cells(cells)
    if sorted(shape.interior) != sorted(vs):
        raise OrientationError("ribbon has unexpected interior vertices")
    starts = {add(vs[0], W): 0, add(vs[0], N): 1}
    ends = {add(vs[-1], E): n + 1, add(vs[-1], S): n}
    for i in range(2, n):
        prev, cur = vs[i - 2], vs[i - 1]  # v_{i-1}, v_i
        if word[i - 2] == ">":
            starts[add(cur, W)] = i
            ends[add(prev, E)] = i
        else:
            starts[add(cur, N)] = i
            ends[add(prev, S)] = i
    return shape, vs, starts, ends


def tau(word: str) -> dict:
    """Essential path of the ribbon -> diagonal (i, j) joining w_i and w_j."""
    shape, _, starts, ends = ribbon(word)
    out = {}
    for p in shape.essential_paths:
        i, j = starts.get(p.init), ends.get(p.term)
        if i is None or j is None:
            raise OrientationError(f"{p} has an unlabelled endpoint")
        out[p] = (min(i, j), max(i, j))
    return out


def tau_isomorphism(word: str):
    """Compare the flip poset of the ribbon with the Cambrian poset.

    Returns (ok, details) where details holds element counts and the
    first mismatch, if any."""
    shape, *_ = ribbon(word)
    t = tau(word)
    diags = set(diagonals(word))
    details = {"paths": len(t), "diagonals": len(diags)}
    if sorted(t.values()) != sorted(diags):
        details["mismatch"] = "paths and diagonals are not in bijection"
        return False, details
    ess = list(t)
    for p, q in combinations(ess, 2):
        if is_kissing(p, q) != crosses(t[p], t[q], word):
            details["mismatch"] = f"kissing and crossing disagree on {p}, {q}"
            return False, details
    gt = grid_tamari(shape)
    camb = cambrian_poset(word)
    other = cambrian_poset(word, variant=1)
    details["elements"] = camb.n
    if camb.covers != other.covers:
        details["mismatch"] = "cover relation depends on the chosen coordinates"
        return False, details
    cindex = {tri: i for i, tri in enumerate(camb.elements)}
    try:
        mapping = [cindex[frozenset(t[p] for p in f)] for f in gt.facets]
    except KeyError:
        details["mismatch"] = "a facet does not map to a triangulation"
        return False, details
    if sorted(mapping) != list(range(camb.n)):
        details["mismatch"] = "facets do not cover all triangulations"
        return False, details
    image = sorted((mapping[a], mapping[b]) for a, b in gt.poset.covers)
    if image != camb.covers:
        details["mismatch"] = "cover relations differ"
        return False, details
    return True, details

"""k-subsets of {1..n}, non-crossing families, and the rectangle dictionary."""
from __future__ import annotations

from itertools import combinations

from .grid import Path, Shape, is_kissing
from .nkcomplex import Direction, Facet, maximal_cliques
from .poset_kit import FinitePoset


def subset(s) -> tuple[int, ...]:
    """Normalise '145', [1, 4, 5] or {1, 4, 5} to a sorted tuple."""
    if isinstance(s, str):
        if not s.isdigit():
            raise ValueError(f"not a digit string: {s!r}")
        s = [int(ch) for ch in s]
    t = tuple(sorted(int(x) for x in s))
    if len(set(t)) != len(t):
        raise ValueError(f"repeated element in {s!r}")
    return t


def render(s) -> str:
    return "".join(str(x) for x in subset(s)) if max(subset(s), default=0) < 10 else ",".join(map(str, subset(s)))


def _crossing_positions(a, b):
    """Indices t with a_t < b_t < a_{t+1} < b_{t+1} on the differences."""
    aa = sorted(set(a) - set(b))
    bb = sorted(set(b) - set(a))
    return [t for t in range(len(aa) - 1) if aa[t] < bb[t] < aa[t + 1] < bb[t + 1]]


def is_crossing(a, b) -> bool:
    a, b = subset(a), subset(b)
    if len(a) != len(b):
        raise ValueError(f"subsets of different sizes: {render(a)}, {render(b)}")
    return bool(_crossing_positions(a, b) or _crossing_positions(b, a))


def rectangle(k: int, n: int) -> Shape:
    """k rows and n-k columns of cells, NW corner at (0, k)."""
    return Shape.rectangle(k, n - k)


def subset_to_path(s, k: int, n: int) -> Path | None:
    """Walk NW to SE with South steps at the positions in s, then keep the
    part whose inner vertices are interior.  None for the two subsets whose
    walk never meets the interior."""
    s = subset(s)
    if len(s) != k or (s and (s[0] < 1 or s[-1] > n)):
        raise ValueError(f"{s} is not a {k}-subset of 1..{n}")
    x, y = 0, k
    walk = [(x, y)]
    for i in range(1, n + 1):
        if i in s:
            y -= 1
        else:
            x += 1
        walk.append((x, y))
    inner = [i for i, (x, y) in enumerate(walk) if 0 < x < n - k and 0 < y < k]
    if not inner:
        return None
    return Path(walk[inner[0] - 1 : inner[-1] + 2])


def path_to_subset(p: Path, k: int, n: int) -> tuple[int, ...]:
    (x0, y0), (x1, y1) = p.init, p.term
    if y0 == k:
        head = "E" * x0
    elif x0 == 0:
        head = "S" * (k - y0)
    else:
        raise ValueError(f"{p} does not start on the North or West side")
    if y1 == 0:
        tail = "E" * (n - k - x1)
    elif x1 == n - k:
        tail = "S" * y1
    else:
        raise ValueError(f"{p} does not end on the South or East side")
    word = head + p.word + tail
    if len(word) != n or word.count("S") != k:
        raise ValueError(f"{p} does not fit the {k} x {n - k} rectangle")
    return tuple(i + 1 for i, ch in enumerate(word) if ch == "S")


def lex_orientation(f1, f2) -> Direction:
    """Orientation of the exchange f1 - {I} + {J}: OUTGOING when the pair
    {i_t, i_t+1} at the crossing comes first lexicographically."""
    f1 = {subset(x) for x in f1}
    f2 = {subset(x) for x in f2}
    only1, only2 = f1 - f2, f2 - f1
    if len(only1) != 1 or len(only2) != 1:
        raise ValueError("families do not differ by a single exchange")
    i, j = only1.pop(), only2.pop()
    fwd, back = _crossing_positions(i, j), _crossing_positions(j, i)
    if len(fwd) + len(back) != 1:
        raise ValueError(f"{render(i)} and {render(j)} do not cross exactly once")
    return Direction.OUTGOING if fwd else Direction.INCOMING


def grassmann_tamari(k: int, n: int):
    """Flip poset built from subsets alone: maximal non-crossing families of
    the subsets that cross something, oriented lexicographically.

    Returns (families, FinitePoset) with families as sorted tuples of subsets.
    """
    subs = list(combinations(range(1, n + 1), k))
    live = [s for s in subs if any(is_crossing(s, t) for t in subs)]
    m = len(live)
    adj = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if not is_crossing(live[a], live[b]):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    fams = sorted(tuple(live[i] for i in range(m) if c >> i & 1) for c in maximal_cliques(adj))
    index = {frozenset(f): i for i, f in enumerate(fams)}
    covers, labels = [], {}
    for i, f in enumerate(fams):
        fs = frozenset(f)
        for x in f:
            rest = fs - {x}
            for y in live:
                if y == x or y in fs:
                    continue
                if all(not is_crossing(y, z) for z in rest):
                    j = index[rest | {y}]
                    if lex_orientation(f, fams[j]) is Direction.OUTGOING:
                        covers.append((i, j))
                        pos = _crossing_positions(x, y)[0]
                        dx = sorted(set(x) - set(y))
                        labels[(i, j)] = (dx[pos], dx[pos + 1])
    return fams, FinitePoset(fams, covers, labels)


def rectangle_facet_subsets(facet: Facet, k: int, n: int) -> tuple:
    return tuple(sorted(path_to_subset(p, k, n) for p in facet))


def facet_from_subsets(family, k: int, n: int) -> Facet:
    return Facet.of(subset_to_path(s, k, n) for s in family)


def kissing_agrees_with_crossing(k: int, n: int):
    """Pairs of non-degenerate subsets where crossing and kissing disagree."""
    subs = [s for s in combinations(range(1, n + 1), k) if subset_to_path(s, k, n) is not None]
    bad = []
    for a, b in combinations(subs, 2):
        if is_crossing(a, b) != is_kissing(subset_to_path(a, k, n), subset_to_path(b, k, n)):
            bad.append((a, b))
    return bad


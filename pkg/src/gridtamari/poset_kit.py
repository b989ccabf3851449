"""Finite posets given by cover relations, and lattice-theoretic checks."""
from __future__ import annotations

import json
from collections import defaultdict, deque

import networkx as nx
import numpy as np


class PosetError(ValueError):
    pass


class NotALattice(PosetError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Elements 0..n-1 (with payloads in `elements`) and cover pairs (i, j), i below j.

    `labels` maps a cover pair to its label.
    """

    def __init__(self, elements, covers, labels=None, check=True):
        self.elements = list(elements)
        n = self.n = len(self.elements)
        self.covers = sorted(set((int(a), int(b)) for a, b in covers))
        self.labels = dict(labels or {})
        self.upper = [[] for _ in range(n)]
        self.lower = [[] for _ in range(n)]
        for a, b in self.covers:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise PosetError(f"bad cover pair {(a, b)}")
            self.upper[a].append(b)
            self.lower[b].append(a)
        self.topo = self._toposort()
        self.rank_of = [0] * n
        for pos, x in enumerate(self.topo):
            self.rank_of[x] = pos
        # up/down sets as masks over topological positions
        up = [0] * n
        for x in reversed(self.topo):
            m = 1 << self.rank_of[x]
            for y in self.upper[x]:
                m |= up[y]
            up[x] = m
        down = [0] * n
        for x in self.topo:
            m = 1 << self.rank_of[x]
            for y in self.lower[x]:
                m |= down[y]
            down[x] = m
        self._up, self._down = up, down
        if check:
            for a, b in self.covers:
                for c in self.upper[a]:
                    if c != b and self.leq(c, b):
                        raise PosetError(f"cover {(a, b)} is implied by {(a, c)}; not a Hasse diagram")

    def _toposort(self):
        indeg = [len(l) for l in self.lower]
        queue = deque(i for i in range(self.n) if indeg[i] == 0)
        out = []
        while queue:
            x = queue.popleft()
            out.append(x)
            for y in self.upper[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if len(out) != self.n:
            stuck = next(i for i in range(self.n) if indeg[i] > 0)
            raise PosetError(f"cover relation has a cycle through element {stuck}")
        return out

    # --- order queries ---

    def leq(self, a: int, b: int) -> bool:
        return bool(self._up[a] >> self.rank_of[b] & 1)

    def up_set(self, a: int) -> list[int]:
        return sorted(self.topo[p] for p in _bits(self._up[a]))

    def down_set(self, a: int) -> list[int]:
        return sorted(self.topo[p] for p in _bits(self._down[a]))

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if not self.lower[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not self.upper[i]]

    def label(self, a: int, b: int):
        return self.labels.get((a, b))

    def index(self, element) -> int:
        if not hasattr(self, "_index"):
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index[element]

    def dual(self) -> "FinitePoset":
        return FinitePoset(
            self.elements,
            [(b, a) for a, b in self.covers],
            {(b, a): l for (a, b), l in self.labels.items()},
            check=False,
        )

    @classmethod
    def from_order(cls, elements, leq) -> "FinitePoset":
        """Build from a comparison function by transitive reduction."""
        elements = list(elements)
        n = len(elements)
        above = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and leq(elements[i], elements[j]):
                    above[i] |= 1 << j
        covers = []
        for i in range(n):
            implied = 0
            for j in _bits(above[i]):
                implied |= above[j]
            covers.extend((i, j) for j in _bits(above[i] & ~implied))
        return cls(elements, covers)

    def induced(self, subset) -> "FinitePoset":
        sub = sorted(subset)
        return FinitePoset.from_order(sub, self.leq)

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.covers)
        return g

    # --- export ---

    def to_dict(self, name=str, label=str) -> dict:
        return {
            "elements": [name(e) for e in self.elements],
            "covers": [[a, b, label(self.labels[(a, b)]) if (a, b) in self.labels else ""] for a, b in self.covers],
        }

    def to_json(self, name=str, label=str) -> str:
        return json.dumps(self.to_dict(name, label), indent=1)

    @classmethod
    def from_json(cls, text: str) -> "FinitePoset":
        data = json.loads(text)
        labels = {(a, b): l for a, b, l in data["covers"] if l != ""}
        return cls(data["elements"], [(a, b) for a, b, _ in data["covers"]], labels)

    def to_dot(self, name=str, label=str) -> str:
        lines = ["digraph {"]
        for i, e in enumerate(self.elements):
            lines.append(f'  "{name(e)}";')
        for a, b in self.covers:
            attr = ""
            if (a, b) in self.labels:
                attr = f' [label="{label(self.labels[(a, b)])}"]'
            lines.append(f'  "{name(self.elements[a])}" -> "{name(self.elements[b])}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def is_isomorphic(p: FinitePoset, q: FinitePoset) -> bool:
    if p.n != q.n or len(p.covers) != len(q.covers):
        return False
    return nx.is_isomorphic(p.digraph(), q.digraph())


def check_isomorphism(p: FinitePoset, q: FinitePoset, mapping) -> bool:
    """Does i -> mapping[i] carry the covers of p exactly onto those of q?"""
    m = [mapping[i] for i in range(p.n)]
    if sorted(m) != list(range(q.n)):
        return False
    return sorted((m[a], m[b]) for a, b in p.covers) == q.covers


# ---------------------------------------------------------------- lattices


class Lattice:
    """A poset with full join and meet tables."""

    def __init__(self, poset: FinitePoset):
        self.poset = p = poset
        n = p.n
        if n == 0:
            raise NotALattice("empty poset")
        mins, maxs = p.minimal(), p.maximal()
        if len(mins) != 1:
            raise NotALattice("no least element", tuple(mins[:2]))
        if len(maxs) != 1:
            raise NotALattice("no greatest element", tuple(maxs[:2]))
        self.bottom, self.top = mins[0], maxs[0]
        topo, up, down = p.topo, p._up, p._down
        join = np.empty((n, n), dtype=np.int32)
        meet = np.empty((n, n), dtype=np.int32)
        for x in range(n):
            for y in range(x, n):
                u = up[x] & up[y]
                z = topo[(u & -u).bit_length() - 1]
                if up[z] != u:
                    raise NotALattice(f"elements {x} and {y} have no join", (x, y))
                d = down[x] & down[y]
                w = topo[d.bit_length() - 1]
                if down[w] != d:
                    raise NotALattice(f"elements {x} and {y} have no meet", (x, y))
                join[x, y] = join[y, x] = z
                meet[x, y] = meet[y, x] = w
        self.join_table, self.meet_table = join, meet

    @property
    def n(self):
        return self.poset.n

    def join(self, x, y) -> int:
        return int(self.join_table[x, y])

    def meet(self, x, y) -> int:
        return int(self.meet_table[x, y])

    def join_irreducibles(self) -> list[int]:
        return [i for i in range(self.n) if len(self.poset.lower[i]) == 1]

    def meet_irreducibles(self) -> list[int]:
        return [i for i in range(self.n) if len(self.poset.upper[i]) == 1]

    def dual(self) -> "Lattice":
        return Lattice(self.poset.dual())


def lattice_ops(poset: FinitePoset) -> Lattice:
    """Join/meet tables; raises NotALattice carrying a witness pair."""
    return Lattice(poset)


def is_lattice(poset: FinitePoset):
    try:
        Lattice(poset)
    except NotALattice as exc:
        return False, exc.witness
    return True, None


def local_lattice_witness(poset: FinitePoset):
    """Local test for bounded posets: every two upper covers of a common
    element need a join.  Returns None or a failing triple (z, x, y)."""
    if len(poset.minimal()) != 1 or len(poset.maximal()) != 1:
        return ("unbounded",)
    topo, up = poset.topo, poset._up
    for z in range(poset.n):
        ups = poset.upper[z]
        for a in range(len(ups)):
            for b in range(a + 1, len(ups)):
                x, y = ups[a], ups[b]
                u = up[x] & up[y]
                w = topo[(u & -u).bit_length() - 1]
                if up[w] != u:
                    return (z, x, y)
    return None


def semidistributivity_witness(lat: Lattice):
    """None when semidistributive; otherwise ('meet'|'join', x, y, z)."""
    J, M = lat.join_table, lat.meet_table
    for kind, A, B in (("meet", M, J), ("join", J, M)):
        # A(x,z) == A(y,z)  must imply  A(B(x,y), z) == A(x,z)
        for x in range(lat.n):
            row = A[x]
            same = A == row
            target = A[B[x]] == row
            bad = same & ~target
            if bad.any():
                y, z = map(int, np.argwhere(bad)[0])
                return (kind, x, y, z)
    return None


def is_semidistributive(lat: Lattice) -> bool:
    return semidistributivity_witness(lat) is None


def irreducibles(lat: Lattice):
    return lat.join_irreducibles(), lat.meet_irreducibles()


# ------------------------------------------------------------- congruences


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


class Congruence:
    """A partition of the elements of a lattice, stored as a block id per element."""

    def __init__(self, blocks):
        relabel = {}
        self.block = tuple(relabel.setdefault(b, len(relabel)) for b in blocks)

    @classmethod
    def from_classes(cls, n, classes) -> "Congruence":
        blocks = list(range(n))
        for k, cl in enumerate(classes):
            for x in cl:
                blocks[x] = n + k
        return cls(blocks)

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.block == other.block

    def __hash__(self):
        return hash(self.block)

    def __le__(self, other):
        """Refinement: every class of self lies in a class of other."""
        seen = {}
        for a, b in zip(self.block, other.block):
            if seen.setdefault(a, b) != b:
                return False
        return True

    @property
    def classes(self) -> list[list[int]]:
        out = defaultdict(list)
        for x, b in enumerate(self.block):
            out[b].append(x)
        return [out[b] for b in sorted(out)]

    def same(self, a, b) -> bool:
        return self.block[a] == self.block[b]

    def contracted_covers(self, poset: FinitePoset) -> list:
        return [c for c in poset.covers if self.same(*c)]

    def is_trivial(self) -> bool:
        return len(set(self.block)) == len(self.block)

    def join(self, other: "Congruence") -> "Congruence":
        uf = _UnionFind(len(self.block))
        for cong in (self, other):
            first = {}
            for x, b in enumerate(cong.block):
                uf.union(first.setdefault(b, x), x)
        return Congruence([uf.find(x) for x in range(len(self.block))])

    def quotient(self, lat: Lattice) -> FinitePoset:
        """Classes ordered by their bottoms; elements are sorted member lists."""
        classes = self.classes
        bottoms = [min(cl, key=lambda x: lat.poset.rank_of[x]) for cl in classes]
        return FinitePoset.from_order(range(len(classes)), lambda i, j: lat.poset.leq(bottoms[i], bottoms[j]))


def congruence_generated(lat: Lattice, pairs) -> Congruence:
    """Smallest congruence identifying each given pair."""
    n = lat.n
    J, M = lat.join_table, lat.meet_table
    uf = _UnionFind(n)
    work = list(pairs)
    while work:
        a, b = work.pop()
        if not uf.union(a, b):
            continue
        for T in (J, M):
            ta, tb = T[a], T[b]
            diff = ta != tb
            work.extend(zip(ta[diff].tolist(), tb[diff].tolist()))
    return Congruence([uf.find(x) for x in range(n)])


def congruence_interval_witness(lat: Lattice, theta: Congruence):
    """Checks that classes are intervals and that the maps to class bottoms and
    tops preserve order.  Returns None or a description of the failure."""
    p = lat.poset
    lo, hi = {}, {}
    for cl in theta.classes:
        bot = cl[0]
        top = cl[0]
        for x in cl[1:]:
            bot = lat.meet(bot, x)
            top = lat.join(top, x)
        if not theta.same(bot, cl[0]) or not theta.same(top, cl[0]):
            return ("class not closed under meet/join", cl)
        interval = [x for x in range(lat.n) if p.leq(bot, x) and p.leq(x, top)]
        if sorted(interval) != sorted(cl):
            return ("class is not an interval", cl)
        for x in cl:
            lo[x], hi[x] = bot, top
    for a, b in p.covers:
        if not p.leq(lo[a], lo[b]) or not p.leq(hi[a], hi[b]):
            return ("projection not order preserving", (a, b))
    return None


def congruence_from_cover(lat: Lattice, cover) -> Congruence:
    cover = tuple(cover)
    if cover[1] not in lat.poset.upper[cover[0]]:
        raise PosetError(f"{cover} is not a cover")
    theta = congruence_generated(lat, [cover])
    bad = congruence_interval_witness(lat, theta)
    if bad is not None:
        raise PosetError(f"generated relation fails the interval test: {bad}")
    return theta


def congruence_well_defined(lat: Lattice, theta: Congruence) -> bool:
    """Join and meet of classes do not depend on representatives."""
    classes = theta.classes
    for ca in classes:
        for cb in classes:
            js = {theta.block[lat.join(a, b)] for a in ca for b in cb}
            ms = {theta.block[lat.meet(a, b)] for a in ca for b in cb}
            if len(js) > 1 or len(ms) > 1:
                return False
    return True


class CongruenceLattice:
    """Join-irreducible congruences con(j_*, j) with their forcing order."""

    def __init__(self, lat: Lattice):
        self.lattice = lat
        p = lat.poset
        self._by_cover = {}
        self.irreducibles: list[Congruence] = []
        self.source = []  # a join-irreducible element generating each
        seen = set()
        for j in lat.join_irreducibles():
            theta = self.of_cover((p.lower[j][0], j))
            if theta not in seen:
                seen.add(theta)
                self.irreducibles.append(theta)
                self.source.append(j)
        k = len(self.irreducibles)
        self.forcing = FinitePoset.from_order(
            range(k), lambda i, j: self.irreducibles[i] <= self.irreducibles[j]
        )

    def of_cover(self, cover) -> Congruence:
        cover = tuple(cover)
        if cover not in self._by_cover:
            self._by_cover[cover] = congruence_from_cover(self.lattice, cover)
        return self._by_cover[cover]

    def count(self) -> int:
        return len(order_ideals(self.forcing))

    def count_by_joins(self) -> int:
        """Number of distinct joins of sets of join-irreducible congruences."""
        bottom = Congruence(range(self.lattice.n))
        found = {bottom}
        frontier = [bottom]
        while frontier:
            nxt = []
            for c in frontier:
                for t in self.irreducibles:
                    d = c.join(t)
                    if d not in found:
                        found.add(d)
                        nxt.append(d)
            frontier = nxt
        return len(found)

    def is_congruence_uniform(self) -> bool:
        """j -> con(j_*, j) and m -> con(m, m^*) are both bijections onto
        the join-irreducible congruences."""
        p = self.lattice.poset
        ji = self.lattice.join_irreducibles()
        mi = self.lattice.meet_irreducibles()
        k = len(self.irreducibles)
        from_m = {self.of_cover((m, p.upper[m][0])) for m in mi}
        return len(ji) == k and len(mi) == k and from_m == set(self.irreducibles)


def congruence_lattice(lat: Lattice) -> CongruenceLattice:
    return CongruenceLattice(lat)


# ---------------------------------------------------------- order ideals


def order_ideals(poset: FinitePoset) -> list[frozenset]:
    order = poset.topo
    out = []

    def go(k, chosen):
        if k == len(order):
            out.append(frozenset(chosen))
            return
        x = order[k]
        go(k + 1, chosen)
        if all(y in chosen for y in poset.lower[x]):
            chosen.add(x)
            go(k + 1, chosen)
            chosen.discard(x)

    go(0, set())
    return out


def ideal_lattice(poset: FinitePoset) -> FinitePoset:
    ideals = sorted(order_ideals(poset), key=lambda s: (len(s), sorted(s)))
    index = {s: i for i, s in enumerate(ideals)}
    covers = []
    for s in ideals:
        for x in range(poset.n):
            if x not in s and all(y in s for y in poset.lower[x]):
                covers.append((index[s], index[s | {x}]))
    return FinitePoset(ideals, covers)


# ---------------------------------------------------------------- doubling


def doubling(poset: FinitePoset, subset, new_label=None) -> FinitePoset:
    """Double `subset` (a convex set): keep the down-set of C in copy 0 and
    C together with everything outside that down-set in copy 1.

    Covers inside one copy inherit labels; covers (x,0) < (x,1) get new_label.
    Elements of the result are pairs (original element, 0 or 1).
    """
    subset = set(subset)
    for a in subset:
        for b in subset:
            if poset.leq(a, b):
                gap = set(poset.up_set(a)) & set(poset.down_set(b))
                if not gap <= subset:
                    raise PosetError(f"subset is not order-convex: misses {sorted(gap - subset)[0]}")
    below = set()
    for c in subset:
        below.update(poset.down_set(c))
    pairs = [(x, 0) for x in sorted(below)] + [(x, 1) for x in range(poset.n) if x not in below or x in subset]
    base = FinitePoset.from_order(pairs, lambda a, b: a[1] <= b[1] and poset.leq(a[0], b[0]))
    labels = {}
    for i, j in base.covers:
        (x, a), (y, b) = pairs[i], pairs[j]
        if x == y:
            labels[(i, j)] = new_label
        elif (x, y) in poset.labels:
            labels[(i, j)] = poset.labels[(x, y)]
    return FinitePoset([(poset.elements[x], a) for x, a in pairs], base.covers, labels)


# ------------------------------------------------------------- CN labels


def _maximal_chains(poset: FinitePoset, lo: int, hi: int, through: int):
    """Maximal chains of [lo, hi] whose second element is `through`."""
    out = []

    def go(chain):
        last = chain[-1]
        if last == hi:
            out.append(list(chain))
            return
        for y in poset.upper[last]:
            if poset.leq(y, hi):
                chain.append(y)
                go(chain)
                chain.pop()

    go([lo, through])
    return out


def _cn_witness_one(lat: Lattice, lab, less):
    p = lat.poset
    for z in range(p.n):
        ups = p.upper[z]
        for x in ups:
            for y in ups:
                if x == y:
                    continue
                t = lat.join(x, y)
                c1s = _maximal_chains(p, z, t, x)
                c2s = _maximal_chains(p, z, t, y)
                lx, ly = lab(z, x), lab(z, y)
                for c1 in c1s:
                    steps = list(zip(c1, c1[1:]))
                    ls = [lab(a, b) for a, b in steps]
                    if len(set(ls)) != len(ls):
                        return ("CN3", z, x, y, c1)
                    if lab(c1[-2], t) != ly:
                        return ("CN1", z, x, y, c1)
                    for (a, b), l in zip(steps[1:-1], ls[1:-1]):
                        if not (less(lx, l) and less(ly, l)):
                            return ("CN2", z, x, y, (a, b))
                for c2 in c2s:
                    if lab(c2[-2], t) != lx:
                        return ("CN1", z, y, x, c2)
    return None


def check_cn_labeling(lat: Lattice, labels=None, order=None):
    """None if the cover labeling satisfies the three CN conditions on the
    lattice and on its dual, otherwise a witness tuple.

    `labels` defaults to the poset's own cover labels; `order` is a strict
    order on labels, either a callable less(a, b) or a FinitePoset whose
    elements are the labels."""
    p = lat.poset
    labels = p.labels if labels is None else labels
    if order is None:
        raise ValueError("a label order is required")
    if isinstance(order, FinitePoset):
        lp = order

        def less(a, b):
            return a != b and lp.leq(lp.index(a), lp.index(b))
    else:
        less = order
    missing = [c for c in p.covers if c not in labels]
    if missing:
        return ("unlabelled", missing[0])
    w = _cn_witness_one(lat, lambda a, b: labels[(a, b)], less)
    if w is not None:
        return w
    w = _cn_witness_one(lat.dual(), lambda a, b: labels[(b, a)], less)
    if w is not None:
        return ("dual",) + w
    return None

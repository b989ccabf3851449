"""Invariant checks over a shape.  Each check returns None on success or a
short description of the first failure."""
from __future__ import annotations

from dataclasses import dataclass

from .biclosed import enumerate_biclosed, quotient_gt
from .grid import Shape, kissing_segments
from .nkcomplex import FlipError, complex_of, grid_tamari
from .poset_kit import CongruenceLattice, Lattice, NotALattice, check_cn_labeling, semidistributivity_witness
from .stellation import SimplicialComplex, build_by_stellation


TABLE_LIMIT = 2000  # largest lattice given dense join/meet tables


class Skipped(str):
    """A check that was not run; counts as neither pass nor failure."""


def _containment(a, b) -> bool:
    return a != b and b.contains(a)


def facets_agree(shape: Shape):
    cx = complex_of(shape)
    by_flips = set(cx.facets_by_flips()[0])
    by_cliques = set(cx.facets_by_cliques())
    if by_flips != by_cliques:
        return f"flips give {len(by_flips)} facets, cliques give {len(by_cliques)}"
    return None


def pure_and_thin(shape: Shape):
    facets = grid_tamari(shape).facets
    sc = SimplicialComplex(frozenset(f.paths) for f in facets)
    if not sc.is_pure():
        return "facets have different sizes"
    if not sc.is_thin():
        bad = next(r for r, d in sc.ridge_degrees().items() if d != 2)
        return f"ridge {sorted(p.code() for p in bad)} lies in {sc.ridge_degrees()[bad]} facets"
    return None


def edge_bijections(shape: Shape):
    """Top paths at vertical edges hit each non-horizontal path once;
    bottom paths at horizontal edges hit each non-vertical path once."""
    cx = complex_of(shape)
    for f in grid_tamari(shape).facets:
        full = set(f.paths) | set(cx.cones)
        tops = list(cx.tops(set(f.paths)).values())
        want = sorted(p for p in full if not p.is_horizontal)
        if sorted(tops) != want:
            return f"top map is not a bijection on {f.name()}"
        bottoms = list(cx.bottoms(set(f.paths)).values())
        want = sorted(p for p in full if not p.is_vertical)
        if sorted(bottoms) != want:
            return f"bottom map is not a bijection on {f.name()}"
    return None


def flips_unique(shape: Shape):
    """Each path of each facet has one replacement, found the same way by
    splicing and by search, meeting the old path along one segment."""
    cx = complex_of(shape)
    for f in grid_tamari(shape).facets:
        for p in f:
            try:
                a = cx.flip(f, p)
                b = cx.flip_bruteforce(f, p)
            except FlipError as exc:
                return f"{f.name()} / {p.code()}: {exc}"
            if (a.facet, a.segment, a.direction) != (b.facet, b.segment, b.direction):
                return f"splice and search disagree on {f.name()} / {p.code()}"
            if len(kissing_segments(a.removed, a.added)) != 1:
                return f"{a.removed.code()} and {a.added.code()} kiss more than once"
    return None


def lattice_checks(shape: Shape):
    gt = grid_tamari(shape)
    if gt.poset.n > TABLE_LIMIT:
        return Skipped(f"{gt.poset.n} facets")
    try:
        lat = gt.lattice()
    except NotALattice as exc:
        return f"not a lattice: {exc}"
    w = semidistributivity_witness(lat)
    if w is not None:
        return f"not semidistributive: {w}"
    return None


def stellation_agrees(shape: Shape):
    cx, _ = build_by_stellation(shape)
    ref = SimplicialComplex(frozenset(f.paths) for f in grid_tamari(shape).facets)
    if cx != ref:
        return "stellation result differs from the enumerated complex"
    return None


def biclosed_checks(shape: Shape):
    bic = enumerate_biclosed(shape)
    if bic.poset.n > TABLE_LIMIT:
        return Skipped(f"{bic.poset.n} biclosed sets")
    try:
        lat = Lattice(bic.poset)
    except NotALattice as exc:
        return f"biclosed sets do not form a lattice: {exc}"
    w = semidistributivity_witness(lat)
    if w is not None:
        return f"biclosed lattice not semidistributive: {w}"
    w = check_cn_labeling(lat, order=_containment)
    if w is not None:
        return f"CN labeling fails: {w[0]}"
    return None


def quotient_checks(shape: Shape):
    q = quotient_gt(shape)
    bad = [k for k, v in q.checks.items() if not v]
    return ", ".join(bad) + " failed" if bad else None


CHECKS = [
    ("facets: flips = cliques", facets_agree),
    ("pure and thin", pure_and_thin),
    ("top/bottom bijections", edge_bijections),
    ("unique flips", flips_unique),
    ("lattice, semidistributive", lattice_checks),
    ("stellation", stellation_agrees),
    ("biclosed lattice", biclosed_checks),
    ("quotient by projection", quotient_checks),
]


@dataclass
class Report:
    results: list  # (name, failure or None)
    biclosed: int
    facets: int
    uniform: bool | None

    @property
    def ok(self) -> bool:
        return self.uniform is not False and all(r is None or isinstance(r, Skipped) for _, r in self.results)

    def summary(self) -> str:
        uniform = {True: "yes", False: "no", None: "skipped"}[self.uniform]
        return f"biclosed={self.biclosed}, facets={self.facets}, congruence-uniform={uniform}"


def run_checks(shape: Shape) -> Report:
    results = [(name, fn(shape)) for name, fn in CHECKS]
    gt = grid_tamari(shape)
    uniform = None
    if gt.poset.n <= TABLE_LIMIT:
        try:
            uniform = CongruenceLattice(gt.lattice()).is_congruence_uniform()
        except NotALattice:
            uniform = False
    return Report(results, len(enumerate_biclosed(shape).masks), len(gt.facets), uniform)

"""Command line front end: `gt <command> [shape] [--format ...]`."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import biclosed, cambrian, grassmann, nkcomplex, stellation, verify
from .grid import Shape, ShapeError
from .poset_kit import CongruenceLattice, NotALattice, is_semidistributive

DEFAULT_MAX_PATHS = 64


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _add_shape_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--shape", metavar="FILE", help="ASCII cell picture or JSON vertex list")
    g.add_argument("--rect", nargs=2, type=int, metavar=("K", "M"), help="K rows by M columns of cells")
    g.add_argument("--ribbon", metavar="WORD", help="double ribbon of an orientation word over < and >")
    p.add_argument("--force", action="store_true", help="ignore the essential-path cap")


def _add_format(p, choices=("summary", "json", "dot")):
    p.add_argument("--format", choices=choices, default="summary")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gt", description="Non-kissing complexes and grid-Tamari orders.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("facets", help="facets of the non-kissing complex")
    _add_shape_args(p)
    _add_format(p)
    p.add_argument("--method", choices=("flips", "cliques"), default="flips")

    for name, text in (
        ("poset", "the grid-Tamari order on facets"),
        ("biclosed", "biclosed sets of segments"),
        ("quotient", "classes of biclosed sets with equal down-projection"),
        ("congruences", "join-irreducible congruences of the grid-Tamari lattice"),
    ):
        p = sub.add_parser(name, help=text)
        _add_shape_args(p)
        _add_format(p)

    p = sub.add_parser("stellate", help="build the complex by suspensions and stellations")
    _add_shape_args(p)
    _add_format(p, ("summary", "json"))

    p = sub.add_parser("grassmann", help="non-crossing k-subsets of 1..n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_format(p)

    p = sub.add_parser("cambrian", help="triangulations for an orientation word")
    p.add_argument("word", help="string over < and >")
    p.add_argument("--check-iso", action="store_true", help="compare with the ribbon's flip order")
    _add_format(p)

    p = sub.add_parser("verify", help="run the invariant checks on a shape")
    _add_shape_args(p)
    return ap


def load_shape(args) -> Shape:
    try:
        if args.shape:
            shape = Shape.load(args.shape)
        elif args.rect:
            shape = Shape.rectangle(*args.rect)
        else:
            shape = cambrian.ribbon(args.ribbon)[0]
    except OSError as exc:
        raise InputError(f"cannot read shape: {exc}") from None
    except (ShapeError, cambrian.OrientationError) as exc:
        raise InputError(str(exc)) from None
    cap = os.environ.get("GT_MAX_PATHS", str(DEFAULT_MAX_PATHS))
    try:
        cap = int(cap)
    except ValueError:
        raise InputError(f"GT_MAX_PATHS must be an integer, got {cap!r}") from None
    k = len(shape.essential_paths)
    if k > cap and not args.force:
        raise InputError(f"shape has {k} essential paths, above the cap of {cap}; use --force or GT_MAX_PATHS")
    return shape


def _seg(s) -> str:
    return s.code()


def _facet(f) -> str:
    return f.name()


def _cmd_facets(args, out):
    shape = load_shape(args)
    gt = nkcomplex.grid_tamari(shape)
    if args.format == "json":
        data = gt.to_dict()
        if args.method == "cliques":
            data["facets"] = [f.codes() for f in nkcomplex.enumerate_facets(shape, "cliques")]
            data.pop("flips")
        out.write(json.dumps(data, indent=1) + "\n")
    elif args.format == "dot":
        out.write(gt.poset.to_dot(_facet, _seg))
    else:
        facets = nkcomplex.enumerate_facets(shape, args.method)
        fv = nkcomplex.f_vector(shape)
        out.write(f"facets={len(facets)}, vertices={len(shape.essential_paths)}, dimension={len(fv) - 2}, "
                  f"f-vector={fv}\n")
    return 0


def _cmd_poset(args, out):
    shape = load_shape(args)
    gt = nkcomplex.grid_tamari(shape)
    if args.format == "json":
        out.write(gt.poset.to_json(_facet, _seg) + "\n")
    elif args.format == "dot":
        out.write(gt.poset.to_dot(_facet, _seg))
    else:
        try:
            lat = gt.lattice()
            lattice, sd = "yes", "yes" if is_semidistributive(lat) else "no"
        except NotALattice:
            lattice, sd = "no", "no"
        out.write(f"elements={gt.poset.n}, covers={len(gt.poset.covers)}, lattice={lattice}, "
                  f"semidistributive={sd}\n")
    return 0


def _segset(sysm, mask) -> str:
    return "{" + " ".join(s.code() for s in sysm.decode(mask)) + "}"


def _cmd_biclosed(args, out):
    shape = load_shape(args)
    bic = biclosed.enumerate_biclosed(shape)
    sysm = bic.system
    if args.format == "json":
        data = {"segments": [s.code() for s in sysm.segments]}
        data.update(bic.poset.to_dict(lambda m: _segset(sysm, m), _seg))
        out.write(json.dumps(data, indent=1) + "\n")
    elif args.format == "dot":
        out.write(bic.poset.to_dot(lambda m: _segset(sysm, m), _seg))
    else:
        out.write(f"segments={len(sysm)}, biclosed={bic.poset.n}, covers={len(bic.poset.covers)}\n")
    return 0


def _cmd_quotient(args, out):
    shape = load_shape(args)
    q = biclosed.quotient_gt(shape)
    sysm = q.bic.system
    if args.format == "json":
        out.write(json.dumps([c.to_dict(sysm) for c in q.classes], indent=1) + "\n")
    elif args.format == "dot":
        out.write(q.poset.to_dot(lambda i: q.classes[i].facet.name()))
    else:
        out.write(f"biclosed={q.bic.poset.n}, classes={len(q.classes)}, "
                  f"isomorphic={'yes' if q.ok else 'no'}\n")
    return 0 if q.ok else 2


def _cmd_congruences(args, out):
    shape = load_shape(args)
    gt = nkcomplex.grid_tamari(shape)
    try:
        cl = CongruenceLattice(gt.lattice())
    except NotALattice as exc:
        raise InputError(f"flip order is not a lattice: {exc}") from None
    names = [gt.poset.labels[(gt.poset.lower[j][0], j)].code() for j in cl.source]
    if args.format == "json":
        out.write(cl.forcing.to_json(lambda i: names[i]) + "\n")
    elif args.format == "dot":
        out.write(cl.forcing.to_dot(lambda i: names[i]))
    else:
        out.write(f"join-irreducible congruences={len(cl.irreducibles)}, congruences={cl.count()}, "
                  f"congruence-uniform={'yes' if cl.is_congruence_uniform() else 'no'}\n")
    return 0


def _cmd_stellate(args, out):
    shape = load_shape(args)
    cx, log = stellation.build_by_stellation(shape)
    if args.format == "json":
        out.write(stellation.log_json(log) + "\n")
        return 0
    agrees = verify.stellation_agrees(shape) is None
    n_susp = sum(e["op"] == "suspend" for e in log)
    out.write(f"suspensions={n_susp}, stellations={len(log) - n_susp}, facets={len(cx.facets)}, "
              f"agrees={'yes' if agrees else 'no'}\n")
    return 0 if agrees else 2


def _cmd_grassmann(args, out):
    k, n = args.k, args.n
    if not 1 <= k < n:
        raise InputError("need 1 <= k < n")
    fams, poset = grassmann.grassmann_tamari(k, n)

    def name(f):
        return "{" + " ".join(grassmann.render(x) for x in f) + "}"

    def label(pair):
        return f"{pair[0]}{pair[1]}"

    if args.format == "json":
        data = {"facets": [[grassmann.render(x) for x in f] for f in fams],
                "flips": [[a, b, label(poset.labels[(a, b)])] for a, b in poset.covers]}
        out.write(json.dumps(data, indent=1) + "\n")
    elif args.format == "dot":
        out.write(poset.to_dot(name, label))
    else:
        out.write(f"facets={len(fams)}, covers={len(poset.covers)}\n")
    return 0


def _cmd_cambrian(args, out):
    try:
        word = cambrian.parse_orientation(args.word)
    except cambrian.OrientationError as exc:
        raise InputError(str(exc)) from None
    poset = cambrian.cambrian_poset(word)

    def name(t):
        return "{" + " ".join(f"{a}-{b}" for a, b in sorted(t)) + "}"

    def label(dd):
        return f"{dd[0][0]}-{dd[0][1]}/{dd[1][0]}-{dd[1][1]}"

    if args.check_iso:
        ok, details = cambrian.tau_isomorphism(word)
        if ok:
            out.write(f"Camb ≅ GT(ribbon): {details['elements']} elements\n")
            return 0
        out.write(f"Camb and GT(ribbon) differ: {details.get('mismatch')}\n")
        return 2
    if args.format == "json":
        pts = cambrian.polygon_from_orientation(word)
        data = {"polygon": [[str(x), str(y)] for x, y in pts]}
        data.update(poset.to_dict(name, label))
        out.write(json.dumps(data, indent=1) + "\n")
    elif args.format == "dot":
        out.write(poset.to_dot(name, label))
    else:
        out.write(f"triangulations={poset.n}, covers={len(poset.covers)}\n")
    return 0


def _cmd_verify(args, out):
    shape = load_shape(args)
    report = verify.run_checks(shape)
    for name, res in report.results:
        if res is None:
            status = "ok"
        elif isinstance(res, verify.Skipped):
            status = f"skipped ({res})"
        else:
            status = f"FAILED: {res}"
        out.write(f"{name}: {status}\n")
    out.write(report.summary() + "\n")
    return 0 if report.ok else 2


COMMANDS = {
    "facets": _cmd_facets,
    "poset": _cmd_poset,
    "biclosed": _cmd_biclosed,
    "quotient": _cmd_quotient,
    "congruences": _cmd_congruences,
    "stellate": _cmd_stellate,
    "grassmann": _cmd_grassmann,
    "cambrian": _cmd_cambrian,
    "verify": _cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"gt: {exc}", file=sys.stderr)
        return 1


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()

"""Command-line front end.  Prints JSON; exit 0 ok, 1 failed verification, 2 bad input."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ends as E
from .catalog import catalog, catalog_entry, dstar_chart, orientation_reverse, pi_rotation, track_p_cluster
from .charts import parse_chart_spec, puncture_chart
from .errors import Sl3LamError
from .exchange import (TropicalPoint, apply_path, format_rational, path_from_json, path_to_json,
                       permute_rows)
from .lattices import dynkin_star
from .maps import casimir, dynkin_pl, weyl_a_action, weyl_loop, weyl_pl_r1, weyl_pl_r2
from .triangulation import build_quiver, flip, flip_route, load_triangulation, LOWER_ROUTE, UPPER_ROUTE
from .verify import DEFAULT_RANDOM, SUITES, run_suite


class UsageError(Exception):
    pass


def _read_json(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _surface(args):
    return load_triangulation(args.surface)


def _chart(args):
    if not args.chart:
        raise UsageError("--chart NAME[:puncture] is required")
    name, point = parse_chart_spec(args.chart)
    tri = load_triangulation(name)
    if point is None:
        punctures = tri.punctures()
        if not punctures:
            raise UsageError(f"surface {name!r} has no puncture")
        point = punctures[0]
    return puncture_chart(tri, point)


def _point(args, size: int, default_flavor: str = "X") -> TropicalPoint:
    if not args.point:
        return TropicalPoint.zero(default_flavor, size)
    p = TropicalPoint.from_json(_read_json(args.point))
    if len(p) != size:
        raise UsageError(f"point has {len(p)} coordinates, expected {size}")
    return p


def _path(args):
    return path_from_json(_read_json(args.path)) if args.path else ()


def cmd_quiver(args):
    tri = _surface(args)
    seed, layout = build_quiver(tri)
    roles = {str(v + 1): role for v, role in sorted(layout.roles().items())}
    return {**seed.to_json(), "roles": roles, "counts": tri.counts()}


def cmd_mutate(args):
    tri = _surface(args)
    seed, _ = build_quiver(tri)
    p, after = apply_path(_point(args, seed.size), seed, _path(args))
    return {"point": p.to_json(), "seed": after.to_json()}


def cmd_flip(args):
    tri = _surface(args)
    seed, _ = build_quiver(tri)
    if args.edge is None:
        raise UsageError("--edge is required")
    out = {"upper_route": path_to_json(flip_route(tri, args.edge, UPPER_ROUTE)),
           "lower_route": path_to_json(flip_route(tri, args.edge, LOWER_ROUTE))}
    flipped, path, sigma = flip(tri, args.edge)
    out["path"] = path_to_json(path)
    out["relabel"] = [s + 1 for s in sigma]
    out["triangulation"] = flipped.to_json()
    if args.point:
        p, _ = apply_path(_point(args, seed.size), seed, path)
        out["point"] = TropicalPoint(p.flavor, permute_rows(list(p.coords), sigma)).to_json()
    return out


def cmd_casimir(args):
    ch = _chart(args)
    return casimir(_point(args, ch.seed.size), ch).to_json()


def cmd_weyl(args):
    ch = _chart(args)
    p = _point(args, ch.seed.size)
    word = [int(c) for c in args.word]
    if any(s not in (1, 2) for s in word):
        raise UsageError("--word uses the letters 1 and 2")
    for s in reversed(word):
        if args.loop or p.flavor == "A":
            p = apply_path(p, ch.seed, weyl_loop(s, ch))[0] if args.loop else weyl_a_action(p, ch, s)
        else:
            p = weyl_pl_r1(p, ch) if s == 1 else weyl_pl_r2(p, ch)
    return p.to_json()


def cmd_dynkin(args):
    tri = _surface(args)
    seed, layout = build_quiver(tri)
    return dynkin_pl(_point(args, seed.size), tri, layout).to_json()


def cmd_ends(args):
    m = E.EndMultiset.from_json(args.ends or "")
    out = E.weyl_word([int(c) for c in args.word], m) if args.word else E.normalize(m)
    if args.dynkin:
        out = E.dynkin(out)
    return {"input": m.to_json(), "result": out.to_json(),
            "theta": E.theta(out).to_json(), "resolvable_pair": E.has_resolvable_pair(m)}


def cmd_catalog(args):
    entries = [catalog_entry(args.name)] if args.name else catalog()
    if args.variant == "reverse":
        entries = [orientation_reverse(e) for e in entries]
    elif args.variant == "rotate":
        entries = [pi_rotation(e) for e in entries]
    return [e.to_json() for e in entries]


def cmd_track(args):
    ch = _chart(args) if args.chart else dstar_chart()
    track = track_p_cluster(ch, _path(args))
    vertices = [int(v) - 1 for v in args.vertices.split(",")] if args.vertices else list(ch.seed.unfrozen)
    stations = []
    for st in track.stations:
        stations.append({
            "prefix": path_to_json(st.prefix),
            "theta_star": {str(v + 1): st.theta_star[v].to_json() for v in vertices},
            "theta": {str(v + 1): dynkin_star(st.theta_star[v]).to_json() for v in vertices},
            "p_cluster": sorted([format_rational(c) for c in w.to_z3()] for w in st.p_cluster(vertices)),
        })
    return stations


def cmd_verify(args):
    names = list(SUITES) if args.all else [args.suite]
    if names == [None]:
        raise UsageError("give --suite NAME or --all")
    reports = [run_suite(n, args.surface, rng_seed=args.rng_seed, n_random=args.random) for n in names]
    ok = all(r["passed"] for r in reports)
    return {"passed": ok, "suites": reports}, (0 if ok else 1)


COMMANDS = {
    "quiver": cmd_quiver, "mutate": cmd_mutate, "flip": cmd_flip, "casimir": cmd_casimir,
    "weyl": cmd_weyl, "dynkin": cmd_dynkin, "ends": cmd_ends, "catalog": cmd_catalog,
    "track": cmd_track, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl3lam", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", default="dstar", help="fixture name or triangulation JSON file")
    common.add_argument("--chart", help="NAME[:puncture]")
    common.add_argument("--point", help="tropical point as JSON or @FILE")
    common.add_argument("--path", help="mutation path as JSON or @FILE")
    common.add_argument("--pretty", action="store_true", help="indented output")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "flip":
            p.add_argument("--edge", help="edge id to flip")
        if name == "weyl":
            p.add_argument("--word", default="2", help="Weyl word, rightmost letter applied first")
            p.add_argument("--loop", action="store_true", help="apply the mutation loop instead of the closed form")
        if name == "ends":
            p.add_argument("--ends", help='end multiset, e.g. "o+ i-"')
            p.add_argument("--word", default="", help="Weyl word, rightmost letter applied first")
            p.add_argument("--dynkin", action="store_true", help="apply the Dynkin involution last")
        if name == "catalog":
            p.add_argument("--name")
            p.add_argument("--variant", choices=("plain", "reverse", "rotate"), default="plain")
        if name == "track":
            p.add_argument("--vertices", help="comma-separated vertex ids (1-based)")
        if name == "verify":
            group = p.add_mutually_exclusive_group()
            group.add_argument("--suite", choices=sorted(SUITES))
            group.add_argument("--all", action="store_true")
            p.add_argument("--rng-seed", type=int, default=0)
            p.add_argument("--random", type=int, default=DEFAULT_RANDOM, help="random points per check")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        result = COMMANDS[args.command](args)
    except KeyError as exc:
        print(f"error: unknown name {exc.args[0]!r}", file=sys.stderr)
        return 2
    except (UsageError, Sl3LamError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(result, tuple):
        result, code = result
    text = json.dumps(result, indent=2 if args.pretty else None, sort_keys=False, ensure_ascii=False)
    print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Verbs: walls, product, chamber, stack, git-walls, check.  Output is
human-readable text by default; --format json switches to the JSON schemas
of the underlying modules, and product also renders ascii/svg diagrams.
Identical invocations produce byte-identical output.

Exit codes: 0 success, 1 usage error, 2 computation error (missing data,
out-of-range input, unsupported configuration), 3 consistency failure (a
cross-check that should hold did not).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arrangement, gitwalls, invariants, stackalg, wallsets
from .errors import WallcrossError
from .exactq import format_rational, parse_rational


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we signal exit 1
        raise _UsageError(message)


def _id_list(text: str) -> tuple[str, ...]:
    ids = tuple(part.strip() for part in text.split(",") if part.strip())
    if not ids:
        raise ValueError(f"no family ids in {text!r}")
    return ids


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(part.strip()) for part in text.split(","))


def _iso_classes(text: str) -> tuple[frozenset[str], ...]:
    """Parse "A=B,C=D" into iso classes, merging overlapping pairs."""
    classes: list[set[str]] = []
    for pair in text.split(","):
        names = {part.strip() for part in pair.split("=") if part.strip()}
        if len(names) < 2:
            raise ValueError(f"iso pair {pair!r} needs two distinct ids")
        touching = [cls for cls in classes if cls & names]
        merged = set(names).union(*touching) if touching else set(names)
        classes = [cls for cls in classes if not cls & names] + [merged]
    return tuple(frozenset(cls) for cls in classes)


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" + ("" if n == 1 else "s")


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _records(registry, ids):
    missing = [fid for fid in ids if fid not in registry]
    if missing:
        raise wallsets.MissingDataError(
            "unknown family id(s): " + ", ".join(sorted(missing))
        )
    return [registry[fid] for fid in ids]


def _cmd_walls(args) -> int:
    registry = wallsets.load_registry(args.registry)
    (rec,) = _records(registry, [args.family])
    ws = rec.walls(args.space)
    if args.format == "json":
        _emit_json({"family": rec.id, "space": args.space, "walls": ws.to_json()})
    else:
        print(str(ws))
    return 0


def _cmd_product(args) -> int:
    registry = wallsets.load_registry(args.registry)
    recs = _records(registry, args.families)
    arr = arrangement.build_product(recs, args.space)
    folding = None
    if args.fold:
        folding = arrangement.fold_symmetric(arr, arrangement.grouping_by_id(arr))
    if args.format in ("json", "ascii", "svg"):
        out = arrangement.render(arr, args.format, folding)
        sys.stdout.write(out)
        return 0
    graph = arrangement.crossing_graph(arr)
    print("families: " + ", ".join(args.families))
    for i, (fid, ws) in enumerate(arr.factors):
        print(
            f"factor {i} ({fid}): "
            f"{_plural(len(ws) + 1, 'chamber')}, {_plural(len(ws), 'wall')}"
        )
    for j in range(arr.k + 1):
        print(f"codim-{j} cells: {len(arr.cells(j))}")
    print(f"total cells: {len(arr.all_cells())}")
    print(
        f"crossing graph: {_plural(len(graph.nodes), 'node')}, "
        f"{_plural(len(graph.edges), 'edge')}, "
        + ("connected" if graph.is_connected() else "disconnected")
    )
    if folding is not None:
        groups = ", ".join(
            f"{arr.factors[part[0]][0]} -> positions {','.join(map(str, part))}"
            for part in folding.grouping
        )
        print(f"folding by family id: {groups}")
        for j in range(arr.k + 1):
            direct = folding.orbit_count(j)
            burnside = folding.burnside_orbit_count(j)
            print(f"codim-{j} orbits: {direct} (enumeration) = {burnside} (burnside)")
            if direct != burnside:
                print("error: orbit counts disagree", file=sys.stderr)
                return 3
    return 0


def _cmd_chamber(args) -> int:
    registry = wallsets.load_registry(args.registry)
    recs = _records(registry, args.families)
    arr = arrangement.build_product(recs, args.space)
    cell = arr.locate(args.point)
    if args.format == "json":
        _emit_json(
            {
                "families": list(args.families),
                "space": args.space,
                "point": [format_rational(x) for x in args.point],
                "cell": cell.to_json(),
            }
        )
    else:
        print("point: " + ", ".join(format_rational(x) for x in args.point))
        print(f"cell: {cell}")
        print(f"codim: {cell.codim}")
    return 0


def _cmd_stack(args) -> int:
    registry = wallsets.load_registry(args.registry)
    iso = args.iso or ()
    point_ids = frozenset(
        fid for fid, rec in registry.items() if rec.is_point
    )
    descriptor = stackalg.canonicalize(list(args.factors), iso, point_ids)
    kind = None
    if len(args.factors) == 2:
        kind = stackalg.classify_product_map(list(args.factors), iso)
    if args.format == "json":
        _emit_json(
            {
                "factors": list(args.factors),
                "iso": sorted(sorted(cls) for cls in iso),
                "descriptor": descriptor.to_json(),
                "product_map": kind.value if kind else None,
            }
        )
    else:
        print("factors: " + ", ".join(args.factors))
        print(f"descriptor: {descriptor}")
        if kind is not None:
            print(f"product map: {kind.value}")
    return 0


def _cmd_git_walls(args) -> int:
    if args.degree != 3:
        raise gitwalls.UnsupportedError(
            f"degree {args.degree} is registry-only; only degree 3 is recomputed"
        )
    registry = wallsets.load_registry(args.registry)
    computed = gitwalls.compute_walls(3, 3)
    reference = registry["dp3"].t_walls if "dp3" in registry else None
    match = reference is not None and computed == reference
    if args.format == "json":
        doc = gitwalls.wall_report(3, 3)
        doc["registry_match"] = match
        _emit_json(doc)
    else:
        print(str(computed))
        if reference is not None:
            print(f"registry t-walls (dp3): {reference}")
            print("match: " + ("yes" if match else "NO"))
    if reference is not None and not match:
        return 3
    return 0


def _check_moebius(registry) -> str:
    ok = []
    for fid, rec in sorted(registry.items()):
        if rec.reparam is None or rec.c_walls is None:
            continue
        image = wallsets.c_to_t_walls(rec)
        assert rec.t_walls is None or image == rec.t_walls
        inv = rec.reparam.inverse()
        assert all(inv(t) == c for c, t in zip(rec.c_walls, image))
        assert rec.reparam(Fraction(0)) == 0 and rec.reparam(Fraction(1)) == 1
        ok.append(fid)
    return "reparam round-trips fix walls and endpoints: " + ", ".join(ok)


def _check_registry(registry) -> str:
    for rec in registry.values():
        problems = invariants.consistency_check(rec.numerics())
        assert not problems, f"{rec.id}: {problems}"
    return f"registry numerics consistent ({len(registry)} families)"


def _check_products(registry) -> str:
    recs = sorted(registry.values(), key=lambda r: r.id)
    pairs = 0
    for a in recs:
        for b in recs:
            prod = invariants.product_numerics(a.numerics(), b.numerics())
            assert not invariants.consistency_check(prod)
            pairs += 1
    return f"product volume/hilbert identity holds ({pairs} pairs)"


def _check_arrangement(registry) -> str:
    arr = arrangement.build_product([registry["dp3"], registry["dp4"]])
    counts = [len(arr.cells(j)) for j in range(3)]
    assert counts == [36, 60, 25], counts
    graph = arrangement.crossing_graph(arr)
    assert len(graph.edges) == 60 and graph.is_connected()
    sym = arrangement.build_product([registry["dp3"], registry["dp3"]])
    folding = arrangement.fold_symmetric(sym, arrangement.grouping_by_id(sym))
    for j in range(3):
        assert folding.orbit_count(j) == folding.burnside_orbit_count(j)
    assert folding.orbit_count(0) == 21
    return "dp3 x dp4 cells 36/60/25, graph connected, folding 21 both ways"


def _check_stack(registry) -> str:
    assert str(stackalg.canonicalize({"dp3": 1, "dp4": 1})) == "dp3 x dp4"
    assert (
        stackalg.classify_product_map({"dp3": 2}) is stackalg.MapKind.S2_GERBE
    )
    model = stackalg.FiniteGroupoidModel(("a", "b", "c"), ((1, 0, 2),))
    assert stackalg.groupoid_cardinality(model) == Fraction(3, 2)
    return "descriptor algebra and groupoid cardinality examples hold"


def _cmd_check(args) -> int:
    registry = wallsets.load_registry(args.registry)
    checks = [
        _check_moebius,
        _check_registry,
        _check_products,
        _check_arrangement,
        _check_stack,
    ]
    failed = False
    for check in checks:
        try:
            print("ok " + check(registry))
        except (AssertionError, WallcrossError) as exc:
            failed = True
            print(f"FAIL {check.__name__}: {exc}")
    print("all checks passed" if not failed else "CHECKS FAILED")
    return 3 if failed else 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="wallcross", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--registry", metavar="PATH", default=None,
                       help="JSON overlay extending the compiled-in registry")
        return p

    p = add("walls", _cmd_walls, help="print one family's wall set")
    p.add_argument("--family", required=True)
    p.add_argument("--space", choices=("c", "t"), default="c")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("product", _cmd_product, help="product arrangement report or diagram")
    p.add_argument("--families", type=_id_list, required=True,
                   help="comma-separated family ids")
    p.add_argument("--space", choices=("c", "t"), default="c")
    p.add_argument("--fold", action="store_true",
                   help="fold positions with equal family ids")
    p.add_argument("--format", choices=("text", "json", "ascii", "svg"),
                   default="text")

    p = add("chamber", _cmd_chamber, help="locate a point in a product arrangement")
    p.add_argument("--families", type=_id_list, required=True)
    p.add_argument("--point", type=_rational_list, required=True,
                   help="comma-separated rationals, one per factor")
    p.add_argument("--space", choices=("c", "t"), default="c")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("stack", _cmd_stack, help="canonical moduli descriptor of a product")
    p.add_argument("--factors", type=_id_list, required=True,
                   help='comma-separated ids with repetition, e.g. "dp3,dp4,dp4"')
    p.add_argument("--iso", type=_iso_classes, default=(),
                   help='asserted isomorphisms, e.g. "A=B,C=D"')
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("git-walls", _cmd_git_walls,
            help="recompute degree-3 slope walls and compare to the registry")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")

    add("check", _cmd_check, help="run the internal consistency suite")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except WallcrossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    raise SystemExit(main())

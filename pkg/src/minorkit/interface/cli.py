# src/minorkit/interface/cli.py

"""Command-line front end.

Data goes to stdout (or ``--out``); logs and error objects go to stderr.
Library errors map to exit codes: 2 for invalid arguments, 3 for
exhausted budgets, 1 for anything else, including failed verdicts.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, ValidationError

from .. import __version__, config
from ..core import boundaried, bounds, contraction, decomposition, flatness, minors, obstructions, planarity, walls
from ..core.graph import Graph
from ..errors import InvalidArgument, MinorkitError, ParseError
from ..utils import graph_io
from ..utils.schemas import (BoundOutput, FlatnessDocument, GraphDocument, ObstructionManifest, RepresentativeTable,
                             RunManifest)

logger = logging.getLogger(__name__)


class VerdictFailed(MinorkitError):
    """A validator rejected its input; the verdict is still printed."""


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc}") from exc


def _load_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _load_document(path: str, model):
    try:
        return model.model_validate_json(_read_text(path))
    except ValidationError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _graph_document(g: Graph) -> Dict:
    return GraphDocument(n=g.n, edges=g.edges()).model_dump()


def _labels(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidArgument(f"expected comma separated integers, got {text!r}") from exc


def _params(args) -> bounds.BoundParams:
    values = {name: getattr(args, name) for name in ("a", "s", "k", "t", "l", "q", "r", "h", "x", "z", "p", "d", "y")}
    values["a_tilde"] = args.a_tilde
    constants = _load_json(args.constants) if args.constants else {}
    args.constant_overrides = constants
    ful = _load_document(args.ful, bounds.UniqueLinkage) if args.ful else None
    try:
        return bounds.BoundParams(**{k: v for k, v in values.items() if v is not None},
                                  constants=constants, f_ul=ful)
    except ValidationError as exc:
        raise InvalidArgument(f"invalid bound parameters: {exc}") from exc


def _verdict(verdict) -> Dict:
    out = {"valid": bool(verdict), "failed": getattr(verdict, "failed", None), "message": verdict.message}
    if not verdict:
        raise VerdictFailed(verdict.message or "validation failed", payload=json.dumps(out, sort_keys=True))
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_obstructions(args):
    family = graph_io.load_family(args.family)
    run = obstructions.enumerate_obstructions(family, args.k, args.nmax, workers=args.workers)
    args.complete = not run.partial
    if args.stats:
        run.stats_frame().to_csv(args.stats, index=False)
    if args.json:
        return ObstructionManifest(
            family=[graph_io.to_graph6(h) for h in family], k=args.k, n_max=args.nmax,
            complete_up_to=run.complete_up_to, partial=run.partial,
            counts={n: row["obstructions"] for n, row in run.stats.items()},
            candidates={n: row["candidates"] for n, row in run.stats.items()},
            resource_limited=[graph_io.to_graph6(g) for g in run.resource_limited],
            wall_clock=run.wall_clock, workers=run.workers,
        )
    return "".join(graph_io.to_graph6(g) + "\n" for g in run.obstructions())


def cmd_minor(args):
    pattern, host = graph_io.load_graph(args.pattern), graph_io.load_graph(args.host)
    if args.topological:
        model = minors.topological_minor_model(pattern, host)
        if model is None:
            return {"minor": False}
        image, paths = model
        return {"minor": True, "branch_vertices": image,
                "paths": [{"edge": list(e), "path": p} for e, p in sorted(paths.items())]}
    witness = minors.find_minor_model(pattern, host)
    if witness is None:
        return {"minor": False}
    return {"minor": True, "witness": contraction.witness_to_document(witness).model_dump()}


def cmd_apex(args):
    g = graph_io.load_graph(args.graph)
    if not args.family:
        return {"apex_number": planarity.apex_number(g)}
    family = graph_io.load_family(args.family)
    if args.k is None:
        found = minors.min_hitting_set(g, family)
    else:
        found = minors.hitting_set(g, family, args.k, method=args.method)
    return {"hitting_set": None if found is None else list(found)}


def cmd_wall(args):
    g, w = walls.build_elementary_wall(args.height)
    if args.subdivide:
        # every vertical path gets the extra vertices, so the wall is no longer elementary
        for a, b in sorted(key for key in w.paths if key[0][0] == key[1][0]):
            g, w = walls.subdivide_wall(g, w, a, b, count=args.subdivide)
    cert = flatness.trivial_certificate(g, w)
    return flatness.flatness_document(g, w, cert)


def cmd_partition(args):
    g, w, _ = flatness.load_flatness(_load_document(args.document, FlatnessDocument))
    cp = walls.canonical_partition(w)
    if args.extend:
        cp = walls.extend_partition(cp, g, w)
    out = {
        "internal": {f"{i},{j}": sorted(bag) for (i, j), bag in sorted(cp.internal.items())},
        "external": sorted(cp.external),
        "bricks": {f"{i},{j}": n for (i, j), n in sorted(walls.bag_brick_incidence(w, cp).items())},
    }
    if args.pack:
        z, x, p = args.pack
        out["packing"] = [sub.to_document().model_dump() for sub in walls.pack_subwalls(w, cp, z, x, p)]
    return out


def cmd_flatness(args):
    g, w, cert = flatness.load_flatness(_load_document(args.document, FlatnessDocument))
    if args.action == "validate":
        return _verdict(flatness.validate_flatness(g, w, cert))
    sub = w.subwall(tuple(args.columns), tuple(args.rows))
    tilt_wall, tilt = flatness.compute_tilt(g, w, cert, sub)
    return flatness.flatness_document(g, tilt_wall, tilt)


def cmd_contract(args):
    if args.action == "panchromatic":
        grid, collection = contraction.scattered_fixture(args.r, args.a, args.d, layout=args.layout,
                                                         seed=args.seed or 0)
        witness = contraction.panchromatic_contract(grid, collection, args.r, args.d)
        return {"grid": [grid.k, grid.r], "collection": [sorted(c) for c in collection],
                "witness": contraction.witness_to_document(witness).model_dump()}
    ag = contraction.apex_fixture(args.r, args.a, seed=args.seed or 0, density=args.density)
    if args.action == "select":
        selection = contraction.select_scattered(ag.grid, ag.neighbors, args.r)
        return {"grid": [selection.grid.k, selection.grid.r],
                "collection": [sorted(c) for c in selection.collection],
                "witness": contraction.witness_to_document(selection.witness).model_dump()}
    witness = contraction.apex_grid_contract(ag, args.r)
    return {"graph": _graph_document(ag.graph),
            "witness": contraction.witness_to_document(witness, fixed=ag.apices).model_dump()}


def _boundaried_arg(args) -> boundaried.BoundariedGraph:
    return boundaried.BoundariedGraph(graph_io.load_graph(args.graph), tuple(_labels(args.boundary)))


def cmd_folio(args):
    result = boundaried.folio(_boundaried_arg(args), args.ell)
    return {"t": result.t, "ell": result.ell, "members": [m.to_document().model_dump() for m in result.graphs]}


def _representatives(args, t: int) -> Dict[int, boundaried.RepresentativeSet]:
    if args.reps and Path(args.reps).exists():
        raw = _load_json(args.reps)
        try:
            tables = [RepresentativeTable.model_validate(item) for item in raw]
        except ValidationError as exc:
            raise ParseError(f"{args.reps}: {exc}") from exc
        return {table.t: boundaried.RepresentativeSet.from_table(table) for table in tables}
    reps = boundaried.representative_tables(t, args.h, args.size_bound, args.context, workers=args.workers)
    if args.reps:
        Path(args.reps).write_text(json.dumps([r.to_table().model_dump() for _, r in sorted(reps.items())]))
    return reps


def cmd_char(args):
    bg = _boundaried_arg(args)
    reps = _representatives(args, bg.t)
    result = boundaried.characteristic(bg, args.k, args.h, reps)
    return result.to_frame(reps).to_csv(index=False)


def cmd_decomp(args):
    g = graph_io.load_graph(args.graph)
    if args.action == "tw":
        td = decomposition.optimal_decomposition(g)
        if args.print_td:
            return td.to_td(g.n)
        return {"treewidth": td.width()}
    if args.td:
        n, td = decomposition.TreeDecomposition.from_td(_read_text(args.td))
        if n != g.n:
            raise InvalidArgument(f"decomposition is for {n} vertices, graph has {g.n}")
        if args.root is not None:
            td = td.rooted(args.root - 1)
    else:
        td = None
    if args.action == "validate":
        if td is None:
            raise InvalidArgument("decomp validate needs --td")
        verdict = _verdict(decomposition.validate(td, g))
        verdict["width"] = td.width()
        return verdict
    if td is None:
        td, _ = decomposition.linked_decomposition(g, s_max=args.s_max)
    elif td.root is None:
        td = td.rooted(min(td.bags))
    verdict = decomposition.check_linked(td, g, args.s_max)
    out = {"linked": verdict.valid, "width": td.width(), "message": verdict.message,
           "pair": None if verdict.pair is None else [u + 1 for u in verdict.pair], "s": verdict.s}
    if not verdict:
        raise VerdictFailed(verdict.message, payload=json.dumps(out, sort_keys=True))
    return out


def cmd_bounds(args):
    if args.action == "list":
        return {name: {"params": list(params), "note": note} for name, params, note in bounds.catalog()}
    p = _params(args)
    trace = bounds.explain(args.name, p)
    value = trace[-1].value
    out = BoundOutput(
        name=args.name, value=str(value), bits=value.bit_length(),
        params={k: v for k, v in p.model_dump(exclude={"constants", "f_ul"}).items() if v is not None},
        constants=p.constants_snapshot(),
        trace=[entry.to_dict() for entry in trace] if args.action == "explain" else [],
    )
    return out


def cmd_graph(args):
    g = graph_io.load_graph(args.graph)
    if args.to == "g6":
        return graph_io.to_graph6(g) + "\n"
    return graph_io.graph_to_json(g)


def cmd_fixture(args):
    seed = args.seed or 0
    if args.kind == "scattered":
        grid, collection = contraction.scattered_fixture(args.r, args.a, args.d, layout=args.layout, seed=seed)
        return {"graph": _graph_document(grid.graph), "k": grid.k, "r": grid.r,
                "collection": [sorted(c) for c in collection]}
    if args.kind == "apexgrid":
        ag = contraction.apex_fixture(args.r, args.a, seed=seed, density=args.density)
        return {"graph": _graph_document(ag.graph), "apices": ag.apices}
    g, _ = contraction.forcing_fixture(args.r, args.a)
    return graph_io.to_graph6(g) + "\n"


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minorkit", description="Graph minor obstructions, walls and bounds")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", help="write the result here instead of stdout")
    parser.add_argument("--manifest", help="write the run manifest here (default: next to --out)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("obstructions", help="enumerate obstructions of a k-apex class")
    p.add_argument("-F", "--family", action="append", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--stats", help="CSV file for per-size statistics")
    p.add_argument("--json", action="store_true", help="print the run summary instead of graph6 lines")
    p.set_defaults(func=cmd_obstructions)

    p = sub.add_parser("minor", help="search a minor model")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--topological", action="store_true")
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("apex", help="apex number, or a hitting set for a family")
    p.add_argument("graph")
    p.add_argument("-F", "--family", action="append")
    p.add_argument("-k", type=int)
    p.add_argument("--method", choices=["branch", "subsets"], default="branch")
    p.set_defaults(func=cmd_apex)

    p = sub.add_parser("wall", help="an elementary wall with its trivial flatness certificate")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--subdivide", type=int, default=0)
    p.set_defaults(func=cmd_wall)

    p = sub.add_parser("partition", help="canonical partition of a wall")
    p.add_argument("document")
    p.add_argument("--extend", action="store_true")
    p.add_argument("--pack", type=int, nargs=3, metavar=("Z", "X", "P"))
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("flatness", help="validate a flatness certificate or compute a tilt")
    p.add_argument("action", choices=["validate", "tilt"])
    p.add_argument("document")
    p.add_argument("--columns", type=int, nargs=2, default=[1, 3])
    p.add_argument("--rows", type=int, nargs=2, default=[1, 3])
    p.set_defaults(func=cmd_flatness)

    p = sub.add_parser("contract", help="grid contractions on generated fixtures")
    p.add_argument("action", choices=["panchromatic", "select", "apexgrid"])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--d", type=int, default=None, help="minimum spacing, default 2r^2")
    p.add_argument("--layout", choices=["blocks", "interleaved", "random"], default="blocks")
    p.add_argument("--density", type=float, default=1.0)
    p.set_defaults(func=cmd_contract)

    for name, helptext in (("folio", "folio of a boundaried graph"), ("char", "characteristic of a boundaried graph")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("graph")
        p.add_argument("--boundary", default="", help="boundary vertices in label order, comma separated")
        if name == "folio":
            p.add_argument("--ell", type=int, required=True)
            p.set_defaults(func=cmd_folio)
        else:
            p.add_argument("-k", type=int, required=True)
            p.add_argument("--h", type=int, required=True)
            p.add_argument("--size-bound", type=int, default=3)
            p.add_argument("--context", type=int, default=4)
            p.add_argument("--reps", help="JSON file of representative tables, read if present, else written")
            p.set_defaults(func=cmd_char)

    p = sub.add_parser("decomp", help="tree decompositions")
    p.add_argument("action", choices=["validate", "linked", "tw"])
    p.add_argument("graph")
    p.add_argument("--td", help="decomposition in td format")
    p.add_argument("--print-td", action="store_true", help="tw: print the optimal decomposition in td format")
    p.add_argument("--root", type=int, help="1-based root bag")
    p.add_argument("--s-max", type=int, default=None)
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("bounds", help="evaluate bound functions")
    p.add_argument("action", choices=["eval", "explain", "list"])
    p.add_argument("name", nargs="?")
    for name in ("a", "s", "k", "t", "l", "q", "r", "h", "x", "z", "p", "d", "y"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--a-tilde", type=int)
    p.add_argument("--constants", help="JSON object of constant overrides")
    p.add_argument("--ful", help="JSON description of the linkage function")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("graph", help="convert a graph")
    p.add_argument("graph")
    p.add_argument("--to", choices=["g6", "json"], default="g6")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("fixture", help="generate seeded fixtures")
    p.add_argument("kind", choices=["scattered", "apexgrid", "forcing"])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--d", type=int, default=None, help="minimum spacing, default 2r^2")
    p.add_argument("--layout", choices=["blocks", "interleaved", "random"], default="blocks")
    p.add_argument("--density", type=float, default=1.0)
    p.set_defaults(func=cmd_fixture)
    return parser


def _render(result) -> str:
    if isinstance(result, str):
        return result
    if isinstance(result, BaseModel):
        return result.model_dump_json(indent=2) + "\n"
    return json.dumps(result, indent=2, sort_keys=True, default=str) + "\n"


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _manifest(argv: Sequence[str], args, elapsed: float, complete: bool) -> RunManifest:
    budgets = config.get_budgets().model_dump()
    if args.workers is not None:
        budgets["workers"] = args.workers
    return RunManifest(command=list(argv), seed=args.seed, budgets=budgets,
                       constants=getattr(args, "constant_overrides", {}), wall_clock=elapsed, complete=complete,
                       workers=budgets["workers"], version=__version__)


def _emit_manifest(manifest: RunManifest, args) -> None:
    """Write the manifest to ``--manifest``, next to ``--out``, or as one JSON line on stderr."""
    target = args.manifest or (args.out + ".manifest.json" if args.out else None)
    if target:
        Path(target).write_text(manifest.model_dump_json(indent=2) + "\n")
    else:
        sys.stderr.write(manifest.model_dump_json() + "\n")


def _fill_defaults(args) -> None:
    if args.command in ("contract", "fixture") and args.d is None:
        args.d = 2 * args.r * args.r
    if args.command == "bounds" and args.action != "list" and not args.name:
        raise InvalidArgument("bounds eval/explain need a bound name")
    if args.command == "decomp" and args.action == "tw" and args.td:
        raise InvalidArgument("decomp tw computes its own decomposition; use --print-td")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else None
    start = time.monotonic()
    try:
        level = level or getattr(logging, config.get_budgets().log_level.upper(), logging.WARNING)
        logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
        _fill_defaults(args)
        result = args.func(args)
        _write(args, _render(result))
        _emit_manifest(_manifest(argv, args, time.monotonic() - start, getattr(args, "complete", True)), args)
        return 0
    except VerdictFailed as exc:
        _write(args, exc.details.get("payload", "") + "\n")
        _emit_manifest(_manifest(argv, args, time.monotonic() - start, True), args)
        return exc.exit_code
    except MinorkitError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``surface-cyclic <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (error JSON on stderr) and 2
on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from surface_cyclic import compatibility as compat
from surface_cyclic.dataset import (
    DataSet,
    classify,
    enumerate_datasets,
    fix_dimension_harvey,
    is_irreducible,
    validate,
)
from surface_cyclic.errors import SurfaceCyclicError
from surface_cyclic.fatgraph import (
    FatGraph,
    automorphisms,
    boundary_walks,
    filling_irreducibility_check,
    generator_of_order,
    induced_signature,
    is_cyclic_group,
)
from surface_cyclic.hyperbolic import pairing_word, polygon_spec, quotient_check, render_svg, solve_metrics
from surface_cyclic.necklace import (
    Necklace,
    decompose,
    fix_descriptor,
    fix_dimension_necklace,
    realize,
)


class InputError(SurfaceCyclicError):
    code = "bad_input"


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _dataset(data) -> DataSet:
    try:
        return DataSet.from_json(data)
    except SurfaceCyclicError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed data set JSON: {exc}") from exc


def _emit(obj, args):
    indent = 2 if args.pretty else None
    separators = (",", ":") if args.json else None
    print(json.dumps(obj, indent=indent, separators=separators, sort_keys=True, ensure_ascii=False))


def _raw_candidate(data):
    try:
        return (int(data["n"]), int(data.get("g0", 0)), int(data.get("rot", 0)),
                tuple((int(c), int(m)) for c, m in data.get("pairs", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed data set JSON: {exc}") from exc


def cmd_validate(args):
    report = validate(_raw_candidate(_load(args.dataset)))
    _emit(report.to_json(), args)
    if not report.valid:
        err = {"error": "invalid_dataset", "message": "data set violates " + ", ".join(report.violations)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 1
    return 0


def cmd_enumerate(args):
    if args.n < 1 or args.g < 0:
        raise InputError("--n must be >= 1 and --g >= 0")
    found = enumerate_datasets(args.n, args.g, jobs=args.jobs)
    _emit({"n": args.n, "g": args.g, "count": len(found), "datasets": [D.to_json() for D in found]}, args)
    return 0


def cmd_classify(args):
    D = _dataset(_load(args.dataset))
    out = {"dataset": D.to_json(), "genus": D.genus, "class": classify(D).to_json(), "irreducible": is_irreducible(D)}
    if D.genus >= 2:
        out["fix_dimension"] = fix_dimension_harvey(D)
    _emit(out, args)
    return 0


def _move(acc: DataSet, move) -> tuple[DataSet, str]:
    op = move.get("op")
    if op == "pair":
        r = compat.compose_pair(acc, _dataset(move["with"]), tuple(move["site"]))
        return r.result, f"pair {tuple(move['site'])}"
    if op == "full":
        return compat.compose_full(acc, _dataset(move["with"])).result, "full"
    if op == "self":
        r, s = move["site"]
        return compat.compose_self(acc, int(r), int(s)).result, f"self ({r},{s})"
    if op == "add":
        return compat.toral_add(acc, int(move.get("k", 1))), f"add {move.get('k', 1)}"
    if op == "sub":
        return compat.toral_subtract(acc, int(move.get("k", 1))), f"sub {move.get('k', 1)}"
    raise InputError(f"unknown move {op!r}; expected pair, full, self, add or sub")


def cmd_compose(args):
    script = _load(args.script)
    try:
        # either {"start": D, "moves": [...]} or a bare list led by {"op": "start", "dataset": D}
        if isinstance(script, list):
            head, *moves = script
            if head.get("op") != "start":
                raise KeyError("first move must be {'op': 'start', 'dataset': ...}")
            acc = _dataset(head["dataset"])
        else:
            acc = _dataset(script["start"])
            moves = list(script.get("moves", []))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed compose script: {exc}") from exc
    trace = [{"step": "start", "genus": acc.genus, "dataset": acc.notation()}]
    for i, move in enumerate(moves, 1):
        try:
            acc, label = _move(acc, move)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"move {i} is malformed: {exc}") from exc
        trace.append({"step": label, "genus": acc.genus, "dataset": acc.notation()})
    _emit({"result": acc.to_json(), "genus": acc.genus, "trace": trace}, args)
    return 0


def cmd_decompose(args):
    D = _dataset(_load(args.dataset))
    N = decompose(D)
    R = realize(N)
    _emit({"necklace": N.to_json(), "realized": R.dataset.to_json(),
           "genus_trace": [{"step": s, "genus": g} for s, g in R.steps],
           "warnings": N.structural_warnings()}, args)
    return 0


def cmd_fix(args):
    if bool(args.necklace) == bool(args.dataset):
        raise InputError("give exactly one of --necklace or --dataset")
    if args.necklace:
        N = Necklace.from_json(_load(args.necklace))
    else:
        N = decompose(_dataset(_load(args.dataset)))
    out = fix_descriptor(N).to_json()
    dim = fix_dimension_necklace(N)
    out["closed_formula"] = dim.closed_formula
    out["closed_formula_consistent"] = dim.consistent
    _emit(out, args)
    return 0


def cmd_polygon(args):
    D = _dataset(_load(args.dataset))
    spec = polygon_spec(D)
    metrics = solve_metrics(spec)
    word = pairing_word(D)
    report = quotient_check(word, spec.sides)
    out = {
        "sides": spec.sides,
        "theta": spec.theta,
        "angles": list(spec.corner_angles),
        "side_length": metrics.side_length,
        "radii": list(metrics.radii),
        "area": metrics.area,
        "genus_check": {"expected": D.genus, "quotient": report.genus, "ok": report.genus == D.genus},
        "pairing": word.to_json(),
        "vertex_classes": list(report.vertex_classes),
    }
    if args.metrics:
        Path(args.metrics).write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    if args.svg:
        Path(args.svg).write_text(render_svg(spec, metrics, word))
    _emit(out, args)
    return 0


def _graph(data) -> FatGraph:
    if isinstance(data, dict) and "boundary" in data:
        return FatGraph.from_boundary_words(data["boundary"])
    return FatGraph.from_json(data)


def cmd_fatgraph(args):
    G = _graph(_load(args.graph))
    out = {"summary": G.summary(), "boundary": boundary_walks(G)}
    auts = None
    if args.auts or args.signature or args.check_theorem:
        auts = automorphisms(G)
    if args.auts:
        out["automorphisms"] = {"order": len(auts), "cyclic": is_cyclic_group(auts),
                                "element_orders": sorted(a.order for a in auts),
                                "elements": [list(a.perm) for a in auts]}
    if args.signature or args.check_theorem:
        n = args.order or max(a.order for a in auts)
        if n < 2:
            raise InputError("the graph has no nontrivial automorphism")
        h = generator_of_order(auts, n)
        if args.signature:
            out["signature"] = induced_signature(G, h).to_json()
        if args.check_theorem:
            verdict, report = filling_irreducibility_check(G, h)
            out["filling_check"] = report
    _emit(out, args)
    return 0


def cmd_verify(args):
    from surface_cyclic.verify import format_table, run_all

    results = run_all(jobs=args.jobs)
    if args.json or args.pretty:
        _emit([r.to_json() for r in results], args)
    else:
        print(format_table(results))
        if args.verbose:
            for r in results:
                print(f"\n{r.number}. {r.title}")
                for d in r.details:
                    print(f"   {d}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="compact JSON output")
    fmt.add_argument("--pretty", action="store_true", help="indented JSON output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (output is unchanged)")

    parser = argparse.ArgumentParser(prog="surface-cyclic", description="Finite cyclic actions on surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the data set conditions")
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", parents=[common], help="list all data sets of order n and genus g")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common], help="rotational / Type 1 / Type 2")
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compose", parents=[common], help="run a script of composition moves")
    p.add_argument("--script", required=True)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("decompose", parents=[common], help="find a necklace realizing a data set")
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("fix", parents=[common], help="Fix-locus descriptor of a necklace or data set")
    p.add_argument("--necklace")
    p.add_argument("--dataset")
    p.set_defaults(func=cmd_fix)

    p = sub.add_parser("polygon", parents=[common], help="hyperbolic polygon of a spherical Type 1 action")
    p.add_argument("--dataset", required=True)
    p.add_argument("--svg")
    p.add_argument("--metrics")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("fatgraph", parents=[common], help="fat-graph genus, automorphisms and induced actions")
    p.add_argument("--graph", required=True)
    p.add_argument("--auts", action="store_true")
    p.add_argument("--signature", action="store_true")
    p.add_argument("--check-theorem", action="store_true")
    p.add_argument("--order", type=int, help="automorphism order to use (default: largest)")
    p.set_defaults(func=cmd_fatgraph)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except SurfaceCyclicError as exc:
        print(json.dumps(exc.to_json(), sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

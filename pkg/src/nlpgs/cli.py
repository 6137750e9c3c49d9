"""Command line interface: ``nlpgs transform|solve|justify|check``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import checker, oracles
from .emitter import Semantics, emit_augmented_program, emit_dot, emit_graph_facts
from .graph import node_from_term, program_to_graph
from .justification import effective_edges, justify_atom, render_justification, validate_model
from .parser import ParseError, normalize_program, parse_program
from .solver import SolveResult, SolverError, Status, lift_model, solve_external, strip_conjuncts

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSAT = 2
EXIT_DISAGREE = 3

log = logging.getLogger("nlpgs")


def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(args):
    return normalize_program(parse_program(_read_input(args.input)))


def _native_solve(program, graph, semantics, cap):
    if semantics is Semantics.WELL_FOUNDED:
        wfm = oracles.well_founded_model(program)
        if not wfm.consistent:
            return SolveResult([], Status.UNSATISFIABLE)
        return SolveResult([lift_model(graph, wfm.as_dict(), semantics)], Status.SATISFIABLE)
    fn = oracles.stable_models if semantics is Semantics.STABLE else oracles.co_stable_models
    sets = sorted(fn(program, cap), key=lambda s: (len(s), sorted(s)))
    models = [lift_model(graph, {a: "true" for a in s}, semantics) for s in sets]
    status = Status.SATISFIABLE if models else Status.UNSATISFIABLE
    return SolveResult(models, status)


def _solve(args, program, graph):
    if args.backend == "native":
        result = _native_solve(program, graph, args.semantics, args.oracle_cap)
        if args.models:
            result.models = result.models[: args.models]
        return result
    encoded = emit_augmented_program(graph, args.semantics)
    return solve_external(encoded, solver=args.solver, max_models=args.models, timeout=args.timeout)


def _model_dict(model):
    return {str(n): v.value for n, v in model.key_items()}


def cmd_transform(args):
    program = _load(args)
    graph = program_to_graph(program)
    text = emit_augmented_program(graph, args.semantics).text if args.full else emit_graph_facts(graph)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        Path(args.dot).write_text(emit_dot(graph))
    return EXIT_OK


def cmd_solve(args):
    program = _load(args)
    graph = program_to_graph(program)
    result = _solve(args, program, graph)
    models = result.models if args.keep_conjuncts else [strip_conjuncts(m, graph) for m in result.models]
    models.sort(key=lambda m: m.key())
    if args.format == "json":
        doc = {
            "semantics": args.semantics.value,
            "status": result.status.value,
            "models": [_model_dict(m) for m in models],
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        for i, m in enumerate(models, 1):
            print("Model %d: %s" % (i, " ".join("%s(%s)" % (v, n) for n, v in m.key_items())))
        print(result.status.value.upper())
    if result.status is Status.UNSATISFIABLE and args.fail_on_unsat:
        return EXIT_UNSAT
    return EXIT_OK


def cmd_justify(args):
    program = _load(args)
    graph = program_to_graph(program)
    result = _solve(args, program, graph)
    if not result.models:
        print("no models (%s)" % result.status.value)
        return EXIT_UNSAT if args.fail_on_unsat else EXIT_OK
    if not 1 <= args.model <= len(result.models):
        raise ValueError("model index %d out of range 1..%d" % (args.model, len(result.models)))
    model = result.models[args.model - 1]
    if args.atom:
        nodes = [node_from_term(a) for a in args.atom]
        for n in nodes:
            if n not in graph:
                raise KeyError("unknown atom %r" % str(n))
    else:
        nodes = list(graph.atoms)
    report = validate_model(graph, model)
    eff = sorted(effective_edges(graph, model), key=lambda e: (graph.position(e.src), graph.position(e.dst)))
    trees = [justify_atom(graph, model, n) for n in nodes]
    if args.format == "json":
        doc = {
            "semantics": args.semantics.value,
            "model": _model_dict(strip_conjuncts(model, graph)),
            "valid": report.valid,
            "violations": [str(v) for v in report.violations],
            "effective_edges": [str(e) for e in eff],
            "justifications": [t.to_dict() for t in trees],
        }
        print(json.dumps(doc, sort_keys=True))
        return EXIT_OK
    print("model %d: %s" % (args.model, " ".join("%s(%s)" % (v, n) for n, v in model.key_items())))
    if eff:
        print("effective edges: %s" % " ".join(str(e) for e in eff))
    else:
        unknown_only = all(v.value == "unknown" for v in model.assignment.values())
        print("no effective edges" + ("; all atoms unknown" if unknown_only else ""))
    print("valid" if report.valid else "INVALID: " + "; ".join(str(v) for v in report.violations))
    for t in trees:
        print(render_justification(t))
    return EXIT_OK


def _parse_kv(items):
    out = {}
    for item in items or ():
        key, _, value = item.partition("=")
        out[key.strip()] = int(value)
    return out


def cmd_check(args):
    if args.reference_suite:
        comps, failures = checker.run_reference_suite(args.solver, args.timeout)
        if args.format == "json":
            print(json.dumps({
                "total": len(comps),
                "agreed": sum(c.agreed for c in comps),
                "comparisons": [c.to_dict() for c in comps],
            }, indent=2, sort_keys=True))
        else:
            for c in comps:
                print("%-4s %-24s %-9s oracle=%s pipeline=%s" % (
                    "ok" if c.agreed else "FAIL", c.name, c.semantics.value,
                    json.dumps(c.oracle), json.dumps(c.pipeline)))
            print("%d/%d agree" % (sum(c.agreed for c in comps), len(comps)))
        return EXIT_DISAGREE if failures else EXIT_OK

    params = _parse_kv(args.param)
    if args.random:
        programs = list(checker.random_programs(
            n_atoms=params.get("n", 4), max_rules=params.get("k", 4),
            seed=params.get("seed", args.seed), count=params.get("count", 100)))
    elif args.exhaustive:
        programs = list(checker.exhaustive_programs(
            n_atoms=params.get("atoms", 2), max_rules=params.get("rules", 3),
            max_body=params.get("body", 2)))
    else:
        raise ValueError("choose one of --reference-suite, --random, --exhaustive")
    sems = [args.semantics] if args.semantics_given else list(Semantics)
    reports = [checker.run_corpus(programs, s, args.solver, args.timeout, args.jobs) for s in sems]
    if args.archive:
        for r in reports:
            r.write_reproducers(args.archive)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            print(r.table())
    return EXIT_OK


def _semantics(value):
    try:
        return Semantics.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    p = argparse.ArgumentParser(prog="nlpgs", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-", help="program file (.lp); '-' or omitted reads stdin")
    common.add_argument("--semantics", type=_semantics, default=Semantics.STABLE,
                        help="stable | costable | wfs (default: stable)")

    solving = argparse.ArgumentParser(add_help=False)
    solving.add_argument("--backend", choices=["external", "native"], default="external")
    solving.add_argument("--solver", help="solver command (default: $NLPGS_SOLVER, then clingo)")
    solving.add_argument("--models", type=int, default=0, help="model cap, 0 for all")
    solving.add_argument("--timeout", type=float, default=30.0)
    solving.add_argument("--oracle-cap", type=int, default=oracles.DEFAULT_CAP)
    solving.add_argument("--format", choices=["text", "json"], default="text")
    solving.add_argument("--fail-on-unsat", action="store_true")

    t = sub.add_parser("transform", parents=[common], help="emit the node/edge encoding")
    t.add_argument("--full", action="store_true", help="append the interpreter rules")
    t.add_argument("--dot", metavar="FILE", help="also write a DOT rendering")
    t.add_argument("-o", "--output", metavar="FILE")
    t.set_defaults(func=cmd_transform)

    s = sub.add_parser("solve", parents=[common, solving], help="compute models")
    s.add_argument("--keep-conjuncts", action="store_true")
    s.set_defaults(func=cmd_solve)

    j = sub.add_parser("justify", parents=[common, solving], help="justify a model")
    j.add_argument("--model", type=int, default=1, help="1-based model index")
    j.add_argument("--atom", action="append", help="restrict to these atoms (repeatable)")
    j.set_defaults(func=cmd_justify)

    c = sub.add_parser("check", help="compare the interpreters with the oracles")
    c.add_argument("--reference-suite", "--paper-suite", dest="reference_suite", action="store_true",
                   help="the worked and illustrative example programs")
    c.add_argument("--random", action="store_true")
    c.add_argument("--exhaustive", action="store_true")
    c.add_argument("param", nargs="*", help="key=value: n, k, seed, count (random); atoms, rules, body (exhaustive)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--semantics", type=_semantics, default=None)
    c.add_argument("--solver")
    c.add_argument("--timeout", type=float, default=30.0)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--archive", metavar="DIR", help="write one reproducer file per disagreement")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "check":
        args.semantics_given = args.semantics is not None
    try:
        return args.func(args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
    except (SolverError, oracles.OracleCapExceeded, OSError, ValueError, KeyError) as exc:
        print("error: %s" % (exc.args[0] if isinstance(exc, KeyError) else exc), file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

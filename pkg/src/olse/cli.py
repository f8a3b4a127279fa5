"""Command-line entry point.

One JSON object per invocation goes to stdout, diagnostics to stderr.
Exit codes: 0 yes/solved, 1 no (or invalid on ``validate``), 2 usage or
precondition failure, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .approx import approx_olise, approx_olse
from .core import (
    Embedding,
    InternalError,
    OlseError,
    PreconditionError,
    Variant,
    check_embedding,
    degree_stats,
    validate_instance,
)
from .exact import solve_dp_no_edges, solve_oracle
from .instances import (
    GeneratorParams,
    InstanceFormatError,
    ParameterError,
    arc_sequence_from_json,
    encode_lapcs_as_olise,
    generate_random,
    graph_from_json,
    mcis_from_json,
    parse_instance,
    read_instance,
    reduce_is_to_olse,
    reduce_mcis_to_olse,
    serialize_instance,
)
from .split import TrialBudget, solve_random_sep_simple, solve_split_fpt
from .unordered import solve_lise_matching, solve_lse_rules
from .vc import solve_vc_fpt

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

ALGOS = {
    "oracle": {"olse", "olise", "lse", "lise"},
    "dp": {"olse", "olise"},
    "approx": {"olse", "olise"},
    "lse-rules": {"lse"},
    "lise-matching": {"lise"},
    "split-fpt": {"olse"},
    "random-sep": {"olse", "olise"},
    "vc-fpt": {"olse"},
}


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


def _run_solver(inst, algo, variant, args):
    """Returns (decision or None, solution or None, extra report fields)."""
    k = args.k if args.k is not None else inst.k
    extra = {}
    if algo == "oracle":
        return None, solve_oracle(inst, variant), extra
    if algo == "dp":
        if variant is Variant.OLISE and degree_stats(inst)[1] != 0:
            raise PreconditionError("dp for olise needs an edgeless H")
        res = solve_dp_no_edges(inst)
        extra["dp_cells"] = int(res.table.size)
        return None, res.solution, extra
    if algo == "approx":
        return None, (approx_olse(inst) if variant is Variant.OLSE else approx_olise(inst)), extra
    if algo == "lse-rules":
        return None, solve_lse_rules(inst), extra
    if algo == "lise-matching":
        return None, solve_lise_matching(inst), extra
    if algo == "vc-fpt":
        res = solve_vc_fpt(inst, k)
        extra.update(cover=list(res.cover), guesses_examined=res.guesses_examined)
        return (res.decision if k is not None else None), res.solution, extra
    if k is None:
        raise UsageError(f"--algo {algo} decides a target size; pass --k or put k in the instance")
    budget = TrialBudget(seed=args.seed, delta=args.delta, max_trials=args.max_trials)
    if algo == "split-fpt":
        res = solve_split_fpt(inst, k, budget)
    else:
        res = solve_random_sep_simple(inst, k, budget, variant)
    extra.update(trials=res.trials, planned_trials=res.planned_trials, exhaustive=res.exhaustive,
                 confidence=res.confidence, seed=args.seed)
    return res.decision, res.solution, extra


def cmd_solve(args) -> int:
    inst = read_instance(args.input)
    variant = Variant(args.variant)
    if args.variant not in ALGOS[args.algo]:
        raise UsageError(f"--algo {args.algo} does not solve {args.variant}; "
                         f"supported: {', '.join(sorted(ALGOS[args.algo]))}")
    dg, dh, dl = degree_stats(inst)
    start = time.perf_counter()
    decision, solution, extra = _run_solver(inst, args.algo, variant, args)
    elapsed = time.perf_counter() - start
    k = args.k if args.k is not None else inst.k
    report = {
        "instance": {"n_g": inst.n_g, "n_h": inst.n_h, "max_deg_g": dg, "max_deg_h": dh, "max_list": dl},
        "algorithm": args.algo,
        "variant": variant.value,
        "k": k,
        "decision": decision,
        "size": solution.size if solution is not None else None,
        "pairs": [list(p) for p in solution.pairs] if solution is not None else [],
        "valid": None,
        "wall_time": round(elapsed, 6),
    }
    if solution is not None:
        check = check_embedding(inst, solution.embedding, variant)
        if not check:
            raise InternalError(f"emitted witness fails {check.condition}: {check.detail}")
        report["valid"] = True
    report.update(extra)
    _emit(report)
    if decision is None and k is not None and solution is not None:
        return EXIT_YES if solution.size >= k else EXIT_NO
    return EXIT_NO if decision is False else EXIT_YES


def cmd_generate(args) -> int:
    params = GeneratorParams(args.n_g, args.n_h, args.max_deg_g, args.max_deg_h, args.max_list,
                             args.min_list, args.density_g, args.density_h)
    inst = generate_random(params, args.seed)
    if args.k is not None:
        inst = inst.replace(k=args.k)
    sys.stdout.buffer.write(serialize_instance(inst))
    sys.stdout.flush()
    return EXIT_YES


def cmd_reduce(args) -> int:
    with open(args.source, "rb") as fh:
        try:
            obj = json.loads(fh.read().decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise InstanceFormatError(f"malformed source file: {exc}") from exc
    if args.problem == "mcis":
        inst = reduce_mcis_to_olse(mcis_from_json(obj))
    elif args.problem == "is":
        n, edges, k = graph_from_json(obj)
        inst = reduce_is_to_olse(n, edges, k)
    else:
        s1 = arc_sequence_from_json(obj.get("s1", {}), "s1")
        s2 = arc_sequence_from_json(obj.get("s2", {}), "s2")
        inst = encode_lapcs_as_olise(s1, s2)
    sys.stdout.buffer.write(serialize_instance(inst))
    sys.stdout.flush()
    return EXIT_YES


def cmd_validate(args) -> int:
    with open(args.input, "rb") as fh:
        data = fh.read()
    report = {"input": args.input, "violations": []}
    try:
        inst = parse_instance(data)
    except InstanceFormatError as exc:
        report["violations"].append(str(exc))
        report["valid"] = False
        _emit(report)
        return EXIT_NO
    report["violations"] = validate_instance(inst)
    ok = not report["violations"]
    if args.solution:
        with open(args.solution, "rb") as fh:
            sol = json.loads(fh.read().decode("utf-8"))
        emb = Embedding(tuple(tuple(p) for p in sol.get("pairs", [])))
        variant = Variant(args.variant or sol.get("variant", "olse"))
        check = check_embedding(inst, emb, variant)
        report["embedding"] = {"variant": variant.value, "size": len(emb), "valid": check.ok,
                               "condition": check.condition, "detail": check.detail}
        ok = ok and check.ok
    report["valid"] = ok
    _emit(report)
    return EXIT_YES if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="olse", description="Ordered list subgraph embedding solvers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run a solver on an instance file")
    s.add_argument("--input", required=True)
    s.add_argument("--variant", choices=[v.value for v in Variant], default="olse")
    s.add_argument("--algo", choices=sorted(ALGOS), required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--max-trials", type=int, default=TrialBudget.max_trials)
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("generate", help="emit a random instance")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--n-g", type=int, default=8)
    g.add_argument("--n-h", type=int, default=8)
    g.add_argument("--max-deg-g", type=int, default=2)
    g.add_argument("--max-deg-h", type=int, default=2)
    g.add_argument("--max-list", type=int, default=2)
    g.add_argument("--min-list", type=int, default=0)
    g.add_argument("--density-g", type=float, default=0.3)
    g.add_argument("--density-h", type=float, default=0.3)
    g.add_argument("--k", type=int)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("reduce", help="build an instance from a source problem")
    r.add_argument("problem", choices=["mcis", "is", "lapcs"])
    r.add_argument("source")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("validate", help="check an instance and optionally a solution")
    v.add_argument("input")
    v.add_argument("--solution")
    v.add_argument("--variant", choices=[v.value for v in Variant])
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    try:
        return args.func(args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, PreconditionError, InstanceFormatError, ParameterError, OlseError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

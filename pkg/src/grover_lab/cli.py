"""Single executable exposing the simulator, the amplitude model, the
claims sweep, the three-way comparison, diagram evaluation/normalization,
and the rule soundness harness as subcommands.

Output is deterministic: JSON with sorted keys (canonical format), or CSV
with one record per row.  Domain errors exit 1 with {"code", "message"} on
stderr; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import compare, paper_amplitude, paper_claims_check
from .diagram import validate
from .errors import GroverLabError, ParseError, TypeMismatchError
from .rewrite import check_rule_soundness, normalize, rules_catalog
from .serialize import dumps_canonical, loads, to_document
from .simulator import OracleFunction, grover_run, optimal_iterations
from .tensor_eval import evaluate

SCHEMA_VERSION = 1


def _emit_json(args, result) -> None:
    envelope = {
        "tool_version": __version__,
        "schema_version": SCHEMA_VERSION,
        "config": {k: v for k, v in sorted(vars(args).items()) if k != "func"},
        "result": result,
    }
    sys.stdout.write(dumps_canonical(envelope))


def _emit_csv(header, rows) -> None:
    def cell(v):
        if isinstance(v, float):
            return repr(v)
        if v is None:
            return ""
        return str(v)

    out = [",".join(header)]
    out.extend(",".join(cell(v) for v in row) for row in rows)
    sys.stdout.write("\n".join(out) + "\n")


def _emit(args, result, csv_header=None, csv_rows=None) -> None:
    if getattr(args, "format", "json") == "csv":
        if csv_header is None:
            raise GroverLabError("this subcommand has no CSV form")
        _emit_csv(csv_header, csv_rows)
    else:
        _emit_json(args, result)


def _parse_marked(raw: str):
    try:
        return frozenset(int(x) for x in raw.split(","))
    except ValueError as exc:
        raise GroverLabError(f"--marked must be a comma list of integers, got {raw!r}") from exc


def _cmd_simulate(args) -> None:
    f = OracleFunction(args.n, _parse_marked(args.marked))
    if args.iterations in ("paper", "optimal"):
        counts = optimal_iterations(args.n)
        k = counts.paper_mode if args.iterations == "paper" else counts.optimal_mode
    else:
        try:
            k = int(args.iterations)
        except ValueError as exc:
            raise GroverLabError(
                f"--iterations must be an integer, 'paper' or 'optimal', got {args.iterations!r}"
            ) from exc
    table = grover_run(args.n, f, k, oracle_mode=args.oracle_mode)
    result = table.to_json_dict()
    result.update({"k": k, "mode": args.oracle_mode})
    rows = [
        (x, float(p), int(x in f.marked))
        for x, p in enumerate(table.probabilities)
    ]
    _emit(args, result, ["element", "probability", "is_marked"], rows)


def _cmd_formula(args) -> None:
    if (args.n is None) == (args.N is None):
        raise GroverLabError("give exactly one of --n or --N")
    N = 2.0**args.n if args.n is not None else args.N
    k = None if args.k == "sqrt" else float(args.k)
    amp = paper_amplitude(N, k)
    result = {
        "N": amp.N,
        "k": amp.k,
        "two_summand_value": amp.two_summand_value,
        "simplified_value": amp.simplified_value,
        "A": amp.amplitude,
        "A_squared": amp.squared,
    }
    _emit(
        args,
        result,
        ["N", "k", "two_summand_value", "simplified_value", "A", "A_squared"],
        [tuple(result[c] for c in ("N", "k", "two_summand_value", "simplified_value", "A", "A_squared"))],
    )


def _cmd_claims(args) -> None:
    report = paper_claims_check(args.n_min, args.n_max)
    result = report.to_json_dict()
    header = [
        "n",
        "A",
        "A_squared",
        "total_unmarked",
        "simulator_marked",
        "simulator_unmarked_each",
        "marked_ge_half",
    ]
    rows = [tuple(r.to_json_dict()[c] for c in header) for r in report.records]
    _emit(args, result, header, rows)


def _cmd_compare(args) -> None:
    report = compare(args.n, k_mode=args.k_mode)
    result = report.to_json_dict()
    header = sorted(result)
    _emit(args, result, header, [tuple(result[c] for c in header)])


def _load_diagram(path: str):
    p = Path(path)
    if not p.is_file():
        raise _IONotFound(f"no such file: {path}")
    d = loads(p.read_text(encoding="utf-8"))
    report = validate(d)
    if not report.ok:
        mm = report.mismatches[0]
        raise TypeMismatchError(
            f"diagram fails typing at slice {mm.slice_index}, wire {mm.wire_position}",
            report=report,
        )
    return d


class _IONotFound(GroverLabError):
    code = "io-not-found"


def _cmd_diagram_eval(args) -> None:
    d = _load_diagram(args.path)
    tensor = evaluate(d)
    _emit(args, tensor.to_json_dict())


def _cmd_diagram_normalize(args) -> None:
    d = _load_diagram(args.path)
    final, trace = normalize(d, max_steps=args.max_steps)
    result = {"diagram": to_document(final), "trace": trace.to_json_dict()}
    _emit(args, result)


def _cmd_rules_check(args) -> None:
    sizes = [int(x) for x in args.sizes.split(",")]
    reports = [
        check_rule_soundness(rule, sizes, seed=args.seed) for rule in rules_catalog()
    ]
    result = {"reports": [r.to_json_dict() for r in reports]}
    header = ["rule", "instantiations", "max_deviation", "pass"]
    rows = [
        (r.rule, r.instantiations, r.max_deviation, r.passed) for r in reports
    ]
    _emit(args, result, header, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grover-lab",
        description="Grover search under circuit, diagram, and closed-form semantics.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", help="exact state-vector simulation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", required=True, help="comma list of marked elements")
    p.add_argument("--iterations", default="paper", help="integer, 'paper' or 'optimal'")
    p.add_argument("--oracle-mode", choices=["phase", "ancilla"], default="phase")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("formula", help="closed-form unmarked amplitude")
    p.add_argument("--n", type=int, help="register size as qubit count (N = 2^n)")
    p.add_argument("--N", type=float, help="set size directly")
    p.add_argument("--k", default="sqrt", help="real exponent, or 'sqrt' for sqrt(N)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_formula)

    p = sub.add_parser("claims", help="sweep the formula-level claims over n")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_claims)

    p = sub.add_parser("compare", help="simulator vs diagram vs formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-mode", choices=["paper", "optimal"], default="paper")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("diagram-eval", help="evaluate a serialized diagram")
    p.add_argument("path")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=_cmd_diagram_eval)

    p = sub.add_parser("diagram-normalize", help="normalize a serialized diagram")
    p.add_argument("path")
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=_cmd_diagram_normalize)

    p = sub.add_parser("rules-check", help="certify every rewrite rule sound")
    p.add_argument("--sizes", default="2,3,4,8")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_rules_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except GroverLabError as exc:
        err = {"code": exc.code, "message": str(exc)}
        if isinstance(exc, TypeMismatchError) and exc.report is not None:
            err["mismatches"] = [
                {
                    "slice": m.slice_index,
                    "wire": m.wire_position,
                    "expected": None if m.expected is None else m.expected.name,
                    "found": None if m.found is None else m.found.name,
                }
                for m in exc.report.mismatches
            ]
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

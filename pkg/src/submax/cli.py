"""Command-line front end: parse a dataset, run a solver, emit a JSON report.

Exit codes: 0 success, 2 configuration error (bad flags or flag combinations,
unreadable input path), 3 malformed input file, 4 guard-rail or integrity
failure.  The report goes to stdout unless ``--report PATH`` is given; apart
from the timing fields it is byte-identical across repeated runs of the same
configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources

import jsonschema

from .engine import MODES, RunConfig, RunReport, run_greedyml, run_randgreedi
from .errors import ConfigError, IntegrityError, InstanceSizeError, ParseError
from .ingest import FORMATS, load_path
from .objectives import CoverageOracle, DominationOracle, MedoidOracle

ALGORITHMS = ("greedy", "randgreedi", "greedyml")
OBJECTIVES = ("kcover", "kdom", "kmedoid")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARSE = 3
EXIT_GUARD = 4

#: Each objective reads exactly one input format.
FORMAT_FOR_OBJECTIVE = {"kcover": "fimi", "kdom": "edges", "kmedoid": "csv"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="submax",
        description="Distributed greedy maximization of monotone submodular "
                    "objectives under a cardinality budget.",
    )
    p.add_argument("--objective", required=True, choices=OBJECTIVES)
    p.add_argument("--input", required=True, help="path to the dataset file")
    p.add_argument("--format", required=True, choices=FORMATS)
    p.add_argument("--k", type=int, required=True, help="cardinality budget")
    p.add_argument("--machines", type=int, required=True,
                   help="number of leaf machines m")
    p.add_argument("--branching", type=int, default=None,
                   help="accumulation tree branching factor b (>= 2)")
    p.add_argument("--levels", type=int, default=None,
                   help="accumulation tree height; derives the smallest fitting b")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="simulate")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="greedyml")
    p.add_argument("--kmedoid-extra", type=int, default=0, dest="kmedoid_extra",
                   help="extra random points unioned in at each accumulation "
                        "step (k-medoid only)")
    p.add_argument("--report", default=None,
                   help="write the JSON report here instead of stdout")
    p.add_argument("--no-preprocess", action="store_true",
                   help="skip per-row mean subtraction and normalization (csv only)")
    return p


def _check_flags(args) -> None:
    want = FORMAT_FOR_OBJECTIVE[args.objective]
    if args.format != want:
        raise ConfigError(
            f"objective {args.objective} reads format {want!r}, got {args.format!r}"
        )
    if args.no_preprocess and args.format != "csv":
        raise ConfigError("--no-preprocess only applies to csv input")
    if args.kmedoid_extra and args.objective != "kmedoid":
        raise ConfigError("--kmedoid-extra only applies to the kmedoid objective")
    if (args.branching is None) == (args.levels is None):
        raise ConfigError("give exactly one of --branching and --levels")


def _make_oracle(objective: str, parsed, labels):
    if objective == "kcover":
        return CoverageOracle(parsed)
    if objective == "kdom":
        return DominationOracle(parsed, labels=labels)
    return MedoidOracle(parsed)


def _make_config(args) -> RunConfig:
    # Sequential greedy ignores the tree flags: one machine, trivial tree.
    machines = 1 if args.algorithm == "greedy" else args.machines
    if args.algorithm == "greedy":
        b, levels = None, None
    else:
        b, levels = args.branching, args.levels
    return RunConfig(
        objective=args.objective,
        k=args.k,
        m=machines,
        b=b,
        levels=levels,
        seed=args.seed,
        mode=args.mode,
        kmedoid_extra=args.kmedoid_extra,
    )


def build_report(run: RunReport, oracle, algorithm: str,
                 ingest_seconds: float) -> dict:
    """Assemble the report dictionary in its canonical key order."""
    rc = run.config
    ground = oracle.ground()
    members_internal = [int(e) for e in run.solution.members]
    members = [int(ground.to_original(e)) for e in members_internal]
    result: dict = {"value": run.solution.value}
    if run.global_value is not None:
        result["global_value"] = run.global_value
    result["members"] = members
    result["members_internal"] = members_internal
    return {
        "config": {
            "objective": rc.objective,
            "algorithm": algorithm,
            "k": rc.k,
            "m": rc.m,
            "b": rc.b,
            "L": rc.levels,
            "seed": rc.seed,
            "mode": rc.mode,
            "kmedoid_extra": rc.kmedoid_extra,
        },
        "result": result,
        "metrics": {
            "total_function_calls": run.total_function_calls,
            "critical_path_calls": run.critical_path_calls,
            "total_communication_elements": run.total_communication_elements,
            "total_communication_payload_units": run.total_communication_payload_units,
            "per_node": [
                {
                    "level": t.level,
                    "id": t.node,
                    "function_calls": t.function_calls,
                    "input_elements": t.input_elements,
                    "elements_received": t.elements_received,
                    "payload_units_received": t.payload_units_received,
                    "solution_size": t.solution_size,
                }
                for t in run.traces
            ],
        },
        "timings": {
            "ingest_s": ingest_seconds,
            "solve_s": run.solve_seconds,
            "per_level_s": list(run.per_level_seconds),
        },
    }


def load_report_schema() -> dict:
    text = resources.files("submax").joinpath("report_schema.json").read_text()
    return json.loads(text)


def validate_report(report: dict) -> None:
    """Schema-check a report dict; raises IntegrityError on violation."""
    try:
        jsonschema.validate(report, load_report_schema())
    except jsonschema.ValidationError as exc:
        raise IntegrityError(f"report failed schema validation: {exc.message}") from exc


def _execute(args) -> dict:
    _check_flags(args)
    started = time.perf_counter()
    parsed, labels, _descriptor = load_path(
        args.input, args.format, preprocess=not args.no_preprocess
    )
    ingest_seconds = time.perf_counter() - started
    oracle = _make_oracle(args.objective, parsed, labels)
    config = _make_config(args)
    runner = run_randgreedi if args.algorithm == "randgreedi" else run_greedyml
    run = runner(oracle, config)
    report = build_report(run, oracle, args.algorithm, ingest_seconds)
    validate_report(report)
    return report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = _execute(args)
        text = json.dumps(report, indent=2, allow_nan=False) + "\n"
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (IntegrityError, InstanceSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

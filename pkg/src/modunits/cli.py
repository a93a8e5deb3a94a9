"""Command-line front end.

Subcommands:
    verify           run the equivalence check on one group and prime
    catalog          run the default (or configured) catalog
    witness          run one witness construction family on a group
    enumerate-units  enumerate normalized units and the unitary subgroup

Worker count comes from --workers or the MODUNITS_WORKERS environment
variable; reports are byte-identical for any worker count at fixed seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .algebra import GroupAlgebra
from .catalog import build_group, parse_group_spec
from .errors import ModunitsError
from .report import (
    RunConfig,
    VerificationReport,
    emit_report,
    parse_config_file,
    run_catalog,
    run_single,
    _run_witnesses,
    _witness_dict,
)
from .units import enumerate_units, filter_unitary

ENV_WORKERS = "MODUNITS_WORKERS"


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(ENV_WORKERS, "1")))
    except ValueError:
        return 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cap", type=int, default=2**20,
                        help="enumeration cap on candidate count (default 2^20)")
    parser.add_argument("--abstract-cap", type=int, default=4096,
                        help="largest unit group materialized as a Cayley table")
    parser.add_argument("--engel-budget", type=int, default=400,
                        help="random pair attempts in the falsification search")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=None,
                        help=f"parallel workers (default ${ENV_WORKERS} or 1)")
    parser.add_argument("--time-budget", type=float, default=60.0,
                        help="per-entry wall clock budget in seconds")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--emit-timings", action="store_true",
                        help="include wall-clock timings (breaks byte determinism)")
    parser.add_argument("--out", type=str, default=None, help="write report to a file")


def _config_from_args(args) -> RunConfig:
    workers = args.workers if args.workers is not None else _default_workers()
    return RunConfig(
        enumeration_cap=args.cap,
        abstract_cap=args.abstract_cap,
        engel_budget=args.engel_budget,
        seed=args.seed,
        output_format=args.format,
        workers=workers,
        time_budget_s=args.time_budget,
        emit_timings=args.emit_timings,
    )


def _write(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _emit_and_exit(report: VerificationReport, args) -> int:
    _write(emit_report(report), args.out)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="modunits",
        description="Unit groups of modular group algebras over prime fields: "
                    "enumeration, unitary subgroups, and nilpotency checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="equivalence check for one group")
    p_verify.add_argument("--spec", required=True)
    p_verify.add_argument("--p", required=True, type=int)
    _add_common(p_verify)

    p_cat = sub.add_parser("catalog", help="run the group catalog")
    p_cat.add_argument("--primes", type=str, default="2,3")
    p_cat.add_argument("--config", type=str, default=None,
                       help="key-value config file (overrides other options)")
    _add_common(p_cat)

    p_wit = sub.add_parser("witness", help="run witness constructions")
    p_wit.add_argument("--case", required=True, type=int, choices=(1, 2, 3))
    p_wit.add_argument("--spec", required=True)
    p_wit.add_argument("--p", required=True, type=int)
    p_wit.add_argument("--out", type=str, default=None)

    p_enum = sub.add_parser("enumerate-units", help="enumerate V and its unitary subgroup")
    p_enum.add_argument("--spec", required=True)
    p_enum.add_argument("--p", required=True, type=int)
    p_enum.add_argument("--cap", type=int, default=2**20)
    p_enum.add_argument("--limit", type=int, default=32,
                        help="how many elements to print")
    p_enum.add_argument("--workers", type=int, default=None)
    p_enum.add_argument("--out", type=str, default=None)

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            config = _config_from_args(args)
            report = run_single(args.spec, args.p, config)
            return _emit_and_exit(report, args)
        if args.command == "catalog":
            if args.config:
                with open(args.config, "r", encoding="utf-8") as fh:
                    config = parse_config_file(fh.read())
                if args.workers is not None:
                    config = replace(config, workers=args.workers)
            else:
                config = _config_from_args(args)
                primes = tuple(int(x) for x in args.primes.split(",") if x.strip())
                config = replace(config, primes=primes)
            report = run_catalog(config)
            return _emit_and_exit(report, args)
        if args.command == "witness":
            return _cmd_witness(args)
        if args.command == "enumerate-units":
            return _cmd_enumerate(args)
    except ModunitsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def _cmd_witness(args) -> int:
    G = build_group(parse_group_spec(args.spec))
    ctx = GroupAlgebra(G, args.p)
    scratch = VerificationReport(version="", config=RunConfig())
    _run_witnesses(scratch, ctx)
    records = [w for w in scratch.witnesses if w.case == args.case]
    doc = {
        "group": G.name,
        "p": args.p,
        "case": args.case,
        "records": [_witness_dict(w) for w in records],
        "passed": all(w.passed for w in records),
    }
    _write((json.dumps(doc, indent=2) + "\n").encode(), args.out)
    return 0 if doc["passed"] else 1


def _cmd_enumerate(args) -> int:
    G = build_group(parse_group_spec(args.spec))
    ctx = GroupAlgebra(G, args.p)
    workers = args.workers if args.workers is not None else _default_workers()
    V = enumerate_units(ctx, cap=args.cap, workers=workers)
    Vstar = filter_unitary(V)
    doc = {
        "group": G.name,
        "p": args.p,
        "modular": ctx.is_modular,
        "v_order": len(V),
        "v_star_order": len(Vstar),
        "v_elements": [V.element(i).to_text() for i in range(min(len(V), args.limit))],
        "v_star_elements": [Vstar.element(i).to_text()
                            for i in range(min(len(Vstar), args.limit))],
    }
    _write((json.dumps(doc, indent=2) + "\n").encode(), args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

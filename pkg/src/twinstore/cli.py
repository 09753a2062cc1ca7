"""Command-line interface.

Subcommands
-----------
bounds     write one comparison series (fig5 | fig8 | fig9) as CSV
demo       run the bundled worked example against its golden values
scenario   execute a scenario JSON file, emitting a JSON-lines log
encode     encode a payload into a full system snapshot (JSON)
eavesdrop  leakage report for one eavesdropper spec, or a budget sweep

Exit codes: 0 success, 1 domain failure, 2 usage/malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from . import sim
from .demo import run_demo
from .eavesdrop import EavesdropperSpec, default_repair_plans, eavesdrop_report, observe
from .errors import BadRange, MalformedScenario, TwinstoreError
from .field import PrimeField
from .framework import TwinConfig, encode_system
from .mds import code_from_json
from .secure import guaranteed_secure_set, make_secure_layout


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_bounds(args) -> int:
    rows = bounds_mod.comparison_series(args.kind, k_max=args.k_max, k=args.k,
                                        l1=args.l1)
    _write_text(args.out, bounds_mod.series_to_csv(rows))
    return 0


def cmd_demo(args) -> int:
    g1 = _load_json(args.gen1)["generator"] if args.gen1 else None
    g2 = _load_json(args.gen2)["generator"] if args.gen2 else None
    checks = run_demo(g1=g1, g2=g2, seed=args.seed)
    width = max(len(name) for name, _, _ in checks)
    all_ok = True
    for name, ok, detail in checks:
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}")
    print(f"{'all checks passed' if all_ok else 'SOME CHECKS FAILED'}")
    return 0 if all_ok else 1


def cmd_scenario(args) -> int:
    scenario = sim.load_scenario(args.infile)
    log = sim.run(scenario)
    _write_text(args.out, log.to_jsonl())
    return 1 if log.has_errors else 0


def _config_from_args(args, doc=None) -> TwinConfig:
    if args.style == "explicit":
        doc = doc or {}
        if "generator1" not in doc or "generator2" not in doc:
            raise MalformedScenario(
                "explicit style needs generator1/generator2 documents in --in"
            )
        return TwinConfig.from_codes(code_from_json(doc["generator1"]),
                                     code_from_json(doc["generator2"]))
    return TwinConfig.build(PrimeField(args.q), args.n1, args.n2, args.k,
                            style=args.style)


def cmd_encode(args) -> int:
    doc = _load_json(args.infile)
    if isinstance(doc, list):
        doc = {"payload": doc}
    config = _config_from_args(args, doc)
    payload = list(doc["payload"])
    if args.l1 == args.l2 == 0 and len(payload) < config.k**2:
        payload += [0] * (config.k**2 - len(payload))  # plain layouts pad
    layout = make_secure_layout(payload, l1=args.l1, l2=args.l2,
                                k=config.k, field=config.field, seed=args.seed)
    system = encode_system(config, layout.matrix)
    snapshot = system.to_json_dict()
    snapshot["layout"] = layout.to_json_dict()
    _write_text(args.out, json.dumps(snapshot, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_eavesdrop(args) -> int:
    spec_doc = _load_json(args.infile) if args.infile else None
    config = _config_from_args(args, spec_doc)
    capacity = config.k * (config.k - args.l1 - args.l2)
    layout = make_secure_layout([0] * capacity, l1=args.l1, l2=args.l2,
                                k=config.k, field=config.field, seed=args.seed)
    if spec_doc is not None:
        spec = EavesdropperSpec.of(spec_doc.get("e1", []), spec_doc.get("e2", []))
        system = encode_system(config, layout.matrix)
        obs = observe(system, layout, spec, default_repair_plans(system, spec))
        report = eavesdrop_report(obs, spec)
        report["guaranteed"] = guaranteed_secure_set(
            config, layout, spec.e1, spec.e2).guaranteed
    else:
        sweep = sim.sweep_eavesdroppers(config, layout,
                                        max_budget=args.l1 + args.l2,
                                        seed=args.seed)
        report = {
            "exhaustive": sweep.exhaustive,
            "worst_leakage": [
                {"l1": l1, "l2": l2, "leakage": leak}
                for (l1, l2), leak in sorted(sweep.worst_leakage.items())
            ],
            "specs": list(sweep.rows),
        }
    _write_text(args.out, json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinstore",
        description="Twin-type MDS storage: encoding, repair, secrecy analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_system_flags(p):
        p.add_argument("--q", type=int, default=11, help="prime field modulus")
        p.add_argument("--n1", type=int, default=5, help="Type 1 node count")
        p.add_argument("--n2", type=int, default=6, help="Type 2 node count")
        p.add_argument("--k", type=int, default=4, help="code dimension")
        p.add_argument("--style", default="vandermonde",
                       choices=["systematic", "vandermonde", "explicit"])
        p.add_argument("--seed", type=int, default=0, help="layout RNG seed")
        p.add_argument("--l1", type=int, default=0,
                       help="storage-eavesdropped node budget")
        p.add_argument("--l2", type=int, default=0,
                       help="repair-observed node budget")

    p = sub.add_parser("bounds", help="emit a comparison series as CSV")
    p.add_argument("--kind", required=True, choices=["fig5", "fig8", "fig9"])
    p.add_argument("--k-max", type=int, default=50, dest="k_max",
                   help="upper k for the fig5 series")
    p.add_argument("--k", type=int, default=50, help="fixed k for fig8/fig9")
    p.add_argument("--l1", type=int, default=2, help="fixed l1 for fig9")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("demo", help="golden checks on the bundled worked example")
    p.add_argument("--gen1", default=None,
                   help="override generator 1 (JSON document path)")
    p.add_argument("--gen2", default=None,
                   help="override generator 2 (JSON document path)")
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("scenario", help="run a scenario file")
    p.add_argument("--in", required=True, dest="infile",
                   help="scenario JSON path")
    p.add_argument("--out", default=None, help="JSON-lines log path")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("encode", help="encode a payload into a system snapshot")
    add_system_flags(p)
    p.add_argument("--in", required=True, dest="infile",
                   help="payload JSON (list, or object with payload/generators)")
    p.add_argument("--out", default=None, help="snapshot JSON path")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("eavesdrop", help="leakage report or budget sweep")
    add_system_flags(p)
    p.add_argument("--in", default=None, dest="infile",
                   help="spec JSON {e1: [[t,j]..], e2: [[t,j]..]}; omit to sweep")
    p.add_argument("--out", default=None, help="report JSON path")
    p.set_defaults(func=cmd_eavesdrop)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedScenario, BadRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: bad input: {exc!r}", file=sys.stderr)
        return 2
    except TwinstoreError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``polarkit {analyze,compose,verify,construct,simulate}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from . import distance, gf2
from .distance import round_half_up
from .errors import PolarKitError
from .kernels import KernelRegistry, evaluate_expression, format_expression, parse_expression
from .polar import CodeSpec, SimConfig, construct_code, run_sweep
from .polar.simulation import CSV_COLUMNS
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _registry(args) -> KernelRegistry:
    reg = KernelRegistry()
    if getattr(args, "registry", None):
        reg.load_bootstrap(args.registry)
    for item in getattr(args, "external", None) or []:
        try:
            name, size, exp = item.split(":")
            reg.register_external(name, int(size), float(exp))
        except ValueError as exc:
            if isinstance(exc, PolarKitError):
                raise
            raise SystemExit(_usage(f"--external expects NAME:SIZE:EXPONENT, got {item!r}"))
    return reg


def _usage(msg: str) -> int:
    print(f"polarkit: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _fmt(args) -> str:
    if args.format:
        return args.format
    return "table" if sys.stdout.isatty() else "json"


def _emit(obj, fmt, table_lines, csv_rows=None):
    if fmt == "json":
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif fmt == "csv" and csv_rows:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(csv_rows)
    else:
        print("\n".join(table_lines))


def _places(size: int) -> int:
    return 4 if size >= 32 else 3


def cmd_analyze(args) -> int:
    reg = _registry(args)
    res = evaluate_expression(args.expression, reg, size_cap=args.size_cap)
    report = res.to_dict()
    report["expression"] = format_expression(parse_expression(args.expression))
    lines = [
        f"expression        {report['expression']}",
        f"size              {res.size}",
        "partial distances "
        + (",".join(map(str, res.profile.distances)) if res.profile else "(unavailable)"),
        f"exponent          {round_half_up(res.exponent, _places(res.size))}",
        f"source            {res.source}",
    ]
    rows = [("index", "partial_distance", "log_term")]
    if res.profile is not None:
        rows += [
            (i, d, t) for i, (d, t) in enumerate(zip(res.profile.distances, report["per_row_terms"]), 1)
        ]
    rows.append(("exponent", res.exponent, ""))
    _emit(report, _fmt(args), lines, rows)
    return EXIT_OK


def cmd_compose(args) -> int:
    reg = _registry(args)
    res = evaluate_expression(args.expression, reg, size_cap=args.size_cap)
    log_total = math.log(res.size)
    factors = [
        {
            "name": k.name,
            "size": k.known_size,
            "exponent": k.exponent,
            "weight": math.log(k.known_size) / log_total,
        }
        for k in res.factors
    ]
    out = {
        "expression": format_expression(parse_expression(args.expression)),
        "size": res.size,
        "exponent": res.exponent,
        "factors": factors,
    }
    lines = [f"{'factor':<12}{'size':>6}{'exponent':>12}{'weight':>10}"]
    lines += [
        f"{f['name']:<12}{f['size']:>6}{f['exponent']:>12.6f}{f['weight']:>10.6f}" for f in factors
    ]
    lines.append(f"E = {round_half_up(res.exponent, _places(res.size))}  (l = {res.size})")
    rows = [("factor", "size", "exponent", "weight")]
    rows += [(f["name"], f["size"], f["exponent"], f["weight"]) for f in factors]
    rows.append(("total", res.size, res.exponent, 1.0))
    _emit(out, _fmt(args), lines, rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    sizes = tuple(int(s) for s in args.sizes.split(","))
    report = run_suite(args.seed, args.trials, sizes, args.identity_trials)
    lines = [f"{'property':<56}{'pass':>6}{'fail':>6}"]
    for p in report.properties:
        lines.append(f"{p.name:<56}{p.passed:>6}{p.failed:>6}")
        if p.counterexample is not None:
            lines.append(f"    counterexample: {json.dumps(p.counterexample)}")
    lines.append("ALL PASS" if report.ok else "FAILURES")
    rows = [("property", "passed", "failed")] + [(p.name, p.passed, p.failed) for p in report.properties]
    _emit(report.to_dict(), _fmt(args), lines, rows)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_construct(args) -> int:
    reg = _registry(args)
    spec = construct_code(args.expression, args.rate, args.eps, reg)
    data = spec.to_dict()
    text = json.dumps(data, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(
            f"wrote {args.out}: N={spec.block_length}, {len(spec.frozen_set)} frozen, rate={spec.rate:g}",
            file=sys.stderr,
        )
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_simulation(args, reg):
    with open(args.config) as fh:
        data = json.load(fh)
    if "frozen_set" in data:
        spec = CodeSpec.from_dict(data, reg)
        if not args.grid:
            raise SystemExit(_usage("a code-spec input needs --grid (and optionally --channel)"))
        cfg = SimConfig.from_dict(
            {
                "expression": data["expression"],
                "rate": spec.rate,
                "design_eps": data.get("design_eps") or 0.5,
                "channel": {"type": args.channel or "awgn", "param_grid": args.grid},
                "trials": args.trials or 1000,
                "master_seed": args.seed if args.seed is not None else 0,
            }
        )
        return spec, cfg
    if args.channel or args.grid:
        ch = data.setdefault("channel", {})
        if isinstance(ch, str):
            ch = data["channel"] = {"type": ch}
        if args.channel:
            ch["type"] = args.channel
        if args.grid:
            ch["param_grid"] = args.grid
    if args.trials:
        data["trials"] = args.trials
    if args.seed is not None:
        data["master_seed"] = args.seed
    cfg = SimConfig.from_dict(data)
    return construct_code(cfg.expression, cfg.rate, cfg.design_eps, reg), cfg


def _write_plot(path, cfg, results):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r.param for r in results]
    ys = [max(r.bler, 1e-12) for r in results]
    lo = [y - max(r.wilson_95_low, 1e-12) for y, r in zip(ys, results)]
    hi = [r.wilson_95_high - y for y, r in zip(ys, results)]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.errorbar(xs, ys, yerr=[lo, hi], marker="o", capsize=3, label=cfg.expression)
    ax.set_yscale("log")
    ax.set_xlabel("Eb/N0 (dB)" if cfg.channel == "awgn" else "erasure rate")
    ax.set_ylabel("block error rate")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def cmd_simulate(args) -> int:
    reg = _registry(args)
    spec, cfg = _load_simulation(args, reg)
    threads = args.threads or int(os.environ.get("POLARKIT_THREADS", "1"))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    out.flush()

    def flush(r):
        writer.writerow(r.csv_row())
        out.flush()
        print(
            f"{cfg.channel} {r.param:g}: {r.block_errors}/{r.trials} block errors",
            file=sys.stderr,
        )

    try:
        results = run_sweep(
            spec, cfg.channel, cfg.param_grid, cfg.trials, cfg.master_seed, threads, on_result=flush
        )
    finally:
        if args.out:
            out.close()
    if args.plot:
        _write_plot(args.plot, cfg, results)
    return EXIT_OK


def _grid(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarkit",
        description="Partial distances, exponents and SC simulation for Kronecker-product polar kernels.",
    )
    parser.add_argument(
        "--budget-span-bits",
        type=int,
        default=None,
        help="maximum generators in an exhaustive coset search (default 28)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, registry=True):
        p.add_argument("--format", choices=("json", "csv", "table"), default=None)
        if registry:
            p.add_argument("--registry", help="JSON list of {name, size, exponent} external kernels")
            p.add_argument(
                "--external", action="append", metavar="NAME:SIZE:EXP", help="register an exponent-only kernel"
            )

    p = sub.add_parser("analyze", help="partial distances and exponent of an expression")
    p.add_argument("expression")
    p.add_argument("--size-cap", type=int, default=4096)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compose", help="closed-form exponent of a Kronecker composition")
    p.add_argument("expression")
    p.add_argument("--size-cap", type=int, default=4096)
    common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="random oracle checks of the composition rules")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--identity-trials", type=int, default=1000)
    p.add_argument("--sizes", default="2,3,4", help="comma-separated kernel sizes")
    common(p, registry=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="BEC-optimised frozen set for a polar code")
    p.add_argument("expression")
    p.add_argument("--rate", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("simulate", help="Monte Carlo BLER sweep to CSV")
    p.add_argument("config", help="simulation config or construct output (JSON)")
    p.add_argument("--channel")
    p.add_argument("--grid", type=_grid)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--plot", help="also write a BLER plot (SVG/PNG by extension)")
    common(p)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget_span_bits is not None:
        gf2.MAX_SPAN_GENERATORS = args.budget_span_bits
        distance.MAX_BRUTE_FORCE_SIZE = args.budget_span_bits + 1
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (PolarKitError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"polarkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

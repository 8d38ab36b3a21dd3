"""Command-line front end.

    senrel generate --variant sen+ --n 128 --analysis terminal -o model.json
    senrel eval model.json --points 201 -o curve.csv
    senrel mc model.json --trials 100000 --seed 1 -o mc.csv
    senrel check model.json
    senrel plot with.csv without.csv --label "with spares" --label "no spares" -o fig.svg

``eval``, ``mc`` and ``check`` take either a model file or the generator
flags of ``generate``.  Exit status: 0 success, 1 a numeric check failed,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from senrel.evaluate import evaluate, linear_grid
from senrel.model import ValidationError, complement_twin, is_dft, leaves, load_model, model_to_dict, validate
from senrel.oracle import MAX_ENUM_LEAVES, enumerate_exact, mc_curve
from senrel.plot import CurveFileError, plot_files
from senrel.sen import SenModelSpec, SpecError, build_model, model_metadata

CHECK_TOL = 1e-9
MAX_ENUM_POINTS = 21
SEED_ENV = "SENREL_SEED"


class UsageError(Exception):
    pass


def fmt_number(x: float) -> str:
    """Shortest round-trip text, integers without a trailing '.0'."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_csv(path, header, rows) -> None:
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt_number(v) for v in row])
    finally:
        if close:
            fh.close()


def _spec_from_args(args) -> SenModelSpec:
    return SenModelSpec(
        n=args.n,
        variant=args.variant,
        analysis=args.analysis,
        formalism=args.formalism,
        spares=args.spares,
        rate=args.rate,
        dormancy=args.dormancy,
    )


def _model_from_args(args):
    if getattr(args, "model", None):
        try:
            node, _ = load_model(args.model)
        except OSError as exc:
            raise UsageError(f"cannot read model: {exc}") from None
        except (ValueError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad model file {args.model}: {exc}") from None
    else:
        node = build_model(_spec_from_args(args))
    report = validate(node)
    if not report.ok:
        raise ValidationError(report)
    return node


def _grid_from_args(args) -> list[float]:
    if getattr(args, "t", None) is not None:
        if args.t < 0:
            raise UsageError("--t must be >= 0")
        return [args.t]
    try:
        return linear_grid(args.start, args.end, args.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    doc = model_to_dict(build_model(spec), model_metadata(spec))
    fh, close = _open_out(args.output)
    try:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    finally:
        if close:
            fh.close()
    return 0


def cmd_eval(args) -> int:
    node = _model_from_args(args)
    grid = _grid_from_args(args)
    _write_csv(args.output, ["t", "value"], ((t, evaluate(node, t)) for t in grid))
    return 0


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def cmd_mc(args) -> int:
    node = _model_from_args(args)
    grid = _grid_from_args(args)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers must be >= 1")
    estimates = mc_curve(node, grid, args.trials, seed, workers=args.workers)
    _write_csv(args.output, ["t", "p_hat", "stderr"], ((t, e.p_hat, e.stderr) for t, e in zip(grid, estimates)))
    return 0


def cmd_check(args) -> int:
    node = _model_from_args(args)
    grid = _grid_from_args(args)
    twin = complement_twin(node)
    dft, drbd = (node, twin) if is_dft(node) else (twin, node)
    n_leaves = sum(1 for _ in leaves(node))
    out = sys.stdout
    print(f"model: {'dft' if is_dft(node) else 'drbd'}, {n_leaves} leaves, {len(grid)} grid points", file=out)

    complement = max(abs(evaluate(dft, t) + evaluate(drbd, t) - 1.0) for t in grid)
    ok = complement <= CHECK_TOL
    print(f"complement: max |prob_fail + reliability - 1| = {complement:.3e} {'PASS' if ok else 'FAIL'}", file=out)

    if n_leaves <= MAX_ENUM_LEAVES:
        step = max(1, math.ceil(len(grid) / MAX_ENUM_POINTS))
        probe = grid[::step]
        delta = max(
            max(abs(enumerate_exact(dft, t) - evaluate(dft, t)), abs(enumerate_exact(drbd, t) - evaluate(drbd, t)))
            for t in probe
        )
        enum_ok = delta <= CHECK_TOL
        ok = ok and enum_ok
        print(
            f"enumeration: max |enumerate_exact - closed form| = {delta:.3e} at {len(probe)} points "
            f"{'PASS' if enum_ok else 'FAIL'}",
            file=out,
        )
    else:
        print(f"enumeration: skipped ({n_leaves} leaves > {MAX_ENUM_LEAVES})", file=out)
    print("PASS" if ok else "FAIL", file=out)
    return 0 if ok else 1


def cmd_plot(args) -> int:
    svg = plot_files(args.inputs, labels=args.label, title=args.title)
    fh, close = _open_out(args.output)
    try:
        fh.write(svg)
    finally:
        if close:
            fh.close()
    return 0


def _generator_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("generator")
    group.add_argument("--variant", choices=["sen", "sen+"], default="sen+")
    group.add_argument("--n", type=int, default=128, help="network size, a power of two >= 4")
    group.add_argument("--analysis", choices=["terminal", "broadcast", "network"], default="terminal")
    group.add_argument("--formalism", choices=["dft", "drbd"], default="dft")
    group.add_argument("--spares", choices=["none", "paper", "all"], default="paper")
    group.add_argument("--rate", type=float, default=1e-5, help="switch failure rate per hour")
    group.add_argument("--dormancy", type=float, default=0.1, help="spare dormancy factor in (0, 1]")


def _grid_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("time grid")
    group.add_argument("--start", type=float, default=0.0)
    group.add_argument("--end", type=float, default=1e5)
    group.add_argument("--points", type=int, default=201)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="senrel", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a SEN/SEN+ model file")
    _generator_flags(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("eval", help="closed-form curve as CSV (t,value)")
    p.add_argument("model", nargs="?", help="model file; generator flags are used when omitted")
    _generator_flags(p)
    _grid_flags(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("mc", help="Monte Carlo estimates as CSV (t,p_hat,stderr)")
    p.add_argument("model", nargs="?")
    _generator_flags(p)
    _grid_flags(p)
    p.add_argument("--t", type=float, help="single time point instead of a grid")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, help=f"defaults to ${SEED_ENV}, else 0")
    p.add_argument("--workers", type=int)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("check", help="DFT/DRBD complement and enumeration checks")
    p.add_argument("model", nargs="?")
    _generator_flags(p)
    _grid_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("plot", help="SVG line chart from curve CSVs")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--label", action="append", help="series label, repeat per input")
    p.add_argument("--title", default="")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"senrel: validation failed: {exc.report}", file=sys.stderr)
    except (SpecError, UsageError, CurveFileError) as exc:
        print(f"senrel: error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"senrel: error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())

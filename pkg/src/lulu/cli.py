"""Batch command-line tool for LULU smoothing.

Subcommands:
  smooth       apply an {L,U}-word to a signal, write the result, print a report
  plot         render the four-panel SVG (f dotted under L, U, LU, UL)
  verify       run the seeded random invariant suite
  embed-check  continuous/discrete correspondence experiment (report only)

Exit codes: 0 success; 1 verification failure; 2 malformed/unreadable input;
3 invalid parameters; 4 bound verdict failed under --assert-bounds;
5 unwritable output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from os import path as osp

import numpy as np

from . import io as lio
from .discrete import BoundaryPolicy, apply_discrete_word, embed_as_step
from .envelopes import dilate, erode
from .oracle import GridOracle, OracleCostError
from .plf import DomainError, PLFunction
from .report import build_report
from .smoothers import SmootherConfig, apply_word, reduce_word
from .verify import VerifyContext, default_tolerance, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_MALFORMED = 2
EXIT_BAD_PARAMS = 3
EXIT_BOUNDS_FAILED = 4
EXIT_UNWRITABLE = 5

_FORMATS = ("csv-xy", "csv-seq", "json-pl")
_POLICIES = tuple(p.value for p in BoundaryPolicy)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fail(code: int, message: str) -> CliError:
    return CliError(code, message)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _fail(EXIT_MALFORMED, f"cannot read input {path!r}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _fail(EXIT_UNWRITABLE, f"cannot write output {path!r}: {exc}") from exc


def _check_format(fmt: str) -> str:
    if fmt not in _FORMATS:
        raise _fail(EXIT_BAD_PARAMS, f"unknown format {fmt!r}; expected one of {_FORMATS}")
    return fmt


def _check_word(word: str) -> str:
    if not word or any(ch not in "LU" for ch in word):
        raise _fail(EXIT_BAD_PARAMS,
                    f"operator word must be a nonempty string over {{L,U}}, got {word!r}")
    return word


def _check_delta(delta) -> float:
    if delta is None or not np.isfinite(delta) or delta <= 0:
        raise _fail(EXIT_BAD_PARAMS, f"delta must be positive and finite, got {delta}")
    return float(delta)


def _check_policy(name: str) -> BoundaryPolicy:
    if name not in _POLICIES:
        raise _fail(EXIT_BAD_PARAMS,
                    f"unknown boundary policy {name!r}; expected one of {_POLICIES}")
    return BoundaryPolicy(name)


def _load_plf(text: str, fmt: str) -> PLFunction:
    try:
        if fmt == "csv-xy":
            return lio.load_csv_xy(text)
        return lio.load_plfunction(text)
    except (lio.FormatError, DomainError, ValueError) as exc:
        raise _fail(EXIT_MALFORMED, f"malformed {fmt} input: {exc}") from exc


def _load_signal(text: str, spacing: float):
    try:
        return lio.load_csv_seq(text, spacing)
    except (lio.FormatError, ValueError) as exc:
        raise _fail(EXIT_MALFORMED, f"malformed csv-seq input: {exc}") from exc


def _word_stages(word: str, delta: float):
    """Primitive erosion/dilation stages of a word, in application order."""
    r = delta / 2.0
    stages = []
    for ch in reversed(word):
        if ch == "L":
            stages += [(erode, r), (dilate, r)]
        else:
            stages += [(dilate, r), (erode, r)]
    return stages


def _oracle_crosscheck(f: PLFunction, word: str, delta: float) -> dict:
    """Grid-oracle agreement of every primitive stage of the computation."""
    worst = {"max_divergence": 0.0, "bound": 0.0, "stages": 0}
    g = f
    try:
        for op, r in _word_stages(word, delta):
            oracle = GridOracle.from_function(g)
            approx = oracle.grid_erode(r) if op is erode else oracle.grid_dilate(r)
            exact = op(g, r)
            div = float(np.max(np.abs(exact._values_on_grid(oracle.grid) - approx)))
            bound = g.max_abs_slope() * oracle.h
            worst["max_divergence"] = max(worst["max_divergence"], div)
            worst["bound"] = max(worst["bound"], float(bound))
            worst["stages"] += 1
            g = exact
    except OracleCostError as exc:
        return {"skipped": str(exc)}
    return worst


def cmd_smooth(args) -> int:
    fmt = _check_format(args.format)
    word = _check_word(args.word)
    text = _read_text(args.input)
    t0 = time.perf_counter()

    if fmt == "csv-seq":
        policy = _check_policy(args.boundary)
        spacing = args.spacing
        if spacing <= 0 or not np.isfinite(spacing):
            raise _fail(EXIT_BAD_PARAMS, f"spacing must be positive, got {spacing}")
        if args.n is not None:
            if args.delta is not None:
                raise _fail(EXIT_BAD_PARAMS, "give either --n or --delta, not both")
            n = args.n
        else:
            delta = _check_delta(args.delta)
            n = int(round(delta / (2.0 * spacing)))
        if n < 1:
            raise _fail(EXIT_BAD_PARAMS, f"window parameter n must be >= 1, got {n}")
        sig = _load_signal(text, spacing)
        out = apply_discrete_word(word, sig, n, policy, fill=args.fill)
        delta_eff = 2.0 * n * spacing
        f_emb, out_emb = embed_as_step(sig), embed_as_step(out)
        runtime = time.perf_counter() - t0 if args.timing else None
        report = build_report(
            f_emb, out_emb, word, delta_eff,
            input_name=osp.basename(args.input), input_format=fmt, input_text=text,
            tolerance=args.tol, n=n, boundary_policy=policy.value,
            skip_moduli=args.skip_moduli, runtime_seconds=runtime)
        _write_text(args.output, lio.dump_csv_seq(out))
        plot_f, plot_delta = f_emb, delta_eff
    else:
        if args.n is not None:
            raise _fail(EXIT_BAD_PARAMS, f"--n applies to csv-seq only, not {fmt}")
        delta = _check_delta(args.delta)
        f = _load_plf(text, fmt)
        result = apply_word(word, f, SmootherConfig(delta=delta))
        runtime = time.perf_counter() - t0 if args.timing else None
        report = build_report(
            f, result, word, delta,
            input_name=osp.basename(args.input), input_format=fmt, input_text=text,
            tolerance=args.tol, skip_moduli=args.skip_moduli,
            runtime_seconds=runtime)
        out_text = lio.dump_csv_xy(result) if fmt == "csv-xy" else lio.dump_plfunction(result)
        _write_text(args.output, out_text)
        plot_f, plot_delta = f, delta

    payload = report.to_dict()
    if args.oracle:
        payload["oracle_crosscheck"] = _oracle_crosscheck(plot_f, word, plot_delta)
    if args.plot is not None:
        from .plotting import render_four_panel
        try:
            render_four_panel(plot_f, plot_delta, args.plot)
        except OSError as exc:
            raise _fail(EXIT_UNWRITABLE, f"cannot write plot {args.plot!r}: {exc}") from exc
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.assert_bounds and not report.bounds_ok:
        print("bound verdict failed (error exceeds modulus bound)", file=sys.stderr)
        return EXIT_BOUNDS_FAILED
    return EXIT_OK


def cmd_plot(args) -> int:
    fmt = _check_format(args.format)
    delta = _check_delta(args.delta)
    text = _read_text(args.input)
    if fmt == "csv-seq":
        if args.spacing <= 0 or not np.isfinite(args.spacing):
            raise _fail(EXIT_BAD_PARAMS, f"spacing must be positive, got {args.spacing}")
        f = embed_as_step(_load_signal(text, args.spacing))
    else:
        f = _load_plf(text, fmt)
    from .plotting import render_four_panel
    try:
        render_four_panel(f, delta, args.output)
    except OSError as exc:
        raise _fail(EXIT_UNWRITABLE, f"cannot write plot {args.output!r}: {exc}") from exc
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.count < 0:
        raise _fail(EXIT_BAD_PARAMS, f"count must be >= 0, got {args.count}")
    lo, hi = args.delta_range
    if not (0 < lo <= hi):
        raise _fail(EXIT_BAD_PARAMS, f"invalid delta range ({lo}, {hi})")
    ctx = VerifyContext(tol=args.tol, fault=args.inject_fault)
    outcome = run_verification(seed=args.seed, count=args.count,
                               delta_range=(lo, hi),
                               max_breakpoints=args.max_breakpoints, ctx=ctx)
    print(outcome.matrix_text())
    if outcome.all_passed:
        print(f"all checks passed on {args.count} cases (seed {args.seed})")
        return EXIT_OK
    _write_text(args.counterexample,
                json.dumps(outcome.counterexample, indent=2, sort_keys=True) + "\n")
    print(f"verification FAILED; counterexample written to {args.counterexample}",
          file=sys.stderr)
    return EXIT_VERIFY_FAIL


def cmd_embed_check(args) -> int:
    if args.n < 1:
        raise _fail(EXIT_BAD_PARAMS, f"window parameter n must be >= 1, got {args.n}")
    if args.spacing <= 0 or not np.isfinite(args.spacing):
        raise _fail(EXIT_BAD_PARAMS, f"spacing must be positive, got {args.spacing}")
    sig = _load_signal(_read_text(args.input), args.spacing)
    delta = 2.0 * args.n * args.spacing
    f = embed_as_step(sig)
    cfg = SmootherConfig(delta=delta)
    from .plf import sup_norm_diff
    policies = {}
    for policy in BoundaryPolicy:
        row = {}
        for word in ("L", "U"):
            disc = embed_as_step(
                apply_discrete_word(word, sig, args.n, policy, fill=args.fill))
            cont = apply_word(word, f, cfg)
            row[word] = float(sup_norm_diff(disc, cont))
        policies[policy.value] = row
    print(json.dumps({
        "schema": "embed-check/v1",
        "note": ("experiment: continuous smoother at delta = 2*n*spacing applied to "
                 "the step embedding, compared to the embedded discrete smoother; "
                 "no boundary convention makes these agree exactly, so this is "
                 "reported, not gated"),
        "n": args.n,
        "spacing": args.spacing,
        "delta": delta,
        "fill": args.fill,
        "sup_differences": policies,
    }, indent=2, sort_keys=True))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lulu",
        description="Exact LULU smoothing of piecewise-linear signals and sequences.")
    sub = p.add_subparsers(dest="command", required=True)
    tol_default = default_tolerance()

    ps = sub.add_parser("smooth", help="apply an {L,U}-word and report error bounds")
    ps.add_argument("input", help="input file path")
    ps.add_argument("--format", default="csv-xy",
                    help="input format: csv-xy, csv-seq, or json-pl")
    ps.add_argument("--word", default="LU", help="operator word over {L,U}")
    ps.add_argument("--delta", type=float, default=None, help="smoothing scale")
    ps.add_argument("--n", type=int, default=None,
                    help="discrete window parameter (csv-seq only)")
    ps.add_argument("--boundary", default="clamp",
                    help="csv-seq boundary policy: clamp, reflect, extend-constant")
    ps.add_argument("--fill", type=float, default=0.0,
                    help="pad value for extend-constant")
    ps.add_argument("--spacing", type=float, default=1.0,
                    help="csv-seq sample spacing")
    ps.add_argument("--output", required=True, help="output file path")
    ps.add_argument("--plot", default=None, metavar="SVG",
                    help="also render the four-panel SVG here")
    ps.add_argument("--assert-bounds", action="store_true",
                    help="exit 4 if the error exceeds its modulus bound")
    ps.add_argument("--skip-moduli", action="store_true",
                    help="omit modulus computation from the report")
    ps.add_argument("--oracle", action="store_true",
                    help="include a grid-oracle cross-check in the report")
    ps.add_argument("--timing", action="store_true",
                    help="include runtime_seconds in the report "
                         "(off by default to keep reports byte-identical)")
    ps.add_argument("--tol", type=float, default=tol_default,
                    help=f"bound tolerance (default {tol_default:g}, env LULU_TOL)")
    ps.set_defaults(func=cmd_smooth)

    pp = sub.add_parser("plot", help="render f dotted under L, U, LU, UL")
    pp.add_argument("input")
    pp.add_argument("--format", default="csv-xy")
    pp.add_argument("--delta", type=float, required=True)
    pp.add_argument("--spacing", type=float, default=1.0)
    pp.add_argument("--output", required=True, help="SVG output path")
    pp.set_defaults(func=cmd_plot)

    pv = sub.add_parser("verify", help="run the seeded random invariant suite")
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--count", type=int, default=100)
    pv.add_argument("--delta-range", type=float, nargs=2, default=(0.1, 3.0),
                    metavar=("LO", "HI"))
    pv.add_argument("--max-breakpoints", type=int, default=30)
    pv.add_argument("--counterexample", default="counterexample.json",
                    help="where to write the first failing case")
    pv.add_argument("--tol", type=float, default=tol_default)
    pv.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)
    pv.set_defaults(func=cmd_verify)

    pe = sub.add_parser("embed-check",
                        help="continuous/discrete correspondence experiment")
    pe.add_argument("input", help="csv-seq input file")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--spacing", type=float, default=1.0)
    pe.add_argument("--fill", type=float, default=0.0)
    pe.set_defaults(func=cmd_embed_check)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

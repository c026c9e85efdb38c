"""Command-line front end: ``doorsim run | calc | check``.

Exit status: 0 success, 1 invariant violation (``--strict``) or hazard
(``--strict-hazards``) or failed check, 2 usage/parse/I-O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import design
from .scenario import ScenarioParseError, parse_scenario, run_scenario
from .trace import TraceFormatError, check_invariants, read_trace, write_trace

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_PREFIXES = [(1e6, "M"), (1e3, "k"), (1.0, ""), (1e-3, "m"), (1e-6, "µ"), (1e-9, "n"), (1e-12, "p")]


def sig4(x: float) -> str:
    """``x`` rounded to 4 significant figures, without exponent or trailing zeros."""
    if x == 0 or not math.isfinite(x):
        return f"{x:g}"
    exponent = math.floor(math.log10(abs(x)))
    decimals = 3 - exponent
    rounded = round(x, decimals)
    text = f"{rounded:.{max(decimals, 0)}f}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def si(x: float, unit: str) -> str:
    for scale, prefix in _PREFIXES:
        if abs(x) >= scale * 0.9999999:
            return f"{float(f'{x / scale:.3g}'):g} {prefix}{unit}"
    return f"{x:g} {unit}"


def _fmt(value: float, unit: str, preferred: bool) -> str:
    text = f"{sig4(value)} {unit}"
    if preferred and value > 0:
        text += f" (E12: {si(design.nearest_preferred(value, 'E12'), unit)})"
    return text


# name -> (function, [(flag, parameter)], unit, preferred-value annotation)
CALCS = {
    "peak": (design.rectified_peak,
             [("vreg", "v_reg"), ("headroom", "headroom"), ("n", "n_diodes"), ("vd", "v_diode")], "V", False),
    "rms": (design.transformer_rms, [("vpeak", "v_peak")], "V", False),
    "ripple": (design.ripple_amplitude, [("vpeak", "v_peak"), ("fraction", "ripple_fraction")], "V", False),
    "cap": (design.smoothing_capacitor, [("i", "i_load"), ("f", "line_freq"), ("dv", "dv")], "F", True),
    "led-r": (design.led_series_resistor,
              [("v", "v_supply"), ("vf", "v_forward"), ("if", "i_forward")], "Ω", True),
    "divider": (design.divider_output,
                [("rtop", "r_top"), ("rbottom", "r_bottom"), ("v", "v_supply")], "V", False),
    "ref-r": (design.reference_divider_resistor,
              [("vref", "v_ref"), ("v", "v_supply"), ("rfixed", "r_fixed")], "Ω", True),
    "mono-t": (design.monostable_period, [("r", "r"), ("c", "c")], "s", False),
    "mono-r": (design.monostable_resistor, [("t", "t"), ("c", "c")], "Ω", True),
    "base-r": (design.switch_base_resistor,
               [("v", "v_supply"), ("rc", "r_coil"), ("hfe", "h_fe"), ("vin", "v_in"), ("vbe", "v_be")],
               "Ω", True),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="doorsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate a scenario file and write its trace")
    run.add_argument("scenario", type=Path)
    run.add_argument("--trace", type=Path, help="write the trace here instead of stdout")
    run.add_argument("--until", type=int, help="advance at least to this time (ms)")
    run.add_argument("--strict", action="store_true", help="exit 1 on invariant violations")
    run.add_argument("--strict-hazards", action="store_true", help="exit 1 if any hazard is recorded")
    run.add_argument("--sample", type=int, metavar="MS", help="add a STATE record every MS")

    calc = sub.add_parser("calc", help="component sizing calculator")
    calc_sub = calc.add_subparsers(dest="calc", required=True)
    for name, (fn, params, unit, _) in CALCS.items():
        p = calc_sub.add_parser(name, help=(fn.__doc__ or fn.__name__).splitlines()[0])
        for flag, param in params:
            p.add_argument(f"--{flag}", dest=param, type=float, required=True)
    pref = calc_sub.add_parser("preferred", help="nearest E-series value")
    pref.add_argument("--value", type=float, required=True)
    pref.add_argument("--series", choices=sorted(design.E_SERIES), default="E12")
    pref.add_argument("--unit", default="Ω")

    check = sub.add_parser("check", help="check a trace file against the invariants")
    check.add_argument("trace", type=Path)
    return parser


def cmd_run(args) -> int:
    try:
        scenario = parse_scenario(args.scenario.read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"doorsim: cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioParseError as exc:
        print(f"doorsim: {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.sample is not None and args.sample <= 0:
        print("doorsim: --sample must be positive", file=sys.stderr)
        return EXIT_USAGE
    system = run_scenario(scenario, until=args.until, sample_ms=args.sample)
    text = write_trace(system.records)
    if args.trace:
        args.trace.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    report = check_invariants(system.records)
    print(report.summary(), file=sys.stderr)
    if args.strict and not report.ok:
        return EXIT_FAIL
    if args.strict_hazards and report.hazards:
        return EXIT_FAIL
    return EXIT_OK


def cmd_calc(args) -> int:
    try:
        if args.calc == "preferred":
            print(si(design.nearest_preferred(args.value, args.series), args.unit))
            return EXIT_OK
        fn, params, unit, preferred = CALCS[args.calc]
        kwargs = {param: getattr(args, param) for _, param in params}
        if "n_diodes" in kwargs:
            kwargs["n_diodes"] = int(kwargs["n_diodes"])
        print(_fmt(fn(**kwargs), unit, preferred))
    except design.DesignError as exc:
        print(f"doorsim calc {args.calc}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        records = read_trace(args.trace.read_text(encoding="utf-8"))
        report = check_invariants(records)
    except OSError as exc:
        print(f"doorsim: cannot read trace: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TraceFormatError as exc:
        print(f"doorsim: {args.trace}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    handler = {"run": cmd_run, "calc": cmd_calc, "check": cmd_check}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())

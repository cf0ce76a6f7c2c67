"""``aspectke`` command line: run systems, check aspect files, run analyses."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .analysis import run_analysis
from .errors import AspectKEError
from .model import Capability
from .parser import parse_aspect_file, parse_process, parse_system
from .printer import format_net
from .runtime import HaltReason, run

EXIT_OK, EXIT_LOAD_ERROR, EXIT_STEP_BUDGET = 0, 1, 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def load_system(system_path: str, aspect_paths=()):
    """Parse a system and append the aspects of each extra file in order."""
    state = parse_system(_read(system_path), file=system_path)
    extra = []
    for p in aspect_paths:
        extra.extend(parse_aspect_file(_read(p), file=p))
    return replace(state, aspects=tuple(state.aspects) + tuple(extra))


def format_final(net) -> str:
    return "-- final net\n" + format_net(net, canonical=True) + "\n"


def cmd_run(args) -> int:
    try:
        state = load_system(args.system, args.aspects or [])
    except (OSError, AspectKEError) as e:
        print(f"error: {_describe(e)}", file=sys.stderr)
        return EXIT_LOAD_ERROR
    result = run(state, seed=args.seed, max_steps=args.max_steps)
    text = result.trace_text()
    if args.trace:
        Path(args.trace).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.dump_final:
        sys.stdout.write(format_final(result.net))
    if result.halt_reason is HaltReason.STEP_BUDGET:
        print(f"halted: step budget of {args.max_steps} exhausted", file=sys.stderr)
        return EXIT_STEP_BUDGET
    return EXIT_OK


def cmd_check(args) -> int:
    status = EXIT_OK
    for path in args.paths:
        try:
            aspects = parse_aspect_file(_read(path), file=path)
        except (OSError, AspectKEError) as e:
            print(f"{path}: FAIL\n  {_describe(e)}")
            status = EXIT_LOAD_ERROR
            continue
        print(f"{path}: ok ({len(aspects)} aspect{'s' if len(aspects) != 1 else ''})")
    return status


def cmd_analyze(args) -> int:
    fn = args.function
    if fn.startswith("Loc_") or fn.startswith("LCc_") or fn.startswith("FVc_"):
        fn, cap_word = fn.split("_", 1)
        args.cap = args.cap or cap_word
    if fn not in ("Act", "Loc", "LC", "LCc", "FV", "FVc"):
        print(f"error: unknown analysis {args.function}", file=sys.stderr)
        return EXIT_LOAD_ERROR
    cap = None
    if fn in ("Loc", "LCc", "FVc"):
        if not args.cap:
            print(f"error: {fn} needs --cap", file=sys.stderr)
            return EXIT_LOAD_ERROR
        cap = Capability.from_keyword(args.cap)
    try:
        proc = parse_process(_read(args.path), free_vars=args.var or (), file=args.path)
    except (OSError, AspectKEError) as e:
        print(f"error: {_describe(e)}", file=sys.stderr)
        return EXIT_LOAD_ERROR
    print(run_analysis(fn, proc, cap))
    return EXIT_OK


def _describe(e: Exception) -> str:
    if isinstance(e, OSError):
        return f"cannot read {e.filename}: {e.strerror}"
    return str(e)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aspectke", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a system under its aspects and any extra policy files")
    r.add_argument("system")
    r.add_argument("--aspects", action="append", metavar="PATH", help="extra .apl file (repeatable)")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--max-steps", type=_positive, default=10_000)
    r.add_argument("--trace", metavar="PATH", help="write the trace here instead of stdout")
    r.add_argument("--dump-final", action="store_true", help="print the final net, sorted")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("check", help="validate aspect files")
    c.add_argument("paths", nargs="+")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("analyze", help="apply a behavior analysis to a process term")
    a.add_argument("path")
    a.add_argument("function", help="Act, Loc, LC, LCc, FV or FVc (Loc_in style also accepted)")
    a.add_argument("--cap", choices=sorted(c.keyword for c in Capability))
    a.add_argument("--var", action="append", metavar="NAME",
                   help="treat a free name as a variable rather than a constant (repeatable)")
    a.set_defaults(func=cmd_analyze)
    return ap


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""``seqkit`` command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, axioms, commands
from .commands import EXIT_ERROR, Report, RunConfig
from .core.signature import Profile
from .errors import SeqkitError


def _profile(text: str) -> Profile:
    try:
        return Profile.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration (overrides script set-option values)")
    g.add_argument("--profile", type=_profile, help="proposal, cvc5, z3 or arrayc")
    g.add_argument("--max-len", type=int, dest="max_len", help="longest sequence enumerated (default 3)")
    g.add_argument("--int-lo", type=int, dest="int_lo", help="low end of the integer window (default -2)")
    g.add_argument("--int-hi", type=int, dest="int_hi", help="high end of the integer window (default 4)")
    g.add_argument("--elem-card", type=int, dest="elem_card", help="values per element sort (default 2)")
    g.add_argument("--delta-int", type=int, dest="delta_int", help="default Int value under arrayc (default 0)")
    g.add_argument("--arrc-slice", choices=["inclusive", "exclusive"], dest="arrc_slice",
                   help="end-index convention of arrc.slice (default inclusive)")
    g.add_argument("--ceiling", type=int, help="resource ceiling (default $SEQKIT_CEILING or 10^7)")
    g.add_argument("--json", action="store_true", help="print a JSON report")
    g.add_argument("--audit", action="store_true", help="re-parse and re-check every printed witness")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqkit",
        description="Bounded reference semantics for a theory of sequences.",
    )
    parser.add_argument("--version", action="version", version=f"seqkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a script")
    p.add_argument("file")
    p.add_argument("--compare", type=_profile, help="also evaluate eval terms under this profile")
    _common(p)

    p = sub.add_parser("eval", help="evaluate the eval commands of a script (or one term)")
    p.add_argument("file", nargs="?")
    p.add_argument("-e", "--term", help="term to evaluate, e.g. '(seq.len (seq.unit 5))'")
    p.add_argument("--compare", type=_profile, help="also evaluate under this profile")
    _common(p)

    p = sub.add_parser("diff", help="differential witnesses between two profiles")
    p.add_argument("file")
    p.add_argument("--profile-a", type=_profile, default=Profile.PROPOSAL, dest="profile_a")
    p.add_argument("--profile-b", type=_profile, default=Profile.CVC5, dest="profile_b")
    p.add_argument("--show", type=int, default=5, help="witnesses listed in text output")
    _common(p)

    p = sub.add_parser("reduce", help="rewrite a fragment script into the Array_c vocabulary")
    p.add_argument("file")
    p.add_argument("--verify", action="store_true", help="check each reduced term against its original")
    _common(p)

    p = sub.add_parser("lemmas", help="print ground lemmas of an axiom schema as a script")
    p.add_argument("--schema", required=True, choices=sorted(axioms.SCHEMAS))
    p.add_argument("-n", type=int, default=1, help="number of input sequences for map_n / mapi_n")
    p.add_argument("--self", action="store_true", dest="self_instance",
                   help="fill the result hole with the operation itself")
    p.add_argument("--negate", action="store_true", help="assert the negated lemma")
    _common(p)

    p = sub.add_parser("fragment-check", help="fragment membership and index shifting")
    p.add_argument("file")
    _common(p)
    return parser


_OVERRIDES = ("profile", "max_len", "int_lo", "int_hi", "elem_card", "delta_int", "arrc_slice", "ceiling")


def _overrides(args) -> dict:
    out = {k: getattr(args, k, None) for k in _OVERRIDES}
    if getattr(args, "compare", None) is not None:
        out["compare"] = args.compare
    out["audit"] = args.audit or None
    out["verify"] = getattr(args, "verify", False) or None
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def dispatch(args) -> Report:
    base = RunConfig()
    ov = _overrides(args)
    if args.command == "run":
        return commands.cmd_run(_read(args.file), base, ov)
    if args.command == "eval":
        if args.term is not None:
            prelude = _read(args.file) if args.file else ""
            return commands.cmd_eval(f"{prelude}\n(eval {args.term})", base, ov)
        if not args.file:
            raise SeqkitError("eval needs a script file or --term")
        return commands.cmd_eval(_read(args.file), base, ov)
    if args.command == "diff":
        return commands.cmd_diff(_read(args.file), base, args.profile_a, args.profile_b, ov, args.show)
    if args.command == "reduce":
        return commands.cmd_reduce(_read(args.file), base, ov)
    if args.command == "lemmas":
        cfg = base.with_options({}, ov)
        return commands.cmd_lemmas(args.schema, cfg, args.n, args.self_instance, args.negate)
    if args.command == "fragment-check":
        return commands.cmd_fragment_check(_read(args.file), base, ov)
    raise SeqkitError(f"unknown command {args.command}")  # pragma: no cover


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = dispatch(args)
    except SeqkitError as exc:
        if args.json:
            print(json.dumps({
                "schema": commands.SCHEMA_VERSION,
                "command": args.command,
                "records": [{"kind": "error", "message": exc.message, "pos": list(exc.pos) if exc.pos else None,
                             "error": type(exc).__name__}],
                "exit_code": exc.exit_code,
            }, indent=2, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(report.dumps() if args.json else report.text())
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end.

    ltlfsynth synth SPEC PART [--mode ...] [--order ...] [--stats] ...
    ltlfsynth play SPEC PART
    ltlfsynth gen --seed N [--conjuncts K --size S --inputs I --outputs O] [-o PREFIX]

``synth`` prints ``REALIZABLE`` or ``UNREALIZABLE`` on the first line and
``provenance=...`` on the second, and exits 0, 1 or 2 (error).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dfa as dfa_mod
from .compose import MODES, ORDERS, synthesize
from .limits import DEFAULT_MAX_STATES, ResourceLimitError
from .random_specs import gen_random
from .spec import SpecError, load_spec
from .strategy import PlayError, play_step, to_dot as strategy_dot
from .parser import ParseError

EXIT_REALIZABLE, EXIT_UNREALIZABLE, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", help="file with the LTLf formula")
    p.add_argument("part", help=".part file with .inputs/.outputs lines")
    p.add_argument("--mode", choices=MODES, default="incremental")
    p.add_argument("--order", choices=ORDERS, default="given")
    p.add_argument("--skip-precheck", action="store_true",
                   help="skip the per-conjunct unrealizability check")
    p.add_argument("--no-minimize", action="store_true")
    p.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ltlfsynth", description="Compositional LTLf synthesis (Moore semantics).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    synth = sub.add_parser("synth", help="decide realizability and build a strategy")
    _add_solver_args(synth)
    synth.add_argument("--verify", action="store_true", help="exhaustively verify the strategy")
    synth.add_argument("--stats", action="store_true", help="print a key=value stats line")
    synth.add_argument("--dot-strategy", metavar="PATH")
    synth.add_argument("--dot-dfa", metavar="PATH", help="DOT of the final winning region")

    play = sub.add_parser("play", help="play against the synthesized strategy")
    _add_solver_args(play)

    gen = sub.add_parser("gen", help="write a seeded random specification")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--conjuncts", type=_positive, default=3)
    gen.add_argument("--size", type=_positive, default=6)
    gen.add_argument("--inputs", type=int, default=2)
    gen.add_argument("--outputs", type=_positive, default=2)
    gen.add_argument("-o", "--out", metavar="PREFIX",
                     help="write PREFIX.ltlf and PREFIX.part instead of printing")
    return parser


def _solve(args, verify: bool):
    spec = load_spec(args.spec, args.part)
    verdict = synthesize(spec, args.mode, args.order, precheck=not args.skip_precheck,
                         minimize=not args.no_minimize, verify=verify,
                         max_states=args.max_states)
    return spec, verdict


def run_synth(args, out=None) -> int:
    out = out or sys.stdout
    spec, verdict = _solve(args, args.verify)
    print("REALIZABLE" if verdict.realizable else "UNREALIZABLE", file=out)
    print(f"provenance={verdict.provenance}", file=out)
    if args.stats:
        print(verdict.stats_line(), file=out)
    if verdict.realizable:
        if args.verify and not verdict.verified:
            print(f"strategy verification failed on inputs {verdict.counterexample}", file=sys.stderr)
            return EXIT_ERROR
        if args.dot_strategy:
            Path(args.dot_strategy).write_text(strategy_dot(verdict.strategy))
        if args.dot_dfa:
            Path(args.dot_dfa).write_text(dfa_mod.to_dot(verdict.region.dfa, ew=verdict.region.ew))
        return EXIT_REALIZABLE
    return EXIT_UNREALIZABLE


def _show(names, bits) -> str:
    on = [n for i, n in enumerate(names) if bits >> i & 1]
    return " ".join(on) if on else "(none)"


def run_play(args, stdin=None, out=None) -> int:
    stdin, out = stdin or sys.stdin, out or sys.stdout
    spec, verdict = _solve(args, verify=False)
    if not verdict.realizable:
        print(f"UNREALIZABLE ({verdict.provenance}); nothing to play", file=out)
        return EXIT_UNREALIZABLE
    m = verdict.strategy
    state = m.init
    print(f"inputs: {' '.join(m.inputs) or '(none)'}; outputs: {' '.join(m.outputs) or '(none)'}", file=out)
    print("enter the true inputs each round (space separated), 'quit' to stop", file=out)
    rounds = 0
    while True:
        print(f"agent: {_show(m.outputs, m.output[state])}", file=out)
        print("env> ", end="", file=out, flush=True)
        line = stdin.readline()
        if not line or line.strip() == "quit":
            print("bye", file=out)
            return EXIT_REALIZABLE
        try:
            state, _, halted = play_step(m, state, line.split())
        except PlayError as exc:
            print(f"error: {exc}", file=out)
            continue
        rounds += 1
        if halted:
            print(f"HALT: goal reached after {rounds} round(s)", file=out)
            return EXIT_REALIZABLE


def run_gen(args, out=None) -> int:
    out = out or sys.stdout
    if args.inputs < 0:
        raise ValueError("--inputs must be non-negative")
    formula, part = gen_random(args.seed, args.conjuncts, args.size, args.inputs, args.outputs)
    if args.out:
        Path(f"{args.out}.ltlf").write_text(formula)
        Path(f"{args.out}.part").write_text(part)
    else:
        out.write(formula)
        out.write(part)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"synth": run_synth, "play": run_play, "gen": run_gen}[args.command]
    try:
        return handler(args)
    except (OSError, ParseError, SpecError, ResourceLimitError, ValueError) as exc:
        print(f"ltlfsynth: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

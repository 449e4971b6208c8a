"""Command-line front end.

Pair words are written ``TOP,BOTTOM``.  The caret letters include
parentheses, so quote them in the shell: ``caretf accept 'ree,rae'``.

Exit codes: 0 success or accept, 1 reject or failed verification,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .acceptor import build_acceptor, quasigeodesic_report
from .automata import AutomatonError, run, to_dot
from .multipliers import build_multipliers, mult_input
from .treecalc import (MAX_RADIUS, TreeWordError, ball, check_tree_word, decode_pair, evaluate,
                       pair_from_json, pair_text, pair_to_json, parse_word, split_pair_text)

OK, REJECT, USAGE = 0, 1, 2

MACHINES = ("m_int", "m_tree", "l_tt", "r", "f", "n0", "l_x0", "n1", "k1", "case5b", "l_x1")


class InputError(Exception):
    pass


def _words(text: str) -> tuple[str, str]:
    """Parse ``TOP,BOTTOM`` into two valid tree words of equal length."""
    try:
        top, bottom = split_pair_text(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for name, w in (("top", top), ("bottom", bottom)):
        try:
            check_tree_word(w)
        except TreeWordError as exc:
            raise InputError(f"{name} word {w!r}: {exc}") from None
    return top, bottom


def _columns(text: str) -> tuple:
    """Columns of ``TOP,BOTTOM`` checked only for letters and lengths."""
    try:
        top, bottom = split_pair_text(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return tuple(zip(top, bottom))


def _emit(args, text: str, obj=None):
    if getattr(args, "json", False) and obj is not None:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def cmd_encode(args) -> int:
    raw = sys.stdin.read() if args.tree_pair == "-" else args.tree_pair
    try:
        p = pair_from_json(raw)
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad tree pair JSON: {exc}") from None
    text = pair_text(p)
    _emit(args, text, {"pair": text})
    return OK


def cmd_decode(args) -> int:
    top, bottom = _words(args.pair)
    cols = tuple(zip(top, bottom))
    if not args.unreduced and not build_acceptor().accepts(cols):
        print(f"{args.pair}: not a normal form (the pair is unreduced); "
              "pass --unreduced to decode it anyway", file=sys.stderr)
        return REJECT
    print(pair_to_json(decode_pair((top, bottom))))
    return OK


def _fmt_col(c) -> str:
    return f"({c[0]},{c[1]})"


def cmd_accept(args) -> int:
    cols = _columns(args.pair)
    result = run(build_acceptor().f_machine, cols, trace=args.trace)
    verdict = "ACCEPT" if result.accepted else "REJECT"
    if args.json:
        obj = {"pair": args.pair, "accepted": result.accepted, "reason": result.reason}
        if args.trace:
            obj["trace"] = [{"letter": None if s.letter is None else "".join(s.letter),
                             "state": repr(s.state), "counters": list(s.counters)}
                            for s in result.trace]
        print(json.dumps(obj, sort_keys=True))
    else:
        if args.trace:
            for s in result.trace:
                letter = "start" if s.letter is None else _fmt_col(s.letter)
                print(f"{letter:>7}  counters={list(s.counters)}  state={s.state!r}")
        print(verdict if result.accepted else f"{verdict} ({result.reason})")
    return OK if result.accepted else REJECT


def cmd_check_mult(args) -> int:
    u, v = _columns(args.u), _columns(args.v)
    try:
        m = build_multipliers().machine(args.s)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    accepted = run(m, mult_input(u, v)).accepted
    _emit(args, "ACCEPT" if accepted else "REJECT",
          {"generator": args.s, "u": args.u, "v": args.v, "accepted": accepted})
    return OK if accepted else REJECT


def cmd_mult(args) -> int:
    g = decode_pair(_words(args.pair))
    try:
        names = parse_word(" ".join(args.word))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = pair_text(evaluate(names, start=g))
    _emit(args, text, {"pair": args.pair, "word": names, "result": text})
    return OK


def cmd_ball(args) -> int:
    if not 0 <= args.radius <= MAX_RADIUS:
        raise InputError(f"radius must be between 0 and {MAX_RADIUS}")
    entries = ball(args.radius)
    if args.json:
        print(json.dumps([{"pair": k, "length": d} for k, (_, d) in entries.items()]))
    else:
        for key, (_, dist) in entries.items():
            print(f"{key}\t{dist}")
    return OK


def cmd_quasigeodesic(args) -> int:
    if not 0 <= args.radius <= MAX_RADIUS:
        raise InputError(f"radius must be between 0 and {MAX_RADIUS}")
    rep = quasigeodesic_report(args.radius)
    _emit(args, f"radius {rep.radius}: {len(rep.rows)} elements, D = {rep.d_min} "
                f"(attained at {rep.witness})",
          {"radius": rep.radius, "elements": len(rep.rows), "D": str(rep.d_min),
           "witness": rep.witness})
    return OK


def cmd_verify(args) -> int:
    from .verify import verify_all
    report = verify_all(max_carets=args.max_carets, radius=args.radius, seed=args.seed,
                        wrong_samples=args.samples, audit=not args.no_audit)
    for line in report.lines():
        print(line)
    print("ALL PASSED" if report.passed else "SOME CHECKS FAILED")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json() + "\n")
    return OK if report.passed else REJECT


def machine_by_name(name: str):
    acc = build_acceptor()
    if name in ("m_int", "m_tree", "l_tt"):
        return getattr(acc, name)
    if name == "r":
        return acc.r_dfa
    if name == "f":
        return acc.f_machine
    return getattr(build_multipliers(), name)


def cmd_export_dot(args) -> int:
    m = machine_by_name(args.machine)
    names = str if args.machine in ("m_int", "m_tree", "case5b") else None
    try:
        text = to_dot(m, limit=args.limit, state_names=names)
    except AutomatonError as exc:
        raise InputError(f"{exc}; raise --limit to export anyway") from None
    sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="caretf",
        description="Caret-type normal forms and counter automata for Thompson's group F. "
                    "Pair words are TOP,BOTTOM; quote them, since they contain parentheses.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("encode", help="tree-pair JSON to a TOP,BOTTOM pair word")
    s.add_argument("tree_pair", help='JSON {"domain": tree, "range": tree}, or - for stdin')
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="pair word to tree-pair JSON")
    s.add_argument("pair")
    s.add_argument("--unreduced", action="store_true",
                   help="accept any two tree words of equal length")
    s.add_argument("--json", action="store_true", help="output is always JSON; accepted for symmetry")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("accept", help="run the normal-form acceptor")
    s.add_argument("pair")
    s.add_argument("--trace", action="store_true", help="print every configuration")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_accept)

    s = sub.add_parser("check-mult", help="run a multiplier on two pair words")
    s.add_argument("-s", required=True, choices=["x0", "x1", "x0inv", "x1inv"])
    s.add_argument("u")
    s.add_argument("v")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_check_mult)

    s = sub.add_parser("mult", help="multiply a pair word by generators, left to right")
    s.add_argument("pair")
    s.add_argument("word", nargs="+", help="generators: x0 x1 x0inv x1inv (or x0^-1)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_mult)

    s = sub.add_parser("ball", help="elements within a word-length radius")
    s.add_argument("radius", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_ball)

    s = sub.add_parser("quasigeodesic", help="fit the quasigeodesic constant on a ball")
    s.add_argument("radius", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_quasigeodesic)

    s = sub.add_parser("verify", help="check every machine against the tree-pair oracle")
    s.add_argument("--max-carets", type=int, default=6)
    s.add_argument("--radius", type=int, default=5)
    s.add_argument("--seed", type=int, default=20240601)
    s.add_argument("--samples", type=int, default=1000, help="near misses per generator")
    s.add_argument("--no-audit", action="store_true", help="skip static determinism audits")
    s.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export-dot", help="Graphviz text for a machine")
    s.add_argument("machine", choices=MACHINES)
    s.add_argument("--limit", type=int, default=20000, help="maximum number of states")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (InputError, AutomatonError, TreeWordError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except BrokenPipeError:
        sys.stderr.close()
        return OK


if __name__ == "__main__":
    sys.exit(main())

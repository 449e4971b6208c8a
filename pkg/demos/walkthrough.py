"""A tour: encode a tree pair, test it against the acceptor, multiply by a
generator and check the product with the multiplier automaton."""
import argparse

from caretf.acceptor import build_acceptor
from caretf.automata import run
from caretf.multipliers import build_multipliers, classify_x1, mult_input
from caretf.treecalc import evaluate, generator, multiply, pair_columns, pair_text, parse_word


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("word", nargs="*", default=["x0", "x1", "x1", "x0inv"],
                    help="generators defining the starting element")
    args = ap.parse_args()

    g = evaluate(parse_word(" ".join(args.word)))
    print(f"element {' '.join(args.word)}")
    print(f"  normal form      {pair_text(g)}")
    print(f"  in the language  {build_acceptor().accepts(pair_text(g))}")

    mult = build_multipliers()
    for s in ("x0", "x1", "x0inv", "x1inv"):
        h = multiply(g, generator(s))
        ok = run(mult.machine(s), mult_input(pair_columns(g), pair_columns(h))).accepted
        note = f" (x1 case {classify_x1(g)})" if s == "x1" else ""
        print(f"  times {s:<6} {pair_text(h):<24} multiplier accepts: {ok}{note}")


if __name__ == "__main__":
    main()

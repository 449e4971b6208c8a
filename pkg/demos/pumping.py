"""The bracket-nesting words that rule out a context-free normal form:
each witness is accepted, and repeating or dropping a block breaks it."""
import argparse

from caretf.acceptor import build_acceptor, ogden_witness, pumped_variants
from caretf.treecalc import decode_pair, is_reduced


def text(cols):
    return "".join(c[0] for c in cols) + "," + "".join(c[1] for c in cols)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-p", type=int, default=2)
    ap.add_argument("--variants", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    acc = build_acceptor()
    w = ogden_witness(args.p)
    print(f"witness p={args.p}: {text(w.columns)}")
    print(f"  accepted {acc.accepts(w)}, reduced {is_reduced(decode_pair(w))}")
    for label, v in pumped_variants(args.p, args.variants, seed=args.seed):
        print(f"  {label:<12} {text(v):<40} accepted {acc.accepts(v)}")


if __name__ == "__main__":
    main()

"""How reduced elements spread over the multiplier cases, and how the
normal-form length compares with word length on a ball."""
import argparse
from collections import Counter

from caretf.acceptor import quasigeodesic_report
from caretf.multipliers import classify_x0, classify_x1
from caretf.treecalc import enumerate_reduced_pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--carets", type=int, default=5)
    ap.add_argument("--radius", type=int, default=6)
    args = ap.parse_args()

    x0, x1 = Counter(), Counter()
    for n in range(1, args.carets + 1):
        for g in enumerate_reduced_pairs(n):
            x0[classify_x0(g)] += 1
            x1[classify_x1(g)] += 1
    print(f"reduced elements with at most {args.carets} carets: {sum(x0.values())}")
    print("  x0 cases:", dict(sorted(x0.items())))
    print("  x1 cases:", dict(sorted(x1.items())))

    rep = quasigeodesic_report(args.radius)
    worst = max(nl for _, _, nl in rep.rows)
    print(f"ball of radius {args.radius}: {len(rep.rows)} elements, longest normal form {worst}")
    print(f"  least D with |nf| <= D(|g| + 1): {rep.d_min}, attained at {rep.witness}")


if __name__ == "__main__":
    main()

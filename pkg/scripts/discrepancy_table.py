"""Print both discrepancy routes and the chart equations for a list of germs.

    python3 scripts/discrepancy_table.py "x^2+y^2+z^2+t^5" 1,1,1,1 \
        "x^2+y^2+z^3+t^6;action 1/2 (1,1,0,1)" 3,3,2,1
"""

import argparse

from realmmp import BlowupWeights, classify_terminal, parse_germ, weighted_blowup


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("pairs", nargs="+", help="germ weights germ weights ...")
    ap.add_argument("--charts", action="store_true", help="also print the chart equations")
    args = ap.parse_args()
    if len(args.pairs) % 2:
        ap.error("arguments come in (germ, weights) pairs")
    print(f"{'germ':48s} {'class':10s} {'weights':12s} {'a(E,X)':>8s} {'jacobian':>9s}")
    for text, w in zip(args.pairs[::2], args.pairs[1::2]):
        germ, _ = parse_germ(text.replace(";", "\n"))
        res = weighted_blowup(germ, BlowupWeights.parse(w))
        jac = "n/a" if res.discrepancy_jacobian is None else str(res.discrepancy_jacobian)
        print(f"{str(germ):48s} {classify_terminal(germ).tag:10s} {str(res.weights):12s} "
              f"{str(res.discrepancy):>8s} {jac:>9s}")
        if args.charts:
            for ch in res.charts:
                print(f"    {ch.describe()}")


if __name__ == "__main__":
    main()

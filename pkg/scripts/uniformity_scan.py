"""Least common N with B_t(e) inside C_N(g) for alternating groups A_lo..A_hi."""

import argparse
from fractions import Fraction

from normcover.coverage import uniformity_scan
from normcover.groups import SymmetricGroup
from normcover.norms import with_catalog_norm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=5)
    ap.add_argument("--hi", type=int, default=7)
    ap.add_argument("--r", type=Fraction, default=Fraction(1, 2))
    ap.add_argument("--t", type=Fraction, default=Fraction(101, 100))
    ap.add_argument("--eps", type=Fraction, default=Fraction(0))
    ap.add_argument("--n-max", type=int, default=64)
    args = ap.parse_args()

    fam = [with_catalog_norm(SymmetricGroup(n, alternating=True), "hamming_normalized")
           for n in range(args.lo, args.hi + 1)]
    rep = uniformity_scan(fam, args.r, args.t, args.eps, n_max=args.n_max)
    print(f"verdict {rep.verdict}  N = {rep.details.get('N')}  (bound 16 + 4t/r = {16 + 4 * args.t / args.r})")
    for row in rep.details.get("per_group", []):
        print(" ", row)


if __name__ == "__main__":
    main()

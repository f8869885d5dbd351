"""Jordan length against normal generation number N(A) in small SL_n(F_p)."""

import argparse
from collections import Counter

from normcover.linear import ls_constant_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=["2,3", "2,5", "3,2"], help="n,p pairs")
    args = ap.parse_args()
    for spec in args.groups:
        n, p = (int(x) for x in spec.split(","))
        rep = ls_constant_probe(n, p)
        print(f"SL_{n}(F_{p}): C_emp = {rep.c_emp}  all finite: {rep.all_finite}  consistent: {rep.self_consistent}")
        for (j, ng), cnt in sorted(Counter((r.jordan, r.normal_gen) for r in rep.rows).items()):
            print(f"  l_J = {str(j):>4}  N = {ng!s:>4}  x{cnt}")


if __name__ == "__main__":
    main()

"""Count tau in S_n (||tau||_H >= 5) with no nearby even nonexceptional sigma of the same support."""

import argparse
from collections import Counter

from normcover.groups import SymmetricGroup
from normcover.perm import NoNearbyNonexceptional, hamming_norm, nearby_nonexceptional


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=5)
    ap.add_argument("--hi", type=int, default=8)
    args = ap.parse_args()
    for n in range(args.lo, args.hi + 1):
        total, bad = 0, Counter()
        for tau in SymmetricGroup(n).elements():
            if hamming_norm(tau) < 5:
                continue
            total += 1
            try:
                nearby_nonexceptional(tau)
            except NoNearbyNonexceptional:
                bad[(hamming_norm(tau), tau.cycle_type())] += 1
        print(f"S_{n}: {sum(bad.values())}/{total} without repair")
        for key, cnt in sorted(bad.items()):
            print(f"  support {key[0]}, cycle type {key[1]}: {cnt}")


if __name__ == "__main__":
    main()

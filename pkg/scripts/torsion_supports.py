"""List the index multisets that can carry n-torsion, for each sieve order."""
import argparse

from fanoindex.torsion import feasible_supports


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("orders", nargs="*", type=int, default=[2, 3, 5, 7, 11, 13])
    args = ap.parse_args()
    for n in args.orders:
        sups = sorted(feasible_supports(n))
        sums = sorted({sum(s) for s in sups})
        print(f"n={n}: {len(sups)} supports, index sums {sums}")
        for s in sups:
            print("   ", s)


if __name__ == "__main__":
    main()

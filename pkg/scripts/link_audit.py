"""Solve every shipped link case and report what eliminates each candidate."""
import argparse

from fanoindex.link.cases import audit_link_case, case_names, load_bearing_ids, load_case, solve_link_case


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cases", nargs="*")
    ap.add_argument("--load-bearing", action="store_true", help="also recompute load-bearing constraints")
    args = ap.parse_args()
    for name in args.cases or case_names():
        case = load_case(name)
        sols = solve_link_case(case)
        print(f"{name}: {len(sols)} solution(s)")
        for s in sols:
            print("   survives:", dict(s.values))
        for a in audit_link_case(case):
            if not a.survives:
                print("   ", a.values, "killed by", ", ".join(a.killed_by))
        if args.load_bearing:
            print("   load-bearing:", ", ".join(load_bearing_ids(case)) or "none")


if __name__ == "__main__":
    main()

"""Print both classifier presets as markdown tables, with timings."""
import argparse
import time

from fanoindex.classify import PRESETS, index_projection, run_preset
from fanoindex.report import to_markdown


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for name in sorted(PRESETS):
        t0 = time.perf_counter()
        cands = run_preset(name, workers=args.workers)
        dt = time.perf_counter() - t0
        print(f"## {name}: {len(cands)} candidates, {len(index_projection(cands))} index multisets ({dt:.1f}s)\n")
        print(to_markdown(cands))


if __name__ == "__main__":
    main()

"""Classify a planar section of the icosahedral reflection arrangement:
every candidate flag, its sectors, and where completeness breaks."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polarflip.fixtures import h3_section  # noqa: E402
from polarflip.followup import enumerate_candidates, incomplete_points, sectors_2d  # noqa: E402


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--random-budget", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    arr = h3_section()
    complete = 0
    print("h0\torientation\tside\tuncovered\tincomplete_sectors")
    for cand in enumerate_candidates(arr, args.random_budget, args.seed):
        sec = sectors_2d(cand)
        bad = sorted({j for j, _ in incomplete_points(cand, sec)})
        complete += not sec.uncovered and not bad
        d = cand.describe()
        print(f"{d['h0']}\t{d['orientation']}\t{d['side']}\t{len(sec.uncovered)}\t{bad}")
    print(f"# complete candidates: {complete}")


if __name__ == "__main__":
    main()

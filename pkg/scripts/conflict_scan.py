"""How often a seeded general flag gives a polar matching that pairs one
cell twice, per arrangement."""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polarflip.fixtures import NAMED, random_arrangement  # noqa: E402
from polarflip.flag import FlagError, build_flag  # noqa: E402
from polarflip.morse import build_salvetti, polar_matching, verify_matching  # noqa: E402
from polarflip.polar import build_polar_order  # noqa: E402
from polarflip.sweep import default_orderings  # noqa: E402


def scan(arr, seeds):
    failing = []
    for seed in seeds:
        try:
            flag = build_flag(arr, seed)
        except FlagError:
            continue
        order = build_polar_order(flag, default_orderings(flag))
        if not verify_matching(polar_matching(build_salvetti(order.poset), order))["ok"]:
            failing.append(seed)
    return failing


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--random", type=int, default=10, help="number of random central arrangements")
    args = p.parse_args(argv)
    seeds = range(args.seeds)
    for name in ("E3", "E4", "boolean3"):
        print(f"{name}\tfailing seeds {scan(NAMED[name](), seeds)}")
    rng = random.Random(7)
    for i in range(args.random):
        arr = random_arrangement(rng, 3, 4, central=True)
        print(f"central#{i}\tfailing seeds {scan(arr, seeds)}")


if __name__ == "__main__":
    main()

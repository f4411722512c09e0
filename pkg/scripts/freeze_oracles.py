"""Recompute the frozen reference values used by the tests.

Betti numbers come from a subset sum over the hyperplanes, which shares no
code with the lattice module; Salvetti cell counts come from counting pairs
``(face, chamber)`` with the chamber adjacent to the face.
"""

import argparse
import json
import sys
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polarflip.faces import conforms, enumerate_faces  # noqa: E402
from polarflip.fixtures import NAMED  # noqa: E402
from polarflip.linalg import rank  # noqa: E402


def betti_by_subsets(arr):
    d = arr.dim
    coeffs = [0] * (d + 1)
    n = len(arr.hyperplanes)
    for size in range(n + 1):
        for B in combinations(range(n), size):
            if B and arr.subspace_of(B) is None:
                continue
            r = rank([arr.hyperplanes[i].normal for i in B]) if B else 0
            coeffs[r] += (-1) ** size
    return [abs(c) for c in coeffs]


def salvetti_counts(arr):
    poset = enumerate_faces(arr)
    counts = [0] * (arr.dim + 1)
    for F in poset.faces:
        k = arr.dim - F.dim
        counts[k] += sum(1 for C in poset.chambers if conforms(C.signs, F.signs))
    return counts


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("names", nargs="*", default=["E1", "E2", "E3", "E4", "boolean3", "grid", "pencil"])
    args = p.parse_args(argv)
    for name in args.names:
        arr = NAMED[name]()
        row = {"betti": betti_by_subsets(arr), "salvetti_cells": salvetti_counts(arr)}
        print(name, json.dumps(row))


if __name__ == "__main__":
    main()

import random

from hypothesis import strategies as st

from polarflip.fixtures import random_arrangement


@st.composite
def arrangements(draw, dims=(2, 3), max_n=5, central=False):
    d = draw(st.sampled_from(dims))
    n = draw(st.integers(d, max_n if d == 2 else min(max_n, 4)))
    seed = draw(st.integers(0, 2 ** 32))
    return random_arrangement(random.Random(seed), d, n, central=central)


def whitney_char_poly(arr):
    """``chi(t) = sum over subsets B with nonempty intersection of
    (-1)^|B| t^(d - rank B)``, straight from the definition."""
    from itertools import combinations

    from polarflip.linalg import rank
    d = arr.dim
    coeffs = [0] * (d + 1)
    n = len(arr.hyperplanes)
    for size in range(n + 1):
        for B in combinations(range(n), size):
            if B and arr.subspace_of(B) is None:
                continue
            r = rank([arr.hyperplanes[i].normal for i in B]) if B else 0
            coeffs[d - r] += (-1) ** size
    return coeffs

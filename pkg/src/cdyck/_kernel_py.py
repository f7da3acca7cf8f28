"""Pure-Python coloring sweep; same contract as the compiled ``_kernel``."""
from __future__ import annotations

from itertools import product


def dd_histogram(n_down: int, r: int, pairs) -> list[int]:
    """Histogram of same-color dd pairs over all r**n_down colorings.

    ``pairs`` lists (i, j) indices of down steps that are adjacent in the path.
    Entry k of the result counts colorings with exactly k equal-color pairs.
    """
    if r < 1 or n_down < 0:
        raise ValueError("need r >= 1 and n_down >= 0")
    pairs = [(int(i), int(j)) for i, j in pairs]
    hist = [0] * (len(pairs) + 1)
    for color in product(range(r), repeat=n_down):
        same = 0
        for i, j in pairs:
            if color[i] == color[j]:
                same += 1
        hist[same] += 1
    return hist

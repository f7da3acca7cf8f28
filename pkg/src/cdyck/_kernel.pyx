# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coloring sweep for the brute-force oracle."""

from libc.stdlib cimport malloc, free


def dd_histogram(int n_down, int r, pairs):
    """Histogram of same-color dd pairs over all r**n_down colorings.

    ``pairs`` lists (i, j) indices of down steps that are adjacent in the path.
    Entry k of the result counts colorings with exactly k equal-color pairs.
    """
    cdef int n_pairs = len(pairs)
    cdef int i, k, same
    cdef int *a
    cdef int *b
    cdef int *color
    cdef long long *hist
    if r < 1 or n_down < 0:
        raise ValueError("need r >= 1 and n_down >= 0")
    a = <int *> malloc((n_pairs + 1) * sizeof(int))
    b = <int *> malloc((n_pairs + 1) * sizeof(int))
    color = <int *> malloc((n_down + 1) * sizeof(int))
    hist = <long long *> malloc((n_pairs + 1) * sizeof(long long))
    if not a or not b or not color or not hist:
        free(a); free(b); free(color); free(hist)
        raise MemoryError()
    try:
        for k in range(n_pairs):
            a[k] = pairs[k][0]
            b[k] = pairs[k][1]
        for k in range(n_pairs + 1):
            hist[k] = 0
        for i in range(n_down):
            color[i] = 0
        while True:
            same = 0
            for k in range(n_pairs):
                if color[a[k]] == color[b[k]]:
                    same += 1
            hist[same] += 1
            # odometer increment, last digit fastest
            i = n_down - 1
            while i >= 0:
                color[i] += 1
                if color[i] < r:
                    break
                color[i] = 0
                i -= 1
            if i < 0:
                break
        return [hist[k] for k in range(n_pairs + 1)]
    finally:
        free(a); free(b); free(color); free(hist)

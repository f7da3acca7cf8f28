"""Riordan arrays (d(x), h(x)) over truncated series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import as_count, as_fraction
from .series import DEFAULT_ORDER, SeriesError, TruncSeries, compose, series_C, series_Sr


class RiordanError(ValueError):
    pass


@dataclass(frozen=True)
class RiordanArray:
    """Lower-triangular array whose column k has generating function d*h**k."""

    d: TruncSeries
    h: TruncSeries

    def __post_init__(self):
        if self.d[0] == 0:
            raise RiordanError("d(0) must be nonzero")
        if self.h[0] != 0:
            raise RiordanError("h(0) must be zero")

    @property
    def order(self) -> int:
        return min(self.d.order, self.h.order)

    @property
    def proper(self) -> bool:
        return self.h.order >= 1 and self.h[1] != 0

    def column(self, k: int) -> TruncSeries:
        if k < 0:
            raise RiordanError("column index must be >= 0")
        n = self.order
        return self.d.truncate(n) * self.h.truncate(n) ** k

    def entry(self, n: int, k: int) -> Fraction:
        if n < 0 or k < 0:
            raise RiordanError("indices must be non-negative")
        if n > self.order:
            raise RiordanError(f"row {n} exceeds the array's truncation order {self.order}")
        if self.proper and k > n:
            return Fraction(0)
        return self.column(k)[n]

    def row(self, n: int) -> list[Fraction]:
        return [self.entry(n, k) for k in range(n + 1)]

    def triangle(self, n_max: int) -> list[list[Fraction]]:
        if n_max > self.order:
            raise RiordanError(f"row {n_max} exceeds the array's truncation order {self.order}")
        cols = [self.column(k) for k in range(n_max + 1)]
        return [[cols[k][n] for k in range(n + 1)] for n in range(n_max + 1)]

    def apply(self, a: TruncSeries) -> TruncSeries:
        """d(x) * A(h(x)): the array acting on a column vector with GF A."""
        n = min(self.order, a.order)
        return self.d.truncate(n) * compose(a.truncate(n), self.h.truncate(n))


def _need_r(r: int) -> None:
    if r < 2:
        raise RiordanError(f"r must be >= 2, got {r}")


def _need_b(b) -> Fraction:
    b = as_fraction(b)
    if b == 0:
        raise RiordanError("b must be nonzero")
    return b


def _common_h(s: TruncSeries, coef) -> TruncSeries:
    return (s * s).shift(1).scale(coef)


def points_array(r: int, order: int = DEFAULT_ORDER) -> RiordanArray:
    """(S_r^2 + 1/(r-1), x(r-1)S_r^2); entry (n, l) is P_{n,l} + delta_{n,0}/(r-1)."""
    _need_r(r)
    s = series_Sr(r, order)
    return RiordanArray(s * s + Fraction(1, r - 1), _common_h(s, r - 1))


def usteps_array(r: int, order: int = DEFAULT_ORDER) -> RiordanArray:
    """(S_r^2 (1 + (r-1)S_r), x(r-1)S_r^2)."""
    _need_r(r)
    s = series_Sr(r, order)
    return RiordanArray(s * s * (s.scale(r - 1) + 1), _common_h(s, r - 1))


def peaks_array(r: int, order: int = DEFAULT_ORDER) -> RiordanArray:
    """(r S_r^2, x(r-1)S_r^2)."""
    _need_r(r)
    s = series_Sr(r, order)
    return RiordanArray((s * s).scale(r), _common_h(s, r - 1))


def points_array_ab(a, b, order: int = DEFAULT_ORDER) -> RiordanArray:
    """(C^2 + (a-b)/b, bxC^2) with C = C(a, b; x)."""
    a, b = as_fraction(a), _need_b(b)
    c = series_C(a, b, order)
    return RiordanArray(c * c + (a - b) / b, _common_h(c, b))


def usteps_array_ab(a, b, order: int = DEFAULT_ORDER) -> RiordanArray:
    """(C^2 (a - b + bC), bxC^2)."""
    a, b = as_fraction(a), _need_b(b)
    c = series_C(a, b, order)
    return RiordanArray(c * c * (c.scale(b) + (a - b)), _common_h(c, b))


def peaks_array_ab(a, b, order: int = DEFAULT_ORDER) -> RiordanArray:
    """(aC^2, bxC^2)."""
    a, b = as_fraction(a), _need_b(b)
    c = series_C(a, b, order)
    return RiordanArray((c * c).scale(a), _common_h(c, b))


_ARRAYS = {"points": points_array, "usteps": usteps_array, "peaks": peaks_array}


def array_for(stat: str, r: int, order: int = DEFAULT_ORDER) -> RiordanArray:
    try:
        return _ARRAYS[stat](r, order)
    except KeyError:
        raise RiordanError(f"no Riordan array for statistic {stat!r}") from None


def riordan_count(stat: str, n: int, ell: int, r: int, order: int | None = None) -> int:
    """Table cell read off the Riordan array, with the points head term removed."""
    if ell < 0 or ell > n:
        return 0
    arr = array_for(stat, r, max(n, order or n))
    value = arr.entry(n, ell)
    if stat == "points" and n == 0:
        value -= Fraction(1, r - 1)
    return as_count(value, f"{stat}[{n},{ell}] r={r}")


def riordan_table(stat: str, r: int, n_max: int) -> list[list[int]]:
    """Whole triangle rows 0..n_max from one array construction."""
    arr = array_for(stat, r, max(n_max, 0))
    rows = arr.triangle(n_max)
    if stat == "points":
        rows[0][0] -= Fraction(1, r - 1)
    return [[as_count(v, f"{stat}[{n},{k}] r={r}") for k, v in enumerate(row)] for n, row in enumerate(rows)]


__all__ = [
    "RiordanArray",
    "RiordanError",
    "SeriesError",
    "array_for",
    "peaks_array",
    "peaks_array_ab",
    "points_array",
    "points_array_ab",
    "riordan_count",
    "riordan_table",
    "usteps_array",
    "usteps_array_ab",
]

"""Closed-form counting formulas.

Sums are evaluated in exact rationals. Functions returning counts convert
the result with :func:`~cdyck.exact.as_count`, so a fractional value raises
IntegralityError instead of being rounded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import as_count, as_fraction, binom

F = Fraction


def catalan(n: int) -> int:
    return binom(2 * n, n) // (n + 1)


def catalan_ab(n: int, a, b) -> Fraction:
    """Total weight of (a, b)-Dyck paths of length 2n (Narayana sum)."""
    a, b = as_fraction(a), as_fraction(b)
    if n == 0:
        return F(1)
    return sum(
        (F(binom(n, k - 1) * binom(n, k), n) * a**k * b ** (n - k) for k in range(1, n + 1)),
        F(0),
    )


def motzkin_ab(n: int, a, b) -> Fraction:
    """Total weight of (a, b)-Motzkin paths of length n."""
    a, b = as_fraction(a), as_fraction(b)
    return sum((binom(n, 2 * k) * catalan(k) * a ** (n - 2 * k) * b**k for k in range(n // 2 + 1)), F(0))


def schroder_ab(n: int, a, b) -> Fraction:
    """Total weight of (a, b)-Schroder paths of length 2n."""
    a, b = as_fraction(a), as_fraction(b)
    return sum((binom(n + k, 2 * k) * catalan(k) * a ** (n - k) * b**k for k in range(n + 1)), F(0))


def schroder_r(n: int, r: int) -> int:
    """S_n^{(r)}: r-colored Dyck paths of length 2n with no equal-colored dd."""
    return as_count(schroder_ab(n, 1, r - 1), f"S_{n}^({r})")


def _need_r(r: int) -> None:
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")


def colored_dd_count(n: int, k: int, r: int) -> int:
    """A_{n,k}^{(r)}: r-colored Dyck paths of length 2n with exactly k same-color dd pairs."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > n:
        return 0
    total = F(0)
    for ell in range(1, n - k + 1):
        total += (
            F(binom(n, ell - 1) * binom(n, ell), n)
            * binom(n - ell, k)
            * F(r) ** ell
            * F(r - 1) ** (n - ell - k)
        )
    return as_count(total, f"A_{n},{k}^({r})")


def point_count(n: int, ell: int, r: int) -> int:
    """P_{n,l}^{(r)}: points at level l over A_{n,0}^{(r)}."""
    _need_r(r)
    if ell < 0 or ell > n:
        return 0
    if n == 0:
        return 1
    total = F(0)
    for j in range(n - ell + 1):
        inner = F(2 * ell, (2 * n - j) * (r - 1)) * binom(2 * n - j, n - ell)
        inner += F(2 * ell + 2, 2 * n - j + 2) * binom(2 * n - j + 2, n - ell)
        total += binom(n - ell, j) * inner * (r - 1) ** (n - j)
    return as_count(total, f"P_{n},{ell}^({r})")


def ustep_count(n: int, ell: int, r: int) -> int:
    """U_{n,l}^{(r)}: up steps at level l+1 over A_{n+1,0}^{(r)}."""
    _need_r(r)
    if ell < 0 or ell > n:
        return 0
    total = F(0)
    for j in range(n - ell + 1):
        inner = F(2 * ell + 2, 2 * n - j + 2) * binom(2 * n - j + 2, n - ell)
        inner += F((2 * ell + 3) * (r - 1), 2 * n - j + 3) * binom(2 * n - j + 3, n - ell)
        total += binom(n - ell, j) * inner * (r - 1) ** (n - j)
    return as_count(total, f"U_{n},{ell}^({r})")


def peak_count(n: int, ell: int, r: int) -> int:
    """p_{n,l}^{(r)}: peaks at level l+1 over A_{n+1,0}^{(r)}."""
    _need_r(r)
    if ell < 0 or ell > n:
        return 0
    total = F(0)
    for j in range(n - ell + 1):
        total += (
            F(2 * r * (ell + 1), 2 * n - j + 2)
            * binom(2 * n - j + 2, n - ell)
            * binom(n - ell, j)
            * (r - 1) ** (n - j)
        )
    return as_count(total, f"p_{n},{ell}^({r})")


def udu_free_count(n: int, r: int) -> int:
    """T_{n,0}^{(r)}: paths in A_{n,0}^{(r)} with no udu window."""
    _need_r(r)
    if n == 0:
        return 1
    total = F(0)
    for j in range(n // 2, n):
        total += binom(n - 1, j) * F(binom(j + 1, n - j), j + 1) * r ** (n - j) * (r - 1) ** j
    return as_count(total, f"T_{n},0^({r})")


def udu_count(n: int, ell: int, r: int) -> int:
    """T_{n,l}^{(r)}: paths in A_{n,0}^{(r)} with exactly l udu windows.

    Cells with l >= n > 0 lie outside the table and are 0 (see
    :func:`evaluate` for a flagged result).
    """
    _need_r(r)
    if n == 0:
        return 1 if ell == 0 else 0
    if ell < 0 or ell >= n:
        return 0
    return binom(n - 1, ell) * udu_free_count(n - ell, r) * r**ell


def _need_b(b: Fraction) -> None:
    if b == 0:
        raise ValueError("b must be nonzero")


def point_count_ab(n: int, ell: int, a, b) -> Fraction:
    """P_{n,l}^{(a,b)} for colored (a, b)-Dyck paths."""
    a, b = as_fraction(a), as_fraction(b)
    _need_b(b)
    if ell < 0 or ell > n:
        return F(0)
    if n == 0:
        return F(1)
    total = F(0)
    for j in range(n - ell + 1):
        inner = F(2 * ell, 2 * n - j) * (a - b) * binom(2 * n - j, n - ell)
        inner += F(2 * (ell + 1), 2 * n - j + 2) * b * binom(2 * n - j + 2, n - ell)
        total += binom(n - ell, j) * inner * (a - b) ** j * b ** (n - j - 1)
    return total


def ustep_count_ab(n: int, ell: int, a, b) -> Fraction:
    """U_{n,l}^{(a,b)} for colored (a, b)-Dyck paths."""
    a, b = as_fraction(a), as_fraction(b)
    _need_b(b)
    if ell < 0 or ell > n:
        return F(0)
    total = F(0)
    for j in range(n - ell + 1):
        inner = F(2 * (ell + 1), 2 * n - j + 2) * (a - b) * binom(2 * n - j + 2, n - ell)
        inner += F(2 * ell + 3, 2 * n - j + 3) * b * binom(2 * n - j + 3, n - ell)
        total += binom(n - ell, j) * inner * (a - b) ** j * b ** (n - j)
    return total


def peak_count_ab(n: int, ell: int, a, b) -> Fraction:
    """p_{n,l}^{(a,b)} for colored (a, b)-Dyck paths."""
    a, b = as_fraction(a), as_fraction(b)
    _need_b(b)
    if ell < 0 or ell > n:
        return F(0)
    total = F(0)
    for j in range(n - ell + 1):
        total += (
            F(2 * (ell + 1), 2 * n - j + 2)
            * a
            * binom(2 * n - j + 2, n - ell)
            * binom(n - ell, j)
            * (a - b) ** j
            * b ** (n - j)
        )
    return total


@dataclass(frozen=True)
class FormulaResult:
    value: int
    stat: str
    params: dict = field(default_factory=dict)
    route: str = "closed-form"
    in_triangle: bool = True


_EVALUATORS = {
    "points": point_count,
    "usteps": ustep_count,
    "peaks": peak_count,
    "udu": udu_count,
}


def evaluate(stat: str, n: int, ell: int, r: int) -> FormulaResult:
    """Evaluate one table cell, flagging cells outside the table's triangle."""
    try:
        fn = _EVALUATORS[stat]
    except KeyError:
        raise ValueError(f"unknown statistic {stat!r}; expected one of {sorted(_EVALUATORS)}") from None
    if stat == "udu":
        inside = 0 <= ell < n or (n, ell) == (0, 0)
    else:
        inside = 0 <= ell <= n
    return FormulaResult(fn(n, ell, r), stat, {"n": n, "l": ell, "r": r}, in_triangle=inside)

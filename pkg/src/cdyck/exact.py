"""Exact scalars and binomial coefficients.

Integers are Python ``int`` (arbitrary precision) and rationals are
:class:`fractions.Fraction`, which is always kept in lowest terms with a
positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

__all__ = [
    "Fraction",
    "IntegralityError",
    "as_fraction",
    "as_count",
    "binom",
    "binom_gen",
    "binom_row",
    "falling",
    "set_row_cache_limit",
]

_ROW_CACHE_LIMIT = 256


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer count reduced to a proper fraction."""


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational parameter")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def as_count(value, what: str = "value") -> int:
    """Return ``value`` as an int, raising IntegralityError if it is not integral."""
    q = as_fraction(value)
    if q.denominator != 1:
        raise IntegralityError(f"{what} reduced to non-integer {q}")
    return q.numerator


def set_row_cache_limit(n_max: int) -> None:
    """Set the largest ``n`` whose Pascal row is cached."""
    global _ROW_CACHE_LIMIT
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    _ROW_CACHE_LIMIT = n_max
    binom_row.cache_clear()


@lru_cache(maxsize=None)
def binom_row(n: int) -> tuple[int, ...]:
    """Row ``n`` of Pascal's triangle."""
    if n < 0:
        raise ValueError("row index must be non-negative")
    if n == 0:
        return (1,)
    prev = binom_row(n - 1)
    return (1,) + tuple(prev[i] + prev[i + 1] for i in range(n - 1)) + (1,)


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) for integer ``n >= 0``.

    Returns 0 for ``k < 0`` or ``k > n``. A negative top with ``k >= 0`` is
    rejected; use :func:`binom_gen` for generalized binomials.
    """
    n, k = int(n), int(k)
    if k < 0:
        return 0
    if n < 0:
        raise ValueError(f"binom({n}, {k}): negative top, use binom_gen")
    if k > n:
        return 0
    if n <= _ROW_CACHE_LIMIT:
        return binom_row(n)[k]
    k = min(k, n - k)
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def falling(q, k: int) -> Fraction:
    """Falling factorial q(q-1)...(q-k+1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    q = as_fraction(q)
    out = Fraction(1)
    for i in range(k):
        out *= q - i
    return out


def binom_gen(q, k: int) -> Fraction:
    """Generalized binomial q(q-1)...(q-k+1)/k! for rational ``q``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = falling(q, k)
    for i in range(2, k + 1):
        out /= i
    return out

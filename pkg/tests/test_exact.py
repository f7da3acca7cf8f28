from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cdyck.exact import IntegralityError, as_count, as_fraction, binom, binom_gen, falling


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (2, 3, 0), (10, 5, 252), (0, 0, 1), (5, -1, 0)])
def test_binom_values(n, k, expected):
    assert binom(n, k) == expected


def test_binom_negative_top_rejected():
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_binom_beyond_row_cache():
    # 300 is past the cached-row limit; compare with the multiplicative form
    assert binom(300, 150) == binom(299, 149) + binom(299, 150)


@given(st.integers(0, 80), st.integers(0, 80))
def test_binom_symmetry(n, k):
    if k > n:
        assert binom(n, k) == 0
    else:
        assert binom(n, k) == binom(n, n - k)


@given(st.integers(1, 80), st.integers(1, 80))
def test_pascal_rule(n, k):
    assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)


@given(st.integers(0, 40))
def test_row_sum(n):
    assert sum(binom(n, k) for k in range(n + 1)) == 2**n


@pytest.mark.parametrize("q,k,expected", [(Fraction(1, 2), 2, Fraction(-1, 8)), (3, 2, 3), (-1, 1, -1), (7, 0, 1)])
def test_binom_gen_values(q, k, expected):
    assert binom_gen(q, k) == expected


@given(st.integers(0, 30), st.integers(0, 30))
def test_binom_gen_agrees_on_integer_tops(n, k):
    assert binom_gen(n, k) == binom(n, k)


@given(st.fractions(max_denominator=20), st.integers(1, 10))
def test_binom_gen_pascal(q, k):
    assert binom_gen(q, k) == binom_gen(q - 1, k - 1) + binom_gen(q - 1, k)


def test_falling():
    assert falling(5, 3) == 60
    assert falling(Fraction(1, 2), 2) == Fraction(-1, 4)


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/4") == Fraction(3, 4)


def test_as_count_raises_on_fraction():
    assert as_count(Fraction(10, 2)) == 5
    with pytest.raises(IntegralityError):
        as_count(Fraction(1, 3), "demo")


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c

from fractions import Fraction
from math import gcd

import pytest

from nagumo_periodic.census import (
    CountRow,
    asymptotic_ratio,
    bracelet_count,
    census_table,
    divisors,
    lyndon_bracelet_count,
    lyndon_count,
    mobius,
    necklace_count,
    totient,
)
from nagumo_periodic.errors import DomainError


def brute_totient(m):
    return sum(1 for i in range(1, m + 1) if gcd(i, m) == 1)


def brute_mobius(m, _cache={1: 1}):
    # defined by sum_{d | m} mu(d) = [m == 1]
    if m not in _cache:
        _cache[m] = -sum(brute_mobius(d) for d in range(1, m) if m % d == 0)
    return _cache[m]


@pytest.mark.parametrize("m, expected", [(1, 1), (6, 2), (9, 6)])
def test_totient_examples(m, expected):
    assert totient(m) == expected == brute_totient(m)


@pytest.mark.parametrize("m, expected", [(1, 1), (4, 0), (6, 1)])
def test_mobius_examples(m, expected):
    assert mobius(m) == expected == brute_mobius(m)


def test_number_theory_against_brute_force():
    for m in range(1, 200):
        assert totient(m) == brute_totient(m)
        assert mobius(m) == brute_mobius(m)


@pytest.mark.parametrize("func", [totient, mobius, divisors])
def test_domain_errors(func):
    with pytest.raises(DomainError):
        func(0)


KNOWN_COUNTS = {
    # n: (k^n, N, L, B, BL) for k = 3, then k = 2
    1: ((3, 3, 3, 3, 3), (2, 2, 2, 2, 2)),
    2: ((9, 6, 3, 6, 3), (4, 3, 1, 3, 1)),
    3: ((27, 11, 8, 10, 7), (8, 4, 2, 4, 2)),
    4: ((81, 24, 18, 21, 15), (16, 6, 3, 6, 3)),
    5: ((243, 51, 48, 39, 36), (32, 8, 6, 8, 6)),
    6: ((729, 130, 116, 92, 79), (64, 14, 9, 13, 8)),
}


@pytest.mark.parametrize("n", sorted(KNOWN_COUNTS))
def test_counts_reproduce_table(n):
    for k, expected in zip((3, 2), KNOWN_COUNTS[n]):
        got = (k ** n, necklace_count(k, n), lyndon_count(k, n), bracelet_count(k, n), lyndon_bracelet_count(k, n))
        assert got == expected


def test_census_table_columns():
    assert [r.total for r in census_table(6, 3)] == [3, 9, 27, 81, 243, 729]
    assert [r.necklaces for r in census_table(6, 2)] == [2, 3, 4, 6, 8, 14]
    assert census_table(1, 2) == [CountRow(1, 2, 2, 2, 2, 2, 2)]


@pytest.mark.parametrize("k", [2, 3])
def test_lyndon_words_tile_all_words(k):
    for n in range(1, 21):
        assert sum(d * lyndon_count(k, d) for d in divisors(n)) == k ** n


@pytest.mark.parametrize("k", [2, 3])
def test_mobius_round_trip(k):
    for n in range(1, 25):
        assert sum(lyndon_bracelet_count(k, d) for d in divisors(n)) == bracelet_count(k, n)


@pytest.mark.parametrize("k", [2, 3])
def test_row_inequalities(k):
    for r in census_table(40, k):
        assert 0 < r.lyndon <= r.necklaces <= r.total
        assert 0 < r.lyndon_bracelets <= r.bracelets <= r.necklaces


def test_wide_integers():
    assert necklace_count(3, 64) * 64 > 2 ** 100


def test_asymptotic_ratio_examples():
    assert asymptotic_ratio(2, 16, "N") == Fraction(4116 * 16, 2 ** 16)
    assert abs(float(asymptotic_ratio(2, 16, "N")) - 1.0049) < 1e-4
    assert asymptotic_ratio(2, 1, "N") == 1
    assert abs(float(asymptotic_ratio(3, 12, "L")) - 1) < 0.002


@pytest.mark.parametrize("k", [2, 3])
def test_asymptotic_ratio_bounds(k):
    for n in range(8, 60):
        for which in ("N", "L"):
            assert abs(float(asymptotic_ratio(k, n, which)) - 1) < k ** (-n / 2 + 2)
        # reflection-fixed words add a term of order n k^(-n/2) to B and BL
        for which in ("B", "BL"):
            assert abs(float(asymptotic_ratio(k, n, which)) - 1) < (k ** 2 + (k + 4) * n) * k ** (-n / 2)


def test_asymptotic_ratio_rejects_unknown_counter():
    with pytest.raises(DomainError):
        asymptotic_ratio(2, 3, "X")

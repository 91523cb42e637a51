"""Closed-form counts of necklaces, Lyndon words, bracelets and Lyndon bracelets.

All arithmetic is on Python ints; divisions that must be exact are checked.
"""
from __future__ import annotations

from dataclasses import astuple, dataclass
from fractions import Fraction

from .errors import DomainError


def _check_positive(m, name="m"):
    if int(m) != m or m < 1:
        raise DomainError(f"{name} must be a positive integer, got {m!r}")


def factorize(m: int) -> dict:
    """Prime factorization by trial division."""
    _check_positive(m)
    factors = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def divisors(m: int) -> list:
    _check_positive(m)
    return [d for d in range(1, m + 1) if m % d == 0]


def totient(m: int) -> int:
    result = m
    for p in factorize(m):
        result = result // p * (p - 1)
    return result


def mobius(m: int) -> int:
    factors = factorize(m)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return q


def _check_kn(k, n):
    _check_positive(n, "n")
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")


def necklace_count(k: int, n: int) -> int:
    """N_k(n): words of length n up to rotation."""
    _check_kn(k, n)
    return _exact_div(sum(totient(d) * k ** (n // d) for d in divisors(n)), n)


def lyndon_count(k: int, n: int) -> int:
    """L_k(n): primitive words of length n up to rotation."""
    _check_kn(k, n)
    return _exact_div(sum(mobius(d) * k ** (n // d) for d in divisors(n)), n)


def bracelet_count(k: int, n: int) -> int:
    """B_k(n): words of length n up to rotation and reflection."""
    _check_kn(k, n)
    if n % 2 == 0:
        twice = 2 * necklace_count(k, n) + (k + 1) * k ** (n // 2)
        return _exact_div(twice, 4)
    return _exact_div(necklace_count(k, n) + k ** ((n + 1) // 2), 2)


def lyndon_bracelet_count(k: int, n: int) -> int:
    """BL_k(n): Moebius inversion of the bracelet counts over divisors of n."""
    _check_kn(k, n)
    return sum(mobius(d) * bracelet_count(k, n // d) for d in divisors(n))


@dataclass(frozen=True)
class CountRow:
    n: int
    k: int
    total: int
    necklaces: int
    lyndon: int
    bracelets: int
    lyndon_bracelets: int

    FIELDS = ("n", "k", "total", "necklaces", "lyndon", "bracelets", "lyndon_bracelets")

    def as_tuple(self):
        return astuple(self)


def count_row(n: int, k: int) -> CountRow:
    return CountRow(
        n=n,
        k=k,
        total=k ** n,
        necklaces=necklace_count(k, n),
        lyndon=lyndon_count(k, n),
        bracelets=bracelet_count(k, n),
        lyndon_bracelets=lyndon_bracelet_count(k, n),
    )


def census_table(n_max: int, k: int) -> list:
    _check_positive(n_max, "n_max")
    return [count_row(n, k) for n in range(1, n_max + 1)]


_COUNTERS = {
    "N": (necklace_count, 1),
    "L": (lyndon_count, 1),
    "B": (bracelet_count, 2),
    "BL": (lyndon_bracelet_count, 2),
}


def asymptotic_ratio(k: int, n: int, which: str = "N") -> Fraction:
    """Count divided by its leading-order estimate k^n/n (or k^n/(2n)).

    Tends to 1 as n grows.
    """
    try:
        counter, scale = _COUNTERS[which.upper()]
    except KeyError:
        raise DomainError(f"which must be one of {sorted(_COUNTERS)}, got {which!r}") from None
    return Fraction(counter(k, n) * scale * n, k ** n)


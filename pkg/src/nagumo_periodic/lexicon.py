"""Words over the root alphabet and their rotation/reflection classes.

A word names a solution branch: letter ``0`` marks a vertex that starts at
the root 0, ``a`` the middle root ``a`` and ``1`` the root 1.  Internally a
word is a tuple of ints with ``0 < 1 < 2`` standing for ``0 < a < 1``, so
plain tuple comparison is the lexicographic order used for representatives.
On the wire words are ASCII strings over ``'0'``, ``'a'``, ``'1'``.

Indexing in the docstrings is 1-based with ``mod(i, n)`` in ``{1, ..., n}``;
the code works 0-based.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import BudgetExceeded, DimensionMismatch, DomainError

ZERO, MID, ONE = 0, 1, 2
LETTERS = "0a1"
_LETTER_CODE = {ch: i for i, ch in enumerate(LETTERS)}

Word = tuple  # tuple[int, ...] of letter codes
WordLike = Union[str, Sequence[int]]

#: k**n above this is refused by :func:`enumerate_classes`.
ENUMERATION_BUDGET = 2 ** 24


class Alphabet(enum.Enum):
    FULL = (ZERO, MID, ONE)
    STABLE = (ZERO, ONE)

    @property
    def letters(self) -> tuple:
        return self.value

    @property
    def k(self) -> int:
        return len(self.value)

    @classmethod
    def from_k(cls, k: int) -> "Alphabet":
        if k == 3:
            return cls.FULL
        if k == 2:
            return cls.STABLE
        raise DomainError(f"alphabet size must be 2 or 3, got {k}")


class Symmetry(enum.Enum):
    T_ONLY = "t"
    T_AND_R = "tr"

    @classmethod
    def parse(cls, value) -> "Symmetry":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            return cls[str(value).upper()]


def word(w: WordLike, alphabet: Alphabet = Alphabet.FULL) -> Word:
    """Coerce an ASCII string or an int sequence to a word tuple.

    >>> word("00a1")
    (0, 0, 1, 2)
    """
    if isinstance(w, str):
        try:
            codes = tuple(_LETTER_CODE[ch] for ch in w)
        except KeyError as exc:
            raise DomainError(f"invalid letter {exc.args[0]!r} in word {w!r}") from None
    else:
        codes = tuple(int(c) for c in w)
        if any(c not in (ZERO, MID, ONE) for c in codes):
            raise DomainError(f"invalid letter code in {w!r}")
    if not codes:
        raise DomainError("words have length >= 1")
    if any(c not in alphabet.letters for c in codes):
        raise DomainError(f"word {format_word(codes)!r} uses letters outside {alphabet.name}")
    return codes


def format_word(w: Sequence[int]) -> str:
    return "".join(LETTERS[c] for c in w)


def roots(w: WordLike, a: float) -> list:
    """The lattice point ``w_a`` in ``{0, a, 1}^n`` a branch starts from."""
    values = (0.0, float(a), 1.0)
    return [values[c] for c in word(w)]


def rotate(w: WordLike, shift: int) -> Word:
    """Translation: ``result_i = w_{mod(i + shift, n)}``."""
    w = word(w)
    s = shift % len(w)
    return w[s:] + w[:s]


def reflect(w: WordLike) -> Word:
    """Reflection: ``result_i = w_{mod(1 - i, n)}``, i.e. reversal."""
    return word(w)[::-1]


def _period(w: Word) -> int:
    n = len(w)
    for p in range(1, n):
        if n % p == 0 and w == w[:p] * (n // p):
            return p
    return n


def is_primitive(w: WordLike) -> bool:
    w = word(w)
    return _period(w) == len(w)


def primitive_root(w: WordLike) -> Word:
    w = word(w)
    return w[: _period(w)]


def _orbit(w: Word, symmetry: Symmetry) -> frozenset:
    seeds = (w,) if symmetry is Symmetry.T_ONLY else (w, w[::-1])
    return frozenset(s[i:] + s[:i] for s in seeds for i in range(len(w)))


def orbit(w: WordLike, symmetry=Symmetry.T_ONLY) -> frozenset:
    return _orbit(word(w), Symmetry.parse(symmetry))


def _min_member(w: Word, symmetry: Symmetry) -> Word:
    return min(_orbit(w, symmetry))


def canonical(w: WordLike, symmetry=Symmetry.T_ONLY) -> Word:
    """Lexicographically least orbit member, reduced to its primitive root."""
    return primitive_root(_min_member(word(w), Symmetry.parse(symmetry)))


@dataclass(frozen=True)
class SymmetryClass:
    """One equivalence class of length-``period`` words.

    ``representative`` is primitive-root reduced, so ``0101`` is stored as
    ``01``; ``least_member`` keeps the full-length minimum.
    """

    least_member: Word
    symmetry: Symmetry
    orbit_size: int

    @property
    def period(self) -> int:
        return len(self.least_member)

    @property
    def representative(self) -> Word:
        return primitive_root(self.least_member)

    @property
    def primitive(self) -> bool:
        return len(self.representative) == self.period

    @cached_property
    def members(self) -> frozenset:
        return _orbit(self.least_member, self.symmetry)

    def __str__(self):
        return format_word(self.representative)


def enumerate_classes(
    n: int,
    alphabet: Alphabet = Alphabet.FULL,
    symmetry=Symmetry.T_ONLY,
    primitive_only: bool = False,
    budget: int = ENUMERATION_BUDGET,
) -> list:
    """Exhaustively partition all ``k**n`` words into symmetry classes.

    Words are visited in lexicographic order, so the first unseen word of a
    class is its least member.  The result is sorted lexicographically by
    representative.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if isinstance(alphabet, int):
        alphabet = Alphabet.from_k(alphabet)
    symmetry = Symmetry.parse(symmetry)
    if alphabet.k ** n > budget:
        raise BudgetExceeded(f"{alphabet.k}^{n} words exceed the enumeration budget {budget}")

    seen = set()
    classes = []
    for w in itertools.product(alphabet.letters, repeat=n):
        if w in seen:
            continue
        members = _orbit(w, symmetry)
        seen.update(members)
        cls = SymmetryClass(least_member=w, symmetry=symmetry, orbit_size=len(members))
        if primitive_only and not cls.primitive:
            continue
        classes.append(cls)
    classes.sort(key=lambda c: c.representative)
    return classes


def word_leq(wa: WordLike, wb: WordLike) -> bool:
    """Letter-wise order ``0 <= a <= 1`` at every position."""
    wa, wb = word(wa), word(wb)
    if len(wa) != len(wb):
        raise DimensionMismatch(f"words of lengths {len(wa)} and {len(wb)}")
    return all(x <= y for x, y in zip(wa, wb))


def all_words(n: int, alphabet: Alphabet = Alphabet.FULL) -> Iterable[Word]:
    return itertools.product(alphabet.letters, repeat=n)

"""Reduced words in the free group F_n.

A word is stored as a tuple of nonzero signed integers: ``+j`` is the
generator g_j and ``-j`` its inverse.  The low-level helpers work on bare
tuples (that is what :mod:`ncverify.group_algebra` keys its coefficient
dicts by); :class:`Word` wraps a tuple together with the rank for the
public API.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceededError, InvalidLetterError, RankMismatchError

Letters = tuple[int, ...]

BALL_CAP = 200_000

_TOKEN = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def reduce_letters(letters: Iterable[int]) -> Letters:
    """Free reduction by a single left-to-right stack pass."""
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def mul_letters(a: Letters, b: Letters) -> Letters:
    """Product of two already-reduced words (only the seam can cancel)."""
    i = 0
    la, lb = len(a), len(b)
    while i < la and i < lb and a[la - 1 - i] == -b[i]:
        i += 1
    if i == 0:
        return a + b
    return a[: la - i] + b[i:]


def inv_letters(a: Letters) -> Letters:
    return tuple(-x for x in reversed(a))


def sign_sum(a: Letters) -> int:
    return sum(1 if x > 0 else -1 for x in a)


def letter_key(x: int) -> int:
    """Canonical letter order 1 < -1 < 2 < -2 < ..."""
    return 2 * (abs(x) - 1) + (x < 0)


def word_sort_key(a: Letters) -> tuple:
    return (len(a), tuple(letter_key(x) for x in a))


def _check_letters(letters: Sequence[int], rank: int) -> None:
    if rank < 1:
        raise InvalidLetterError(f"rank must be >= 1, got {rank}")
    for x in letters:
        if x == 0 or abs(x) > rank:
            raise InvalidLetterError(f"invalid letter {x!r} for rank {rank}")


@dataclass(frozen=True, slots=True)
class Word:
    """Reduced word of F_rank."""

    letters: Letters
    rank: int

    def __post_init__(self):
        _check_letters(self.letters, self.rank)
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise InvalidLetterError(f"letters {self.letters} are not reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_letters(self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Word":
        return inverse(self)


def reduce(letters: Sequence[int], rank: int) -> Word:
    letters = tuple(operator.index(x) for x in letters)
    _check_letters(letters, rank)
    return Word(reduce_letters(letters), rank)


def identity(rank: int) -> Word:
    return Word((), rank)


def generator(j: int, rank: int) -> Word:
    return reduce([j], rank)


def multiply(a: Word, b: Word) -> Word:
    if a.rank != b.rank:
        raise RankMismatchError(f"cannot multiply words of rank {a.rank} and {b.rank}")
    return Word(mul_letters(a.letters, b.letters), a.rank)


def inverse(a: Word) -> Word:
    return Word(inv_letters(a.letters), a.rank)


def word_length(a: Word) -> int:
    return len(a.letters)


def is_positive(a: Word | Letters) -> bool:
    """Membership in the positive semigroup F_n^+ (the identity included)."""
    letters = a.letters if isinstance(a, Word) else a
    return all(x > 0 for x in letters)


def rotation_exponent(a: Word | Letters) -> int:
    """Exponent k with pi_z(lambda_a) = z^k lambda_a.

    pi_z scales every generator by z, hence every inverse letter by 1/z;
    the exponent is the signed letter count, a homomorphism F_n -> Z.
    """
    letters = a.letters if isinstance(a, Word) else a
    return sign_sum(letters)


def ball_size(n: int, R: int) -> int:
    if R <= 0:
        return 1
    return 1 + sum(2 * n * (2 * n - 1) ** (k - 1) for k in range(1, R + 1))


def enumerate_ball_letters(n: int, R: int, cap: int = BALL_CAP) -> list[Letters]:
    """All reduced words of length <= R in length-lexicographic order."""
    if n < 1 or R < 0:
        raise InvalidLetterError(f"need n >= 1 and R >= 0, got n={n}, R={R}")
    size = ball_size(n, R)
    if size > cap:
        raise CapExceededError(f"ball(n={n}, R={R}) has {size} words, cap is {cap}")
    alphabet = sorted([j for j in range(1, n + 1)] + [-j for j in range(1, n + 1)], key=letter_key)
    out: list[Letters] = [()]
    layer: list[Letters] = [()]
    for _ in range(R):
        nxt = []
        for w in layer:
            for x in alphabet:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        layer = nxt
    return out


def enumerate_ball(n: int, R: int, cap: int = BALL_CAP) -> list[Word]:
    return [Word(w, n) for w in enumerate_ball_letters(n, R, cap)]


def format_letters(letters: Letters) -> str:
    """Textual form ``g1*g2^-1*g3^2``; the identity is ``e``."""
    if not letters:
        return "e"
    parts = []
    i = 0
    while i < len(letters):
        x = letters[i]
        j = i
        while j < len(letters) and letters[j] == x:
            j += 1
        power = (j - i) * (1 if x > 0 else -1)
        parts.append(f"g{abs(x)}" if power == 1 else f"g{abs(x)}^{power}")
        i = j
    return "*".join(parts)


def parse_letters(text: str) -> Letters:
    text = text.replace(" ", "")
    if text in ("e", "1", ""):
        return ()
    letters: list[int] = []
    for token in text.split("*"):
        m = _TOKEN.match(token)
        if m is None:
            raise InvalidLetterError(f"cannot parse word token {token!r} in {text!r}")
        j = int(m.group(1))
        power = int(m.group(2)) if m.group(2) is not None else 1
        if j == 0:
            raise InvalidLetterError(f"generator index must be >= 1 in {text!r}")
        letters.extend([j if power > 0 else -j] * abs(power))
    return reduce_letters(letters)


def parse_word(text: str, rank: int | None = None) -> Word:
    letters = parse_letters(text)
    if rank is None:
        rank = max((abs(x) for x in letters), default=1)
    _check_letters(letters, rank)
    return Word(letters, rank)

"""Signed wall letters, words over them, and the canonical generator loops.

A letter ``w(i,j)+`` records crossing the wall (1^i, 2, 1^j) in the direction
that adds two simple real roots; ``w(i,j)-`` is the opposite crossing. Words
are plain letter sequences; the degree only enters when a word is validated.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlphabetError, InputError, WordError


@dataclass(frozen=True, order=True)
class Letter:
    i: int
    j: int
    sign: int = 1

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise AlphabetError(f"wall indices must be nonnegative, got ({self.i},{self.j})")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def ones(self) -> int:
        return self.i + self.j

    @property
    def wall(self) -> tuple[int, int]:
        return (self.i, self.j)

    def inverse(self) -> "Letter":
        return Letter(self.i, self.j, -self.sign)

    def __str__(self) -> str:
        return f"w({self.i},{self.j}){'+' if self.sign > 0 else '-'}"


def up(i: int, j: int) -> Letter:
    return Letter(i, j, 1)


def down(i: int, j: int) -> Letter:
    return Letter(i, j, -1)


_TOKEN = re.compile(r"^w\((\d+),(\d+)\)([+-])$")


class Word(tuple):
    """An immutable sequence of letters."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[Letter] = ()) -> "Word":
        letters = tuple(letters)
        for x in letters:
            if not isinstance(x, Letter):
                raise TypeError(f"not a Letter: {x!r}")
        return super().__new__(cls, letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        for token in text.split():
            m = _TOKEN.match(token)
            if m is None:
                raise InputError(f"bad word token {token!r}; expected w(i,j)+ or w(i,j)-")
            letters.append(Letter(int(m[1]), int(m[2]), 1 if m[3] == "+" else -1))
        return cls(letters)

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Word.parse({str(self)!r})"

    def __add__(self, other) -> "Word":
        return Word(tuple(self) + tuple(other))

    def inverse(self) -> "Word":
        return Word(x.inverse() for x in reversed(self))

    def is_reduced(self) -> bool:
        return all(a.wall != b.wall or a.sign == b.sign for a, b in zip(self, self[1:]))


def check_letter(letter: Letter, d: int) -> None:
    s = letter.i + letter.j
    if s > d - 2 or (s - d) % 2:
        raise AlphabetError(f"{letter} is not a wall letter for d={d}: need i+j <= {d - 2} and i+j = d mod 2")


def check_word(word: Sequence[Letter], d: int) -> None:
    for x in word:
        check_letter(x, d)


def alphabet(d: int) -> list[tuple[int, int]]:
    return [(i, s - i) for s in range(d % 2, d - 1, 2) for i in range(s + 1)]


def base_ones(d: int) -> int:
    """Number of simple real roots at the base cell: () for even d, (1) for odd."""
    return d % 2


def reduce(word: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for x in word:
        if out and out[-1].wall == x.wall and out[-1].sign == -x.sign:
            out.pop()
        else:
            out.append(x)
    return Word(out)


def inverse(word: Sequence[Letter]) -> Word:
    return Word(word).inverse()


def concat(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    return reduce(tuple(u) + tuple(v))


def is_admissible(word: Sequence[Letter], d: int) -> bool:
    check_word(word, d)
    if not word:
        return True
    first, last = word[0], word[-1]
    start = base_ones(d)
    if first.ones != start or first.sign != 1:
        return False
    if last.ones != start or last.sign != -1:
        return False
    for a, b in zip(word, word[1:]):
        if a.ones == b.ones:
            if a.sign == b.sign:
                return False
        elif b.ones == a.ones + 2:
            if a.sign != 1 or b.sign != 1:
                return False
        elif b.ones == a.ones - 2:
            if a.sign != -1 or b.sign != -1:
                return False
        else:
            return False
    return True


def gamma(i: int, j: int, d: int) -> Word:
    """The canonical loop through the wall (i, j): climb along the (0, *) walls,
    cross (i, j) upward, and descend back along the (0, *) walls."""
    check_letter(Letter(i, j), d)
    s = i + j
    start = base_ones(d)
    climb = [up(0, p) for p in range(start, s - 1, 2)]
    descend = [down(0, q) for q in range(s, start - 1, -2)]
    return Word(climb + [up(i, j)] + descend)


def random_admissible_word(d: int, max_length: int, rng: random.Random, reduced: bool = True) -> Word:
    """A random closed walk from the base cell, optionally freely reduced.

    The walk never takes more steps than it can undo within ``max_length``.
    """
    start = base_ones(d)
    length = rng.randrange(0, max_length + 1, 2)
    level = start
    letters = []
    for step in range(length):
        remaining = length - step
        moves = []
        # climbing must leave enough steps to come back down
        if level + 2 <= d and (level + 2 - start) // 2 <= remaining - 1:
            moves += [up(i, level - i) for i in range(level + 1)]
        if level - 2 >= start:
            moves += [down(i, level - 2 - i) for i in range(level - 1)]
        x = rng.choice(moves)
        letters.append(x)
        level += 2 * x.sign
    word = Word(letters)
    return reduce(word) if reduced else word

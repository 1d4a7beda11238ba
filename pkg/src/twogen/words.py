"""Letters, finite words and lasso (ultimately periodic) words.

The per-round communication alphabet has four letters:

    OK  both messages delivered
    LW  white's message lost
    LB  black's message lost
    LL  both messages lost

GAMMA is the three-letter restriction without the double omission LL.
Infinite scenarios are represented exclusively by lasso words
``stem . cycle^w``, kept in a canonical form (primitive cycle, shortest
stem) so that equality of lassos coincides with equality of the
infinite words they denote.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Raised on malformed word or lasso text."""


class Letter(enum.Enum):
    OK = "OK"
    LW = "LW"
    LB = "LB"
    LL = "LL"

    def __str__(self):
        return self.value

    def __repr__(self):
        return self.value

    @property
    def mu(self) -> int:
        """Displacement used by the index recurrence (undefined for LL)."""
        if self is Letter.LB:
            return -1
        if self is Letter.OK:
            return 0
        if self is Letter.LW:
            return 1
        raise ValueError("mu is not defined for LL")


OK, LW, LB, LL = Letter.OK, Letter.LW, Letter.LB, Letter.LL

#: Full alphabet and its restriction without double omissions.
G2 = (LB, OK, LW, LL)
GAMMA = (LB, OK, LW)

#: Deterministic enumeration order: LB < OK < LW < LL.
LETTER_ORDER = {LB: 0, OK: 1, LW: 2, LL: 3}


@dataclass(frozen=True)
class FiniteWord:
    """An immutable finite word over G2 (possibly empty)."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return FiniteWord(self.letters[i])
        return self.letters[i]

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        return FiniteWord(self.letters + other.letters)

    def __str__(self) -> str:
        return " ".join(a.value for a in self.letters)

    def is_gamma(self) -> bool:
        return LL not in self.letters

    @staticmethod
    def of(*letters: Letter) -> "FiniteWord":
        return FiniteWord(tuple(letters))


EPSILON = FiniteWord()


def _primitive(cycle: tuple[Letter, ...]) -> tuple[Letter, ...]:
    """Shortest word whose power equals ``cycle``."""
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle == cycle[:p] * (n // p):
            return cycle[:p]
    return cycle


@dataclass(frozen=True)
class LassoWord:
    """The infinite word ``stem . cycle^w``, stored canonically.

    Canonical form: the cycle is primitive and the stem is the shortest
    one producing the same infinite word.  Construction canonicalizes,
    so ``==`` decides equality of the denoted infinite words.
    """

    stem: FiniteWord
    cycle: FiniteWord
    # set by __post_init__ when normalization was needed
    _canon: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.cycle) == 0:
            raise ValueError("lasso cycle must be non-empty")
        stem = self.stem.letters
        cycle = _primitive(self.cycle.letters)
        # absorb stem letters into the cycle: u.a with cycle ending in a
        # denotes the same word as u with the cycle rotated right
        while stem and stem[-1] == cycle[-1]:
            cycle = (cycle[-1],) + cycle[:-1]
            stem = stem[:-1]
        object.__setattr__(self, "stem", FiniteWord(stem))
        object.__setattr__(self, "cycle", FiniteWord(cycle))
        object.__setattr__(self, "_canon", True)

    def __str__(self) -> str:
        inner = " ".join(a.value for a in self.cycle)
        if len(self.stem) == 0:
            return "( %s )^w" % inner
        return "%s ( %s )^w" % (self.stem, inner)

    def letter_at(self, i: int) -> Letter:
        if i < len(self.stem):
            return self.stem[i]
        return self.cycle[(i - len(self.stem)) % len(self.cycle)]

    def letters(self) -> Iterator[Letter]:
        """Yields the letters of the denoted infinite word."""
        yield from self.stem
        while True:
            yield from self.cycle

    def prefix(self, r: int) -> FiniteWord:
        """The first ``r`` letters of the infinite word."""
        out = []
        for i, a in enumerate(self.letters()):
            if i >= r:
                break
            out.append(a)
        return FiniteWord(tuple(out))

    def is_gamma(self) -> bool:
        return self.stem.is_gamma() and self.cycle.is_gamma()

    @staticmethod
    def of(stem: Iterable[Letter], cycle: Iterable[Letter]) -> "LassoWord":
        return LassoWord(FiniteWord(tuple(stem)), FiniteWord(tuple(cycle)))


def lasso_prefix(l: LassoWord, r: int) -> FiniteWord:
    return l.prefix(r)


def is_fair(l: LassoWord) -> bool:
    """True iff both processes get messages through infinitely often.

    A scenario is unfair when, from some point on, every letter drops
    the same process's messages, i.e. the cycle lies entirely within
    {LL, LW} or within {LL, LB}.
    """
    letters = set(l.cycle.letters)
    return not (letters <= {LL, LW}) and not (letters <= {LL, LB})


def _tokenize(text: str) -> list[str]:
    return text.split()


def parse_word(text: str) -> FiniteWord:
    """Parses a whitespace-separated word such as ``"LW OK LB"``."""
    letters = []
    for pos, tok in enumerate(_tokenize(text)):
        try:
            letters.append(Letter(tok))
        except ValueError:
            raise ParseError(
                "unknown token %r at position %d" % (tok, pos)
            ) from None
    return FiniteWord(tuple(letters))


def parse_lasso(text: str) -> LassoWord:
    """Parses ``"<stem> ( <cycle> )^w"`` into a canonical lasso."""
    toks = _tokenize(text)
    if toks.count("(") != 1 or toks[-1] != ")^w":
        raise ParseError("lasso must have the form '<stem> ( <cycle> )^w'")
    i = toks.index("(")
    stem = parse_word(" ".join(toks[:i]))
    cycle = parse_word(" ".join(toks[i + 1 : -1]))
    if len(cycle) == 0:
        raise ParseError("lasso cycle must be non-empty")
    return LassoWord(stem, cycle)

"""Alphabets, finite words and factor combinatorics.

Letters are interned as indices ``0 .. size-1``; the display names live only
on the :class:`Alphabet`.  Two alphabets are never equal unless they are the
same object, so words over distinct alphabets never compare equal even when
they are spelled the same way.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Union

__all__ = ["Alphabet", "Word", "factors", "occurrences", "letter_counts"]


class Alphabet:
    """An ordered, finite set of named letters."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = tuple(str(x) for x in letters)
        if not letters:
            raise ValueError("an alphabet needs at least one letter")
        if len(set(letters)) != len(letters):
            raise ValueError(f"repeated letters in alphabet {letters!r}")
        self.letters = letters
        self._index = {name: i for i, name in enumerate(letters)}

    @classmethod
    def indexed(cls, n: int, stem: str = "a") -> "Alphabet":
        """The ordered alphabet ``a1, ..., an``."""
        if n < 1:
            raise ValueError("n must be positive")
        return cls(f"{stem}{i}" for i in range(1, n + 1))

    @property
    def size(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"letter {name!r} not in alphabet {self.letters}") from None

    @property
    def single_char(self) -> bool:
        return all(len(x) == 1 for x in self.letters)

    def word(self, spelling: Union[str, Sequence[str]]) -> "Word":
        """Build a word from a spelling.

        A plain string is split into characters when every letter name is a
        single character, otherwise on whitespace.  A sequence of names is
        taken as is.
        """
        if isinstance(spelling, str):
            names = list(spelling) if self.single_char and " " not in spelling else spelling.split()
        else:
            names = list(spelling)
        return Word(self, tuple(self.index(x) for x in names))

    def letter(self, i: int) -> "Word":
        return Word(self, (i,))

    def words(self, length: int) -> Iterator["Word"]:
        """All words of the given length, in lexicographic order of indices."""
        from itertools import product

        for t in product(range(self.size), repeat=length):
            yield Word(self, t)

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(self.letters)})"


class Word:
    """An immutable finite word over an :class:`Alphabet`.

    The empty word can be built (``Word(A, ())``) but is flagged by
    :attr:`is_empty`; operations of the free semigroup reject it.
    """

    __slots__ = ("alphabet", "symbols", "_hash")

    def __init__(self, alphabet: Alphabet, symbols: Iterable[int]):
        symbols = tuple(symbols)
        n = alphabet.size
        for s in symbols:
            if not 0 <= s < n:
                raise ValueError(f"letter index {s} out of range for {alphabet!r}")
        self.alphabet = alphabet
        self.symbols = symbols
        self._hash = hash((id(alphabet), symbols))

    @classmethod
    def _trusted(cls, alphabet: Alphabet, symbols: tuple) -> "Word":
        # internal fast path: symbols already validated
        w = object.__new__(cls)
        w.alphabet = alphabet
        w.symbols = symbols
        w._hash = hash((id(alphabet), symbols))
        return w

    @property
    def length(self) -> int:
        return len(self.symbols)

    @property
    def is_empty(self) -> bool:
        return not self.symbols

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word._trusted(self.alphabet, self.symbols[key])
        return self.symbols[key]

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.alphabet is not self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word._trusted(self.alphabet, self.symbols + other.symbols)

    def __mul__(self, k: int) -> "Word":
        return Word._trusted(self.alphabet, self.symbols * k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet is other.alphabet and self.symbols == other.symbols

    def __lt__(self, other: "Word") -> bool:
        # length-lexicographic, for deterministic output
        return (len(self.symbols), self.symbols) < (len(other.symbols), other.symbols)

    def __hash__(self) -> int:
        return self._hash

    def count(self, letter: int) -> int:
        """``|w|_a`` for a letter index ``a``."""
        return self.symbols.count(letter)

    def first(self) -> int:
        return self.symbols[0]

    def last(self) -> int:
        return self.symbols[-1]

    def is_prefix_of(self, other: "Word") -> bool:
        return other.symbols[: len(self.symbols)] == self.symbols

    def is_suffix_of(self, other: "Word") -> bool:
        n = len(self.symbols)
        return n == 0 or other.symbols[-n:] == self.symbols

    def __str__(self) -> str:
        names = [self.alphabet.letters[i] for i in self.symbols]
        if not names:
            return "ε"
        return "".join(names) if self.alphabet.single_char else " ".join(names)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def factors(w: Word, k: int) -> frozenset:
    """The set ``fac_k(w)`` of factors of length ``k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    s = w.symbols
    return frozenset(Word._trusted(w.alphabet, s[i : i + k]) for i in range(len(s) - k + 1))


def occurrences(w: Word, u: Word) -> list:
    """Ascending start positions of ``u`` inside ``w``; ``len`` of the result is ``|w|_u``."""
    if len(u) < 1:
        raise ValueError("cannot count occurrences of the empty word")
    if u.alphabet is not w.alphabet:
        raise ValueError("words over different alphabets")
    s, t, k = w.symbols, u.symbols, len(u)
    return [i for i in range(len(s) - k + 1) if s[i : i + k] == t]


def letter_counts(w: Word) -> list:
    counts = [0] * w.alphabet.size
    for a in w.symbols:
        counts[a] += 1
    return counts


def tuple_factors(s: tuple, k: int) -> set:
    """Factors of length ``k`` of a raw index tuple."""
    return {s[i : i + k] for i in range(len(s) - k + 1)}

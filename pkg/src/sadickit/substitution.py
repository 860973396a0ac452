"""Free-semigroup homomorphisms given by letter images."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .words import Alphabet, Word

__all__ = [
    "Substitution",
    "SubstitutionProperties",
    "apply",
    "compose",
    "properties",
    "is_positive",
    "primitivity_witness",
    "BoundaryLetters",
    "boundary_letters",
]


class Substitution:
    """A homomorphism ``domain⁺ → codomain⁺``.

    ``images[i]`` is the image of the ``i``-th domain letter; every image is
    a nonempty word over ``codomain``.
    """

    __slots__ = ("domain", "codomain", "images", "_img")

    def __init__(self, domain: Alphabet, codomain: Alphabet, images: Sequence[Word]):
        images = tuple(images)
        if len(images) != domain.size:
            raise ValueError(f"expected {domain.size} images, got {len(images)}")
        for i, w in enumerate(images):
            if w.alphabet is not codomain:
                raise ValueError(f"image of {domain.letters[i]!r} is not over the codomain")
            if w.is_empty:
                raise ValueError(f"image of {domain.letters[i]!r} is empty")
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self._img = tuple(w.symbols for w in images)

    @classmethod
    def from_strings(
        cls,
        rules: Mapping[str, Union[str, Sequence[str]]],
        alphabet: Optional[Alphabet] = None,
        codomain: Optional[Alphabet] = None,
    ) -> "Substitution":
        """Endomorphism (or map into ``codomain``) from a ``letter -> spelling`` dict.

        >>> tau = Substitution.from_strings({"a": "ab", "b": "ba"})
        >>> str(tau(tau.domain.word("ab")))
        'abba'
        """
        if alphabet is None:
            alphabet = Alphabet(rules.keys())
        if codomain is None:
            codomain = alphabet
        images = [codomain.word(rules[x]) for x in alphabet.letters]
        return cls(alphabet, codomain, images)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Substitution":
        return cls(alphabet, alphabet, [alphabet.letter(i) for i in range(alphabet.size)])

    @property
    def is_endomorphism(self) -> bool:
        return self.domain is self.codomain

    def image(self, letter: Union[int, str]) -> Word:
        if isinstance(letter, str):
            letter = self.domain.index(letter)
        return self.images[letter]

    def apply_tuple(self, s: tuple) -> tuple:
        img = self._img
        out: list = []
        for a in s:
            out.extend(img[a])
        return tuple(out)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __matmul__(self, other: "Substitution") -> "Substitution":
        return compose(self, other)

    def power(self, k: int) -> "Substitution":
        if not self.is_endomorphism:
            raise ValueError("only endomorphisms have powers")
        if k < 0:
            raise ValueError("negative power")
        result = Substitution.identity(self.domain)
        for _ in range(k):
            result = compose(result, self)
        return result

    @property
    def lengths(self) -> tuple:
        return tuple(len(x) for x in self._img)

    def first_letters(self) -> tuple:
        return tuple(x[0] for x in self._img)

    def last_letters(self) -> tuple:
        return tuple(x[-1] for x in self._img)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Substitution):
            return NotImplemented
        return (
            self.domain is other.domain
            and self.codomain is other.codomain
            and self._img == other._img
        )

    def __hash__(self) -> int:
        return hash((id(self.domain), id(self.codomain), self._img))

    def rules(self) -> list:
        return [(self.domain.letters[i], str(w)) for i, w in enumerate(self.images)]

    def __repr__(self) -> str:
        body = ", ".join(f"{a}↦{w}" for a, w in self.rules())
        return f"Substitution({body})"


def apply(phi: Substitution, w: Word) -> Word:
    """Image of a nonempty word."""
    if w.alphabet is not phi.domain:
        raise ValueError("word is not over the domain alphabet")
    if w.is_empty:
        raise ValueError("substitutions act on nonempty words")
    return Word._trusted(phi.codomain, phi.apply_tuple(w.symbols))


def compose(phi: Substitution, psi: Substitution) -> Substitution:
    """``phi ∘ psi``: apply ``psi`` first."""
    if psi.codomain is not phi.domain:
        raise ValueError("codomain of the inner map must be the domain of the outer map")
    images = [Word._trusted(phi.codomain, phi.apply_tuple(s)) for s in psi._img]
    return Substitution(psi.domain, phi.codomain, images)


@dataclass(frozen=True)
class SubstitutionProperties:
    expansive: bool
    positive: bool
    left_proper: bool
    left_witness: Optional[int]
    right_proper: bool
    right_witness: Optional[int]
    left_permutative: bool
    right_permutative: bool
    letter_injective: bool

    @property
    def proper(self) -> bool:
        return self.left_proper and self.right_proper


def is_positive(phi: Substitution) -> bool:
    """Expansive, and every codomain letter occurs in every image."""
    n = phi.codomain.size
    return all(len(s) >= 2 and len(set(s)) == n for s in phi._img)


def properties(phi: Substitution) -> SubstitutionProperties:
    firsts = phi.first_letters()
    lasts = phi.last_letters()
    left = firsts[0] if len(set(firsts)) == 1 else None
    right = lasts[0] if len(set(lasts)) == 1 else None
    n = phi.codomain.size
    return SubstitutionProperties(
        expansive=all(len(s) >= 2 for s in phi._img),
        positive=is_positive(phi),
        left_proper=left is not None,
        left_witness=left,
        right_proper=right is not None,
        right_witness=right,
        left_permutative=len(set(firsts)) == n,
        right_permutative=len(set(lasts)) == n,
        letter_injective=len(set(phi._img)) == len(phi._img),
    )


def primitivity_witness(phi: Substitution) -> Optional[int]:
    """Least ``k`` with ``phi**k`` positive, searched up to ``(n-1)**2 + 1``.

    Returns ``None`` when no power within the Wielandt bound is positive,
    which for an endomorphism means it is not primitive.
    """
    if not phi.is_endomorphism:
        raise ValueError("primitivity is defined for endomorphisms")
    n = phi.domain.size
    bound = (n - 1) ** 2 + 1
    # track the letter sets of phi^k(a) and their lengths (capped at 2)
    occurs = [frozenset(s) for s in phi._img]
    longish = [len(s) >= 2 for s in phi._img]
    full = frozenset(range(n))
    for k in range(1, bound + 1):
        if all(o == full for o in occurs) and all(longish):
            return k
        # phi^(k+1)(a) = phi^k(phi(a)) -- letters are the union over letters of phi(a)
        new_occurs = []
        new_long = []
        for s in phi._img:
            acc: set = set()
            for b in s:
                acc |= occurs[b]
            new_occurs.append(frozenset(acc))
            new_long.append(len(s) >= 2 or longish[s[0]])
        occurs, longish = new_occurs, new_long
    return None


@dataclass(frozen=True)
class BoundaryLetters:
    """First and last letters of ``phi**k(a)``, for ``k = 1..max_power`` and at the idempotent power.

    ``by_power[k-1][a]`` is the pair for ``phi**k``; ``omega[a]`` is the pair
    for the least power ``omega_exponent`` at which both letter maps are
    idempotent.  Pairs are letter indices.
    """

    by_power: tuple
    omega_exponent: int
    omega: tuple


def _map_power(f: tuple, k: int) -> tuple:
    out = tuple(range(len(f)))
    for _ in range(k):
        out = tuple(f[x] for x in out)
    return out


def _is_idempotent(f: tuple) -> bool:
    return tuple(f[x] for x in f) == f


def boundary_letters(phi: Substitution, max_power: int = 4) -> BoundaryLetters:
    """Eventual first/last letters of the iterates of an endomorphism.

    The first letter of ``phi**k(a)`` is ``f**k(a)`` for the first-letter map
    ``f`` (likewise on the right), so the sequence is eventually periodic and
    the idempotent power is its stable value.
    """
    if not phi.is_endomorphism:
        raise ValueError("boundary letters are defined for endomorphisms")
    f, g = phi.first_letters(), phi.last_letters()
    rows = []
    for k in range(1, max_power + 1):
        fk, gk = _map_power(f, k), _map_power(g, k)
        rows.append(tuple(zip(fk, gk)))
    e = 1
    while not (_is_idempotent(_map_power(f, e)) and _is_idempotent(_map_power(g, e))):
        e += 1
    fe, ge = _map_power(f, e), _map_power(g, e)
    return BoundaryLetters(tuple(rows), e, tuple(zip(fe, ge)))

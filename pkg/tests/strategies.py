"""Hypothesis strategies for words, endomorphisms and small codes."""

from __future__ import annotations

from hypothesis import strategies as st

from sadickit import Alphabet, Substitution, Word

ALPHABETS = {n: Alphabet("abcd"[:n]) for n in range(1, 5)}


@st.composite
def words(draw, n=2, min_size=1, max_size=12):
    A = ALPHABETS[n]
    s = draw(st.lists(st.integers(0, n - 1), min_size=min_size, max_size=max_size))
    return Word(A, s)


@st.composite
def endomorphisms(draw, min_letters=1, max_letters=4, max_image=5, n=None):
    if n is None:
        n = draw(st.integers(min_letters, max_letters))
    A = ALPHABETS[n]
    images = [
        Word(A, draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=max_image)))
        for _ in range(n)
    ]
    return Substitution(A, A, images)


@st.composite
def endo_pairs(draw, max_letters=4, max_image=5):
    n = draw(st.integers(1, max_letters))
    return draw(endomorphisms(n=n, max_image=max_image)), draw(endomorphisms(n=n, max_image=max_image))


@st.composite
def small_codes(draw, n=2, max_words=4, max_len=4):
    """Sets of distinct nonempty words (not necessarily codes)."""
    A = ALPHABETS[n]
    raw = draw(
        st.lists(
            st.lists(st.integers(0, n - 1), min_size=1, max_size=max_len).map(tuple),
            min_size=1,
            max_size=max_words,
            unique=True,
        )
    )
    return [Word(A, s) for s in raw]

import pytest
from hypothesis import given, strategies as st

from oracles import naive_occurrences
from sadickit import Alphabet, Word, factors, occurrences
from sadickit.words import letter_counts
from strategies import words


def test_alphabet_rejects_repeats_and_empty():
    with pytest.raises(ValueError):
        Alphabet("aa")
    with pytest.raises(ValueError):
        Alphabet([])


def test_indexed_alphabet_names():
    A = Alphabet.indexed(3)
    assert A.letters == ("a1", "a2", "a3")
    assert str(A.word("a1 a3 a2")) == "a1 a3 a2"


def test_alphabets_compare_by_identity():
    A, B = Alphabet("ab"), Alphabet("ab")
    assert A.word("ab") != B.word("ab")
    assert A.word("ab") == A.word("ab")


def test_unknown_letter_is_rejected():
    with pytest.raises(ValueError):
        Alphabet("ab").word("abc")


def test_concatenation_and_slicing():
    A = Alphabet("ab")
    u, v = A.word("ab"), A.word("ba")
    assert str(u + v) == "abba"
    assert (u + v)[1:3] == A.word("bb")
    assert (u + v).first() == 0 and (u + v).last() == 0


def test_factors_of_thue_morse_prefix():
    A = Alphabet("ab")
    w = A.word("abbabaab")
    assert {str(x) for x in factors(w, 2)} == {"ab", "bb", "ba", "aa"}
    assert factors(w, 9) == frozenset()


@given(words(n=3, max_size=15), st.integers(1, 4))
def test_factor_count_bound(w, k):
    fs = factors(w, k)
    assert len(fs) <= max(0, len(w) - k + 1)
    assert all(len(f) == k for f in fs)


@given(words(n=2, max_size=15), words(n=2, max_size=3))
def test_occurrences_match_naive_scan(w, u):
    assert occurrences(w, u) == naive_occurrences(w.symbols, u.symbols)


@given(words(n=3, max_size=20))
def test_letter_counts_sum_to_length(w):
    counts = letter_counts(w)
    assert sum(counts) == len(w)
    assert counts == [w.count(a) for a in range(3)]


@given(words(n=2, max_size=10), st.integers(1, 4))
def test_factors_are_factorial(w, k):
    # every factor of a factor is a factor
    longer = factors(w, k + 1)
    shorter = factors(w, k)
    for f in longer:
        assert f[:k] in shorter and f[1:] in shorter


def test_words_enumeration_is_lexicographic():
    A = Alphabet("ab")
    assert [str(w) for w in A.words(2)] == ["aa", "ab", "ba", "bb"]


def test_empty_word_flag():
    A = Alphabet("ab")
    assert Word(A, ()).is_empty

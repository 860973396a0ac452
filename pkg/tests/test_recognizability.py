from dataclasses import replace
from itertools import product

import pytest

from conftest import corpus_sequences, fibonacci, periodic_ab, sigma_acb, tau
from sadickit import DirectiveSequence, factor_language, is_circular, is_recognizable_seq, min_recognizability_constant, mosse_test
from sadickit.recognizability import MODES, find_persistent_witness, interpretations

CORPUS = corpus_sequences()


def const(phi):
    return DirectiveSequence.constant(phi)


@pytest.mark.parametrize("seq, expected", [(const(tau()), 2), (const(fibonacci()), 2), (CORPUS["sigma_prime2.seq"], 3)], ids=["tm", "fib", "sp2"])
def test_frozen_constants(seq, expected):
    rc = min_recognizability_constant(seq, 0, cap=10)
    assert rc.outcome == "holds" and rc.constant == expected
    assert all(v.fails for v in rc.verdicts[:-1])
    for v in rc.verdicts[:-1]:
        assert v.replay(seq)


def test_periodic_example_fails_everywhere():
    seq = const(periodic_ab())
    for ell in range(1, 6):
        v = mosse_test(seq, 0, ell)
        assert v.fails and v.replay(seq)
    rc = min_recognizability_constant(seq, 0, cap=5)
    assert rc.outcome == "fails"
    p, q = rc.persistent.p, rc.persistent.q
    assert {str(p), str(q)} == {"ab", "ba"}
    phi = seq.term(0)
    assert phi(p) == phi(q)
    K = rc.persistent.power
    L = factor_language(seq, 0, K * len(p))
    assert (p * K) in L and (q * K) in L


def test_periodic_example_passes_the_cut_only_test():
    assert mosse_test(const(periodic_ab()), 0, 1, mode="mosse_cut").holds


def _brute_interpretations(w, phi, L_pre, max_pre):
    out = set()
    s = w.symbols
    for n in range(1, max_pre + 1):
        for v in L_pre.tuples(n):
            img = phi.apply_tuple(v)
            for k in range(len(phi._img[v[0]])):
                if img[k : k + len(s)] != s:
                    continue
                # v must be a minimal cover: its last letter is needed
                if k + len(s) <= len(img) - len(phi._img[v[-1]]):
                    continue
                out.add((v, k))
    return out


@pytest.mark.parametrize("phi", [tau(), fibonacci(), sigma_acb(), periodic_ab()], ids=["tau", "fib", "acb", "per"])
@pytest.mark.parametrize("width", [1, 2, 3, 4, 5])
def test_interpretations_match_brute_force(phi, width):
    seq = const(phi)
    L = factor_language(seq, 0, max(width, 2 * width + 2))
    for w in L.words(width):
        its = interpretations(w, phi, L)
        assert {(i.preimage.symbols, i.offset) for i in its} == _brute_interpretations(w, phi, L, width + 2)
        assert all(i.is_valid(phi) for i in its)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_monotone_in_ell(name):
    seq = CORPUS[name]
    for level in range(seq.nrep):
        verdicts = [mosse_test(seq, level, ell).outcome for ell in range(1, 6)]
        if "holds" in verdicts:
            first = verdicts.index("holds")
            assert all(v == "holds" for v in verdicts[first:])


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_strong_sync_is_stricter(name):
    seq = CORPUS[name]
    for ell in range(1, 5):
        if mosse_test(seq, 0, ell, "strong_sync").holds:
            assert mosse_test(seq, 0, ell, "mosse_cut").holds


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_every_failure_replays(name):
    seq = CORPUS[name]
    for level in range(seq.nrep):
        for mode in MODES:
            for ell in range(1, 4):
                v = mosse_test(seq, level, ell, mode)
                assert v.fails == v.replay(seq)


def test_tampered_witness_is_rejected():
    seq = const(periodic_ab())
    v = mosse_test(seq, 0, 2)
    assert v.replay(seq)
    assert not replace(v, second=v.first).replay(seq)
    assert not replace(v, ell=3).replay(seq)
    other = next(w for w in factor_language(seq, 0, 4).words(4) if w != v.witness)
    assert not replace(v, witness=other).replay(seq)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_circular_terms_are_recognized(name):
    seq = CORPUS[name]
    terms = [seq.term(r) for r in range(seq.nrep)]
    # a circular morphism is injective on letters with a circular image set
    if not all(len(set(t.images)) == len(t.images) and is_circular(t.images)[0] for t in terms):
        pytest.skip("some term is not circular")
    assert is_recognizable_seq(seq, cap=10).recognizable == "holds"


def test_sequence_level_verdicts():
    res = is_recognizable_seq(CORPUS["alternating.seq"], cap=6)
    assert len(res.levels) == 2 and res.recognizable == "holds"
    res = is_recognizable_seq(const(periodic_ab()), cap=3)
    assert res.recognizable == "fails" and res.eventually_recognizable == "fails"


def test_no_persistent_witness_for_thue_morse():
    assert find_persistent_witness(const(tau()), 0, cap=4) is None


def test_bad_mode_rejected():
    with pytest.raises(ValueError):
        mosse_test(const(tau()), 0, 1, mode="bogus")


def _pairs(w, phi, seq):
    L = factor_language(seq, 0, 6)
    return {(str(i.preimage), i.offset) for i in interpretations(phi.codomain.word(w), phi, L)}


def test_interpretations_of_ab_under_tau():
    t = tau()
    pairs = _pairs("ab", t, const(t))
    # τ(ba) = baab reads "aa" at offset 1, so the centre-straddling reading is bb
    assert pairs == {("a", 0), ("bb", 1)}


def test_interpretations_restricted_to_the_language():
    p = periodic_ab()
    # every letter has image ab, but aa and bb never occur in the preimage language
    assert _pairs("abab", p, const(p)) == {("ab", 0), ("ba", 0)}

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import ideal_partitions, naive_in_plus
from sadickit import Alphabet, FiniteSemigroup, green_classification, is_aperiodic, omega_power, syntactic_semigroup
from sadickit.semigroup import (
    CapExceeded,
    aperiodicity_failure,
    code_dfa,
    cyclic_group,
    is_orthodox,
    k_p,
    rectangular_band,
    to_tsv,
    transformation_semigroup,
)
from sadickit.rees import rees_build


def code(*spellings):
    A = Alphabet(sorted({ch for s in spellings for ch in s}))
    return [A.word(s) for s in spellings]


def transformations(maps):
    return FiniteSemigroup.generate([tuple(m) for m in maps], lambda f, g: tuple(g[x] for x in f), cap=60)


def small_semigroups():
    out = {
        "Z1": cyclic_group(1),
        "Z5": cyclic_group(5),
        "band2x3": rectangular_band(2, 3),
        "K2": k_p(2),
        "K3": k_p(3),
        "K5": k_p(5),
        "rees22": rees_build(2, 2).T,
        "syn_ab_ba": syntactic_semigroup(code=code("ab", "ba")),
        "syn_acb": syntactic_semigroup(code=code("ac", "bcb", "ba")),
        "syn_aa": syntactic_semigroup(code=code("aa")),
        "syn_b_aba": syntactic_semigroup(code=code("b", "aba")),
        "full_T3": transformations([(1, 2, 0), (1, 0, 2), (0, 0, 2)]),
    }
    return {k: v for k, v in out.items() if len(v) <= 60}


SMALL = small_semigroups()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_green_matches_ideal_oracle(name):
    S = SMALL[name]
    g = green_classification(S)
    R, L, J, H = ideal_partitions(S.table().tolist())
    assert g.R == R and g.L == L and g.J == J and g.H == H


@pytest.mark.parametrize("name", sorted(SMALL))
def test_associativity(name):
    assert SMALL[name].check_associativity()


maps = st.lists(st.integers(0, 3), min_size=4, max_size=4).map(tuple)


@given(st.lists(maps, min_size=1, max_size=3))
@settings(max_examples=60)
def test_green_random_transformation_semigroups(gens):
    try:
        S = transformations(gens)
    except CapExceeded:
        assume(False)
    g = green_classification(S)
    R, L, J, H = ideal_partitions(S.table().tolist())
    assert (g.R, g.L, g.J, g.H) == (R, L, J, H)
    # D = J in finite semigroups, and each J-class is a union of R- and of L-classes
    for jc in g.J:
        members = set(jc)
        assert members == {x for r in g.R if r[0] in members for x in r}
        assert members == {x for l in g.L if l[0] in members for x in l}


@given(st.lists(maps, min_size=1, max_size=3))
@settings(max_examples=60)
def test_omega_power_is_idempotent_power(gens):
    try:
        S = transformations(gens)
    except CapExceeded:
        assume(False)
    for s in range(len(S)):
        e = omega_power(S, s)
        assert S.product(e, e) == e
        x, powers = s, {s}
        for _ in range(len(S)):
            x = S.product(x, s)
            powers.add(x)
        assert e in powers
    assert is_aperiodic(S) == (aperiodicity_failure(S) is None)
    assert is_aperiodic(S) == all(len(h) == 1 for h in green_classification(S).H)


def test_fixture_shapes():
    assert len(k_p(3)) == 12 and not is_orthodox(k_p(3))
    assert green_classification(k_p(3)).is_simple
    band = rectangular_band(2, 2)
    g = green_classification(band)
    assert len(g.H) == 4 and all(len(h) == 1 for h in g.H)
    assert is_aperiodic(band) and is_orthodox(band)
    assert not is_aperiodic(cyclic_group(3))


def test_syntactic_sizes():
    # frozen from the minimal automata of C*
    assert len(syntactic_semigroup(code=code("ab", "ba"))) == 14
    assert len(syntactic_semigroup(code=code("ac", "bcb", "ba"))) == 23
    assert len(syntactic_semigroup(code=code("aa"))) == 2


@pytest.mark.parametrize("spellings", [("ab", "ba"), ("ac", "bcb", "ba"), ("b", "aba"), ("a", "ab", "abb")])
def test_code_dfa_recognises_the_star(spellings):
    C = code(*spellings)
    dfa = code_dfa(C)
    k = C[0].alphabet.size
    cs = {c.symbols for c in C}
    from itertools import product

    for n in range(0, 8):
        for w in product(range(k), repeat=n):
            assert dfa.accepts(w) == (n == 0 or naive_in_plus(w, cs))
    m = dfa.minimize()
    assert m.nstates == m.minimize().nstates
    assert len(syntactic_semigroup(code=C)) == len(transformation_semigroup(m))


def test_elements_know_their_words():
    S = syntactic_semigroup(code=code("ab", "ba"))
    for i in range(len(S)):
        w = S.word_of(i)
        x = S.gen_idx[w[0]]
        for a in w[1:]:
            x = int(S.right[x, a])
        assert x == i


def test_tsv_export():
    text = to_tsv(cyclic_group(3))
    assert text.splitlines()[1] == "0\t0\t1\t2"


def test_cap_is_enforced():
    with pytest.raises(CapExceeded):
        FiniteSemigroup.generate([1], lambda x, y: x + y, cap=10)


def test_table_matches_products():
    S = k_p(2)
    t = S.table()
    assert all(t[i, j] == S.product(i, j) for i in range(len(S)) for j in range(len(S)))
    assert isinstance(t, np.ndarray)

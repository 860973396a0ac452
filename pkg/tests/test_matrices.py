import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import fibonacci, sigma_acb, tau
from sadickit import IntMatrix, compose, family_substitution, i2, invertibility_report
from sadickit.matrices import boundary_matrix, frequency_matrix
from sadickit.substitution import properties
from strategies import endo_pairs, endomorphisms

# I2(σ3) exactly as printed, rows indexed by a1..a3 then a_r a_s (r-major)
PRINTED_I2_SIGMA3 = [
    [1, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [1, 2, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0],
    [1, 1, 2, 0, 1, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
]


def test_sigma3_matches_printed_matrix():
    assert i2(family_substitution("sigma", 3)).i2.tolist() == PRINTED_I2_SIGMA3


def test_render_has_block_separators():
    text = i2(family_substitution("sigma", 3)).render()
    lines = text.splitlines()
    assert len(lines) == 13  # 12 rows plus the horizontal rule
    assert lines[0].split("|")[0].split() == ["1", "1", "1"]


@pytest.mark.parametrize("n", range(2, 7))
def test_sigma_family_unimodular(n):
    rep = invertibility_report(family_substitution("sigma", n), primes=(2, 3, 5, 7, 11, 13))
    assert rep.det_f1 == 1
    assert rep.t2_is_permutation
    assert rep.integer_invertible
    assert all(rep.i2_invertible_mod.values())


@pytest.mark.parametrize("phi", [tau(), fibonacci(), sigma_acb(), family_substitution("sigma", 4), family_substitution("sigma_prime", 3)])
def test_det_matches_sympy(phi):
    b = i2(phi)
    assert b.i2.det() == sympy.Matrix(b.i2.tolist()).det()
    assert b.f1.det() == sympy.Matrix(b.f1.tolist()).det()


@given(endomorphisms(max_letters=3, max_image=4))
def test_det_i2_factorises(phi):
    b = i2(phi)
    assert b.i2.det() == b.f1.det() * b.t2.det()


@given(endomorphisms(max_letters=4, max_image=5))
def test_row_sums_count_letters_and_pairs(phi):
    b = i2(phi)
    assert b.f1.row_sums() == list(phi.lengths)
    assert b.f2.row_sums() == [x - 1 for x in phi.lengths]
    assert b.t2.row_sums() == [1] * phi.domain.size ** 2


@given(endomorphisms(max_letters=4, max_image=5))
def test_t2_permutation_iff_permutative(phi):
    p = properties(phi)
    assert boundary_matrix(phi).is_permutation() == (p.left_permutative and p.right_permutative)


@given(endo_pairs(max_letters=4, max_image=5))
def test_anti_homomorphism(pair):
    phi, psi = pair
    a, b = i2(phi), i2(psi)
    comp = i2(compose(psi, phi))
    assert comp.i2 == a.i2 @ b.i2
    assert comp.f2 == a.f1 @ b.f2 + a.f2 @ b.t2
    assert comp.f1 == a.f1 @ b.f1
    assert comp.t2 == a.t2 @ b.t2


@given(endomorphisms(max_letters=3, max_image=4), st.sampled_from([2, 3, 5]))
def test_mod_p_inverse(phi, p):
    M = i2(phi).i2
    if M.is_invertible_mod(p):
        inv = M.inverse_mod(p)
        assert (M @ inv).mod(p) == IntMatrix.identity(M.nrows)
        assert M.rank_mod(p) == M.nrows
    else:
        assert M.det() % p == 0
        assert M.rank_mod(p) < M.nrows


def test_frequency_matrix_only_k_1_2():
    with pytest.raises(ValueError):
        frequency_matrix(tau(), 3)


def test_family_rejects_small_n():
    with pytest.raises(ValueError):
        family_substitution("sigma", 1)

import pytest
from hypothesis import given, settings, strategies as st

from conftest import fibonacci, tau
from sadickit import Substitution, family_substitution, rees_build, rees_induced_endo
from sadickit.rees import closed_form, is_prime
from sadickit.semigroup import CapExceeded
from strategies import ALPHABETS, endomorphisms

MODELS = {(2, 2): rees_build(2, 2), (2, 3): rees_build(2, 3), (3, 2): rees_build(3, 2)}


@pytest.mark.parametrize("n, p, size, order", [(2, 2, 32, 8), (2, 3, 108, 27), (3, 2, 1152, 128)])
def test_cardinalities(n, p, size, order):
    model = MODELS[(n, p)]
    assert model.size == size == n * n * p ** (n * n - n + 1)
    assert model.subgroup_order == order
    assert set(model.h_class_sizes) == {order}
    assert model.j_classes == 1
    assert model.verified


@given(st.sampled_from(sorted(MODELS)), st.data())
def test_closed_form_matches_products(key, data):
    n, p = key
    model = MODELS[key]
    word = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=12))
    x = model.T.index[model.generator(word[0])]
    for a in word[1:]:
        x = model.T.product(x, model.T.index[model.generator(a)])
    assert model.T.elements[x] == closed_form(n, p, tuple(word))


@pytest.mark.parametrize("key", sorted(MODELS))
def test_every_element_satisfies_flow_constraints(key):
    # letter counts equal outgoing pair counts (+1 at the end letter) and
    # incoming pair counts (+1 at the start letter), all mod p
    n, p = key
    for i, v, lam in MODELS[key].T.elements:
        for a in range(n):
            out_sum = sum(v[n + a * n + b] for b in range(n))
            in_sum = sum(v[n + b * n + a] for b in range(n))
            assert (out_sum + (lam == a) - v[a]) % p == 0
            assert (in_sum + (i == a) - v[a]) % p == 0


def test_cap_exceeded_reports_required_size():
    with pytest.raises(CapExceeded) as err:
        rees_build(3, 3, cap=1000)
    assert err.value.required == 19683


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        rees_build(2, 4)
    with pytest.raises(ValueError):
        rees_build(1, 2)
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


CORPUS_ENDOS = {
    "sigma2": family_substitution("sigma", 2),
    "sigma3": family_substitution("sigma", 3),
    "sigma_prime2": family_substitution("sigma_prime", 2),
    "tau": tau(),
    "fibonacci": fibonacci(),
    "identity": Substitution.identity(ALPHABETS[2]),
}


@pytest.mark.parametrize("name", sorted(CORPUS_ENDOS))
@pytest.mark.parametrize("p", [2, 3])
def test_endomorphism_verdicts_agree(name, p):
    phi = CORPUS_ENDOS[name]
    n = phi.domain.size
    if n * n * p ** (n * n - n + 1) > 20000:
        model = rees_build(n, p, cap=20000)  # (3, 3) fits exactly
    else:
        model = MODELS.get((n, p)) or rees_build(n, p)
    rep = rees_induced_endo(phi, model)
    assert rep.agree
    assert rep.is_automorphism == (rep.image_size == model.size)


@given(endomorphisms(min_letters=2, max_letters=2, max_image=5), st.sampled_from([2, 3]))
@settings(max_examples=40)
def test_random_endomorphism_verdicts_agree(phi, p):
    rep = rees_induced_endo(phi, MODELS[(2, p)], samples=50)
    assert rep.agree
    assert rep.is_automorphism == (rep.image_size == MODELS[(2, p)].size)


def test_alphabet_size_must_match():
    with pytest.raises(ValueError):
        rees_induced_endo(family_substitution("sigma", 3), MODELS[(2, 2)])

"""Rees matrix models of free objects in completely simple semigroups over ``Z/p``.

The model has index sets ``I = Λ = {0..n-1}``, group ``V = (Z/p)^m`` with
``m = n + n²`` and sandwich entries ``P(λ, j) = v_{λ,j}``.  Coordinates
``0..n-1`` carry the basis vectors ``v_i``; coordinate ``n + λ·n + j``
carries ``v_{λ,j}``.  Elements are triples ``(i, v, λ)`` with ``v`` a tuple.

The generators ``s_i = (i, v_i, i)`` multiply out to

    s_{i_1} ⋯ s_{i_r} = (i_1, Σ_k |w|_{a_k} v_k + Σ_{k,l} |w|_{a_k a_l} v_{k,l}, i_r)

(letter counts and 2-factor counts of ``w = a_{i_1} ⋯ a_{i_r}`` mod ``p``), so
their closure has ``n² p^{n²-n+1}`` elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional

import numpy as np

from .matrices import invertibility_report
from .semigroup import DEFAULT_CAP, CapExceeded, FiniteSemigroup, green_classification
from .substitution import Substitution

__all__ = ["ReesModel", "rees_build", "closed_form", "EndoReport", "rees_induced_endo", "is_prime"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _mul_factory(n: int, p: int):
    def mul(x, y):
        i, g, lam = x
        j, h, mu = y
        v = [(a + b) % p for a, b in zip(g, h)]
        k = n + lam * n + j
        v[k] = (v[k] + 1) % p
        return (i, tuple(v), mu)

    return mul


def closed_form(n: int, p: int, word: tuple) -> tuple:
    """The element ``s_{w[0]} ⋯ s_{w[-1]}`` computed from letter and 2-factor counts."""
    if not word:
        raise ValueError("empty product")
    v = [0] * (n + n * n)
    for a in word:
        v[a] += 1
    for a, b in zip(word, word[1:]):
        v[n + a * n + b] += 1
    return (word[0], tuple(x % p for x in v), word[-1])


@dataclass
class ReesModel:
    n: int
    p: int
    T: FiniteSemigroup
    expected_size: int
    subgroup_order: int
    h_class_sizes: tuple
    j_classes: int
    size_ok: bool
    subgroups_ok: bool

    @property
    def m(self) -> int:
        return self.n + self.n * self.n

    @property
    def size(self) -> int:
        return len(self.T)

    @property
    def verified(self) -> bool:
        return self.size_ok and self.subgroups_ok

    def generator(self, i: int) -> tuple:
        v = [0] * self.m
        v[i] = 1
        return (i, tuple(v), i)

    def evaluate(self, word: tuple) -> int:
        """Index in ``T`` of the product of generators spelled by ``word``."""
        return self.T.index[closed_form(self.n, self.p, word)]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "m": self.m,
            "size": self.size,
            "expected_size": self.expected_size,
            "size_ok": self.size_ok,
            "subgroup_order": self.subgroup_order,
            "h_class_sizes": sorted(set(self.h_class_sizes)),
            "j_classes": self.j_classes,
            "subgroups_ok": self.subgroups_ok,
        }


def rees_build(n: int, p: int, cap: int = DEFAULT_CAP) -> ReesModel:
    """Close the generators ``s_0..s_{n-1}`` and verify size and subgroup orders."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = n * n - n + 1
    required = n * n * p**d
    if required > cap:
        raise CapExceeded(cap, required)
    m = n + n * n
    gens = []
    for i in range(n):
        v = [0] * m
        v[i] = 1
        gens.append((i, tuple(v), i))
    T = FiniteSemigroup.generate(gens, _mul_factory(n, p), cap=cap)
    green = green_classification(T)
    idem = set(T.idempotents())
    h_sizes = tuple(len(h) for h in green.H)
    # completely simple: one J-class, every H-class a group of order p^d
    subgroups_ok = (
        len(green.J) == 1
        and all(s == p**d for s in h_sizes)
        and all(sum(1 for x in h if x in idem) == 1 for h in green.H)
    )
    return ReesModel(
        n=n,
        p=p,
        T=T,
        expected_size=required,
        subgroup_order=p**d,
        h_class_sizes=h_sizes,
        j_classes=len(green.J),
        size_ok=len(T) == required,
        subgroups_ok=subgroups_ok,
    )


def _compose_power(f: np.ndarray, e: int) -> np.ndarray:
    result = np.arange(len(f))
    base = f.copy()
    while e:
        if e & 1:
            result = base[result]
        base = base[base]
        e >>= 1
    return result


def _idempotent_exponent(f: np.ndarray) -> int:
    """Least ``e >= 1`` with ``f^e`` idempotent: a multiple of every cycle length, at least every tail."""
    n = len(f)
    state = np.zeros(n, dtype=np.int8)  # 0 new, 1 on stack, 2 done
    tail = np.zeros(n, dtype=np.int64)
    period = 1
    max_tail = 0
    for s in range(n):
        if state[s]:
            continue
        path = []
        x = s
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = int(f[x])
        if state[x] == 1:
            # new cycle through x
            k = path.index(x)
            cyc = path[k:]
            period = lcm(period, len(cyc))
            for y in cyc:
                tail[y] = 0
                state[y] = 2
            path = path[:k]
        for y in reversed(path):
            tail[y] = tail[int(f[y])] + 1
            state[y] = 2
            max_tail = max(max_tail, int(tail[y]))
    e = period
    while e < max(max_tail, 1):
        e += period
    return e


@dataclass(frozen=True)
class EndoReport:
    n: int
    p: int
    is_automorphism: bool
    omega_exponent: int
    image_size: int
    matrix_invertible_mod_p: bool
    homomorphism_checked: int

    @property
    def agree(self) -> bool:
        return self.is_automorphism == self.matrix_invertible_mod_p

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "is_automorphism": self.is_automorphism,
            "matrix_invertible_mod_p": self.matrix_invertible_mod_p,
            "agree": self.agree,
            "omega_exponent": self.omega_exponent,
            "image_size": self.image_size,
            "homomorphism_checked": self.homomorphism_checked,
        }


def rees_induced_endo(phi: Substitution, model: ReesModel, samples: int = 200, seed: int = 0) -> EndoReport:
    """The endomorphism of ``T`` sending ``s_i`` to the value of ``φ(a_i)``.

    It is extended along the breadth-first factorizations of ``T``, spot
    checked for multiplicativity on ``samples`` random pairs, and its
    ω-power is tested on the generators.
    """
    if not phi.is_endomorphism:
        raise ValueError("phi must be an endomorphism")
    if phi.domain.size != model.n:
        raise ValueError(f"alphabet size {phi.domain.size} does not match n = {model.n}")
    T = model.T
    N = len(T)
    f = np.empty(N, dtype=np.int64)
    gen_img = [model.evaluate(phi._img[i]) for i in range(model.n)]
    for e in range(N):
        par = T.parent[e]
        if par is None:
            f[e] = gen_img[T.gen_idx.index(e)]
        else:
            q, k = par
            f[e] = T.product(int(f[q]), gen_img[k])
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        a, b = (int(x) for x in rng.integers(0, N, 2))
        if f[T.product(a, b)] != T.product(int(f[a]), int(f[b])):
            raise AssertionError("induced map is not multiplicative")
    e = _idempotent_exponent(f)
    fe = _compose_power(f, e)
    auto = all(int(fe[g]) == g for g in T.gen_idx)
    inv = invertibility_report(phi, [model.p]).i2_invertible_mod[model.p]
    return EndoReport(
        n=model.n,
        p=model.p,
        is_automorphism=auto,
        omega_exponent=e,
        image_size=int(len(np.unique(f))),
        matrix_invertible_mod_p=bool(inv),
        homomorphism_checked=samples,
    )

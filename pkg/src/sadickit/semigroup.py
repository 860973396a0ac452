"""Finite semigroups: closures, Green's relations, ω-powers, syntactic semigroups.

A :class:`FiniteSemigroup` is generated by a list of generators under a
multiplication callable.  Elements are kept in breadth-first order, so the
generators come first and every other element ``e`` has a recorded
factorization ``e = parent(e) * g``.  The right and left Cayley graphs are
stored; Green's relations are read off their strongly connected components.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .words import Alphabet, Word

__all__ = [
    "CapExceeded",
    "FiniteSemigroup",
    "GreenClassification",
    "green_classification",
    "omega_power",
    "is_aperiodic",
    "is_orthodox",
    "DFA",
    "code_dfa",
    "syntactic_semigroup",
    "transformation_semigroup",
    "cyclic_group",
    "rectangular_band",
    "k_p",
    "to_tsv",
]

DEFAULT_CAP = 200_000


class CapExceeded(RuntimeError):
    """A closure would exceed the configured element cap."""

    def __init__(self, cap: int, required: Optional[int] = None):
        self.cap = cap
        self.required = required
        msg = f"element cap {cap} exceeded"
        if required is not None:
            msg += f" (required {required})"
        super().__init__(msg)


class FiniteSemigroup:
    def __init__(
        self,
        elements: list,
        mul: Callable,
        ngens: int,
        parent: list,
        right: np.ndarray,
        left: Optional[np.ndarray] = None,
        alphabet: Optional[Alphabet] = None,
    ):
        self.elements = elements
        self.index = {x: i for i, x in enumerate(elements)}
        self.mul = mul
        self.ngens = ngens
        self.parent = parent
        self.right = right
        self._left = left
        self.alphabet = alphabet
        self._table: Optional[np.ndarray] = None

    @classmethod
    def generate(
        cls,
        generators: Sequence[Hashable],
        mul: Callable,
        cap: int = DEFAULT_CAP,
        alphabet: Optional[Alphabet] = None,
    ) -> "FiniteSemigroup":
        """Closure of ``generators`` under ``mul`` (breadth first)."""
        elements: list = []
        index: dict = {}
        parent: list = []
        for g in generators:
            # repeated generators collapse onto one element
            if g not in index:
                index[g] = len(elements)
                elements.append(g)
                parent.append(None)
        gen_idx = [index[g] for g in generators]
        right_rows: list = []
        queue = deque(range(len(elements)))
        while queue:
            i = queue.popleft()
            x = elements[i]
            row = []
            for k, g in enumerate(generators):
                y = mul(x, g)
                j = index.get(y)
                if j is None:
                    if len(elements) >= cap:
                        raise CapExceeded(cap)
                    j = len(elements)
                    index[y] = j
                    elements.append(y)
                    parent.append((i, k))
                    queue.append(j)
                row.append(j)
            right_rows.append((i, row))
        right = np.empty((len(elements), len(generators)), dtype=np.int64)
        for i, row in right_rows:
            right[i] = row
        S = cls(elements, mul, len(generators), parent, right, alphabet=alphabet)
        S.gen_idx = gen_idx
        return S

    @classmethod
    def from_table(cls, table, generators: Optional[Sequence[int]] = None) -> "FiniteSemigroup":
        """Semigroup on ``0..N-1`` given a full Cayley table.

        The element numbering of the table is kept; ``generators`` defaults to
        all elements.
        """
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("Cayley table must be square")
        gens = list(range(n)) if generators is None else list(generators)
        mul = lambda x, y: int(table[x, y])  # noqa: E731
        S = cls.generate(gens, mul)
        if len(S) != n:
            raise ValueError("generators do not generate the whole table")
        # renumber to match the table
        order = np.array(S.elements, dtype=np.int64)
        perm = np.empty(n, dtype=np.int64)
        perm[order] = np.arange(n)
        S.elements = list(range(n))
        S.index = {i: i for i in range(n)}
        S.right = order[S.right[perm]]
        S.parent = [None if S.parent[perm[e]] is None else (int(order[S.parent[perm[e]][0]]), S.parent[perm[e]][1]) for e in range(n)]
        S.gen_idx = [int(g) for g in gens]
        S._table = table.copy()
        return S

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def product(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        return self.index[self.mul(self.elements[i], self.elements[j])]

    def word_of(self, i: int) -> tuple:
        """A shortest generator word (indices into the generator list) for element ``i``."""
        out = []
        while self.parent[i] is not None:
            i, k = self.parent[i]
            out.append(k)
        out.append(self.gen_idx.index(i))
        return tuple(reversed(out))

    def label(self, i: int) -> str:
        w = self.word_of(i)
        if self.alphabet is not None:
            return str(Word(self.alphabet, w))
        return ".".join(str(k) for k in w)

    @property
    def left(self) -> np.ndarray:
        """``left[i, k]`` is the index of ``g_k * e_i``."""
        if self._left is None:
            gens = [self.elements[g] for g in self.gen_idx]
            left = np.empty_like(self.right)
            for i, x in enumerate(self.elements):
                for k, g in enumerate(gens):
                    left[i, k] = self.index[self.mul(g, x)]
            self._left = left
        return self._left

    def table(self, cap: int = 5000) -> np.ndarray:
        """Full Cayley table (row ``i``, column ``j`` holds ``e_i e_j``)."""
        if self._table is None:
            n = len(self)
            if n > cap:
                raise CapExceeded(cap, n)
            t = np.empty((n, n), dtype=np.int64)
            ids = np.arange(n)
            for j in range(n):
                col = ids
                for k in self.word_of(j):
                    col = self.right[col, k]
                t[:, j] = col
            self._table = t
        return self._table

    def idempotents(self) -> list:
        return [i for i in range(len(self)) if self.product(i, i) == i]

    def check_associativity(self, samples: Optional[int] = None, seed: int = 0) -> bool:
        """Exhaustive for small semigroups, sampled otherwise."""
        n = len(self)
        if samples is None and n <= 200:
            return _assoc_loop(self.table())
        rng = np.random.default_rng(seed)
        for _ in range(samples or 1000):
            a, b, c = (int(x) for x in rng.integers(0, n, 3))
            if self.product(self.product(a, b), c) != self.product(a, self.product(b, c)):
                return False
        return True


def _assoc_loop(t: np.ndarray) -> bool:
    n = t.shape[0]
    for a in range(n):
        # (a b) c  vs  a (b c)
        lhs = t[t[a, :], :]
        rhs = t[a, t]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def _scc_labels(n: int, edges_from: np.ndarray, edges_to: np.ndarray) -> np.ndarray:
    graph = coo_matrix((np.ones(len(edges_from), dtype=np.int8), (edges_from, edges_to)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="strong")
    return labels


def _partition(labels: np.ndarray) -> list:
    classes: dict = {}
    for i, c in enumerate(labels.tolist()):
        classes.setdefault(c, []).append(i)
    return sorted((tuple(v) for v in classes.values()), key=lambda c: c[0])


@dataclass
class JClass:
    elements: tuple
    regular: bool
    idempotents: tuple
    group_h_classes: tuple


@dataclass
class GreenClassification:
    R: list
    L: list
    J: list
    H: list
    j_classes: list

    def class_of(self, relation: str, i: int) -> tuple:
        for c in getattr(self, relation):
            if i in c:
                return c
        raise KeyError(i)

    @property
    def is_simple(self) -> bool:
        return len(self.J) == 1


def green_classification(S: FiniteSemigroup) -> GreenClassification:
    n = len(S)
    src = np.repeat(np.arange(n), S.ngens)
    r_to = S.right.reshape(-1)
    l_to = S.left.reshape(-1)
    r_lab = _scc_labels(n, src, r_to)
    l_lab = _scc_labels(n, src, l_to)
    j_lab = _scc_labels(n, np.concatenate([src, src]), np.concatenate([r_to, l_to]))
    h_lab = r_lab.astype(np.int64) * (int(l_lab.max()) + 1) + l_lab
    R, L, J, H = (_partition(x) for x in (r_lab, l_lab, j_lab, h_lab))
    idem = set(S.idempotents())
    j_classes = []
    for jc in J:
        ids = tuple(i for i in jc if i in idem)
        members = set(jc)
        groups = tuple(h for h in H if h[0] in members and any(i in idem for i in h))
        j_classes.append(JClass(elements=jc, regular=bool(ids), idempotents=ids, group_h_classes=groups))
    return GreenClassification(R=R, L=L, J=J, H=H, j_classes=j_classes)


def _power_cycle(S: FiniteSemigroup, s: int):
    """Index and period of the monogenic subsemigroup of ``s``, plus its powers."""
    seen = {}
    powers = []
    x = s
    k = 1
    while x not in seen:
        seen[x] = k
        powers.append(x)
        x = S.product(x, s)
        k += 1
    index = seen[x]
    period = k - index
    return index, period, powers


def omega_power(S: FiniteSemigroup, s: int) -> int:
    """The unique idempotent among the powers of ``s``."""
    index, period, powers = _power_cycle(S, s)
    # the idempotent is s^k with k >= index and k divisible by the period
    k = -(-index // period) * period
    return powers[k - 1]


def is_aperiodic(S: FiniteSemigroup) -> bool:
    """All subgroups trivial, i.e. ``s^ω s = s^ω`` for every ``s``."""
    return aperiodicity_failure(S) is None


def aperiodicity_failure(S: FiniteSemigroup) -> Optional[int]:
    """An element whose powers cycle with period > 1, or ``None``."""
    for s in range(len(S)):
        _, period, _ = _power_cycle(S, s)
        if period != 1:
            return s
    return None


def is_orthodox(S: FiniteSemigroup) -> bool:
    """Products of idempotents are idempotent."""
    ids = S.idempotents()
    for e in ids:
        for f in ids:
            x = S.product(e, f)
            if S.product(x, x) != x:
                return False
    return True


# -- automata ---------------------------------------------------------------


@dataclass(frozen=True)
class DFA:
    """Complete deterministic automaton; ``delta[q][a]`` is the next state."""

    alphabet: Alphabet
    delta: tuple
    initial: int
    finals: frozenset

    @property
    def nstates(self) -> int:
        return len(self.delta)

    def run(self, symbols: Iterable[int], q: Optional[int] = None) -> int:
        q = self.initial if q is None else q
        for a in symbols:
            q = self.delta[q][a]
        return q

    def accepts(self, w) -> bool:
        symbols = w.symbols if isinstance(w, Word) else w
        return self.run(symbols) in self.finals

    def minimize(self) -> "DFA":
        """Restrict to accessible states and merge equivalent ones (Moore)."""
        k = self.alphabet.size
        reach = {self.initial}
        stack = [self.initial]
        while stack:
            q = stack.pop()
            for a in range(k):
                r = self.delta[q][a]
                if r not in reach:
                    reach.add(r)
                    stack.append(r)
        states = sorted(reach)
        block = {q: int(q in self.finals) for q in states}
        while True:
            sig = {q: (block[q],) + tuple(block[self.delta[q][a]] for a in range(k)) for q in states}
            ids: dict = {}
            new_block = {}
            for q in states:
                new_block[q] = ids.setdefault(sig[q], len(ids))
            if len(ids) == len(set(block.values())):
                block = new_block
                break
            block = new_block
        # renumber so the initial state is 0 and numbering follows BFS order
        order = {}
        queue = deque([block[self.initial]])
        order[block[self.initial]] = 0
        rep = {}
        for q in states:
            rep.setdefault(block[q], q)
        while queue:
            b = queue.popleft()
            for a in range(k):
                c = block[self.delta[rep[b]][a]]
                if c not in order:
                    order[c] = len(order)
                    queue.append(c)
        delta = [None] * len(order)
        for b, i in order.items():
            delta[i] = tuple(order[block[self.delta[rep[b]][a]]] for a in range(k))
        finals = frozenset(order[block[q]] for q in states if q in self.finals)
        return DFA(self.alphabet, tuple(delta), 0, finals)


def code_dfa(code: Iterable[Word]) -> DFA:
    """Deterministic automaton of ``C*`` from the flower automaton of ``C``.

    ``C*`` and ``C⁺`` share the same syntactic semigroup (the empty word
    never occurs inside a context ``x u y`` with ``u`` nonempty).
    """
    code = list(code)
    if not code:
        raise ValueError("empty code")
    alphabet = code[0].alphabet
    words = sorted({w.symbols for w in code})
    if any(len(w) == 0 for w in words):
        raise ValueError("codewords must be nonempty")
    # flower states: 0 is the centre; (w, i) is "read i letters of w"
    def step(state_set: frozenset, a: int) -> frozenset:
        out = set()
        for st in state_set:
            if st == 0:
                for w in words:
                    if w[0] == a:
                        out.add(0 if len(w) == 1 else (w, 1))
            else:
                w, i = st
                if w[i] == a:
                    out.add(0 if i + 1 == len(w) else (w, i + 1))
        return frozenset(out)

    start = frozenset([0])
    index = {start: 0}
    delta: list = []
    queue = deque([start])
    subsets = [start]
    while queue:
        cur = queue.popleft()
        row = []
        for a in range(alphabet.size):
            nxt = step(cur, a)
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
    finals = frozenset(i for i, s in enumerate(subsets) if 0 in s)
    return DFA(alphabet, tuple(delta), 0, finals)


def transformation_semigroup(dfa: DFA, cap: int = DEFAULT_CAP) -> FiniteSemigroup:
    """Transition semigroup generated by the letters (right action on states)."""
    gens = [tuple(dfa.delta[q][a] for q in range(dfa.nstates)) for a in range(dfa.alphabet.size)]

    def mul(s: tuple, t: tuple) -> tuple:
        # read s, then t
        return tuple(t[q] for q in s)

    return FiniteSemigroup.generate(gens, mul, cap=cap, alphabet=dfa.alphabet)


def syntactic_semigroup(code: Optional[Iterable[Word]] = None, dfa: Optional[DFA] = None) -> FiniteSemigroup:
    """Syntactic semigroup of ``C⁺`` (or of the language of ``dfa``)."""
    if (code is None) == (dfa is None):
        raise ValueError("give exactly one of code or dfa")
    if dfa is None:
        dfa = code_dfa(code)
    minimal = dfa.minimize()
    if not minimal.finals:
        raise ValueError("empty language")
    return transformation_semigroup(minimal)


# -- small fixtures ----------------------------------------------------------


def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup.from_table([[(i + j) % n for j in range(n)] for i in range(n)])


def rectangular_band(m: int, n: int) -> FiniteSemigroup:
    """``I × Λ`` with ``(i, λ)(j, μ) = (i, μ)``."""
    els = [(i, l) for i in range(m) for l in range(n)]
    idx = {e: k for k, e in enumerate(els)}
    return FiniteSemigroup.from_table([[idx[(a[0], b[1])] for b in els] for a in els])


def k_p(p: int) -> FiniteSemigroup:
    """``M(Z/pZ, 2, 2, [[0, 0], [0, 1]])``, the minimal non-orthodox simple example."""
    sandwich = ((0, 0), (0, 1))

    def mul(x, y):
        i, g, lam = x
        j, h, mu = y
        return (i, (g + sandwich[lam][j] + h) % p, mu)

    gens = [(i, g, l) for i in range(2) for g in range(p) for l in range(2)]
    return FiniteSemigroup.generate(gens, mul)


def to_tsv(S: FiniteSemigroup) -> str:
    """Cayley table as tab-separated text, elements by canonical index."""
    t = S.table()
    lines = ["\t".join(["*"] + [str(j) for j in range(len(S))])]
    for i in range(len(S)):
        lines.append("\t".join([str(i)] + [str(int(x)) for x in t[i]]))
    return "\n".join(lines) + "\n"

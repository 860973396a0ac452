"""Codes, circular codes and pure codes over a finite alphabet.

All deciders take an iterable of nonempty :class:`~sadickit.words.Word`
objects over one alphabet.  Negative answers come with a witness that can be
replayed against the raw definitions (``in_plus`` is the membership test
those replays use).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .semigroup import FiniteSemigroup, aperiodicity_failure, syntactic_semigroup
from .words import Alphabet, Word

__all__ = [
    "NotACode",
    "CodeWitness",
    "CircularityWitness",
    "CodeReport",
    "in_plus",
    "factorizations",
    "is_code",
    "is_circular",
    "is_pure",
    "is_prefix_code",
    "is_suffix_code",
    "is_bifix_code",
    "brute_force_circular",
    "brute_force_pure",
    "analyze_code",
]


class NotACode(ValueError):
    """Raised when a procedure that presupposes a code receives a non-code."""


def _normalize(code: Iterable[Word]) -> tuple[Alphabet, list]:
    code = list(code)
    if not code:
        raise ValueError("a code must be nonempty")
    alphabet = code[0].alphabet
    for w in code:
        if w.alphabet is not alphabet:
            raise ValueError("codewords over different alphabets")
        if w.is_empty:
            raise ValueError("codewords must be nonempty")
    return alphabet, sorted({w.symbols for w in code}, key=lambda s: (len(s), s))


def _in_plus(s: tuple, words: list) -> bool:
    if not s:
        return False
    ok = [False] * (len(s) + 1)
    ok[0] = True
    for i in range(len(s)):
        if ok[i]:
            for w in words:
                if s[i : i + len(w)] == w:
                    ok[i + len(w)] = True
    return ok[len(s)]


def in_plus(w: Word, code: Iterable[Word]) -> bool:
    """Membership of ``w`` in ``C⁺``."""
    _, words = _normalize(code)
    return _in_plus(w.symbols, words)


def factorizations(w: Word, code: Iterable[Word], limit: int = 16) -> list:
    """Up to ``limit`` factorizations of ``w`` as a list of codeword tuples."""
    alphabet, words = _normalize(code)
    s = w.symbols
    out: list = []

    def go(i: int, acc: list) -> None:
        if len(out) >= limit:
            return
        if i == len(s):
            if acc:
                out.append(tuple(Word._trusted(alphabet, x) for x in acc))
            return
        for c in words:
            if s[i : i + len(c)] == c:
                go(i + len(c), acc + [c])

    go(0, [])
    return out


@dataclass(frozen=True)
class CodeWitness:
    """A word with two distinct factorizations over the candidate code."""

    word: Word
    first: tuple
    second: tuple

    def replay(self, code: Iterable[Word]) -> bool:
        words = set(code)
        return (
            self.first != self.second
            and all(c in words for c in self.first + self.second)
            and _concat(self.first) == self.word
            and _concat(self.second) == self.word
        )


def _concat(ws: tuple) -> Word:
    out = ws[0]
    for w in ws[1:]:
        out = out + w
    return out


def is_code(code: Iterable[Word]) -> tuple[bool, Optional[CodeWitness]]:
    """Sardinas–Patterson test over dangling suffixes.

    Each state records a pair of partial factorizations where the "ahead"
    one exceeds the other by the dangling suffix.  Reaching an empty
    suffix closes both into a word with two factorizations.
    """
    alphabet, words = _normalize(code)
    wordset = set(words)
    queue: deque = deque()
    seen: set = set()
    for c1 in words:
        for c2 in words:
            if c1 != c2 and len(c1) < len(c2) and c2[: len(c1)] == c1:
                rest = c2[len(c1) :]
                if rest not in seen:
                    seen.add(rest)
                    queue.append((rest, (c2,), (c1,)))
    while queue:
        rest, ahead, behind = queue.popleft()
        if rest in wordset:
            w = lambda xs: tuple(Word._trusted(alphabet, x) for x in xs)  # noqa: E731
            first, second = w(ahead), w(behind + (rest,))
            return False, CodeWitness(_concat(first), first, second)
        for c in words:
            if len(c) < len(rest) and rest[: len(c)] == c:
                nxt, state = rest[len(c) :], (ahead, behind + (c,))
            elif len(c) > len(rest) and c[: len(rest)] == rest:
                nxt, state = c[len(rest) :], (behind + (c,), ahead)
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt,) + state)
    return True, None


def is_prefix_code(code: Iterable[Word]) -> bool:
    _, words = _normalize(code)
    return not any(u != v and v[: len(u)] == u for u in words for v in words)


def is_suffix_code(code: Iterable[Word]) -> bool:
    _, words = _normalize(code)
    return not any(u != v and v[len(v) - len(u) :] == u for u in words for v in words)


def is_bifix_code(code: Iterable[Word]) -> bool:
    code = list(code)
    return is_prefix_code(code) and is_suffix_code(code)


# -- circularity -------------------------------------------------------------


def _flower(words: list, k: int):
    """Flower automaton: state 0 is the centre, (w, i) a position inside ``w``."""
    states: list = [0]
    for w in words:
        states.extend((w, i) for i in range(1, len(w)))
    index = {s: i for i, s in enumerate(states)}
    trans: list = [[[] for _ in range(k)] for _ in states]
    for w in words:
        for i, a in enumerate(w):
            src = 0 if i == 0 else index[(w, i)]
            dst = 0 if i + 1 == len(w) else index[(w, i + 1)]
            trans[src][a].append(dst)
    return states, trans


@dataclass(frozen=True)
class CircularityWitness:
    """Words ``u, v`` with ``uv, vu ∈ C⁺`` but not both ``u, v ∈ C⁺``."""

    u: Word
    v: Word

    def replay(self, code: Iterable[Word]) -> bool:
        _, words = _normalize(code)
        uv = self.u.symbols + self.v.symbols
        vu = self.v.symbols + self.u.symbols
        return (
            _in_plus(uv, words)
            and _in_plus(vu, words)
            and not (_in_plus(self.u.symbols, words) and _in_plus(self.v.symbols, words))
        )


def _lex_bfs(src: int, succ: list, k: int) -> dict:
    """Length-lexicographically least label from ``src`` to every reachable node."""
    best = {src: ()}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for a in range(k):
            for y in succ[x][a]:
                if y not in best:
                    best[y] = best[x] + (a,)
                    queue.append(y)
    return best


def is_circular(code: Iterable[Word]) -> tuple[bool, Optional[CircularityWitness]]:
    """Decide circularity on the self-product of the flower automaton.

    For a code ``C``, a pair ``uv, vu ∈ C⁺`` with ``u`` or ``v`` outside
    ``C⁺`` amounts to a cycle through states ``(q, 0)`` and ``(0, q')`` with
    ``q, q'`` different from the centre.  The witness returned is the least
    such ``(u, v)`` ordered by total length, then ``u``, then ``v``.
    """
    code = list(code)
    alphabet, words = _normalize(code)
    ok, _ = is_code(code)
    if not ok:
        raise NotACode("circularity is only defined for codes")
    k = alphabet.size
    states, trans = _flower(words, k)
    n = len(states)
    pair = lambda p, q: p * n + q  # noqa: E731
    succ: list = [[[] for _ in range(k)] for _ in range(n * n)]
    src, dst = [], []
    for p in range(n):
        for q in range(n):
            for a in range(k):
                for p2 in trans[p][a]:
                    for q2 in trans[q][a]:
                        succ[pair(p, q)][a].append(pair(p2, q2))
                        src.append(pair(p, q))
                        dst.append(pair(p2, q2))
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n * n, n * n))
    _, labels = connected_components(graph, directed=True, connection="strong")
    left = [pair(q, 0) for q in range(1, n)]
    right = [pair(0, q) for q in range(1, n)]
    best = None
    for r in right:
        lab = labels[r]
        targets = [x for x in left if labels[x] == lab]
        if not targets:
            continue
        from_r = _lex_bfs(r, succ, k)
        for t in targets:
            u = from_r[t]
            v = _lex_bfs(t, succ, k)[r]
            key = (len(u) + len(v), u, v)
            if best is None or key < best:
                best = key
    if best is None:
        return True, None
    _, u, v = best
    return False, CircularityWitness(Word._trusted(alphabet, u), Word._trusted(alphabet, v))


def brute_force_circular(code: Iterable[Word], bound: Optional[int] = None) -> tuple[bool, Optional[CircularityWitness]]:
    """Search all ``x ∈ C⁺`` with ``|x| ≤ bound`` for a bad rotation ``x = uv``.

    The default bound is ``2·|C|·maxlen(C)``.  A ``True`` answer only means
    no witness exists within the bound.
    """
    alphabet, words = _normalize(code)
    if bound is None:
        bound = 2 * len(words) * max(len(w) for w in words)
    found = None
    frontier = {()}
    members: set = set()
    while frontier:
        nxt = set()
        for x in frontier:
            for w in words:
                y = x + w
                if len(y) <= bound and y not in members:
                    members.add(y)
                    nxt.add(y)
        frontier = nxt
    for x in sorted(members, key=lambda s: (len(s), s)):
        for i in range(1, len(x)):
            u, v = x[:i], x[i:]
            # every rotation is as long as x, so membership is a set lookup
            if v + u in members and not (u in members and v in members):
                key = (len(x), u, v)
                if found is None or key < found:
                    found = key
        if found is not None and found[0] < len(x):
            break
    if found is None:
        return True, None
    _, u, v = found
    return False, CircularityWitness(Word._trusted(alphabet, u), Word._trusted(alphabet, v))


# -- purity ------------------------------------------------------------------


@dataclass(frozen=True)
class PurityEvidence:
    """Syntactic semigroup size and, if impure, a non-aperiodic element."""

    semigroup_size: int
    aperiodic: bool
    periodic_element: Optional[Word] = None
    period: Optional[int] = None


def is_pure(code: Iterable[Word]) -> tuple[bool, PurityEvidence]:
    """A finite code is pure iff the syntactic semigroup of ``C⁺`` is aperiodic."""
    code = list(code)
    alphabet, _ = _normalize(code)
    ok, _ = is_code(code)
    if not ok:
        raise NotACode("purity is only defined for codes")
    S = syntactic_semigroup(code=code)
    bad = aperiodicity_failure(S)
    if bad is None:
        return True, PurityEvidence(len(S), True)
    word = Word._trusted(alphabet, S.word_of(bad))
    return False, PurityEvidence(len(S), False, word, _period(S, bad))


def _period(S: FiniteSemigroup, s: int) -> int:
    seen = {}
    x, k = s, 1
    while x not in seen:
        seen[x] = k
        x, k = S.product(x, s), k + 1
    return k - seen[x]


def brute_force_pure(code: Iterable[Word], max_len: int = 6, max_power: int = 4) -> tuple[bool, Optional[tuple]]:
    """Check ``uⁿ ∈ C⁺ ⇒ u ∈ C⁺`` for ``|u| ≤ max_len`` and ``2 ≤ n ≤ max_power``.

    Returns ``(True, None)`` or ``(False, (u, n))``.
    """
    alphabet, words = _normalize(code)
    for length in range(1, max_len + 1):
        for u in product(range(alphabet.size), repeat=length):
            if _in_plus(u, words):
                continue
            for n in range(2, max_power + 1):
                if _in_plus(u * n, words):
                    return False, (Word._trusted(alphabet, u), n)
    return True, None


# -- summary -----------------------------------------------------------------


@dataclass(frozen=True)
class CodeReport:
    words: tuple
    is_code: bool
    code_witness: Optional[CodeWitness]
    is_prefix: bool
    is_suffix: bool
    is_bifix: bool
    is_circular: Optional[bool] = None
    circular_witness: Optional[CircularityWitness] = None
    is_pure: Optional[bool] = None
    purity: Optional[PurityEvidence] = None
    notes: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        d = {
            "words": [str(w) for w in self.words],
            "is_code": self.is_code,
            "is_prefix": self.is_prefix,
            "is_suffix": self.is_suffix,
            "is_bifix": self.is_bifix,
            "is_circular": self.is_circular,
            "is_pure": self.is_pure,
        }
        if self.code_witness is not None:
            d["code_witness"] = {
                "word": str(self.code_witness.word),
                "factorizations": [[str(x) for x in self.code_witness.first], [str(x) for x in self.code_witness.second]],
            }
        if self.circular_witness is not None:
            d["circular_witness"] = {"u": str(self.circular_witness.u), "v": str(self.circular_witness.v)}
        if self.purity is not None:
            d["syntactic_semigroup_size"] = self.purity.semigroup_size
            if self.purity.periodic_element is not None:
                d["periodic_element"] = str(self.purity.periodic_element)
                d["period"] = self.purity.period
        return d


def analyze_code(code: Iterable[Word]) -> CodeReport:
    code = list(code)
    _, words = _normalize(code)
    alphabet = code[0].alphabet
    ws = tuple(Word._trusted(alphabet, s) for s in words)
    ok, wit = is_code(ws)
    base = dict(
        words=ws,
        is_code=ok,
        code_witness=wit,
        is_prefix=is_prefix_code(ws),
        is_suffix=is_suffix_code(ws),
        is_bifix=is_bifix_code(ws),
    )
    if not ok:
        return CodeReport(**base, notes=("circularity and purity presuppose a code",))
    circ, cw = is_circular(ws)
    pure, ev = is_pure(ws)
    return CodeReport(**base, is_circular=circ, circular_witness=cw, is_pure=pure, purity=ev)

"""Eventually periodic directive sequences and their factor languages.

A sequence is stored as a finite ``prefix`` followed by a ``cycle`` repeated
forever, so ``term(n)`` for ``n >= len(prefix)`` is
``cycle[(n - len(prefix)) % len(cycle)]``.  Level ``n`` carries the alphabet
``A_n = term(n).codomain``; levels with the same residue share the same
:class:`~sadickit.words.Alphabet` object.

Factor languages are computed as an exact least fixpoint.  A factor ``w`` of
length ``j`` of ``σ_n(u)`` has a minimal cover ``u`` of length at most
``r(j) = ⌈(j-1)/μ⌉ + 1`` where ``μ`` is the least image length of ``σ_n``,
and ``r(j) <= j``.  So the sets ``L_n ∩ A_n^{<=J}`` satisfy

    X_n = A_n ∪ { minimal-cover factors of σ_n(u) of length <= J : u ∈ X_{n+1}, |u| <= r(J) }

and, for a common cap ``J`` on the cycle levels, Kleene iteration from the
letters reaches this fixpoint after finitely many rounds.  Prefix levels are
then filled top-down.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .codes import is_code
from .substitution import Substitution, compose, is_positive
from .words import Alphabet, Word

__all__ = [
    "DirectiveSequence",
    "term",
    "compose_range",
    "contract",
    "positive_contraction",
    "proper_contraction",
    "FactorLanguage",
    "NotPrimitive",
    "HorizonExceeded",
    "factor_language",
    "primitivity_witnesses",
    "is_stable",
    "SequenceProperties",
    "ContractionWitness",
    "classify_sequence",
    "Periodic",
    "AperiodicVerifiedUpTo",
    "periodicity_probe",
    "return_words",
    "long_word",
]

DEFAULT_HORIZON = 64


class NotPrimitive(ValueError):
    """The sequence has a level without a positivity witness within the horizon."""


class HorizonExceeded(RuntimeError):
    """A bounded search ran out of room before reaching a complete answer."""


class DirectiveSequence:
    """``σ_0, σ_1, ...`` with ``σ_n : A_{n+1}⁺ → A_n⁺``, eventually periodic."""

    def __init__(self, cycle: Sequence[Substitution], prefix: Sequence[Substitution] = ()):
        prefix, cycle = tuple(prefix), tuple(cycle)
        if not cycle:
            raise ValueError("the cycle must be nonempty")
        terms = prefix + cycle
        for i in range(len(terms) - 1):
            if terms[i].domain is not terms[i + 1].codomain:
                raise ValueError(f"terms {i} and {i + 1} are not composable")
        if cycle[-1].domain is not cycle[0].codomain:
            raise ValueError("the cycle does not wrap: last domain differs from first codomain")
        self.prefix = prefix
        self.cycle = cycle
        self._lang_cache: Optional[tuple] = None

    @classmethod
    def constant(cls, phi: Substitution) -> "DirectiveSequence":
        if not phi.is_endomorphism:
            raise ValueError("a constant sequence needs an endomorphism")
        return cls((phi,))

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    @property
    def nrep(self) -> int:
        """Number of representative levels ``0 .. c+P-1``."""
        return len(self.prefix) + len(self.cycle)

    def rep(self, n: int) -> int:
        """Representative level with the same term as level ``n``."""
        if n < 0:
            raise ValueError("levels are nonnegative")
        c = len(self.prefix)
        return n if n < c else c + (n - c) % len(self.cycle)

    def next_rep(self, r: int) -> int:
        return self.rep(r + 1)

    def term(self, n: int) -> Substitution:
        r = self.rep(n)
        c = len(self.prefix)
        return self.prefix[r] if r < c else self.cycle[r - c]

    def alphabet(self, n: int) -> Alphabet:
        return self.term(n).codomain

    @property
    def levels(self) -> tuple:
        return tuple(self.alphabet(r) for r in range(self.nrep))

    def tail(self, k: int) -> "DirectiveSequence":
        """``σ^{(k)} = (σ_k, σ_{k+1}, ...)``."""
        c = len(self.prefix)
        if k < c:
            return DirectiveSequence(self.cycle, self.prefix[k:])
        s = (k - c) % len(self.cycle)
        return DirectiveSequence(self.cycle[s:] + self.cycle[:s])

    def canonical(self) -> "DirectiveSequence":
        """Shortest prefix representation of the same sequence."""
        prefix, cycle = list(self.prefix), list(self.cycle)
        while prefix and prefix[-1] == cycle[-1]:
            cycle = [prefix.pop()] + cycle[:-1]
        # shortest cycle: least rotation period
        P = len(cycle)
        for d in range(1, P + 1):
            if P % d == 0 and all(cycle[i] == cycle[i % d] for i in range(P)):
                cycle = cycle[:d]
                break
        return DirectiveSequence(cycle, prefix)

    @property
    def is_recurrent_representation(self) -> bool:
        return not self.canonical().prefix

    def digest(self) -> str:
        """Stable hash of the canonical representation."""
        can = self.canonical()
        parts = []
        for tag, terms in (("prefix", can.prefix), ("cycle", can.cycle)):
            parts.append(tag)
            for phi in terms:
                parts.append(" ".join(phi.domain.letters) + " > " + " ".join(phi.codomain.letters))
                parts.extend(f"{a}->{w}" for a, w in phi.rules())
        return hashlib.sha256("\n".join(parts).encode()).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"DirectiveSequence(prefix={list(self.prefix)}, cycle={list(self.cycle)})"


def term(seq: DirectiveSequence, n: int) -> Substitution:
    return seq.term(n)


def compose_range(seq: DirectiveSequence, n: int, m: int) -> Substitution:
    """``σ_{n,m} = σ_n ∘ ... ∘ σ_{m-1}``; the identity on ``A_n`` when ``n = m``."""
    if n > m:
        raise ValueError("need n <= m")
    if n == m:
        return Substitution.identity(seq.alphabet(n))
    out = seq.term(n)
    for k in range(n + 1, m):
        out = compose(out, seq.term(k))
    return out


# -- contraction --------------------------------------------------------------


@dataclass(frozen=True)
class ContractionWitness:
    """Cut points ``head`` followed by the repeating increments ``step``."""

    head: tuple
    step: tuple

    def cuts(self, count: int) -> list:
        out = list(self.head)
        i = 0
        while len(out) < count:
            out.append(out[-1] + self.step[i % len(self.step)])
            i += 1
        return out[:count]

    def as_dict(self) -> dict:
        return {"head": list(self.head), "step": list(self.step)}


def contract(seq: DirectiveSequence, cuts: Sequence[int] = (0,), step: Optional[Sequence[int]] = None) -> DirectiveSequence:
    """Telescope ``seq`` along ``0 = n_0 < n_1 < ... < n_r`` then ``n_r + step[0], ...``.

    >>> from sadickit.substitution import Substitution
    >>> tau = Substitution.from_strings({"a": "ab", "b": "ba"})
    >>> str(contract(DirectiveSequence.constant(tau), step=(2,)).term(0).image("a"))
    'abba'
    """
    cuts = list(cuts)
    if not cuts or cuts[0] != 0:
        raise ValueError("cut points must start at 0")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise ValueError("cut points must be strictly increasing")
    if not step:
        raise ValueError("cut pattern not eventually periodic: give a repeating step")
    step = list(step)
    if any(d <= 0 for d in step):
        raise ValueError("steps must be positive")
    c = seq.prefix_length
    points = list(cuts)
    seen: dict = {}
    j = len(cuts) - 1
    while True:
        n = points[j]
        if j >= len(cuts) - 1 and n >= c:
            state = (seq.rep(n), (j - len(cuts) + 1) % len(step))
            if state in seen:
                start = seen[state]
                break
            seen[state] = j
        if j + 1 >= len(points):
            points.append(n + step[(j - len(cuts) + 1) % len(step)])
        j += 1
    blocks = [compose_range(seq, points[i], points[i + 1]) for i in range(j)]
    return DirectiveSequence(blocks[start:], blocks[:start])


def _cuts_from_rule(seq: DirectiveSequence, nxt) -> Optional[ContractionWitness]:
    """Follow ``n -> nxt(n)`` from 0 until a cycle level repeats."""
    c = seq.prefix_length
    points = [0]
    seen: dict = {}
    while True:
        n = points[-1]
        if n >= c:
            r = seq.rep(n)
            if r in seen:
                i = seen[r]
                head = tuple(points[: i + 1])
                step = tuple(b - a for a, b in zip(points[i:], points[i + 1 :]))
                return ContractionWitness(head, step)
            seen[r] = len(points) - 1
        m = nxt(n)
        if m is None:
            return None
        points.append(m)


def _positivity_offset(seq: DirectiveSequence, n: int, horizon: int) -> Optional[int]:
    """Least ``m`` in ``(n, n+horizon]`` with ``σ_{n,m}`` positive."""
    A = seq.alphabet(n)
    full = frozenset(range(A.size))
    occ = [frozenset([b]) for b in range(A.size)]
    long_ = [False] * A.size
    for m in range(n, n + horizon):
        img = seq.term(m)._img
        occ = [frozenset().union(*(occ[b] for b in s)) for s in img]
        long_ = [len(s) >= 2 or long_[s[0]] for s in img]
        if all(o == full for o in occ) and all(long_):
            return m + 1
    return None


def primitivity_witnesses(seq: DirectiveSequence, horizon: int = DEFAULT_HORIZON) -> dict:
    """``{r: m}`` for each representative level ``r``, with ``m`` least such that ``σ_{r,m}`` is positive.

    Levels ``n >= prefix_length`` use the witness of their representative,
    shifted by ``n - rep(n)``.  ``m`` is ``None`` if no witness lies within
    ``horizon``.
    """
    return {r: _positivity_offset(seq, r, horizon) for r in range(seq.nrep)}


def _witness_at(seq: DirectiveSequence, n: int, wit: dict) -> Optional[int]:
    r = seq.rep(n)
    m = wit[r]
    return None if m is None else m + (n - r)


def positive_contraction(seq: DirectiveSequence, horizon: int = DEFAULT_HORIZON) -> DirectiveSequence:
    """Contract a primitive sequence at its positivity witnesses; every block is positive."""
    wit = primitivity_witnesses(seq, horizon)
    cw = _cuts_from_rule(seq, lambda n: _witness_at(seq, n, wit))
    if cw is None:
        raise NotPrimitive("no positivity witness within the horizon")
    return contract(seq, cw.head, cw.step)


def _least_proper_end(seq: DirectiveSequence, n: int, side: str, horizon: int) -> Optional[int]:
    A = seq.alphabet(n)
    firsts = list(range(A.size))
    lasts = list(range(A.size))
    for m in range(n, n + horizon):
        img = seq.term(m)._img
        firsts = [firsts[s[0]] for s in img]
        lasts = [lasts[s[-1]] for s in img]
        left = len(set(firsts)) == 1
        right = len(set(lasts)) == 1
        if (side == "left" and left) or (side == "right" and right) or (side == "both" and left and right):
            return m + 1
    return None


def proper_contraction(seq: DirectiveSequence, side: str = "left", horizon: int = DEFAULT_HORIZON) -> Optional[ContractionWitness]:
    """Cut points of a contraction whose blocks are all ``side``-proper, if one exists.

    Being left (right) proper is preserved by composing further maps on the
    right, so from level ``n`` every cut at or beyond the least proper end
    works.  A contraction exists iff level 0 has such an end and some cycle
    level does.
    """
    if side not in ("left", "right", "both"):
        raise ValueError("side must be left, right or both")
    c, P = seq.prefix_length, seq.period
    end0 = _least_proper_end(seq, 0, side, horizon)
    if end0 is None:
        return None
    for r in range(c, c + P):
        e = _least_proper_end(seq, r, side, horizon)
        if e is None:
            continue
        d = P * -(-(e - r) // P)
        if c == 0 and r == 0:
            return ContractionWitness((0,), (d,))
        n1 = max(end0, c, 1)
        n1 += (r - seq.rep(n1)) % P
        return ContractionWitness((0, n1), (d,))
    return None


# -- factor languages ----------------------------------------------------------


def _cover_bound(j: int, mu: int) -> int:
    return 1 if j <= 1 else -(-(j - 1) // mu) + 1


def _cover_factors(img: tuple, u: tuple, J: int) -> set:
    """Factors of ``σ(u)`` of length ``<= J`` whose minimal cover is all of ``u``."""
    parts = [img[a] for a in u]
    s = tuple(x for p in parts for x in p)
    if len(u) == 1:
        return {s[i:j] for i in range(len(s)) for j in range(i + 1, min(len(s), i + J) + 1)}
    first, last = len(parts[0]), len(parts[-1])
    out = set()
    tail_start = len(s) - last
    for i in range(first):
        lo = max(tail_start + 1, i + 1)
        hi = min(len(s), i + J)
        for j in range(lo, hi + 1):
            out.add(s[i:j])
    return out


def _level_step(phi: Substitution, source: Iterable[tuple], J: int) -> set:
    img = phi._img
    mu = min(len(x) for x in img)
    r = _cover_bound(J, mu)
    out: set = set()
    for u in source:
        if len(u) <= r:
            out |= _cover_factors(img, u, J)
    return out


def _compute_languages(seq: DirectiveSequence, caps: list) -> tuple:
    """Exact ``L_r ∩ A_r^{<=caps[r]}`` for every representative level ``r``."""
    c, P = seq.prefix_length, seq.period
    J = caps[c]
    log = [f"cycle levels {c}..{c + P - 1}: common length cap {J}"]
    sets = {r: {(a,) for a in range(seq.alphabet(r).size)} for r in range(c, c + P)}
    frontier = {r: set(sets[r]) for r in sets}
    rounds = 0
    while any(frontier.values()):
        rounds += 1
        new_frontier = {}
        for r in range(c, c + P):
            got = _level_step(seq.term(r), frontier[seq.next_rep(r)], J)
            new_frontier[r] = got - sets[r]
        for r in new_frontier:
            sets[r] |= new_frontier[r]
        frontier = new_frontier
        log.append(f"round {rounds}: " + ", ".join(f"L{r}+{len(frontier[r])}" for r in range(c, c + P)))
    log.append(f"cycle fixpoint reached after {rounds} rounds")
    for r in range(c - 1, -1, -1):
        base = {(a,) for a in range(seq.alphabet(r).size)}
        sets[r] = base | _level_step(seq.term(r), sets[r + 1], caps[r])
        log.append(f"prefix level {r}: cap {caps[r]}, {len(sets[r])} words")
    return sets, log


def _caps_for(seq: DirectiveSequence, needs: dict) -> list:
    c, nrep = seq.prefix_length, seq.nrep
    caps = [0] * nrep
    for r, k in needs.items():
        caps[r] = max(caps[r], k)
    for r in range(c):
        mu = min(seq.term(r).lengths)
        nxt = r + 1
        caps[nxt] = max(caps[nxt], _cover_bound(caps[r], mu))
    J = max(caps[c:])
    for r in range(c, nrep):
        caps[r] = J
    return caps


class FactorLanguage:
    """``L(σ^{(n)}) ∩ A_n^j`` for ``1 <= j <= exact_up_to``, frozen after construction."""

    def __init__(self, level: int, alphabet: Alphabet, words: Iterable[tuple], exact_up_to: int, log: tuple, inner_only: bool):
        self.level = level
        self.alphabet = alphabet
        self.exact_up_to = exact_up_to
        self.stabilization_log = tuple(log)
        self.inner_only = inner_only
        by: dict = {j: set() for j in range(1, exact_up_to + 1)}
        for w in words:
            if len(w) <= exact_up_to:
                by[len(w)].add(w)
        self._tuples = {j: frozenset(v) for j, v in by.items()}
        self._words: dict = {}

    def tuples(self, j: int) -> frozenset:
        self._check(j)
        return self._tuples[j]

    def _check(self, j: int) -> None:
        if not 1 <= j <= self.exact_up_to:
            raise HorizonExceeded(f"length {j} outside the exact range 1..{self.exact_up_to}")

    def words(self, j: int) -> frozenset:
        self._check(j)
        if j not in self._words:
            self._words[j] = frozenset(Word._trusted(self.alphabet, s) for s in self._tuples[j])
        return self._words[j]

    @property
    def by_length(self) -> dict:
        return {j: self.words(j) for j in range(1, self.exact_up_to + 1)}

    def complexity(self, j: int) -> int:
        return len(self.tuples(j))

    def __contains__(self, w) -> bool:
        s = w.symbols if isinstance(w, Word) else tuple(w)
        if isinstance(w, Word) and w.alphabet is not self.alphabet:
            return False
        self._check(len(s))
        return s in self._tuples[len(s)]

    def sorted_words(self, j: int) -> list:
        return [Word._trusted(self.alphabet, s) for s in sorted(self._tuples[j])]

    def __repr__(self) -> str:
        return f"FactorLanguage(level={self.level}, exact_up_to={self.exact_up_to})"


def _language_sets(seq: DirectiveSequence, needs: dict) -> tuple:
    caps = _caps_for(seq, needs)
    cached = seq._lang_cache
    if cached is not None and all(a <= b for a, b in zip(caps, cached[0])):
        return cached
    if cached is not None:
        caps = [max(a, b) for a, b in zip(caps, cached[0])]
    sets, log = _compute_languages(seq, caps)
    seq._lang_cache = (caps, sets, log)
    return seq._lang_cache


def factor_language(
    seq: DirectiveSequence,
    level: int,
    max_len: int,
    *,
    horizon: int = DEFAULT_HORIZON,
    allow_nonprimitive: bool = False,
) -> FactorLanguage:
    """Exact factors of length ``<= max_len`` of ``L(σ^{(level)})``.

    Non-primitive sequences raise :class:`NotPrimitive` unless
    ``allow_nonprimitive`` is set, in which case the language is still the
    exact union of factors of the ``σ_{n,m}(a)`` but is flagged
    ``inner_only``: the shift it generates may be smaller.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    wit = primitivity_witnesses(seq, horizon)
    primitive = all(m is not None for m in wit.values())
    if not primitive and not allow_nonprimitive:
        raise NotPrimitive(f"no positivity witness within horizon {horizon} at levels {[r for r, m in wit.items() if m is None]}")
    r = seq.rep(level)
    caps, sets, log = _language_sets(seq, {r: max_len})
    return FactorLanguage(level, seq.alphabet(level), sets[r], caps[r], log, inner_only=not primitive)


def is_stable(seq: DirectiveSequence, horizon: int = DEFAULT_HORIZON) -> tuple[bool, Optional[tuple]]:
    """``fac₂(σ_n(ab)) ⊆ L(σ^{(n)})`` for all levels and all 2-letter words ``ab``.

    Returns the verdict and, on failure, ``(level, ab, factor)``.
    """
    for r in range(seq.nrep):
        L = factor_language(seq, r, 2, horizon=horizon, allow_nonprimitive=True)
        phi = seq.term(r)
        B = phi.domain
        for a in range(B.size):
            for b in range(B.size):
                img = phi.apply_tuple((a, b))
                for i in range(len(img) - 1):
                    f = img[i : i + 2]
                    if f not in L.tuples(2):
                        return False, (r, Word._trusted(B, (a, b)), Word._trusted(phi.codomain, f))
    return True, None


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class SequenceProperties:
    alphabet_sizes: tuple
    bounded: bool
    alphabet_rank: int
    primitive: bool
    primitivity_witnesses: dict
    recurrent: bool
    left_proper: bool
    right_proper: bool
    proper: bool
    left_proper_contraction: Optional[ContractionWitness]
    right_proper_contraction: Optional[ContractionWitness]
    proper_contraction: Optional[ContractionWitness]
    encoding: bool
    encoding_failure: Optional[tuple]
    stable: bool
    stability_failure: Optional[tuple]
    without_bottleneck: bool
    horizon: int
    notes: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        def cw(x):
            return None if x is None else x.as_dict()

        return {
            "alphabet_sizes": list(self.alphabet_sizes),
            "bounded": self.bounded,
            "alphabet_rank": self.alphabet_rank,
            "primitive": self.primitive,
            "primitivity_witnesses": {str(k): v for k, v in sorted(self.primitivity_witnesses.items())},
            "recurrent": self.recurrent,
            "left_proper": self.left_proper,
            "right_proper": self.right_proper,
            "proper": self.proper,
            "left_proper_contraction": cw(self.left_proper_contraction),
            "right_proper_contraction": cw(self.right_proper_contraction),
            "proper_contraction": cw(self.proper_contraction),
            "encoding": self.encoding,
            "encoding_failure": None if self.encoding_failure is None else [str(x) for x in self.encoding_failure],
            "stable": self.stable,
            "stability_failure": None if self.stability_failure is None else [str(x) for x in self.stability_failure],
            "without_bottleneck": self.without_bottleneck,
            "horizon": self.horizon,
        }


def _encoding_failure(seq: DirectiveSequence) -> Optional[tuple]:
    for r in range(seq.nrep):
        phi = seq.term(r)
        if len(set(phi._img)) != len(phi._img):
            return (r, "not injective on letters")
        ok, wit = is_code(phi.images)
        if not ok:
            return (r, f"images not a code: {wit.word}")
    return None


def classify_sequence(seq: DirectiveSequence, horizon: int = DEFAULT_HORIZON) -> SequenceProperties:
    if horizon < 1:
        raise ValueError("horizon must be positive")
    c, nrep = seq.prefix_length, seq.nrep
    sizes = tuple(seq.alphabet(r).size for r in range(nrep))
    wit = primitivity_witnesses(seq, horizon)
    terms = [seq.term(r) for r in range(nrep)]
    firsts = [len(set(t.first_letters())) == 1 for t in terms]
    lasts = [len(set(t.last_letters())) == 1 for t in terms]
    enc = _encoding_failure(seq)
    stable, st_wit = is_stable(seq, horizon)
    primitive = all(m is not None for m in wit.values())
    notes = []
    if not primitive:
        notes.append("languages of a non-primitive sequence are inner-only")
    return SequenceProperties(
        alphabet_sizes=sizes,
        bounded=True,
        alphabet_rank=min(sizes[c:]),
        primitive=primitive,
        primitivity_witnesses=wit,
        recurrent=seq.is_recurrent_representation,
        left_proper=all(firsts),
        right_proper=all(lasts),
        proper=all(firsts) and all(lasts),
        left_proper_contraction=proper_contraction(seq, "left", horizon),
        right_proper_contraction=proper_contraction(seq, "right", horizon),
        proper_contraction=proper_contraction(seq, "both", horizon),
        encoding=enc is None,
        encoding_failure=enc,
        stable=stable,
        stability_failure=st_wit,
        without_bottleneck=all(s >= 2 for s in sizes),
        horizon=horizon,
        notes=tuple(notes),
    )


# -- periodicity and return words -------------------------------------------------


@dataclass(frozen=True)
class Periodic:
    period: int
    at_length: int
    complexities: tuple


@dataclass(frozen=True)
class AperiodicVerifiedUpTo:
    cap: int
    complexities: tuple


def periodicity_probe(seq: DirectiveSequence, cap: int = 20, level: int = 0):
    """Look for ``p(k) = p(k+1)`` with ``k <= cap`` in the complexity function.

    For a minimal shift this happens exactly when it is periodic, and then
    ``p(k)`` is the least period.  Otherwise the answer is only a bounded
    certificate.
    """
    L = factor_language(seq, level, cap + 1)
    p = tuple(L.complexity(k) for k in range(1, cap + 2))
    for k in range(1, cap + 1):
        if p[k - 1] == p[k]:
            return Periodic(p[k - 1], k, p[: k + 1])
    return AperiodicVerifiedUpTo(cap, p)


def return_words(seq: DirectiveSequence, u: Word, horizon: int = DEFAULT_HORIZON, level: int = 0) -> frozenset:
    """Return words to ``u`` in ``L(σ^{(level)})``, as gap words.

    ``r`` is a return word when ``ru ∈ L`` starts with ``u`` and contains
    exactly two occurrences of ``u``.  Found by extending ``u`` letter by
    letter inside the exact factor language until ``u`` reappears; a branch
    still open at length ``horizon`` raises :class:`HorizonExceeded`.
    """
    A = seq.alphabet(level)
    if u.alphabet is not A:
        raise ValueError("u is not over the level alphabet")
    if u.is_empty:
        raise ValueError("u must be nonempty")
    k = len(u)
    cap = min(horizon, max(2 * k + 2, 8))
    L = factor_language(seq, level, cap)
    if u.symbols not in L.tuples(k):
        raise ValueError(f"{u} is not in the language")
    out = set()
    stack = [u.symbols]
    while stack:
        w = stack.pop()
        for a in range(A.size):
            x = w + (a,)
            if len(x) > L.exact_up_to:
                if len(x) > horizon:
                    raise HorizonExceeded(f"return to {u} longer than horizon {horizon}")
                L = factor_language(seq, level, min(horizon, 2 * L.exact_up_to))
            if x not in L.tuples(len(x)):
                continue
            if x[-k:] == u.symbols:
                out.add(Word._trusted(A, x[:-k]))
            else:
                stack.append(x)
    return frozenset(out)


def long_word(seq: DirectiveSequence, length: int, level: int = 0, letter: int = 0) -> Word:
    """``σ_{level,m}(a)`` for the first ``m`` making it at least ``length`` long.

    ``a`` is the letter with index ``letter`` in ``A_m`` (index 0 when
    ``A_m`` is smaller).
    """
    m = level
    while True:
        B = seq.alphabet(m)
        a = letter if letter < B.size else 0
        w = compose_range(seq, level, m).apply_tuple((a,))
        if len(w) >= length:
            return Word._trusted(seq.alphabet(level), w)
        m += 1
        if m - level > 64 * max(1, length):
            raise HorizonExceeded("the sequence does not grow")

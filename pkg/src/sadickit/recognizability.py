"""Window tests for recognizability of the terms of a directive sequence.

For level ``n`` with ``σ = σ_n : A_{n+1}⁺ → A_n⁺`` and a window ``w`` of
length ``2ℓ`` from ``L(σ^{(n)})``, an *interpretation* is a pair ``(v, k)``
with ``v ∈ L(σ^{(n+1)})``, ``0 <= k < |σ(v[0])|``, ``σ(v)[k, k+|w|) = w`` and
``v`` a minimal cover.  In a minimal shift every such pair is realized, so a
window with two incompatible interpretations at its centre is a genuine
obstruction.

Two comparison modes are offered:

``mosse_cut``
    interpretations must agree on whether the centre is a cutting point;
``strong_sync``
    they must also agree on the letter of ``v`` covering the centre and its
    phase, i.e. on the whole centred de-substitution.  This is the default.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .directive import DEFAULT_HORIZON, DirectiveSequence, FactorLanguage, HorizonExceeded, factor_language
from .substitution import Substitution
from .words import Word

__all__ = [
    "MODES",
    "Interpretation",
    "interpretations",
    "RecognizabilityVerdict",
    "mosse_test",
    "PersistentWitness",
    "find_persistent_witness",
    "RecognizabilityConstant",
    "min_recognizability_constant",
    "SequenceRecognizability",
    "is_recognizable_seq",
]

MODES = ("mosse_cut", "strong_sync")


@dataclass(frozen=True)
class Interpretation:
    preimage: Word
    offset: int
    covered: Word
    cut_offsets: frozenset

    def centre(self, phi: Substitution, pos: int) -> tuple:
        """``(letter, phase)`` of ``v`` covering window position ``pos``."""
        x = self.offset + pos
        acc = 0
        for a in self.preimage.symbols:
            size = len(phi._img[a])
            if x < acc + size:
                return (a, x - acc)
            acc += size
        raise ValueError("position outside the interpretation")

    def is_valid(self, phi: Substitution) -> bool:
        v, k, w = self.preimage.symbols, self.offset, self.covered.symbols
        if not v or not 0 <= k < len(phi._img[v[0]]):
            return False
        image = phi.apply_tuple(v)
        if image[k : k + len(w)] != w:
            return False
        if k + len(w) <= len(image) - len(phi._img[v[-1]]):
            return False
        return self.cut_offsets == _cuts(phi, v, k, len(w))

    def as_dict(self) -> dict:
        return {"preimage": str(self.preimage), "offset": self.offset, "cut_offsets": sorted(self.cut_offsets)}


def _cuts(phi: Substitution, v: tuple, k: int, width: int) -> frozenset:
    out = set()
    acc = 0
    positions = [0]
    for a in v:
        acc += len(phi._img[a])
        positions.append(acc)
    for c in positions:
        if k <= c <= k + width:
            out.add(c - k)
    return frozenset(out)


def _preimage_bound(width: int, phi: Substitution) -> int:
    mu = min(phi.lengths)
    return -(-width // mu) + 2


def interpretations(w: Word, phi: Substitution, L_pre: FactorLanguage) -> list:
    """All interpretations of ``w`` over the preimage language, sorted by ``(v, k)``."""
    if w.alphabet is not phi.codomain:
        raise ValueError("window is not over the codomain of phi")
    if L_pre.alphabet is not phi.domain:
        raise ValueError("preimage language is not over the domain of phi")
    need = _preimage_bound(len(w), phi)
    if L_pre.exact_up_to < need:
        raise HorizonExceeded(f"preimage language exact up to {L_pre.exact_up_to}, need {need}")
    s = w.symbols
    img = phi._img
    out = []

    def extend(v: tuple, k: int, covered: int) -> None:
        # covered = number of window letters already matched
        if covered >= len(s):
            out.append(
                Interpretation(
                    preimage=Word._trusted(phi.domain, v),
                    offset=k,
                    covered=w,
                    cut_offsets=_cuts(phi, v, k, len(s)),
                )
            )
            return
        for b in range(phi.domain.size):
            x = img[b]
            take = min(len(x), len(s) - covered)
            if x[:take] == s[covered : covered + take] and v + (b,) in L_pre.tuples(len(v) + 1):
                extend(v + (b,), k, covered + take)

    for a in range(phi.domain.size):
        x = img[a]
        if (a,) not in L_pre.tuples(1):
            continue
        for k in range(len(x)):
            part = x[k:]
            take = min(len(part), len(s))
            if part[:take] == s[:take]:
                extend((a,), k, take)
    out.sort(key=lambda i: (i.preimage.symbols, i.offset))
    return out


@dataclass(frozen=True)
class RecognizabilityVerdict:
    level: int
    ell: int
    mode: str
    outcome: str
    windows_checked: int = 0
    witness: Optional[Word] = None
    first: Optional[Interpretation] = None
    second: Optional[Interpretation] = None
    audit: tuple = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return self.outcome == "holds"

    @property
    def fails(self) -> bool:
        return self.outcome == "fails"

    def replay(self, seq: DirectiveSequence) -> bool:
        """Re-check a failure witness against the raw definitions."""
        if not self.fails:
            return False
        phi = seq.term(self.level)
        w = self.witness
        if len(w) != 2 * self.ell:
            return False
        L_n = factor_language(seq, self.level, len(w))
        if w not in L_n:
            return False
        L_pre = factor_language(seq, self.level + 1, max(len(self.first.preimage), len(self.second.preimage)))
        for it in (self.first, self.second):
            if it.covered != w or not it.is_valid(phi) or it.preimage not in L_pre:
                return False
        return _conflict(self.first, self.second, phi, self.ell, self.mode)

    def as_dict(self) -> dict:
        d = {"level": self.level, "ell": self.ell, "mode": self.mode, "outcome": self.outcome, "windows_checked": self.windows_checked}
        if self.witness is not None:
            d["witness"] = {"word": str(self.witness), "interpretations": [self.first.as_dict(), self.second.as_dict()]}
        return d


def _conflict(a: Interpretation, b: Interpretation, phi: Substitution, ell: int, mode: str) -> bool:
    if (ell in a.cut_offsets) != (ell in b.cut_offsets):
        return True
    if mode == "strong_sync":
        return a.centre(phi, ell) != b.centre(phi, ell)
    return False


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")


def mosse_test(
    seq: DirectiveSequence,
    level: int,
    ell: int,
    mode: str = "strong_sync",
    *,
    horizon: int = DEFAULT_HORIZON,
    max_windows: int = 100_000,
) -> RecognizabilityVerdict:
    """Test every window of length ``2ℓ`` of ``L(σ^{(level)})`` for centre conflicts."""
    _check_mode(mode)
    if ell < 1:
        raise ValueError("ell must be positive")
    phi = seq.term(level)
    L_n = factor_language(seq, level, 2 * ell, horizon=horizon)
    L_pre = factor_language(seq, level + 1, _preimage_bound(2 * ell, phi), horizon=horizon)
    audit = (
        "windows enumerated from the exact factor language",
        "interpretations realized in the shift by minimality",
    )
    windows = L_n.sorted_words(2 * ell)
    if len(windows) > max_windows:
        return RecognizabilityVerdict(level, ell, mode, "inconclusive", 0, audit=audit + (f"{len(windows)} windows exceed cap {max_windows}",))
    for w in windows:
        its = interpretations(w, phi, L_pre)
        if not its:
            raise AssertionError(f"window {w} has no interpretation")
        for i, a in enumerate(its):
            for b in its[i + 1 :]:
                if _conflict(a, b, phi, ell, mode):
                    return RecognizabilityVerdict(level, ell, mode, "fails", len(windows), w, a, b, audit)
    return RecognizabilityVerdict(level, ell, mode, "holds", len(windows), audit=audit)


@dataclass(frozen=True)
class PersistentWitness:
    """Distinct ``p, p'`` with ``σ(p) = σ(p')`` and ``p^K, p'^K`` in the language.

    Centring windows of any radius inside ``σ(p)^K`` at a position where the
    two de-substitutions differ gives a failure for every ``ℓ`` whose window
    fits; ``verified_up_to`` is the largest such radius checked.
    """

    level: int
    p: Word
    q: Word
    power: int
    verified_up_to: int

    def as_dict(self) -> dict:
        return {"level": self.level, "p": str(self.p), "q": str(self.q), "power": self.power, "verified_up_to": self.verified_up_to}


def find_persistent_witness(
    seq: DirectiveSequence, level: int, cap: int, mode: str = "strong_sync", max_len: int = 4, horizon: int = DEFAULT_HORIZON
) -> Optional[PersistentWitness]:
    """Search preimage pairs of length ``<= max_len`` whose powers stay in the language."""
    _check_mode(mode)
    phi = seq.term(level)
    B = phi.domain
    best = None
    for length in range(1, max_len + 1):
        L_pre = factor_language(seq, level + 1, length, horizon=horizon)
        words = sorted(L_pre.tuples(length))
        by_image: dict = {}
        for u in words:
            by_image.setdefault(phi.apply_tuple(u), []).append(u)
        for image, group in sorted(by_image.items()):
            for i, p in enumerate(group):
                for q in group[i + 1 :]:
                    if mode == "mosse_cut" and _cut_set(phi, p) == _cut_set(phi, q):
                        continue
                    K = -(-(2 * cap + 2 * len(image)) // len(image)) + 1
                    need = K * length
                    L_big = factor_language(seq, level + 1, need, horizon=horizon)
                    if p * K in L_big.tuples(need) and q * K in L_big.tuples(need):
                        best = PersistentWitness(level, Word._trusted(B, p), Word._trusted(B, q), K, cap)
                        return best
    return best


def _cut_set(phi: Substitution, v: tuple) -> frozenset:
    return _cuts(phi, v, 0, len(phi.apply_tuple(v)))


@dataclass(frozen=True)
class RecognizabilityConstant:
    level: int
    mode: str
    cap: int
    constant: Optional[int]
    verdicts: tuple
    persistent: Optional[PersistentWitness] = None

    @property
    def outcome(self) -> str:
        if self.constant is not None:
            return "holds"
        if self.persistent is not None:
            return "fails"
        return "inconclusive"

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "mode": self.mode,
            "cap": self.cap,
            "constant": self.constant,
            "outcome": self.outcome,
            "verdicts": [v.as_dict() for v in self.verdicts],
            "persistent": None if self.persistent is None else self.persistent.as_dict(),
        }


def min_recognizability_constant(
    seq: DirectiveSequence, level: int = 0, cap: int = 10, mode: str = "strong_sync", *, horizon: int = DEFAULT_HORIZON
) -> RecognizabilityConstant:
    """Least ``ℓ <= cap`` for which :func:`mosse_test` holds.

    When the sweep finds none, a failure for every ``ℓ`` is only claimed if
    a :class:`PersistentWitness` is found; otherwise the outcome is
    inconclusive.
    """
    verdicts = []
    for ell in range(1, cap + 1):
        v = mosse_test(seq, level, ell, mode, horizon=horizon)
        verdicts.append(v)
        if v.holds:
            return RecognizabilityConstant(level, mode, cap, ell, tuple(verdicts))
    persistent = find_persistent_witness(seq, level, cap, mode, horizon=horizon)
    return RecognizabilityConstant(level, mode, cap, None, tuple(verdicts), persistent)


@dataclass(frozen=True)
class SequenceRecognizability:
    mode: str
    cap: int
    levels: tuple
    recognizable: str
    eventually_recognizable: str

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "cap": self.cap,
            "recognizable": self.recognizable,
            "eventually_recognizable": self.eventually_recognizable,
            "levels": [x.as_dict() for x in self.levels],
        }


def _combine(outcomes: list) -> str:
    if all(o == "holds" for o in outcomes):
        return "holds"
    if any(o == "fails" for o in outcomes):
        return "fails"
    return "inconclusive"


def is_recognizable_seq(
    seq: DirectiveSequence, cap: int = 10, mode: str = "strong_sync", *, horizon: int = DEFAULT_HORIZON
) -> SequenceRecognizability:
    """Per-level sweeps over the prefix and one period of the cycle.

    Levels beyond the first period repeat earlier terms and languages, so
    these verdicts cover every level.
    """
    results = tuple(min_recognizability_constant(seq, r, cap, mode, horizon=horizon) for r in range(seq.nrep))
    c = seq.prefix_length
    return SequenceRecognizability(
        mode=mode,
        cap=cap,
        levels=results,
        recognizable=_combine([r.outcome for r in results]),
        eventually_recognizable=_combine([r.outcome for r in results[c:]]),
    )

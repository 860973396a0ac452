"""Certificates: checked premises chained through implication rules.

Premises are gathered from the other modules, each with a status:

* ``verified``: an exact computation settles it;
* ``verified_up_to``: a bounded search found no counterexample up to a horizon;
* ``failed``: an exact computation refutes it (a witness is stored);
* ``unknown``: no decision.

Rules only fire when every input is ``verified`` or ``verified_up_to``; the
conclusion takes the weakest input status.  When several derivations reach
the same conclusion the strongest status wins.  Saturation never appears as
a premise.  It only shows up as the conclusion of a rule, and no rule
concludes that a sequence is not saturating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .codes import is_circular, is_code, is_pure
from .directive import (
    DEFAULT_HORIZON,
    AperiodicVerifiedUpTo,
    DirectiveSequence,
    classify_sequence,
    periodicity_probe,
)
from .recognizability import is_recognizable_seq
from .semigroup import CapExceeded

__all__ = [
    "Status",
    "Premise",
    "Inference",
    "Rule",
    "RULES",
    "Certificate",
    "certify",
    "infer",
    "RankBounds",
    "rank_bounds",
]

VERDICTS = ("recognizable", "eventually_recognizable", "S_saturating", "fully_recognizable_levels")


@dataclass(frozen=True, order=True)
class Status:
    kind: str
    horizon: Optional[int] = None

    @classmethod
    def verified(cls) -> "Status":
        return cls("verified")

    @classmethod
    def up_to(cls, horizon: int) -> "Status":
        return cls("verified_up_to", horizon)

    @classmethod
    def failed(cls) -> "Status":
        return cls("failed")

    @classmethod
    def unknown(cls) -> "Status":
        return cls("unknown")

    @property
    def positive(self) -> bool:
        return self.kind in ("verified", "verified_up_to")

    def rank(self) -> tuple:
        # strength among positive statuses
        if self.kind == "verified":
            return (2, 0)
        if self.kind == "verified_up_to":
            return (1, self.horizon or 0)
        return (0, 0)

    def __str__(self) -> str:
        return f"verified_up_to({self.horizon})" if self.kind == "verified_up_to" else self.kind

    def as_json(self):
        return {"status": self.kind, "horizon": self.horizon} if self.horizon is not None else {"status": self.kind}


def _weakest(statuses: list) -> Status:
    return min(statuses, key=Status.rank)


@dataclass(frozen=True)
class Premise:
    name: str
    status: Status
    detail: str = ""
    witness: Optional[dict] = None

    def as_dict(self) -> dict:
        d = {"name": self.name, **self.status.as_json(), "detail": self.detail}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass(frozen=True)
class Rule:
    id: str
    inputs: tuple
    conclusion: str
    statement: str


# Each rule is an implication between properties of a directive sequence.
RULES = (
    Rule("R1", ("circular",), "fully_recognizable_levels", "a homomorphism is fully recognizable iff it is circular"),
    Rule("R1", ("fully_recognizable_levels",), "recognizable", "full recognizability of every term implies recognizability"),
    Rule(
        "R2",
        ("primitive", "aperiodic", "finite_alphabet_rank"),
        "eventually_recognizable",
        "a primitive aperiodic sequence of finite alphabet rank is eventually recognizable",
    ),
    Rule("R3", ("primitive", "pure", "eventually_recognizable"), "recognizable", "a pure, eventually recognizable primitive sequence is recognizable"),
    Rule("R4", ("primitive", "recognizable"), "S_saturating", "a recognizable primitive sequence is S-saturating"),
    Rule("R5", ("primitive", "pure"), "S_saturating", "a pure primitive sequence is S-saturating"),
    Rule(
        "R6",
        ("primitive", "bounded", "eventually_recognizable", "recurrent", "encoding"),
        "recognizable",
        "a bounded primitive sequence that is eventually recognizable, recurrent and encoding is recognizable",
    ),
    Rule("R7", ("direct_recognizable",), "recognizable", "every term passes the window recognizability test"),
    Rule("R7", ("direct_eventually_recognizable",), "eventually_recognizable", "every cycle term passes the window recognizability test"),
    Rule("R0", ("recognizable",), "eventually_recognizable", "recognizable sequences are eventually recognizable"),
)

# Refutations transferred as is: a failed direct test or a non-circular term.
NEGATIVE_RULES = (
    Rule("R7", ("direct_recognizable",), "recognizable", "some term fails the window test with a persistent witness"),
    Rule("R7", ("direct_eventually_recognizable",), "eventually_recognizable", "some cycle term fails the window test with a persistent witness"),
    Rule("R1", ("circular",), "fully_recognizable_levels", "a term that is not circular is not fully recognizable"),
)


@dataclass(frozen=True)
class Inference:
    rule: str
    statement: str
    inputs: tuple
    conclusion: str
    status: Status

    def as_dict(self) -> dict:
        return {"rule": self.rule, "statement": self.statement, "inputs": list(self.inputs), "conclusion": self.conclusion, **self.status.as_json()}


def infer(premises: list) -> tuple[dict, list, list]:
    """Deterministic fixpoint of :data:`RULES` over ``premises``.

    Returns ``(facts, inferences, conflicts)``; ``facts`` maps every
    property name to its final status.
    """
    facts: dict = {p.name: p.status for p in premises}
    inferences: list = []
    conflicts: list = []
    for rule in NEGATIVE_RULES:
        if facts.get(rule.inputs[0], Status.unknown()).kind == "failed":
            facts[rule.conclusion] = Status.failed()
            inferences.append(Inference(rule.id, rule.statement, rule.inputs, rule.conclusion, Status.failed()))
    changed = True
    while changed:
        changed = False
        for rule in RULES:
            ins = [facts.get(x, Status.unknown()) for x in rule.inputs]
            if not all(s.positive for s in ins):
                continue
            status = _weakest(ins)
            cur = facts.get(rule.conclusion, Status.unknown())
            if cur.kind == "failed":
                conflicts.append(f"{rule.id} derives {rule.conclusion} which a premise refutes")
                continue
            if status.rank() > cur.rank():
                facts[rule.conclusion] = status
                inferences.append(Inference(rule.id, rule.statement, rule.inputs, rule.conclusion, status))
                changed = True
    return facts, inferences, conflicts


@dataclass(frozen=True)
class RankBounds:
    alphabet_rank: int
    general: int
    proper_case: Optional[int]
    saturation: Status
    rees_witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "alphabet_rank": self.alphabet_rank,
            "general": self.general,
            "proper_case": self.proper_case,
            "saturation": self.saturation.as_json(),
            "rees_witnesses": {str(p): v for p, v in sorted(self.rees_witnesses.items())},
        }


@dataclass
class Certificate:
    subject: str
    horizons: dict
    premises: list
    inferences: list
    verdicts: dict
    conflicts: list
    chains: dict
    rank: Optional[RankBounds] = None
    alphabet_rank: int = 0

    def premise(self, name: str) -> Premise:
        for p in self.premises:
            if p.name == name:
                return p
        raise KeyError(name)

    def replay(self) -> dict:
        """Re-derive the verdicts from the stored premises."""
        facts, _, _ = infer(self.premises)
        return {v: facts.get(v, Status.unknown()) for v in VERDICTS}

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "horizons": dict(sorted(self.horizons.items())),
            "premises": [p.as_dict() for p in self.premises],
            "inferences": [i.as_dict() for i in self.inferences],
            "verdicts": {k: self.verdicts[k].as_json() for k in VERDICTS},
            "chains": {k: v for k, v in sorted(self.chains.items())},
            "conflicts": list(self.conflicts),
            "rank_bounds": None if self.rank is None else self.rank.as_dict(),
        }

    def render(self) -> str:
        lines = [f"certificate for {self.subject}", "premises:"]
        for p in self.premises:
            lines.append(f"  {p.name:32s} {str(p.status):22s} {p.detail}")
        lines.append("inferences:")
        for i in self.inferences:
            lines.append(f"  {i.rule}: {' & '.join(i.inputs)} => {i.conclusion} [{i.status}]")
        lines.append("verdicts:")
        for k in VERDICTS:
            chain = ", ".join(self.chains.get(k, [])) or "-"
            lines.append(f"  {k:28s} {str(self.verdicts[k]):22s} via {chain}")
        if self.rank is not None:
            r = self.rank
            lines.append(f"rank bounds (alphabet rank {r.alphabet_rank}, saturation {r.saturation}):")
            lines.append(f"  general      {r.general}")
            lines.append(f"  proper case  {r.proper_case if r.proper_case is not None else '-'}")
            for p, order in sorted(r.rees_witnesses.items()):
                lines.append(f"  witness group order mod {p}: {order}")
        for c in self.conflicts:
            lines.append(f"CONFLICT: {c}")
        return "\n".join(lines)


def _status_of(outcome: str) -> Status:
    return {"holds": Status.verified(), "fails": Status.failed()}.get(outcome, Status.unknown())


def _level_codes(seq: DirectiveSequence) -> tuple[Status, Status, str, str]:
    """Purity and circularity of every term's image set."""
    pure, circ = Status.verified(), Status.verified()
    pure_note, circ_note = "all terms", "all terms"
    for r in range(seq.nrep):
        phi = seq.term(r)
        injective = len(set(phi._img)) == len(phi._img)
        ok, _ = is_code(phi.images)
        if not (injective and ok):
            pure, circ = Status.failed(), Status.failed()
            pure_note = circ_note = f"term {r} is not an encoding"
            break
        if pure.kind == "verified" and not is_pure(phi.images)[0]:
            pure, pure_note = Status.failed(), f"term {r}: syntactic semigroup not aperiodic"
        c, wit = is_circular(phi.images)
        if circ.kind == "verified" and not c:
            circ, circ_note = Status.failed(), f"term {r}: u={wit.u}, v={wit.v}"
    return pure, circ, pure_note, circ_note


def _gather(seq: DirectiveSequence, horizon: int, ell_cap: int, aperiodicity_cap: int, mode: str) -> tuple[list, object]:
    props = classify_sequence(seq, horizon)
    premises = []

    def add(name, status, detail="", witness=None):
        premises.append(Premise(name, status, detail, witness))

    if props.primitive:
        add("primitive", Status.verified(), "positivity witnesses " + str(dict(sorted(props.primitivity_witnesses.items()))))
    else:
        add("primitive", Status.unknown(), f"no positivity witness within {horizon}")
    add("bounded", Status.verified(), f"alphabet sizes {list(props.alphabet_sizes)}")
    add("finite_alphabet_rank", Status.verified(), f"alphabet rank {props.alphabet_rank}")
    add("recurrent", Status.verified() if props.recurrent else Status.failed(), "canonical prefix empty" if props.recurrent else "canonical prefix nonempty")
    if props.encoding:
        add("encoding", Status.verified(), "every term injective with a code as image set")
    else:
        add("encoding", Status.failed(), f"term {props.encoding_failure[0]}: {props.encoding_failure[1]}")
    pure, circ, pn, cn = _level_codes(seq)
    add("pure", pure, pn)
    add("circular", circ, cn)
    add("stable", Status.verified() if props.stable else Status.failed(), "" if props.stable else str(props.stability_failure))
    lp = props.left_proper_contraction
    add(
        "left_proper_contraction",
        Status.verified() if lp is not None else Status.unknown(),
        "" if lp is None else f"head {list(lp.head)}, step {list(lp.step)}",
    )
    if props.primitive:
        probe = periodicity_probe(seq, aperiodicity_cap)
        if isinstance(probe, AperiodicVerifiedUpTo):
            add("aperiodic", Status.up_to(aperiodicity_cap), f"complexity strictly increasing up to {aperiodicity_cap}")
        else:
            add("aperiodic", Status.failed(), f"periodic with period {probe.period}", {"period": probe.period, "at_length": probe.at_length})
        rec = is_recognizable_seq(seq, ell_cap, mode, horizon=horizon)
        wit = None
        for lv in rec.levels:
            if lv.outcome == "fails":
                failing = [v for v in lv.verdicts if v.fails]
                wit = {"level": lv.level, "persistent": lv.persistent.as_dict(), "window": failing[-1].as_dict()}
                break
        consts = {lv.level: lv.constant for lv in rec.levels}
        add("direct_recognizable", _status_of(rec.recognizable), f"mode {mode}, constants {consts}", wit)
        add("direct_eventually_recognizable", _status_of(rec.eventually_recognizable), f"cycle levels, mode {mode}")
    else:
        add("aperiodic", Status.unknown(), "requires a primitive sequence")
        add("direct_recognizable", Status.unknown(), "requires a primitive sequence")
        add("direct_eventually_recognizable", Status.unknown(), "requires a primitive sequence")
    return premises, props


def certify(
    seq: DirectiveSequence,
    *,
    horizon: int = DEFAULT_HORIZON,
    ell_cap: int = 10,
    aperiodicity_cap: int = 20,
    mode: str = "strong_sync",
    rees_primes: tuple = (2,),
    rees_cap: int = 200_000,
) -> Certificate:
    premises, props = _gather(seq, horizon, ell_cap, aperiodicity_cap, mode)
    facts, inferences, conflicts = infer(premises)
    verdicts = {v: facts.get(v, Status.unknown()) for v in VERDICTS}
    # every rule that derives a verdict at its final strength
    chains = {v: sorted({r.id for r in _all_derivations(facts, v)}) for v in VERDICTS}
    cert = Certificate(
        subject=seq.digest(),
        horizons={"factor_horizon": horizon, "ell_cap": ell_cap, "aperiodicity_cap": aperiodicity_cap, "mode": mode, "rees_cap": rees_cap},
        premises=premises,
        inferences=inferences,
        verdicts=verdicts,
        conflicts=conflicts,
        chains={k: v for k, v in chains.items() if v},
        alphabet_rank=props.alphabet_rank,
    )
    if verdicts["S_saturating"].positive:
        cert.rank = rank_bounds(cert, props.alphabet_rank, rees_primes=rees_primes, rees_cap=rees_cap)
    return cert


def _all_derivations(facts: dict, verdict: str) -> list:
    """Rules that conclude ``verdict`` from final facts at the verdict's final strength."""
    target = facts.get(verdict, Status.unknown())
    if target.kind == "failed":
        return [r for r in NEGATIVE_RULES if r.conclusion == verdict and facts.get(r.inputs[0]) == target]
    if not target.positive:
        return []
    out = []
    for rule in RULES:
        if rule.conclusion != verdict:
            continue
        ins = [facts.get(x, Status.unknown()) for x in rule.inputs]
        if all(s.positive for s in ins) and _weakest(ins).rank() == target.rank():
            out.append(rule)
    return out


def rank_bounds(cert: Certificate, alphabet_rank: Optional[int] = None, *, rees_primes: tuple = (), rees_cap: int = 200_000) -> RankBounds:
    """Bounds on the rank of the maximal subgroup for a saturating sequence.

    ``n² - n + 1`` in general and ``n`` when a left proper contraction is
    known.  For each prime in ``rees_primes`` whose Rees model fits under
    ``rees_cap``, the verified maximal subgroup order ``p^{n²-n+1}`` is
    attached as a finite witness.
    """
    sat = cert.verdicts["S_saturating"]
    if not sat.positive:
        raise ValueError("saturation not established")
    n = cert.alphabet_rank if alphabet_rank is None else alphabet_rank
    proper = n if cert.premise("left_proper_contraction").status.positive else None
    witnesses = {}
    if n >= 2:
        from .rees import rees_build

        for p in rees_primes:
            try:
                model = rees_build(n, p, cap=rees_cap)
            except CapExceeded:
                continue
            if model.verified:
                witnesses[p] = model.subgroup_order
    return RankBounds(n, n * n - n + 1, proper, sat, witnesses)

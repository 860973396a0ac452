"""Command line interface: ``sadickit <command> ...``.

Every command prints a plain-text report and, with ``--report PATH``, writes
a JSON report (``"schema": 1``) with the horizons used.  Reports are
deterministic: no timestamps and fixed iteration orders.

Exit status is 0 whenever the analysis completes, whatever the mathematical
verdict; 2 for usage errors, 3 for unreadable or malformed input, 4 when a
resource cap is hit.  ``rees --verify`` additionally exits 1 if the built
model fails its own size checks.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .certify import certify
from .codes import analyze_code
from .directive import (
    AperiodicVerifiedUpTo,
    HorizonExceeded,
    NotPrimitive,
    classify_sequence,
    factor_language,
    periodicity_probe,
    return_words,
)
from .formats import ParseError, read_sequence, read_sub
from .matrices import i2, invertibility_report
from .recognizability import MODES, is_recognizable_seq
from .rees import is_prime, rees_build, rees_induced_endo
from .semigroup import CapExceeded, green_classification, is_aperiodic, k_p, syntactic_semigroup, to_tsv
from .words import Alphabet

__all__ = ["AnalysisRequest", "run", "main", "build_parser"]

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3, 4


class UsageError(ValueError):
    pass


@dataclass
class AnalysisRequest:
    command: str
    inputs: list = field(default_factory=list)
    horizons: dict = field(default_factory=dict)
    primes: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    report: Optional[str] = None
    text: Optional[str] = None

    def validate(self) -> None:
        for k, v in self.horizons.items():
            if v is not None and v < 1:
                raise UsageError(f"{k} must be positive")
        for p in self.primes:
            if not is_prime(p):
                raise UsageError(f"{p} is not prime")


def _primes(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sadickit", description="S-adic sequences, codes and finite semigroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, horizon=True):
        p.add_argument("--report", help="write the JSON report here")
        p.add_argument("--text", help="also write the text rendering here")
        if horizon:
            p.add_argument("--horizon", type=int, default=64, help="search horizon for positivity and factor lengths")

    p = sub.add_parser("analyze", help="certificate for a sequence")
    p.add_argument("input")
    p.add_argument("--ell-cap", type=int, default=10)
    p.add_argument("--aperiodicity-cap", type=int, default=20)
    p.add_argument("--mode", choices=MODES, default="strong_sync")
    p.add_argument("--rees-primes", type=_primes, default=[2])
    p.add_argument("--rees-cap", type=int, default=200_000)
    common(p)

    p = sub.add_parser("language", help="exact factor language")
    p.add_argument("input")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--aperiodicity-cap", type=int, default=20)
    p.add_argument("--allow-nonprimitive", action="store_true")
    common(p)

    p = sub.add_parser("matrices", help="frequency matrices of an endomorphism")
    p.add_argument("input")
    p.add_argument("--primes", type=_primes, default=[2, 3, 5])
    common(p, horizon=False)

    p = sub.add_parser("code", help="code, circularity and purity tests")
    p.add_argument("words", nargs="*", help="codewords (or use --sub)")
    p.add_argument("--sub", help="take the images of a substitution file")
    common(p, horizon=False)

    p = sub.add_parser("semigroup", help="syntactic semigroup of a code, or the K_p fixture")
    p.add_argument("words", nargs="*")
    p.add_argument("--sub", help="take the images of a substitution file")
    p.add_argument("--kp", type=int, help="build K_p for this prime instead")
    p.add_argument("--tsv", help="write the Cayley table as TSV")
    common(p, horizon=False)

    p = sub.add_parser("rees", help="Rees matrix model of the free object")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--cap", type=int, default=200_000)
    p.add_argument("--verify", action="store_true", help="fail (exit 1) if the size checks do not pass")
    p.add_argument("--endo", help="substitution file: test its induced endomorphism")
    p.add_argument("--tsv", help="write the Cayley table as TSV")
    common(p, horizon=False)

    p = sub.add_parser("recognize", help="window recognizability sweep")
    p.add_argument("input")
    p.add_argument("--ell-cap", type=int, default=10)
    p.add_argument("--mode", choices=MODES, default="strong_sync")
    common(p)

    p = sub.add_parser("returns", help="return words to a factor")
    p.add_argument("input")
    p.add_argument("--word", required=True)
    p.add_argument("--level", type=int, default=0)
    common(p)
    return parser


def request_from_args(args: argparse.Namespace) -> AnalysisRequest:
    horizons = {}
    for key in ("horizon", "ell_cap", "aperiodicity_cap", "rees_cap", "max_len", "cap"):
        if getattr(args, key, None) is not None:
            horizons[key] = getattr(args, key)
    primes = list(getattr(args, "primes", None) or getattr(args, "rees_primes", None) or [])
    if getattr(args, "p", None) is not None:
        primes.append(args.p)
    inputs = [x for x in (getattr(args, "input", None), getattr(args, "sub", None), getattr(args, "endo", None)) if x]
    skip = {"command", "report", "text", "input", "sub", "endo", *horizons, "primes", "rees_primes"}
    options = {k: v for k, v in vars(args).items() if k not in skip}
    if getattr(args, "sub", None):
        options["sub"] = args.sub
    if getattr(args, "endo", None):
        options["endo"] = args.endo
    return AnalysisRequest(args.command, inputs, horizons, primes, options, args.report, args.text)


# -- commands ------------------------------------------------------------------


def _analyze(req: AnalysisRequest) -> tuple[dict, str]:
    seq = read_sequence(req.inputs[0])
    h = req.horizons
    cert = certify(
        seq,
        horizon=h["horizon"],
        ell_cap=h["ell_cap"],
        aperiodicity_cap=h["aperiodicity_cap"],
        mode=req.options["mode"],
        rees_primes=tuple(req.primes),
        rees_cap=h["rees_cap"],
    )
    props = classify_sequence(seq, h["horizon"])
    body = {"certificate": cert.as_dict(), "properties": props.as_dict()}
    return body, cert.render()


def _language(req: AnalysisRequest) -> tuple[dict, str]:
    seq = read_sequence(req.inputs[0])
    level, k = req.options["level"], req.horizons["max_len"]
    L = factor_language(seq, level, k, horizon=req.horizons["horizon"], allow_nonprimitive=req.options["allow_nonprimitive"])
    words = {str(j): [str(w) for w in L.sorted_words(j)] for j in range(1, k + 1)}
    complexity = [L.complexity(j) for j in range(1, k + 1)]
    body = {"level": level, "max_len": k, "inner_only": L.inner_only, "complexity": complexity, "words": words, "log": list(L.stabilization_log)}
    lines = [f"factor language at level {level}" + (" (inner only)" if L.inner_only else "")]
    for j in range(1, k + 1):
        lines.append(f"  p({j}) = {complexity[j - 1]}: " + " ".join(words[str(j)]))
    if not L.inner_only:
        probe = periodicity_probe(seq, req.horizons["aperiodicity_cap"], level)
        if isinstance(probe, AperiodicVerifiedUpTo):
            body["periodicity"] = {"aperiodic_verified_up_to": probe.cap}
            lines.append(f"aperiodic, verified up to length {probe.cap}")
        else:
            body["periodicity"] = {"periodic": probe.period}
            lines.append(f"periodic with period {probe.period}")
    return body, "\n".join(lines)


def _matrices(req: AnalysisRequest) -> tuple[dict, str]:
    phi = read_sub(req.inputs[0])
    b = i2(phi)
    rep = invertibility_report(phi, req.primes)
    body = {
        "n": b.n,
        "f1": b.f1.rows,
        "f2": b.f2.rows,
        "t2": b.t2.rows,
        "i2": b.i2.rows,
        "invertibility": rep.as_dict(),
    }
    lines = ["I2 =", b.render(), ""]
    lines.append(f"det F1 = {rep.det_f1}, det I2 = {rep.det_i2}, T2 permutation: {rep.t2_is_permutation}, unimodular: {rep.unimodular}")
    for p in req.primes:
        lines.append(f"mod {p}: I2 invertible {rep.i2_invertible_mod[p]}, F1 invertible {rep.f1_invertible_mod[p]}")
    return body, "\n".join(lines)


def _codewords(req: AnalysisRequest) -> list:
    if req.options.get("sub"):
        return list(read_sub(req.options["sub"]).images)
    words = req.options.get("words") or []
    if not words:
        raise UsageError("give codewords or --sub")
    A = Alphabet(sorted({ch for w in words for ch in w}))
    return [A.word(w) for w in words]


def _code(req: AnalysisRequest) -> tuple[dict, str]:
    report = analyze_code(_codewords(req))
    d = report.as_dict()
    lines = [f"{k}: {v}" for k, v in d.items()]
    return d, "\n".join(lines)


def _semigroup(req: AnalysisRequest) -> tuple[dict, str]:
    if req.options.get("kp") is not None:
        p = req.options["kp"]
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        S = k_p(p)
        name = f"K_{p}"
    else:
        S = syntactic_semigroup(code=_codewords(req))
        name = "syntactic semigroup"
    g = green_classification(S)
    body = {
        "name": name,
        "size": len(S),
        "aperiodic": is_aperiodic(S),
        "idempotents": len(S.idempotents()),
        "classes": {"R": len(g.R), "L": len(g.L), "J": len(g.J), "H": len(g.H)},
        "j_classes": [{"size": len(j.elements), "regular": j.regular, "idempotents": len(j.idempotents)} for j in g.j_classes],
    }
    if req.options.get("tsv"):
        Path(req.options["tsv"]).write_text(to_tsv(S))
    lines = [f"{name}: {len(S)} elements, aperiodic: {body['aperiodic']}"]
    lines.append("classes: " + ", ".join(f"{k}={v}" for k, v in body["classes"].items()))
    for j in body["j_classes"]:
        lines.append(f"  J-class of size {j['size']}, regular: {j['regular']}, idempotents: {j['idempotents']}")
    return body, "\n".join(lines)


def _rees(req: AnalysisRequest) -> tuple[dict, str]:
    n, p = req.options["n"], req.primes[-1]
    model = rees_build(n, p, cap=req.horizons["cap"])
    body = {"model": model.as_dict()}
    lines = [
        f"Rees model n={n}, p={p}: |T| = {model.size} (expected {model.expected_size}), size check {'passed' if model.size_ok else 'FAILED'}",
        f"maximal subgroup order {model.subgroup_order}, subgroup check {'passed' if model.subgroups_ok else 'FAILED'}",
    ]
    if req.options.get("endo"):
        rep = rees_induced_endo(read_sub(req.options["endo"]), model)
        body["endomorphism"] = rep.as_dict()
        lines.append(
            f"induced endomorphism: automorphism {rep.is_automorphism}, I2 invertible mod {p}: {rep.matrix_invertible_mod_p}, agree: {rep.agree}"
        )
    if req.options.get("tsv"):
        Path(req.options["tsv"]).write_text(to_tsv(model.T) if len(model.T) <= 5000 else "")
    return body, "\n".join(lines)


def _recognize(req: AnalysisRequest) -> tuple[dict, str]:
    seq = read_sequence(req.inputs[0])
    res = is_recognizable_seq(seq, req.horizons["ell_cap"], req.options["mode"], horizon=req.horizons["horizon"])
    lines = [f"recognizable: {res.recognizable}, eventually recognizable: {res.eventually_recognizable} (mode {res.mode}, cap {res.cap})"]
    for lv in res.levels:
        lines.append(f"  level {lv.level}: {lv.outcome}" + (f", constant {lv.constant}" if lv.constant else ""))
        if lv.persistent is not None:
            lines.append(f"    persistent witness p={lv.persistent.p}, q={lv.persistent.q}")
    return res.as_dict(), "\n".join(lines)


def _returns(req: AnalysisRequest) -> tuple[dict, str]:
    seq = read_sequence(req.inputs[0])
    level = req.options["level"]
    u = seq.alphabet(level).word(req.options["word"])
    rs = sorted(return_words(seq, u, req.horizons["horizon"], level))
    body = {"level": level, "word": str(u), "returns": [str(r) for r in rs]}
    return body, f"return words to {u}: " + " ".join(str(r) for r in rs)


COMMANDS = {
    "analyze": _analyze,
    "language": _language,
    "matrices": _matrices,
    "code": _code,
    "semigroup": _semigroup,
    "rees": _rees,
    "recognize": _recognize,
    "returns": _returns,
}


def run(req: AnalysisRequest, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    try:
        req.validate()
        body, text = COMMANDS[req.command](req)
    except UsageError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except (ParseError, FileNotFoundError, NotPrimitive) as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT
    except (CapExceeded, HorizonExceeded) as e:
        print(f"error: resource cap: {e}", file=err)
        return EXIT_RESOURCE
    report = {"schema": SCHEMA, "command": req.command, "inputs": req.inputs, "horizons": dict(sorted(req.horizons.items())), "primes": req.primes, "result": body}
    if req.report:
        Path(req.report).write_text(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    if req.text:
        Path(req.text).write_text(text + "\n")
    print(text, file=out)
    if req.command == "rees" and req.options.get("verify"):
        model = body["model"]
        if not (model["size_ok"] and model["subgroups_ok"]):
            return 1
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(request_from_args(args))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Plain-text substitution (``.sub``) and sequence (``.seq``) files.

A substitution file::

    # Thue-Morse
    alphabet: a b
    a -> ab
    b -> ba

An optional ``codomain:`` line makes it a map between different alphabets.
Images are split into characters when every letter name is one character
long, otherwise on whitespace.

A sequence file lists substitution files relative to itself::

    prefix: s0.sub s1.sub
    cycle: t.sub

An optional ``levels:`` line declares the alphabets of the representative
levels, separated by ``;``, and is checked against the terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .directive import DirectiveSequence
from .substitution import Substitution
from .words import Alphabet

__all__ = ["ParseError", "SubSpec", "parse_sub", "read_sub", "read_seq", "read_sequence", "dump_sub"]


class ParseError(ValueError):
    def __init__(self, where: str, line: int, message: str):
        self.where, self.line = where, line
        super().__init__(f"{where}:{line}: {message}")


@dataclass(frozen=True)
class SubSpec:
    domain: tuple
    codomain: tuple
    images: tuple  # tuple of tuples of codomain letter names


def _split_image(text: str, names: tuple) -> list:
    if all(len(x) == 1 for x in names) and " " not in text.strip():
        return list(text.strip())
    return text.split()


def parse_sub(text: str, where: str = "<string>") -> SubSpec:
    alphabet: Optional[tuple] = None
    codomain: Optional[tuple] = None
    rules: dict = {}
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = tuple(line[len("alphabet:") :].split())
        elif line.startswith("codomain:"):
            codomain = tuple(line[len("codomain:") :].split())
        elif "->" in line:
            lhs, rhs = (x.strip() for x in line.split("->", 1))
            if not lhs or not rhs:
                raise ParseError(where, lineno, "rule needs a letter and a nonempty image")
            if lhs in rules:
                raise ParseError(where, lineno, f"second rule for {lhs!r}")
            rules[lhs] = (lineno, rhs)
            pending.append(lhs)
        else:
            raise ParseError(where, lineno, f"cannot parse {raw.strip()!r}")
    if alphabet is None:
        if not rules:
            raise ParseError(where, 1, "no alphabet and no rules")
        alphabet = tuple(pending)
    if len(set(alphabet)) != len(alphabet):
        raise ParseError(where, 1, "repeated letter in alphabet")
    codomain = alphabet if codomain is None else codomain
    images = []
    for a in alphabet:
        if a not in rules:
            raise ParseError(where, 1, f"no rule for letter {a!r}")
        lineno, rhs = rules[a]
        img = _split_image(rhs, codomain)
        bad = [x for x in img if x not in codomain]
        if bad:
            raise ParseError(where, lineno, f"letter {bad[0]!r} not in codomain")
        images.append(tuple(img))
    extra = [a for a in rules if a not in alphabet]
    if extra:
        raise ParseError(where, rules[extra[0]][0], f"rule for {extra[0]!r} outside the alphabet")
    return SubSpec(alphabet, codomain, tuple(images))


def _build(parsed: SubSpec, domain: Alphabet, codomain: Alphabet) -> Substitution:
    return Substitution(domain, codomain, [codomain.word(list(img)) for img in parsed.images])


def read_sub(path: Union[str, Path]) -> Substitution:
    path = Path(path)
    parsed = parse_sub(path.read_text(), str(path))
    if parsed.domain == parsed.codomain:
        A = Alphabet(parsed.domain)
        return _build(parsed, A, A)
    return _build(parsed, Alphabet(parsed.domain), Alphabet(parsed.codomain))


def read_seq(path: Union[str, Path]) -> DirectiveSequence:
    path = Path(path)
    prefix_files: list = []
    cycle_files: list = []
    levels = None
    level_line = 0
    text = path.read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        if not _:
            raise ParseError(str(path), lineno, f"cannot parse {raw.strip()!r}")
        key = key.strip()
        if key == "prefix":
            prefix_files = [(lineno, x) for x in rest.split()]
        elif key == "cycle":
            cycle_files = [(lineno, x) for x in rest.split()]
        elif key == "levels":
            levels = [tuple(part.split()) for part in rest.split(";")]
            level_line = lineno
        else:
            raise ParseError(str(path), lineno, f"unknown key {key!r}")
    if not cycle_files:
        raise ParseError(str(path), 1, "a sequence needs a nonempty cycle")
    parsed_terms = []
    for lineno, name in prefix_files + cycle_files:
        sub_path = path.parent / name
        if not sub_path.exists():
            raise ParseError(str(path), lineno, f"missing file {name}")
        parsed_terms.append(parse_sub(sub_path.read_text(), str(sub_path)))
    c = len(prefix_files)
    names = [s.codomain for s in parsed_terms]
    for i, s in enumerate(parsed_terms):
        nxt = i + 1 if i + 1 < len(parsed_terms) else c
        if s.domain != names[nxt]:
            lineno = (prefix_files + cycle_files)[i][0]
            raise ParseError(str(path), lineno, f"term {i} domain {' '.join(s.domain)} does not match level {nxt} alphabet {' '.join(names[nxt])}")
    if levels is not None and [tuple(x) for x in levels] != names:
        raise ParseError(str(path), level_line, "declared levels do not match the terms")
    alphabets = [Alphabet(n) for n in names]
    terms = []
    for i, s in enumerate(parsed_terms):
        nxt = i + 1 if i + 1 < len(parsed_terms) else c
        terms.append(_build(s, alphabets[nxt], alphabets[i]))
    return DirectiveSequence(terms[c:], terms[:c])


def read_sequence(path: Union[str, Path]) -> DirectiveSequence:
    """A ``.seq`` file, or a ``.sub`` endomorphism read as a constant sequence."""
    path = Path(path)
    if path.suffix == ".sub":
        phi = read_sub(path)
        if not phi.is_endomorphism:
            raise ParseError(str(path), 1, "a constant sequence needs an endomorphism")
        return DirectiveSequence.constant(phi)
    return read_seq(path)


def dump_sub(phi: Substitution) -> str:
    lines = ["alphabet: " + " ".join(phi.domain.letters)]
    if not phi.is_endomorphism:
        lines.append("codomain: " + " ".join(phi.codomain.letters))
    lines.extend(f"{a} -> {w}" for a, w in phi.rules())
    return "\n".join(lines) + "\n"

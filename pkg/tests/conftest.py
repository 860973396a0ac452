from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from sadickit import DirectiveSequence, Substitution, family_substitution
from sadickit.formats import read_sequence, read_sub

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def tau() -> Substitution:
    return Substitution.from_strings({"a": "ab", "b": "ba"})


def fibonacci() -> Substitution:
    return Substitution.from_strings({"a": "ab", "b": "a"})


def sigma_acb() -> Substitution:
    return Substitution.from_strings({"a": "ac", "b": "bcb", "c": "ba"})


def periodic_ab() -> Substitution:
    return Substitution.from_strings({"a": "ab", "b": "ab"})


def corpus_substitutions() -> dict:
    """Named endomorphisms used across the suites."""
    return {
        "tau": tau(),
        "fibonacci": fibonacci(),
        "sigma_acb": sigma_acb(),
        "sigma2": family_substitution("sigma", 2),
        "sigma3": family_substitution("sigma", 3),
        "sigma_prime2": family_substitution("sigma_prime", 2),
        "sigma_prime3": family_substitution("sigma_prime", 3),
    }


SEQUENCE_FILES = [
    "thue_morse.seq",
    "fibonacci.seq",
    "periodic_ab.seq",
    "sigma_prime2.seq",
    "alternating.seq",
    "relabelled_tm.seq",
    "sigma_acb.sub",
    "sigma3.sub",
]


def corpus_sequences() -> dict:
    """Every primitive sequence of the fixture corpus, plus constant ``σ_2``."""
    out = {name: read_sequence(fixture_path(name)) for name in SEQUENCE_FILES}
    out["sigma2"] = DirectiveSequence.constant(family_substitution("sigma", 2))
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_sequences()


@pytest.fixture
def tm_seq():
    return read_sequence(fixture_path("thue_morse.seq"))


@pytest.fixture
def fib_seq():
    return read_sequence(fixture_path("fibonacci.seq"))


@pytest.fixture
def periodic_seq():
    return read_sequence(fixture_path("periodic_ab.seq"))


@pytest.fixture
def load_sub():
    return lambda name: read_sub(fixture_path(name))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, title, elapsed = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s)")

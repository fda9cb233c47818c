import pathlib
from fractions import Fraction

import pytest
from hypothesis import settings

from fuzzyhomlie import FieldSpec, FuzzyFlag, Subspace, standard_example, span

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROOT = pathlib.Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def example_flag(field, second=((1, 0, 0), (0, 1, 0))):
    return FuzzyFlag(field, 3, (
        (Subspace.zero(field, 3), Fraction(4, 5)),
        (span(field, second, 3), Fraction(2, 5)),
    ), Fraction(1, 10))


@pytest.fixture
def Q():
    return FieldSpec()


@pytest.fixture
def example(Q):
    return standard_example(Q)


@pytest.fixture
def mu_example(Q):
    return example_flag(Q)


@pytest.fixture
def mu_e3(Q):
    return example_flag(Q, [(0, 0, 1)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")

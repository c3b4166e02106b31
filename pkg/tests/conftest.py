from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path

import pytest

from latinhc.core import AnySetArray, Hypercuboid
from latinhc.io import load
from latinhc.verify import enumerate_latin_squares


@pytest.fixture(scope="session")
def squares4() -> list[tuple[int, ...]]:
    return [sq.cells for sq in enumerate_latin_squares(4)]


@pytest.fixture(scope="session")
def squares5() -> list[tuple[int, ...]]:
    return [sq.cells for sq in enumerate_latin_squares(5)]


def layers_by_enumeration(A: AnySetArray, squares: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Every Latin square lying cellwise inside ``A``."""
    return [sq for sq in squares if all(s in cell for s, cell in zip(sq, A.cells))]


def layerable_by_enumeration(A, k: int, squares) -> bool:
    """Some ``k`` cellwise-disjoint layers of ``A`` (which then partition it)."""
    inside = layers_by_enumeration(A, squares)
    for combo in combinations(inside, k):
        if all(len(set(col)) == k for col in zip(*combo)):
            return True
    return False


FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def witness_5x5x2() -> Hypercuboid:
    H, _ = load(FIXTURES / "noncompletable_5x5x2.json")
    return H


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])

import contextlib
import time

import pytest

from ksgadget import Graph


def complete(n: int, dim=None) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)), dim=dim)


def cycle(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def wheel(rim: int) -> Graph:
    """Hub 0 joined to every vertex of a rim cycle 1..rim."""
    edges = {(0, i) for i in range(1, rim + 1)}
    edges |= {(i, i % rim + 1) for i in range(1, rim + 1)}
    return Graph(rim + 1, frozenset(edges))


@pytest.fixture
def criterion(capsys):
    """Context manager that times a block and prints one PASS/FAIL line for it."""

    @contextlib.contextmanager
    def run(number: int, title: str, budget_s: float):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - t0
            assert elapsed < budget_s, f"took {elapsed:.2f}s, budget {budget_s}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            with capsys.disabled():
                print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {title} "
                      f"({elapsed:.2f}s / {budget_s:g}s)")

    return run

import json
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hatdigraph import Digraph  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def aut_orders() -> dict:
    return json.loads((FIXTURES / "aut_orders.json").read_text())["orders"]


def random_strongly_connected(n: int, extra: int, seed: int) -> Digraph:
    """A Hamiltonian cycle through a shuffled vertex order plus random extra arcs."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    while len(arcs) < min(n + extra, n * n):
        arcs.add((rng.randrange(n), rng.randrange(n)))
    return Digraph(n, frozenset(arcs))


ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: int(k.split()[1])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")

import random

import pytest

from lpalie import FieldSpec, Q
from lpalie.graph import Graph
from lpalie.zoo import fixtures

F2 = FieldSpec(2)
F3 = FieldSpec(3)


@pytest.fixture
def graphs():
    return fixtures()


def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 12) -> Graph:
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    vs = [f"v{i}" for i in range(n)]
    es = [(f"e{k}", rng.choice(vs), rng.choice(vs)) for k in range(m)]
    return Graph.build(vs, es)


__all__ = ["F2", "F3", "Q", "random_graph"]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

"""Named small graphs and exhaustive enumeration of small multigraphs."""

from __future__ import annotations

from itertools import combinations_with_replacement, permutations
from typing import Iterator

from .graph import Graph, weak_components


def point() -> Graph:
    return Graph.build(["u"])


def loop() -> Graph:
    return Graph.build(["u"], [("l", "u", "u")])


def a2() -> Graph:
    return Graph.build(["v", "w"], [("a", "v", "w")])


def rose(n: int) -> Graph:
    """One vertex with ``n`` loops; ``rose(2)`` names its loops g, h."""
    names = ["g", "h"] if n == 2 else [f"l{i}" for i in range(1, n + 1)]
    return Graph.build(["u"], [(x, "u", "u") for x in names])


def toeplitz() -> Graph:
    """A loop at v with one exit to the sink w."""
    return Graph.build(["v", "w"], [("c", "v", "v"), ("e", "v", "w")])


def balloon() -> Graph:
    """A loop at v with an edge into w, which carries two loops."""
    return Graph.build(["v", "w"], [("c", "v", "v"), ("e", "v", "w"),
                                    ("f1", "w", "w"), ("f2", "w", "w")])


def fixtures() -> dict[str, Graph]:
    return {"G_pt": point(), "G_loop": loop(), "G_A2": a2(), "G_R2": rose(2),
            "G_R3": rose(3), "G_toe": toeplitz(), "G_ball": balloon()}


def _canonical(n: int, edges: tuple[tuple[int, int], ...]) -> tuple:
    return min(tuple(sorted((perm[s], perm[r]) for s, r in edges))
               for perm in permutations(range(n)))


def small_graphs(max_vertices: int = 3, max_edges: int = 4,
                 connected: bool = False) -> Iterator[Graph]:
    """Every multigraph within the bounds, once per isomorphism class.

    Vertices are ``x0, x1, ...`` and edges ``a0, a1, ...`` in canonical order.
    """
    for n in range(1, max_vertices + 1):
        pairs = [(i, j) for i in range(n) for j in range(n)]
        for m in range(max_edges + 1):
            seen = set()
            for edges in combinations_with_replacement(pairs, m):
                key = _canonical(n, edges)
                if key in seen:
                    continue
                seen.add(key)
                g = Graph.build([f"x{i}" for i in range(n)],
                                [(f"a{k}", f"x{s}", f"x{r}") for k, (s, r) in enumerate(key)])
                if connected and len(weak_components(g)) != 1:
                    continue
                yield g

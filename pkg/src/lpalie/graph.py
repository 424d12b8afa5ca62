"""Finite directed multigraphs and the graph-theoretic predicates used by the
simplicity criteria.

Vertices and edges are identified by their names.  Declaration order is kept
everywhere and is what makes every output of this package reproducible.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

VertexSet = frozenset  # frozenset[str] of vertex names

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    range: str

    @property
    def is_loop(self) -> bool:
        return self.source == self.range


@dataclass(frozen=True)
class Graph:
    """A finite directed multigraph ``(V, E, s, r)``."""

    vertices: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        seen: set[str] = set()
        for name in self.vertices + tuple(e.name for e in self.edges):
            if not name or not _NAME.match(name):
                raise GraphError(f"invalid name {name!r}")
            if name in seen:
                raise GraphError(f"duplicate name {name!r}")
            seen.add(name)
        vs = set(self.vertices)
        for e in self.edges:
            for end in (e.source, e.range):
                if end not in vs:
                    raise GraphError(f"edge {e.name!r} references undeclared vertex {end!r}")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]] = ()) -> Graph:
        """Construct from vertex names and ``(name, source, range)`` triples."""
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges))

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e.name: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.range].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def is_sink(self, v: str) -> bool:
        return not self.out_edges[v]

    def is_source(self, v: str) -> bool:
        return not self.in_edges[v]

    @property
    def sinks(self) -> list[str]:
        return [v for v in self.vertices if self.is_sink(v)]

    def ordered(self, vs: Iterable[str]) -> tuple[str, ...]:
        """Vertex names sorted by declaration order."""
        return tuple(sorted(vs, key=self.vertex_index.__getitem__))

    def check_vertices(self, vs: Iterable[str]) -> None:
        unknown = [v for v in vs if v not in self.vertex_index]
        if unknown:
            raise GraphError(f"unknown vertex {unknown[0]!r}")

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e.name} {e.source} {e.range}" for e in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    Lines are ``vertex NAME``, ``edge NAME SRC DST`` or ``# comment``;
    names must be declared before use.
    """
    vertices: list[str] = []
    edges: list[Edge] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind == "vertex" and len(args) == 1:
            new = args[0]
        elif kind == "edge" and len(args) == 3:
            new = args[0]
        else:
            raise GraphParseError(lineno, f"malformed line {raw.strip()!r}")
        for tok in args:
            if not _NAME.match(tok):
                raise GraphParseError(lineno, f"invalid name {tok!r}")
        if new in names:
            raise GraphParseError(lineno, f"duplicate name {new!r}")
        if kind == "vertex":
            vertices.append(new)
        else:
            for end in args[1:]:
                if end not in vertices:
                    raise GraphParseError(lineno, f"undeclared vertex {end!r}")
            edges.append(Edge(*args))
        names.add(new)
    return Graph(tuple(vertices), tuple(edges))


def weak_components(g: Graph) -> list[tuple[str, ...]]:
    """Weakly connected components, each in declaration order, sorted by least member."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        a, b = find(e.source), find(e.range)
        if a != b:
            parent[max(a, b, key=g.vertex_index.get)] = min(a, b, key=g.vertex_index.get)
    groups: dict[str, list[str]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(vs) for vs in groups.values()), key=lambda c: g.vertex_index[c[0]])


def is_hereditary(g: Graph, s: Iterable[str]) -> bool:
    s = set(s)
    return all(e.range in s for e in g.edges if e.source in s)


def is_saturated(g: Graph, s: Iterable[str]) -> bool:
    s = set(s)
    for v in g.vertices:
        out = g.out_edges[v]
        if out and v not in s and all(e.range in s for e in out):
            return False
    return True


def hereditary_saturated_closure(g: Graph, s: Iterable[str]) -> VertexSet:
    """Smallest hereditary and saturated vertex set containing ``s``.

    Hereditary means closed under edge ranges: ``x in W`` and ``x -> y``
    force ``y in W``.
    """
    result = set(s)
    g.check_vertices(result)
    queue = deque(result)
    while True:
        while queue:
            x = queue.popleft()
            for e in g.out_edges[x]:
                if e.range not in result:
                    result.add(e.range)
                    queue.append(e.range)
        for v in g.vertices:
            out = g.out_edges[v]
            if v not in result and out and all(e.range in result for e in out):
                result.add(v)
                queue.append(v)
        if not queue:
            return frozenset(result)


def minimal_hereditary_saturated(g: Graph) -> list[VertexSet]:
    """Inclusion-minimal nonempty hereditary saturated subsets.

    Every nonempty hereditary saturated set contains the closure of each of its
    members, so the minimal ones are among the singleton closures.
    """
    closures: list[VertexSet] = []
    for v in g.vertices:
        c = hereditary_saturated_closure(g, {v})
        if c not in closures:
            closures.append(c)
    return [c for c in closures if not any(d < c for d in closures)]


def exit_free_cycle(g: Graph) -> Optional[list[str]]:
    """Edge names of a cycle without an exit, or None.

    A cycle has no exit exactly when each of its vertices has out-degree one,
    so it suffices to look for a cycle in that functional subgraph.
    """
    succ = {v: g.out_edges[v][0] for v in g.vertices if len(g.out_edges[v]) == 1}
    state: dict[str, int] = {}
    for start in g.vertices:
        if start not in succ or start in state:
            continue
        trail: list[str] = []
        x = start
        while x in succ and x not in state:
            state[x] = 1
            trail.append(x)
            x = succ[x].range
        if x in succ and state.get(x) == 1:
            cycle_vertices = trail[trail.index(x):]
            first = min(cycle_vertices, key=g.vertex_index.__getitem__)
            i = cycle_vertices.index(first)
            rotated = cycle_vertices[i:] + cycle_vertices[:i]
            return [succ[v].name for v in rotated]
        for y in trail:
            state[y] = 2
    return None


def every_cycle_has_exit(g: Graph) -> tuple[bool, Optional[list[str]]]:
    cycle = exit_free_cycle(g)
    return cycle is None, cycle


def is_cycle_without_exit(g: Graph, edge_names: list[str]) -> bool:
    """Direct check that ``edge_names`` is a cycle none of whose vertices has another out-edge."""
    if not edge_names or any(n not in g.edge for n in edge_names):
        return False
    es = [g.edge[n] for n in edge_names]
    if any(a.range != b.source for a, b in zip(es, es[1:] + es[:1])):
        return False
    sources = [e.source for e in es]
    if len(set(sources)) != len(sources):
        return False
    return all(g.out_edges[v] == (e,) for v, e in zip(sources, es))


@dataclass(frozen=True)
class Obstruction:
    """Why a graph's Leavitt path algebra fails to be simple."""

    kind: str  # "cycle" or "hereditary-saturated"
    cycle: tuple[str, ...] = ()
    subset: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        if self.kind == "cycle":
            return {"kind": "cycle", "edges": list(self.cycle)}
        return {"kind": self.kind, "set": list(self.subset)}

    @classmethod
    def from_dict(cls, d: dict) -> Obstruction:
        if d["kind"] == "cycle":
            return cls("cycle", cycle=tuple(d["edges"]))
        return cls(d["kind"], subset=tuple(d["set"]))


def is_lpa_simple(g: Graph) -> tuple[bool, Optional[Obstruction]]:
    """Condition (L) plus the absence of proper nonempty hereditary saturated subsets."""
    cycle = exit_free_cycle(g)
    if cycle is not None:
        return False, Obstruction("cycle", cycle=tuple(cycle))
    full = frozenset(g.vertices)
    for v in g.vertices:
        c = hereditary_saturated_closure(g, {v})
        if c != full:
            # shrink to a minimal one for a tighter witness
            for m in minimal_hereditary_saturated(g):
                if m <= c:
                    c = m
                    break
            return False, Obstruction("hereditary-saturated", subset=g.ordered(c))
    return True, None


def check_obstruction(g: Graph, ob: Obstruction) -> bool:
    """Re-verify an obstruction against the definitions."""
    if ob.kind == "cycle":
        return is_cycle_without_exit(g, list(ob.cycle))
    if ob.kind == "hereditary-saturated":
        s = set(ob.subset)
        return (bool(s) and s <= set(g.vertices) and s != set(g.vertices)
                and is_hereditary(g, s) and is_saturated(g, s))
    return False


def is_points_and_loops(g: Graph) -> bool:
    """True when every component is an isolated vertex or a single loop."""
    for comp in weak_components(g):
        if len(comp) != 1:
            return False
        (v,) = comp
        if len(g.out_edges[v]) > 1:
            return False
    return True


ROMAN = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class BalloonWitness:
    vertex: str
    loop: Optional[str]
    edges_to_w: tuple[str, ...]
    conditions: dict = field(hash=False, compare=True)

    @property
    def overall(self) -> bool:
        return all(self.conditions[k] for k in ROMAN)

    def to_dict(self) -> dict:
        return {"v": self.vertex, "loop": self.loop, "edges_to_W": list(self.edges_to_w),
                "conditions": {k: self.conditions[k] for k in ROMAN}}

    @classmethod
    def from_dict(cls, d: dict) -> BalloonWitness:
        return cls(d["v"], d["loop"], tuple(d["edges_to_W"]),
                   {k: bool(d["conditions"][k]) for k in ROMAN})


def is_balloon(g: Graph, v: str, w: Iterable[str]) -> BalloonWitness:
    """Evaluate the five balloon conditions for ``v`` over ``w`` on edge identities."""
    w = set(w)
    if v not in g.vertex_index:
        raise GraphError(f"unknown vertex {v!r}")
    g.check_vertices(w)
    out = g.out_edges[v]
    loops = [e for e in out if e.is_loop]
    loop = loops[0] if loops else None
    to_w = tuple(e for e in out if e.range in w)
    allowed = set(to_w) | ({loop} if loop else set())
    conditions = {
        "i": v not in w,
        "ii": loop is not None,
        "iii": bool(to_w),
        "iv": loop is not None and set(out) == allowed,
        "v": loop is not None and g.in_edges[v] == (loop,),
    }
    return BalloonWitness(v, loop.name if loop else None, tuple(e.name for e in to_w), conditions)


def is_fiber(g: Graph, e: str) -> bool:
    if e not in g.edge:
        raise GraphError(f"unknown edge {e!r}")
    edge = g.edge[e]
    return (g.is_source(edge.source) and g.is_sink(edge.range)
            and g.in_edges[edge.range] == (edge,))


def induced_subgraph(g: Graph, w: Iterable[str]) -> Graph:
    """Subgraph on ``w`` keeping exactly the edges with both ends in ``w``."""
    w = set(w)
    g.check_vertices(w)
    return Graph(tuple(v for v in g.vertices if v in w),
                 tuple(e for e in g.edges if e.source in w and e.range in w))

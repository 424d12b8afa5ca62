"""Normal forms in the Leavitt path algebra L(G).

Every element is a finite combination of monomials ``p q*`` with ``r(p) = r(q)``.
The relation ``v = sum_{s(e)=v} e e*`` is oriented towards one designated
*special* out-edge per non-sink vertex: ``f f* -> s(f) - sum_{e != f} e e*``.
Monomials whose paths do not both end in the same special edge form a basis,
so two elements are equal iff their normal forms agree.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .fields import FieldMismatchError, FieldSpec, Q, Scalar, span_basis
from .graph import Graph

__all__ = [
    "Path", "Monomial", "LeavittAlgebra", "Element", "WorkLimitExceeded",
    "multiply", "star", "commutator", "s0_s1_split", "degree_components",
    "vertex_part", "brute_force_commutator_vertex_span", "bounded_commutators_vanish",
    "DEFAULT_WORK_LIMIT",
]

DEFAULT_WORK_LIMIT = 20000


class WorkLimitExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"work limit of {limit} commutators exceeded")
        self.limit = limit


class Path(NamedTuple):
    start: str
    edges: tuple[str, ...] = ()


class Monomial(NamedTuple):
    """The basis word ``p q*``."""

    p: Path
    q: Path

    @property
    def degree(self) -> int:
        return len(self.p.edges) - len(self.q.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.p.edges and not self.q.edges


def _comparable(a: Path, b: Path) -> bool:
    if a.start != b.start:
        return False
    n = min(len(a.edges), len(b.edges))
    return a.edges[:n] == b.edges[:n]


class LeavittAlgebra:
    """The algebra L(G) over ``field`` with a fixed choice of special edges.

    ``special`` overrides the default choice (first declared out-edge) for
    some non-sink vertices.
    """

    def __init__(self, graph: Graph, field: FieldSpec = Q,
                 special: Optional[Mapping[str, str]] = None):
        self.graph = graph
        self.field = field
        chosen = {v: g[0].name for v, g in graph.out_edges.items() if g}
        for v, e in (special or {}).items():
            if v not in chosen:
                raise ValueError(f"{v!r} is not a non-sink vertex")
            if e not in graph.edge or graph.edge[e].source != v:
                raise ValueError(f"{e!r} is not an out-edge of {v!r}")
            chosen[v] = e
        self.special: dict[str, str] = chosen
        self._range = {e.name: e.range for e in graph.edges}
        self._source = {e.name: e.source for e in graph.edges}
        self._edge_pos = graph.edge_index
        self._vertex_pos = graph.vertex_index
        self._nf_cache: dict[Monomial, dict[Monomial, int]] = {}

    def __eq__(self, other):
        return (isinstance(other, LeavittAlgebra) and self.graph == other.graph
                and self.field == other.field and self.special == other.special)

    def __hash__(self):
        return hash((self.graph, self.field, tuple(sorted(self.special.items()))))

    # -- paths and monomials ---------------------------------------------

    def end(self, path: Path) -> str:
        return self._range[path.edges[-1]] if path.edges else path.start

    def path(self, *edges: str, start: Optional[str] = None) -> Path:
        if not edges:
            if start is None:
                raise ValueError("a length-0 path needs its vertex")
            return Path(start)
        for a, b in zip(edges, edges[1:]):
            if self._range[a] != self._source[b]:
                raise ValueError(f"{a}.{b} is not a path")
        return Path(self._source[edges[0]], tuple(edges))

    def is_normal(self, m: Monomial) -> bool:
        pe, qe = m.p.edges, m.q.edges
        return not (pe and qe and pe[-1] == qe[-1] and self.special[self._source[pe[-1]]] == pe[-1])

    def sort_key(self, m: Monomial):
        ep = self._edge_pos
        return (m.degree, len(m.p.edges), [ep[e] for e in m.p.edges],
                [ep[e] for e in m.q.edges], self._vertex_pos[m.p.start], self._vertex_pos[m.q.start])

    def normal_form(self, m: Monomial) -> dict[Monomial, int]:
        """Integer combination of normal monomials equal to ``m``."""
        hit = self._nf_cache.get(m)
        if hit is not None:
            return hit
        if self.is_normal(m):
            result = {m: 1}
        else:
            f = m.p.edges[-1]
            v = self._source[f]
            p0 = Path(m.p.start, m.p.edges[:-1])
            q0 = Path(m.q.start, m.q.edges[:-1])
            result = dict(self.normal_form(Monomial(p0, q0)))
            for e in self.graph.out_edges[v]:
                if e.name == f:
                    continue
                # e is not special, so this monomial is already normal
                k = Monomial(Path(p0.start, p0.edges + (e.name,)), Path(q0.start, q0.edges + (e.name,)))
                c = result.get(k, 0) - 1
                if c:
                    result[k] = c
                else:
                    result.pop(k, None)
        self._nf_cache[m] = result
        return result

    def mono_product(self, a: Monomial, b: Monomial) -> dict[Monomial, int]:
        """``(p q*)(u v*)`` in normal form."""
        q, u = a.q, b.p
        if q.start != u.start:
            return {}
        nq, nu = len(q.edges), len(u.edges)
        if nq <= nu:
            if u.edges[:nq] != q.edges:
                return {}
            rest = u.edges[nq:]
            m = Monomial(Path(a.p.start, a.p.edges + rest), b.q)
        else:
            if q.edges[:nu] != u.edges:
                return {}
            rest = q.edges[nu:]
            m = Monomial(a.p, Path(b.q.start, b.q.edges + rest))
        return self.normal_form(m)

    def normal_monomials(self, max_len: int) -> list[Monomial]:
        """All normal monomials with both paths of length at most ``max_len``."""
        by_end: dict[str, list[Path]] = defaultdict(list)
        frontier = [Path(v) for v in self.graph.vertices]
        for length in range(max_len + 1):
            nxt = []
            for p in frontier:
                by_end[self.end(p)].append(p)
                if length < max_len:
                    for e in self.graph.out_edges[self.end(p)]:
                        nxt.append(Path(p.start, p.edges + (e.name,)))
            frontier = nxt
        out = [Monomial(p, q) for v in self.graph.vertices for p in by_end[v] for q in by_end[v]]
        out = [m for m in out if self.is_normal(m)]
        out.sort(key=self.sort_key)
        return out

    # -- elements ----------------------------------------------------------

    def element(self, terms: Mapping[Monomial, object]) -> Element:
        """Element from a combination of (not necessarily normal) monomials."""
        acc: dict[Monomial, Scalar] = {}
        f = self.field
        for m, c in terms.items():
            c = f(c)
            if not c:
                continue
            for k, n in self.normal_form(m).items():
                acc[k] = acc.get(k, f.zero()) + c * n
        return Element(self, acc)

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        """``c`` times the identity (the sum of all vertices)."""
        return self.element({self.vertex_monomial(v): c for v in self.graph.vertices})

    def vertex_monomial(self, v: str) -> Monomial:
        if v not in self._vertex_pos:
            raise KeyError(f"unknown vertex {v!r}")
        return Monomial(Path(v), Path(v))

    def generator_monomial(self, token: str) -> Monomial:
        """Monomial of ``v``, ``e`` or ``e'`` (the ghost edge ``e*``)."""
        name, starred = (token[:-1], True) if token.endswith("'") else (token, False)
        if name in self._vertex_pos:
            return self.vertex_monomial(name)
        if name not in self._source:
            raise KeyError(f"unknown generator {name!r}")
        edge = Path(self._source[name], (name,))
        end = Path(self._range[name])
        return Monomial(end, edge) if starred else Monomial(edge, end)

    def gen(self, token: str) -> Element:
        return self.element({self.generator_monomial(token): 1})

    def word(self, tokens: Sequence[str]) -> Element:
        """Product of generators; non-composable words give 0."""
        if not tokens:
            raise ValueError("empty word")
        acc = {self.generator_monomial(tokens[0]): 1}
        for t in tokens[1:]:
            g = self.generator_monomial(t)
            nxt: dict[Monomial, int] = {}
            for m, c in acc.items():
                for k, n in self.mono_product(m, g).items():
                    nxt[k] = nxt.get(k, 0) + c * n
            acc = {k: c for k, c in nxt.items() if c}
        return self.element(acc)

    def normalize(self, raw: Iterable[tuple[object, Sequence[str]]]) -> Element:
        """Normal form of a formal sum ``sum c_i * word_i``."""
        total = self.zero()
        for c, w in raw:
            total = total + self.word(w) * c
        return total

    def render_monomial(self, m: Monomial) -> str:
        if m.is_vertex:
            return m.p.start
        return ".".join(list(m.p.edges) + [e + "'" for e in reversed(m.q.edges)])


def _check_same(a: Element, b: Element):
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        if a.algebra.field != b.algebra.field:
            raise FieldMismatchError("elements over different fields")
        raise ValueError("elements of different algebras")


class Element:
    """An immutable element of L(G): normal monomial -> nonzero scalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittAlgebra, terms: Mapping[Monomial, Scalar]):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    def _lift(self, other) -> Element:
        if isinstance(other, Element):
            _check_same(self, other)
            return other
        if isinstance(other, (int, Fraction)) or self.algebra.field.contains(other):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.algebra.field
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, f.zero()) + c
        return Element(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        f = self.algebra.field
        if isinstance(other, (int, Fraction)) or f.contains(other):
            c = f(other)
            return Element(self.algebra, {m: a * c for m, a in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Element):
            return multiply(other, self)
        return self.__mul__(other)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def star(self) -> Element:
        return star(self)

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: self.algebra.sort_key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            word = self.algebra.render_monomial(m)
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            body = word if mag == 1 else f"{mag}*{word}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Element({self})"


def multiply(a: Element, b: Element) -> Element:
    _check_same(a, b)
    alg = a.algebra
    f = alg.field
    acc: dict[Monomial, Scalar] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            for k, n in alg.mono_product(m1, m2).items():
                acc[k] = acc.get(k, f.zero()) + c * n
    return Element(alg, acc)


def star(a: Element) -> Element:
    """The involution ``(p q*)* = q p*``; scalars are left alone."""
    return a.algebra.element({Monomial(m.q, m.p): c for m, c in a.terms.items()})


def commutator(a: Element, b: Element) -> Element:
    return multiply(a, b) - multiply(b, a)


def s0_s1_split(a: Element) -> tuple[Element, Element]:
    """Parts spanned by ``p p*`` and by ``p q*`` with ``p != q``."""
    s0 = {m: c for m, c in a.terms.items() if m.p == m.q}
    s1 = {m: c for m, c in a.terms.items() if m.p != m.q}
    return Element(a.algebra, s0), Element(a.algebra, s1)


def degree_components(a: Element) -> dict[int, Element]:
    parts: dict[int, dict] = defaultdict(dict)
    for m, c in a.terms.items():
        parts[m.degree][m] = c
    return {d: Element(a.algebra, parts[d]) for d in sorted(parts)}


def vertex_part(a: Element) -> dict[str, Scalar]:
    """Coefficients of the vertices of ``a`` (a VertexVector)."""
    return {m.p.start: c for m, c in a.terms.items() if m.is_vertex}


def _int_commutator(alg: LeavittAlgebra, a: Monomial, b: Monomial) -> dict[Monomial, int]:
    acc = dict(alg.mono_product(a, b))
    for k, n in alg.mono_product(b, a).items():
        c = acc.get(k, 0) - n
        if c:
            acc[k] = c
        else:
            acc.pop(k, None)
    return acc


def _may_not_commute(a: Monomial, b: Monomial) -> bool:
    return _comparable(a.q, b.p) or _comparable(b.q, a.p)


def bounded_commutators_vanish(g: Graph, max_len: int,
                               limit: Optional[int] = None) -> Optional[tuple[Monomial, Monomial]]:
    """A pair of normal monomials with nonzero commutator, or None if all vanish."""
    alg = LeavittAlgebra(g)
    monos = alg.normal_monomials(max_len)
    work = 0
    for i, a in enumerate(monos):
        for b in monos[i + 1:]:
            if not _may_not_commute(a, b):
                continue
            work += 1
            if limit is not None and work > limit:
                raise WorkLimitExceeded(limit)
            if _int_commutator(alg, a, b):
                return a, b
    return None


def brute_force_commutator_vertex_span(g: Graph, f: FieldSpec, max_len: int,
                                       limit: int = DEFAULT_WORK_LIMIT) -> list[dict[str, Scalar]]:
    """Basis of the vertex combinations in the span of bounded commutators.

    All commutators ``[m1, m2]`` of normal monomials with paths of length at
    most ``max_len`` are computed and the subspace of their span lying in
    span(V) is extracted by elimination with the vertex columns last.  Only
    pairs that can contribute are evaluated: a commutator lies in span(V)
    only through its degree-0 diagonal part, and pairs with
    ``m1 L m2 = m2 L m1 = 0`` by the prefix rule vanish.  ``limit`` bounds the
    number of commutators evaluated.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    alg = LeavittAlgebra(g)
    monos = alg.normal_monomials(max_len)
    groups: dict[tuple, list[Monomial]] = defaultdict(list)
    for m in monos:
        groups[(m.p.start, m.q.start, m.degree)].append(m)
    rows: list[dict[Monomial, int]] = []
    work = 0
    for (a, b, d), left in groups.items():
        right = groups.get((b, a, -d), [])
        for m1 in left:
            for m2 in right:
                if alg.sort_key(m2) <= alg.sort_key(m1) and (a, b, d) == (b, a, -d):
                    continue
                if (a, b, d) != (b, a, -d) and (a, b, d) > (b, a, -d):
                    continue
                if not _may_not_commute(m1, m2):
                    continue
                work += 1
                if work > limit:
                    raise WorkLimitExceeded(limit)
                c = _int_commutator(alg, m1, m2)
                if c:
                    rows.append(c)
    return _vertex_subspace(alg, rows, f)


def _vertex_subspace(alg: LeavittAlgebra, rows: list[dict[Monomial, int]],
                     f: FieldSpec) -> list[dict[str, Scalar]]:
    cols: set[Monomial] = set()
    for r in rows:
        cols.update(r)
    vertex_cols = [alg.vertex_monomial(v) for v in alg.graph.vertices]
    others = sorted((m for m in cols if not m.is_vertex), key=alg.sort_key)
    order = others + vertex_cols
    field_rows = [{m: f(c) for m, c in r.items()} for r in rows]
    field_rows = [{m: c for m, c in r.items() if c} for r in field_rows]
    basis = span_basis(field_rows, f, order)
    out = []
    for row in basis:
        if all(m.is_vertex for m in row):
            coeffs = {m.p.start: c for m, c in row.items()}
            out.append({v: coeffs[v] for v in alg.graph.ordered(coeffs)})
    return out

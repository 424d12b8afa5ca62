"""Independent re-checking of simplicity certificates.

Nothing here repeats the decision search.  Each claim of a verdict is checked
directly against the definitions: closure properties edge by edge, balloon
conditions recomputed from edge sets, span coefficients by re-substitution
and rank claims by elimination.
"""

from __future__ import annotations

from itertools import combinations

from .fields import FieldSpec, combine, rank
from .graph import (Graph, GraphError, check_obstruction, exit_free_cycle,
                    hereditary_saturated_closure, induced_subgraph, is_balloon,
                    is_hereditary, is_points_and_loops, is_saturated, weak_components)
from .simplicity import (REASONS, MembershipCertificate, SimplicityVerdict,
                         _in_field, balloon_target, commutator_vertex_basis)

__all__ = ["verify_certificate", "certificate_problems", "CertificateError"]


class CertificateError(ValueError):
    """The certificate names vertices or edges that the graph lacks."""


def verify_certificate(g: Graph, f: FieldSpec, verdict: SimplicityVerdict) -> bool:
    return not certificate_problems(g, f, verdict)


def _known_names(g: Graph, verdict: SimplicityVerdict) -> None:
    vs = set(g.vertices)
    names: set[str] = set()
    for group in (verdict.zero_components, verdict.nonzero_components, verdict.minimal_sets):
        for c in group:
            names.update(c)
    names.update(verdict.component or ())
    names.update(verdict.W or ())
    if verdict.obstruction is not None:
        names.update(verdict.obstruction.subset)
    edges: set[str] = set(verdict.obstruction.cycle) if verdict.obstruction else set()
    for b in verdict.balloons:
        names.add(b.vertex)
        edges.update(b.edges_to_w)
        if b.loop is not None:
            edges.add(b.loop)
    certs = list(verdict.memberships)
    if verdict.identity_membership is not None:
        certs.append(verdict.identity_membership)
    for m in certs:
        names.update(m.target)
        for v, vec in m.basis:
            names.add(v)
            names.update(vec)
        if m.vertex is not None:
            names.add(m.vertex)
    if verdict.reason_vertex:
        names.add(verdict.reason_vertex)
    unknown = sorted(names - vs)
    if unknown:
        raise CertificateError(f"unknown vertex {unknown[0]!r}")
    unknown = sorted(edges - set(g.edge))
    if unknown:
        raise CertificateError(f"unknown edge {unknown[0]!r}")


def _check_membership(g: Graph, f: FieldSpec, cert: MembershipCertificate, target: dict,
                      expect_in_span: bool) -> list[str]:
    problems = []
    want_target = {x: c for x, c in _in_field(target, f).items()}
    if cert.target != want_target:
        problems.append("membership target does not match the graph")
    want_basis = [(v, _in_field(b, f)) for v, b in commutator_vertex_basis(g).items()]
    if [(v, dict(b)) for v, b in cert.basis] != want_basis:
        problems.append("membership basis is not the commutator vertex basis")
    vectors = [b for _, b in want_basis]
    if cert.in_span != expect_in_span:
        problems.append("membership outcome contradicts the verdict")
    if cert.coefficients is not None:
        if len(cert.coefficients) != len(vectors):
            problems.append("wrong number of coefficients")
        elif not all(f.contains(c) for c in cert.coefficients):
            problems.append("coefficients are not field scalars")
        elif combine(vectors, cert.coefficients, f) != want_target:
            problems.append("coefficients do not reproduce the target")
    else:
        if cert.ranks is None:
            problems.append("membership has neither coefficients nor ranks")
        else:
            r0 = rank(vectors, f, order=g.vertices)
            r1 = rank(vectors + [want_target], f, order=g.vertices)
            if tuple(cert.ranks) != (r0, r1) or r1 != r0 + 1:
                problems.append("rank refutation does not hold")
    return problems


def _check_unique_minimal(g0: Graph, w: tuple) -> list[str]:
    s = set(w)
    if not s or not is_hereditary(g0, s) or not is_saturated(g0, s):
        return ["W is not a nonempty hereditary saturated set"]
    # every nonempty hereditary saturated set contains a singleton closure
    if not all(s <= hereditary_saturated_closure(g0, {x}) for x in g0.vertices):
        return ["W is not the unique minimal hereditary saturated set"]
    return []


def _lpa_simple_by_definition(g: Graph) -> bool:
    full = frozenset(g.vertices)
    return exit_free_cycle(g) is None and all(
        hereditary_saturated_closure(g, {x}) == full for x in g.vertices)


def certificate_problems(g: Graph, f: FieldSpec, verdict: SimplicityVerdict) -> list[str]:
    """Every failed claim of ``verdict`` for ``(g, f)``; empty when it checks out."""
    _known_names(g, verdict)
    problems: list[str] = []
    if verdict.field != f:
        problems.append(f"verdict field {verdict.field} differs from {f}")
    if verdict.reason is not None and verdict.reason_code not in REASONS:
        problems.append(f"unknown reason {verdict.reason!r}")
    comps = weak_components(g)
    for c in verdict.zero_components:
        if tuple(c) not in comps or not is_points_and_loops(induced_subgraph(g, c)):
            problems.append(f"component {list(c)} is not a point or a loop")

    if verdict.outcome == "zero-lie":
        if verdict.reason != "zero-lie" or sorted(verdict.zero_components) != sorted(comps):
            problems.append("zero-lie verdict does not cover every component")
        if not is_points_and_loops(g):
            problems.append("graph is not a union of points and loops")
        return problems

    if verdict.reason_code == "multiple-nonzero-components":
        nz = verdict.nonzero_components
        if verdict.outcome != "not-simple" or len(nz) < 2:
            problems.append("needs two components with nonzero Lie part")
        for c in nz:
            if tuple(c) not in comps or is_points_and_loops(induced_subgraph(g, c)):
                problems.append(f"{list(c)} is not a component with nonzero Lie part")
        return problems

    comp = tuple(verdict.component or ())
    if comp not in comps:
        return problems + ["component is not a weak component of the graph"]
    g0 = induced_subgraph(g, comp)
    if is_points_and_loops(g0):
        problems.append("chosen component has zero Lie part")
    if sorted(map(tuple, verdict.zero_components)) != sorted(c for c in comps if c != comp):
        problems.append("other components are not all accounted as zero")
    if verdict.outcome not in ("simple", "not-simple"):
        return problems + [f"unknown outcome {verdict.outcome!r}"]
    simple = verdict.outcome == "simple"
    if simple and verdict.reason is not None:
        problems.append("simple verdict carries a reason")
    if not simple and verdict.reason is None:
        problems.append("not-simple verdict lacks a reason")

    if verdict.case == "theorem-one":
        if not _lpa_simple_by_definition(g0):
            problems.append("component is not a simple graph")
        if verdict.reason not in (None, "identity-in-commutators"):
            problems.append("reason does not fit the theorem-one case")
        if verdict.identity_membership is None:
            return problems + ["missing identity membership"]
        problems += _check_membership(g0, f, verdict.identity_membership,
                                      {v: 1 for v in g0.vertices}, expect_in_span=not simple)
        return problems

    if verdict.case != "theorem-two":
        return problems + [f"unknown case {verdict.case!r}"]

    code = verdict.reason_code
    if code == "no-unique-minimal":
        sets = [set(s) for s in verdict.minimal_sets]
        if len(sets) < 2:
            problems.append("fewer than two minimal sets")
        for s in sets:
            if not s or not is_hereditary(g0, s) or not is_saturated(g0, s):
                problems.append(f"{sorted(s)} is not a nonempty hereditary saturated set")
        if any(a & b for a, b in combinations(sets, 2)):
            problems.append("minimal sets are not disjoint")
        return problems

    if verdict.W is None:
        return problems + ["missing W"]
    w = tuple(verdict.W)
    problems += _check_unique_minimal(g0, w)
    sub = induced_subgraph(g0, w)
    if code == "induced-not-simple":
        if verdict.obstruction is None or not check_obstruction(sub, verdict.obstruction):
            problems.append("obstruction to simplicity of W does not hold")
        return problems
    if not _lpa_simple_by_definition(sub):
        problems.append("W does not span a simple subgraph")

    rest = [v for v in g0.vertices if v not in w]
    by_vertex = {b.vertex: b for b in verdict.balloons}
    if code == "not-balloon":
        v = verdict.reason_vertex
        b = by_vertex.get(v)
        if v not in rest or b is None:
            return problems + ["no balloon witness for the reported vertex"]
        if b != is_balloon(g0, v, w) or b.overall:
            problems.append(f"balloon witness for {v} is wrong")
        return problems

    for v in rest:
        b = by_vertex.get(v)
        if b is None or b != is_balloon(g0, v, w) or not b.overall:
            problems.append(f"balloon witness for {v} is missing or wrong")
    certs = {m.vertex: m for m in verdict.memberships}
    if code == "membership-fails":
        v = verdict.reason_vertex
        if v not in rest or v not in certs:
            return problems + ["no membership certificate for the reported vertex"]
        problems += _check_membership(sub, f, certs[v], balloon_target(g0, w, v), expect_in_span=False)
        return problems
    if code is not None:
        return problems + [f"reason {verdict.reason!r} does not fit the theorem-two case"]
    for v in rest:
        if v not in certs:
            problems.append(f"missing membership certificate for {v}")
            continue
        problems += _check_membership(sub, f, certs[v], balloon_target(g0, w, v), expect_in_span=True)
    return problems

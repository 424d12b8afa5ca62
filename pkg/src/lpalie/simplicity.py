"""Deciding simplicity of the Lie algebra [L(G), L(G)] for a finite graph G."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .fields import FieldSpec, Scalar, solve_in_span
from .graph import (BalloonWitness, Graph, GraphError, Obstruction, induced_subgraph,
                    is_balloon, is_lpa_simple, is_points_and_loops,
                    minimal_hereditary_saturated, weak_components)

__all__ = [
    "commutator_vertex_basis", "MembershipCertificate", "SimplicityVerdict",
    "vertex_combo_in_commutators", "balloon_sum_condition", "balloon_target",
    "decide_lie_simple", "NotABalloonError", "REASONS",
]

ZERO_LIE = "zero-lie"
SIMPLE = "simple"
NOT_SIMPLE = "not-simple"

REASONS = ("zero-lie", "multiple-nonzero-components", "identity-in-commutators",
           "no-unique-minimal", "induced-not-simple", "not-balloon", "membership-fails")


class NotABalloonError(ValueError):
    pass


def commutator_vertex_basis(g: Graph) -> dict[str, dict[str, int]]:
    """Vectors ``b_v = v - sum_{s(e)=v} r(e)`` for the non-sinks ``v``.

    Since ``sum_{s(e)=v} [e, e*] = v - sum r(e)``, these span the vertex
    combinations that are sums of commutators.  Keys are in declaration order.
    """
    basis = {}
    for v in g.vertices:
        out = g.out_edges[v]
        if not out:
            continue
        vec = {v: 1}
        for e in out:
            vec[e.range] = vec.get(e.range, 0) - 1
        basis[v] = {x: c for x, c in vec.items() if c}
    return basis


def _in_field(vec: Mapping[str, int], f: FieldSpec) -> dict[str, Scalar]:
    out = {x: f(c) for x, c in vec.items()}
    return {x: c for x, c in out.items() if c}


@dataclass
class MembershipCertificate:
    """Whether ``target`` is a combination of the commutator vertex basis."""

    target: dict
    basis: list  # (non-sink vertex, vector) pairs
    coefficients: Optional[tuple] = None
    ranks: Optional[tuple[int, int]] = None
    vertex: Optional[str] = None

    @property
    def in_span(self) -> bool:
        return self.coefficients is not None

    def to_dict(self) -> dict:
        d: dict = {"v": self.vertex, "target": _vec_json(self.target),
                   "basis": [{"v": v, "vector": _vec_json(b)} for v, b in self.basis]}
        if self.in_span:
            d["coefficients"] = [str(c) for c in self.coefficients]
        else:
            d["ranks"] = list(self.ranks)
        return d

    @classmethod
    def from_dict(cls, d: dict, f: FieldSpec) -> MembershipCertificate:
        coeffs = d.get("coefficients")
        ranks = d.get("ranks")
        return cls(
            target=_vec_parse(d["target"], f),
            basis=[(b["v"], _vec_parse(b["vector"], f)) for b in d["basis"]],
            coefficients=None if coeffs is None else tuple(f.parse_scalar(c) for c in coeffs),
            ranks=None if ranks is None else (int(ranks[0]), int(ranks[1])),
            vertex=d.get("v"),
        )


def _vec_json(vec: Mapping) -> dict:
    return {k: str(c) for k, c in vec.items()}


def _vec_parse(d: Mapping, f: FieldSpec) -> dict:
    return {k: f.parse_scalar(c) for k, c in d.items()}


def _membership(g: Graph, f: FieldSpec, target: Mapping, vertex: Optional[str] = None) -> MembershipCertificate:
    g.check_vertices(target)
    basis = [(v, _in_field(b, f)) for v, b in commutator_vertex_basis(g).items()]
    target = {x: f(c) for x, c in target.items()}
    target = {x: target[x] for x in g.ordered(target) if target[x]}
    sol = solve_in_span([b for _, b in basis], target, f, order=g.vertices)
    if sol.in_span:
        return MembershipCertificate(target, basis, coefficients=sol.coefficients, vertex=vertex)
    return MembershipCertificate(target, basis, ranks=(sol.rank_basis, sol.rank_augmented), vertex=vertex)


def vertex_combo_in_commutators(g: Graph, f: FieldSpec, coeffs: Mapping) -> MembershipCertificate:
    """Is ``sum coeffs[v] * v`` a sum of commutators in L(g) over ``f``?"""
    return _membership(g, f, coeffs)


def balloon_target(g: Graph, w_set, v: str) -> dict[str, int]:
    """``sum r(e)`` over the edges ``e`` from ``v`` into ``w_set``, with multiplicity."""
    w_set = set(w_set)
    out: dict[str, int] = {}
    for e in g.out_edges[v]:
        if e.range in w_set:
            out[e.range] = out.get(e.range, 0) + 1
    return out


def balloon_sum_condition(g: Graph, w_set, v: str, f: FieldSpec) -> MembershipCertificate:
    """Membership of the balloon's edge-range sum in the commutators of L(W)."""
    witness = is_balloon(g, v, w_set)
    if not witness.overall:
        failed = [k for k, ok in witness.conditions.items() if not ok]
        raise NotABalloonError(f"{v!r} is not a balloon over the given set (fails {', '.join(failed)})")
    sub = induced_subgraph(g, w_set)
    return _membership(sub, f, balloon_target(g, w_set, v), vertex=v)


@dataclass
class SimplicityVerdict:
    """Outcome of :func:`decide_lie_simple` together with its certificate."""

    outcome: str
    case: str
    field: FieldSpec
    reason: Optional[str] = None
    component: Optional[tuple[str, ...]] = None
    zero_components: list = field(default_factory=list)
    nonzero_components: list = field(default_factory=list)
    W: Optional[tuple[str, ...]] = None
    minimal_sets: list = field(default_factory=list)
    obstruction: Optional[Obstruction] = None
    balloons: list[BalloonWitness] = field(default_factory=list)
    memberships: list[MembershipCertificate] = field(default_factory=list)
    identity_membership: Optional[MembershipCertificate] = None

    @property
    def is_simple(self) -> bool:
        return self.outcome == SIMPLE

    @property
    def reason_code(self) -> Optional[str]:
        return None if self.reason is None else self.reason.split("(", 1)[0]

    @property
    def reason_vertex(self) -> Optional[str]:
        if self.reason and "(" in self.reason:
            return self.reason[self.reason.index("(") + 1:-1]
        return None

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "case": self.case,
            "field": str(self.field),
            "component": None if self.component is None else list(self.component),
            "W": None if self.W is None else list(self.W),
            "balloons": [b.to_dict() for b in self.balloons],
            "memberships": [m.to_dict() for m in self.memberships],
            "identity_membership": None if self.identity_membership is None else self.identity_membership.to_dict(),
            "reason": self.reason,
            "evidence": {
                "zero_components": [list(c) for c in self.zero_components],
                "nonzero_components": [list(c) for c in self.nonzero_components],
                "minimal_sets": [list(s) for s in self.minimal_sets],
                "obstruction": None if self.obstruction is None else self.obstruction.to_dict(),
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> SimplicityVerdict:
        f = FieldSpec.parse(d["field"])
        ev = d.get("evidence") or {}
        ident = d.get("identity_membership")
        return cls(
            outcome=d["outcome"],
            case=d["case"],
            field=f,
            reason=d.get("reason"),
            component=None if d.get("component") is None else tuple(d["component"]),
            zero_components=[tuple(c) for c in ev.get("zero_components", [])],
            nonzero_components=[tuple(c) for c in ev.get("nonzero_components", [])],
            W=None if d.get("W") is None else tuple(d["W"]),
            minimal_sets=[tuple(s) for s in ev.get("minimal_sets", [])],
            obstruction=None if ev.get("obstruction") is None else Obstruction.from_dict(ev["obstruction"]),
            balloons=[BalloonWitness.from_dict(b) for b in d.get("balloons", [])],
            memberships=[MembershipCertificate.from_dict(m, f) for m in d.get("memberships", [])],
            identity_membership=None if ident is None else MembershipCertificate.from_dict(ident, f),
        )


def decide_lie_simple(g: Graph, f: FieldSpec) -> SimplicityVerdict:
    """Decide whether [L(g), L(g)] is a simple Lie algebra over ``f``.

    Components that are a point or a single loop contribute nothing to the
    Lie algebra, so exactly one other component must exist and carry the
    answer.  A component with simple L is settled by whether the identity is
    a sum of commutators; otherwise its unique minimal hereditary saturated
    set W must span a simple subgraph with every remaining vertex a balloon
    over W whose edge-range sum lies in [L(W), L(W)].
    """
    if not g.vertices:
        raise GraphError("the graph has no vertices")
    comps = weak_components(g)
    zero = [c for c in comps if is_points_and_loops(induced_subgraph(g, c))]
    nonzero = [c for c in comps if c not in zero]
    if not nonzero:
        return SimplicityVerdict(ZERO_LIE, "none", f, reason=ZERO_LIE, zero_components=zero)
    if len(nonzero) > 1:
        return SimplicityVerdict(NOT_SIMPLE, "none", f, reason="multiple-nonzero-components",
                                 zero_components=zero, nonzero_components=nonzero)
    comp = nonzero[0]
    g0 = induced_subgraph(g, comp)
    verdict = SimplicityVerdict(NOT_SIMPLE, "theorem-one", f, component=comp, zero_components=zero)

    simple, _ = is_lpa_simple(g0)
    if simple:
        ident = vertex_combo_in_commutators(g0, f, {v: 1 for v in g0.vertices})
        verdict.identity_membership = ident
        if ident.in_span:
            verdict.reason = "identity-in-commutators"
        else:
            verdict.outcome = SIMPLE
        return verdict

    verdict.case = "theorem-two"
    minimal = minimal_hereditary_saturated(g0)
    if len(minimal) != 1:
        verdict.reason = "no-unique-minimal"
        verdict.minimal_sets = [g0.ordered(m) for m in minimal]
        return verdict
    w_set = minimal[0]
    verdict.W = g0.ordered(w_set)
    w_simple, obstruction = is_lpa_simple(induced_subgraph(g0, w_set))
    if not w_simple:
        verdict.reason = "induced-not-simple"
        verdict.obstruction = obstruction
        return verdict
    rest = [v for v in g0.vertices if v not in w_set]
    verdict.balloons = [is_balloon(g0, v, w_set) for v in rest]
    for b in verdict.balloons:
        if not b.overall:
            verdict.reason = f"not-balloon({b.vertex})"
            return verdict
    for v in rest:
        cert = balloon_sum_condition(g0, w_set, v, f)
        verdict.memberships.append(cert)
        if not cert.in_span:
            verdict.reason = f"membership-fails({v})"
            return verdict
    verdict.outcome = SIMPLE
    return verdict

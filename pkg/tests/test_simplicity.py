import copy
import json
import random
from fractions import Fraction

import pytest

from lpalie import FieldSpec, Q
from lpalie.graph import Graph, GraphError, every_cycle_has_exit, induced_subgraph, is_lpa_simple
from lpalie.simplicity import (NotABalloonError, SimplicityVerdict, balloon_sum_condition,
                               commutator_vertex_basis, decide_lie_simple,
                               vertex_combo_in_commutators)
from lpalie.verify import CertificateError, certificate_problems, verify_certificate
from lpalie.zoo import a2, balloon, fixtures, loop, point, rose, small_graphs, toeplitz

F2, F3 = FieldSpec(2), FieldSpec(3)


def test_commutator_vertex_basis_examples():
    assert list(commutator_vertex_basis(rose(3)).values()) == [{"u": -2}]
    assert list(commutator_vertex_basis(a2()).values()) == [{"v": 1, "w": -1}]
    assert list(commutator_vertex_basis(toeplitz()).values()) == [{"w": -1}]
    assert commutator_vertex_basis(point()) == {}


def test_vertex_combo_examples():
    c = vertex_combo_in_commutators(rose(2), Q, {"u": 1})
    assert c.in_span and c.coefficients == (Q(-1),)
    c = vertex_combo_in_commutators(rose(3), F2, {"u": 1})
    assert not c.in_span and c.ranks == (0, 1)
    c = vertex_combo_in_commutators(a2(), F2, {"v": 1, "w": 1})
    assert c.in_span and c.coefficients == (F2(1),)


def test_balloon_sum_examples():
    c = balloon_sum_condition(balloon(), {"w"}, "v", Q)
    assert c.target == {"w": Q(1)} and c.basis == [("w", {"w": Q(-1)})]
    assert c.coefficients == (Q(-1),)
    c = balloon_sum_condition(toeplitz(), {"w"}, "v", Q)
    assert not c.in_span and c.basis == [] and c.target == {"w": Q(1)}
    c = balloon_sum_condition(balloon(), {"w"}, "v", F2)
    assert c.coefficients == (F2(1),)


def test_balloon_sum_requires_balloon():
    with pytest.raises(NotABalloonError):
        balloon_sum_condition(a2(), {"w"}, "v", Q)


def test_balloon_sum_counts_parallel_edges():
    g = Graph.build(["v", "w"], [("c", "v", "v"), ("e1", "v", "w"), ("e2", "v", "w"),
                                 ("f1", "w", "w"), ("f2", "w", "w")])
    c = balloon_sum_condition(g, {"w"}, "v", Q)
    assert c.target == {"w": Q(2)}


@pytest.mark.parametrize("name, field, outcome, case, reason", [
    ("G_pt", "q", "zero-lie", "none", "zero-lie"),
    ("G_loop", "f2", "zero-lie", "none", "zero-lie"),
    ("G_A2", "q", "simple", "theorem-one", None),
    ("G_A2", "f2", "not-simple", "theorem-one", "identity-in-commutators"),
    ("G_ball", "q", "simple", "theorem-two", None),
    ("G_toe", "q", "not-simple", "theorem-two", "membership-fails(v)"),
    ("G_R3", "f2", "simple", "theorem-one", None),
    ("G_R3", "q", "not-simple", "theorem-one", "identity-in-commutators"),
])
def test_decision_examples(name, field, outcome, case, reason):
    g = fixtures()[name]
    f = FieldSpec.parse(field)
    v = decide_lie_simple(g, f)
    assert (v.outcome, v.case, v.reason) == (outcome, case, reason)
    assert verify_certificate(g, f, v)


def test_ball_certificate_contents():
    v = decide_lie_simple(balloon(), Q)
    assert v.W == ("w",)
    assert [b.vertex for b in v.balloons] == ["v"] and v.balloons[0].overall
    assert v.memberships[0].coefficients == (Q(-1),)


def test_empty_graph_rejected():
    with pytest.raises(GraphError):
        decide_lie_simple(Graph(), Q)


def test_components():
    # A2 next to an isolated loop: the loop adds nothing to [L, L]
    g = Graph.build(["v", "w", "u"], [("a", "v", "w"), ("l", "u", "u")])
    v = decide_lie_simple(g, Q)
    assert v.outcome == "simple" and v.component == ("v", "w") and v.zero_components == [("u",)]
    assert verify_certificate(g, Q, v)
    g = Graph.build(["v", "w", "x", "y"], [("a", "v", "w"), ("b", "x", "y")])
    v = decide_lie_simple(g, Q)
    assert v.reason == "multiple-nonzero-components"
    assert verify_certificate(g, Q, v)


def test_no_unique_minimal():
    # two sinks below a source: {w1} and {w2} are both minimal
    g = Graph.build(["v", "w1", "w2"], [("a", "v", "w1"), ("b", "v", "w2"), ("c", "v", "v")])
    v = decide_lie_simple(g, Q)
    assert v.reason == "no-unique-minimal" and v.minimal_sets == [("w1",), ("w2",)]
    assert verify_certificate(g, Q, v)


def test_induced_not_simple_and_not_balloon():
    # W = {w} carries a loop without exit
    g = Graph.build(["v", "w"], [("c", "v", "v"), ("e", "v", "w"), ("l", "w", "w")])
    v = decide_lie_simple(g, Q)
    assert v.reason == "induced-not-simple" and v.obstruction.cycle == ("l",)
    assert verify_certificate(g, Q, v)
    # a two-cycle without exit is its own unique minimal set
    g = Graph.build(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])
    v = decide_lie_simple(g, Q)
    assert v.reason == "induced-not-simple" and v.W == ("a", "b")
    assert verify_certificate(g, Q, v)
    # v has no loop
    g = Graph.build(["s", "v", "w"], [("c", "v", "v"), ("e", "v", "w"), ("d", "s", "v"),
                                      ("f1", "w", "w"), ("f2", "w", "w")])
    v = decide_lie_simple(g, Q)
    assert v.reason == "not-balloon(s)"
    assert verify_certificate(g, Q, v)


def test_verify_examples_and_tampering():
    g = balloon()
    v = decide_lie_simple(g, Q)
    assert verify_certificate(g, Q, v)
    bad = copy.deepcopy(v)
    bad.memberships[0].coefficients = (Q(1),)
    assert not verify_certificate(g, Q, bad)
    assert verify_certificate(point(), Q, decide_lie_simple(point(), Q))


def test_verify_rejects_unknown_names():
    v = decide_lie_simple(balloon(), Q)
    v.W = ("nowhere",)
    with pytest.raises(CertificateError):
        verify_certificate(balloon(), Q, v)


def test_json_round_trip():
    for name, g in fixtures().items():
        for f in (Q, F2, F3):
            v = decide_lie_simple(g, f)
            d = json.loads(json.dumps(v.to_dict()))
            back = SimplicityVerdict.from_dict(d)
            assert back.to_dict() == v.to_dict()
            assert verify_certificate(g, f, back)


def test_deterministic():
    for g in fixtures().values():
        a = json.dumps(decide_lie_simple(g, Q).to_dict())
        b = json.dumps(decide_lie_simple(Graph(g.vertices, g.edges), Q).to_dict())
        assert a == b


@pytest.mark.parametrize("n", range(2, 8))
def test_rose_characteristic(n):
    assert decide_lie_simple(rose(n), Q).outcome == "not-simple"
    for p in (2, 3, 5, 7):
        # independent 1x1 system (1 - n) x = 1 over F_p
        solvable = any((1 - n) * x % p == 1 for x in range(p))
        v = decide_lie_simple(rose(n), FieldSpec(p))
        assert v.is_simple == (not solvable) == ((n - 1) % p == 0)


@pytest.mark.slow
def test_corpus_properties():
    for g in small_graphs(3, 4):
        if not g.vertices:
            continue
        for f in (Q, F2, F3):
            v = decide_lie_simple(g, f)
            assert certificate_problems(g, f, v) == []
            if v.component is not None:
                g0 = induced_subgraph(g, v.component)
                if v.is_simple:
                    assert every_cycle_has_exit(g0)[0]
                if is_lpa_simple(g0)[0]:
                    ident = vertex_combo_in_commutators(g0, f, {x: 1 for x in g0.vertices})
                    assert v.is_simple == (not ident.in_span)

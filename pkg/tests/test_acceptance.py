"""Exit criteria.  Each test prints one PASS/FAIL line for its criterion."""

import copy
import random

import pytest

from lpalie import FieldSpec, Q
from lpalie.algebra import (LeavittAlgebra, bounded_commutators_vanish,
                            brute_force_commutator_vertex_span, commutator, degree_components, star)
from lpalie.fields import solve_in_span
from lpalie.graph import (Graph, every_cycle_has_exit, hereditary_saturated_closure,
                          induced_subgraph, is_hereditary, is_points_and_loops, is_saturated)
from lpalie.simplicity import commutator_vertex_basis, decide_lie_simple, _in_field
from lpalie.verify import verify_certificate
from lpalie.zoo import fixtures, rose, small_graphs

from conftest import ACCEPTANCE_LINES

F2, F3 = FieldSpec(2), FieldSpec(3)
FIELDS = (Q, F2, F3)


@pytest.fixture
def report(request):
    failures: list[str] = []
    yield failures
    status = "PASS" if not failures else "FAIL"
    detail = "" if not failures else f" ({len(failures)} failures, first: {failures[0]})"
    line = f"[{status}] {request.node.name}{detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _expect(failures, cond, msg):
    if not cond:
        failures.append(msg)


def test_criterion_1_decision_fixtures(report):
    fx = fixtures()

    def check(name, g, f, outcome, case=None, reason=None, w=None):
        v = decide_lie_simple(g, f)
        tag = f"{name}/{f}"
        _expect(report, v.outcome == outcome, f"{tag}: outcome {v.outcome} != {outcome}")
        if case:
            _expect(report, v.case == case, f"{tag}: case {v.case} != {case}")
        if reason:
            _expect(report, v.reason == reason, f"{tag}: reason {v.reason} != {reason}")
        if w:
            _expect(report, v.W == w, f"{tag}: W {v.W} != {w}")
        _expect(report, verify_certificate(g, f, v), f"{tag}: certificate rejected")

    for f in FIELDS:
        check("G_pt", fx["G_pt"], f, "zero-lie")
        check("G_loop", fx["G_loop"], f, "zero-lie")
        check("G_toe", fx["G_toe"], f, "not-simple", "theorem-two", "membership-fails(v)")
        check("G_ball", fx["G_ball"], f, "simple", "theorem-two", w=("w",))
    check("G_A2", fx["G_A2"], Q, "simple")
    check("G_A2", fx["G_A2"], F2, "not-simple")
    for n in range(2, 8):
        check(f"G_R{n}", rose(n), Q, "not-simple")
        for p in (2, 3, 5, 7, 11, 13):
            check(f"G_R{n}", rose(n), FieldSpec(p), "simple" if (n - 1) % p == 0 else "not-simple")
    assert not report, report


def test_criterion_2_oracle_equivalence(report):
    count = 0
    for g in small_graphs(3, 4, connected=True):
        for f in (Q, F2):
            count += 1
            closed = [_in_field(b, f) for b in commutator_vertex_basis(g).values()]
            oracle = brute_force_commutator_vertex_span(g, f, 2)
            ok = all(solve_in_span(oracle, b, f, order=g.vertices).in_span for b in closed) and \
                all(solve_in_span(closed, b, f, order=g.vertices).in_span for b in oracle)
            _expect(report, ok, f"disagreement on {g.to_text()!r} over {f}")
    _expect(report, count == 218, f"corpus size {count} != 218")
    assert not report, report


def _random_element(alg, monos, rng):
    return alg.element({rng.choice(monos): rng.randint(-3, 3) for _ in range(rng.randint(1, 3))})


def test_criterion_3_relation_suite(report):
    for name, g in fixtures().items():
        alg = LeavittAlgebra(g)
        gen = alg.gen
        for vi in g.vertices:
            for vj in g.vertices:
                _expect(report, gen(vi) * gen(vj) - (gen(vi) if vi == vj else 0) == 0, f"{name}: (1) {vi},{vj}")
        for e in g.edges:
            s, r, x, xs = gen(e.source), gen(e.range), gen(e.name), gen(e.name + "'")
            for lhs, rhs in ((s * x, x), (x * r, x), (r * xs, xs), (xs * s, xs)):
                _expect(report, lhs - rhs == 0, f"{name}: (2) {e.name}")
            for f in g.edges:
                _expect(report, xs * gen(f.name) - (r if e == f else 0) == 0, f"{name}: (3) {e.name},{f.name}")
        for v in g.vertices:
            if g.out_edges[v]:
                total = gen(v)
                for e in g.out_edges[v]:
                    total = total - gen(e.name) * gen(e.name + "'")
                _expect(report, total == 0, f"{name}: (4) at {v}")

        monos = alg.normal_monomials(2)
        rng = random.Random(name)
        for _ in range(1000):
            a, b = _random_element(alg, monos, rng), _random_element(alg, monos, rng)
            ab = a * b
            _expect(report, star(ab) == star(b) * star(a), f"{name}: star not anti-multiplicative")
            sums = {x + y for x in degree_components(a) for y in degree_components(b)}
            _expect(report, set(degree_components(ab)) <= sums, f"{name}: grading not additive")
            _expect(report, alg.element(dict(ab.terms)) == ab and all(alg.is_normal(m) for m in ab.terms),
                    f"{name}: normalize not idempotent")
    assert not report, report[:5]


def test_criterion_4_lemma_checks(report):
    for name in ("G_toe", "G_ball"):
        g = fixtures()[name]
        alg = LeavittAlgebra(g)
        x = commutator(alg.gen("c'"), alg.gen("c"))
        w = alg.zero()
        for e in g.out_edges["v"]:
            if e.range == "w":
                x = x - commutator(alg.gen(e.name), alg.gen(e.name + "'"))
                w = w + alg.gen(e.range)
        _expect(report, x == w and str(x) == "w", f"Lemma 8 identity fails on {name}: {x}")

    for g in small_graphs(3, 4):
        vanish = bounded_commutators_vanish(g, 2) is None
        _expect(report, vanish == is_points_and_loops(g), f"Lemma 1 mismatch on {g.to_text()!r}")
        for f in FIELDS:
            v = decide_lie_simple(g, f)
            if v.is_simple:
                g0 = induced_subgraph(g, v.component)
                _expect(report, every_cycle_has_exit(g0)[0], f"Lemma 2: simple with exit-free cycle {g.to_text()!r}")
    assert not report, report


def test_criterion_5_closure_properties(report):
    rng = random.Random(2024)
    for i in range(500):
        n = rng.randint(1, 8)
        vs = [f"v{k}" for k in range(n)]
        g = Graph.build(vs, [(f"e{k}", rng.choice(vs), rng.choice(vs)) for k in range(rng.randint(0, 14))])
        s = {v for v in vs if rng.random() < 0.3}
        t = s | {v for v in vs if rng.random() < 0.3}
        cs, ct = hereditary_saturated_closure(g, s), hereditary_saturated_closure(g, t)
        _expect(report, cs >= s, f"pair {i}: not extensive")
        _expect(report, cs <= ct, f"pair {i}: not monotone")
        _expect(report, hereditary_saturated_closure(g, cs) == cs, f"pair {i}: not idempotent")
        # direct edge-by-edge check of both definitions
        her = all(e.range in cs for e in g.edges if e.source in cs)
        sat = all(v in cs for v in vs if g.out_edges[v] and all(e.range in cs for e in g.out_edges[v]))
        _expect(report, her and sat, f"pair {i}: output not hereditary and saturated")
        _expect(report, is_hereditary(g, cs) and is_saturated(g, cs), f"pair {i}: predicate disagreement")
    assert not report, report


def _mutations():
    fx = fixtures()
    ball, toe, a2, r3 = fx["G_ball"], fx["G_toe"], fx["G_A2"], fx["G_R3"]
    vb = decide_lie_simple(ball, Q)
    vt = decide_lie_simple(toe, Q)
    va = decide_lie_simple(a2, Q)
    va2 = decide_lie_simple(a2, F2)
    vr = decide_lie_simple(r3, F2)

    def mut(name, g, f, v, change):
        m = copy.deepcopy(v)
        change(m)
        return name, g, f, m

    def set_attr(obj, **kw):
        for k, val in kw.items():
            setattr(obj, k, val)

    return [
        mut("flipped balloon-sum coefficient", ball, Q, vb,
            lambda m: set_attr(m.memberships[0], coefficients=(Q(1),))),
        mut("dropped balloon condition", ball, Q, vb,
            lambda m: m.balloons[0].conditions.__setitem__("v", False)),
        mut("wrong W", ball, Q, vb, lambda m: set_attr(m, W=("v",))),
        mut("missing membership", ball, Q, vb, lambda m: set_attr(m, memberships=[])),
        mut("wrong balloon loop", ball, Q, vb,
            lambda m: set_attr(m, balloons=[type(m.balloons[0])("v", "f1", ("e",), dict(m.balloons[0].conditions))])),
        mut("failed membership claimed simple", toe, Q, vt, lambda m: set_attr(m, outcome="simple", reason=None)),
        mut("forged ranks", toe, Q, vt, lambda m: set_attr(m.memberships[0], ranks=(0, 0))),
        mut("simple claimed not simple", a2, Q, va,
            lambda m: set_attr(m, outcome="not-simple", reason="identity-in-commutators")),
        mut("flipped identity coefficient", a2, F2, va2,
            lambda m: set_attr(m.identity_membership, coefficients=(F2(0),))),
        mut("wrong field", r3, F2, vr, lambda m: set_attr(m, field=F3)),
    ]


def test_criterion_6_certificate_soundness(report):
    produced = 0
    for g in list(small_graphs(3, 4)) + list(fixtures().values()):
        if not g.vertices:
            continue
        for f in FIELDS:
            produced += 1
            _expect(report, verify_certificate(g, f, decide_lie_simple(g, f)),
                    f"rejected genuine verdict for {g.to_text()!r} over {f}")
    muts = _mutations()
    _expect(report, len(muts) == 10, "mutation set is not 10")
    for name, g, f, m in muts:
        _expect(report, not verify_certificate(g, f, m), f"accepted mutation: {name}")
    assert not report, report

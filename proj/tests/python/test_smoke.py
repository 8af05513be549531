import pytest

import revy

M1 = "eps: a.(b.0 + c.0)"
M2 = "eps: a.b.0 + a.c.0"
M5 = "eps: a.(b(gb).roll<gb> + c.0)"
M6 = "eps: a(ga).(b.roll<ga> + c.0)"


def test_fmt_roundtrip():
    assert revy.fmt("eps:a .( b.0+c.0 )") == M1
    assert revy.fmt(revy.fmt(M2)) == revy.fmt(M2)
    with pytest.raises(Exception):
        revy.fmt("eps: a.")


def test_canonical_equality():
    assert revy.structurally_equal("eps: a.0 | eps: b.0", "eps: b.0 | eps: a.0")
    assert not revy.limited_eq("eps: a.0 | eps: b.0", "eps: b.0 | eps: a.0")
    assert revy.canonical("new a. 0") == "0"


def test_steps():
    steps = revy.forward_steps("eps: a.0 | eps: 'a.0")
    assert len(steps) == 1
    assert steps[0]["kind"] == "sync"
    assert steps[0]["key"] == 1

    back = revy.backward_steps(
        "1 |- 1: roll<1> | 1: 0 | mem[eps: a(g).roll<g>; 1] | mem[eps: 'a.0; 1]"
    )
    assert len(back) == 1
    assert back[0]["target_key"] == 1
    assert revy.well_formed("eps |- " + M1)


def test_trace_sets_and_safety():
    ts = revy.trace_set(M1, depth=6)
    assert ts["complete"]
    assert sorted(ts["traces"]) == sorted(["eps", "a", "a,b", "a,c"])

    assert revy.safety_leq(M1, M2)["status"] == "holds"
    v = revy.safety_leq("eps: a.(b.c.0 + b.d.0)", M1)
    assert v["status"] == "fails" and v["witness"] == "a,b,c"


def test_testing_and_refusals():
    assert revy.shd_pass(M6, "omega + 'a.'b.0", depth=10)["status"] == "pass"
    assert revy.shd_pass(M5, "omega + 'a.'b.0", depth=10)["status"] == "fail"
    assert revy.may_pass(M1, revy.gen_safety_test("a,b"), depth=8)["status"] == "pass"

    assert revy.refusal_member(M2, "a", ["eps", "b"], ["b"])["member"]
    assert not revy.refusal_member(M1, "a", ["eps", "b"], ["b"])["member"]

    v = revy.liveness_leq_refusal(M2, M1)
    assert v["status"] == "fails"
    assert v["witness"]["t"] == "a"

    test = revy.gen_liveness_test("", ["eps"], [])
    assert test == "omega.0 + tau.tau(g).(0 | roll<g>)"


def test_graphs():
    g = revy.lts(M1, depth=4)
    assert len(g["states"]) == 3
    assert not g["truncated"]
    assert "digraph" in revy.dot(M1, depth=4)

    e = revy.earliest_state("eps |- " + M1)
    assert e.startswith("eps |-")


def test_verify_suites():
    for suite in ("lemmas", "zip", "props"):
        rep = revy.verify(suite, n=25, seed=42)
        assert rep["ok"], rep

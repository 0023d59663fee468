import random

import pytest

from transframe.errors import BudgetExceeded
from transframe.families import make_H
from transframe.frame import Frame, generated_subframe
from transframe.reduction import (
    ReductionMap, audit_sequence, compose, crosscheck_frame_formula, find_reduction, identity,
    is_reduction, reducibility_matrix,
)

from oracles import brute_force_reductions, inflate, random_frame_py

IRR = Frame(["w"], [])
REFL = Frame(["w"], [("w", "w")])
CHAIN2 = Frame(["a", "b"], [("a", "b")])
CHAIN3 = Frame(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
FORK = Frame(["r", "u", "v"], [("r", "u"), ("r", "v")])
CYCLE = Frame(["w", "u"], [("w", "u"), ("u", "w"), ("w", "w"), ("u", "u")])


def test_is_reduction_examples():
    assert is_reduction(identity(make_H(1)))
    assert is_reduction(ReductionMap(CYCLE, REFL, {"w": "w", "u": "w"}))
    v = is_reduction(ReductionMap(CHAIN2, IRR, {"a": "w", "b": "w"}))
    assert not v and v.witness == ("forth", "a", "b")


def test_is_reduction_reports_each_condition():
    assert is_reduction(ReductionMap(CHAIN2, CHAIN2, {"a": "a"})).witness == ("total", "b")
    assert is_reduction(ReductionMap(CHAIN2, CHAIN2, {"a": "a", "b": "zz"})).witness == ("codomain", "b")
    assert is_reduction(ReductionMap(IRR, CHAIN2, {"w": "a"})).witness == ("surjective", "b")
    m = ReductionMap(CHAIN3, CHAIN2, {"a": "a", "b": "a", "c": "b"})
    assert is_reduction(m).witness == ("forth", "a", "b")
    m = ReductionMap(FORK, CHAIN3, {"r": "a", "u": "b", "v": "c"})
    assert not is_reduction(m)


def test_find_reduction_examples():
    for n in range(1, 4):
        for k in range(n):
            assert find_reduction(make_H(n), make_H(k)) is None
    F = make_H(1)
    assert find_reduction(F, F) is not None
    # both leaves collapse onto the single top point
    assert find_reduction(FORK, CHAIN2).mapping == {"r": "a", "u": "b", "v": "b"}
    assert find_reduction(FORK, CHAIN3) is None
    assert not brute_force_reductions(FORK, CHAIN3)


def test_budget_is_a_third_verdict():
    with pytest.raises(BudgetExceeded):
        find_reduction(make_H(2), make_H(1), budget=1)


def test_search_matches_brute_force():
    rng = random.Random(3)
    for trial in range(150):
        if trial % 3 == 0:
            T = random_frame_py(rng, rng.randrange(1, 4))
            S = inflate(rng, T, 6)
        else:
            S = random_frame_py(rng, rng.randrange(1, 6))
            T = random_frame_py(rng, rng.randrange(1, 4))
        found = find_reduction(S, T)
        assert (found is not None) == bool(brute_force_reductions(S, T, first_only=True))
        if found is not None:
            assert found.mapping in brute_force_reductions(S, T)


def test_composition_is_a_reduction():
    rng = random.Random(4)
    done = 0
    while done < 30:
        H = random_frame_py(rng, rng.randrange(1, 3))
        G = inflate(rng, H, 4)
        F = inflate(rng, G, 6)
        f, g = find_reduction(F, G), find_reduction(G, H)
        assert f is not None and g is not None
        assert is_reduction(compose(f, g))
        done += 1


def test_reducibility_matrix_examples():
    m = reducibility_matrix([make_H(0), make_H(1)])
    assert m[0][1].verdict == "no"
    F = make_H(0)
    m = reducibility_matrix([F, F])
    assert m[0][1].verdict == "yes" and m[1][0].verdict == "yes"
    m = reducibility_matrix([CHAIN2, CHAIN3])
    assert m[0][1].verdict == "yes"
    assert m[1][0].verdict == "no"


def test_matrix_parallel_matches_serial():
    frames = [make_H(0), make_H(1), CHAIN3, FORK]
    a = reducibility_matrix(frames)
    b = reducibility_matrix(frames, jobs=2)
    assert [[e.verdict for e in row] for row in a] == [[e.verdict for e in row] for row in b]


def test_audit_examples():
    assert audit_sequence([make_H(0), make_H(1), make_H(2)], mode="full").verdict == "pass"
    F = make_H(0)
    a = audit_sequence([F, F])
    assert a.verdict == "fail"
    assert a.witness.replay([F, F])
    assert a.witness.to_json()["map"] == {"a": "a", "b{0,1}": "b{0,1}", "c0": "c0", "c1": "c1"}
    assert audit_sequence([CHAIN3, CHAIN2], mode="backward").verdict == "pass"
    assert audit_sequence([CHAIN2, CHAIN3], mode="backward").verdict == "fail"


def test_audit_budget_gives_unknown():
    a = audit_sequence([make_H(0), make_H(1)], mode="full", budget=1)
    assert a.verdict == "unknown" and a.inconclusive


def test_audit_rejects_bad_mode():
    with pytest.raises(ValueError):
        audit_sequence([IRR], mode="sideways")


def test_crosscheck_examples():
    assert crosscheck_frame_formula(IRR, IRR, "w") == (True, True)
    sat, red = crosscheck_frame_formula(CHAIN2, make_H(0), "a")
    assert sat == red
    assert crosscheck_frame_formula(make_H(0), CHAIN2, "a") == (False, False)


def test_witness_subframe_is_generated():
    F = make_H(1)
    G = generated_subframe(F, ["b{0,1}"])
    assert find_reduction(G, FORK) is not None
    assert find_reduction(F, G) is None

import random
from fractions import Fraction as F

import pytest

from pabisim.automaton import (
    TAU,
    Automaton,
    Transition,
    canonical_form,
    disjoint_union,
    find_isomorphism,
    is_quotient,
    is_rescaled,
    isomorphic,
    quotient,
    reachable_fraction,
    relabel,
    rescale,
)
from pabisim.bisim import coarsest_partition
from pabisim.dist import SubDist, dirac
from pabisim.errors import ActionMismatch, CoverMismatch, InvalidAutomaton
from pabisim.models import bounded_family, duplicated_loop
from pabisim.pafile import load
from pabisim.partition import Partition

from gen import automaton_corpus

P01 = bounded_family([0, 1])
P0h1 = bounded_family([0, F(1, 2), 1])


def test_validation():
    with pytest.raises(InvalidAutomaton):
        Automaton({1}, [TAU], [Transition(2, TAU, dirac(1))], 1)
    with pytest.raises(InvalidAutomaton):
        Automaton({1}, [TAU], [Transition(1, "a", dirac(1))], 1)
    with pytest.raises(InvalidAutomaton):
        Automaton({1}, [TAU], [Transition(1, TAU, SubDist({1: F(1, 2)}))], 1)
    with pytest.raises(InvalidAutomaton):
        Automaton({1}, [TAU], [Transition(1, TAU, dirac(2))], 1)
    with pytest.raises(InvalidAutomaton):
        Automaton({1}, [TAU], [], 2)


def test_disjoint_union_examples():
    u, i1, i2 = disjoint_union(P01, P01)
    assert len(u.states) == 6 and len(u.transitions) == 8
    assert set(i1.values()).isdisjoint(i2.values())
    assert set(i1.values()) | set(i2.values()) == u.states
    assert u.initial == i1[P01.initial]

    u, _, _ = disjoint_union(P01, P0h1)
    # 4 transitions from P_{0,1} and 5 from P_{0,1/2,1}
    assert (len(u.states), len(u.transitions)) == (6, 9)


def test_disjoint_union_action_mismatch():
    other = Automaton({1}, [TAU, "c"], [], 1)
    with pytest.raises(ActionMismatch):
        disjoint_union(P01, other)


def test_reachable_fraction_examples(corpus):
    assert reachable_fraction(P01) == P01
    junk = load(corpus / "P_0_1_junk.pa").automaton
    r = reachable_fraction(junk)
    assert r.states == {1, 2, 3}
    assert r == P01
    assert reachable_fraction(r) == r


def test_quotient_examples():
    assert isomorphic(quotient(P01, Partition.discrete(P01.states)), P01)
    dup = duplicated_loop()
    q = quotient(dup, Partition([[1], [2, "2'"]]))
    assert q.states == {1, 2}
    assert q.transitions == {Transition(1, TAU, dirac(2)), Transition(2, "a", dirac(2))}
    assert isomorphic(quotient(P01, coarsest_partition(P01, "strong").partition), P01)
    with pytest.raises(CoverMismatch):
        quotient(P01, Partition([[1], [2]]))


def test_is_quotient_examples():
    assert is_quotient(P01, "strong")
    assert not is_quotient(duplicated_loop(), "strong")
    assert is_quotient(Automaton({7}, [TAU], [], 7), "weak")


def test_isomorphism_examples():
    renamed = relabel(P01, {1: "x", 2: "y", 3: "z"})
    iso = find_isomorphism(P01, renamed)
    assert iso is not None and iso.mapping == {1: "x", 2: "y", 3: "z"}
    assert iso.apply(P01) == renamed
    assert find_isomorphism(P01, P0h1) is None
    wider = Automaton(P01.states, [TAU, "a", "b", "c"], P01.transitions, 1)
    assert find_isomorphism(P01, wider) is None


def test_rescale_examples():
    p = Automaton({1, 2, 3}, [TAU, "a"], [
        Transition(1, TAU, SubDist({1: F(1, 2), 2: F(1, 2)})),
        Transition(1, TAU, dirac(1)),
        Transition(2, "a", SubDist({2: F(1, 2), 3: F(1, 2)})),
    ], 1)
    r = rescale(p)
    assert r.transitions == {
        Transition(1, TAU, dirac(2)),
        Transition(1, TAU, dirac(1)),
        Transition(2, "a", SubDist({2: F(1, 2), 3: F(1, 2)})),
    }
    assert is_rescaled(r) and not is_rescaled(p)


def test_rescale_merges_collisions():
    p = Automaton({1, 2}, [TAU], [
        Transition(1, TAU, SubDist({1: F(1, 2), 2: F(1, 2)})),
        Transition(1, TAU, dirac(2)),
    ], 1)
    assert rescale(p).transitions == {Transition(1, TAU, dirac(2))}


CORPUS = automaton_corpus(seed=21, count=120)


def test_rescale_properties_on_corpus():
    for p in CORPUS:
        r = rescale(p)
        assert is_rescaled(r)
        assert rescale(r) == r


def test_isomorphism_on_shuffled_corpus():
    rng = random.Random(22)
    for p in CORPUS:
        states = p.sorted_states()
        perm = states[:]
        rng.shuffle(perm)
        mapping = dict(zip(states, [f"s{v}" for v in perm]))
        q = relabel(p, mapping)
        iso = find_isomorphism(p, q)
        assert iso is not None
        assert iso.apply(p) == q
        assert canonical_form(p) == canonical_form(q)
        back = find_isomorphism(q, p)
        assert back.apply(q) == p


def test_isomorphism_is_an_equivalence_on_corpus():
    forms = [canonical_form(p) for p in CORPUS[:40]]
    for a, fa in zip(CORPUS[:40], forms):
        assert isomorphic(a, a)
        for b, fb in zip(CORPUS[:40], forms):
            assert isomorphic(a, b) == isomorphic(b, a) == (fa == fb)


def test_symmetric_automaton_canonical_form():
    # states 2 and 3 are interchangeable, so individualisation must break the tie
    p = Automaton({1, 2, 3}, [TAU, "a"], [
        Transition(1, TAU, SubDist({2: F(1, 2), 3: F(1, 2)})),
        Transition(2, "a", dirac(3)),
        Transition(3, "a", dirac(2)),
    ], 1)
    q = relabel(p, {1: 1, 2: 3, 3: 2})
    assert canonical_form(p) == canonical_form(q)
    assert canonical_form(p).initial == 1


def test_quotient_idempotent_on_corpus():
    for p in CORPUS[:60]:
        for kind in ("strong", "weak"):
            q = quotient(p, coarsest_partition(p, kind).partition)
            qq = quotient(q, coarsest_partition(q, kind).partition)
            assert isomorphic(q, qq)

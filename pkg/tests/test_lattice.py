import random
from fractions import Fraction as F

import pytest

from pabisim.automaton import TAU, Automaton, Transition, canonical_form, is_rescaled, isomorphic
from pabisim.bisim import bisimilar, coarsest_partition
from pabisim.dist import SubDist, dirac
from pabisim.errors import InvalidQuotientSet, NotBisimilar, NotQuotient, NotRescaled
from pabisim.lattice import (
    QuotientSet,
    align,
    extreme_points,
    join,
    leq,
    meet,
    normal_form,
    strong_normal_form,
    verify_lattice,
    weak_normal_form,
)
from pabisim.lp import in_convex_hull
from pabisim.models import bounded_family, duplicated_loop, weak_bottom, weak_left, weak_right
from pabisim.partition import state_key

from gen import automaton_corpus, convex_padding, quotient_family, weak_padding
from oracles import weak_nf_all_orders

H, T3 = F(1, 2), F(1, 3)
P01 = bounded_family([0, 1])
P0h1 = bounded_family([0, H, 1])
P0t1 = bounded_family([0, T3, 1])
P0th1 = bounded_family([0, T3, H, 1])


def tau_targets(p, s):
    return {t.target for t in p.outgoing(s, TAU)}


def test_align_examples():
    pair = align(P01, P01, "strong")
    assert pair.correspondence == {1: 1, 2: 2, 3: 3}
    assert align(P01, P0h1, "strong").correspondence == {1: 1, 2: 2, 3: 3}
    with pytest.raises(NotBisimilar):
        align(bounded_family([F(1, 4), 1]), P01, "strong")


def test_align_preconditions():
    with pytest.raises(NotQuotient):
        align(duplicated_loop(), duplicated_loop(), "strong")
    loopy = Automaton({1, 2}, [TAU], [Transition(1, TAU, SubDist({1: H, 2: H}))], 1)
    with pytest.raises(NotRescaled):
        align(loopy, loopy, "weak")


def test_meet_examples():
    m = meet(weak_left(), weak_right(), "weak")
    assert tau_targets(m, m.initial) == {SubDist({2: H, 3: H})}
    assert isomorphic(m, weak_bottom())
    for p in (P01, P0h1):
        assert isomorphic(meet(p, p, "strong"), p)
    assert isomorphic(meet(P0h1, P0t1, "strong"), P01)


def test_join_examples():
    assert isomorphic(join(P01, P0h1, "strong"), P0h1)
    assert isomorphic(join(P0h1, P0h1, "strong"), P0h1)
    j = join(weak_left(), weak_right(), "weak")
    assert tau_targets(j, j.initial) == {dirac(3), SubDist({2: H, 3: H}), SubDist({2: F(1, 4), 3: F(3, 4)})}


def test_leq_examples():
    assert leq(P01, P0h1, "strong")
    assert not leq(P0h1, P01, "strong")
    assert leq(meet(P0h1, P0t1, "strong"), P0h1, "strong")


def test_results_are_canonical():
    m = meet(P0h1, P0t1, "strong")
    assert m == canonical_form(m) and m.initial == 1


def test_extreme_point_examples():
    d2, d3, mid = dirac(2), dirac(3), SubDist({2: H, 3: H})
    assert set(extreme_points([d2, d3, mid])) == {d2, d3}
    assert extreme_points([mid]) == [mid]
    # square corners in the (B2, B3) plane; B4 takes the remaining mass
    square = [SubDist({2: a, 3: b, 4: 1 - a - b}) for a in (F(1, 4), H) for b in (F(1, 4), H)]
    assert set(extreme_points(square)) == set(square)
    with pytest.raises(ValueError):
        extreme_points([])


def test_extreme_points_generate_and_are_needed():
    rng = random.Random(51)
    for _ in range(150):
        pts = [SubDist({k: F(x, 12) for k, x in zip((2, 3, 4), parts)})
               for parts in (sorted(rng.sample(range(13), 2)) for _ in range(rng.randint(1, 6)))
               for parts in [[parts[0], parts[1] - parts[0], 12 - parts[1]]]]
        pts = list(dict.fromkeys(pts))
        ext = extreme_points(pts)
        vec = lambda d: [d[k] for k in (2, 3, 4)]
        for p in pts:
            assert in_convex_hull(vec(p), [vec(e) for e in ext]) is not None
        for e in ext:
            rest = [vec(x) for x in ext if x != e]
            assert not rest or in_convex_hull(vec(e), rest) is None


def test_strong_normal_form_examples():
    assert strong_normal_form(P0h1) == canonical_form(P01)
    assert normal_form(P0th1, "strong") == canonical_form(P01)
    nf = strong_normal_form(P0h1)
    assert strong_normal_form(nf) == nf
    merged = strong_normal_form(duplicated_loop())
    assert len(merged.states) == 2


def test_weak_normal_form_examples():
    nf = weak_normal_form(weak_left())
    assert isomorphic(nf, weak_bottom())
    assert weak_normal_form(nf) == nf
    assert normal_form(weak_right(), "weak") == nf
    loops = Automaton({1, 2}, [TAU, "a"], [Transition(1, TAU, dirac(1)), Transition(1, "a", dirac(2))], 1)
    assert Transition(1, TAU, dirac(1)) not in weak_normal_form(loops).transitions


CORPUS = automaton_corpus(seed=52, count=120)


@pytest.mark.parametrize("kind", ["strong", "weak"])
def test_normal_form_properties_on_corpus(kind):
    rng = random.Random(53)
    for p in CORPUS:
        nf = normal_form(p, kind)
        assert bisimilar(p, nf, kind)
        assert normal_form(nf, kind) == nf
        assert len(nf.transitions) <= len(p.transitions)
        pad = convex_padding(rng, nf, 2) if kind == "strong" else weak_padding(rng, nf, 2)
        padded = nf.with_transitions(nf.transitions | set(pad))
        assert isomorphic(normal_form(padded, kind), nf)
        if kind == "weak":
            assert is_rescaled(nf)


def test_weak_nf_order_independence():
    for p in CORPUS:
        if len(p.transitions) > 6:
            continue
        orders = weak_nf_all_orders(p, coarsest_partition(p, "weak").partition)
        assert orders == {weak_normal_form(p)}


@pytest.mark.parametrize("kind", ["strong", "weak"])
def test_quotient_family_laws(kind):
    rng = random.Random(54 if kind == "strong" else 55)
    for _ in range(15):
        nf, members = quotient_family(rng, kind)
        for a in members:
            assert leq(nf, a, kind)
            assert isomorphic(normal_form(a, kind), nf)
            for b in members:
                m, j = meet(a, b, kind), join(a, b, kind)
                assert bisimilar(m, a, kind) and bisimilar(j, a, kind)
                assert leq(m, a, kind) and leq(m, b, kind)
                assert leq(a, j, kind) and leq(b, j, kind)
                for c in members:
                    if leq(c, a, kind) and leq(c, b, kind):
                        assert leq(c, m, kind)
                    if leq(a, c, kind) and leq(b, c, kind):
                        assert leq(j, c, kind)


# --- verify_lattice ------------------------------------------------------------


def test_verify_lattice_bounded_family():
    qs = QuotientSet([P01, P0t1, P0h1, P0th1], "strong", ["P01", "P0t1", "P0h1", "P0th1"])
    rep = verify_lattice(qs)
    assert rep.ok and rep.is_lattice
    assert (rep.bottom, rep.top) == ("P01", "P0th1")
    assert rep.minimal == ["P01"]


def test_verify_lattice_singleton():
    rep = verify_lattice(QuotientSet([normal_form(P0h1, "strong")], "strong"))
    assert rep.ok and rep.is_lattice
    assert rep.bottom == rep.top == "#1"


def test_verify_lattice_missing_meet():
    rep = verify_lattice(QuotientSet([P0t1, P0h1], "strong", ["P0t1", "P0h1"]))
    # the join P_{0,1/3,1/2,1} is absent as well
    assert not rep.meet_closed and not rep.join_closed
    assert [(op, a, b) for op, a, b, _ in rep.missing] == [("meet", "P0t1", "P0h1"), ("join", "P0t1", "P0h1")]
    assert isomorphic(rep.missing[0][3], P01)
    assert isomorphic(rep.missing[1][3], P0th1)
    assert not rep.ok
    assert "missing-meet\tP0t1\tP0h1" in rep.rows()


def test_verify_lattice_rejects_invalid_sets():
    with pytest.raises(InvalidQuotientSet):
        verify_lattice(QuotientSet([], "strong"))
    with pytest.raises(InvalidQuotientSet):
        verify_lattice(QuotientSet([P01, bounded_family([F(1, 4), 1])], "strong"))
    with pytest.raises(InvalidQuotientSet):
        verify_lattice(QuotientSet([duplicated_loop()], "strong"))

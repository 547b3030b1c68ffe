"""Small automata used throughout the docs, corpus and tests.

The bounded family is given in full by its definition. The weak example and
the non-bisimilar pair are reconstructions: only the transitions their
descriptions mention are fixed, and the extra ``a``/``b`` loops keep states
1, 2 and 3 pairwise distinguishable.
"""

from fractions import Fraction

from .automaton import TAU, Automaton, Transition
from .dist import dirac, make_subdist

ACTIONS = (TAU, "a", "b")


def bounded_family(coefficients) -> Automaton:
    """``P_A``: state 1 moves by tau to ``c*D2 + (1-c)*D3`` for each c in A."""
    trs = [Transition(2, "a", dirac(2)), Transition(3, "b", dirac(3))]
    for c in coefficients:
        c = Fraction(c)
        if not 0 <= c <= 1:
            raise ValueError(f"coefficient {c} outside [0, 1]")
        trs.append(Transition(1, TAU, make_subdist([(2, c), (3, 1 - c)])))
    return Automaton({1, 2, 3}, ACTIONS, trs, 1)


def _weak_base():
    return [
        Transition(2, TAU, dirac(3)),
        Transition(2, "a", dirac(2)),
        Transition(3, "b", dirac(3)),
    ]


def weak_left() -> Automaton:
    half = make_subdist([(2, Fraction(1, 2)), (3, Fraction(1, 2))])
    quarter = make_subdist([(2, Fraction(1, 4)), (3, Fraction(3, 4))])
    trs = _weak_base() + [Transition(1, TAU, half), Transition(1, TAU, quarter)]
    return Automaton({1, 2, 3}, ACTIONS, trs, 1)


def weak_right() -> Automaton:
    half = make_subdist([(2, Fraction(1, 2)), (3, Fraction(1, 2))])
    trs = _weak_base() + [Transition(1, TAU, dirac(3)), Transition(1, TAU, half)]
    return Automaton({1, 2, 3}, ACTIONS, trs, 1)


def weak_bottom() -> Automaton:
    half = make_subdist([(2, Fraction(1, 2)), (3, Fraction(1, 2))])
    return Automaton({1, 2, 3}, ACTIONS, _weak_base() + [Transition(1, TAU, half)], 1)


def nonbisimilar_left() -> Automaton:
    """Realises ``3/4 D2 + 1/4 D3`` from state 1 (reconstruction)."""
    return bounded_family([0, 1])


def nonbisimilar_right() -> Automaton:
    """Cannot realise ``3/4 D2 + 1/4 D3`` from state 1 (reconstruction)."""
    return bounded_family([0, Fraction(1, 2)])


def duplicated_loop() -> Automaton:
    """Two states with identical ``a``-self-loops reached from the initial state."""
    trs = [
        Transition(1, TAU, make_subdist([(2, Fraction(1, 2)), ("2'", Fraction(1, 2))])),
        Transition(2, "a", dirac(2)),
        Transition("2'", "a", dirac("2'")),
    ]
    return Automaton({1, 2, "2'"}, ACTIONS, trs, 1)

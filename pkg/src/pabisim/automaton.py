"""Finite probabilistic automata and their structural transformations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .dist import SubDist, dirac, minus, project, scale
from .errors import ActionMismatch, InvalidAutomaton
from .partition import Partition, state_key

TAU = "tau"


def action_key(a):
    return (0, "") if a == TAU else (1, a)


class Transition(NamedTuple):
    source: object
    action: str
    target: SubDist

    def sort_key(self):
        return (state_key(self.source), action_key(self.action), self.target.sort_key())

    def __repr__(self):
        return f"({self.source}, {self.action}, {self.target!r})"


def transition_order(transitions):
    return sorted(transitions, key=Transition.sort_key)


class Automaton:
    """A finite PA ``(S, Act, T, s0)`` with ``tau`` as the only hidden action."""

    __slots__ = ("states", "actions", "transitions", "initial", "_by_source")

    def __init__(self, states, actions, transitions, initial):
        self.states = frozenset(states)
        acts = frozenset(actions) | {TAU}
        self.actions = tuple(sorted(acts, key=action_key))
        trs = set()
        for t in transitions:
            t = t if isinstance(t, Transition) else Transition(*t)
            if t.source not in self.states:
                raise InvalidAutomaton(f"transition source {t.source!r} is not a state")
            if t.action not in acts:
                raise InvalidAutomaton(f"undeclared action {t.action!r}")
            if not t.target.is_dist():
                raise InvalidAutomaton(f"target of {t!r} has mass {t.target.mass}")
            if not t.target.support() <= self.states:
                raise InvalidAutomaton(f"target of {t!r} leaves the state set")
            trs.add(t)
        self.transitions = frozenset(trs)
        if initial not in self.states:
            raise InvalidAutomaton(f"initial state {initial!r} is not a state")
        self.initial = initial
        by_source = {}
        for t in transition_order(self.transitions):
            by_source.setdefault(t.source, []).append(t)
        self._by_source = by_source

    def outgoing(self, s, action=None):
        ts = self._by_source.get(s, ())
        if action is None:
            return list(ts)
        return [t for t in ts if t.action == action]

    def enabled(self, s):
        return frozenset(t.action for t in self._by_source.get(s, ()))

    def sorted_states(self):
        return sorted(self.states, key=state_key)

    def sorted_transitions(self):
        return transition_order(self.transitions)

    def with_transitions(self, transitions):
        return Automaton(self.states, self.actions, transitions, self.initial)

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return (
            self.states == other.states
            and self.actions == other.actions
            and self.transitions == other.transitions
            and self.initial == other.initial
        )

    def __hash__(self):
        return hash((self.states, self.actions, self.transitions, self.initial))

    def __repr__(self):
        return (
            f"Automaton(states={self.sorted_states()}, actions={list(self.actions)}, "
            f"init={self.initial!r}, transitions={self.sorted_transitions()})"
        )


def relabel(p: Automaton, mapping: dict) -> Automaton:
    """Push ``p`` through an injective state renaming."""
    trs = [
        Transition(mapping[t.source], t.action, SubDist({mapping[s]: w for s, w in t.target.items()}))
        for t in p.transitions
    ]
    return Automaton((mapping[s] for s in p.states), p.actions, trs, mapping[p.initial])


def disjoint_union(p1: Automaton, p2: Automaton):
    """Tagged union on fresh ids ``1..|S1|+|S2|``.

    Returns ``(union, inj1, inj2)`` where the injections map original states to
    union states. The union's initial state is ``p1``'s image.
    """
    if p1.actions != p2.actions:
        raise ActionMismatch(f"action sets differ: {list(p1.actions)} vs {list(p2.actions)}")
    inj1 = {s: i for i, s in enumerate(p1.sorted_states(), start=1)}
    off = len(inj1)
    inj2 = {s: off + i for i, s in enumerate(p2.sorted_states(), start=1)}
    a = relabel(p1, inj1)
    b = relabel(p2, inj2)
    union = Automaton(a.states | b.states, p1.actions, a.transitions | b.transitions, a.initial)
    return union, inj1, inj2


def reachable_states(p: Automaton, start=None):
    start = p.initial if start is None else start
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for t in p.outgoing(s):
            for v in t.target:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return frozenset(seen)


def reachable_fraction(p: Automaton) -> Automaton:
    keep = reachable_states(p)
    return Automaton(keep, p.actions, (t for t in p.transitions if t.source in keep), p.initial)


def quotient(p: Automaton, r: Partition) -> Automaton:
    """States become block ids; class-level duplicate transitions collapse."""
    r.check_covers(p.states)
    trs = {Transition(r.block_of(t.source), t.action, project(t.target, r)) for t in p.transitions}
    return Automaton(r.block_ids(), p.actions, trs, r.block_of(p.initial))


def is_rescaled(p: Automaton) -> bool:
    return all(t.target[t.source] in (0, 1) for t in p.transitions if t.action == TAU)


def rescale(p: Automaton) -> Automaton:
    trs = set()
    for t in p.transitions:
        loop = t.target[t.source]
        if t.action != TAU or loop == 0 or loop == 1:
            trs.add(t)
        else:
            trs.add(Transition(t.source, TAU, scale(1 / (1 - loop), minus(t.target, t.source))))
    return p.with_transitions(trs)


def is_quotient(p: Automaton, kind) -> bool:
    """No two distinct states of ``p`` are ``kind``-bisimilar."""
    from .bisim import coarsest_partition

    return coarsest_partition(p, kind).partition.is_discrete()


# --- canonical labelling and isomorphism -------------------------------------


def _refine(states, initial, transitions_of, colors):
    """Iterated signature refinement; colours are ranks, hence iso-invariant."""
    while True:
        sigs = {}
        for s in states:
            outs = set()
            for t in transitions_of(s):
                agg = {}
                for v, w in t.target.items():
                    agg[colors[v]] = agg.get(colors[v], Fraction(0)) + w
                outs.add((action_key(t.action), tuple(sorted(agg.items()))))
            sigs[s] = (colors[s], tuple(sorted(outs)))
        ranks = {sig: i for i, sig in enumerate(sorted(set(sigs.values())))}
        new = {s: ranks[sigs[s]] for s in states}
        if len(ranks) == len(set(colors[s] for s in states)):
            return new
        colors = new


def _certificate(p: Automaton, order):
    label = {s: i for i, s in enumerate(order, start=1)}
    trs = sorted(
        (label[t.source], action_key(t.action), tuple(sorted((label[v], w) for v, w in t.target.items())))
        for t in p.transitions
    )
    return (len(order), tuple(trs)), label


def canonical_labelling(p: Automaton) -> dict:
    """Map states to ``1..n`` (initial is 1) invariantly under isomorphism.

    Colour refinement makes quotients discrete immediately; symmetric inputs
    fall back to individualisation with a lexicographically least certificate.
    """
    states = p.sorted_states()
    init_colors = {s: (0 if s == p.initial else 1) for s in states}
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(states, p.initial, p.outgoing, colors)
        cells = {}
        for s in states:
            cells.setdefault(colors[s], []).append(s)
        if len(cells) == len(states):
            order = sorted(states, key=lambda s: colors[s])
            cert, label = _certificate(p, order)
            if best is None or cert < best[0]:
                best = (cert, label)
            return
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        for v in cells[target]:
            ind = {s: 2 * c + 1 for s, c in colors.items()}
            ind[v] = 2 * colors[v]
            search(ind)

    search(init_colors)
    return best[1]


def canonical_form(p: Automaton) -> Automaton:
    return relabel(p, canonical_labelling(p))


@dataclass(frozen=True)
class Isomorphism:
    mapping: dict

    def apply(self, p: Automaton) -> Automaton:
        return relabel(p, self.mapping)


def find_isomorphism(p1: Automaton, p2: Automaton) -> Optional[Isomorphism]:
    if (
        p1.actions != p2.actions
        or len(p1.states) != len(p2.states)
        or len(p1.transitions) != len(p2.transitions)
    ):
        return None
    l1 = canonical_labelling(p1)
    l2 = canonical_labelling(p2)
    if relabel(p1, l1) != relabel(p2, l2):
        return None
    back = {v: k for k, v in l2.items()}
    mapping = {s: back[l1[s]] for s in p1.sorted_states()}
    return Isomorphism(mapping)


def isomorphic(p1: Automaton, p2: Automaton) -> bool:
    return find_isomorphism(p1, p2) is not None


def self_loop(s, action=TAU) -> Transition:
    return Transition(s, action, dirac(s))

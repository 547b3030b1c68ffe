"""Matching of class-level target distributions by combined transitions.

``strong_match`` asks whether a target lies in the convex hull of the
projected one-step transitions; ``weak_match`` asks whether some randomized
scheduler doing ``tau* a tau*`` (or just ``tau*``) and then stopping ends in a
distribution with the target's block masses. The weak question is answered by
an exact LP over expected transition frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .automaton import TAU, Automaton
from .dist import SubDist, project
from .lp import LinearSystem, feasible, in_convex_hull
from .partition import Partition, state_key

EPSILON = None  # label of the empty (internal) trace

ZERO = Fraction(0)


def class_project(m: SubDist, r: Partition) -> SubDist:
    return project(m, r)


@dataclass(frozen=True)
class TransitionQuery:
    automaton: Automaton
    source: object
    label: Optional[str]
    partition: Partition
    target: SubDist

    def __post_init__(self):
        if self.source not in self.automaton.states:
            raise ValueError(f"source {self.source!r} is not a state")
        for b in self.target:
            if not self.partition.covers(b) or self.partition.block_of(b) != b:
                raise ValueError(f"target key {b!r} is not a block id of the partition")


@dataclass(frozen=True)
class MatchResult:
    matched: bool
    witness: Optional[dict] = field(default=None)

    def __bool__(self):
        return self.matched


def _vector(d: SubDist, keys):
    return [d[k] for k in keys]


def strong_match(q: TransitionQuery) -> MatchResult:
    """Hull membership of the target among same-label projected transitions."""
    if q.label is EPSILON:
        raise ValueError("strong matching needs an action label")
    trs = q.automaton.outgoing(q.source, q.label)
    if not trs:
        return MatchResult(False)
    projections = [project(t.target, q.partition) for t in trs]
    for t, pr in zip(trs, projections):
        if pr == q.target:
            return MatchResult(True, {tt: (Fraction(1) if tt is t else ZERO) for tt in trs})
    keys = sorted(set(q.target).union(*projections), key=state_key)
    coeffs = in_convex_hull(_vector(q.target, keys), [_vector(pr, keys) for pr in projections])
    if coeffs is None:
        return MatchResult(False)
    return MatchResult(True, dict(zip(trs, coeffs)))


# --- weak combined transitions ------------------------------------------------


@dataclass
class FlowSystem:
    """LP for a weak query plus the bookkeeping to read a witness back."""

    system: LinearSystem
    final_phase: int
    nodes: list  # reachable (state, phase) pairs
    moves: list  # (transition, phase) pairs with a frequency variable

    def stop_var(self, s):
        return ("stop", s)

    @staticmethod
    def move_var(t, phase):
        return ("x", phase, t)


def _moves_from(p: Automaton, s, phase, label):
    """Transitions usable in ``phase`` and the phase each one leads to."""
    out = []
    for t in p.outgoing(s):
        if t.action == TAU:
            out.append((t, phase))
        elif label is not EPSILON and t.action == label and phase == 0:
            out.append((t, 1))
    return out


def weak_flow_system(q: TransitionQuery) -> FlowSystem:
    p = q.automaton
    final = 0 if q.label is EPSILON or q.label == TAU else 1
    label = EPSILON if final == 0 else q.label

    start = (q.source, 0)
    seen = {start}
    order = [start]
    i = 0
    while i < len(order):
        s, ph = order[i]
        i += 1
        for t, nph in _moves_from(p, s, ph, label):
            for v in t.target:
                if (v, nph) not in seen:
                    seen.add((v, nph))
                    order.append((v, nph))
    nodes = sorted(order, key=lambda n: (n[1], state_key(n[0])))

    sys = LinearSystem()
    moves = []
    for s, ph in nodes:
        for t, nph in _moves_from(p, s, ph, label):
            moves.append((t, ph, nph))
            sys.add_variable(FlowSystem.move_var(t, ph))
    for s, ph in nodes:
        if ph == final:
            sys.add_variable(("stop", s))

    inflow = {n: {} for n in nodes}
    for t, ph, nph in moves:
        var = FlowSystem.move_var(t, ph)
        for v, w in t.target.items():
            inflow[(v, nph)][var] = inflow[(v, nph)].get(var, ZERO) + w

    for node in nodes:
        s, ph = node
        row = {}
        for t, _ in _moves_from(p, s, ph, label):
            row[FlowSystem.move_var(t, ph)] = Fraction(1)
        if ph == final:
            row[("stop", s)] = Fraction(1)
        for var, w in inflow[node].items():
            row[var] = row.get(var, ZERO) - w
        sys.add_equality(row, 1 if node == start else 0)

    for bid in q.partition.block_ids():
        members = [s for s, ph in nodes if ph == final and q.partition.block_of(s) == bid]
        want = q.target[bid]
        if not members and want == 0:
            continue
        sys.add_equality({("stop", s): 1 for s in members}, want)

    return FlowSystem(sys, final, nodes, [(t, ph) for t, ph, _ in moves])


def weak_match(q: TransitionQuery) -> MatchResult:
    if q.target.mass != 1:
        return MatchResult(False)
    fs = weak_flow_system(q)
    res = feasible(fs.system)
    if not res:
        return MatchResult(False)
    return MatchResult(True, {k: v for k, v in res.witness.items() if v})

"""Coarsest strong/weak probabilistic bisimulation by partition refinement."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from .automaton import TAU, Automaton, disjoint_union
from .dist import project
from .partition import Partition, state_key
from .semantics import EPSILON, TransitionQuery, strong_match, weak_match


class BisimKind(enum.Enum):
    STRONG = "strong"
    WEAK = "weak"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())

    def __str__(self):
        return self.value


@dataclass
class BisimReport:
    partition: Partition
    iterations: int
    splitter_log: list = field(default_factory=list)  # (block id, (x, y), action)


class _Matcher:
    """Memoised match queries against one fixed partition."""

    def __init__(self, p: Automaton, kind: BisimKind, partition: Partition):
        self.p = p
        self.kind = kind
        self.partition = partition
        self.cache = {}

    def can_match(self, y, action, target) -> bool:
        key = (y, action, target)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        if self.kind is BisimKind.STRONG:
            ok = strong_match(TransitionQuery(self.p, y, action, self.partition, target)).matched
        else:
            label = EPSILON if action == TAU else action
            ok = weak_match(TransitionQuery(self.p, y, label, self.partition, target)).matched
        self.cache[key] = ok
        return ok

    def answers(self, y, t) -> bool:
        """Can ``y`` answer transition ``t`` up to the current partition?"""
        target = project(t.target, self.partition)
        if self.kind is BisimKind.WEAK and t.action == TAU and target.is_dirac(self.partition.block_of(y)):
            return True  # the empty weak move
        return self.can_match(y, t.action, target)

    def failing(self, x, y):
        """First transition of ``x`` that ``y`` cannot answer, else None."""
        return next((t for t in self.p.outgoing(x) if not self.answers(y, t)), None)


def _weak_visible(p: Automaton):
    """External actions each state can eventually perform via tau-paths."""
    direct = {s: frozenset(a for a in p.enabled(s) if a != TAU) for s in p.states}
    succ = {s: set() for s in p.states}
    for t in p.transitions:
        if t.action == TAU:
            succ[t.source].update(t.target)
    result = {}
    for s in p.states:
        seen = {s}
        stack = [s]
        acts = set()
        while stack:
            u = stack.pop()
            acts |= direct[u]
            for v in succ[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        result[s] = frozenset(acts)
    return result


def _initial_partition(p: Automaton, kind: BisimKind) -> Partition:
    if kind is BisimKind.STRONG:
        sig = {s: p.enabled(s) for s in p.states}
    else:
        sig = _weak_visible(p)
    groups = {}
    for s in p.sorted_states():
        groups.setdefault(sig[s], []).append(s)
    return Partition(groups.values())


def _split(block, t, matcher):
    """Separate the states that can answer ``t`` from those that cannot.

    Answering is closed under bisimilarity, so no bisimilar pair is cut.
    """
    yes, no = [], []
    for y in sorted(block, key=state_key):
        (yes if matcher.answers(y, t) else no).append(y)
    return yes, no


def is_bisimulation(p: Automaton, partition: Partition, kind) -> bool:
    """Replay the matching condition over every same-block pair."""
    kind = BisimKind.parse(kind)
    m = _Matcher(p, kind, partition)
    for block in partition:
        members = sorted(block, key=state_key)
        for x in members:
            for y in members:
                if x != y and m.failing(x, y) is not None:
                    return False
    return True


def coarsest_partition(p: Automaton, kind) -> BisimReport:
    return _coarsest(p, BisimKind.parse(kind))


# automata are immutable, so results can be shared between callers
@lru_cache(maxsize=4096)
def _coarsest(p: Automaton, kind: BisimKind) -> BisimReport:
    partition = _initial_partition(p, kind)
    log = []
    rounds = 0
    while True:
        rounds += 1
        matcher = _Matcher(p, kind, partition)
        new_blocks = []
        changed = False
        for bid, block in partition.blocks.items():
            if len(block) == 1:
                new_blocks.append(block)
                continue
            members = sorted(block, key=state_key)
            split = None
            for x in members:
                for y in members:
                    if y == x:
                        continue
                    t = matcher.failing(x, y)
                    if t is not None:
                        log.append((bid, (x, y), t.action))
                        split = _split(block, t, matcher)
                        break
                if split:
                    break
            if split:
                changed = True
                new_blocks.extend(part for part in split if part)
            else:
                new_blocks.append(block)
        if not changed:
            return BisimReport(partition, rounds, log)
        partition = Partition(new_blocks)


@dataclass
class BisimilarResult:
    bisimilar: bool
    partition: Partition
    union: Automaton
    injections: tuple

    def __bool__(self):
        return self.bisimilar


def bisimilar(p1: Automaton, p2: Automaton, kind) -> BisimilarResult:
    return _bisimilar(p1, p2, BisimKind.parse(kind))


@lru_cache(maxsize=4096)
def _bisimilar(p1: Automaton, p2: Automaton, kind: BisimKind) -> BisimilarResult:
    union, inj1, inj2 = disjoint_union(p1, p2)
    report = coarsest_partition(union, kind)
    same = report.partition.related(inj1[p1.initial], inj2[p2.initial])
    return BisimilarResult(same, report.partition, union, (inj1, inj2))

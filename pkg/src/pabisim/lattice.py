"""Meet, join and order on bisimilar quotients, and the normal forms.

Two bisimilar quotients are compared inside the coarsest bisimulation of
their disjoint union: states become blocks and transitions become class-level
triples ``(block, action, block distribution)``. Meet and join are
intersection and union of those sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .automaton import (
    TAU,
    Automaton,
    Transition,
    canonical_form,
    find_isomorphism,
    is_rescaled,
    quotient,
    reachable_fraction,
    rescale,
    transition_order,
)
from .bisim import BisimKind, bisimilar, coarsest_partition
from .dist import SubDist, project
from .errors import InvalidQuotientSet, MeetNotBisimilar, NotBisimilar, NotQuotient, NotRescaled
from .lp import in_convex_hull
from .partition import Partition, state_key
from .semantics import EPSILON, TransitionQuery, weak_match


@dataclass
class AlignedPair:
    a1: Automaton
    a2: Automaton
    kind: BisimKind
    partition: Partition  # coarsest bisimulation on the disjoint union
    injections: tuple
    correspondence: dict  # p1 state -> p2 state, for blocks holding both

    def blocks_of(self, which):
        inj = self.injections[which]
        return {self.partition.block_of(inj[s]) for s in (self.a1, self.a2)[which].states}

    def class_transitions(self, which):
        p = (self.a1, self.a2)[which]
        inj = self.injections[which]
        r = self.partition
        return {
            Transition(
                r.block_of(inj[t.source]),
                t.action,
                project(SubDist({inj[s]: w for s, w in t.target.items()}), r),
            )
            for t in p.transitions
        }

    @property
    def initial_block(self):
        return self.partition.block_of(self.injections[0][self.a1.initial])


def _check_member(p: Automaton, kind: BisimKind, which: str):
    from .automaton import is_quotient

    if kind is BisimKind.WEAK and not is_rescaled(p):
        raise NotRescaled(f"{which} automaton is not rescaled")
    if not is_quotient(p, kind):
        raise NotQuotient(f"{which} automaton is not a {kind} quotient")


def align(p1: Automaton, p2: Automaton, kind, *, check=True) -> AlignedPair:
    kind = BisimKind.parse(kind)
    if check:
        _check_member(p1, kind, "first")
        _check_member(p2, kind, "second")
    res = bisimilar(p1, p2, kind)
    if not res.bisimilar:
        raise NotBisimilar(f"automata are not {kind}ly bisimilar")
    inj1, inj2 = res.injections
    r = res.partition
    back2 = {r.block_of(u): s for s, u in inj2.items()}
    corr = {}
    for s, u in inj1.items():
        partner = back2.get(r.block_of(u))
        if partner is not None:
            corr[s] = partner
    return AlignedPair(p1, p2, kind, r, (inj1, inj2), corr)


def _assemble(states, transitions, initial, actions):
    return canonical_form(Automaton(states, actions, transitions, initial))


def _verified(result, pair: AlignedPair, op):
    if not bisimilar(result, pair.a1, pair.kind).bisimilar:
        raise MeetNotBisimilar(f"{op} is not {pair.kind}ly bisimilar to its arguments")
    return result


def meet(p1: Automaton, p2: Automaton, kind, *, check=True) -> Automaton:
    pair = align(p1, p2, kind, check=check)
    states = pair.blocks_of(0) & pair.blocks_of(1)
    trs = pair.class_transitions(0) & pair.class_transitions(1)
    result = _assemble(states, trs, pair.initial_block, p1.actions)
    return _verified(result, pair, "meet")


def join(p1: Automaton, p2: Automaton, kind, *, check=True) -> Automaton:
    pair = align(p1, p2, kind, check=check)
    states = pair.blocks_of(0) | pair.blocks_of(1)
    trs = pair.class_transitions(0) | pair.class_transitions(1)
    result = _assemble(states, trs, pair.initial_block, p1.actions)
    return _verified(result, pair, "join")


def leq(p1: Automaton, p2: Automaton, kind, *, check=True) -> bool:
    pair = align(p1, p2, kind, check=check)
    return pair.blocks_of(0) <= pair.blocks_of(1) and pair.class_transitions(0) <= pair.class_transitions(1)


# --- extreme points and normal forms -----------------------------------------


def extreme_points(points):
    """Points of a finite set that are not convex combinations of the others."""
    pts = list(dict.fromkeys(points))
    if not pts:
        raise ValueError("extreme_points needs a nonempty set")
    keys = sorted(set().union(*(set(p) for p in pts)), key=state_key)
    vecs = [[p[k] for k in keys] for p in pts]
    out = []
    for i, p in enumerate(pts):
        others = vecs[:i] + vecs[i + 1:]
        if not others or in_convex_hull(vecs[i], others) is None:
            out.append(p)
    return out


def strong_normal_form(p: Automaton) -> Automaton:
    q = reachable_fraction(quotient(p, coarsest_partition(p, BisimKind.STRONG).partition))
    groups = {}
    for t in q.transitions:
        groups.setdefault((t.source, t.action), []).append(t)
    keep = []
    for (s, a), trs in groups.items():
        ext = set(extreme_points([t.target for t in trs]))
        keep.extend(t for t in trs if t.target in ext)
    return canonical_form(q.with_transitions(keep))


def is_redundant(p: Automaton, t: Transition) -> bool:
    """Whether ``t`` is mimicked by a weak move that does not use ``t``."""
    if t.action == TAU and t.target.is_dirac(t.source):
        return True
    rest = p.with_transitions(p.transitions - {t})
    discrete = Partition.discrete(p.states)
    label = EPSILON if t.action == TAU else t.action
    return weak_match(TransitionQuery(rest, t.source, label, discrete, t.target)).matched


def eliminate_redundant(p: Automaton) -> Automaton:
    """Greedy deletion in canonical transition order with a full re-scan."""
    while True:
        for t in transition_order(p.transitions):
            if is_redundant(p, t):
                p = p.with_transitions(p.transitions - {t})
                break
        else:
            return p


def weak_normal_form(p: Automaton) -> Automaton:
    q = quotient(p, coarsest_partition(p, BisimKind.WEAK).partition)
    q = reachable_fraction(rescale(q))
    return canonical_form(eliminate_redundant(q))


def normal_form(p: Automaton, kind) -> Automaton:
    kind = BisimKind.parse(kind)
    if kind is BisimKind.STRONG:
        return strong_normal_form(p)
    return weak_normal_form(p)


# --- finite quotient sets -----------------------------------------------------


def isomorphic(a: Automaton, b: Automaton) -> bool:
    return find_isomorphism(a, b) is not None


@dataclass
class QuotientSet:
    members: list
    kind: BisimKind
    names: Optional[list] = None

    def __post_init__(self):
        self.kind = BisimKind.parse(self.kind)
        if self.names is None:
            self.names = [f"#{i + 1}" for i in range(len(self.members))]

    def validate(self):
        if not self.members:
            raise InvalidQuotientSet("quotient set is empty")
        for name, m in zip(self.names, self.members):
            if self.kind is BisimKind.WEAK and not is_rescaled(m):
                raise InvalidQuotientSet(f"{name} is not rescaled")
            from .automaton import is_quotient

            if not is_quotient(m, self.kind):
                raise InvalidQuotientSet(f"{name} is not a {self.kind} quotient")
        first = self.members[0]
        for name, m in zip(self.names[1:], self.members[1:]):
            if not bisimilar(first, m, self.kind).bisimilar:
                raise InvalidQuotientSet(f"{name} is not {self.kind}ly bisimilar to {self.names[0]}")

    def index_of(self, p: Automaton) -> Optional[int]:
        for i, m in enumerate(self.members):
            if isomorphic(m, p):
                return i
        return None


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class LatticeReport:
    kind: BisimKind
    names: list
    checks: list = field(default_factory=list)
    meet_closed: bool = True
    join_closed: bool = True
    missing: list = field(default_factory=list)  # (op, a, b, automaton)
    minimal: list = field(default_factory=list)
    bottom: Optional[str] = None
    top: Optional[str] = None
    order: list = field(default_factory=list)  # (a, b) with a <= b, a != b

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def is_lattice(self):
        return self.meet_closed and self.join_closed

    def add(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))

    def rows(self):
        """Tab-delimited report lines: check, PASS/FAIL, detail."""
        out = [("kind", str(self.kind), ""), ("members", str(len(self.names)), " ".join(self.names))]
        for c in self.checks:
            out.append((c.name, "PASS" if c.ok else "FAIL", c.detail))
        out.append(("bottom", self.bottom or "-", ""))
        out.append(("top", self.top or "-", ""))
        for op, a, b, _ in self.missing:
            out.append((f"missing-{op}", a, b))
        return ["\t".join(r) for r in out]


def verify_lattice(qs: QuotientSet, *, check_laws=True) -> LatticeReport:
    qs.validate()
    kind = qs.kind
    members = qs.members
    names = qs.names
    n = len(members)
    rep = LatticeReport(kind, list(names))

    le = [[leq(members[i], members[j], kind, check=False) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and le[i][j]:
                rep.order.append((names[i], names[j]))

    meets = {}
    joins = {}
    preserved = True
    for i, j in combinations(range(n), 2):
        m = meet(members[i], members[j], kind, check=False)
        jn = join(members[i], members[j], kind, check=False)
        preserved &= all(bisimilar(r, members[k], kind).bisimilar for r in (m, jn) for k in (i, j))
        meets[i, j] = meets[j, i] = m
        joins[i, j] = joins[j, i] = jn
        mi = qs.index_of(m)
        ji = qs.index_of(jn)
        if mi is None:
            rep.meet_closed = False
            rep.missing.append(("meet", names[i], names[j], m))
        if ji is None:
            rep.join_closed = False
            rep.missing.append(("join", names[i], names[j], jn))
    rep.add("bisimilar", preserved, "pairwise meets and joins are bisimilar to their arguments")
    rep.add("meet-closed", rep.meet_closed, "" if rep.meet_closed else "some pairwise meets are absent")
    rep.add("join-closed", rep.join_closed, "" if rep.join_closed else "some pairwise joins are absent")

    memo = {}

    def m_(a, b):
        if ("meet", a, b) not in memo:
            memo["meet", a, b] = meet(a, b, kind, check=False)
        return memo["meet", a, b]

    def j_(a, b):
        if ("join", a, b) not in memo:
            memo["join", a, b] = join(a, b, kind, check=False)
        return memo["join", a, b]

    if check_laws:
        bounds = comm = absorb = idem = True
        for i in range(n):
            a = members[i]
            idem &= isomorphic(m_(a, a), a) and isomorphic(j_(a, a), a)
        for i, j in combinations(range(n), 2):
            a, b = members[i], members[j]
            mm, jj = meets[i, j], joins[i, j]
            bounds &= leq(mm, a, kind, check=False) and leq(mm, b, kind, check=False)
            bounds &= leq(a, jj, kind, check=False) and leq(b, jj, kind, check=False)
            comm &= isomorphic(mm, m_(b, a)) and isomorphic(jj, j_(b, a))
            absorb &= isomorphic(m_(a, jj), a) and isomorphic(j_(a, mm), a)
        assoc = True
        for i, j, k in combinations(range(n), 3):
            a, b, c = members[i], members[j], members[k]
            assoc &= isomorphic(m_(m_(a, b), c), m_(a, m_(b, c)))
            assoc &= isomorphic(j_(j_(a, b), c), j_(a, j_(b, c)))
        rep.add("idempotence", idem)
        rep.add("bounds", bounds, "meet below and join above both arguments")
        rep.add("commutativity", comm)
        rep.add("associativity", assoc)
        rep.add("absorption", absorb)

    strictly_below = [[le[i][j] and not le[j][i] for j in range(n)] for i in range(n)]
    minimal = [i for i in range(n) if not any(strictly_below[j][i] for j in range(n))]
    rep.minimal = [names[i] for i in minimal]
    unique_min = len({canonical_form(members[i]) for i in minimal}) == 1
    rep.add("unique-minimal", unique_min, ", ".join(rep.minimal))

    if n <= 12:
        dcc = True
        for size in range(1, n + 1):
            for sub in combinations(range(n), size):
                if not any(all(not strictly_below[j][i] for j in sub) for i in sub):
                    dcc = False
        rep.add("dcc", dcc, "every nonempty subset has a minimal element")

    for i in range(n):
        if all(le[i][j] for j in range(n)):
            rep.bottom = names[i]
            break
    if rep.join_closed:
        for i in range(n):
            if all(le[j][i] for j in range(n)):
                rep.top = names[i]
                break
    rep.add("least-element", rep.bottom is not None, rep.bottom or "no least element")
    return rep

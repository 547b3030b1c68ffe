"""Equivalence relations on states, stored as disjoint blocks."""

from __future__ import annotations

from typing import Hashable, Iterable

from .errors import CoverMismatch, UncoveredState

StateId = Hashable


def state_key(s):
    """Total order on state ids: integers numerically, then strings."""
    if isinstance(s, bool):
        return (2, repr(s))
    if isinstance(s, int):
        return (0, s)
    if isinstance(s, str):
        return (1, s)
    if isinstance(s, tuple):
        return (3, tuple(state_key(x) for x in s))
    return (4, repr(s))


class Partition:
    """A set of pairwise disjoint nonempty blocks.

    Each block is identified by its least member (under ``state_key``), so
    block ids stay stable when other blocks split.
    """

    __slots__ = ("_blocks", "_block_of")

    def __init__(self, blocks: Iterable[Iterable[StateId]]):
        block_of = {}
        normalized = []
        for raw in blocks:
            block = frozenset(raw)
            if not block:
                raise ValueError("partition blocks must be nonempty")
            bid = min(block, key=state_key)
            for s in block:
                if s in block_of:
                    raise ValueError(f"state {s!r} occurs in two blocks")
                block_of[s] = bid
            normalized.append((bid, block))
        normalized.sort(key=lambda kv: state_key(kv[0]))
        self._blocks = dict(normalized)
        self._block_of = block_of

    @classmethod
    def discrete(cls, states):
        return cls([s] for s in states)

    @classmethod
    def single(cls, states):
        states = list(states)
        return cls([states] if states else [])

    @property
    def blocks(self):
        """Mapping block id -> frozenset of members, ordered by id."""
        return dict(self._blocks)

    def block_ids(self):
        return list(self._blocks)

    def members(self, bid):
        return self._blocks[bid]

    def block_of(self, s):
        try:
            return self._block_of[s]
        except KeyError:
            raise UncoveredState(f"state {s!r} is in no block") from None

    def covers(self, s):
        return s in self._block_of

    @property
    def states(self):
        return frozenset(self._block_of)

    def check_covers(self, states):
        if frozenset(states) != self.states:
            raise CoverMismatch("partition does not cover exactly the automaton's states")

    def is_discrete(self):
        return all(len(b) == 1 for b in self._blocks.values())

    def related(self, x, y):
        return self.block_of(x) == self.block_of(y)

    def __len__(self):
        return len(self._blocks)

    def __iter__(self):
        return iter(self._blocks.values())

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self):
        return hash(frozenset(self._blocks.values()))

    def as_sorted_lists(self):
        return [sorted(b, key=state_key) for b in self._blocks.values()]

    def __repr__(self):
        inner = ", ".join(
            "{" + ", ".join(str(s) for s in blk) + "}" for blk in self.as_sorted_lists()
        )
        return f"Partition({inner})"

"""The line-based ``.pa`` text format and DOT export.

Example::

    pa P_0_1
    states: 1 2 3
    init: 1
    actions: tau a b
    trans 1 tau {3: 1}
    trans 1 tau {2: 1}
    trans 2 a {2: 1}
    trans 3 b {3: 1}

``#`` starts a comment. Probabilities are integers, ``p/q`` fractions or
finite decimals; each transition's probabilities must sum to exactly 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .automaton import TAU, Automaton, Transition
from .dist import SubDist, format_prob, parse_rational
from .errors import (
    IrrationalLiteral,
    MassNotOne,
    PaSyntaxError,
    UnknownAction,
    UnknownState,
)

_ID = r"[A-Za-z0-9_][A-Za-z0-9_'.\-]*"
_ID_RE = re.compile(_ID + r"\Z")
_TRANS_RE = re.compile(r"trans\s+(\S+)\s+(\S+)\s*\{(.*)\}\s*\Z")


@dataclass
class PaDocument:
    name: str
    automaton: Automaton
    spans: dict = field(default_factory=dict, compare=False)


def _state_id(tok):
    return int(tok) if tok.isdigit() else tok


def _check_id(tok, line, col):
    if not _ID_RE.match(tok):
        raise PaSyntaxError(f"invalid identifier {tok!r}", line, col)


def _parse_prob(tok, line, col):
    try:
        p = parse_rational(tok)
    except ValueError:
        if re.search(r"[A-Za-z]", tok):
            raise IrrationalLiteral(f"probability {tok!r} is not an exact rational literal", line, col) from None
        raise PaSyntaxError(f"malformed probability {tok!r}", line, col) from None
    if p > 1:
        raise MassNotOne(f"probability {tok} exceeds 1", line, col)
    return p


def parse(text: str) -> PaDocument:
    if text.startswith("\ufeff"):
        text = text[1:]
    name = None
    states = None
    init = None
    actions = None
    raw_trans = []
    spans = {}

    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        body = line.lstrip()
        if not body:
            continue
        indent = len(line) - len(body)
        col = indent + 1
        if name is None:
            m = re.match(r"pa\s+(\S+)\Z", body)
            if not m:
                raise PaSyntaxError("expected header 'pa <name>'", lineno, col)
            _check_id(m.group(1), lineno, col + m.start(1))
            name = m.group(1)
            spans["header"] = lineno
            continue
        keyword = body.split(None, 1)[0]
        if keyword == "states:":
            if states is not None:
                raise PaSyntaxError("duplicate 'states:' line", lineno, col)
            toks = body.split()[1:]
            if not toks:
                raise PaSyntaxError("'states:' needs at least one state", lineno, col)
            states = []
            for tok in toks:
                _check_id(tok, lineno, col + body.index(tok))
                s = _state_id(tok)
                if s in states:
                    raise PaSyntaxError(f"state {tok} declared twice", lineno, col + body.index(tok))
                states.append(s)
            spans["states"] = lineno
        elif keyword == "init:":
            if init is not None:
                raise PaSyntaxError("duplicate 'init:' line", lineno, col)
            toks = body.split()[1:]
            if len(toks) != 1:
                raise PaSyntaxError("'init:' takes exactly one state", lineno, col)
            _check_id(toks[0], lineno, col + 6)
            init = (_state_id(toks[0]), lineno, col + body.index(toks[0], 5))
            spans["init"] = lineno
        elif keyword == "actions:":
            if actions is not None:
                raise PaSyntaxError("duplicate 'actions:' line", lineno, col)
            toks = body.split()[1:]
            if not toks or toks[0] != TAU:
                raise PaSyntaxError("'actions:' must start with tau", lineno, col)
            actions = []
            for tok in toks:
                _check_id(tok, lineno, col + body.index(tok))
                if tok in actions:
                    raise PaSyntaxError(f"action {tok} declared twice", lineno, col + body.index(tok))
                actions.append(tok)
            spans["actions"] = lineno
        elif keyword == "trans" or body.startswith("trans "):
            raw_trans.append((lineno, col, body))
        else:
            raise PaSyntaxError(f"unexpected line starting with {keyword!r}", lineno, col)

    if name is None:
        raise PaSyntaxError("empty document: expected header 'pa <name>'", 1, 1)
    for what, val in (("states:", states), ("init:", init), ("actions:", actions)):
        if val is None:
            raise PaSyntaxError(f"missing '{what}' line", len(lines))
    state_set = set(states)
    init_state, iline, icol = init
    if init_state not in state_set:
        raise UnknownState(f"initial state {init_state} is not declared", iline, icol)

    transitions = []
    seen = {}
    for lineno, col, body in raw_trans:
        m = _TRANS_RE.match(body)
        if not m:
            raise PaSyntaxError("expected 'trans <src> <action> { <state>: <p>, ... }'", lineno, col)
        src_tok, act_tok = m.group(1), m.group(2)
        src = _state_id(src_tok)
        if src not in state_set:
            raise UnknownState(f"unknown state {src_tok}", lineno, col + m.start(1))
        if act_tok not in actions:
            raise UnknownAction(f"unknown action {act_tok}", lineno, col + m.start(2))
        inner = m.group(3)
        base = col + m.start(3)
        weights = {}
        if inner.strip():
            offset = 0
            for part in inner.split(","):
                pcol = base + offset + (len(part) - len(part.lstrip()))
                offset += len(part) + 1
                if ":" not in part:
                    raise PaSyntaxError(f"expected '<state>: <p>', got {part.strip()!r}", lineno, pcol)
                st_tok, p_tok = (x.strip() for x in part.split(":", 1))
                _check_id(st_tok, lineno, pcol)
                st = _state_id(st_tok)
                if st not in state_set:
                    raise UnknownState(f"unknown state {st_tok}", lineno, pcol)
                if st in weights:
                    raise PaSyntaxError(f"state {st_tok} repeated in distribution", lineno, pcol)
                weights[st] = _parse_prob(p_tok, lineno, pcol + part.strip().index(":") + 1)
        total = sum(weights.values())
        if total != 1:
            raise MassNotOne(f"probabilities sum to {format_prob(total)}, expected 1", lineno, base)
        t = Transition(src, act_tok, SubDist(weights))
        if t in seen:
            raise PaSyntaxError(f"duplicate transition (first on line {seen[t]})", lineno, col)
        seen[t] = lineno
        transitions.append(t)
        spans[("trans", t)] = lineno

    automaton = Automaton(states, actions, transitions, init_state)
    return PaDocument(name, automaton, spans)


def format_dist(d: SubDist) -> str:
    return "{" + ", ".join(f"{s}: {format_prob(p)}" for s, p in d.items()) + "}"


def dumps(automaton: Automaton, name: str = "P") -> str:
    lines = [
        f"pa {name}",
        "states: " + " ".join(str(s) for s in automaton.sorted_states()),
        f"init: {automaton.initial}",
        "actions: " + " ".join(automaton.actions),
    ]
    for t in automaton.sorted_transitions():
        lines.append(f"trans {t.source} {t.action} {format_dist(t.target)}")
    return "\n".join(lines) + "\n"


def serialize(doc: PaDocument) -> str:
    return dumps(doc.automaton, doc.name)


def load(path) -> PaDocument:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse(fh.read())


def export_dot(p: Automaton, name: str = "P") -> str:
    out = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for s in p.sorted_states():
        shape = "doublecircle" if s == p.initial else "circle"
        out.append(f'  "s_{s}" [label="{s}", shape={shape}];')
    for i, t in enumerate(p.sorted_transitions()):
        node = f"t{i}"
        out.append(f'  "{node}" [label="", shape=point];')
        out.append(f'  "s_{t.source}" -> "{node}" [label="{t.action}", arrowhead=none];')
        for s, w in t.target.items():
            out.append(f'  "{node}" -> "s_{s}" [label="{format_prob(w)}"];')
    out.append("}")
    return "\n".join(out) + "\n"

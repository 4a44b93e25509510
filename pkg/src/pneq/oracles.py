"""Brute-force reference implementations for cross-checking the fast paths.

Nothing here uses the matching code or the finite verification conditions:
closure membership is decided by backtracking over token assignments, the
bisimulation games are replayed one step at a time on explicit marking
pairs, and interleaving / step bisimilarity are computed by partition
refinement on explicit finite transition systems.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator

from .closure import DUMMY, PlaceRelation
from .errors import BoundExceeded, TooLarge
from .multiset import EMPTY, Multiset
from .net import Net, enabled_transitions, iter_steps
from .verify import DPLACE, IDPLACE, IPLACE, PLACE, coerce_relation

#: factorial guard for :func:`closure_oracle`
CLOSURE_ORACLE_LIMIT = 14


# Closure membership -------------------------------------------------------------


def _decomposes(r: PlaceRelation, m1: Multiset, m2: Multiset) -> bool:
    """Try every way of handing each left token a partner (or the dummy)."""
    theta = r.n
    dummy = r.kind == DUMMY
    if not dummy and m1.size != m2.size:
        return False
    left = tuple(m1.elements())
    places = tuple(sorted(m2.support))
    pairs = r.pairs

    @lru_cache(maxsize=None)
    def rec(i: int, rest: tuple) -> bool:
        if i == len(left):
            # unmatched right tokens must be absorbed by the dummy
            return all(c == 0 or (dummy and (theta, s) in pairs) for s, c in zip(places, rest))
        s = left[i]
        if dummy and (s, theta) in pairs and rec(i + 1, rest):
            return True
        for j, s2 in enumerate(places):
            if rest[j] and (s, s2) in pairs:
                if rec(i + 1, rest[:j] + (rest[j] - 1,) + rest[j + 1 :]):
                    return True
        return False

    return rec(0, tuple(m2[s] for s in places))


def closure_oracle(r: PlaceRelation, m1: Multiset, m2: Multiset) -> bool:
    """Membership of ``(m1, m2)`` in the (d-)additive closure, by exhaustive search."""
    if m1.size + m2.size > CLOSURE_ORACLE_LIMIT:
        raise TooLarge(f"closure oracle limited to {CLOSURE_ORACLE_LIMIT} tokens in total")
    return _decomposes(r, m1, m2)


# Bounded game -----------------------------------------------------------------


@dataclass(frozen=True)
class GameViolation:
    """Transition ``t`` fired on ``side`` from the related pair ``(m1, m2)`` cannot be matched."""

    m1: Multiset
    m2: Multiset
    t: int
    side: str

    def format(self, net: Net) -> str:
        return (
            f"({net.format_marking(self.m1)}, {net.format_marking(self.m2)}): "
            f"{self.side} move {net.transitions[self.t].name} is unmatched"
        )


def closure_pairs(r: PlaceRelation, size_bound: int) -> Iterator[tuple[Multiset, Multiset]]:
    """Every closure member with both sides of size at most ``size_bound``.

    A member is a finite sum of relation pairs, so the members are generated
    as multisets of pairs; with the dummy, a pair only costs size on its
    non-dummy side.
    """
    theta = r.n
    pairs = sorted(r.pairs)
    seen = {(EMPTY, EMPTY)}
    frontier = [(EMPTY, EMPTY)]
    while frontier:
        nxt = []
        for left, right in frontier:
            yield left, right
            for a, b in pairs:
                nl = left if a == theta else left + Multiset({a: 1})
                nr = right if b == theta else right + Multiset({b: 1})
                if nl.size <= size_bound and nr.size <= size_bound and (nl, nr) not in seen:
                    seen.add((nl, nr))
                    nxt.append((nl, nr))
        frontier = nxt


def _answer_ok(net, member, kind, t1, t2, m_mine, m_theirs, orient) -> bool:
    a, b = net.transitions[t1], net.transitions[t2]
    if a.label != b.label:
        return False
    if kind in (PLACE, DPLACE):
        if not member(*orient(a.pre, b.pre)) or not member(*orient(a.post, b.post)):
            return False
    after_mine = (m_mine - a.pre) + a.post
    after_theirs = (m_theirs - b.pre) + b.post
    return member(*orient(after_mine, after_theirs))


def game_violation_at(
    net: Net, r: PlaceRelation, kind: str, m1: Multiset, m2: Multiset, member=None
) -> GameViolation | None:
    """First one-step game clause of ``kind`` that fails at ``(m1, m2)``."""
    r = coerce_relation(r, kind)
    if member is None:
        member = lru_cache(maxsize=None)(lambda x, y: _decomposes(r, x, y))
    for side, mine, theirs in (("left", m1, m2), ("right", m2, m1)):
        orient = (lambda x, y: (x, y)) if side == "left" else (lambda x, y: (y, x))
        replies = enabled_transitions(net, theirs)
        for t1 in enabled_transitions(net, mine):
            if not any(_answer_ok(net, member, kind, t1, t2, mine, theirs, orient) for t2 in replies):
                return GameViolation(m1, m2, t1, side)
    return None


def bounded_game_oracle(
    net: Net, r: PlaceRelation, kind: str, size_bound: int = 4
) -> GameViolation | None:
    """Play one round of the bisimulation game of ``kind`` from every closure member
    with both sides of size at most ``size_bound``.

    Returns ``None`` when every round is won, otherwise the first violation.
    """
    if size_bound > 5:
        raise TooLarge("bounded game oracle supports size_bound <= 5")
    r = coerce_relation(r, kind)
    member = lru_cache(maxsize=None)(lambda x, y: _decomposes(r, x, y))
    for m1, m2 in sorted(closure_pairs(r, size_bound), key=lambda p: (p[0].size + p[1].size, p)):
        found = game_violation_at(net, r, kind, m1, m2, member)
        if found is not None:
            return found
    return None


# Labelled transition systems --------------------------------------------------


@dataclass(frozen=True)
class Lts:
    states: frozenset
    moves: frozenset  # (state, label, state)

    def __post_init__(self):
        for src, _, dst in self.moves:
            if src not in self.states or dst not in self.states:
                raise ValueError("move endpoint outside the state set")


#: average number of moves allowed per state before exploration gives up
MOVES_PER_STATE = 100


def _explore(net: Net, roots, successors, max_states: int) -> Lts:
    """Breadth-first reachable fragment from ``roots``.

    Raises :class:`BoundExceeded` above ``max_states`` states or
    ``MOVES_PER_STATE * max_states`` generated moves, so a single marking
    with a huge number of steps cannot run away either.
    """
    states = set(roots)
    if len(states) > max_states:
        raise BoundExceeded(f"more than {max_states} states")
    max_moves = MOVES_PER_STATE * max_states
    moves = set()
    generated = 0
    todo = deque(dict.fromkeys(roots))
    while todo:
        m = todo.popleft()
        for label, nxt in successors(m):
            # count before deduplication: many steps can share one move
            generated += 1
            if generated > max_moves:
                raise BoundExceeded(f"more than {max_moves} moves")
            moves.add((m, label, nxt))
            if nxt not in states:
                states.add(nxt)
                if len(states) > max_states:
                    raise BoundExceeded(f"more than {max_states} states")
                todo.append(nxt)
    return Lts(frozenset(states), frozenset(moves))


def interleaving_lts(net: Net, roots, max_states: int = 10_000) -> Lts:
    def successors(m):
        for t in enabled_transitions(net, m):
            tr = net.transitions[t]
            yield tr.label, (m - tr.pre) + tr.post

    return _explore(net, roots, successors, max_states)


def step_lts(net: Net, roots, max_states: int = 10_000) -> Lts:
    """States are markings; a move is labelled by the sorted action multiset of a step."""

    def successors(m):
        for g in iter_steps(net, m):
            yield tuple(g.label(net).elements()), (m - g.pre(net)) + g.post(net)

    return _explore(net, roots, successors, max_states)


def bisimulation_classes(lts: Lts) -> dict:
    """Coarsest strong bisimulation as ``state -> block number``, by signature refinement."""
    out: dict = {s: [] for s in lts.states}
    for src, label, dst in lts.moves:
        out[src].append((label, dst))
    block = {s: 0 for s in lts.states}
    count = 1
    while True:
        signatures = {
            s: (block[s], frozenset((label, block[d]) for label, d in out[s])) for s in lts.states
        }
        numbering: dict = {}
        for s in sorted(lts.states):
            numbering.setdefault(signatures[s], len(numbering))
        new_block = {s: numbering[signatures[s]] for s in lts.states}
        if len(numbering) == count:
            return new_block
        block, count = new_block, len(numbering)


def interleaving_bisimilar(net: Net, m1: Multiset, m2: Multiset, max_states: int = 10_000) -> bool:
    """Interleaving bisimilarity on the reachable fragment; refuses above ``max_states``."""
    classes = bisimulation_classes(interleaving_lts(net, (m1, m2), max_states))
    return classes[m1] == classes[m2]


def step_bisimilar(net: Net, m1: Multiset, m2: Multiset, max_states: int = 10_000) -> bool:
    classes = bisimulation_classes(step_lts(net, (m1, m2), max_states))
    return classes[m1] == classes[m2]


def all_multisets(n_places: int, max_size: int) -> Iterator[Multiset]:
    """Every marking over ``range(n_places)`` with at most ``max_size`` tokens."""
    for k in range(max_size + 1):
        for combo in combinations_with_replacement(range(n_places), k):
            yield Multiset(combo)

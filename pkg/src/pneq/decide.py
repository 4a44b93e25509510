"""Decide marking equivalence by searching for a witnessing place relation.

Two strategies are offered.

``exhaustive``
    Scans relations in canonical order (fewest pairs first, then
    lexicographic on the pair universe) and returns the first one that
    relates the two markings and passes :func:`pneq.verify.verify`.

``saturation``
    Starts from the pairs of one token pairing of the two markings and
    repairs the first unanswered obligation by adding the pairs needed for
    one candidate answer, backtracking over candidates.  Obligations and
    answers only grow with the relation, so every accepting relation that
    contains the current one is reachable from some branch; a relation from
    which no branch succeeds is remembered and never expanded again.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .closure import DUMMY, PairingWitness, PlaceRelation, closure_contains, pair_universe, pairings
from .errors import BudgetExceeded, TooLarge
from .multiset import Multiset
from .net import Net
from .verify import DPLACE, IPLACE, LEFT, PLACE, Obligation, first_violation, relation_kind

EXHAUSTIVE = "exhaustive"
SATURATION = "saturation"

#: largest index set (places, plus the dummy for d-kinds) the exhaustive scan accepts
MAX_INDEX_SET = 5


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    witness: tuple[PlaceRelation, PairingWitness] | None
    strategy: str
    relations_examined: int
    kind: str = PLACE

    def __bool__(self) -> bool:
        return self.equivalent

    @property
    def relation(self) -> PlaceRelation | None:
        return self.witness[0] if self.witness else None


def index_set_size(net: Net, kind: str) -> int:
    return net.n_places + (1 if relation_kind(kind) == DUMMY else 0)


# Pruning ----------------------------------------------------------------------


def fatal_pairs(net: Net, kind: str) -> frozenset:
    """Pairs whose presence alone makes any relation fail ``kind``.

    If ``(a, b)`` is in R and some transition consumes exactly ``{a}``, the
    single-token obligation from ``({a}, {b})`` needs a transition consuming
    exactly ``{b}`` with the same label, whatever else R contains (and
    symmetrically).  Pairs without such an answer are fatal.
    """
    theta = net.n_places
    singles: dict = {}
    for t in net.transitions:
        if t.pre.size == 1:
            (s,) = t.pre
            singles.setdefault(s, set()).add(t.label)
    out = set()
    for a, b in pair_universe(net.n_places, relation_kind(kind)):
        la = singles.get(a, set()) if a != theta else set()
        lb = singles.get(b, set()) if b != theta else set()
        if la != lb:
            out.add((a, b))
    return frozenset(out)


def _seed_supports(net: Net, kind: str, m1: Multiset, m2: Multiset) -> list[frozenset]:
    """Minimal pair sets whose presence relates ``m1`` and ``m2``."""
    dummy = relation_kind(kind) == DUMMY
    supports = {frozenset(p.support) for p in pairings(m1, m2, net.n_places, dummy)}
    return _minimal(supports)


def _minimal(sets) -> list[frozenset]:
    ordered = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    out: list[frozenset] = []
    for s in ordered:
        if not any(k <= s for k in out):
            out.append(s)
    return out


# Exhaustive -------------------------------------------------------------------


def _scan_chunk(args) -> tuple[int | None, int]:
    """Return the position of the first accepted relation in ``combos`` and the number examined."""
    net, kind, n, rkind, allowed, seeds, combos = args
    examined = 0
    for pos, combo in enumerate(combos):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if seeds is not None and not any(mask & s == s for s in seeds):
            continue
        examined += 1
        r = PlaceRelation(n, frozenset(allowed[i] for i in combo), rkind)
        if first_violation(net, r, kind) is None:
            return pos, examined
    return None, examined


def _check_index_set(net: Net, kind: str, cap: int) -> None:
    size = index_set_size(net, kind)
    if size > cap:
        raise TooLarge(f"index set of {size} exceeds the exhaustive cap of {cap}")


def _layers(allowed: list) -> Iterator[list[tuple]]:
    for k in range(len(allowed) + 1):
        yield list(combinations(range(len(allowed)), k))


def _exhaustive(net, kind, m1, m2, cap, parallel):
    n = net.n_places
    rkind = relation_kind(kind)
    fatal = fatal_pairs(net, kind)
    allowed = [p for p in pair_universe(n, rkind) if p not in fatal]
    if len(allowed) > cap * cap:
        # same candidate budget as an index set of size ``cap``, counted after pruning
        raise TooLarge(f"{len(allowed)} candidate pairs exceed the exhaustive cap of {cap * cap}")
    position = {p: i for i, p in enumerate(allowed)}
    seeds = []
    for support in _seed_supports(net, kind, m1, m2):
        if support <= set(position):
            seeds.append(sum(1 << position[p] for p in support))
    examined = 0
    if not seeds:
        return None, examined
    for layer in _layers(allowed):
        if parallel > 1 and len(layer) > 1:
            size = -(-len(layer) // parallel)
            chunks = [layer[i : i + size] for i in range(0, len(layer), size)]
            with ProcessPoolExecutor(parallel) as pool:
                results = list(pool.map(_scan_chunk, [(net, kind, n, rkind, allowed, seeds, c) for c in chunks]))
            examined += sum(count for _, count in results)
            for chunk, (pos, count) in zip(chunks, results):
                if pos is not None:
                    return PlaceRelation(n, frozenset(allowed[i] for i in chunk[pos]), rkind), examined
        else:
            pos, count = _scan_chunk((net, kind, n, rkind, allowed, seeds, layer))
            examined += count
            if pos is not None:
                return PlaceRelation(n, frozenset(allowed[i] for i in layer[pos]), rkind), examined
    return None, examined


# Saturation -------------------------------------------------------------------


def _requirements(net: Net, kind: str, ob: Obligation, t2: int) -> list[tuple[Multiset, Multiset]]:
    """Closure memberships (oriented left, right) that make ``t2`` answer ``ob``."""
    a = net.transitions[ob.t]
    b = net.transitions[t2]
    if kind == PLACE:
        needs = [(a.post, b.post)]
    else:
        residual = (ob.m - b.pre) + b.post
        needs = [(a.post, residual)]
        if kind == DPLACE:
            needs = [(a.pre, b.pre), (a.post, b.post)] + needs
    if ob.side != LEFT:
        needs = [(y, x) for x, y in needs]
    return needs


def _extensions(net: Net, r: PlaceRelation, kind: str, ob: Obligation) -> list[frozenset]:
    """Minimal sets of new pairs, each letting some transition answer ``ob``."""
    t1 = net.transitions[ob.t]
    dummy = r.kind == DUMMY
    found = set()
    for t2, cand in enumerate(net.transitions):
        if cand.label != t1.label:
            continue
        if kind == PLACE and cand.pre != ob.m:
            continue
        if kind != PLACE and not cand.pre <= ob.m:
            continue
        options = []
        for x, y in _requirements(net, kind, ob, t2):
            if closure_contains(r, x, y) is not None:
                continue
            choices = _minimal(frozenset(p.support) - r.pairs for p in pairings(x, y, r.n, dummy))
            if not choices:
                break
            options.append(choices)
        else:
            for combo in product(*options):
                found.add(frozenset().union(*combo))
    found.discard(frozenset())
    return _minimal(found)


class _Saturation:
    def __init__(self, net: Net, kind: str, budget: int | None, deadline: float | None):
        self.net = net
        self.kind = kind
        self.budget = budget
        self.deadline = deadline
        self.examined = 0
        self.failed: set = set()

    def tick(self):
        self.examined += 1
        if self.budget is not None and self.examined > self.budget:
            raise BudgetExceeded(f"saturation examined more than {self.budget} relations")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("saturation time limit reached")

    def search(self, r: PlaceRelation) -> PlaceRelation | None:
        if r.pairs in self.failed:
            return None
        self.tick()
        ob = first_violation(self.net, r, self.kind)
        if ob is None:
            return r
        for extra in _extensions(self.net, r, self.kind, ob):
            found = self.search(r.with_pairs(extra))
            if found is not None:
                return found
        self.failed.add(r.pairs)
        return None


def _saturation(net, kind, m1, m2, budget, time_limit):
    deadline = None if time_limit is None else time.monotonic() + time_limit
    state = _Saturation(net, kind, budget, deadline)
    rkind = relation_kind(kind)
    fatal = fatal_pairs(net, kind)
    for support in _seed_supports(net, kind, m1, m2):
        if support & fatal:
            continue
        found = state.search(PlaceRelation(net.n_places, support, rkind))
        if found is not None:
            return found, state.examined
    return None, state.examined


# Public entry points ------------------------------------------------------------


def decide(
    net: Net,
    kind: str,
    m1: Multiset,
    m2: Multiset,
    strategy: str = SATURATION,
    budget: int | None = None,
    canonical: bool = False,
    time_limit: float | None = None,
    parallel: int = 1,
    max_index_set: int = MAX_INDEX_SET,
) -> Verdict:
    """Are ``m1`` and ``m2`` equivalent under ``kind``?

    ``canonical`` forces the exhaustive scan so the witness is the least
    accepting relation in canonical order.  ``budget`` (relations examined)
    and ``time_limit`` (seconds) only bound the saturation search; hitting
    either raises :class:`BudgetExceeded`.
    """
    relation_kind(kind)
    if canonical:
        strategy = EXHAUSTIVE
    if strategy not in (EXHAUSTIVE, SATURATION):
        raise ValueError(f"unknown strategy {strategy!r}")
    if kind in (PLACE, IPLACE) and m1.size != m2.size:
        return Verdict(False, None, strategy, 0, kind)
    if strategy == EXHAUSTIVE:
        found, examined = _exhaustive(net, kind, m1, m2, max_index_set, parallel)
    else:
        found, examined = _saturation(net, kind, m1, m2, budget, time_limit)
    if found is None:
        return Verdict(False, None, strategy, examined, kind)
    return Verdict(True, (found, closure_contains(found, m1, m2)), strategy, examined, kind)


def enumerate_bisimulations(
    net: Net, kind: str, max_index_set: int = MAX_INDEX_SET
) -> Iterator[PlaceRelation]:
    """Every relation of ``kind`` over ``net``'s places, in canonical order."""
    _check_index_set(net, kind, max_index_set)
    n = net.n_places
    rkind = relation_kind(kind)
    fatal = fatal_pairs(net, kind)
    allowed = [p for p in pair_universe(n, rkind) if p not in fatal]
    for layer in _layers(allowed):
        for combo in layer:
            r = PlaceRelation(n, frozenset(allowed[i] for i in combo), rkind)
            if first_violation(net, r, kind) is None:
                yield r


def maximal_bisimulations(net: Net, kind: str, max_index_set: int = MAX_INDEX_SET) -> list[PlaceRelation]:
    """Accepted relations not strictly contained in another accepted one, in canonical order."""
    accepted = list(enumerate_bisimulations(net, kind, max_index_set))
    # accepted is ordered by size, so a strict superset always comes later
    out = []
    for i, r in enumerate(accepted):
        if not any(r.pairs < other.pairs for other in accepted[i + 1 :]):
            out.append(r)
    return out


def canonical_key(r: PlaceRelation) -> tuple:
    """Sort key matching the canonical scan order (size, then pair positions)."""
    universe = {p: i for i, p in enumerate(pair_universe(r.n, r.kind))}
    return (len(r.pairs), sorted(universe[p] for p in r.pairs))


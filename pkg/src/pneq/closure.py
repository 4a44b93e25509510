"""Place relations and their additive closures.

A :class:`PlaceRelation` over a net with ``n`` places uses indices
``0..n-1`` for places and ``n`` for the dummy place (the empty marking).
Plain relations never mention the dummy; ``dummy`` relations may, and their
closure lets a token be paired with nothing.  The pair ``(dummy, dummy)`` is
implicit in both closures and never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator

import numpy as np

from .matching import saturating_b_matching
from .multiset import EMPTY, Multiset

PLAIN = "plain"
DUMMY = "dummy"


def pair_universe(n: int, kind: str) -> tuple[tuple[int, int], ...]:
    """All storable pairs in canonical (row-major) order."""
    size = n + 1 if kind == DUMMY else n
    return tuple((a, b) for a in range(size) for b in range(size) if not (a == n and b == n))


@dataclass(frozen=True)
class PlaceRelation:
    n: int
    pairs: frozenset
    kind: str = PLAIN

    def __post_init__(self):
        if self.kind not in (PLAIN, DUMMY):
            raise ValueError(f"unknown relation kind {self.kind!r}")
        limit = self.n + 1 if self.kind == DUMMY else self.n
        pairs = frozenset((a, b) for a, b in self.pairs if not (a == self.n and b == self.n))
        for a, b in pairs:
            if not (0 <= a < limit and 0 <= b < limit):
                if self.kind == PLAIN and self.n in (a, b):
                    raise ValueError("a plain relation cannot relate the empty marking")
                raise ValueError(f"pair {(a, b)} out of range for {self.n} places")
        object.__setattr__(self, "pairs", pairs)

    @property
    def theta(self) -> int:
        return self.n

    @cached_property
    def succ(self) -> dict:
        out: dict = {}
        for a, b in sorted(self.pairs):
            out.setdefault(a, []).append(b)
        return {a: tuple(bs) for a, bs in out.items()}

    @cached_property
    def pred(self) -> dict:
        out: dict = {}
        for a, b in sorted(self.pairs, key=lambda p: (p[1], p[0])):
            out.setdefault(b, []).append(a)
        return {b: tuple(as_) for b, as_ in out.items()}

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __le__(self, other: PlaceRelation) -> bool:
        return self.pairs <= other.pairs

    def __lt__(self, other: PlaceRelation) -> bool:
        return self.pairs < other.pairs

    def __or__(self, other: PlaceRelation) -> PlaceRelation:
        kind = DUMMY if DUMMY in (self.kind, other.kind) else PLAIN
        return PlaceRelation(self.n, self.pairs | other.pairs, kind)

    def with_pairs(self, extra: Iterable) -> PlaceRelation:
        return PlaceRelation(self.n, self.pairs | frozenset(extra), self.kind)

    @property
    def bits(self) -> int:
        """Bitmask over :func:`pair_universe` (bit i set iff pair i is present)."""
        return sum(1 << i for i, p in enumerate(pair_universe(self.n, self.kind)) if p in self.pairs)

    @classmethod
    def from_bits(cls, n: int, bits: int, kind: str = PLAIN) -> PlaceRelation:
        universe = pair_universe(n, kind)
        return cls(n, frozenset(p for i, p in enumerate(universe) if bits >> i & 1), kind)

    def matrix(self) -> np.ndarray:
        """Boolean matrix over places plus the dummy index (last row/column)."""
        mat = np.zeros((self.n + 1, self.n + 1), dtype=bool)
        for a, b in self.pairs:
            mat[a, b] = True
        return mat

    @classmethod
    def from_matrix(cls, mat, kind: str | None = None) -> PlaceRelation:
        mat = np.asarray(mat, dtype=bool)
        n = mat.shape[0] - 1
        pairs = frozenset((int(a), int(b)) for a, b in zip(*np.nonzero(mat)))
        if kind is None:
            kind = DUMMY if mat[n, :].any() or mat[:, n].any() else PLAIN
        return cls(n, pairs, kind)

    def lift(self) -> PlaceRelation:
        """The same pairs viewed as a dummy-kind relation."""
        return PlaceRelation(self.n, self.pairs, DUMMY)

    def format(self, names: Iterable[str]) -> str:
        names = list(names) + ["0"]
        return "{" + ", ".join(f"({names[a]}, {names[b]})" for a, b in self) + "}"


@dataclass(frozen=True)
class PairingWitness:
    """Multiset of relation pairs whose left/right components sum to two markings."""

    pairs: Multiset
    n: int

    def left(self) -> Multiset:
        return _project(self.pairs, 0, self.n)

    def right(self) -> Multiset:
        return _project(self.pairs, 1, self.n)

    def __iter__(self):
        return self.pairs.elements()

    def __len__(self):
        return self.pairs.size

    def support(self) -> frozenset:
        return self.pairs.support

    def format(self, names: Iterable[str]) -> str:
        names = list(names) + ["0"]
        return "{" + ", ".join(f"({names[a]}, {names[b]})" for a, b in self.pairs.elements()) + "}"


def _project(pairs: Multiset, side: int, theta: int) -> Multiset:
    out: dict = {}
    for pair, count in pairs.items():
        s = pair[side]
        if s != theta:
            out[s] = out.get(s, 0) + count
    return Multiset(out)


# Membership -------------------------------------------------------------------

_THETA_L = ("theta", "L")
_THETA_R = ("theta", "R")


def closure_contains(r: PlaceRelation, m1: Multiset, m2: Multiset) -> PairingWitness | None:
    """A pairing proving ``(m1, m2)`` is in the closure of ``r``, or ``None``.

    Plain relations use the additive closure (equal sizes, one-to-one token
    pairing).  Dummy relations use the d-additive closure: a left token ``s``
    may stay unpaired when ``(s, dummy)`` is in ``r``, and a right token ``s'``
    when ``(dummy, s')`` is.  Both reduce to a saturating bipartite matching.
    """
    theta = r.n
    if r.kind == PLAIN:
        if m1.size != m2.size:
            return None
        if m1.size == 0:
            return PairingWitness(EMPTY, theta)
        succ = r.succ
        adj = {s: [t for t in succ.get(s, ()) if t in m2] for s in m1}
        flows = saturating_b_matching(dict(m1.items()), dict(m2.items()), adj)
        if flows is None:
            return None
        return PairingWitness(Multiset(flows), theta)

    if m1.size == 0 and m2.size == 0:
        return PairingWitness(EMPTY, theta)
    succ = r.succ
    supply = dict(m1.items())
    demand = dict(m2.items())
    adj: dict = {}
    for s in m1:
        targets = [t for t in succ.get(s, ()) if t in m2]
        if theta in succ.get(s, ()):
            targets.append(_THETA_R)
        adj[s] = targets
    # the dummy source feeds eligible right tokens; any surplus cancels against the dummy sink
    supply[_THETA_L] = m2.size
    demand[_THETA_R] = m1.size
    adj[_THETA_L] = [t for t in succ.get(theta, ()) if t in m2] + [_THETA_R]
    flows = saturating_b_matching(supply, demand, adj)
    if flows is None:
        return None
    pairs: dict = {}
    for (u, v), f in flows.items():
        a = theta if u == _THETA_L else u
        b = theta if v == _THETA_R else v
        if a == theta and b == theta:
            continue
        pairs[(a, b)] = pairs.get((a, b), 0) + f
    return PairingWitness(Multiset(pairs), theta)


def related(r: PlaceRelation, m1: Multiset, m2: Multiset) -> bool:
    return closure_contains(r, m1, m2) is not None


# Enumeration ------------------------------------------------------------------


def _partner_map(r: PlaceRelation, side: str) -> dict:
    if side == "left":
        return r.succ
    if side == "right":
        return r.pred
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def _substitutions(partners: dict, m: Multiset) -> Iterator[list]:
    """Per-place choices of partner multisets, as lists of (place, partner) tokens."""
    per_place = []
    for s, c in m.items():
        options = partners.get(s, ())
        if not options:
            return
        per_place.append([(s, combo) for combo in combinations_with_replacement(options, c)])
    for choice in product(*per_place):
        yield choice


def related_markings(r: PlaceRelation, m: Multiset, side: str = "left") -> list[Multiset]:
    """All markings related to ``m`` through the additive closure of a plain relation.

    ``side="left"`` gives every ``m'`` with ``(m, m')`` related; ``"right"``
    every ``m'`` with ``(m', m)`` related.  Sorted and deduplicated.
    """
    if r.kind != PLAIN:
        raise ValueError("related_markings needs a plain relation; use substitution_images")
    partners = _partner_map(r, side)
    out = set()
    for choice in _substitutions(partners, m):
        counts: dict = {}
        for _, combo in choice:
            for t in combo:
                counts[t] = counts.get(t, 0) + 1
        out.add(Multiset(counts))
    return sorted(out)


def substitution_images(
    r: PlaceRelation, m: Multiset, side: str = "left"
) -> list[tuple[Multiset, PairingWitness]]:
    """Markings obtained by replacing each token of ``m`` with one of its partners.

    A partner may be the dummy place, in which case the token disappears.
    No pair with the dummy on ``m``'s own side is ever introduced, which keeps
    the result finite.  One witness (the first in canonical order) is kept per
    image; the witness is oriented as (left, right) pairs of ``r``.
    """
    theta = r.n
    partners = _partner_map(r, side)
    best: dict = {}
    for choice in _substitutions(partners, m):
        counts: dict = {}
        pairs: dict = {}
        for s, combo in choice:
            for t in combo:
                if t != theta:
                    counts[t] = counts.get(t, 0) + 1
                pair = (s, t) if side == "left" else (t, s)
                pairs[pair] = pairs.get(pair, 0) + 1
        image = Multiset(counts)
        witness = Multiset(pairs)
        if image not in best or witness < best[image]:
            best[image] = witness
    return [(img, PairingWitness(best[img], theta)) for img in sorted(best)]


def pairings(a: Multiset, b: Multiset, n: int, dummy: bool = False) -> list[Multiset]:
    """Every pair multiset whose components sum to ``a`` and ``b`` (any pairs allowed).

    With ``dummy`` a token may be paired with the dummy index ``n`` instead of
    a token on the other side.  Results are sorted and deduplicated.
    """
    left = list(a.elements())
    right_counts = dict(b.items())
    out = set()

    def rec(i: int, acc: dict):
        if i == len(left):
            leftover = [(s, c) for s, c in right_counts.items() if c]
            if leftover and not dummy:
                return
            full = dict(acc)
            for s, c in leftover:
                full[(n, s)] = full.get((n, s), 0) + c
            out.add(Multiset(full))
            return
        s = left[i]
        options = [t for t, c in right_counts.items() if c]
        if dummy:
            options.append(n)
        for t in options:
            if t != n:
                right_counts[t] -= 1
            acc[(s, t)] = acc.get((s, t), 0) + 1
            rec(i + 1, acc)
            acc[(s, t)] -= 1
            if not acc[(s, t)]:
                del acc[(s, t)]
            if t != n:
                right_counts[t] += 1

    if not dummy and a.size != b.size:
        return []
    rec(0, {})
    return sorted(out)


# Relation algebra -------------------------------------------------------------


def relation_identity(net_or_n, kind: str = PLAIN) -> PlaceRelation:
    n = net_or_n if isinstance(net_or_n, int) else net_or_n.n_places
    return PlaceRelation(n, frozenset((s, s) for s in range(n)), kind)


def relation_inverse(r: PlaceRelation) -> PlaceRelation:
    return PlaceRelation(r.n, frozenset((b, a) for a, b in r.pairs), r.kind)


def relation_compose(r1: PlaceRelation, r2: PlaceRelation) -> PlaceRelation:
    """``{(a, c) | (a, b) in r1 and (b, c) in r2}``.

    For dummy relations the implicit ``(dummy, dummy)`` pair takes part on
    both sides, matching composition of the closures.
    """
    if r1.n != r2.n:
        raise ValueError("relations over different place sets")
    kind = DUMMY if DUMMY in (r1.kind, r2.kind) else PLAIN
    theta = r1.n
    left = set(r1.pairs)
    right = set(r2.pairs)
    if kind == DUMMY:
        left.add((theta, theta))
        right.add((theta, theta))
    by_first: dict = {}
    for b, c in right:
        by_first.setdefault(b, []).append(c)
    out = {(a, c) for a, b in left for c in by_first.get(b, ())}
    return PlaceRelation(r1.n, frozenset(out), kind)

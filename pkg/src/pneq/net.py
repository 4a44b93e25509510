"""Place/Transition nets and their sequential and step token games.

Places and transitions are interned to dense integer indices in declaration
order.  Markings, pre-sets and post-sets are :class:`Multiset` values over
place indices; steps are multisets over transition indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded, NetFormatError, NotEnabled, UnknownPlace, UnknownTransition
from .multiset import EMPTY, Multiset


@dataclass(frozen=True)
class Transition:
    name: str
    pre: Multiset
    label: str
    post: Multiset

    def __post_init__(self):
        if self.pre.size == 0:
            raise NetFormatError(f"transition {self.name!r} has an empty pre-set")


@dataclass(frozen=True, eq=False)
class Net:
    """A finite labelled P/T net ``(S, A, T)``.

    ``places`` and ``transitions`` are ordered; the position of an item is its
    index.  Two nets compare equal when places, labels and transitions agree.
    """

    places: tuple[str, ...]
    transitions: tuple[Transition, ...]
    labels: frozenset[str] = frozenset()
    _place_index: dict = field(init=False, repr=False, compare=False)
    _trans_index: dict = field(init=False, repr=False, compare=False)
    _by_pre: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        labels = frozenset(self.labels) | {t.label for t in self.transitions}
        object.__setattr__(self, "labels", labels)
        place_index = {}
        for i, p in enumerate(self.places):
            if p in place_index:
                raise NetFormatError(f"duplicate place {p!r}")
            place_index[p] = i
        trans_index = {}
        by_pre: dict = {}
        n = len(self.places)
        for i, t in enumerate(self.transitions):
            if t.name in trans_index:
                raise NetFormatError(f"duplicate transition {t.name!r}")
            trans_index[t.name] = i
            for s in (*t.pre, *t.post):
                if not (isinstance(s, int) and 0 <= s < n):
                    raise NetFormatError(f"transition {t.name!r} uses undeclared place {s!r}")
            by_pre.setdefault(t.pre, []).append(i)
        object.__setattr__(self, "_place_index", place_index)
        object.__setattr__(self, "_trans_index", trans_index)
        object.__setattr__(self, "_by_pre", {k: tuple(v) for k, v in by_pre.items()})

    def __eq__(self, other):
        if not isinstance(other, Net):
            return NotImplemented
        return (self.places, self.transitions, self.labels) == (
            other.places,
            other.transitions,
            other.labels,
        )

    def __hash__(self):
        return hash((self.places, self.transitions))

    @classmethod
    def build(
        cls,
        places: Sequence[str],
        transitions: Iterable[tuple],
        labels: Iterable[str] = (),
    ) -> Net:
        """Build a net from place names and ``(name, pre, label, post)`` tuples.

        ``pre`` and ``post`` are mappings from place name to multiplicity
        (or iterables of place names, repeated for weights).
        """
        index = {p: i for i, p in enumerate(places)}

        def resolve(spec) -> Multiset:
            named = Multiset(spec)
            try:
                return Multiset({index[p]: c for p, c in named.items()})
            except KeyError as exc:
                raise UnknownPlace(exc.args[0]) from None

        trans = [Transition(name, resolve(pre), label, resolve(post)) for name, pre, label, post in transitions]
        return cls(tuple(places), tuple(trans), frozenset(labels))

    # Lookup -------------------------------------------------------------------
    @property
    def n_places(self) -> int:
        return len(self.places)

    def place(self, name: str) -> int:
        try:
            return self._place_index[name]
        except KeyError:
            raise UnknownPlace(name) from None

    def transition_index(self, t: int | str) -> int:
        if isinstance(t, str):
            try:
                return self._trans_index[t]
            except KeyError:
                raise UnknownTransition(t) from None
        if not 0 <= t < len(self.transitions):
            raise UnknownTransition(t)
        return t

    def transition(self, t: int | str) -> Transition:
        return self.transitions[self.transition_index(t)]

    def transitions_with_pre(self, pre: Multiset) -> tuple[int, ...]:
        """Indices of transitions whose pre-set equals ``pre`` exactly."""
        return self._by_pre.get(pre, ())

    def marking(self, spec) -> Multiset:
        """Marking from a name->count mapping, an iterable of names, or a text expression."""
        if isinstance(spec, str):
            from .format import parse_marking

            return parse_marking(self, spec)
        named = Multiset(spec)
        return Multiset({self.place(p): c for p, c in named.items()})

    def format_marking(self, m: Multiset) -> str:
        if m.is_empty():
            return "0"
        return " + ".join(self.places[s] if c == 1 else f"{c}*{self.places[s]}" for s, c in m.items())

    def restrict(self, places: Iterable[str]) -> Net:
        """Sub-net on the given places, keeping transitions that only touch them."""
        keep = [p for p in self.places if p in set(places)]
        new_index = {self.place(p): i for i, p in enumerate(keep)}
        trans = []
        for t in self.transitions:
            if all(s in new_index for s in (*t.pre, *t.post)):
                trans.append(
                    Transition(t.name, t.pre.map_keys(new_index.get), t.label, t.post.map_keys(new_index.get))
                )
        return Net(tuple(keep), tuple(trans), frozenset(t.label for t in trans))


@dataclass(frozen=True)
class Step:
    """A nonempty finite multiset of transition indices."""

    occurrences: Multiset

    def __post_init__(self):
        if self.occurrences.size == 0:
            raise ValueError("a step must be nonempty")

    def pre(self, net: Net) -> Multiset:
        out = EMPTY
        for t, k in self.occurrences.items():
            out = out + net.transitions[t].pre * k
        return out

    def post(self, net: Net) -> Multiset:
        out = EMPTY
        for t, k in self.occurrences.items():
            out = out + net.transitions[t].post * k
        return out

    def label(self, net: Net) -> Multiset:
        """The multiset of action labels of the step."""
        return Multiset(_sum_counts((net.transitions[t].label, k) for t, k in self.occurrences.items()))


def _sum_counts(pairs) -> dict:
    out: dict = {}
    for key, k in pairs:
        out[key] = out.get(key, 0) + k
    return out


def make_step(net: Net, occurrences) -> Step:
    """Step from a mapping or iterable of transition names/indices."""
    counted = Multiset(occurrences) if not isinstance(occurrences, Multiset) else occurrences
    return Step(Multiset(_sum_counts((net.transition_index(t), k) for t, k in counted.items())))


# Token game ------------------------------------------------------------------


def enabled(net: Net, m: Multiset, t: int | str) -> bool:
    return net.transition(t).pre <= m


def fire(net: Net, m: Multiset, t: int | str) -> Multiset:
    """Fire ``t`` at ``m``: returns ``(m - pre) + post``."""
    tr = net.transition(t)
    if not tr.pre <= m:
        raise NotEnabled(f"transition {tr.name!r} is not enabled at {net.format_marking(m)}")
    return (m - tr.pre) + tr.post


def fire_step(net: Net, m: Multiset, g: Step) -> Multiset:
    pre = g.pre(net)
    if not pre <= m:
        raise NotEnabled("step is not enabled")
    return (m - pre) + g.post(net)


def enabled_transitions(net: Net, m: Multiset) -> list[int]:
    return [i for i, t in enumerate(net.transitions) if t.pre <= m]


def iter_steps(net: Net, m: Multiset) -> Iterator[Step]:
    """Lazily yield the nonempty steps whose cumulative pre-set fits in ``m`` (unordered)."""
    candidates = enabled_transitions(net, m)

    def rec(pos: int, remaining: Multiset, chosen: list):
        if pos == len(candidates):
            if chosen:
                yield Step(Multiset(_sum_counts((t, 1) for t in chosen)))
            return
        t = candidates[pos]
        pre = net.transitions[t].pre
        yield from rec(pos + 1, remaining, chosen)
        k = 0
        rest = remaining
        while pre <= rest:
            rest = rest - pre
            k += 1
            chosen.append(t)
            yield from rec(pos + 1, rest, chosen)
        del chosen[len(chosen) - k :]

    yield from rec(0, m, [])


def enabled_steps(net: Net, m: Multiset) -> list[Step]:
    """All nonempty steps whose cumulative pre-set fits in ``m``.

    Found by bounded search over transition indices; returned in
    lexicographic order of their sorted transition-index sequences.
    """
    return sorted(iter_steps(net, m), key=lambda g: tuple(g.occurrences.elements()))


def reachable(
    net: Net, m0: Multiset, max_markings: int = 10_000, with_paths: bool = False
) -> set[Multiset] | dict[Multiset, tuple[int, ...]]:
    """Breadth-first reachability set from ``m0``.

    Raises :class:`BoundExceeded` once more than ``max_markings`` distinct
    markings are found.  With ``with_paths`` the result maps each marking to
    a firing sequence (transition indices) reaching it from ``m0``.
    """
    if max_markings < 1:
        raise ValueError("max_markings must be at least 1")
    paths = {m0: ()}
    queue = deque([m0])
    while queue:
        m = queue.popleft()
        for t in enabled_transitions(net, m):
            tr = net.transitions[t]
            nxt = (m - tr.pre) + tr.post
            if nxt not in paths:
                paths[nxt] = paths[m] + (t,)
                if len(paths) > max_markings:
                    raise BoundExceeded(f"more than {max_markings} reachable markings")
                queue.append(nxt)
    return paths if with_paths else set(paths)


def replay(net: Net, m0: Multiset, sequence: Iterable[int | str]) -> Iterator[Multiset]:
    """Yield the markings visited by firing ``sequence`` from ``m0``."""
    m = m0
    yield m
    for t in sequence:
        m = fire(net, m, t)
        yield m

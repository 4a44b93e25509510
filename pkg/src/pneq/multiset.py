"""Immutable finite multisets with natural multiplicities."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping

from .errors import MultiplicityOverflow

#: Largest multiplicity a multiset may hold; exceeding it raises instead of wrapping.
MAX_MULTIPLICITY = 2**32 - 1


def _checked(count: int) -> int:
    if count > MAX_MULTIPLICITY:
        raise MultiplicityOverflow(f"multiplicity {count} exceeds cap {MAX_MULTIPLICITY}")
    return count


class Multiset(Mapping):
    """A frozen multiset: a mapping from elements to positive multiplicities.

    Elements absent from the mapping have multiplicity 0, and zero counts are
    never stored.  Items are kept sorted, so two equal multisets have the
    same iteration order, repr and hash.  Elements must be mutually orderable.

    >>> Multiset({0: 2}) + Multiset([1])
    Multiset({0: 2, 1: 1})
    """

    __slots__ = ("_items", "_dict", "_size", "_hash")

    def __init__(self, entries: Mapping | Iterable[Hashable] = ()):
        counts: dict = {}
        if isinstance(entries, Mapping):
            for key, value in entries.items():
                if value < 0:
                    raise ValueError(f"negative multiplicity for {key!r}")
                if value:
                    counts[key] = value
        else:
            for key in entries:
                counts[key] = counts.get(key, 0) + 1
        for value in counts.values():
            _checked(value)
        self._set_items(tuple(sorted(counts.items())))

    def _set_items(self, items: tuple) -> None:
        self._items = items
        self._dict = dict(items)
        self._size = sum(c for _, c in items)
        self._hash = None

    @classmethod
    def _from_sorted(cls, items: tuple) -> Multiset:
        obj = cls.__new__(cls)
        obj._set_items(items)
        return obj

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> Multiset:
        """Build from a dense count vector; element i has multiplicity counts[i]."""
        return cls._from_sorted(tuple((i, _checked(c)) for i, c in enumerate(counts) if c))

    # Mapping protocol -------------------------------------------------------
    def __getitem__(self, key) -> int:
        return self._dict.get(key, 0)

    def __iter__(self) -> Iterator:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, key) -> bool:
        return key in self._dict

    def __eq__(self, other) -> bool:
        if isinstance(other, Multiset):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __lt__(self, other: Multiset) -> bool:
        # Total order for canonical sorting; unrelated to inclusion.
        return self._items < other._items

    def __repr__(self) -> str:
        return f"Multiset({dict(self._items)!r})"

    # Multiset algebra -------------------------------------------------------
    @property
    def size(self) -> int:
        """Total number of elements, counting repetitions."""
        return self._size

    @property
    def support(self) -> frozenset:
        return frozenset(self._dict)

    def items(self):
        return self._items

    def is_empty(self) -> bool:
        return not self._items

    def elements(self) -> Iterator:
        """Each element repeated by its multiplicity, in sorted order."""
        for key, count in self._items:
            for _ in range(count):
                yield key

    def __add__(self, other: Multiset) -> Multiset:
        if not other._items:
            return self
        if not self._items:
            return other
        merged = dict(self._items)
        for key, count in other._items:
            merged[key] = _checked(merged.get(key, 0) + count)
        return Multiset._from_sorted(tuple(sorted(merged.items())))

    def __sub__(self, other: Multiset) -> Multiset:
        if not other._items:
            return self
        theirs = other._dict
        return Multiset._from_sorted(
            tuple((k, c - theirs.get(k, 0)) for k, c in self._items if c > theirs.get(k, 0))
        )

    def __mul__(self, factor: int) -> Multiset:
        if factor < 0:
            raise ValueError("scalar factor must be a natural number")
        if factor == 0:
            return EMPTY
        return Multiset._from_sorted(tuple((k, _checked(c * factor)) for k, c in self._items))

    __rmul__ = __mul__

    def __le__(self, other: Multiset) -> bool:
        """Multiset inclusion: every multiplicity is at most the other's."""
        theirs = other._dict
        return all(c <= theirs.get(k, 0) for k, c in self._items)

    def __ge__(self, other: Multiset) -> bool:
        return other <= self

    def map_keys(self, fn) -> Multiset:
        """Image of the multiset under ``fn`` on elements (counts add up on collisions)."""
        out: dict = {}
        for key, count in self._items:
            new = fn(key)
            out[new] = out.get(new, 0) + count
        return Multiset(out)


EMPTY = Multiset()


def union(a: Multiset, b: Multiset) -> Multiset:
    return a + b


def difference(a: Multiset, b: Multiset) -> Multiset:
    """Truncated difference: multiplicities are max(a(s) - b(s), 0)."""
    return a - b


def sub_multisets(m: Multiset) -> Iterator[Multiset]:
    """All sub-multisets of ``m`` (including empty and ``m`` itself)."""
    keys = [k for k, _ in m.items()]
    counts = [c for _, c in m.items()]

    def rec(i: int, acc: list):
        if i == len(keys):
            yield Multiset._from_sorted(tuple((keys[j], acc[j]) for j in range(len(acc)) if acc[j]))
            return
        for c in range(counts[i] + 1):
            acc.append(c)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def multisets_up_to(elements: Iterable, max_size: int, min_size: int = 0) -> Iterator[Multiset]:
    """Every multiset over ``elements`` with size in [min_size, max_size]."""
    from itertools import combinations_with_replacement

    elements = sorted(elements)
    for k in range(min_size, max_size + 1):
        for combo in combinations_with_replacement(elements, k):
            yield Multiset(combo)

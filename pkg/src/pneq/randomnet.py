"""Seeded random nets, markings and relations for property suites."""

from __future__ import annotations

import os
import random

from .closure import PLAIN, PlaceRelation, pair_universe
from .multiset import Multiset
from .net import Net, Transition

DEFAULT_SEED = 20231

LABELS = ("a", "b", "c")


def default_seed() -> int:
    """The ``PNEQ_SEED`` environment variable if set, else a fixed seed."""
    value = os.environ.get("PNEQ_SEED")
    return int(value) if value else DEFAULT_SEED


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(default_seed() if seed is None else seed)


def random_marking(rng: random.Random, n_places: int, max_size: int, min_size: int = 0) -> Multiset:
    size = rng.randint(min_size, max_size)
    return Multiset(rng.randrange(n_places) for _ in range(size)) if n_places else Multiset()


def random_net(
    rng: random.Random,
    n_places: int | None = None,
    n_transitions: int | None = None,
    max_places: int = 4,
    max_transitions: int = 5,
    labels=LABELS,
    max_pre: int = 2,
    max_post: int = 2,
) -> Net:
    """A small labelled net with places ``p0..`` and transitions ``t0..``."""
    if n_places is None:
        n_places = rng.randint(1, max_places)
    if n_transitions is None:
        n_transitions = rng.randint(0, max_transitions)
    labels = tuple(labels)[: rng.randint(1, len(labels))]
    trans = []
    for k in range(n_transitions):
        pre = random_marking(rng, n_places, max_pre, 1)
        post = random_marking(rng, n_places, max_post, 0)
        trans.append(Transition(f"t{k}", pre, rng.choice(labels), post))
    return Net(tuple(f"p{i}" for i in range(n_places)), tuple(trans))


def random_relation(rng: random.Random, n_places: int, kind: str = PLAIN, density: float | None = None) -> PlaceRelation:
    if density is None:
        density = rng.choice((0.15, 0.3, 0.5, 0.8))
    pairs = frozenset(p for p in pair_universe(n_places, kind) if rng.random() < density)
    return PlaceRelation(n_places, pairs, kind)


def random_equivalence(rng: random.Random, n_places: int) -> PlaceRelation:
    """An equivalence relation from a random partition of the places."""
    blocks = [rng.randrange(max(1, n_places)) for _ in range(n_places)]
    pairs = frozenset((a, b) for a in range(n_places) for b in range(n_places) if blocks[a] == blocks[b])
    return PlaceRelation(n_places, pairs, PLAIN)


def merged_pair(rng: random.Random, **kwargs) -> tuple[Net, Multiset, Multiset]:
    """A net and two markings drawn independently on it."""
    net = random_net(rng, **kwargs)
    n = net.n_places
    return net, random_marking(rng, n, 2, 1), random_marking(rng, n, 2, 1)



def random_document(rng: random.Random, max_places: int = 5, max_transitions: int = 6):
    """A random :class:`~pneq.format.NetDocument` with a few named markings and odd place names."""
    from .format import NetDocument

    net = random_net(rng, max_places=max_places, max_transitions=max_transitions, labels=("a", "b", "c", "tau_1"))
    alphabet = "abcdefgxyz"
    places = []
    while len(places) < net.n_places:
        name = rng.choice(alphabet) + "".join(rng.choice(alphabet + "0123456789_'") for _ in range(rng.randint(0, 4)))
        if name not in places and name not in ("place", "trans", "marking"):
            places.append(name)
    renamed = Net(tuple(places), net.transitions)
    markings = {f"m{k}": random_marking(rng, net.n_places, 4) for k in range(rng.randint(0, 3))}
    return NetDocument(renamed, markings)

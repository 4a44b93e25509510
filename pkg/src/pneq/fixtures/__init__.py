"""Bundled example nets and relations.

Paired examples are stored as two side files (``fig4a.pnet``,
``fig4b.pnet``) with disjoint place names; :func:`corpus` returns them merged
into one net so markings of both sides can be compared.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..format import NetDocument, RelationDocument, parse_net, parse_relation

#: merged fixture name -> side files
SIDES = {
    "fig4": ("fig4a", "fig4b"),
    "fig5": ("fig5a", "fig5b"),
    "fig6": ("fig6",),
    "fig7": ("fig7a", "fig7b"),
    "fig8": ("fig8a", "fig8b"),
    "fig9": ("fig9a", "fig9b"),
    "fig10": ("fig10a", "fig10b"),
    "fig11": ("fig11a", "fig11b"),
    "fig12": ("fig12a", "fig12b"),
    "fig13": ("fig13a", "fig13b"),
    "fig14": ("fig14a", "fig14b"),
}

#: number of transitions per fixture (merged and per side)
TRANSITION_COUNTS = {
    "fig4": 4, "fig4a": 2, "fig4b": 2,
    "fig5": 4, "fig5a": 2, "fig5b": 2,
    "fig6": 1,
    "fig7": 6, "fig7a": 3, "fig7b": 3,
    "fig8": 9, "fig8a": 4, "fig8b": 5,
    "fig9": 11, "fig9a": 9, "fig9b": 2,
    "fig10": 4, "fig10a": 2, "fig10b": 2,
    "fig11": 1, "fig11a": 0, "fig11b": 1,
    "fig12": 2, "fig12a": 1, "fig12b": 1,
    "fig13": 5, "fig13a": 2, "fig13b": 3,
    "fig14": 5, "fig14a": 3, "fig14b": 2,
}  # fmt: skip

#: relation fixture -> (net fixture, dummy allowed)
RELATIONS = {
    **{f"fig6_R{i}": ("fig6", False) for i in range(1, 7)},
    "fig6_union": ("fig6", False),
    **{f"fig7_R{i}": ("fig7", False) for i in range(1, 8)},
    "fig8_pc": ("fig8", False),
    "fig9_R": ("fig9", False),
    "fig10_R": ("fig10", True),
    "fig11_R": ("fig11", True),
    "fig12_R": ("fig12", True),
    "fig13_R": ("fig13", False),
}


def _read(filename: str) -> str:
    return resources.files(__name__).joinpath(filename).read_text(encoding="utf-8")


def fixture_text(name: str) -> str:
    """Source text of a net fixture; merged names concatenate their sides."""
    if name in SIDES:
        return "".join(_read(f"{side}.pnet") for side in SIDES[name])
    if name in TRANSITION_COUNTS:
        return _read(f"{name}.pnet")
    raise KeyError(f"unknown fixture {name!r}")


@lru_cache(maxsize=None)
def fixture(name: str) -> NetDocument:
    return parse_net(fixture_text(name))


def corpus() -> dict[str, NetDocument]:
    """The merged example nets, keyed ``fig4`` .. ``fig14``."""
    return {name: fixture(name) for name in SIDES}


def names() -> list[str]:
    """Every net fixture name, merged ones first."""
    return list(SIDES) + [n for n in TRANSITION_COUNTS if n not in SIDES]


def relation_text(name: str) -> str:
    if name not in RELATIONS:
        raise KeyError(f"unknown relation fixture {name!r}")
    return _read(f"{name}.prel")


@lru_cache(maxsize=None)
def relation_fixture(name: str) -> RelationDocument:
    net_name, dummy = RELATIONS[name] if name in RELATIONS else (None, False)
    if net_name is None:
        raise KeyError(f"unknown relation fixture {name!r}")
    return parse_relation(fixture(net_name).net, relation_text(name), dummy)


def relation(name: str):
    """A relation fixture resolved to a :class:`~pneq.closure.PlaceRelation` on its net."""
    net_name, _ = RELATIONS[name]
    return relation_fixture(name).to_relation(fixture(net_name).net)

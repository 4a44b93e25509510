"""Finite checks that a place relation is a (d-, i-, i-d-) place bisimulation.

Every kind reduces to a finite set of obligations.  For each transition
``t1`` and each marking ``m`` related to its pre-set, the other side must
offer an answering transition ``t2``:

``place``
    ``pre(t2) == m``, same label, post-sets related by the additive closure.
``iplace``
    ``pre(t2) <= m``, same label, and ``post(t1)`` related to
    ``m - pre(t2) + post(t2)``.
``dplace``
    ``pre(t2) <= m``, same label, pre-sets, post-sets and
    ``post(t1)`` / ``m - pre(t2) + post(t2)`` all related by the d-additive
    closure.
``idplace``
    as ``iplace`` but with the d-additive closure.

For the d-kinds ``m`` ranges over the substitution images of the pre-set
(each token replaced by one partner, possibly the dummy), which is finite
even when the dummy is related to real places.  The symmetric obligations
swap the roles of the two sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .closure import DUMMY, PLAIN, PlaceRelation, closure_contains, related_markings, substitution_images
from .multiset import Multiset
from .net import Net

PLACE = "place"
DPLACE = "dplace"
IPLACE = "iplace"
IDPLACE = "idplace"
KINDS = (PLACE, DPLACE, IPLACE, IDPLACE)
LEFT = "left"
RIGHT = "right"


def relation_kind(kind: str) -> str:
    """Closure kind used by an equivalence kind."""
    if kind not in KINDS:
        raise ValueError(f"unknown equivalence kind {kind!r}; expected one of {', '.join(KINDS)}")
    return DUMMY if kind in (DPLACE, IDPLACE) else PLAIN


def coerce_relation(r: PlaceRelation, kind: str) -> PlaceRelation:
    """View ``r`` with the closure kind ``kind`` needs.

    Plain relations are lifted for the d-kinds.  A dummy relation is accepted
    for a plain kind only if it never mentions the dummy place.
    """
    want = relation_kind(kind)
    if r.kind == want:
        return r
    if want == DUMMY:
        return r.lift()
    if any(r.theta in pair for pair in r.pairs):
        raise ValueError(f"kind {kind!r} cannot use a relation that mentions the empty marking")
    return PlaceRelation(r.n, r.pairs, PLAIN)


@dataclass(frozen=True, order=True)
class Obligation:
    """Transition ``t`` on ``side`` must be answered from the related marking ``m``.

    For ``side == "left"`` the pair under test is ``(pre(t), m)``; for
    ``"right"`` it is ``(m, pre(t))``.
    """

    t: int
    side: str
    m: Multiset

    def format(self, net: Net) -> str:
        pre = net.format_marking(net.transitions[self.t].pre)
        pair = (pre, net.format_marking(self.m)) if self.side == LEFT else (net.format_marking(self.m), pre)
        return (
            f"{self.side} transition {net.transitions[self.t].name} "
            f"from ({pair[0]}, {pair[1]}) has no matching answer"
        )


@dataclass(frozen=True)
class CheckReport:
    verdict: str
    violations: tuple
    kind: str

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"

    def __bool__(self) -> bool:
        return self.accepted


def obligations(net: Net, r: PlaceRelation, kind: str) -> Iterator[Obligation]:
    """All obligations of ``r`` in canonical order (transition, side, marking)."""
    r = coerce_relation(r, kind)
    for t, tr in enumerate(net.transitions):
        for side in (LEFT, RIGHT):
            if r.kind == PLAIN:
                targets = related_markings(r, tr.pre, side)
            else:
                targets = [img for img, _ in substitution_images(r, tr.pre, side)]
            for m in targets:
                yield Obligation(t, side, m)


def _orient(side: str, mine, theirs):
    return (mine, theirs) if side == LEFT else (theirs, mine)


def _label_index(net: Net) -> dict:
    out: dict = {}
    for i, t in enumerate(net.transitions):
        out.setdefault(t.label, []).append(i)
    return out


def answers(net: Net, r: PlaceRelation, kind: str, ob: Obligation, by_label: dict | None = None) -> list[int]:
    """Transitions that discharge ``ob`` under ``r`` (canonical order)."""
    r = coerce_relation(r, kind)
    t1 = net.transitions[ob.t]
    if by_label is None:
        by_label = _label_index(net)
    out = []
    if kind == PLACE:
        candidates = [t for t in net.transitions_with_pre(ob.m) if net.transitions[t].label == t1.label]
    else:
        candidates = [t for t in by_label.get(t1.label, ()) if net.transitions[t].pre <= ob.m]
    for t in candidates:
        t2 = net.transitions[t]
        if kind == PLACE:
            ok = closure_contains(r, *_orient(ob.side, t1.post, t2.post)) is not None
        else:
            residual = (ob.m - t2.pre) + t2.post
            ok = True
            if kind == DPLACE:
                ok = (
                    closure_contains(r, *_orient(ob.side, t1.pre, t2.pre)) is not None
                    and closure_contains(r, *_orient(ob.side, t1.post, t2.post)) is not None
                )
            ok = ok and closure_contains(r, *_orient(ob.side, t1.post, residual)) is not None
        if ok:
            out.append(t)
    return out


def is_answered(net: Net, r: PlaceRelation, kind: str, ob: Obligation, by_label: dict | None = None) -> bool:
    return bool(answers(net, r, kind, ob, by_label))


def violations(net: Net, r: PlaceRelation, kind: str) -> Iterator[Obligation]:
    """Unanswered obligations of ``r``, lazily and in canonical order."""
    r = coerce_relation(r, kind)
    by_label = _label_index(net)
    for ob in obligations(net, r, kind):
        if not answers(net, r, kind, ob, by_label):
            yield ob


def first_violation(net: Net, r: PlaceRelation, kind: str) -> Obligation | None:
    return next(violations(net, r, kind), None)


def verify(net: Net, r: PlaceRelation, kind: str, all_violations: bool = False) -> CheckReport:
    """Check ``r`` against the finite conditions of ``kind``.

    By default the first violation ends the check; ``all_violations``
    collects every one.
    """
    found = violations(net, r, kind)
    if all_violations:
        bad = tuple(found)
    else:
        first = next(found, None)
        bad = () if first is None else (first,)
    return CheckReport("rejected" if bad else "accepted", bad, kind)


def verify_place(net: Net, r: PlaceRelation, all_violations: bool = False) -> CheckReport:
    return verify(net, r, PLACE, all_violations)


def verify_dplace(net: Net, r: PlaceRelation, all_violations: bool = False) -> CheckReport:
    return verify(net, r, DPLACE, all_violations)


def verify_iplace(net: Net, r: PlaceRelation, all_violations: bool = False) -> CheckReport:
    return verify(net, r, IPLACE, all_violations)


def verify_idplace(net: Net, r: PlaceRelation, all_violations: bool = False) -> CheckReport:
    return verify(net, r, IDPLACE, all_violations)

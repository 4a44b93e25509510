"""Line-oriented text format for nets (``.pnet``) and place relations (``.prel``).

Net files::

    # comment
    place s1
    place s2
    trans t1 : s1 -a-> 2*s2
    trans : s2 -b-> 0
    marking init = s1 + s2

Relation files hold one ``lhs ~ rhs`` pair per line; ``0`` stands for the
empty marking used as a dummy place.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NetFormatError
from .multiset import EMPTY, Multiset
from .net import Net, Transition

THETA_NAME = "0"

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>-(?P<label>[A-Za-z_][A-Za-z0-9_']*)->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<nat>\d+)
  | (?P<op>[*+:=~])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(line):
        match = _TOKEN.match(line, pos)
        if match is None:
            raise NetFormatError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = match.lastgroup
        if kind == "label":
            kind = "arrow"
        if kind == "arrow":
            toks.append(_Tok("arrow", match.group("label"), pos + 1))
        elif kind == "op":
            toks.append(_Tok(match.group(), match.group(), pos + 1))
        elif kind != "ws":
            toks.append(_Tok(kind, match.group(), pos + 1))
        pos = match.end()
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok], lineno: int, line: str):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.end_col = len(line.rstrip()) + 1

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, message: str) -> NetFormatError:
        tok = self.peek()
        return NetFormatError(message, self.lineno, tok.col if tok else self.end_col)

    def take(self, kind: str, what: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            found = "end of line" if tok is None else repr(tok.text)
            raise self.error(f"expected {what or kind}, found {found}")
        self.i += 1
        return tok

    def accept(self, kind: str) -> _Tok | None:
        tok = self.peek()
        if tok is not None and tok.kind == kind:
            self.i += 1
            return tok
        return None

    def done(self) -> None:
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek().text!r}")


def _mexpr(cur: _Cursor) -> tuple[list[tuple[str, int, int]], int]:
    """Parse ``term ('+' term)*`` or ``0``; returns ``([(name, count, col)], col)``."""
    start = cur.peek()
    if start is None:
        raise cur.error("expected a multiset expression")
    if start.kind == "nat" and start.text == "0":
        nxt = cur.toks[cur.i + 1] if cur.i + 1 < len(cur.toks) else None
        if nxt is None or nxt.kind != "*":
            cur.i += 1
            return [], start.col
    terms = []
    while True:
        tok = cur.peek()
        count = 1
        if tok is not None and tok.kind == "nat":
            cur.i += 1
            count = int(tok.text)
            cur.take("*", "'*'")
        name = cur.take("ident", "a place name")
        terms.append((name.text, count, name.col))
        if not cur.accept("+"):
            return terms, start.col


def _resolve(terms, index: dict, lineno: int) -> Multiset:
    counts: dict = {}
    for name, count, col in terms:
        if name not in index:
            raise NetFormatError(f"undeclared place {name!r}", lineno, col)
        counts[index[name]] = counts.get(index[name], 0) + count
    return Multiset(counts)


def _lines(text: str):
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


@dataclass(frozen=True)
class NetDocument:
    net: Net
    named_markings: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, NetDocument):
            return NotImplemented
        return self.net == other.net and list(self.named_markings.items()) == list(
            other.named_markings.items()
        )

    def __hash__(self):
        return hash(self.net)


def parse_net(text: str) -> NetDocument:
    """Parse a ``.pnet`` document, preserving declaration order."""
    places: list[str] = []
    place_lines: dict = {}
    pending_trans = []
    pending_markings = []
    for lineno, line in _lines(text):
        cur = _Cursor(_tokenize(line, lineno), lineno, line)
        head = cur.take("ident", "'place', 'trans' or 'marking'")
        if head.text == "place":
            name = cur.take("ident", "a place name")
            cur.done()
            if name.text in place_lines:
                raise NetFormatError(f"duplicate place {name.text!r}", lineno, name.col)
            place_lines[name.text] = lineno
            places.append(name.text)
        elif head.text == "trans":
            name = cur.accept("ident")
            cur.take(":", "':'")
            pre, pre_col = _mexpr(cur)
            if not pre:
                raise NetFormatError("empty pre-set", lineno, pre_col)
            arrow = cur.take("arrow", "'-label->'")
            post, _ = _mexpr(cur)
            cur.done()
            pending_trans.append((lineno, name, pre, arrow.text, post))
        elif head.text == "marking":
            name = cur.take("ident", "a marking name")
            cur.take("=", "'='")
            terms, _ = _mexpr(cur)
            cur.done()
            pending_markings.append((lineno, name, terms))
        else:
            raise NetFormatError(f"unknown declaration {head.text!r}", lineno, head.col)

    index = {p: i for i, p in enumerate(places)}
    transitions = []
    seen: dict = {}
    for k, (lineno, name, pre, label, post) in enumerate(pending_trans):
        tname = name.text if name else f"t{k + 1}"
        if tname in seen:
            raise NetFormatError(f"duplicate transition {tname!r}", lineno, name.col if name else 1)
        seen[tname] = lineno
        transitions.append(Transition(tname, _resolve(pre, index, lineno), label, _resolve(post, index, lineno)))
    net = Net(tuple(places), tuple(transitions))
    markings = {}
    for lineno, name, terms in pending_markings:
        if name.text in markings:
            raise NetFormatError(f"duplicate marking {name.text!r}", lineno, name.col)
        markings[name.text] = _resolve(terms, index, lineno)
    return NetDocument(net, markings)


def parse_marking(net: Net, text: str) -> Multiset:
    """Evaluate a multiset expression such as ``2*s1 + s2`` (``0`` is the empty marking)."""
    toks = _tokenize(text, 1)
    cur = _Cursor(toks, 1, text)
    terms, _ = _mexpr(cur)
    cur.done()
    return _resolve(terms, {p: i for i, p in enumerate(net.places)}, 1)


def _format_mexpr(net: Net, m: Multiset) -> str:
    return net.format_marking(m)


def serialize_net(doc: NetDocument | Net) -> str:
    if isinstance(doc, Net):
        doc = NetDocument(doc, {})
    net = doc.net
    out = [f"place {p}" for p in net.places]
    for t in net.transitions:
        out.append(f"trans {t.name} : {_format_mexpr(net, t.pre)} -{t.label}-> {_format_mexpr(net, t.post)}")
    for name, m in doc.named_markings.items():
        out.append(f"marking {name} = {_format_mexpr(net, m)}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class RelationDocument:
    """Named pairs of a place relation; ``"0"`` names the dummy place."""

    pairs: frozenset
    dummy_allowed: bool = False

    def to_relation(self, net: Net):
        from .closure import PlaceRelation

        n = net.n_places

        def idx(name):
            return n if name == THETA_NAME else net.place(name)

        kind = "dummy" if self.dummy_allowed else "plain"
        return PlaceRelation(n, frozenset((idx(a), idx(b)) for a, b in self.pairs), kind)

    def sorted_pairs(self, net: Net | None = None) -> list:
        if net is None:
            return sorted(self.pairs)
        n = net.n_places
        order = {p: i for i, p in enumerate(net.places)} | {THETA_NAME: n}
        return sorted(self.pairs, key=lambda ab: (order[ab[0]], order[ab[1]]))


def parse_relation(net: Net, text: str, dummy_allowed: bool = False) -> RelationDocument:
    pairs = set()
    for lineno, line in _lines(text):
        cur = _Cursor(_tokenize(line, lineno), lineno, line)
        ends = []
        for side in range(2):
            tok = cur.peek()
            if tok is not None and tok.kind == "nat" and tok.text == THETA_NAME:
                if not dummy_allowed:
                    raise NetFormatError("'0' (empty marking) needs a d-kind relation", lineno, tok.col)
                cur.i += 1
                ends.append(THETA_NAME)
            else:
                name = cur.take("ident", "a place name or '0'")
                if name.text not in net._place_index:
                    raise NetFormatError(f"unknown place {name.text!r}", lineno, name.col)
                ends.append(name.text)
            if side == 0:
                cur.take("~", "'~'")
        cur.done()
        if ends == [THETA_NAME, THETA_NAME]:
            continue  # (0, 0) is implicit in both closures
        pairs.add(tuple(ends))
    return RelationDocument(frozenset(pairs), dummy_allowed)


def serialize_relation(doc: RelationDocument, net: Net | None = None) -> str:
    return "".join(f"{a} ~ {b}\n" for a, b in doc.sorted_pairs(net))


def relation_document(net: Net, relation) -> RelationDocument:
    """Named view of a :class:`~pneq.closure.PlaceRelation` over ``net``."""
    names = list(net.places) + [THETA_NAME]
    return RelationDocument(
        frozenset((names[a], names[b]) for a, b in relation.pairs), relation.kind == "dummy"
    )

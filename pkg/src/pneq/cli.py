"""Command-line front end (``pneq``).

Exit codes: 0 equivalent / accepted / related, 1 not, 2 usage or input
error, 3 a search budget or state bound was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import fixtures
from .closure import PlaceRelation, closure_contains
from .decide import EXHAUSTIVE, MAX_INDEX_SET, SATURATION, decide, maximal_bisimulations
from .errors import BoundExceeded, BudgetExceeded, NetFormatError, NotEnabled, PneqError, TooLarge
from .format import THETA_NAME, NetDocument, parse_net, parse_relation, serialize_net
from .net import Net, fire, fire_step, make_step
from .oracles import bounded_game_oracle, interleaving_bisimilar, step_bisimilar
from .randomnet import make_rng, random_net
from .verify import KINDS, relation_kind, verify

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


# Input loading ----------------------------------------------------------------


def load_net(spec: str) -> NetDocument:
    """Read a net from a path, ``corpus:NAME``, or a bundled fixture file name."""
    if spec.startswith("corpus:"):
        name = spec.split(":", 1)[1]
        try:
            return fixtures.fixture(name)
        except KeyError:
            raise InputError(f"no corpus fixture named {name!r}") from None
    path = Path(spec)
    if path.exists():
        return parse_net(path.read_text(encoding="utf-8"))
    if path.suffix == ".pnet" and path.stem in fixtures.TRANSITION_COUNTS and not path.parent.name:
        return fixtures.fixture(path.stem)
    raise InputError(f"cannot read net file {spec!r}")


def load_relation_text(spec: str) -> str:
    if spec.startswith("corpus:"):
        name = spec.split(":", 1)[1]
        try:
            return fixtures.relation_text(name)
        except KeyError:
            raise InputError(f"no corpus relation named {name!r}") from None
    path = Path(spec)
    if path.exists():
        return path.read_text(encoding="utf-8")
    raise InputError(f"cannot read relation file {spec!r}")


def _names(net: Net) -> list[str]:
    return list(net.places) + [THETA_NAME]


def relation_pairs(net: Net, r: PlaceRelation) -> list[list[str]]:
    names = _names(net)
    return [[names[a], names[b]] for a, b in sorted(r.pairs)]


def pairing_pairs(net: Net, witness) -> list[list[str]]:
    names = _names(net)
    return [[names[a], names[b]] for a, b in witness]


def _format_pairs(pairs) -> str:
    return "{" + ", ".join(f"({a}, {b})" for a, b in pairs) + "}"


def _violation_record(net: Net, ob) -> dict:
    return {"side": ob.side, "transition": net.transitions[ob.t].name, "marking": net.format_marking(ob.m)}


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))


# Commands ---------------------------------------------------------------------


def cmd_check(args) -> int:
    doc = load_net(args.net)
    net = doc.net
    m1, m2 = _marking(doc, args.m1), _marking(doc, args.m2)
    start = time.perf_counter()
    verdict = decide(
        net,
        args.equiv,
        m1,
        m2,
        strategy=args.strategy,
        budget=args.budget,
        canonical=args.canonical,
        time_limit=args.time_limit,
        parallel=args.parallel,
        max_index_set=args.max_index_set,
    )
    elapsed = time.perf_counter() - start
    report = {
        "command": ["check", args.net, args.m1, args.m2],
        "verdict": "equivalent" if verdict.equivalent else "not-equivalent",
        "kind": args.equiv,
        "witness": relation_pairs(net, verdict.relation) if verdict.equivalent else None,
        "pairing": pairing_pairs(net, verdict.witness[1]) if verdict.equivalent else None,
        "violations": [],
        "stats": {
            "strategy": verdict.strategy,
            "relations_examined": verdict.relations_examined,
            "elapsed": round(elapsed, 6),
        },
    }
    lines = [f"{report['verdict']} ({args.equiv}, {verdict.strategy}, {verdict.relations_examined} relations examined)"]
    if verdict.equivalent and args.witness:
        lines.append(f"relation: {_format_pairs(report['witness'])}")
        lines.append(f"pairing:  {_format_pairs(report['pairing'])}")
    _emit(args, report, lines)
    return EXIT_YES if verdict.equivalent else EXIT_NO


def _marking(doc: NetDocument, text: str):
    if text in doc.named_markings:
        return doc.named_markings[text]
    return doc.net.marking(text)


def _relation(net: Net, spec: str, dummy: bool) -> PlaceRelation:
    return parse_relation(net, load_relation_text(spec), dummy).to_relation(net)


def cmd_verify(args) -> int:
    net = load_net(args.net).net
    r = _relation(net, args.relation, relation_kind(args.equiv) == "dummy")
    report_ = verify(net, r, args.equiv, all_violations=args.all_violations)
    report = {
        "command": ["verify", args.net, args.relation],
        "verdict": report_.verdict,
        "kind": args.equiv,
        "witness": relation_pairs(net, r),
        "violations": [_violation_record(net, ob) for ob in report_.violations],
        "stats": {"pairs": len(r.pairs)},
    }
    lines = [f"{report_.verdict} ({args.equiv})"]
    lines += [f"  {ob.format(net)}" for ob in report_.violations]
    _emit(args, report, lines)
    return EXIT_YES if report_.accepted else EXIT_NO


def cmd_closure(args) -> int:
    doc = load_net(args.net)
    net = doc.net
    r = _relation(net, args.relation, args.dummy)
    m1, m2 = _marking(doc, args.m1), _marking(doc, args.m2)
    witness = closure_contains(r, m1, m2)
    report = {
        "command": ["closure", args.net, args.relation, args.m1, args.m2],
        "verdict": "related" if witness is not None else "not-related",
        "kind": r.kind,
        "witness": pairing_pairs(net, witness) if witness is not None else None,
        "violations": [],
        "stats": {},
    }
    if witness is None:
        lines = ["not related"]
    else:
        lines = [f"related: {_format_pairs(report['witness'])}"]
    _emit(args, report, lines)
    return EXIT_YES if witness is not None else EXIT_NO


def cmd_maximal(args) -> int:
    net = load_net(args.net).net
    found = maximal_bisimulations(net, args.equiv, args.max_index_set)
    report = {
        "command": ["maximal", args.net],
        "verdict": "listed",
        "kind": args.equiv,
        "witness": [relation_pairs(net, r) for r in found],
        "violations": [],
        "stats": {"maximal": len(found)},
    }
    lines = [f"{len(found)} maximal {args.equiv} bisimulations"]
    lines += [_format_pairs(relation_pairs(net, r)) for r in found]
    _emit(args, report, lines)
    return EXIT_YES


def cmd_fire(args) -> int:
    doc = load_net(args.net)
    net = doc.net
    m = _marking(doc, args.marking)
    if args.trans is not None:
        result = fire(net, m, args.trans)
    else:
        names = [part.strip() for part in args.step.split("+")]
        occurrences: dict = {}
        for part in names:
            count, _, name = part.rpartition("*")
            occurrences[name.strip()] = occurrences.get(name.strip(), 0) + (int(count) if count else 1)
        result = fire_step(net, m, make_step(net, occurrences))
    text = net.format_marking(result)
    _emit(args, {"command": ["fire"], "verdict": "fired", "marking": text}, [text])
    return EXIT_YES


def cmd_oracle(args) -> int:
    doc = load_net(args.net)
    net = doc.net
    if args.which == "game":
        r = _relation(net, args.relation, relation_kind(args.equiv) == "dummy")
        found = bounded_game_oracle(net, r, args.equiv, args.bound)
        report = {
            "command": ["oracle", "game", args.net, args.relation],
            "verdict": "pass" if found is None else "violation",
            "kind": args.equiv,
            "violations": []
            if found is None
            else [
                {
                    "m1": net.format_marking(found.m1),
                    "m2": net.format_marking(found.m2),
                    "transition": net.transitions[found.t].name,
                    "side": found.side,
                }
            ],
        }
        lines = ["pass" if found is None else f"violation {found.format(net)}"]
        _emit(args, report, lines)
        return EXIT_YES if found is None else EXIT_NO
    m1, m2 = _marking(doc, args.m1), _marking(doc, args.m2)
    check = interleaving_bisimilar if args.which == "int" else step_bisimilar
    same = check(net, m1, m2, args.max_states)
    kind = "interleaving" if args.which == "int" else "step"
    verdict = "equivalent" if same else "not-equivalent"
    _emit(args, {"command": ["oracle", args.which], "verdict": verdict, "kind": kind}, [f"{verdict} ({kind})"])
    return EXIT_YES if same else EXIT_NO


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in fixtures.names():
            print(f"{name}\t{fixtures.TRANSITION_COUNTS[name]} transitions")
        for name in fixtures.RELATIONS:
            print(f"{name}\trelation on {fixtures.RELATIONS[name][0]}")
        return EXIT_YES
    if args.name is None:
        raise InputError("corpus show/export needs a fixture name")
    if args.name in fixtures.RELATIONS:
        text, suffix = fixtures.relation_text(args.name), ".prel"
    else:
        try:
            text, suffix = fixtures.fixture_text(args.name), ".pnet"
        except KeyError:
            raise InputError(f"no corpus fixture named {args.name!r}") from None
    if args.action == "show":
        sys.stdout.write(text)
        return EXIT_YES
    out = Path(args.output or ".") / f"{args.name}{suffix}"
    out.write_text(text, encoding="utf-8")
    print(out)
    return EXIT_YES


def cmd_random_net(args) -> int:
    rng = make_rng(args.seed)
    net = random_net(rng, n_places=args.places, n_transitions=args.transitions)
    sys.stdout.write(serialize_net(net))
    return EXIT_YES


# Argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pneq", description="Place-relation equivalences of P/T nets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kind=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if kind:
            p.add_argument("--equiv", choices=KINDS, default="place", help="equivalence kind (default: place)")

    p = sub.add_parser("check", help="decide whether two markings are equivalent")
    p.add_argument("net", help="net file, or corpus:NAME")
    p.add_argument("m1")
    p.add_argument("m2")
    common(p)
    p.add_argument("--witness", action="store_true", help="print the accepting relation and pairing")
    p.add_argument("--strategy", choices=(SATURATION, EXHAUSTIVE), default=SATURATION)
    p.add_argument("--canonical", action="store_true", help="report the least witness (exhaustive scan)")
    p.add_argument("--budget", type=int, default=None, help="max relations examined by saturation")
    p.add_argument("--time-limit", type=float, default=None, help="seconds before saturation gives up")
    p.add_argument("--parallel", type=int, default=1, help="worker processes for the exhaustive scan")
    p.add_argument("--max-index-set", type=int, default=MAX_INDEX_SET)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="check that a relation is a bisimulation of the given kind")
    p.add_argument("net")
    p.add_argument("relation", help="relation file, or corpus:NAME")
    common(p)
    p.add_argument("--all-violations", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("closure", help="test closure membership of two markings")
    p.add_argument("net")
    p.add_argument("relation")
    p.add_argument("m1")
    p.add_argument("m2")
    p.add_argument("--dummy", action="store_true", help="use the d-additive closure")
    common(p, kind=False)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("maximal", help="list maximal bisimulations of a small net")
    p.add_argument("net")
    common(p)
    p.add_argument("--max-index-set", type=int, default=MAX_INDEX_SET)
    p.set_defaults(func=cmd_maximal)

    p = sub.add_parser("fire", help="fire a transition or a step")
    p.add_argument("net")
    p.add_argument("marking")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--trans")
    group.add_argument("--step", help="e.g. 't1 + 2*t2'")
    common(p, kind=False)
    p.set_defaults(func=cmd_fire)

    p = sub.add_parser("oracle", help="brute-force reference checks")
    osub = p.add_subparsers(dest="which", required=True)
    for which in ("int", "step"):
        q = osub.add_parser(which, help=f"{'interleaving' if which == 'int' else 'step'} bisimilarity")
        q.add_argument("net")
        q.add_argument("m1")
        q.add_argument("m2")
        q.add_argument("--max-states", type=int, default=10_000)
        common(q, kind=False)
        q.set_defaults(func=cmd_oracle)
    q = osub.add_parser("game", help="bounded one-step game check of a relation")
    q.add_argument("net")
    q.add_argument("relation")
    q.add_argument("--bound", type=int, default=4)
    common(q)
    q.set_defaults(func=cmd_oracle)

    p = sub.add_parser("corpus", help="list, show or export bundled fixtures")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output", help="directory for export")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("random-net", help="print a seeded random net")
    p.add_argument("--seed", type=int, default=None, help="defaults to $PNEQ_SEED or a fixed seed")
    p.add_argument("--places", type=int, default=None)
    p.add_argument("--transitions", type=int, default=None)
    p.set_defaults(func=cmd_random_net)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, BoundExceeded, TooLarge) as exc:
        print(f"pneq: limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InputError, NetFormatError, NotEnabled, KeyError, ValueError, PneqError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"pneq: error: {message}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance criteria 1-7.

Each criterion records a PASS/FAIL line that is printed in pytest's terminal
summary.  Run ``python3 tests/test_acceptance.py`` to print the lines
directly.
"""

import io
import random
import time
from contextlib import redirect_stderr, redirect_stdout
from itertools import islice

from pneq.cli import main as cli_main
from pneq.closure import DUMMY, PLAIN, closure_contains, relation_compose, relation_identity, relation_inverse
from pneq.decide import EXHAUSTIVE, SATURATION, decide, enumerate_bisimulations, maximal_bisimulations
from pneq.errors import BoundExceeded, BudgetExceeded, TooLarge
from pneq.fixtures import RELATIONS, corpus, fixture, fixture_text, names, relation, relation_text
from pneq.format import parse_net, parse_relation, relation_document, serialize_net, serialize_relation
from pneq.multiset import Multiset, multisets_up_to
from pneq.oracles import (
    bounded_game_oracle,
    closure_oracle,
    game_violation_at,
    interleaving_bisimilar,
    step_bisimilar,
)
from pneq.randomnet import make_rng, merged_pair, random_document, random_equivalence, random_marking, random_net, random_relation
from pneq.verify import KINDS, LEFT, coerce_relation, relation_kind, verify

RESULTS: dict = {}


def record(number: int, title: str, failures: list, elapsed: float, detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} {status}: {title} ({elapsed:.1f}s{', ' + detail if detail else ''})"
    for f in failures[:10]:
        line += f"\n    - {f}"
    RESULTS[number] = line
    print(line)


def _pick(doc, text):
    return doc.named_markings.get(text) or doc.net.marking(text)


def _cli(*argv) -> int:
    with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
        return cli_main(list(argv))


# 1. Verdict table ---------------------------------------------------------------


def _verdict_table() -> list:
    failures = []

    def expect(label, got, want):
        if got != want:
            failures.append(f"{label}: got {got}, expected {want}")

    def eq(fig, kind, a, b, **kw):
        doc = fixture(fig)
        return decide(doc.net, kind, _pick(doc, a), _pick(doc, b), **kw).equivalent

    def accepted(name, kind):
        return verify(fixture(RELATIONS[name][0]).net, relation(name), kind).accepted

    def interleaving(fig, a, b):
        doc = fixture(fig)
        return interleaving_bisimilar(doc.net, _pick(doc, a), _pick(doc, b))

    expect("fig4 s1 ~p s3", eq("fig4", "place", "s1", "s3"), False)
    expect("fig4 s1 ~int s3", interleaving("fig4", "s1", "s3"), True)
    expect("fig5 s1 ~p s5", eq("fig5", "place", "s1", "s5"), False)

    expect("fig6 R1 accepted", accepted("fig6_R1", "place"), True)
    expect("fig6 R2 accepted", accepted("fig6_R2", "place"), True)
    expect("fig6 R1 u R2 accepted", accepted("fig6_union", "place"), False)
    expect("fig6 2*s1+s2 ~p s1+2*s2", eq("fig6", "place", "2*s1 + s2", "s1 + 2*s2"), True)
    expect("fig6 s1+s2 ~p 2*s3", eq("fig6", "place", "s1 + s2", "2*s3"), False)
    listed = {relation(f"fig6_R{i}") for i in range(1, 7)}
    expect("fig6 maximal = R1..R6", set(maximal_bisimulations(fixture("fig6").net, "place")) == listed, True)

    for i in range(1, 8):
        expect(f"fig7 R{i} accepted", accepted(f"fig7_R{i}", "place"), True)

    expect("fig8 producer-consumer relation accepted", accepted("fig8_pc", "place"), True)
    expect("fig8 cli verify", _cli("verify", "--equiv", "place", "corpus:fig8", "corpus:fig8_pc"), 0)
    expect("fig8 cli closure pc1 pc2", _cli("closure", "corpus:fig8", "corpus:fig8_pc", "pc1", "pc2"), 0)
    start = time.monotonic()
    expect("fig8 pc1 ~p pc2 (saturation)", eq("fig8", "place", "pc1", "pc2", strategy=SATURATION, time_limit=300), True)
    expect("fig8 saturation within 5 minutes", time.monotonic() - start < 300, True)

    expect("fig9 relation accepted", accepted("fig9_R", "place"), True)
    expect("fig9 ma ~p mb", eq("fig9", "place", "ma", "mb"), True)

    expect("fig10 relation accepted as dplace", accepted("fig10_R", "dplace"), True)
    expect("fig10 s1 ~d s4", eq("fig10", "dplace", "s1", "s4"), True)
    expect("fig10 s1 ~p s4", eq("fig10", "place", "s1", "s4"), False)
    expect("fig10 s1 ~i s4", eq("fig10", "iplace", "s1", "s4"), False)
    expect("fig11 relation accepted as dplace", accepted("fig11_R", "dplace"), True)
    expect("fig12 s1 ~d s3+s4", eq("fig12", "dplace", "s1", "s3 + s4"), False)

    expect("fig13 relation accepted as iplace", accepted("fig13_R", "iplace"), True)
    expect("fig13 relation accepted as place", accepted("fig13_R", "place"), False)
    expect("fig13 s1+s2 ~i s3+s4", eq("fig13", "iplace", "s1 + s2", "s3 + s4"), True)
    expect("fig13 s1+s2 ~d s3+s4", eq("fig13", "dplace", "s1 + s2", "s3 + s4"), False)
    doc = fixture("fig13")
    expect("fig13 s1+s2 ~s s3+s4", step_bisimilar(doc.net, _pick(doc, "s1 + s2"), _pick(doc, "s3 + s4")), True)

    expect("fig14 s1 ~p s4", eq("fig14", "place", "s1", "s4"), False)
    expect("fig14 s1 ~int s4", interleaving("fig14", "s1", "s4"), True)
    expect("fig14 2*s1 ~int 2*s4", interleaving("fig14", "2*s1", "2*s4"), False)
    return failures


def test_criterion_1_verdict_table():
    start = time.monotonic()
    failures = _verdict_table()
    record(1, "verdict table", failures, time.monotonic() - start)
    assert not failures, failures


# 2. Closure oracle agreement --------------------------------------------------


def _agree(r, a, b) -> bool:
    return (closure_contains(r, a, b) is not None) == closure_oracle(r, a, b)


def _sampled_pairs(rng, left_places, right_places, count):
    for _ in range(count):
        big = rng.randint(5, 8)
        other = rng.randint(0, 12 - big)
        sizes = (big, other) if rng.random() < 0.5 else (other, big)
        a = Multiset(rng.choice(left_places) for _ in range(sizes[0])) if left_places else Multiset()
        b = Multiset(rng.choice(right_places) for _ in range(sizes[1])) if right_places else Multiset()
        yield a, b


def _side_places(r, side, n_places):
    """Places in the relation's domain (or range) plus one place outside it."""
    used = sorted({p[side] for p in r.pairs if p[side] != r.theta})
    outside = [s for s in range(n_places) if s not in used]
    return used + outside[:1]


def _closure_agreement() -> tuple[list, int]:
    failures = []
    checked = 0
    rng = make_rng(2)
    cases = []
    for name in RELATIONS:
        cases.append((name, relation(name)))
    # nets without a relation fixture are covered through their identity
    covered = {net_name for net_name, _ in RELATIONS.values()}
    for name, doc in corpus().items():
        if name not in covered:
            cases.append((f"identity on {name}", relation_identity(doc.net)))
    for k in range(100):
        n = rng.randint(1, 5)
        cases.append((f"random relation {k}", random_relation(rng, n, rng.choice((PLAIN, DUMMY)))))
    for label, r in cases:
        left, right = _side_places(r, 0, r.n), _side_places(r, 1, r.n)
        left_ms = list(multisets_up_to(left, 4))
        right_ms = list(multisets_up_to(right, 4))
        for a in left_ms:
            for b in right_ms:
                checked += 1
                if not _agree(r, a, b):
                    failures.append(f"{label}: ({a}, {b})")
        for a, b in _sampled_pairs(rng, left, right, 60):
            checked += 1
            if not _agree(r, a, b):
                failures.append(f"{label}: ({a}, {b})")
    return failures, checked


def test_criterion_2_closure_oracle():
    start = time.monotonic()
    failures, checked = _closure_agreement()
    record(2, "closure matches decomposition oracle", failures, time.monotonic() - start, f"{checked} pairs")
    assert not failures, failures


# 3. Verifier against the game oracle ------------------------------------------


def _candidate_relation(rng, net, kind):
    """A random relation, or one grown around a decide witness so acceptances occur too."""
    rkind = relation_kind(kind)
    roll = rng.random()
    if roll < 0.4:
        return random_relation(rng, net.n_places, rkind)
    if roll < 0.7:
        m1, m2 = random_marking(rng, net.n_places, 2, 1), random_marking(rng, net.n_places, 2, 1)
        try:
            v = decide(net, kind, m1, m2, budget=2000)
        except BudgetExceeded:
            v = None
        if v is not None and v.equivalent:
            return v.relation
    base = relation_identity(net, rkind)
    if roll < 0.85:
        return base
    return base | random_relation(rng, net.n_places, rkind, 0.15)


def _game_consistency() -> tuple[list, dict]:
    failures = []
    tally = {}
    for kind in KINDS:
        rng = make_rng(300 + KINDS.index(kind))
        accepted = 0
        for k in range(100):
            net = random_net(rng, max_places=5, max_transitions=6)
            r = _candidate_relation(rng, net, kind)
            report = verify(net, r, kind)
            found = bounded_game_oracle(net, r, kind, 4)
            if report.accepted:
                accepted += 1
                if found is not None:
                    failures.append(f"{kind} sample {k}: accepted but game finds {found.format(net)}")
                continue
            ob = report.violations[0]
            pre = net.transitions[ob.t].pre
            m1, m2 = (pre, ob.m) if ob.side == LEFT else (ob.m, pre)
            direct = game_violation_at(net, coerce_relation(r, kind), kind, m1, m2)
            if found is None or direct is None:
                failures.append(f"{kind} sample {k}: rejected at {ob.format(net)} but the game has no violation")
        tally[kind] = accepted
    return failures, tally


def test_criterion_3_verify_matches_game():
    start = time.monotonic()
    failures, tally = _game_consistency()
    detail = "accepted per kind " + ", ".join(f"{k}={v}" for k, v in tally.items())
    record(3, "verify matches bounded game oracle", failures, time.monotonic() - start, detail)
    assert not failures, failures


# 4. Strategy agreement -----------------------------------------------------------


def _strategy_agreement() -> tuple[list, dict]:
    failures = []
    tally = {}
    for kind in KINDS:
        rng = make_rng(1000 + KINDS.index(kind))
        places = 3 if relation_kind(kind) == DUMMY else 4
        yes = 0
        for k in range(100):
            net, m1, m2 = merged_pair(rng, max_places=places, max_transitions=5)
            a = decide(net, kind, m1, m2, strategy=EXHAUSTIVE)
            b = decide(net, kind, m1, m2, strategy=SATURATION)
            yes += a.equivalent
            if a.equivalent != b.equivalent:
                failures.append(f"{kind} net {k}: exhaustive {a.equivalent}, saturation {b.equivalent}")
        tally[kind] = yes
    return failures, tally


def test_criterion_4_strategy_agreement():
    start = time.monotonic()
    failures, tally = _strategy_agreement()
    detail = "equivalent per kind " + ", ".join(f"{k}={v}" for k, v in tally.items())
    record(4, "exhaustive and saturation agree", failures, time.monotonic() - start, detail)
    assert not failures, failures


# 5. Hierarchy -----------------------------------------------------------------------

IMPLICATIONS = [
    ("place", "dplace"),
    ("place", "iplace"),
    ("dplace", "idplace"),
    ("iplace", "idplace"),
    ("idplace", "step"),
    ("step", "interleaving"),
]

CORPUS_QUERIES = [
    ("fig4", "s1", "s3"),
    ("fig5", "s1", "s5"),
    ("fig5", "s2 + s3", "2*s6"),
    ("fig6", "2*s1 + s2", "s1 + 2*s2"),
    ("fig6", "s1 + s2", "2*s3"),
    ("fig6", "s1", "s3"),
    ("fig7", "s1", "s5"),
    ("fig8", "pc1", "pc2"),
    ("fig9", "ma", "mb"),
    ("fig10", "s1", "s4"),
    ("fig11", "s1", "s2"),
    ("fig12", "s1", "s3 + s4"),
    ("fig13", "s1 + s2", "s3 + s4"),
    ("fig14", "s1", "s4"),
    ("fig14", "2*s1", "2*s4"),
]


def _verdicts(net, m1, m2) -> dict:
    out = {}
    for kind in KINDS:
        try:
            out[kind] = decide(net, kind, m1, m2, time_limit=10).equivalent
        except BudgetExceeded:
            pass
    for name, check in (("step", step_bisimilar), ("interleaving", interleaving_bisimilar)):
        try:
            out[name] = check(net, m1, m2, max_states=200)
        except BoundExceeded:
            pass
    return out


def _hierarchy() -> tuple[list, int, int]:
    failures = []
    instances = []
    for fig, a, b in CORPUS_QUERIES:
        doc = fixture(fig)
        instances.append((fig, doc.net, _pick(doc, a), _pick(doc, b)))
    rng = make_rng(500)
    for k in range(200):
        net, m1, m2 = merged_pair(rng, max_places=4, max_transitions=5)
        instances.append((f"random {k}", net, m1, m2))
    checked = skipped = 0
    for label, net, m1, m2 in instances:
        v = _verdicts(net, m1, m2)
        for strong, weak in IMPLICATIONS:
            if strong not in v or weak not in v:
                skipped += 1
                continue
            checked += 1
            if v[strong] and not v[weak]:
                failures.append(f"{label}: {strong} holds but {weak} does not")
    return failures, checked, skipped


def test_criterion_5_hierarchy():
    start = time.monotonic()
    failures, checked, skipped = _hierarchy()
    detail = f"{checked} implications checked, {skipped} skipped where a check did not terminate"
    record(5, "equivalence hierarchy", failures, time.monotonic() - start, detail)
    assert not failures, failures


# 6. Algebraic laws -----------------------------------------------------------------


def _algebra() -> tuple[list, dict]:
    failures = []
    counts = {"identity": 0, "inverse": 0, "composition": 0, "monotonicity": 0, "additivity": 0, "size law": 0, "subtractivity": 0}
    rng = make_rng(600)

    # closure of accepted relations under identity, inverse and composition
    for k in range(120):
        kind = KINDS[k % 4]
        places = 2 if relation_kind(kind) == DUMMY else 3
        net = random_net(rng, max_places=places, max_transitions=4)
        identity = relation_identity(net, relation_kind(kind))
        counts["identity"] += 1
        if not verify(net, identity, kind).accepted:
            failures.append(f"identity rejected ({kind}, net {k})")
        accepted = list(islice(enumerate_bisimulations(net, kind), 200))
        sample = rng.sample(accepted, min(4, len(accepted)))
        for r1 in sample:
            counts["inverse"] += 1
            if not verify(net, relation_inverse(r1), kind).accepted:
                failures.append(f"inverse rejected ({kind}, net {k})")
            for r2 in sample:
                counts["composition"] += 1
                if not verify(net, relation_compose(r1, r2), kind).accepted:
                    failures.append(f"composition rejected ({kind}, net {k})")

    def member(r, a, b):
        return closure_contains(r, a, b) is not None

    def related_pair(r, max_pairs=4):
        pairs = sorted(r.pairs)
        chosen = [rng.choice(pairs) for _ in range(rng.randint(0, max_pairs))] if pairs else []
        return Multiset(a for a, _ in chosen if a != r.theta), Multiset(b for _, b in chosen if b != r.theta)

    for k in range(1000):
        n = rng.randint(1, 4)
        kind = rng.choice((PLAIN, DUMMY))
        r = random_relation(rng, n, kind)
        a, b = random_marking(rng, n, 4), random_marking(rng, n, 4)
        # monotonicity: membership survives adding pairs
        counts["monotonicity"] += 1
        bigger = r | random_relation(rng, n, kind)
        if member(r, a, b) and not member(bigger, a, b):
            failures.append(f"monotonicity: {sorted(r.pairs)} ({a}, {b})")
        # additivity: sums of members are members
        counts["additivity"] += 1
        (a1, b1), (a2, b2) = related_pair(r), related_pair(r)
        if not (member(r, a1, b1) and member(r, a2, b2) and member(r, a1 + a2, b1 + b2)):
            failures.append(f"additivity: {sorted(r.pairs)}")
        # size law: plain closures only relate markings of equal size
        counts["size law"] += 1
        if kind == PLAIN and member(r, a, b) and a.size != b.size:
            failures.append(f"size law: {sorted(r.pairs)} ({a}, {b})")
        # subtractivity for equivalence relations: removing a related part leaves a related rest
        eq = random_equivalence(rng, n)
        while True:
            x, y = related_pair(eq, 6)
            c1 = Multiset({s: rng.randint(0, c) for s, c in x.items()})
            c2 = Multiset({s: rng.randint(0, c) for s, c in y.items()})
            if member(eq, c1, c2):
                break
        counts["subtractivity"] += 1
        if not member(eq, x - c1, y - c2):
            failures.append(f"subtractivity: {sorted(eq.pairs)} ({x}, {y}) minus ({c1}, {c2})")
    return failures, counts


def test_criterion_6_algebra():
    start = time.monotonic()
    failures, counts = _algebra()
    if counts["identity"] + counts["inverse"] + counts["composition"] < 500:
        failures.append(f"only {counts['identity'] + counts['inverse'] + counts['composition']} relation-closure cases")
    for law in ("monotonicity", "additivity", "size law", "subtractivity"):
        if counts[law] < 1000:
            failures.append(f"only {counts[law]} {law} cases")
    detail = ", ".join(f"{k}={v}" for k, v in counts.items())
    record(6, "algebraic laws", failures, time.monotonic() - start, detail)
    assert not failures, failures


# 7. Format round trip -------------------------------------------------------------


def _round_trip() -> tuple[list, int]:
    failures = []
    count = 0
    docs = [(name, parse_net(fixture_text(name))) for name in names()]
    rng = make_rng(700)
    docs += [(f"random document {k}", random_document(rng)) for k in range(200)]
    for label, doc in docs:
        count += 1
        text = serialize_net(doc)
        again = parse_net(text)
        if again != doc or serialize_net(again) != text:
            failures.append(label)
    for name in RELATIONS:
        count += 1
        net_name, dummy = RELATIONS[name]
        net = fixture(net_name).net
        rel = parse_relation(net, relation_text(name), dummy)
        text = serialize_relation(rel, net)
        if parse_relation(net, text, dummy) != rel:
            failures.append(name)
        if relation_document(net, rel.to_relation(net)) != rel:
            failures.append(f"{name} via PlaceRelation")
    return failures, count


def test_criterion_7_format_round_trip():
    start = time.monotonic()
    failures, count = _round_trip()
    record(7, "format round trip", failures, time.monotonic() - start, f"{count} documents")
    assert not failures, failures


if __name__ == "__main__":
    for test in (
        test_criterion_1_verdict_table,
        test_criterion_2_closure_oracle,
        test_criterion_3_verify_matches_game,
        test_criterion_4_strategy_agreement,
        test_criterion_5_hierarchy,
        test_criterion_6_algebra,
        test_criterion_7_format_round_trip,
    ):
        try:
            test()
        except AssertionError:
            pass

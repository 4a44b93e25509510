"""Compare the four place-relation equivalences with step and interleaving bisimilarity."""

from pneq import decide, fixture
from pneq.errors import BoundExceeded
from pneq.oracles import interleaving_bisimilar, step_bisimilar

QUERIES = [
    ("fig10", "s1", "s4"),
    ("fig12", "s1", "s3 + s4"),
    ("fig13", "s1 + s2", "s3 + s4"),
    ("fig14", "s1", "s4"),
    ("fig14", "2*s1", "2*s4"),
]


def mark(flag):
    return "yes" if flag else "no"


print(f"{'net':<6} {'m1':<8} {'m2':<8} place dplace iplace idplace step  interleaving")
for fig, a, b in QUERIES:
    net = fixture(fig).net
    m1, m2 = net.marking(a), net.marking(b)
    row = [mark(decide(net, kind, m1, m2).equivalent) for kind in ("place", "dplace", "iplace", "idplace")]
    for check in (step_bisimilar, interleaving_bisimilar):
        try:
            row.append(mark(check(net, m1, m2, max_states=2000)))
        except BoundExceeded:
            row.append("?")
    print(f"{fig:<6} {a:<8} {b:<8} " + " ".join(f"{x:<6}" for x in row))

doc = fixture("fig10")
v = decide(doc.net, "dplace", doc.net.marking("s1"), doc.net.marking("s4"))
print("\nfig10 d-place witness:", v.relation.format(doc.net.places))
print("pairing:", v.witness[1].format(doc.net.places))

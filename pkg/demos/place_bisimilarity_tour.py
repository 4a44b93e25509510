"""Walk through place bisimilarity on the fig6 net: closure, verification, search."""

from pneq import closure_contains, decide, fixture, maximal_bisimulations, verify
from pneq.fixtures import relation

doc = fixture("fig6")
net = doc.net
names = net.places
print("net fig6:", ", ".join(f"{t.name}: {net.format_marking(t.pre)} -{t.label}-> {net.format_marking(t.post)}" for t in net.transitions))

r2 = relation("fig6_R2")
m1, m2 = net.marking("2*s1 + s2"), net.marking("s1 + 2*s2")
print("\nR2 =", r2.format(names))
print("pairing of 2*s1+s2 with s1+2*s2 through R2:", closure_contains(r2, m1, m2).format(names))

for name in ("fig6_R1", "fig6_R2", "fig6_union"):
    report = verify(net, relation(name), "place", all_violations=True)
    print(f"{name}: {report.verdict}")
    for ob in report.violations:
        print("   ", ob.format(net))

print("\nsearching for witnesses")
for a, b in [("s1", "s3"), ("s2", "s3"), ("s1 + s2", "2*s3"), ("2*s1 + s2", "s1 + 2*s2")]:
    v = decide(net, "place", net.marking(a), net.marking(b))
    witness = v.relation.format(names) if v.equivalent else "-"
    print(f"  {a:>10} vs {b:<10} equivalent={v.equivalent!s:<5} witness={witness}")

print("\nmaximal place bisimulations:")
for r in maximal_bisimulations(net, "place"):
    print("  ", r.format(names))

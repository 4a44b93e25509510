"""Check the seven fig7 relations and show the counterexample to the last one."""

from pneq import fixture, verify
from pneq.fixtures import relation
from pneq.oracles import bounded_game_oracle

net = fixture("fig7").net
for i in range(1, 8):
    r = relation(f"fig7_R{i}")
    report = verify(net, r, "place")
    line = f"R{i}: {report.verdict}"
    if not report.accepted:
        line += f"  first obligation: {report.violations[0].format(net)}"
        line += f"\n    game oracle: {bounded_game_oracle(net, r, 'place', 2).format(net)}"
    print(line)

print("\nR7 pairs s2 with s3 and s6 with s2, so s2+s6 is related to s2+s3.")
print("s2+s3 can fire b, while s2+s6 is dead because b on the other side needs s6+s7.")

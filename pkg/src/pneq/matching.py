"""Capacitated bipartite matching by augmenting paths.

Tokens of the same place are collapsed into one node whose capacity is the
multiplicity, so the graph has at most ``|supp(m1)| + |supp(m2)|`` nodes.  Each
augmentation pushes the bottleneck amount along a shortest alternating path.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Mapping, Sequence


def saturating_b_matching(
    supply: Mapping[Hashable, int],
    demand: Mapping[Hashable, int],
    adj: Mapping[Hashable, Sequence[Hashable]],
) -> dict | None:
    """Find edge flows that exactly use every supply and meet every demand.

    ``adj[u]`` lists the right nodes that left node ``u`` may send to; edges
    have unbounded capacity.  Returns ``{(u, v): flow}`` (positive entries
    only) or ``None`` when no saturating assignment exists.
    """
    total = sum(supply.values())
    if total != sum(demand.values()):
        return None
    left_rest = {u: c for u, c in supply.items() if c}
    right_rest = {v: c for v, c in demand.items() if c}
    flow: dict = {}
    # right node -> left nodes currently sending to it (for backward residual edges)
    incoming: dict = {v: {} for v in right_rest}
    pushed = 0
    while pushed < total:
        parent_of_right: dict = {}
        parent_of_left: dict = {}
        queue = deque(u for u, c in left_rest.items() if c)
        for u in queue:
            parent_of_left[u] = None
        sink = None
        while queue and sink is None:
            u = queue.popleft()
            for v in adj.get(u, ()):
                if v in parent_of_right or v not in incoming:
                    continue
                parent_of_right[v] = u
                if right_rest.get(v, 0) > 0:
                    sink = v
                    break
                for w, f in incoming[v].items():
                    if f > 0 and w not in parent_of_left:
                        parent_of_left[w] = v
                        queue.append(w)
        if sink is None:
            return None
        # walk back to find the bottleneck
        path = []
        v = sink
        while True:
            u = parent_of_right[v]
            path.append((u, v))
            back = parent_of_left[u]
            if back is None:
                break
            path.append((u, back, "rev"))
            v = back
        amount = min(left_rest[path[-1][0]], right_rest[sink])
        for step in path:
            if len(step) == 3:
                u, v, _ = step
                amount = min(amount, incoming[v][u])
        for step in path:
            if len(step) == 3:
                u, v, _ = step
                incoming[v][u] -= amount
                flow[(u, v)] -= amount
            else:
                u, v = step
                incoming[v][u] = incoming[v].get(u, 0) + amount
                flow[(u, v)] = flow.get((u, v), 0) + amount
        left_rest[path[-1][0]] -= amount
        right_rest[sink] -= amount
        pushed += amount
    return {e: f for e, f in flow.items() if f > 0}

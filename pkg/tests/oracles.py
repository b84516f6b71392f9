"""Independent brute-force reference implementations used by the tests.

Everything here is deliberately naive (subset enumeration, BFS distances)
so that expected values do not depend on the package's own solvers.
"""

import itertools
import random
from fractions import Fraction


def bfs_dist_le2_edges(n, edges):
    """Edge set of the square graph, computed from BFS distances."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    out = set()
    for u in range(n):
        reach = set(adj[u])
        for w in adj[u]:
            reach |= adj[w]
        reach.discard(u)
        for v in reach:
            if u < v:
                out.add((u, v))
    return out


def brute_min_vc(n, edges, weights=None):
    """Minimum (weighted) vertex cover value by subset enumeration."""
    best = None
    verts = list(range(n))
    if weights is None:
        for k in range(n + 1):
            for sub in itertools.combinations(verts, k):
                s = set(sub)
                if all(u in s or v in s for u, v in edges):
                    return k
        return n
    for k in range(n + 1):
        for sub in itertools.combinations(verts, k):
            s = set(sub)
            if all(u in s or v in s for u, v in edges):
                w = sum((Fraction(weights[v]) for v in s), Fraction(0))
                if best is None or w < best:
                    best = w
    return best


def brute_min_ds(n, edges, weights=None):
    """Minimum (weighted) dominating set value by subset enumeration."""
    adj = {v: {v} for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = None
    for k in range(n + 1):
        for sub in itertools.combinations(range(n), k):
            s = set(sub)
            if all(adj[v] & s for v in range(n)):
                if weights is None:
                    return k
                w = sum((Fraction(weights[v]) for v in s), Fraction(0))
                if best is None or w < best:
                    best = w
    return best


def random_connected_gnp(n, p, seed):
    """Seeded G(n,p) conditioned on connectivity (resamples until connected)."""
    rng = random.Random(seed)
    for _ in range(10000):
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        adj = {v: set() for v in range(n)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == n:
            return edges
    raise RuntimeError("could not sample a connected graph")

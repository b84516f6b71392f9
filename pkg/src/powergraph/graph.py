"""Core graph type, square-graph construction, and feasibility checks.

Vertices are 0..n-1.  Graphs are simple and undirected; weights, when
present, are nonnegative rationals (stored as Fraction).
"""

from fractions import Fraction

from .errors import ContractError, InputError

# Solution kinds: cover/dominating set of the graph itself or of its square.
VC1 = "vc1"
DS1 = "ds1"
VC2 = "vc2"
DS2 = "ds2"
SOLUTION_KINDS = (VC1, DS1, VC2, DS2)


class Graph:
    """Immutable simple undirected graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "weights", "_m")

    def __init__(self, n, edges, weights=None):
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        nbrs = [set() for _ in range(n)]
        m = 0
        for (u, v) in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self loop at vertex {u}")
            if v in nbrs[u]:
                raise InputError(f"duplicate edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._m = m
        if weights is None:
            self.weights = None
        else:
            w = {}
            for v in range(n):
                if v not in weights:
                    raise InputError(f"missing weight for vertex {v}")
                wv = Fraction(weights[v])
                if wv < 0:
                    raise InputError(f"negative weight at vertex {v}")
                w[v] = wv
            self.weights = w

    @property
    def m(self):
        return self._m

    def edges(self):
        """Yield edges (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v):
        return len(self.adj[v])

    def neighbors(self, v):
        return self.adj[v]

    def weight(self, v):
        if self.weights is None:
            return Fraction(1)
        return self.weights[v]

    def total_weight(self, members):
        return sum((self.weight(v) for v in members), Fraction(0))

    def is_connected(self):
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adj == other.adj
            and self.weights == other.weights
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self._m})"


class SquareView:
    """Adjacency view of G^2 (edge iff distance in G is 1 or 2)."""

    def __init__(self, base):
        self.base = base
        self._sets = [set(a) for a in base.adj]

    def has_edge(self, u, v):
        if u == v:
            return False
        if v in self._sets[u]:
            return True
        # distance exactly 2: a common neighbor exists
        a, b = self._sets[u], self._sets[v]
        if len(a) > len(b):
            a, b = b, a
        return any(w in b for w in a)

    def neighbors(self, u):
        out = set(self._sets[u])
        for w in self._sets[u]:
            out |= self._sets[w]
        out.discard(u)
        return sorted(out)

    def materialize(self):
        return square(self.base)


def square(g):
    """Return G^2: same vertices and weights, edge iff dist_G(u,v) <= 2."""
    edges = []
    sets = [set(a) for a in g.adj]
    for u in range(g.n):
        two_hop = set(g.adj[u])
        for w in g.adj[u]:
            two_hop |= sets[w]
        two_hop.discard(u)
        for v in two_hop:
            if u < v:
                edges.append((u, v))
    return Graph(g.n, edges, weights=dict(g.weights) if g.weights else None)


class Solution:
    """A candidate vertex set with its kind and total weight."""

    __slots__ = ("kind", "members", "value")

    def __init__(self, kind, members, value):
        if kind not in SOLUTION_KINDS:
            raise InputError(f"unknown solution kind {kind!r}")
        self.kind = kind
        self.members = frozenset(members)
        self.value = value

    def __repr__(self):
        return f"Solution({self.kind}, size={len(self.members)}, value={self.value})"


def make_solution(g, kind, members):
    members = frozenset(members)
    for v in members:
        if not (0 <= v < g.n):
            raise InputError(f"solution member {v} out of range")
    value = g.total_weight(members)
    if g.weights is None:
        value = int(value)
    return Solution(kind, members, value)


def is_feasible(g, kind, members):
    """Check whether `members` is a feasible solution of the given kind on g."""
    if kind not in SOLUTION_KINDS:
        raise InputError(f"unknown solution kind {kind!r}")
    members = set(members)
    for v in members:
        if not (0 <= v < g.n):
            raise InputError(f"solution member {v} out of range")
    if kind in (VC1, VC2):
        target = g if kind == VC1 else square(g)
        return all(u in members or v in members for (u, v) in target.edges())
    target = g if kind == DS1 else square(g)
    for v in range(target.n):
        if v in members:
            continue
        if not any(u in members for u in target.adj[v]):
            return False
    return True


def matching_2approx(g):
    """Greedy maximal matching; both endpoints form a vertex cover <= 2*OPT.

    Edges are scanned in lexicographic order, so the result is deterministic.
    """
    if g.weights is not None:
        raise ContractError("matching_2approx is defined for unweighted graphs")
    matched = [False] * g.n
    cover = set()
    for u in range(g.n):
        if matched[u]:
            continue
        for v in g.adj[u]:
            if v > u and not matched[v]:
                matched[u] = matched[v] = True
                cover.add(u)
                cover.add(v)
                break
    return make_solution(g, VC1, cover)

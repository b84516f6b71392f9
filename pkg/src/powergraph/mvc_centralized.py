"""Polynomial 5/3-approximation for vertex cover on square graphs.

The core routine works on an already-squared graph H in three parts:
greedy removal of vertex-disjoint triangles, elimination of vertices of
degree at most three by fixed case rules, and a matching-based
2-approximation on the residual graph (which has minimum degree 4).
A distributed hybrid runs the same routine at a leader on H = G^2[U]
after the (1+eps) clustering phase with eps = 1/2.
"""

from fractions import Fraction

from .errors import ConnectivityError, InputError
from .graph import VC2, Graph, make_solution, matching_2approx, square
from .mvc_distributed import _decode_f, _f_items, phase1_unweighted
from .protocols import elect_leader_bfs, pipelined_broadcast, pipelined_convergecast
from .sim import CONGEST, Model


class PhaseTrace:
    """Per-part bookkeeping: cover vertices V1..V3, vertices leaving the
    working graph W1..W3, and residual snapshots R (after part 1) and
    R_prime (after part 2), each a (vertex set, edge set) pair."""

    def __init__(self):
        self.V1 = set()
        self.V2 = set()
        self.V3 = set()
        self.W1 = set()
        self.W2 = set()
        self.W3 = set()
        self.R = (frozenset(), frozenset())
        self.R_prime = (frozenset(), frozenset())

    @property
    def s1(self):
        return len(self.V1)

    @property
    def s2(self):
        return len(self.V2)

    @property
    def s3(self):
        return len(self.V3)

    def cover(self):
        return self.V1 | self.V2 | self.V3


def _snapshot(adj):
    verts = frozenset(adj)
    edges = frozenset(
        (u, v) for u in adj for v in adj[u] if u < v
    )
    return verts, edges


def vc_53_on_square(h, red_edges=()):
    """Run the three-part cover routine on a squared graph h.

    red_edges (the distance-1 edges inside h) are recorded on the trace
    for analysis; the algorithm itself treats all edges alike.
    Returns (cover set, PhaseTrace).
    """
    trace = PhaseTrace()
    trace.red_edges = frozenset(
        (min(u, v), max(u, v)) for (u, v) in red_edges
    )
    adj = {v: set(h.adj[v]) for v in range(h.n) if h.degree(v) > 0}

    def drop(v):
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]

    def take_group(vs, part_v, part_w):
        # all of vs enter the cover together, then isolated leftovers leave
        for v in vs:
            part_v.add(v)
            part_w.add(v)
        for v in vs:
            if v in adj:
                drop(v)
        for u in list(adj):
            if not adj[u]:
                del adj[u]
                part_w.add(u)

    # part 1: remove vertex-disjoint triangles, smallest triple first
    while True:
        tri = None
        for a in sorted(adj):
            for b in sorted(adj[a]):
                if b <= a:
                    continue
                common = adj[a] & adj[b]
                cands = sorted(c for c in common if c > b)
                if cands:
                    tri = (a, b, cands[0])
                    break
            if tri:
                break
        if tri is None:
            break
        take_group(tri, trace.V1, trace.W1)
    trace.R = _snapshot(adj)

    # part 2: eliminate degrees 1-3, lowest degree first, smallest id ties
    while True:
        low = [(len(adj[v]), v) for v in adj if len(adj[v]) <= 3]
        if not low:
            break
        deg, x = min(low)
        if deg == 1:
            (y,) = adj[x]
            chosen = [y]
        elif deg == 2:
            y1, y2 = sorted(adj[x])
            z_opts = sorted(adj[y1] - {x})
            chosen = z_opts[:1] + [y1, y2]
        else:
            y1, y2, y3 = sorted(adj[x])
            excl = {x, y1, y2, y3}
            z1_opts = sorted(adj[y1] - excl)
            z1 = z1_opts[0] if z1_opts else None
            z2_opts = sorted(adj[y2] - excl - {z1})
            z2 = z2_opts[0] if z2_opts else None
            chosen = [y1, y2, y3] + [z for z in (z1, z2) if z is not None]
        take_group(chosen, trace.V2, trace.W2)
    trace.R_prime = _snapshot(adj)

    # part 3: 2-approximation by maximal matching on the residual graph
    trace.W3 = set(adj)
    residual = Graph(h.n, sorted(trace.R_prime[1]))
    trace.V3 = set(matching_2approx(residual).members)
    return trace.cover(), trace


def g2mvc_53(g):
    """5/3-approximate vertex cover of G^2, centralized and polynomial."""
    if g.weights is not None:
        raise InputError("g2mvc_53 is unweighted")
    h = square(g)
    cover, trace = vc_53_on_square(h, red_edges=g.edges())
    return make_solution(g, VC2, cover), trace


def g2mvc_hybrid(g, model=None, seed=0):
    """Distributed 5/3-approximation in O(n) rounds: clustering phase with
    eps = 1/2, then the leader runs the three-part routine on H = G^2[U]."""
    if g.weights is not None:
        raise InputError("g2mvc_hybrid is unweighted")
    if not g.is_connected():
        raise ConnectivityError("g2mvc_hybrid requires a connected graph")
    if model is None:
        model = Model(CONGEST)
    eps = Fraction(1, 2)
    S, _, stats = phase1_unweighted(g, eps, model, seed=seed)
    U = set(range(g.n)) - S
    leader, parent, depth, st = elect_leader_bfs(g, model, seed=seed)
    stats.add(st)
    gathered, st2 = pipelined_convergecast(
        g, (leader, parent), _f_items(g, U), model, seed=seed
    )
    stats.add(st2)
    H = _decode_f(gathered, g.n)
    red = [
        (a, b)
        for (a, b, flag) in set(gathered)
        if flag == 3  # original edges with both endpoints uncovered
    ]
    cover, _ = vc_53_on_square(H, red_edges=red)
    payload = [(v,) for v in sorted(cover)]
    _, st3 = pipelined_broadcast(g, (leader, parent), payload, model, seed=seed)
    stats.add(st3)
    return make_solution(g, VC2, S | cover), stats

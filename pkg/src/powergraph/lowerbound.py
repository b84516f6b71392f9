"""Lower-bound graph families and hardness-reduction transforms.

Each generator builds a two-party instance: a graph whose edges depend on
two bit strings x and y, a vertex partition (side A sees only x, side B
only y), and a threshold so that the optimum crosses the threshold exactly
when the strings intersect.  The base families pose the problem on the
graph itself; the square families rebuild them out of path gadgets so that
the same question becomes a cover/domination problem on the square graph.

Gadget bookkeeping (which vertices form which path gadget, and what the
gadget is attached to) is kept on the instance so covers can be rewritten
into gadget-normal form and so instances can be serialized with their
structure intact.
"""

import itertools
import random
from fractions import Fraction

from .errors import ContractError, GenerationError, InputError
from .exact import exact_mds, exact_mvc
from .graph import DS2, VC2, Graph, is_feasible, square

ORACLE_CAP = 256
SET_SYSTEM_TRIES = 500


def parse_bits(bits, length, label="bit string"):
    """Accept a 0/1 string or int sequence; return a tuple of ints."""
    vals = list(bits)
    if len(vals) != length:
        raise InputError(f"{label} must have length {length}, got {len(vals)}")
    out = []
    for b in vals:
        b = int(b)
        if b not in (0, 1):
            raise InputError(f"{label} entries must be 0 or 1")
        out.append(b)
    return tuple(out)


def disjoint(x, y):
    """Set disjointness: true iff no index carries a 1 in both strings."""
    return not any(a and b for a, b in zip(x, y))


class _Build:
    """Incremental builder mapping vertex names to ids."""

    def __init__(self):
        self.names = []
        self.ids = {}
        self.edge_list = []
        self.edge_set = set()
        self.weights = {}
        self.x_edges = []
        self.y_edges = []

    def vertex(self, name, weight=None):
        if name in self.ids:
            raise InputError(f"duplicate vertex name {name!r}")
        vid = len(self.names)
        self.names.append(name)
        self.ids[name] = vid
        if weight is not None:
            self.weights[vid] = weight
        return vid

    def edge(self, a, b, tag=None):
        u, v = self.ids[a], self.ids[b]
        key = (min(u, v), max(u, v))
        if key in self.edge_set:
            raise InputError(f"duplicate edge {a!r}-{b!r}")
        self.edge_set.add(key)
        self.edge_list.append(key)
        if tag == "x":
            self.x_edges.append(key)
        elif tag == "y":
            self.y_edges.append(key)

    def graph(self, weighted):
        n = len(self.names)
        weights = None
        if weighted:
            weights = {v: self.weights.get(v, 1) for v in range(n)}
        return Graph(n, self.edge_list, weights=weights)


class LowerBoundInstance:
    """A generated two-party instance with its partition and thresholds.

    thresholds carries: problem ("vc" or "ds"), power (1 = on the graph,
    2 = on its square), and either a single `value` (optimum <= value iff
    the strings intersect) or a `low`/`high` gap pair.
    """

    def __init__(self, family, params, x, y, graph, names, part_a, cut_cap,
                 thresholds, gadgets, x_edges, y_edges):
        self.family = family
        self.params = dict(params)
        self.x = x
        self.y = y
        self.graph = graph
        self.names = tuple(names)
        self.part_a = frozenset(part_a)
        self.part_b = frozenset(range(graph.n)) - self.part_a
        self.cut = tuple(
            e for e in graph.edges()
            if (e[0] in self.part_a) != (e[1] in self.part_a)
        )
        self.cut_cap = cut_cap
        self.thresholds = dict(thresholds)
        self.gadgets = dict(gadgets)
        self.x_edges = tuple(x_edges)
        self.y_edges = tuple(y_edges)

    def id(self, name):
        return self.names.index(name)

    def sidecar(self):
        """JSON-ready description of everything beyond the bare graph."""
        return {
            "family": self.family,
            "params": dict(self.params),
            "x": "".join(str(b) for b in self.x),
            "y": "".join(str(b) for b in self.y),
            "names": list(self.names),
            "partition": {
                "a": sorted(self.part_a),
                "b": sorted(self.part_b),
            },
            "cut": [list(e) for e in self.cut],
            "thresholds": dict(self.thresholds),
            "gadgets": {
                name: dict(meta) for name, meta in sorted(self.gadgets.items())
            },
        }


def _check_k(k):
    if k < 2 or k & (k - 1):
        raise InputError(f"k must be a power of 2 and at least 2, got {k}")
    return k.bit_length() - 1


def _bit(i, j):
    """Bit j (1-based) of the binary representation of i - 1."""
    return (i - 1) >> (j - 1) & 1


_ROW_SETS = ((1, "a1", "b1"), (2, "a2", "b2"))


def _mvc_fixed_edges(k):
    """Bit-gadget-incident edges and clique edges of the base VC family."""
    log_k = k.bit_length() - 1
    bit_edges = []
    for s, arow, brow in _ROW_SETS:
        for j in range(1, log_k + 1):
            ta, fa = f"tA{s}_{j}", f"fA{s}_{j}"
            tb, fb = f"tB{s}_{j}", f"fB{s}_{j}"
            bit_edges += [(ta, fa), (fa, tb), (tb, fb), (fb, ta)]
        for i in range(1, k + 1):
            for j in range(1, log_k + 1):
                bit_edges.append(
                    (f"{arow}_{i}", f"tA{s}_{j}" if _bit(i, j) else f"fA{s}_{j}")
                )
                bit_edges.append(
                    (f"{brow}_{i}", f"tB{s}_{j}" if _bit(i, j) else f"fB{s}_{j}")
                )
    clique_edges = []
    for row in ("a1", "a2", "b1", "b2"):
        for i in range(1, k + 1):
            for i2 in range(i + 1, k + 1):
                clique_edges.append((f"{row}_{i}", f"{row}_{i2}"))
    return bit_edges, clique_edges


def _mds_fixed_edges(k):
    """Bit-gadget-incident edges of the base MDS family (rows independent)."""
    log_k = k.bit_length() - 1
    bit_edges = []
    for s, arow, brow in _ROW_SETS:
        for j in range(1, log_k + 1):
            fa, ta, ua = f"fA{s}_{j}", f"tA{s}_{j}", f"uA{s}_{j}"
            fb, tb, ub = f"fB{s}_{j}", f"tB{s}_{j}", f"uB{s}_{j}"
            bit_edges += [
                (fa, ta), (ta, ua), (ua, fb), (fb, tb), (tb, ub), (ub, fa),
            ]
        for i in range(1, k + 1):
            for j in range(1, log_k + 1):
                # wired to the complement of the binary representation
                bit_edges.append(
                    (f"{arow}_{i}", f"fA{s}_{j}" if _bit(i, j) else f"tA{s}_{j}")
                )
                bit_edges.append(
                    (f"{brow}_{i}", f"fB{s}_{j}" if _bit(i, j) else f"tB{s}_{j}")
                )
    return bit_edges


def _base_vertices(b, k, with_u):
    log_k = k.bit_length() - 1
    for row in ("a1", "a2", "b1", "b2"):
        for i in range(1, k + 1):
            b.vertex(f"{row}_{i}")
    for s, _, _ in _ROW_SETS:
        for j in range(1, log_k + 1):
            for side in ("A", "B"):
                b.vertex(f"t{side}{s}_{j}")
                b.vertex(f"f{side}{s}_{j}")
                if with_u:
                    b.vertex(f"u{side}{s}_{j}")


def _base_part_a(b, k, with_u):
    log_k = k.bit_length() - 1
    names = [f"a1_{i}" for i in range(1, k + 1)]
    names += [f"a2_{i}" for i in range(1, k + 1)]
    for s in (1, 2):
        for j in range(1, log_k + 1):
            names += [f"tA{s}_{j}", f"fA{s}_{j}"]
            if with_u:
                names.append(f"uA{s}_{j}")
    return {b.ids[name] for name in names}


def _variable_pairs(k, x, y, keep_bit):
    """Row-to-row pairs selected by the bit strings (tagged x or y)."""
    pairs = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if x[(i - 1) * k + (j - 1)] == keep_bit:
                pairs.append((f"a1_{i}", f"a2_{j}", "x"))
            if y[(i - 1) * k + (j - 1)] == keep_bit:
                pairs.append((f"b1_{i}", f"b2_{j}", "y"))
    return pairs


def gen_mvc_base(k, x, y):
    """Base family: vertex cover of the graph itself crosses the threshold
    4(k-1) + 4*log2(k) exactly when x and y intersect."""
    log_k = _check_k(k)
    x = parse_bits(x, k * k, "x")
    y = parse_bits(y, k * k, "y")
    b = _Build()
    _base_vertices(b, k, with_u=False)
    bit_edges, clique_edges = _mvc_fixed_edges(k)
    for u, v in bit_edges + clique_edges:
        b.edge(u, v)
    for u, v, tag in _variable_pairs(k, x, y, keep_bit=0):
        b.edge(u, v, tag=tag)
    return LowerBoundInstance(
        family="MVC-BASE",
        params={"k": k},
        x=x, y=y,
        graph=b.graph(weighted=False),
        names=b.names,
        part_a=_base_part_a(b, k, with_u=False),
        cut_cap=8 * log_k,
        thresholds={"problem": "vc", "power": 1,
                    "value": 4 * (k - 1) + 4 * log_k},
        gadgets={},
        x_edges=b.x_edges, y_edges=b.y_edges,
    )


def gen_mds_base(k, x, y):
    """Base family: dominating set of the graph itself crosses the
    threshold 4*log2(k) + 2 exactly when x and y intersect."""
    log_k = _check_k(k)
    x = parse_bits(x, k * k, "x")
    y = parse_bits(y, k * k, "y")
    b = _Build()
    _base_vertices(b, k, with_u=True)
    for u, v in _mds_fixed_edges(k):
        b.edge(u, v)
    for u, v, tag in _variable_pairs(k, x, y, keep_bit=1):
        b.edge(u, v, tag=tag)
    return LowerBoundInstance(
        family="MDS-BASE",
        params={"k": k},
        x=x, y=y,
        graph=b.graph(weighted=False),
        names=b.names,
        part_a=_base_part_a(b, k, with_u=True),
        cut_cap=8 * log_k,
        thresholds={"problem": "ds", "power": 1, "value": 4 * log_k + 2},
        gadgets={},
        x_edges=b.x_edges, y_edges=b.y_edges,
    )


def gen_mwvc_square(k, x, y):
    """Weighted square family: each bit-gadget-incident edge becomes a
    zero-weight vertex joined to both endpoints, and each a1/b1 row vertex
    gets one shared zero-weight vertex carrying its row-to-row edges.  The
    square graph then has a cover of the base threshold weight exactly when
    the base graph does."""
    log_k = _check_k(k)
    x = parse_bits(x, k * k, "x")
    y = parse_bits(y, k * k, "y")
    b = _Build()
    _base_vertices(b, k, with_u=False)
    bit_edges, clique_edges = _mvc_fixed_edges(k)
    gadgets = {}
    for u, v in clique_edges:
        b.edge(u, v)
    for idx, (u, v) in enumerate(bit_edges):
        name = f"p{idx}"
        b.vertex(name, weight=0)
        b.edge(name, u)
        b.edge(name, v)
        gadgets[name] = {"kind": "vertex",
                         "verts": [b.ids[name]],
                         "anchors": [b.ids[u], b.ids[v]]}
    for row, tag, bits in (("a", "x", x), ("b", "y", y)):
        for i in range(1, k + 1):
            name = f"p_{row}_{i}"
            b.vertex(name, weight=0)
            b.edge(name, f"{row}1_{i}")
            for j in range(1, k + 1):
                if bits[(i - 1) * k + (j - 1)] == 0:
                    b.edge(name, f"{row}2_{j}", tag=tag)
            gadgets[name] = {"kind": "vertex",
                             "verts": [b.ids[name]],
                             "anchors": [b.ids[f"{row}1_{i}"]]}
    part_a = _base_part_a(b, k, with_u=False)
    for name, meta in gadgets.items():
        if all(a in part_a for a in meta["anchors"]):
            part_a.add(meta["verts"][0])
    return LowerBoundInstance(
        family="MWVC-SQ",
        params={"k": k},
        x=x, y=y,
        graph=b.graph(weighted=True),
        names=b.names,
        part_a=part_a,
        cut_cap=16 * log_k,
        thresholds={"problem": "vc", "power": 2,
                    "value": 4 * (k - 1) + 4 * log_k},
        gadgets=gadgets,
        x_edges=b.x_edges, y_edges=b.y_edges,
    )


def _add_path_gadget(b, gadgets, name, length, anchors, kind="path"):
    verts = []
    for p in range(1, length + 1):
        verts.append(b.vertex(f"{name}_{p}"))
    for p in range(len(verts) - 1):
        b.edge(b.names[verts[p]], b.names[verts[p + 1]])
    for a in anchors:
        b.edge(b.names[verts[0]], a)
    gadgets[name] = {"kind": kind,
                     "verts": verts,
                     "anchors": [b.ids[a] for a in anchors]}
    return verts


def gen_mvc_square(k, x, y):
    """Unweighted square family: bit-gadget-incident edges are replaced by
    3-vertex dangling paths (edge deleted), and each a1/b1 row vertex gets
    a shared 3-vertex path whose head carries the row-to-row edges.  The
    square optimum is the base threshold plus two per gadget."""
    log_k = _check_k(k)
    x = parse_bits(x, k * k, "x")
    y = parse_bits(y, k * k, "y")
    b = _Build()
    _base_vertices(b, k, with_u=False)
    bit_edges, clique_edges = _mvc_fixed_edges(k)
    gadgets = {}
    for u, v in clique_edges:
        b.edge(u, v)
    for idx, (u, v) in enumerate(bit_edges):
        _add_path_gadget(b, gadgets, f"dp{idx}", 3, [u, v])
    for row, tag, bits in (("a", "x", x), ("b", "y", y)):
        for i in range(1, k + 1):
            name = f"sh_{row}1_{i}"
            _add_path_gadget(b, gadgets, name, 3, [f"{row}1_{i}"])
            head = f"{name}_1"
            for j in range(1, k + 1):
                if bits[(i - 1) * k + (j - 1)] == 0:
                    b.edge(head, f"{row}2_{j}", tag=tag)
    gadget_count = len(gadgets)
    part_a = _base_part_a(b, k, with_u=False)
    for meta in gadgets.values():
        if all(a in part_a for a in meta["anchors"]):
            part_a.update(meta["verts"])
    return LowerBoundInstance(
        family="MVC-SQ",
        params={"k": k, "gadget_count": gadget_count},
        x=x, y=y,
        graph=b.graph(weighted=False),
        names=b.names,
        part_a=part_a,
        cut_cap=16 * log_k,
        thresholds={"problem": "vc", "power": 2,
                    "value": 4 * (k - 1) + 4 * log_k + 2 * gadget_count},
        gadgets=gadgets,
        x_edges=b.x_edges, y_edges=b.y_edges,
    )


def gen_mds_square_exact(k, x, y):
    """Unweighted square family for exact domination: bit-gadget-incident
    edges are replaced by 5-vertex dangling paths (edge deleted) and every
    row vertex gets a shared 5-vertex path; row-to-row edges run between
    the shared heads.  The square optimum is the base threshold plus one
    per gadget (the recorded gadget_count, not a closed formula)."""
    log_k = _check_k(k)
    x = parse_bits(x, k * k, "x")
    y = parse_bits(y, k * k, "y")
    b = _Build()
    _base_vertices(b, k, with_u=True)
    gadgets = {}
    for idx, (u, v) in enumerate(_mds_fixed_edges(k)):
        _add_path_gadget(b, gadgets, f"dp{idx}", 5, [u, v])
    for row in ("a1", "a2", "b1", "b2"):
        for i in range(1, k + 1):
            _add_path_gadget(b, gadgets, f"sh_{row}_{i}", 5, [f"{row}_{i}"])
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if x[(i - 1) * k + (j - 1)] == 1:
                b.edge(f"sh_a1_{i}_1", f"sh_a2_{j}_1", tag="x")
            if y[(i - 1) * k + (j - 1)] == 1:
                b.edge(f"sh_b1_{i}_1", f"sh_b2_{j}_1", tag="y")
    gadget_count = len(gadgets)
    part_a = _base_part_a(b, k, with_u=True)
    for meta in gadgets.values():
        if all(a in part_a for a in meta["anchors"]):
            part_a.update(meta["verts"])
    return LowerBoundInstance(
        family="MDS-SQ-EXACT",
        params={"k": k, "gadget_count": gadget_count},
        x=x, y=y,
        graph=b.graph(weighted=False),
        names=b.names,
        part_a=part_a,
        cut_cap=16 * log_k,
        thresholds={"problem": "ds", "power": 2,
                    "value": 4 * log_k + 2 + gadget_count},
        gadgets=gadgets,
        x_edges=b.x_edges, y_edges=b.y_edges,
    )


class SetSystem:
    """Sets S_1..S_T over universe {1..l} with the r-covering property:
    any r of {S_i, complement(S_i)} with no complementary pair leave some
    element of the universe uncovered."""

    def __init__(self, universe, sets, r):
        self.universe = int(universe)
        self.sets = tuple(frozenset(s) for s in sets)
        self.r = int(r)

    @property
    def t(self):
        return len(self.sets)

    def complement(self, i):
        return frozenset(range(1, self.universe + 1)) - self.sets[i]


def r_covering_holds(sets, universe, r):
    """Exhaustively check the r-covering property."""
    sets = [frozenset(s) for s in sets]
    full = frozenset(range(1, universe + 1))
    labeled = []
    for i, s in enumerate(sets):
        labeled.append((i, s))
        labeled.append((i, full - s))
    for combo in itertools.combinations(labeled, r):
        indices = [i for i, _ in combo]
        if len(set(indices)) < len(indices):
            continue  # includes a complementary pair (or a repeat)
        union = frozenset().union(*(s for _, s in combo))
        if union == full:
            return False
    return True


def gen_set_system(universe, t, r, seed=0):
    """Rejection-sample a SetSystem: each element joins each set with
    probability 1/2; retry until the r-covering property verifies."""
    if universe < 1 or t < 1 or r < 1:
        raise InputError("universe, set count, and r must be positive")
    rng = random.Random(seed)
    for _ in range(SET_SYSTEM_TRIES):
        sets = [
            frozenset(e for e in range(1, universe + 1) if rng.random() < 0.5)
            for _ in range(t)
        ]
        if r_covering_holds(sets, universe, r):
            return SetSystem(universe, sets, r)
    raise GenerationError(
        f"no {r}-covering system of {t} sets over {universe} elements "
        f"found in {SET_SYSTEM_TRIES} tries"
    )


def _set_gadget(b, prime, system, weighted, r):
    """One copy of the set gadget; returns nothing, vertices are named
    S/Sb/al/be with a prime suffix."""
    p = "p" if prime else ""
    heavy = r if weighted else None
    for j in range(1, system.t + 1):
        b.vertex(f"S{p}_{j}")
        b.vertex(f"Sb{p}_{j}")
    for i in range(1, system.universe + 1):
        b.vertex(f"al{p}_{i}", weight=heavy)
        b.vertex(f"be{p}_{i}", weight=heavy)
        b.edge(f"al{p}_{i}", f"be{p}_{i}")
    for j in range(1, system.t + 1):
        for i in range(1, system.universe + 1):
            if i in system.sets[j - 1]:
                b.edge(f"S{p}_{j}", f"al{p}_{i}")
            else:
                b.edge(f"Sb{p}_{j}", f"be{p}_{i}")
    if weighted:
        b.vertex(f"alpha{p}", weight=r)
        b.vertex(f"beta{p}", weight=r)
        for j in range(1, system.t + 1):
            b.edge(f"alpha{p}", f"S{p}_{j}")
            b.edge(f"beta{p}", f"Sb{p}_{j}")


def _approx_instance(t, universe, r, x, y, seed, weighted):
    system = gen_set_system(universe, t, r, seed=seed)
    x = parse_bits(x, t * t, "x")
    y = parse_bits(y, t * t, "y")
    b = _Build()
    for row in ("a", "ap", "b", "bp"):
        for i in range(1, t + 1):
            b.vertex(f"{row}_{i}")
    _set_gadget(b, prime=False, system=system, weighted=weighted, r=r)
    _set_gadget(b, prime=True, system=system, weighted=weighted, r=r)
    gadgets = {}
    # merged shared path gadgets: per-row-vertex heads on a common 3-path
    for star, rows in (("Ast", ("a", "ap")), ("Bst", ("b", "bp"))):
        common = [
            b.vertex(f"{star}_3", weight=0 if weighted else None),
            b.vertex(f"{star}_4"),
            b.vertex(f"{star}_5"),
        ]
        b.edge(f"{star}_3", f"{star}_4")
        b.edge(f"{star}_4", f"{star}_5")
        heads = []
        for row in rows:
            prime = row.endswith("p")
            for label in ("row", "set"):
                for i in range(1, t + 1):
                    head = f"{star}_{row}{'S' if label == 'set' else ''}_{i}"
                    h1 = b.vertex(f"{head}_1")
                    h2 = b.vertex(f"{head}_2")
                    b.edge(f"{head}_1", f"{head}_2")
                    b.edge(f"{head}_2", f"{star}_3")
                    b.edge(f"{head}_1", f"{row}_{i}")
                    heads.append({"verts": [h1, h2],
                                  "anchors": [b.ids[f"{row}_{i}"]]})
                    if label == "set":
                        # heads on the set side reach every other set vertex
                        sv = ("S" if star == "Ast" else "Sb") + (
                            "p" if prime else ""
                        )
                        for j in range(1, t + 1):
                            if j != i:
                                b.edge(f"{head}_1", f"{sv}_{j}")
        gadgets[star] = {"kind": "merged", "common": common, "heads": heads}
    if not weighted:
        for j in range(1, t + 1):
            for qname, sname, star in (
                (f"q_{j}", f"S_{j}", "Ast"),
                (f"qp_{j}", f"Sp_{j}", "Ast"),
                (f"qb_{j}", f"Sb_{j}", "Bst"),
                (f"qbp_{j}", f"Sbp_{j}", "Bst"),
            ):
                b.vertex(qname)
                b.edge(qname, sname)
                b.edge(qname, f"{star}_3")
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            if x[(i - 1) * t + (j - 1)] == 1:
                b.edge(f"Ast_a_{i}_1", f"Ast_ap_{j}_1", tag="x")
            if y[(i - 1) * t + (j - 1)] == 1:
                b.edge(f"Bst_b_{i}_1", f"Bst_bp_{j}_1", tag="y")
    part_names = [f"a_{i}" for i in range(1, t + 1)]
    part_names += [f"ap_{i}" for i in range(1, t + 1)]
    for p in ("", "p"):
        part_names += [f"S{p}_{j}" for j in range(1, t + 1)]
        part_names += [f"al{p}_{i}" for i in range(1, universe + 1)]
        if weighted:
            part_names.append(f"alpha{p}")
        else:
            part_names += [f"q_{j}" for j in range(1, t + 1)]
            part_names += [f"qp_{j}" for j in range(1, t + 1)]
    part_a = {b.ids[name] for name in set(part_names) & set(b.ids)}
    part_a.update(
        vid for name, vid in b.ids.items() if name.startswith("Ast_")
    )
    if weighted:
        thresholds = {"problem": "ds", "power": 2, "low": 6, "high": 7}
    else:
        thresholds = {"problem": "ds", "power": 2, "low": 8, "high": 9}
    return LowerBoundInstance(
        family="MWDS-SQ-APPROX" if weighted else "MDS-SQ-APPROX",
        params={"T": t, "universe": universe, "r": r, "seed": seed},
        x=x, y=y,
        graph=b.graph(weighted=weighted),
        names=b.names,
        part_a=part_a,
        cut_cap=4 * universe,
        thresholds=thresholds,
        gadgets=gadgets,
        x_edges=b.x_edges, y_edges=b.y_edges,
    )


def gen_mwds_square_approx(t, universe, r, x, y, seed=0):
    """Weighted gap family: the square has a dominating set of weight 6
    when x and y intersect, and none lighter than 7 otherwise."""
    return _approx_instance(t, universe, r, x, y, seed, weighted=True)


def gen_mds_square_approx_unweighted(t, universe, r, x, y, seed=0):
    """Unweighted gap family: square dominating set of size 8 when x and y
    intersect, at least 9 otherwise."""
    return _approx_instance(t, universe, r, x, y, seed, weighted=False)


def dangling_transform(g, length=3, delete_original=True):
    """Replace (or shadow) each edge with a dangling path of `length` new
    vertices whose head is adjacent to both endpoints.  With length 3 and
    deletion, the square's cover optimum is the original optimum plus two
    per edge."""
    if g.weights is not None:
        raise InputError("dangling_transform expects an unweighted graph")
    if length not in (3, 5):
        raise InputError(f"gadget length must be 3 or 5, got {length}")
    edges = []
    base_edges = list(g.edges())
    if not delete_original:
        edges.extend(base_edges)
    n = g.n
    for u, v in base_edges:
        head = n
        for p in range(length - 1):
            edges.append((n + p, n + p + 1))
        edges.append((head, u))
        edges.append((head, v))
        n += length
    return Graph(n, edges)


def merged_dangling_transform(g):
    """Replace each edge with a 2-vertex head whose tail joins one common
    3-path; the square's domination optimum is the original plus one."""
    if g.weights is not None:
        raise InputError("merged_dangling_transform expects an unweighted graph")
    base_edges = list(g.edges())
    if not base_edges:
        raise InputError("merged_dangling_transform needs at least one edge")
    n = g.n
    edges = []
    c3 = g.n + 2 * len(base_edges)
    for u, v in base_edges:
        h1, h2 = n, n + 1
        edges += [(h1, u), (h1, v), (h1, h2), (h2, c3)]
        n += 2
    edges += [(c3, c3 + 1), (c3 + 1, c3 + 2)]
    return Graph(n + 3, edges)


def _square_closed(h2):
    return [frozenset(h2.adj[v]) | {v} for v in range(h2.n)]


def _normalize_vc(inst, h2, cover):
    new = set(cover)
    for meta in inst.gadgets.values():
        if meta["kind"] == "vertex":
            # zero-weight single-vertex gadgets are free to include
            new.add(meta["verts"][0])
        elif meta["kind"] == "path":
            verts = meta["verts"]
            new.difference_update(verts)
            new.update(verts[:2])
    return new


def _uncovered_after(closed, members, check):
    out = []
    for v in check:
        if v in members:
            continue
        if not any(u in members for u in closed[v]):
            out.append(v)
    return out


def _ds_drop(closed, new, drop, anchors):
    """Remove `drop` if domination survives, possibly swapping in one
    anchor; leave it in place otherwise."""
    if drop not in new:
        return
    affected = closed[drop]
    new.discard(drop)
    if not _uncovered_after(closed, new, affected):
        return
    for a in anchors:
        if a in new:
            continue
        trial = new | {a}
        if not _uncovered_after(closed, trial, affected):
            new.add(a)
            return
    new.add(drop)  # no safe single-vertex exchange; keep it


def _normalize_ds(inst, h2, cover):
    closed = _square_closed(h2)
    new = set(cover)
    for meta in inst.gadgets.values():
        if meta["kind"] == "path":
            verts = meta["verts"]
            mid = verts[2]
            if mid not in new:
                new.add(mid)
            anchors = sorted(meta["anchors"])
            for p in (4, 3, 1, 0):
                if p == 2 or p >= len(verts):
                    continue
                _ds_drop(closed, new, verts[p], anchors)
        elif meta["kind"] == "merged":
            common = meta["common"]
            if common[0] not in new:
                new.add(common[0])
            _ds_drop(closed, new, common[1], [])
            _ds_drop(closed, new, common[2], [])
            for head in meta["heads"]:
                _ds_drop(closed, new, head["verts"][1],
                         sorted(head["anchors"]))
    return new


def normalize_cover(inst, cover):
    """Rewrite a feasible cover into gadget-normal form.

    Vertex-cover instances end with {head, second} inside every path
    gadget; domination instances end with the middle vertex inside every
    gadget, dropping the rest when a single-anchor exchange keeps the set
    feasible.  The result is feasible and never larger; the rewrite is run
    to a fixpoint so it is idempotent.
    """
    kind = VC2 if inst.thresholds["problem"] == "vc" else DS2
    cover = frozenset(cover)
    if not is_feasible(inst.graph, kind, cover):
        raise ContractError("normalize_cover requires a feasible cover")
    h2 = square(inst.graph)
    current = set(cover)
    for _ in range(5):
        if kind == VC2:
            rewritten = _normalize_vc(inst, h2, current)
        else:
            rewritten = _normalize_ds(inst, h2, current)
        if rewritten == current:
            break
        current = rewritten
    result = frozenset(current)
    if inst.graph.total_weight(result) > inst.graph.total_weight(cover):
        raise ContractError("normalization increased the cover weight")
    if not is_feasible(inst.graph, kind, result):
        raise ContractError("normalization broke feasibility")
    return result


def verify_family(inst, cap=ORACLE_CAP):
    """Solve the instance exactly and report threshold agreement along
    with partition sanity (x edges inside side A, y edges inside side B,
    cut within its cap)."""
    th = inst.thresholds
    target = square(inst.graph) if th["power"] == 2 else inst.graph
    if th["problem"] == "vc":
        sol = exact_mvc(target, cap=cap)
    else:
        sol = exact_mds(target, cap=cap)
    value = sol.value
    low = th.get("low", th.get("value"))
    high = th.get("high", low)
    disj = disjoint(inst.x, inst.y)
    predicate = value <= low
    agree = predicate == (not disj)
    if disj and value < high:
        agree = False
    part_ok = all(
        u in inst.part_a and v in inst.part_a for (u, v) in inst.x_edges
    ) and all(
        u in inst.part_b and v in inst.part_b for (u, v) in inst.y_edges
    )
    return {
        "family": inst.family,
        "n": inst.graph.n,
        "oracle_value": value,
        "thresholds": dict(th),
        "predicate": predicate,
        "disj": disj,
        "agree": agree,
        "cut_size": len(inst.cut),
        "cut_cap_ok": len(inst.cut) <= inst.cut_cap,
        "partition_ok": part_ok,
    }

"""Reusable distributed building blocks: leader election / BFS tree,
pipelined convergecast toward the root, and pipelined broadcast from it."""

from .errors import ConnectivityError, EncodingError, InputError
from .sim import CLIQUE, CONGEST, Model, NodeProgram, run


class _BfsFloodProgram(NodeProgram):
    """Min-id flood; every node learns the leader, its BFS parent and depth."""

    def __init__(self, ctx):
        super().__init__(ctx)
        self.best = ctx.node
        self.depth = 0
        self.parent = None
        self.dirty = True  # something new to announce
        self.idle = False

    def step(self, r, inbox):
        for sender, (leader, depth) in sorted(inbox.items()):
            if leader < self.best or (leader == self.best and depth + 1 < self.depth):
                self.best = leader
                self.depth = depth + 1
                self.parent = sender
                self.dirty = True
        out = {}
        if self.dirty:
            msg = (self.best, self.depth)
            out = {u: msg for u in self.ctx.neighbors}
            self.dirty = False
        self.idle = not self.dirty
        return out

    def finish(self):
        self.output = (self.best, self.parent, self.depth)


def elect_leader_bfs(g, model=None, seed=0):
    """Return (leader id, parent map, depth map, RoundStats).

    Leader is the minimum id; the tree is the BFS tree grown by flooding.
    """
    if not g.is_connected():
        raise ConnectivityError("leader election requires a connected graph")
    if model is None:
        model = Model(CONGEST)
    outputs, stats = run(
        g, _BfsFloodProgram, model, seed=seed, stop_on_quiescence=True
    )
    leaders = {o[0] for o in outputs}
    if leaders != {0} and g.n > 0:
        raise ConnectivityError("flood did not converge to a single leader")
    parent = {v: outputs[v][1] for v in range(g.n)}
    depth = {v: outputs[v][2] for v in range(g.n)}
    leader = 0 if g.n else None
    return leader, parent, depth, stats


class _ConvergecastProgram(NodeProgram):
    """Ship one item per round toward the root along tree edges."""

    def __init__(self, ctx):
        super().__init__(ctx)
        parent, items = ctx.local
        self.parent = parent
        self.queue = list(items)
        self.collected = list(items) if parent is None else []
        self.idle = True

    def step(self, r, inbox):
        for sender in sorted(inbox):
            item = inbox[sender]
            if self.parent is None:
                self.collected.append(item)
            else:
                self.queue.append(item)
        if self.parent is not None and self.queue:
            self.idle = False
            return {self.parent: self.queue.pop(0)}
        self.idle = True
        return {}

    def finish(self):
        self.output = sorted(self.collected) if self.parent is None else None


class _CliqueGatherProgram(NodeProgram):
    """CLIQUE convergecast: everyone sends straight to the root, one item
    per round."""

    def __init__(self, ctx):
        super().__init__(ctx)
        root, items = ctx.local
        self.root = root
        self.queue = list(items)
        self.collected = list(items) if ctx.node == root else []
        self.idle = True

    def step(self, r, inbox):
        if self.ctx.node == self.root:
            for sender in sorted(inbox):
                self.collected.append(inbox[sender])
        if self.ctx.node != self.root and self.queue:
            self.idle = False
            return {self.root: self.queue.pop(0)}
        self.idle = True
        return {}

    def finish(self):
        self.output = sorted(self.collected) if self.ctx.node == self.root else None


def pipelined_convergecast(g, tree, items, model, seed=0):
    """Gather every node's items at the tree root.

    tree: (root, parent map); items: per-node list of word tuples.
    Returns (sorted item list at root, RoundStats).
    """
    root, parent = tree
    for v, its in enumerate(items):
        for item in its:
            if len(item) > model.bandwidth_words:
                raise EncodingError(
                    f"item of {len(item)} words exceeds bandwidth at node {v}"
                )
    if model.variant == CLIQUE:
        def factory(ctx):
            ctx.local = (root, items[ctx.node])
            return _CliqueGatherProgram(ctx)
    else:
        def factory(ctx):
            p = parent.get(ctx.node)
            if ctx.node != root and p is None:
                raise InputError(f"node {ctx.node} has no parent in the tree")
            ctx.local = (None if ctx.node == root else p, items[ctx.node])
            return _ConvergecastProgram(ctx)
    outputs, stats = run(g, factory, model, seed=seed, stop_on_quiescence=True)
    return outputs[root], stats


class _BroadcastProgram(NodeProgram):
    """Pipelined tree broadcast of a list of word tuples from the root.

    The first message announces how many items follow, so every node can
    halt on its own once the stream is complete.
    """

    def __init__(self, ctx):
        super().__init__(ctx)
        children, payload = ctx.local
        self.children = children
        self.expected = None
        self.received = []
        self.queue = []
        if payload is not None:  # root
            self.expected = len(payload)
            self.received = list(payload)
            self.queue = [(len(payload),)] + [tuple(p) for p in payload]
        self.idle = True

    def step(self, r, inbox):
        for sender in sorted(inbox):
            msg = inbox[sender]
            if self.expected is None:
                (self.expected,) = msg
                self.queue.append(msg)
            else:
                self.received.append(msg)
                self.queue.append(msg)
        out = {}
        if self.queue and self.children:
            msg = self.queue.pop(0)
            out = {c: msg for c in self.children}
        elif self.queue:
            self.queue = []
        self.idle = not self.queue
        return out

    def finish(self):
        self.output = sorted(tuple(m) for m in self.received)


def pipelined_broadcast(g, tree, payload, model, seed=0):
    """Deliver `payload` (list of word tuples) from the root to every node."""
    root, parent = tree
    children = {v: [] for v in range(g.n)}
    for v, p in parent.items():
        if p is not None:
            children[p].append(v)
    for c in children.values():
        c.sort()

    def factory(ctx):
        ctx.local = (children[ctx.node], payload if ctx.node == root else None)
        return _BroadcastProgram(ctx)

    outputs, stats = run(g, factory, model, seed=seed, stop_on_quiescence=True)
    return outputs, stats

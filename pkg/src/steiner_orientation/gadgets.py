"""The four gadget families of the hardness reduction.

Every undirected edge a gadget shares with a neighbour (a *port*) is stored
as ``(left, right)``, so FORWARD on a port always means "directed rightward".
Vertex names follow the figure labels of the construction.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .formula import Side
from .graph import Instance, MixedGraph, TerminalPair


class GraphBuilder:
    """Incremental construction of a mixed graph with terminal pairs."""

    def __init__(self):
        self.labels: list[Optional[str]] = []
        self.coords: list[Optional[tuple[float, float]]] = []
        self.arcs: list[tuple[int, int]] = []
        self.edges: list[tuple[int, int]] = []
        self.roles: list[str] = []
        self.pairs: list[TerminalPair] = []

    def vertex(self, label=None, xy=None) -> int:
        self.labels.append(label)
        self.coords.append(xy)
        return len(self.labels) - 1

    def arc(self, a: int, b: int) -> None:
        self.arcs.append((a, b))

    def edge(self, a: int, b: int, role: str) -> int:
        self.edges.append((a, b))
        self.roles.append(role)
        return len(self.edges) - 1

    def pair(self, s: int, t: int) -> int:
        self.pairs.append(TerminalPair(s, t))
        return len(self.pairs) - 1

    def graph(self) -> MixedGraph:
        return MixedGraph(len(self.labels), tuple(self.arcs), tuple(self.edges),
                          tuple(self.labels), tuple(self.coords))

    def embed(self, gadget: "GadgetGraph", prefix: str,
              merge: Optional[dict[str, int]] = None,
              place: Optional[Callable[[tuple[float, float]], tuple[float, float]]] = None):
        """Copy ``gadget`` in, identifying the named ports with existing edges.

        ``merge`` maps port names to edge ids already in this builder; the
        port's left/right endpoints are merged with that edge's stored
        endpoints, so the stored order is the left/right tag and must agree.
        Returns ``(vertex map, edge map, pair map)`` from gadget ids.
        """
        merge = merge or {}
        g = gadget.graph
        vmap: dict[int, int] = {}
        emap: dict[int, int] = {}
        for name, target in merge.items():
            eid = gadget.ports[name]
            left, right = g.edges[eid]
            vmap[left], vmap[right] = self.edges[target]
            emap[eid] = target
        for v in range(g.n):
            if v in vmap:
                continue
            xy = g.coords[v]
            if xy is not None and place is not None:
                xy = place(xy)
            vmap[v] = self.vertex(f"{prefix}:{g.labels[v]}", xy)
        for a, b in g.arcs:
            self.arc(vmap[a], vmap[b])
        for eid, (a, b) in enumerate(g.edges):
            if eid not in emap:
                emap[eid] = self.edge(vmap[a], vmap[b], gadget.roles[eid])
        pmap = {i: self.pair(vmap[p.source], vmap[p.target]) for i, p in enumerate(gadget.pairs)}
        return vmap, emap, pmap


@dataclass(frozen=True)
class GadgetGraph:
    kind: str
    graph: MixedGraph
    pairs: tuple[TerminalPair, ...]
    roles: tuple[str, ...]  # per undirected edge
    ports: dict[str, int] = field(default_factory=dict)

    @property
    def instance(self) -> Instance:
        return Instance(self.graph, self.pairs)

    def edge_id(self, role: str) -> int:
        return self.roles.index(role)

    def vertex(self, label: str) -> int:
        return self.graph.vertex(label)


def _finish(kind: str, b: GraphBuilder, ports: dict[str, int]) -> GadgetGraph:
    return GadgetGraph(kind, b.graph(), tuple(b.pairs), tuple(b.roles), dict(ports))


def build_flip() -> GadgetGraph:
    """Two terminal pairs forcing the two edges into opposite directions."""
    b = GraphBuilder()
    v = {name: b.vertex(name, xy) for name, xy in [
        ("t2", (0, 0)), ("s1", (1, 0)), ("s2", (4, 0)), ("t1", (5, 0)),
        ("ll", (1.5, -1.5)), ("lr", (3.5, -1.5)), ("ul", (1.5, 1.5)), ("ur", (3.5, 1.5)),
    ]}
    for a, c in [("s1", "ul"), ("s1", "ll"), ("s2", "ur"), ("s2", "lr"),
                 ("ul", "t2"), ("ll", "t2"), ("ur", "t1"), ("lr", "t1")]:
        b.arc(v[a], v[c])
    top = b.edge(v["ul"], v["ur"], "top")
    bottom = b.edge(v["ll"], v["lr"], "bottom")
    b.pair(v["s1"], v["t1"])
    b.pair(v["s2"], v["t2"])
    return _finish("flip", b, {"top": top, "bottom": bottom})


PORT_WIDTH = 2.0
PORT_GAP = 1.5


def build_variable(p: int, n: int, top_x: Optional[Sequence[float]] = None,
                   bottom_x: Optional[Sequence[float]] = None, y: float = 1.5) -> GadgetGraph:
    """Variable gadget with ``p`` top (positive) and ``n`` bottom (negative) ports.

    The ports of each chain are joined by antiparallel arc pairs.  Connecting
    both pairs forces the whole cycle clockwise (top rightward, bottom
    leftward) or counterclockwise.  ``top_x``/``bottom_x`` give the left x
    coordinate of every port and default to evenly spaced slots.
    """
    if p < 1 or n < 1:
        raise ValueError(f"variable gadget needs p >= 1 and n >= 1, got p={p}, n={n}")
    step = PORT_WIDTH + PORT_GAP
    top_x = list(top_x) if top_x is not None else [1.5 + step * i for i in range(p)]
    bottom_x = list(bottom_x) if bottom_x is not None else [1.5 + step * i for i in range(n)]
    if len(top_x) != p or len(bottom_x) != n:
        raise ValueError("port coordinate count must match p and n")
    left = min(top_x[0], bottom_x[0])
    right = max(top_x[-1], bottom_x[-1]) + PORT_WIDTH

    b = GraphBuilder()
    t2 = b.vertex("t2", (left - 1.5, 0))
    s1 = b.vertex("s1", (left - 0.5, 0))
    s2 = b.vertex("s2", (right + 0.5, 0))
    t1 = b.vertex("t1", (right + 1.5, 0))
    ports = {}

    def chain(xs, yy, tag):
        ends = []
        for i, x in enumerate(xs):
            a = b.vertex(f"{tag}{i}a", (x, yy))
            c = b.vertex(f"{tag}{i}b", (x + PORT_WIDTH, yy))
            ends.append((a, c))
        for i, (a, c) in enumerate(ends):
            ports[f"{tag}{i}"] = b.edge(a, c, f"e_{tag}")
        for (_, c), (a, _) in zip(ends, ends[1:]):
            b.arc(c, a)
            b.arc(a, c)
        return ends[0][0], ends[-1][1]

    ul, ur = chain(top_x, y, "pos")
    ll, lr = chain(bottom_x, -y, "neg")
    for a, c in [(s1, ul), (s1, ll), (s2, ur), (s2, lr), (ul, t2), (ll, t2), (ur, t1), (lr, t1)]:
        b.arc(a, c)
    b.pair(s1, t1)
    b.pair(s2, t2)
    return _finish("variable", b, ports)


# Figure coordinates of the three-literal clause gadget (positive side).
_CLAUSE_VERTICES = [
    ("t", (3, 2)), ("s", (10, 2)),
    ("lx", (0, 0)), ("rx", (2, 0)),
    ("tt2", (4, 1)), ("ss1", (5, 1)), ("ss2", (8, 1)), ("tt1", (9, 1)),
    ("ll", (5.5, 0)), ("lr", (7.5, 0)), ("ul", (5.5, 2)), ("ur", (7.5, 2)),
    ("lz", (11, 0)), ("rz", (13, 0)),
    ("t1", (3, 3.5)), ("s1", (10, 3.5)),
    ("t2", (3, 5.5)), ("s2", (10, 5.5)),
    ("t3", (2, 6.5)), ("s3", (11, 6.5)),
    ("c1", (6.5, 4)), ("c2", (6.5, 6)),
    ("l3", (4.75, 3.5)), ("ll4", (4.75, 4.5)), ("l4", (4.75, 5.3)), ("ll3", (4.75, 6)),
    ("r3", (8.25, 3.5)), ("rr4", (8.25, 4.5)), ("r4", (8.25, 5.3)), ("rr3", (8.25, 6)),
]

_CLAUSE_ARCS = [
    ("t1", "t"), ("t3", "t2"), ("s", "s1"), ("s2", "s3"),
    ("rz", "s3"), ("s3", "t3"), ("t3", "lx"),
    ("ll4", "t1"), ("ll4", "c1"), ("ll3", "t2"), ("ll3", "c2"),
    ("t1", "l3"), ("c1", "l3"), ("t2", "l4"), ("c2", "l4"),
    ("rr4", "s1"), ("rr4", "c1"), ("rr3", "s2"), ("rr3", "c2"),
    ("s1", "r3"), ("c1", "r3"), ("s2", "r4"), ("c2", "r4"),
    ("ss1", "ul"), ("ss1", "ll"), ("ss2", "ur"), ("ss2", "lr"),
    ("ul", "tt2"), ("ll", "tt2"), ("ur", "tt1"), ("lr", "tt1"),
    ("rx", "t"), ("ul", "t"), ("s", "ur"), ("s", "lz"),
]

_CLAUSE_EDGES = [
    ("ebar_x", "lx", "rx"), ("ebar_y", "ll", "lr"), ("ebar_z", "lz", "rz"),
    ("etilde_y", "ul", "ur"), ("f", "s2", "s1"), ("g", "t2", "t1"), ("central", "c1", "c2"),
]

_CLAUSE_PAIRS = [
    ("s", "t"), ("ss1", "tt1"), ("ss2", "tt2"),
    ("ll4", "l4"), ("ll3", "l3"), ("rr4", "r4"), ("rr3", "r3"),
]

# Middle flip gadget, removed in the two-literal variant.
_MIDDLE_FLIP = {"ss1", "ss2", "tt1", "tt2", "ll", "lr"}


def _piecewise(anchors: Sequence[tuple[float, float]]) -> Callable[[float], float]:
    xs = [a for a, _ in anchors]
    ys = [c for _, c in anchors]

    def f(x: float) -> float:
        i = min(max(bisect.bisect_right(xs, x) - 1, 0), len(xs) - 2)
        x0, x1, y0, y1 = xs[i], xs[i + 1], ys[i], ys[i + 1]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    return f


def _build_clause(side: Side, three: bool, port_x, base_y: float) -> GadgetGraph:
    names = [nm for nm, _ in _CLAUSE_VERTICES if three or nm not in _MIDDLE_FLIP]
    xy = dict(_CLAUSE_VERTICES)
    port_roles = ["ebar_x", "ebar_y", "ebar_z"] if three else ["ebar_x", "ebar_z"]
    fx = lambda x: x  # noqa: E731
    if port_x is not None:
        if len(port_x) != len(port_roles):
            raise ValueError(f"expected {len(port_roles)} port coordinates")
        left_ends = {"ebar_x": "lx", "ebar_y": "ll", "ebar_z": "lz"}
        anchors = []
        for role, x in zip(port_roles, port_x):
            lx = xy[left_ends[role]][0]
            anchors += [(lx, x), (lx + PORT_WIDTH, x + PORT_WIDTH)]
        fx = _piecewise(anchors)
    ysign = 1.0 if side is Side.POSITIVE else -1.0

    b = GraphBuilder()
    v = {nm: b.vertex(nm, (fx(xy[nm][0]), ysign * (base_y + xy[nm][1]))) for nm in names}
    for a, c in _CLAUSE_ARCS:
        if a in v and c in v:
            b.arc(v[a], v[c])
    if not three:
        b.arc(v["ul"], v["ur"])
    ports = {}
    for role, a, c in _CLAUSE_EDGES:
        if not three and role in ("ebar_y", "etilde_y"):
            continue
        eid = b.edge(v[a], v[c], role)
        if role.startswith("ebar"):
            ports[role] = eid
    for s, t in _CLAUSE_PAIRS:
        if s in v and t in v:
            b.pair(v[s], v[t])
    return _finish("clause3" if three else "clause2", b, ports)


def build_clause3(side: Side = Side.POSITIVE, port_x=None, base_y: float = 0.0) -> GadgetGraph:
    """Three-literal clause gadget.

    All pairs connect iff at least one of the ports ``ebar_x``, ``ebar_y``,
    ``ebar_z`` is directed rightward.  The negative version is the same graph
    mirrored vertically.
    """
    return _build_clause(side, True, port_x, base_y)


def build_clause2(side: Side = Side.POSITIVE, port_x=None, base_y: float = 0.0) -> GadgetGraph:
    """Two-literal clause gadget: the middle flip gadget is dropped and the
    edge ``etilde_y`` becomes the arc ``ul -> ur``."""
    return _build_clause(side, False, port_x, base_y)


# Edge gadget template: x relative to the ports' left end, y as a fraction of
# the distance from port A to port B.
_EDGE_VERTICES = [
    ("Aa", (0, 0)), ("Ab", (2, 0)), ("ma", (0, 0.5)), ("mb", (2, 0.5)),
    ("Ba", (0, 1)), ("Bb", (2, 1)),
    ("t2", (-1, 0.25)), ("s1", (-0.5, 0.25)), ("s2", (2.5, 0.25)), ("t1", (3, 0.25)),
    ("t4", (-1, 0.75)), ("s3", (-0.5, 0.75)), ("s4", (2.5, 0.75)), ("t3", (3, 0.75)),
]


def build_edge_gadget(x: float = 0.0, y_a: float = 0.0, y_b: float = 6.0) -> GadgetGraph:
    """Two flip gadgets stacked on a shared middle edge.

    Port ``A`` is identified with a variable port and port ``B`` with a
    clause port; connecting all four pairs forces A and B to point the same
    way, with the middle edge opposite to both.
    """
    b = GraphBuilder()
    v = {nm: b.vertex(nm, (x + dx, y_a + fy * (y_b - y_a))) for nm, (dx, fy) in _EDGE_VERTICES}
    a = b.edge(v["Aa"], v["Ab"], "A")
    m = b.edge(v["ma"], v["mb"], "middle")
    bb = b.edge(v["Ba"], v["Bb"], "B")
    for s1, t1, s2, t2, lo, hi in [("s1", "t1", "s2", "t2", "A", "m"),
                                   ("s3", "t3", "s4", "t4", "m", "B")]:
        for end in (lo, hi):
            b.arc(v[s1], v[end + "a"])
            b.arc(v[s2], v[end + "b"])
            b.arc(v[end + "a"], v[t2])
            b.arc(v[end + "b"], v[t1])
        b.pair(v[s1], v[t1])
        b.pair(v[s2], v[t2])
    return _finish("edge", b, {"A": a, "B": bb, "middle": m})


def build_gadget(kind: str, *params) -> GadgetGraph:
    """Builder lookup by name, used by the command line."""
    if kind == "flip":
        builder, arity = build_flip, 0
    elif kind == "variable":
        builder, arity = build_variable, 2
    elif kind in ("clause3", "clause2"):
        builder, arity = (build_clause3 if kind == "clause3" else build_clause2), 1
    elif kind == "edge":
        builder, arity = build_edge_gadget, 0
    else:
        raise ValueError(f"unknown gadget kind {kind!r}")
    if kind in ("clause3", "clause2"):
        if len(params) > 1:
            raise ValueError(f"{kind} takes at most one parameter (pos|neg)")
        side = Side(params[0]) if params else Side.POSITIVE
        return builder(side)
    if len(params) != arity:
        raise ValueError(f"{kind} takes {arity} parameter(s)")
    return builder(*(int(p) for p in params))

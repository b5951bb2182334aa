"""Mixed graphs, terminal-pair instances and orientation checks.

A mixed graph has directed arcs and undirected edges.  Undirected edges are
stored as ``(u, w)`` pairs with a stable id (their index); orienting an edge
FORWARD means directing it ``u -> w``, REVERSE means ``w -> u``.
"""
from __future__ import annotations

import enum
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence


class Orient(enum.IntEnum):
    UNSET = 0
    FORWARD = 1
    REVERSE = 2

    @property
    def flipped(self) -> "Orient":
        if self is Orient.UNSET:
            return self
        return Orient.REVERSE if self is Orient.FORWARD else Orient.FORWARD


@dataclass(frozen=True)
class MixedGraph:
    """Immutable mixed graph on vertices ``0..n-1``.

    ``labels`` and ``coords`` are per-vertex decorations; either may hold
    ``None`` entries.  ``arcs`` may contain parallel and antiparallel pairs.
    """

    n: int
    arcs: tuple[tuple[int, int], ...] = ()
    edges: tuple[tuple[int, int], ...] = ()
    labels: tuple[Optional[str], ...] = ()
    coords: tuple[Optional[tuple[float, float]], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(a), int(b)) for a, b in self.arcs))
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))
        labels = tuple(self.labels) if self.labels else (None,) * self.n
        coords = tuple(
            None if c is None else (float(c[0]), float(c[1]))
            for c in (self.coords if self.coords else (None,) * self.n)
        )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "coords", coords)
        if self.n < 0:
            raise ValueError("negative vertex count")
        if len(labels) != self.n or len(coords) != self.n:
            raise ValueError("labels/coords length must equal the vertex count")
        for lab in labels:
            if lab is not None and (not lab or "#" in lab or any(ch.isspace() for ch in lab)):
                raise ValueError(f"invalid vertex label {lab!r}")
        for a, b in self.arcs:
            self._check_vertex(a)
            self._check_vertex(b)
        for eid, (a, b) in enumerate(self.edges):
            self._check_vertex(a)
            self._check_vertex(b)
            if a == b:
                raise ValueError(f"undirected edge {eid} is a self-loop at {a}")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"unknown vertex id {v}")

    @property
    def m(self) -> int:
        """Number of undirected edges."""
        return len(self.edges)

    def vertex(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"no vertex labelled {label!r}") from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: v for v, lab in enumerate(self.labels) if lab is not None}

    @cached_property
    def _adjacency(self) -> list[list[tuple[int, int, int]]]:
        # (head, edge id or -1 for arcs, orientation that permits the step)
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for a, b in self.arcs:
            adj[a].append((b, -1, 0))
        for eid, (a, b) in enumerate(self.edges):
            adj[a].append((b, eid, Orient.FORWARD))
            adj[b].append((a, eid, Orient.REVERSE))
        return adj


@dataclass(frozen=True)
class TerminalPair:
    source: int
    target: int


@dataclass(frozen=True)
class Instance:
    graph: MixedGraph
    pairs: tuple[TerminalPair, ...] = ()

    def __post_init__(self):
        pairs = tuple(p if isinstance(p, TerminalPair) else TerminalPair(*p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for i, p in enumerate(pairs):
            self.graph._check_vertex(p.source)
            self.graph._check_vertex(p.target)
            if p.source == p.target:
                raise ValueError(f"terminal pair {i} has source == target ({p.source})")

    @property
    def sources(self) -> list[int]:
        """Distinct pair sources in first-occurrence order."""
        return list(dict.fromkeys(p.source for p in self.pairs))


@dataclass(frozen=True)
class PartialOrientation:
    states: tuple[Orient, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(Orient(s) for s in self.states))

    @classmethod
    def unset(cls, m: int) -> "PartialOrientation":
        return cls((Orient.UNSET,) * m)

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, eid: int) -> Orient:
        return self.states[eid]

    def __iter__(self):
        return iter(self.states)

    @property
    def is_total(self) -> bool:
        return Orient.UNSET not in self.states

    def unset_edges(self) -> list[int]:
        return [i for i, s in enumerate(self.states) if s is Orient.UNSET]

    def assign(self, eid: int, value: Orient) -> "PartialOrientation":
        states = list(self.states)
        states[eid] = Orient(value)
        return PartialOrientation(tuple(states))

    def extends(self, other: "PartialOrientation") -> bool:
        """True if every edge set in ``other`` has the same state here."""
        return len(other) == len(self) and all(
            o is Orient.UNSET or o == s for s, o in zip(self.states, other.states)
        )

    def __str__(self) -> str:
        return "".join(".FR"[s] for s in self.states)


def _search(graph: MixedGraph, states: Sequence[int], start: int, relaxed: bool) -> set[int]:
    adj = graph._adjacency
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w, eid, need in adj[v]:
            if w in seen:
                continue
            if eid >= 0:
                st = states[eid]
                if st != need and not (relaxed and st == Orient.UNSET):
                    continue
            seen.add(w)
            queue.append(w)
    return seen


def _check_orientation(graph: MixedGraph, orientation: PartialOrientation) -> None:
    if len(orientation) != graph.m:
        raise ValueError(
            f"orientation has {len(orientation)} entries, graph has {graph.m} undirected edges"
        )


def reachable_set(
    graph: MixedGraph, orientation: PartialOrientation, start: int, relaxed: bool = False
) -> set[int]:
    """Vertices reachable from ``start``.

    Arcs and oriented edges are followed in their direction.  UNSET edges are
    usable in both directions when ``relaxed`` is set and ignored otherwise.
    """
    graph._check_vertex(start)
    _check_orientation(graph, orientation)
    return _search(graph, orientation.states, start, relaxed)


def verify_orientation(instance: Instance, orientation: PartialOrientation) -> bool:
    """Check that a total orientation connects every terminal pair."""
    _check_orientation(instance.graph, orientation)
    if not orientation.is_total:
        raise ValueError("orientation is not total")
    by_source = defaultdict(list)
    for p in instance.pairs:
        by_source[p.source].append(p.target)
    for s, targets in by_source.items():
        reach = _search(instance.graph, orientation.states, s, False)
        if any(t not in reach for t in targets):
            return False
    return True


class Violation(NamedTuple):
    vertex: int
    role: str  # "source" or "target"
    reason: str


def check_source_sink_property(instance: Instance) -> list[Violation]:
    """Find terminals that could be entered (sources) or left (targets).

    Undirected edges count against both, since some orientation of them
    gives the terminal an in- or out-arc.
    """
    g = instance.graph
    indeg = [0] * g.n
    outdeg = [0] * g.n
    incident = [0] * g.n
    for a, b in g.arcs:
        outdeg[a] += 1
        indeg[b] += 1
    for a, b in g.edges:
        incident[a] += 1
        incident[b] += 1

    violations = []
    for s in dict.fromkeys(p.source for p in instance.pairs):
        if indeg[s] or incident[s]:
            violations.append(Violation(
                s, "source", f"indegree {indeg[s]}, {incident[s]} undirected incidences"))
    for t in dict.fromkeys(p.target for p in instance.pairs):
        if outdeg[t] or incident[t]:
            violations.append(Violation(
                t, "target", f"outdegree {outdeg[t]}, {incident[t]} undirected incidences"))
    return violations


def simple_edge_set(graph: MixedGraph) -> set[frozenset[int]]:
    """Underlying simple undirected graph: parallel/antiparallel links merged."""
    pairs = set()
    for a, b in list(graph.arcs) + list(graph.edges):
        if a != b:
            pairs.add(frozenset((a, b)))
    return pairs


def check_planarity(graph: MixedGraph) -> bool:
    """Planarity of the underlying simple undirected graph.

    Rejects early on the Euler bound ``|E| <= 3|V| - 6`` and otherwise runs
    the left-right planarity test from networkx.
    """
    import networkx as nx

    simple = simple_edge_set(graph)
    if graph.n >= 3 and len(simple) > 3 * graph.n - 6:
        return False
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(tuple(e) for e in simple)
    planar, _ = nx.check_planarity(g)
    return planar


def mixed_graph(
    n: int,
    arcs: Iterable[tuple[int, int]] = (),
    edges: Iterable[tuple[int, int]] = (),
    labels: Optional[Sequence[Optional[str]]] = None,
    coords: Optional[Sequence[Optional[tuple[float, float]]]] = None,
) -> MixedGraph:
    return MixedGraph(n, tuple(arcs), tuple(edges), tuple(labels or ()), tuple(coords or ()))

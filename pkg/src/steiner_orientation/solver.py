"""Exact Steiner Orientation solving.

Two independent routes:

* :func:`solve`, a backtracking search that prunes with relaxed
  feasibility (unset edges usable both ways) and propagates forced edges;
* :func:`enumerate_valid` / :func:`iter_valid`, a brute-force scan over all
  total orientations, used as the oracle in tests.
"""
from __future__ import annotations

import os
from collections import defaultdict, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .graph import Instance, Orient, PartialOrientation, verify_orientation

MAX_ENUM_EDGES = 24

UNSET, FORWARD, REVERSE = int(Orient.UNSET), int(Orient.FORWARD), int(Orient.REVERSE)


class EnumerationLimitError(ValueError):
    pass


@dataclass
class SolveStats:
    nodes: int = 0
    propagations: int = 0
    peak_depth: int = 0


@dataclass
class SolveResult:
    sat: bool
    witness: Optional[PartialOrientation] = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def status(self) -> str:
        return "SAT" if self.sat else "UNSAT"


class _Reach:
    """Reachability over a fixed instance for varying edge states."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.adj = instance.graph._adjacency
        targets = defaultdict(list)
        for p in instance.pairs:
            targets[p.source].append(p.target)
        self.targets = {s: tuple(dict.fromkeys(ts)) for s, ts in targets.items()}

    def support(self, states, src: int):
        """Edge traversals on BFS-tree paths from ``src`` to its targets.

        Returns a set of ``(edge id, orientation)`` pairs, or None if some
        target is unreachable under relaxed semantics.
        """
        adj = self.adj
        parent = {src: None}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w, eid, need in adj[v]:
                if w in parent:
                    continue
                if eid >= 0:
                    st = states[eid]
                    if st and st != need:
                        continue
                parent[w] = (v, eid, need)
                queue.append(w)
        used = set()
        for t in self.targets[src]:
            if t not in parent:
                return None
            step = parent[t]
            while step is not None:
                v, eid, need = step
                if eid >= 0:
                    if (eid, need) in used:
                        break
                    used.add((eid, need))
                step = parent[v]
        return used

    def feasible(self, states) -> bool:
        return all(self.support(states, s) is not None for s in self.targets)

    def supports(self, states):
        out = {}
        for s in self.targets:
            sup = self.support(states, s)
            if sup is None:
                return None
            out[s] = sup
        return out


def _as_states(instance: Instance, partial: Optional[PartialOrientation]) -> list[int]:
    if partial is None:
        return [UNSET] * instance.graph.m
    if len(partial) != instance.graph.m:
        raise ValueError(
            f"orientation has {len(partial)} entries, graph has {instance.graph.m} undirected edges"
        )
    return [int(s) for s in partial.states]


def relaxed_feasible(instance: Instance, partial: PartialOrientation) -> bool:
    """Can every pair be connected if unset edges are treated as two-way?

    A False answer proves that no extension of ``partial`` is a solution.
    """
    return _Reach(instance).feasible(_as_states(instance, partial))


def _propagate(reach: _Reach, states: list[int], order=None):
    """Force edges whose other direction breaks relaxed feasibility.

    Works in place on ``states``; returns the number of forced edges, or None
    on conflict.  A candidate direction only needs rechecking for sources
    whose current witness paths traverse the edge the other way.
    """
    sup = reach.supports(states)
    if sup is None:
        return None
    users = defaultdict(set)
    for s, used in sup.items():
        for key in used:
            users[key].add(s)

    def refresh(src, new):
        for key in sup[src]:
            users[key].discard(src)
        sup[src] = new
        for key in new:
            users[key].add(src)

    edges = range(len(states)) if order is None else order
    forced = 0
    changed = True
    while changed:
        changed = False
        for eid in edges:
            if states[eid] != UNSET:
                continue
            fresh = {}
            for d in (FORWARD, REVERSE):
                affected = users.get((eid, REVERSE if d == FORWARD else FORWARD))
                if not affected:
                    fresh[d] = {}
                    continue
                states[eid] = d
                new = {}
                for s in sorted(affected):
                    got = reach.support(states, s)
                    if got is None:
                        new = None
                        break
                    new[s] = got
                states[eid] = UNSET
                fresh[d] = new
            if fresh[FORWARD] is None and fresh[REVERSE] is None:
                return None
            for d in (FORWARD, REVERSE):
                if fresh[d] is not None and fresh[d ^ 3] is None:
                    states[eid] = d
                    for s, new in fresh[d].items():
                        refresh(s, new)
                    forced += 1
                    changed = True
    return forced


def propagate(instance: Instance, partial: PartialOrientation) -> Optional[PartialOrientation]:
    """Unit propagation to a fixpoint; None signals a conflict."""
    states = _as_states(instance, partial)
    if _propagate(_Reach(instance), states) is None:
        return None
    return PartialOrientation(tuple(states))


def _first_unset(states) -> int:
    for i, s in enumerate(states):
        if s == UNSET:
            return i
    return -1


def _search(reach: _Reach, root: list[int], use_propagation: bool, stats: SolveStats,
            depth0: int = 0) -> Optional[list[int]]:
    # Each stack entry is a node to expand; children are pushed REVERSE
    # first so the FORWARD subtree is explored first.
    stack = [(root, depth0)]
    while stack:
        states, depth = stack.pop()
        if not reach.feasible(states):
            continue
        stats.nodes += 1
        stats.peak_depth = max(stats.peak_depth, depth)
        if use_propagation:
            forced = _propagate(reach, states)
            if forced is None:
                continue
            stats.propagations += forced
        eid = _first_unset(states)
        if eid < 0:
            return states
        for d in (REVERSE, FORWARD):
            child = list(states)
            child[eid] = d
            stack.append((child, depth + 1))
    return None


def _solve_subtree(instance: Instance, states: list[int], use_propagation: bool, depth: int):
    stats = SolveStats()
    found = _search(_Reach(instance), states, use_propagation, stats, depth)
    return found, stats


def solve(instance: Instance, propagate: bool = True, workers: int = 1) -> SolveResult:
    """Decide whether some orientation connects every terminal pair.

    Branches on the lowest-indexed unset edge, FORWARD first.  With
    ``workers > 1`` the two subtrees of the first branching edge are searched
    in separate processes; the result and counters are those the sequential
    search would report.
    """
    reach = _Reach(instance)
    states = [UNSET] * instance.graph.m
    stats = SolveStats()

    if workers > 1 and instance.graph.m:
        if not reach.feasible(states):
            return SolveResult(False, None, stats)
        stats.nodes += 1
        if propagate:
            forced = _propagate(reach, states)
            if forced is None:
                return SolveResult(False, None, stats)
            stats.propagations += forced
        eid = _first_unset(states)
        if eid >= 0:
            children = []
            for d in (FORWARD, REVERSE):
                child = list(states)
                child[eid] = d
                children.append(child)
            with ProcessPoolExecutor(max_workers=2) as pool:
                futs = [pool.submit(_solve_subtree, instance, c, propagate, 1) for c in children]
                results = [f.result() for f in futs]
            for found, sub in results:
                stats.nodes += sub.nodes
                stats.propagations += sub.propagations
                stats.peak_depth = max(stats.peak_depth, sub.peak_depth)
                if found is not None:
                    states = found
                    break
            else:
                return SolveResult(False, None, stats)
    else:
        found = _search(reach, states, propagate, stats)
        if found is None:
            return SolveResult(False, None, stats)
        states = found

    witness = PartialOrientation(tuple(states))
    assert verify_orientation(instance, witness), "solver produced an invalid witness"
    return SolveResult(True, witness, stats)


def default_workers() -> int:
    """Worker count from ``STEINER_ORIENT_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("STEINER_ORIENT_THREADS", "1")))
    except ValueError:
        return 1


# -- brute force oracle -----------------------------------------------------

_DENSE_MAX_VERTICES = 64


def _free_edges(instance: Instance, partial: Optional[PartialOrientation]):
    base = _as_states(instance, partial)
    free = [i for i, s in enumerate(base) if s == UNSET]
    if len(free) > MAX_ENUM_EDGES:
        raise EnumerationLimitError(
            f"{len(free)} free undirected edges exceed the enumeration limit of {MAX_ENUM_EDGES}"
        )
    return base, free


def _dense_masks(instance: Instance, base: list[int], free: list[int]) -> Iterator[np.ndarray]:
    """Yield boolean validity masks for consecutive blocks of orientation codes.

    Reachability is computed for a whole block at once by repeated frontier
    expansion with batched boolean matrix products.
    """
    g = instance.graph
    n = g.n
    total = 1 << len(free)
    fixed_adj = np.zeros((n, n), dtype=np.float32)
    for a, b in g.arcs:
        fixed_adj[a, b] = 1
    for eid, (a, b) in enumerate(g.edges):
        if base[eid] == FORWARD:
            fixed_adj[a, b] = 1
        elif base[eid] == REVERSE:
            fixed_adj[b, a] = 1
    sources = instance.sources
    src_row = {s: i for i, s in enumerate(sources)}
    pair_rows = np.array([src_row[p.source] for p in instance.pairs], dtype=np.intp)
    pair_cols = np.array([p.target for p in instance.pairs], dtype=np.intp)
    tails = np.array([g.edges[e][0] for e in free], dtype=np.intp)
    heads = np.array([g.edges[e][1] for e in free], dtype=np.intp)

    block = max(1, min(total, (1 << 22) // max(1, n * n)))
    for start in range(0, total, block):
        codes = np.arange(start, min(total, start + block), dtype=np.int64)
        bsz = len(codes)
        if not instance.pairs:
            yield np.ones(bsz, dtype=bool)
            continue
        adj = np.broadcast_to(fixed_adj, (bsz, n, n)).copy()
        for j in range(len(free)):
            rev = ((codes >> j) & 1).astype(bool)
            adj[~rev, tails[j], heads[j]] = 1
            adj[rev, heads[j], tails[j]] = 1
        reach = np.zeros((bsz, len(sources), n), dtype=np.float32)
        for i, s in enumerate(sources):
            reach[:, i, s] = 1
        while True:
            nxt = np.minimum(reach + np.matmul(reach, adj), 1.0)
            if np.array_equal(nxt, reach):
                break
            reach = nxt
        hit = reach[:, pair_rows, pair_cols] > 0
        yield hit.all(axis=1)


def _orientation_from_code(base: list[int], free: list[int], code: int) -> PartialOrientation:
    states = list(base)
    for j, eid in enumerate(free):
        states[eid] = REVERSE if (code >> j) & 1 else FORWARD
    return PartialOrientation(tuple(states))


def iter_valid(instance: Instance, partial: Optional[PartialOrientation] = None
               ) -> Iterator[PartialOrientation]:
    """All solving total orientations extending ``partial``, by brute force.

    Free edges are enumerated as binary codes; bit ``j`` set means the j-th
    free edge is REVERSE.  Orientations come out in increasing code order.
    """
    base, free = _free_edges(instance, partial)
    if instance.graph.n <= _DENSE_MAX_VERTICES:
        offset = 0
        for mask in _dense_masks(instance, base, free):
            for k in np.flatnonzero(mask):
                yield _orientation_from_code(base, free, offset + int(k))
            offset += len(mask)
    else:
        for code in range(1 << len(free)):
            o = _orientation_from_code(base, free, code)
            if verify_orientation(instance, o):
                yield o


def enumerate_valid(instance: Instance, cap: Optional[int] = None,
                    partial: Optional[PartialOrientation] = None) -> int:
    """Count solving total orientations (extending ``partial``) exhaustively.

    Raises :class:`EnumerationLimitError` if more than ``MAX_ENUM_EDGES``
    edges are free or the count exceeds ``cap``.
    """
    base, free = _free_edges(instance, partial)
    if instance.graph.n <= _DENSE_MAX_VERTICES:
        count = 0
        for mask in _dense_masks(instance, base, free):
            count += int(mask.sum())
            if cap is not None and count > cap:
                raise EnumerationLimitError(f"more than {cap} solving orientations")
        return count
    count = 0
    for _ in iter_valid(instance, partial):
        count += 1
        if cap is not None and count > cap:
            raise EnumerationLimitError(f"more than {cap} solving orientations")
    return count

"""Compile a planar monotone 3-SAT formula into a Steiner Orientation instance.

Gadgets are instantiated in a fixed order (variables, clauses, then one
edge gadget per variable-clause incidence), so vertex and edge ids are
deterministic.  Every undirected edge and every terminal pair gets a
provenance record naming its gadget and formula element:

* variable ``X`` for variable gadgets,
* clause ``C<i>`` (0-based clause index) for clause internals,
* incidence ``X@C<i>`` for port edges and edge gadgets.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .formula import Formula, Layout, Side, leg_order, validate_layout
from .gadgets import (PORT_GAP, PORT_WIDTH, GraphBuilder, build_clause2, build_clause3,
                      build_edge_gadget, build_variable)
from .graph import Instance, Orient, PartialOrientation

VARIABLE_Y = 1.5
CLAUSE_GAP = 6.0
LEVEL_HEIGHT = 10.0
VARIABLE_GAP = 3.0


class DecodeError(RuntimeError):
    pass


class EdgeRecord(NamedTuple):
    kind: str
    role: str
    element: str


class PairRecord(NamedTuple):
    kind: str
    element: str


@dataclass
class ReductionMetadata:
    edges: list[EdgeRecord] = field(default_factory=list)
    pairs: list[PairRecord] = field(default_factory=list)
    # variable name -> (top chain edge ids, bottom chain edge ids), left to right
    chains: dict[str, tuple[list[int], list[int]]] = field(default_factory=dict)

    @property
    def variables(self) -> list[str]:
        return list(self.chains)

    def gadget_counts(self) -> Counter:
        """Number of gadgets per kind, counted via their terminal pairs."""
        return Counter(kind for kind, _ in dict.fromkeys(self.pairs))

    def to_lines(self) -> list[str]:
        lines = [f"m e {i} {r.kind} {r.role} {r.element}" for i, r in enumerate(self.edges)]
        lines += [f"m p {i} {r.kind} {r.element}" for i, r in enumerate(self.pairs)]
        return lines

    @classmethod
    def from_lines(cls, records) -> "ReductionMetadata":
        """Rebuild from ``(lineno, tokens)`` records of an instance file."""
        from .textio import FormatError

        edges: dict[int, EdgeRecord] = {}
        pairs: dict[int, PairRecord] = {}
        for lineno, tok in records:
            try:
                if tok[0] == "e" and len(tok) == 5:
                    edges[int(tok[1])] = EdgeRecord(*tok[2:])
                    continue
                if tok[0] == "p" and len(tok) == 4:
                    pairs[int(tok[1])] = PairRecord(*tok[2:])
                    continue
            except ValueError:
                pass
            raise FormatError("malformed metadata record", lineno)
        if sorted(edges) != list(range(len(edges))) or sorted(pairs) != list(range(len(pairs))):
            raise FormatError("metadata ids must be dense")
        meta = cls([edges[i] for i in range(len(edges))], [pairs[i] for i in range(len(pairs))])
        for eid, rec in enumerate(meta.edges):
            if rec.kind == "variable":
                var = rec.element.split("@", 1)[0]
                top, bottom = meta.chains.setdefault(var, ([], []))
                (top if rec.role == "e_pos" else bottom).append(eid)
        return meta


def _port_positions(formula: Formula, layout: Layout):
    """Left x of every variable port, keyed by (variable, side) in leg order."""
    step = PORT_WIDTH + PORT_GAP
    x0 = 0.0
    legs: dict[tuple[int, Side], list[int]] = {}
    xs: dict[tuple[int, Side], list[float]] = {}
    for v in range(1, formula.num_vars + 1):
        width = 0
        for side in (Side.POSITIVE, Side.NEGATIVE):
            order = leg_order(formula, layout, v, side)
            legs[v, side] = order
            xs[v, side] = [x0 + step * i for i in range(len(order))]
            width = max(width, len(order))
        x0 += step * width - PORT_GAP + VARIABLE_GAP + 3.0
    return legs, xs


def clause_base_y(depth: int) -> float:
    return VARIABLE_Y + CLAUSE_GAP + LEVEL_HEIGHT * (depth - 1)


def compile_formula(formula: Formula, layout: Optional[Layout] = None
                    ) -> tuple[Instance, ReductionMetadata]:
    """Build the Steiner Orientation instance for ``formula``.

    The instance is solvable iff the formula is satisfiable; a solution is
    turned back into an assignment by :func:`decode`.
    """
    if layout is None:
        layout = validate_layout(formula)
    legs, xs = _port_positions(formula, layout)
    b = GraphBuilder()
    meta = ReductionMetadata()
    port_of: dict[tuple[int, int], int] = {}  # (variable, clause) -> variable port edge
    port_x: dict[tuple[int, int], float] = {}

    def note_edges(emap, kind, element_of):
        for local in sorted(emap):
            eid = emap[local]
            if eid == len(meta.edges):
                role = b.roles[eid]
                meta.edges.append(EdgeRecord(kind, role, element_of(local, role)))

    def note_pairs(pmap, kind, element):
        for local in sorted(pmap):
            meta.pairs.append(PairRecord(kind, element))

    for v, name in enumerate(formula.names, 1):
        top, bottom = legs[v, Side.POSITIVE], legs[v, Side.NEGATIVE]
        gadget = build_variable(len(top), len(bottom), xs[v, Side.POSITIVE],
                                xs[v, Side.NEGATIVE], VARIABLE_Y)
        _, emap, pmap = b.embed(gadget, name)
        chain_ids = ([], [])
        for side, order, k in ((Side.POSITIVE, top, 0), (Side.NEGATIVE, bottom, 1)):
            for i, ci in enumerate(order):
                eid = emap[gadget.ports[f"{side.value}{i}"]]
                port_of[v, ci] = eid
                port_x[v, ci] = xs[v, side][i]
                chain_ids[k].append(eid)
        incidence = {}
        for side, order in ((Side.POSITIVE, top), (Side.NEGATIVE, bottom)):
            for i, ci in enumerate(order):
                incidence[gadget.ports[f"{side.value}{i}"]] = f"{name}@C{ci}"
        note_edges(emap, "variable", lambda local, role: incidence[local])
        note_pairs(pmap, "variable", name)
        meta.chains[name] = chain_ids

    clause_port: dict[tuple[int, int], int] = {}
    clause_y: dict[int, float] = {}
    for ci, clause in enumerate(formula.clauses):
        base = clause_base_y(layout.depth[ci])
        clause_y[ci] = base if clause.side is Side.POSITIVE else -base
        xs_c = [port_x[v, ci] for v in clause.vars]
        if len(clause.vars) == 3:
            gadget = build_clause3(clause.side, xs_c, base)
            roles = ["ebar_x", "ebar_y", "ebar_z"]
        else:
            gadget = build_clause2(clause.side, xs_c, base)
            roles = ["ebar_x", "ebar_z"]
        kind = gadget.kind
        _, emap, pmap = b.embed(gadget, f"C{ci}")
        element = {}
        for role, v in zip(roles, clause.vars):
            clause_port[v, ci] = emap[gadget.ports[role]]
            element[gadget.ports[role]] = f"{formula.names[v - 1]}@C{ci}"
        note_edges(emap, kind, lambda local, role: element.get(local, f"C{ci}"))
        note_pairs(pmap, kind, f"C{ci}")

    for ci, clause in enumerate(formula.clauses):
        y_var = VARIABLE_Y if clause.side is Side.POSITIVE else -VARIABLE_Y
        for v in clause.vars:
            inc = f"{formula.names[v - 1]}@C{ci}"
            gadget = build_edge_gadget(port_x[v, ci], y_var, clause_y[ci])
            _, emap, pmap = b.embed(gadget, inc, merge={"A": port_of[v, ci], "B": clause_port[v, ci]})
            note_edges(emap, "edge", lambda local, role: inc)
            note_pairs(pmap, "edge", inc)

    instance = Instance(b.graph(), tuple(b.pairs))
    assert len(meta.edges) == instance.graph.m and len(meta.pairs) == len(instance.pairs)
    return instance, meta


def decode(metadata: ReductionMetadata, orientation: PartialOrientation) -> tuple[bool, ...]:
    """Read the truth value of every variable off its gadget's rotation.

    Clockwise (top chain rightward, bottom chain leftward) is TRUE.
    """
    values = []
    for name, (top, bottom) in metadata.chains.items():
        first = orientation[top[0]]
        if first is Orient.UNSET:
            raise DecodeError(f"variable {name}: chain edge {top[0]} is unoriented")
        clockwise = first is Orient.FORWARD
        want_top = Orient.FORWARD if clockwise else Orient.REVERSE
        bad = [e for e in top if orientation[e] is not want_top]
        bad += [e for e in bottom if orientation[e] is not want_top.flipped]
        if bad:
            raise DecodeError(f"variable {name}: edges {bad} break the rotational pattern")
        values.append(clockwise)
    return tuple(values)


def assignment_for(formula: Formula, metadata: ReductionMetadata,
                   values: Sequence[bool]) -> tuple[bool, ...]:
    """Reorder decoded values to the formula's variable order."""
    by_name = dict(zip(metadata.variables, values))
    return tuple(by_name[n] for n in formula.names)

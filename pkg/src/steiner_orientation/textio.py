"""Text formats: instances (with optional reduction metadata), witnesses, DOT.

Instance format, one record per line, ``#`` starts a comment::

    psi <nV> <nArcs> <nEdges> <nPairs>
    v <id> [<x> <y>] [<label>]
    a <tail> <head>
    e <id> <u> <w>
    p <s> <t>
    m e <edge-id> <gadget-kind> <role> <formula-element>
    m p <pair-index> <gadget-kind> <formula-element>

Witness format::

    psw <nEdges>
    o <edge-id> F|R
"""
from __future__ import annotations

from typing import Optional

from .graph import Instance, MixedGraph, Orient, PartialOrientation, TerminalPair


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None


def _is_float(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def format_instance(instance: Instance, metadata=None) -> str:
    g = instance.graph
    out = [f"psi {g.n} {len(g.arcs)} {g.m} {len(instance.pairs)}"]
    for v in range(g.n):
        parts = ["v", str(v)]
        if g.coords[v] is not None:
            parts += [_fmt_float(g.coords[v][0]), _fmt_float(g.coords[v][1])]
        if g.labels[v] is not None:
            parts.append(g.labels[v])
        out.append(" ".join(parts))
    out += [f"a {a} {b}" for a, b in g.arcs]
    out += [f"e {i} {a} {b}" for i, (a, b) in enumerate(g.edges)]
    out += [f"p {p.source} {p.target}" for p in instance.pairs]
    if metadata is not None:
        out.append("# reduction metadata")
        out += metadata.to_lines()
    return "\n".join(out) + "\n"


def parse_instance(text: str):
    """Parse an instance file; returns ``(instance, metadata_lines)``.

    ``metadata_lines`` holds the raw token lists of ``m`` records (empty if
    the file has none); :meth:`ReductionMetadata.from_lines` decodes them.
    """
    header = None
    verts: dict[int, tuple] = {}
    arcs, edges, pairs, meta = [], {}, [], []
    for lineno, tok in _records(text):
        kind = tok[0]
        if header is None:
            if kind != "psi" or len(tok) != 5:
                raise FormatError("expected header 'psi <nV> <nArcs> <nEdges> <nPairs>'", lineno)
            header = tuple(_int(t, lineno) for t in tok[1:])
            continue
        if kind == "v":
            if len(tok) < 2 or len(tok) > 5:
                raise FormatError("malformed vertex record", lineno)
            vid = _int(tok[1], lineno)
            rest = tok[2:]
            coord = label = None
            if len(rest) == 1:
                label = rest[0]
            elif len(rest) >= 2:
                if not (_is_float(rest[0]) and _is_float(rest[1])):
                    raise FormatError("vertex coordinates must be numbers", lineno)
                coord = (float(rest[0]), float(rest[1]))
                if len(rest) == 3:
                    label = rest[2]
            if vid in verts:
                raise FormatError(f"duplicate vertex {vid}", lineno)
            verts[vid] = (coord, label)
        elif kind == "a":
            if len(tok) != 3:
                raise FormatError("malformed arc record", lineno)
            arcs.append((_int(tok[1], lineno), _int(tok[2], lineno)))
        elif kind == "e":
            if len(tok) != 4:
                raise FormatError("malformed edge record", lineno)
            eid = _int(tok[1], lineno)
            if eid in edges:
                raise FormatError(f"duplicate edge id {eid}", lineno)
            edges[eid] = (_int(tok[2], lineno), _int(tok[3], lineno))
        elif kind == "p":
            if len(tok) != 3:
                raise FormatError("malformed pair record", lineno)
            pairs.append((_int(tok[1], lineno), _int(tok[2], lineno)))
        elif kind == "m":
            meta.append((lineno, tok[1:]))
        else:
            raise FormatError(f"unknown record type {kind!r}", lineno)
    if header is None:
        raise FormatError("missing 'psi' header")
    nv, na, ne, np_ = header
    if sorted(verts) != list(range(nv)):
        raise FormatError(f"expected vertex ids 0..{nv - 1}, got {len(verts)} vertex records")
    if len(arcs) != na:
        raise FormatError(f"header declares {na} arcs, found {len(arcs)}")
    if sorted(edges) != list(range(ne)):
        raise FormatError(f"expected edge ids 0..{ne - 1}, got {len(edges)} edge records")
    if len(pairs) != np_:
        raise FormatError(f"header declares {np_} pairs, found {len(pairs)}")
    try:
        graph = MixedGraph(
            nv,
            tuple(arcs),
            tuple(edges[i] for i in range(ne)),
            tuple(verts[v][1] for v in range(nv)),
            tuple(verts[v][0] for v in range(nv)),
        )
        instance = Instance(graph, tuple(TerminalPair(s, t) for s, t in pairs))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return instance, meta


def format_witness(orientation: PartialOrientation) -> str:
    if not orientation.is_total:
        raise ValueError("witness must be a total orientation")
    lines = [f"psw {len(orientation)}"]
    lines += [f"o {i} {'F' if s is Orient.FORWARD else 'R'}" for i, s in enumerate(orientation)]
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> PartialOrientation:
    m = None
    states: dict[int, Orient] = {}
    for lineno, tok in _records(text):
        if m is None:
            if tok[0] != "psw" or len(tok) != 2:
                raise FormatError("expected header 'psw <nEdges>'", lineno)
            m = _int(tok[1], lineno)
            continue
        if tok[0] != "o" or len(tok) != 3 or tok[2] not in ("F", "R"):
            raise FormatError("expected 'o <edge-id> F|R'", lineno)
        eid = _int(tok[1], lineno)
        if eid in states:
            raise FormatError(f"duplicate edge id {eid}", lineno)
        states[eid] = Orient.FORWARD if tok[2] == "F" else Orient.REVERSE
    if m is None:
        raise FormatError("missing 'psw' header")
    if sorted(states) != list(range(m)):
        raise FormatError(f"witness declares {m} edges but lists {len(states)}")
    return PartialOrientation(tuple(states[i] for i in range(m)))


def to_dot(instance: Instance, name: str = "steiner") -> str:
    """Graphviz DOT with red bold undirected edges.

    Sources are drawn as triangles, targets as inverted triangles; vertex
    coordinates become pinned ``pos`` hints.
    """
    g = instance.graph
    sources = {p.source for p in instance.pairs}
    targets = {p.target for p in instance.pairs}
    lines = [f"digraph {name} {{", "  node [shape=circle, width=0.15, label=\"\"];"]
    for v in range(g.n):
        attrs = []
        if g.labels[v] is not None:
            attrs.append(f'xlabel="{g.labels[v]}"')
        if g.coords[v] is not None:
            x, y = g.coords[v]
            attrs.append(f'pos="{x:g},{y:g}!"')
        if v in sources and v in targets:
            attrs.append("shape=diamond")
        elif v in sources:
            attrs.append("shape=triangle")
        elif v in targets:
            attrs.append("shape=invtriangle")
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for a, b in g.arcs:
        lines.append(f"  {a} -> {b};")
    for i, (a, b) in enumerate(g.edges):
        lines.append(f'  {a} -> {b} [dir=none, color=red, style=bold, label="e{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

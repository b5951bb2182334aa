"""Walk through the four gadgets and count their solving orientations.

Every gadget is small enough that we can list all orientations of its red
(undirected) edges and check each one against the terminal pairs.
"""
import itertools

from steiner_orientation import (Orient, PartialOrientation, build_clause3, build_edge_gadget,
                                 build_flip, build_variable, enumerate_valid, iter_valid,
                                 verify_orientation)

ARROW = {Orient.FORWARD: "->", Orient.REVERSE: "<-"}


def show(o):
    return " ".join(ARROW[s] for s in o)


# A flip gadget has two red edges and two pairs. Only the antiparallel
# orientations connect both pairs.
flip = build_flip()
print(f"flip: {flip.graph.n} vertices, {len(flip.pairs)} pairs")
for states in itertools.product((Orient.FORWARD, Orient.REVERSE), repeat=2):
    o = PartialOrientation(states)
    print(f"  {show(o)}  {'ok' if verify_orientation(flip.instance, o) else '--'}")

# The variable gadget is a cycle of flips. Top edges all point one way and
# bottom edges the other: clockwise reads as TRUE.
var = build_variable(3, 2)
print(f"\nvariable(3, 2): {enumerate_valid(var.instance)} of {2 ** var.graph.m} orientations solve it")
for o in iter_valid(var.instance):
    top = [o[var.ports[f"pos{i}"]] for i in range(3)]
    label = "TRUE (clockwise)" if top[0] is Orient.FORWARD else "FALSE (counterclockwise)"
    print(f"  {show(o)}  {label}")

# A clause gadget is solvable as long as one literal edge points right.
clause = build_clause3()
ports = [clause.edge_id(r) for r in ("ebar_x", "ebar_y", "ebar_z")]
print("\nclause3: literal edges vs. solvability")
for pattern in itertools.product((Orient.FORWARD, Orient.REVERSE), repeat=3):
    partial = PartialOrientation.unset(clause.graph.m)
    for eid, s in zip(ports, pattern):
        partial = partial.assign(eid, s)
    n = enumerate_valid(clause.instance, partial=partial)
    print(f"  {show(pattern)}  {n} completions")

# The edge gadget copies a direction between two distant edges.
edge = build_edge_gadget()
print("\nedge gadget solutions (A middle B):")
for o in iter_valid(edge.instance):
    print(f"  {show(o)}")

"""Compile a monotone formula into a Steiner Orientation instance, solve it,
and read an assignment back off the variable gadgets."""
from steiner_orientation import compile_formula, decode, parse_formula, sat_oracle, solve
from steiner_orientation.reduction import assignment_for

TEXT = """\
vars: X Y Z W
pos: X Y
neg: X Z W
pos: Y Z W
neg: X Y Z
"""

formula = parse_formula(TEXT)
print("formula:", formula)

instance, meta = compile_formula(formula)
g = instance.graph
print(f"instance: {g.n} vertices, {len(g.arcs)} arcs, {g.m} red edges, {len(instance.pairs)} pairs")
print("gadgets:", dict(meta.gadget_counts()))

result = solve(instance)
print(f"solve: {result.status} after {result.stats.nodes} nodes, "
      f"{result.stats.propagations} forced edges")

values = assignment_for(formula, meta, decode(meta, result.witness))
print("decoded:", " ".join(f"{n}={'T' if v else 'F'}" for n, v in zip(formula.names, values)))
print("satisfies formula:", formula.evaluate(values))

# brute force agrees, though it may pick a different assignment
print("sat_oracle:", sat_oracle(formula))

# an unsatisfiable formula gives an instance with no solving orientation
unsat = parse_formula("vars: A B C\npos: A B\npos: B C\npos: A C\n"
                      "neg: A B\nneg: B C\nneg: A C\n")
inst, _ = compile_formula(unsat)
print("\nthree-way pairwise formula:", solve(inst).status, "| sat_oracle:", sat_oracle(unsat))

"""Clause layout: which formulas can be drawn with variables on a line,
positive clauses above and negative clauses below, without crossings."""
from steiner_orientation import LayoutError, Side, parse_formula, validate_layout
from steiner_orientation.formula import leg_order

ok = parse_formula("vars: X Y Z W\npos: X Y\nneg: X Z W\npos: Y Z W\nneg: X Y Z\n")
layout = validate_layout(ok)
for i, c in enumerate(ok.clauses):
    print(f"C{i} {ok.clause_text(i):<14} depth {layout.depth[i]}")

# Nested clauses get larger depth and sit further from the variable line.
# At each variable the legs are ordered so that nothing crosses:
for v, name in enumerate(ok.names, 1):
    for side in Side:
        order = leg_order(ok, layout, v, side)
        if order:
            print(f"  {name} {side.value}: " + ", ".join(f"C{i}" for i in order))

# Two positive clauses whose spans overlap without nesting must cross.
bad = parse_formula("vars: A B C D\npos: A C\npos: B D\nneg: A B\nneg: C D\n")
try:
    validate_layout(bad)
except LayoutError as exc:
    print("\nrejected:", exc)

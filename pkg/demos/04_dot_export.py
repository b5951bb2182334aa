"""Write Graphviz files for a gadget and a compiled formula.

Render with e.g. ``neato -n -Tsvg flip.dot > flip.svg``; the files carry
position hints so the drawing follows the gadget geometry.
"""
import sys
from pathlib import Path

from steiner_orientation import build_flip, compile_formula, parse_formula, to_dot

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
out.mkdir(parents=True, exist_ok=True)

(out / "flip.dot").write_text(to_dot(build_flip().instance, "flip"))

inst, _ = compile_formula(parse_formula("vars: A B\npos: A B\nneg: A B\n"))
(out / "minimal.dot").write_text(to_dot(inst, "minimal"))

for name in ("flip.dot", "minimal.dot"):
    text = (out / name).read_text()
    red = text.count("color=red")
    # red edges are written as dir=none lines, so subtract them from the arrows
    print(f"{out / name}: {text.count('->') - red} arcs, {red} red edges")

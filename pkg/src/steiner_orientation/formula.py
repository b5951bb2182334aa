"""Planar monotone 3-SAT formulas.

Variables sit on a horizontal line in declaration order; positive clauses
are drawn above it and negative clauses below.  Text format::

    # comment
    vars: X Y Z W
    pos: X Y
    neg: X Z W

A literal written ``~X`` has the opposite sign of its line.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

MAX_ORACLE_VARS = 24

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Side(enum.Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"

    @property
    def sign(self) -> bool:
        return self is Side.POSITIVE


class FormulaError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class LayoutError(ValueError):
    def __init__(self, message: str, clauses: tuple[int, int], variable: int):
        self.clauses = clauses
        self.variable = variable
        super().__init__(message)


@dataclass(frozen=True)
class Clause:
    side: Side
    vars: tuple[int, ...]  # 1-based positions, ascending

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(sorted(self.vars)))
        if not 2 <= len(self.vars) <= 3:
            raise FormulaError(f"clause must have 2 or 3 variables, got {len(self.vars)}")
        if len(set(self.vars)) != len(self.vars):
            raise FormulaError("duplicate variable in clause")

    @property
    def span(self) -> tuple[int, int]:
        return self.vars[0], self.vars[-1]

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        want = self.side.sign
        return any(assignment[v - 1] == want for v in self.vars)


@dataclass(frozen=True)
class Formula:
    names: tuple[str, ...]
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if len(set(self.names)) != len(self.names):
            raise FormulaError("duplicate variable name")
        for name in self.names:
            if not _NAME.match(name):
                raise FormulaError(f"invalid variable name {name!r}")
        for c in self.clauses:
            if c.vars[0] < 1 or c.vars[-1] > len(self.names):
                raise FormulaError(f"clause refers to variable outside 1..{len(self.names)}")
        pos = {v for c in self.clauses if c.side is Side.POSITIVE for v in c.vars}
        neg = {v for c in self.clauses if c.side is Side.NEGATIVE for v in c.vars}
        for v, name in enumerate(self.names, 1):
            if v not in pos or v not in neg:
                missing = "positive" if v not in pos else "negative"
                raise FormulaError(f"variable {name} has no {missing} occurrence")

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.num_vars:
            raise ValueError("assignment length differs from variable count")
        return all(c.satisfied_by(assignment) for c in self.clauses)

    def occurrences(self, v: int, side: Side) -> list[int]:
        """Indices of clauses on ``side`` containing variable ``v``."""
        return [i for i, c in enumerate(self.clauses) if c.side is side and v in c.vars]

    def clause_text(self, i: int) -> str:
        c = self.clauses[i]
        neg = "" if c.side is Side.POSITIVE else "~"
        return "(" + " | ".join(neg + self.names[v - 1] for v in c.vars) + ")"

    def __str__(self) -> str:
        return " & ".join(self.clause_text(i) for i in range(len(self.clauses)))


def parse_formula(text: str) -> Formula:
    names: Optional[list[str]] = None
    index: dict[str, int] = {}
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, body = line.partition(":")
        key = head.strip()
        if not sep or key not in ("vars", "pos", "neg"):
            col = len(line) - len(line.lstrip()) + 1
            raise FormulaError("expected 'vars:', 'pos:' or 'neg:'", lineno, col)
        tokens = [(m.start() + len(head) + 2, m.group()) for m in re.finditer(r"\S+", body)]
        if key == "vars":
            if names is not None:
                raise FormulaError("'vars:' declared twice", lineno, 1)
            names = []
            for col, tok in tokens:
                if not _NAME.match(tok):
                    raise FormulaError(f"invalid variable name {tok!r}", lineno, col)
                if tok in index:
                    raise FormulaError(f"variable {tok} declared twice", lineno, col)
                index[tok] = len(names) + 1
                names.append(tok)
            continue
        if names is None:
            raise FormulaError("clause before 'vars:' declaration", lineno, 1)
        line_sign = key == "pos"
        signs, vars_ = set(), []
        for col, tok in tokens:
            negated = tok.startswith("~")
            name = tok[1:] if negated else tok
            if name not in index:
                raise FormulaError(f"undeclared variable {name!r}", lineno, col)
            v = index[name]
            if v in vars_:
                raise FormulaError(f"duplicate variable {name} in clause", lineno, col)
            signs.add(line_sign != negated)
            vars_.append(v)
        if len(signs) > 1:
            raise FormulaError("non-monotone clause (mixes positive and negative literals)", lineno, 1)
        if not 2 <= len(vars_) <= 3:
            raise FormulaError(f"clause has {len(vars_)} variables, expected 2 or 3", lineno, 1)
        side = Side.POSITIVE if signs == {True} else Side.NEGATIVE
        clauses.append(Clause(side, tuple(vars_)))
    if names is None:
        raise FormulaError("missing 'vars:' declaration")
    try:
        return Formula(tuple(names), tuple(clauses))
    except FormulaError as exc:
        raise FormulaError(str(exc)) from None


def format_formula(formula: Formula) -> str:
    lines = ["vars: " + " ".join(formula.names)]
    for c in formula.clauses:
        lines.append(f"{c.side.value}: " + " ".join(formula.names[v - 1] for v in c.vars))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Layout:
    """Nesting depth of every clause on its own side (1 = next to the variables)."""

    depth: tuple[int, ...]


def _inside(outer: Clause, a: int, b: int) -> Optional[int]:
    """First leg of ``outer`` strictly between ``a`` and ``b``."""
    for v in outer.vars:
        if a < v < b:
            return v
    return None


def validate_layout(formula: Formula) -> Layout:
    """Check that same-side clauses can be drawn as non-crossing nested combs.

    Two clauses on one side must either have spans with disjoint interiors
    (touching at an endpoint is fine) or be nested, with the outer clause
    putting no leg strictly inside the inner clause's span.
    """
    clauses = formula.clauses
    inner_of: dict[int, list[int]] = {i: [] for i in range(len(clauses))}
    for i, j in itertools.combinations(range(len(clauses)), 2):
        ci, cj = clauses[i], clauses[j]
        if ci.side is not cj.side:
            continue
        (ai, bi), (aj, bj) = ci.span, cj.span
        if bi <= aj or bj <= ai:
            continue
        j_outer = aj <= ai and bi <= bj and _inside(cj, ai, bi) is None
        i_outer = ai <= aj and bj <= bi and _inside(ci, aj, bj) is None
        if j_outer:
            inner_of[j].append(i)  # ties: the earlier clause is the inner one
        elif i_outer:
            inner_of[i].append(j)
        else:
            v = _inside(cj, ai, bi) or _inside(ci, aj, bj)
            raise LayoutError(
                f"clauses {i} {formula.clause_text(i)} and {j} {formula.clause_text(j)} "
                f"cross at variable {formula.names[v - 1]}",
                (i, j), v,
            )

    depth: dict[int, int] = {}

    def get(c: int) -> int:
        if c not in depth:
            depth[c] = 1 + max((get(k) for k in inner_of[c]), default=0)
        return depth[c]

    return Layout(tuple(get(c) for c in range(len(clauses))))


def leg_order(formula: Formula, layout: Layout, v: int, side: Side) -> list[int]:
    """Clauses attached to ``v`` on ``side``, in left-to-right leg order.

    Clauses ending at ``v`` come first (inner ones leftmost), then the clause
    using ``v`` as its middle leg, then clauses starting at ``v`` (outer ones
    leftmost).  Any other order makes some leg cross a clause bar.
    """
    def key(i):
        c = formula.clauses[i]
        lo, hi = c.span
        if v == hi:
            return (0, layout.depth[i], i)
        if v != lo:
            return (1, 0, i)
        return (2, -layout.depth[i], i)

    return sorted(formula.occurrences(v, side), key=key)


def sat_oracle(formula: Formula) -> Optional[tuple[bool, ...]]:
    """First satisfying assignment by exhaustive scan, or None.

    Assignments are visited in binary counting order with variable 1 as the
    least significant bit, starting from all-false.
    """
    n = formula.num_vars
    if n > MAX_ORACLE_VARS:
        raise ValueError(f"{n} variables exceed the brute-force limit of {MAX_ORACLE_VARS}")
    masks = []
    for c in formula.clauses:
        bits = sum(1 << (v - 1) for v in c.vars)
        masks.append((bits, c.side.sign))
    for code in range(1 << n):
        if all((code & bits) if pos else (~code & bits) for bits, pos in masks):
            return tuple(bool(code >> k & 1) for k in range(n))
    return None


def small_formula_corpus(max_vars: int = 3, max_clauses: int = 4,
                         min_vars: int = 2) -> Iterator[Formula]:
    """Every valid formula up to the given size that passes layout validation.

    Clause lists are multisets of distinct clause shapes in a canonical
    order, so permutations of one formula appear once.
    """
    for n in range(min_vars, max_vars + 1):
        names = tuple("XYZWUVST"[k] if n <= 8 else f"x{k + 1}" for k in range(n))
        shapes = [
            Clause(side, vs)
            for side in (Side.POSITIVE, Side.NEGATIVE)
            for size in (2, 3)
            for vs in itertools.combinations(range(1, n + 1), size)
        ]
        for k in range(2, max_clauses + 1):
            for combo in itertools.combinations_with_replacement(shapes, k):
                try:
                    f = Formula(names, combo)
                    validate_layout(f)
                except (FormulaError, LayoutError):
                    continue
                yield f

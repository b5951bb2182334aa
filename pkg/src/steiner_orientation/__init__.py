"""Steiner Orientation on mixed graphs: planar hardness gadgets and exact solving."""

from .formula import (Clause, Formula, Layout, LayoutError, FormulaError, Side, format_formula,
                      parse_formula, sat_oracle, validate_layout)
from .gadgets import (GadgetGraph, build_clause2, build_clause3, build_edge_gadget, build_flip,
                      build_variable)
from .graph import (Instance, MixedGraph, Orient, PartialOrientation, TerminalPair,
                    check_planarity, check_source_sink_property, reachable_set, verify_orientation)
from .reduction import ReductionMetadata, compile_formula, decode
from .solver import SolveResult, enumerate_valid, iter_valid, propagate, relaxed_feasible, solve
from .textio import format_instance, format_witness, parse_instance, parse_witness, to_dot

__version__ = "0.1.0"

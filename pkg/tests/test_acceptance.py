"""Acceptance suite. Each test tags itself with a criterion number; the
terminal summary prints one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import contextlib
import io
import itertools
import time
from collections import Counter

import networkx as nx

from steiner_orientation.cli import main
from steiner_orientation.formula import format_formula, parse_formula, sat_oracle, small_formula_corpus
from steiner_orientation.gadgets import (build_clause2, build_clause3, build_edge_gadget,
                                         build_flip, build_variable)
from steiner_orientation.graph import (MixedGraph, Orient, PartialOrientation, check_planarity,
                                       check_source_sink_property, verify_orientation)
from steiner_orientation.reduction import assignment_for, compile_formula, decode
from steiner_orientation.solver import enumerate_valid, solve
from steiner_orientation.textio import format_witness

from randgraphs import random_corpus

F, R = Orient.FORWARD, Orient.REVERSE
RANDOM_SEED = 2024
RANDOM_COUNT = 500


def all_orientations(m):
    return [PartialOrientation(s) for s in itertools.product((F, R), repeat=m)]


def test_flip_gadget(record_property):
    record_property("criterion", "1 flip gadget: 2 of 4, antiparallel, < 1 s")
    t0 = time.perf_counter()
    g = build_flip()
    valid = [o for o in all_orientations(2) if verify_orientation(g.instance, o)]
    assert len(valid) == 2 == enumerate_valid(g.instance)
    # the two red edges are stored with the same left-to-right reading
    (a0, b0), (a1, b1) = g.graph.edges
    assert g.graph.coords[a0][0] < g.graph.coords[b0][0]
    assert g.graph.coords[a1][0] < g.graph.coords[b1][0]
    assert all(o[0] != o[1] for o in valid)
    assert time.perf_counter() - t0 < 1.0


def test_variable_gadget(record_property):
    record_property("criterion", "2 variable gadget: 2 of 2^(p+n) for (p,n) in {1,2,3}^2, rotational, < 5 s")
    t0 = time.perf_counter()
    for p, n in itertools.product((1, 2, 3), repeat=2):
        g = build_variable(p, n)
        top = {g.ports[f"pos{i}"] for i in range(p)}
        valid = [o for o in all_orientations(p + n) if verify_orientation(g.instance, o)]
        assert len(valid) == 2 == enumerate_valid(g.instance), (p, n)
        for o in valid:
            # clockwise: top rightward, bottom leftward; counterclockwise the reverse
            first = o[next(iter(top))]
            assert all(o[e] == (first if e in top else first.flipped) for e in range(p + n))
        assert {o[next(iter(top))] for o in valid} == {F, R}
    assert time.perf_counter() - t0 < 5.0


def port_lemma(g, roles):
    """For every assignment of the literal ports, does some orientation of the
    remaining edges solve the gadget? Decided over all 2^m orientations."""
    ids = [g.edge_id(r) for r in roles]
    solvable = {p: False for p in itertools.product((F, R), repeat=len(ids))}
    solutions = []
    for o in all_orientations(g.graph.m):
        if verify_orientation(g.instance, o):
            solvable[tuple(o[i] for i in ids)] = True
            solutions.append(o)
    return solvable, solutions


def test_clause_gadgets(record_property):
    record_property("criterion", "3 clause gadgets: solvable iff a literal port is rightward, f || g, < 5 s")
    t0 = time.perf_counter()
    for build in (build_clause3, build_clause2):
        g = build()
        roles = ("ebar_x", "ebar_y", "ebar_z") if g.kind == "clause3" else ("ebar_x", "ebar_z")
        assert 2 ** g.graph.m == (128 if g.kind == "clause3" else 32)
        solvable, solutions = port_lemma(g, roles)
        for pattern, ok in solvable.items():
            assert ok == (F in pattern), (g.kind, pattern)
        f, gg, c = g.edge_id("f"), g.edge_id("g"), g.edge_id("central")
        for o in solutions:
            # f and g are stored top-down and central bottom-up, so equal
            # stored states are f parallel to g and antiparallel to central
            assert o[f] == o[gg] == o[c]
        assert len(solutions) == enumerate_valid(g.instance)
    assert time.perf_counter() - t0 < 5.0


def test_edge_gadget(record_property):
    record_property("criterion", "4 edge gadget: solvable iff outer edges parallel, < 1 s")
    t0 = time.perf_counter()
    g = build_edge_gadget()
    a, m, b = g.ports["A"], g.ports["middle"], g.ports["B"]
    solvable = {(x, y): False for x in (F, R) for y in (F, R)}
    for o in all_orientations(3):
        if verify_orientation(g.instance, o):
            solvable[o[a], o[b]] = True
            # the middle edge is the one forced against the outer pair
            assert o[m] != o[a]
    assert all(ok == (x == y) for (x, y), ok in solvable.items())
    assert time.perf_counter() - t0 < 1.0


def test_structural_validators(record_property):
    record_property("criterion", "5 structural validators: corpus compiles are source/sink clean and planar; K5, K3,3 rejected")
    corpus = list(small_formula_corpus())
    for f in corpus:
        inst, _ = compile_formula(f)
        assert check_source_sink_property(inst) == [], format_formula(f)
        assert check_planarity(inst.graph), format_formula(f)
    k5 = MixedGraph(5, edges=tuple(nx.complete_graph(5).edges()))
    k33 = MixedGraph(6, arcs=tuple(nx.complete_bipartite_graph(3, 3).edges()))
    assert not check_planarity(k5) and not check_planarity(k33)


def random_run():
    """Fingerprint of criterion 6 on the fixed corpus."""
    out = []
    for inst in random_corpus(RANDOM_SEED, RANDOM_COUNT):
        count = enumerate_valid(inst)
        res = solve(inst)
        bare = solve(inst, propagate=False)
        assert res.sat == (count > 0)
        assert bare.sat == res.sat
        if res.sat:
            assert verify_orientation(inst, res.witness)
            assert verify_orientation(inst, bare.witness)
        out.append((res.status, format_witness(res.witness) if res.sat else "", res.stats.nodes,
                    bare.stats.nodes))
    return out


def test_solver_matches_oracle(record_property):
    record_property("criterion", "6 solver vs brute force on 500 random mixed graphs, < 60 s")
    t0 = time.perf_counter()
    corpus = random_corpus(RANDOM_SEED, RANDOM_COUNT)
    assert all(i.graph.n <= 20 and i.graph.m <= 12 and len(i.pairs) <= 6 for i in corpus)
    results = random_run()
    assert len(results) == RANDOM_COUNT
    sat = sum(r[0] == "SAT" for r in results)
    assert 0 < sat < RANDOM_COUNT
    assert time.perf_counter() - t0 < 60.0


def equiv_run(tmp_path):
    """Run the equiv command on each corpus formula; returns (exit codes, stdout)."""
    codes, outputs = [], []
    for k, f in enumerate(small_formula_corpus()):
        path = tmp_path / f"f{k:03d}.pm3"
        path.write_text(format_formula(f))
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            codes.append(main(["equiv", str(path)]))
        outputs.append(buf.getvalue())
    return codes, outputs


def test_reduction_equivalence(record_property, tmp_path):
    record_property("criterion", "7 compile+solve agrees with brute-force SAT on the full small corpus, < 10 min")
    t0 = time.perf_counter()
    codes, outputs = equiv_run(tmp_path)
    assert len(codes) == 81
    assert codes == [0] * len(codes)
    assert all(o.rstrip().endswith("EQUIVALENT") for o in outputs)
    assert time.perf_counter() - t0 < 600.0


def appendix_run(path):
    f = parse_formula(path.read_text())
    inst, meta = compile_formula(f)
    t0 = time.perf_counter()
    res = solve(inst)
    elapsed = time.perf_counter() - t0
    return f, inst, meta, res, elapsed


def test_appendix_fixture(record_property, appendix_path):
    record_property("criterion", "8 worked four-variable formula: inventory, SAT < 60 s, decode satisfies")
    f, inst, meta, res, elapsed = appendix_run(appendix_path)
    assert meta.gadget_counts() == Counter(variable=4, clause3=3, clause2=1, edge=11)
    assert len(inst.pairs) == 78 and inst.graph.m == 48
    assert res.sat and elapsed < 60.0
    assert verify_orientation(inst, res.witness)
    values = assignment_for(f, meta, decode(meta, res.witness))
    assert f.evaluate(values)
    assert sat_oracle(f) is not None


def test_determinism(record_property, appendix_path, tmp_path):
    record_property("criterion", "9 repeated runs of 6-8 give identical witnesses and node counts")
    assert random_run() == random_run()
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    assert equiv_run(a) == equiv_run(b)
    runs = []
    for _ in range(2):
        _, inst, meta, res, _ = appendix_run(appendix_path)
        runs.append((format_witness(res.witness), res.stats.nodes, res.stats.propagations))
    assert runs[0] == runs[1]

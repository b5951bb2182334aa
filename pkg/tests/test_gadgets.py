import itertools

import pytest

from steiner_orientation.formula import Side
from steiner_orientation.gadgets import (build_clause2, build_clause3, build_edge_gadget,
                                         build_flip, build_gadget, build_variable)
from steiner_orientation.graph import (Orient, PartialOrientation, check_planarity,
                                       check_source_sink_property, verify_orientation)
from steiner_orientation.solver import enumerate_valid, iter_valid

F, R = Orient.FORWARD, Orient.REVERSE


def inventory(g):
    return g.graph.n, len(g.graph.arcs), g.graph.m, len(g.pairs)


def solutions(g):
    return [tuple(o) for o in iter_valid(g.instance)]


def test_flip_inventory_and_lemma():
    g = build_flip()
    assert inventory(g) == (8, 8, 2, 2)
    assert sorted(solutions(g)) == [(F, R), (R, F)]
    assert check_source_sink_property(g.instance) == []


@pytest.mark.parametrize("p, n", list(itertools.product((1, 2, 3), repeat=2)))
def test_variable_gadget(p, n):
    g = build_variable(p, n)
    assert inventory(g) == (4 + 2 * p + 2 * n, 8 + 2 * (p - 1) + 2 * (n - 1), p + n, 2)
    top = [g.ports[f"pos{i}"] for i in range(p)]
    bottom = [g.ports[f"neg{i}"] for i in range(n)]
    sols = solutions(g)
    clockwise = tuple(F if e in top else R for e in range(p + n))
    counter = tuple(R if e in top else F for e in range(p + n))
    assert sorted(sols) == sorted([clockwise, counter])
    assert set(top) | set(bottom) == set(range(p + n))
    assert check_source_sink_property(g.instance) == []


def test_variable_3_2_matches_figure():
    assert inventory(build_variable(3, 2)) == (14, 14, 5, 2)


def test_variable_1_1_is_a_flip():
    assert inventory(build_variable(1, 1)) == inventory(build_flip())


def test_variable_rejects_missing_side():
    with pytest.raises(ValueError):
        build_variable(0, 1)


def boundary_patterns(g, roles):
    ids = [g.edge_id(r) for r in roles]
    return {tuple(o[i] for i in ids) for o in iter_valid(g.instance)}


@pytest.mark.parametrize("side", list(Side))
def test_clause3_lemma(side):
    g = build_clause3(side)
    assert inventory(g) == (30, 35, 7, 7)
    roles = ("ebar_x", "ebar_y", "ebar_z")
    expected = {p for p in itertools.product((F, R), repeat=3) if F in p}
    assert boundary_patterns(g, roles) == expected
    assert enumerate_valid(g.instance) == 12
    f, gg, c = g.edge_id("f"), g.edge_id("g"), g.edge_id("central")
    for o in iter_valid(g.instance):
        # f and g are stored top-down, central bottom-up: equal states mean
        # f and g parallel and the central edge opposite to them
        assert o[f] == o[gg] == o[c]
    assert check_source_sink_property(g.instance) == []


@pytest.mark.parametrize("side", list(Side))
def test_clause2_lemma(side):
    g = build_clause2(side)
    assert inventory(g) == (24, 28, 5, 5)
    expected = {p for p in itertools.product((F, R), repeat=2) if F in p}
    assert boundary_patterns(g, ("ebar_x", "ebar_z")) == expected
    assert check_source_sink_property(g.instance) == []


def test_clause2_arc_into_ur_is_dead_end():
    g = build_clause2()
    ul, ur = g.vertex("ul"), g.vertex("ur")
    assert (ul, ur) in g.graph.arcs
    assert not any(a == ur for a, _ in g.graph.arcs)
    assert not any(ur in e for e in g.graph.edges)


def test_clause_clause3_three_rightward_cases():
    # each single rightward port is enough on its own
    g = build_clause3()
    for role in ("ebar_x", "ebar_y", "ebar_z"):
        partial = PartialOrientation.unset(7)
        for other in ("ebar_x", "ebar_y", "ebar_z"):
            partial = partial.assign(g.edge_id(other), F if other == role else R)
        assert enumerate_valid(g.instance, partial=partial) >= 1


def test_negative_clause_is_a_vertical_mirror():
    pos, neg = build_clause3(Side.POSITIVE), build_clause3(Side.NEGATIVE)
    assert pos.graph.arcs == neg.graph.arcs and pos.graph.edges == neg.graph.edges
    assert pos.pairs == neg.pairs
    for a, b in zip(pos.graph.coords, neg.graph.coords):
        assert (a[0], -a[1]) == b


def test_edge_gadget_lemma():
    g = build_edge_gadget()
    assert inventory(g) == (14, 16, 3, 4)
    a, m, b = g.ports["A"], g.ports["middle"], g.ports["B"]
    for states in itertools.product((F, R), repeat=3):
        ok = verify_orientation(g.instance, PartialOrientation(states))
        assert ok == (states[a] == states[b] != states[m])
    assert enumerate_valid(g.instance) == 2
    assert check_source_sink_property(g.instance) == []


def test_gadgets_are_planar():
    for g in (build_flip(), build_variable(3, 3), build_clause3(), build_clause2(),
              build_edge_gadget()):
        assert check_planarity(g.graph)


def test_ports_are_stored_left_to_right():
    for g in (build_variable(2, 2), build_clause3(), build_edge_gadget()):
        for eid in g.ports.values():
            a, b = g.graph.edges[eid]
            assert g.graph.coords[a][0] < g.graph.coords[b][0]


def test_build_gadget_lookup():
    assert build_gadget("flip").graph.n == 8
    assert build_gadget("variable", "3", "2").graph.n == 14
    assert build_gadget("clause2", "neg").kind == "clause2"
    with pytest.raises(ValueError):
        build_gadget("variable", "0", "1")
    with pytest.raises(ValueError):
        build_gadget("triangle")

"""Seeded random mixed-graph instances for oracle comparisons."""
import random

from steiner_orientation.graph import Instance, MixedGraph, TerminalPair


def random_instance(rng: random.Random, max_vertices=20, max_edges=12, max_pairs=6,
                    min_vertices=8) -> Instance:
    n = rng.randint(min_vertices, max_vertices)
    m = rng.randint(0, max_edges)
    n_arcs = rng.randint(n // 2, 2 * n)
    arcs = []
    for _ in range(n_arcs):
        a, b = rng.sample(range(n), 2)
        arcs.append((a, b))
    edges = [tuple(rng.sample(range(n), 2)) for _ in range(m)]
    pairs = [TerminalPair(*rng.sample(range(n), 2)) for _ in range(rng.randint(1, max_pairs))]
    return Instance(MixedGraph(n, tuple(arcs), tuple(edges)), tuple(pairs))


def random_corpus(seed: int, count: int, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]

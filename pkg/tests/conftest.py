import itertools
import random

import pytest

from stardiag.graph import TopologyGraph


@pytest.fixture(scope="session")
def s42():
    from stardiag import build_nk_star

    return build_nk_star(4, 2)


@pytest.fixture(scope="session")
def c6():
    from stardiag import build_cycle

    return build_cycle(6)


def random_graph(n, p, seed):
    rng = random.Random(seed)
    labels = [f"v{i:02d}" for i in range(n)]
    edges = [(a, b) for a, b in itertools.combinations(labels, 2) if rng.random() < p]
    return TopologyGraph(labels, edges, descriptor=f"rand:{n},{seed}")


def ref_components(graph):
    """Independent union-find over the edge list, for cross-checking BFS."""
    parent = {lab: lab for lab in graph.labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in graph.edges():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for lab in graph.labels:
        groups.setdefault(find(lab), set()).add(lab)
    return sorted(
        (frozenset(g) for g in groups.values()), key=lambda s: (len(s), min(s))
    )

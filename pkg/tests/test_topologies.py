import math

import pytest

from stardiag import (
    build_complete,
    build_cycle,
    build_nk_star,
    build_star,
    canonical_vertex_enumeration,
    from_descriptor,
    verify_split,
)
from stardiag.base import DomainError, VerificationError
from stardiag.topologies import (
    arrangement_label,
    descriptor_params,
    parse_arrangement,
)


def test_arrangement_labels_concatenate_up_to_nine():
    assert arrangement_label((3, 1, 2), 4) == "312"
    assert parse_arrangement("312", 4) == (3, 1, 2)


def test_arrangement_labels_hyphenate_above_nine():
    assert arrangement_label((10, 2), 10) == "10-2"
    assert parse_arrangement("10-2", 10) == (10, 2)


def test_canonical_enumeration_is_sorted_and_complete():
    labs = canonical_vertex_enumeration(4, 2)
    assert len(labs) == 12
    assert labs == sorted(labs)
    assert labs[0] == "12" and labs[-1] == "43"


def test_nk_star_counts_and_regularity():
    for n, k in [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (5, 4)]:
        g = build_nk_star(n, k)
        assert g.vertex_count == math.factorial(n) // math.factorial(n - k)
        assert all(g.degree(lab) == n - 1 for lab in g.labels)
        assert g.is_connected()


def test_nk_star_k1_is_complete():
    g = build_nk_star(4, 1)
    assert g.vertex_count == 4
    assert g.edge_count == 6  # K4


def test_nk_star_32_is_a_six_cycle():
    g = build_nk_star(3, 2)
    assert g.vertex_count == 6
    assert all(g.degree(lab) == 2 for lab in g.labels)
    assert g.is_connected()
    # walk the cycle and come back in exactly six steps
    prev, cur = None, g.labels[0]
    for _ in range(6):
        nxt = sorted(g.neighbors(cur) - {prev})[0]
        prev, cur = cur, nxt
    assert cur == g.labels[0]


def test_nk_star_42_frozen_adjacency():
    g = build_nk_star(4, 2)
    assert g.neighbors("12") == {"21", "32", "42"}
    assert g.neighbors("34") == {"43", "14", "24"}


def test_star_graph_matches_nk_star_at_k_n_minus_1():
    # appending the single missing symbol to each (n-1)-arrangement is an
    # isomorphism onto the star graph
    for n in (3, 4, 5):
        star = build_star(n)
        nk = build_nk_star(n, n - 1)

        def extend(lab):
            p = parse_arrangement(lab, n)
            (missing,) = set(range(1, n + 1)) - set(p)
            return arrangement_label(p + (missing,), n)

        assert sorted(extend(lab) for lab in nk.labels) == sorted(star.labels)
        mapped = sorted(tuple(sorted((extend(a), extend(b)))) for a, b in nk.edges())
        assert mapped == star.edges()


def test_builders_reject_bad_parameters():
    with pytest.raises(DomainError):
        build_nk_star(4, 0)
    with pytest.raises(DomainError):
        build_nk_star(4, 4)
    with pytest.raises(DomainError):
        build_nk_star(1, 1)
    with pytest.raises(DomainError):
        build_star(10)
    with pytest.raises(DomainError):
        build_cycle(2)
    with pytest.raises(DomainError):
        build_complete(0)


def test_vertex_budget_enforced():
    with pytest.raises(DomainError):
        build_nk_star(8, 7)  # 40320 vertices
    with pytest.raises(DomainError):
        build_nk_star(5, 3, max_vertices=50)  # 60 vertices


def test_from_descriptor_round_trips(tmp_path):
    assert from_descriptor("nkstar:4,2") == build_nk_star(4, 2)
    assert from_descriptor("star:4") == build_star(4)
    assert from_descriptor("complete:5") == build_complete(5)
    assert from_descriptor("cycle:6") == build_cycle(6)
    path = tmp_path / "g.edges"
    path.write_text(build_cycle(5).to_edgelist())
    assert from_descriptor(f"file:{path}").edges() == build_cycle(5).edges()


def test_from_descriptor_rejects_garbage():
    for bad in ("nkstar", "nkstar:4", "nkstar:x,y", "ring:5", "file:/no/such/file"):
        with pytest.raises(DomainError):
            from_descriptor(bad)


def test_descriptor_params():
    assert descriptor_params("nkstar:5,2") == (5, 2)
    assert descriptor_params("star:4") == (4, 3)
    assert descriptor_params("complete:6") == (6, 1)
    assert descriptor_params("cycle:6") == (3, 2)
    assert descriptor_params("cycle:5") is None
    assert descriptor_params("file:whatever") is None


@pytest.mark.parametrize("n,k", [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4), (6, 4), (6, 5)])
def test_split_relationship(n, k):
    wit = verify_split(n, k)
    assert wit.t == math.factorial(n - k)
    assert wit.fiber_count == math.factorial(n) // math.factorial(n - k)
    assert len(wit.projection) == math.factorial(n)
    # the projection really is k-prefix truncation
    some = sorted(wit.projection)[0]
    assert wit.projection[some] == some[:k]


def test_split_rejects_k1():
    with pytest.raises(DomainError):
        verify_split(4, 1)


def test_split_check_actually_bites(monkeypatch):
    # sabotage the base graph by dropping an edge: check (iii) must fire
    import stardiag.topologies as topo

    real = topo.build_nk_star

    def broken(n, k, max_vertices=topo.DEFAULT_VERTEX_BUDGET):
        g = real(n, k, max_vertices)
        a, b = g.edges()[0]
        keep = [e for e in g.edges() if e != (a, b)]
        return topo.TopologyGraph(g.labels, keep, descriptor=g.descriptor)

    monkeypatch.setattr(topo, "build_nk_star", broken)
    with pytest.raises(VerificationError):
        topo.verify_split(4, 2)

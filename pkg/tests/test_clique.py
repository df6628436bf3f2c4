import pytest

from glcensus.census import UnsupportedRegimeError
from glcensus.clique import (
    CliqueResult,
    SolverBudget,
    build_graph,
    compute_omega,
    covering_upper_bound,
    max_clique,
    seed_clique,
    verify_clique,
)
from glcensus.oracle import gl_group


def test_graph_shapes():
    assert build_graph(2, 2).vertex_count == 5  # 6 elements, trivial centre
    assert build_graph(2, 3).vertex_count == 46  # centre of order 2
    assert build_graph(2, 4).vertex_count == 177  # centre of order 3


def test_graph_adjacency_matches_group():
    graph = build_graph(2, 3)
    group = gl_group(2, 3)
    for i in range(0, graph.vertex_count, 7):
        for j in range(0, graph.vertex_count, 11):
            if i == j:
                continue
            a = group.mats[graph.vertices[i]]
            b = group.mats[graph.vertices[j]]
            edge = bool((graph.adjacency[i] >> j) & 1)
            assert edge == (not a.commutes_with(b))
    # no self loops
    assert all(not (graph.adjacency[k] >> k) & 1 for k in range(graph.vertex_count))


def test_seed_sizes():
    assert len(seed_clique(2, 3)) == 13
    assert len(seed_clique(2, 4)) == 21
    assert len(seed_clique(3, 2)) == 57


def test_seed_is_pairwise_noncommuting():
    group = gl_group(3, 2)
    seed = seed_clique(3, 2)
    mats = [group.mats[i] for i in seed]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            assert not mats[i].commutes_with(mats[j])


def test_covering_upper_bound():
    assert covering_upper_bound(2, 5) == 31
    assert covering_upper_bound(3, 3) == 1067
    # 27677140 (the n=4 census polynomial at q=4) minus 255*252*240*192/(3^4*4!)
    assert covering_upper_bound(4, 4) == 27677140 - 1523200 == 26153940
    for n, q in [(3, 2), (2, 2), (4, 2), (4, 3)]:
        with pytest.raises(UnsupportedRegimeError):
            covering_upper_bound(n, q)


def test_verify_clique():
    graph = build_graph(2, 2)
    # empty and singleton witnesses are vacuously cliques
    assert verify_clique(graph, ())
    assert verify_clique(graph, (graph.vertices[0],))
    # two commuting elements are not a clique: an element and its square
    group = gl_group(2, 3)
    graph3 = build_graph(2, 3)
    for idx in graph3.vertices:
        M = group.mats[idx]
        sq = M @ M
        sq_idx = group.index_of(sq)
        if sq_idx in graph3.vertices and sq_idx != idx:
            assert not verify_clique(graph3, (idx, sq_idx))
            break
    else:
        pytest.fail("no suitable commuting pair found")


def test_omega_gl22_exhaustive():
    res, seed_size = compute_omega(2, 2)
    assert res.size == 4
    assert res.optimal
    assert seed_size == 4
    assert verify_clique(build_graph(2, 2), res.witness)


def test_omega_seed_meets_cover():
    for q, expect in [(3, 13), (4, 21), (5, 31)]:
        res, seed_size = compute_omega(2, q)
        assert res.size == expect
        assert res.optimal
        assert res.upper_bound_used == expect
        assert res.steps == 0  # certified without search
        assert seed_size == expect


def test_omega_gl32_certified():
    res, seed_size = compute_omega(3, 2)
    assert res.optimal
    assert seed_size == 57
    assert 57 <= res.size < 169
    assert res.size == 57  # certified by search; also matched by a clique cover
    graph = build_graph(3, 2)
    assert verify_clique(graph, res.witness)


def test_max_clique_without_seed_matches():
    graph = build_graph(3, 2)
    res = max_clique(graph)
    assert res.optimal and res.size == 57


def test_max_clique_rejects_bad_seed():
    graph = build_graph(2, 3)
    group = gl_group(2, 3)
    # an element and its inverse commute, so they cannot seed a clique
    for idx in graph.vertices:
        inv_idx = group.index_of(group.mats[idx].inverse())
        if inv_idx != idx and inv_idx in graph.vertices:
            with pytest.raises(ValueError):
                max_clique(graph, seed=(idx, inv_idx))
            return
    pytest.fail("no invertible non-involution found")


def test_budget_exhaustion_is_not_optimal():
    graph = build_graph(3, 2)
    res = max_clique(graph, budget=SolverBudget(seconds=60.0, steps=3))
    assert not res.optimal
    assert res.size >= 1
    assert verify_clique(graph, res.witness)


def test_solver_determinism():
    graph = build_graph(2, 3)
    a = max_clique(graph)
    b = max_clique(graph)
    assert a.size == b.size == 13
    assert a.witness == b.witness

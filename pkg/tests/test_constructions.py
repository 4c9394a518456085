import pytest

from edgemaps.constructions import (
    ConstructionResult,
    bipartite_matching,
    chromatic_blocks,
    cycle_decomp_star_exclusive,
    cycle_decomposition,
    euler_circuit,
    euler_partition,
    fixed_clique_partition,
    frobenius_decomposition,
    frobenius_tree_lower,
    modular_shift,
    small_exact_constructions,
    star_shift,
    tripartite_hall,
)
from edgemaps.detect import find_exclusive, find_fixed, find_free, find_shifted, fixed_graph
from edgemaps.graphs import SimpleGraph, complete, edge_id, edge_pair, make_pattern, star
from edgemaps.mapping import MappingClass


def test_frobenius_decomposition():
    assert frobenius_decomposition(3, 5, 8) == (1, 1)
    assert frobenius_decomposition(3, 5, 7) is None  # Frobenius number of (3, 5)
    assert frobenius_decomposition(3, 5, 9) == (3, 0)
    assert frobenius_decomposition(2, 3, 0) == (0, 0)
    with pytest.raises(ValueError):
        frobenius_decomposition(0, 5, 8)


def test_euler_circuit_covers_k5():
    K5 = complete(5).graph
    walk = euler_circuit(K5)
    assert walk[0] == walk[-1]
    assert len(walk) == K5.m + 1
    used = {edge_id(u, v) for u, v in zip(walk, walk[1:])}
    assert used == set(K5.edges)


def test_euler_circuit_rejects_odd_degrees():
    with pytest.raises(ValueError):
        euler_circuit(complete(4).graph)


def test_cycle_decomposition_partitions_edges():
    K7 = complete(7).graph
    cycles = cycle_decomposition(K7)
    seen = set()
    for cyc in cycles:
        assert len(cyc) >= 3
        edges = {edge_id(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}
        assert len(edges) == len(cyc)
        assert not edges & seen
        seen |= edges
    assert seen == set(K7.edges)


def test_bipartite_matching_perfect_on_k33():
    edges = [(u, v) for u in range(3) for v in range(3)]
    m = bipartite_matching(3, 3, edges)
    assert len(m) == 3
    assert sorted(m.values()) == sorted(set(m.values()))


def test_bipartite_matching_respects_structure():
    edges = [(0, 0), (0, 1), (1, 1), (2, 0)]
    m = bipartite_matching(3, 2, edges)
    assert len(m) == 2  # the maximum here
    assert all((u, v) in edges for u, v in m.items())
    assert len(set(m.values())) == len(m)


ALL_BUILDERS = [
    lambda: modular_shift(5),
    lambda: modular_shift(8),
    lambda: fixed_clique_partition(3, 3),
    lambda: fixed_clique_partition(3, 4),
    lambda: fixed_clique_partition(4, 3),
    lambda: star_shift(7),
    lambda: tripartite_hall(),
    lambda: frobenius_tree_lower(3, 2, 1),
    lambda: cycle_decomp_star_exclusive(3, 2),
    lambda: cycle_decomp_star_exclusive(3, 3),
    lambda: chromatic_blocks(3, 2),
    lambda: small_exact_constructions("k4_involution"),
    lambda: small_exact_constructions("matching_3k2"),
    lambda: small_exact_constructions("pentagon_involution"),
    lambda: small_exact_constructions("z7_difference"),
]


@pytest.mark.parametrize("builder", ALL_BUILDERS)
def test_builders_return_verified_results(builder):
    res = builder()
    assert isinstance(res, ConstructionResult)
    assert res.claims
    assert res.provenance


def test_small_exact_rejects_unknown_name():
    with pytest.raises(ValueError):
        small_exact_constructions("left_handed")


def test_star_shift_claims_directly():
    res = star_shift(7)
    f = res.mapping
    assert f.n == 7
    assert find_free(f, make_pattern("2K2")) is None
    # claims cover every spanning tree shape on 7 vertices
    tree_claims = [P for rel, P in res.claims if rel == "fixed"]
    assert len(tree_claims) == 11
    for P in tree_claims:
        assert find_fixed(f, P) is None


def test_fixed_clique_partition_small():
    res = fixed_clique_partition(3, 3)
    f = res.mapping
    assert f.n == 4
    assert find_shifted(f, make_pattern("K3")) is None
    assert find_free(f, make_pattern("K3")) is None


def test_tripartite_hall_claims():
    res = tripartite_hall()
    f = res.mapping
    assert f.n == 9
    assert find_fixed(f, make_pattern("K1,3")) is None
    assert find_fixed(f, make_pattern("P4")) is None
    assert find_free(f, make_pattern("K3")) is None


def test_chromatic_blocks_fixed_graph_is_complete_bipartite():
    res = chromatic_blocks(3, 2)
    f = res.mapping
    assert find_free(f, make_pattern("K1,2")) is None
    fixed = fixed_graph(f)
    parts: dict[int, int] = {}
    # two-color the fixed graph and confirm completeness across the cut
    from edgemaps.graphs import chromatic_number

    assert chromatic_number(fixed) == 2
    comp = fixed
    # bipartition by greedy BFS
    color = [-1] * comp.n
    for s in range(comp.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for w in range(comp.n):
                if w != v and comp.has_edge(v, w) and color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
    left = [v for v in range(comp.n) if color[v] == 0 and comp.degrees[v]]
    right = [v for v in range(comp.n) if color[v] == 1]
    for u in left:
        for w in right:
            assert comp.has_edge(u, w)


def test_cycle_decomp_star_exclusive_claims():
    for r in (2, 3):
        res = cycle_decomp_star_exclusive(3, r)
        f = res.mapping
        assert find_exclusive(f, star(r)) is None


def test_euler_partition_avoids_free_star():
    n, r = 5, 3
    res = euler_partition(SimpleGraph.empty(n), SimpleGraph.complete(n), r)
    f = res.mapping
    assert find_free(f, star(r)) is None


def test_euler_partition_validates_inputs():
    with pytest.raises(ValueError):
        euler_partition(SimpleGraph.empty(4), SimpleGraph.empty(4), 2)
    with pytest.raises(ValueError):
        euler_partition(SimpleGraph.empty(5), SimpleGraph.complete(5), 2)


def test_modular_shift_stays_within_overlap_one():
    # consecutive difference classes share a vertex, so disjointness can fail
    for n in (5, 7, 8):
        res = modular_shift(n)
        assert MappingClass("overlap_le_1").admits(res.mapping)


def test_pentagon_involution_avoids_exclusive_star():
    res = small_exact_constructions("pentagon_involution")
    f = res.mapping
    assert f.n == 5
    assert MappingClass("disjoint").admits(f)
    assert find_exclusive(f, make_pattern("K1,2")) is None


def test_z7_difference_avoids_exclusive_matching():
    res = small_exact_constructions("z7_difference")
    f = res.mapping
    assert f.n == 7
    assert MappingClass("disjoint").admits(f)
    assert find_exclusive(f, make_pattern("2K2")) is None


def test_frobenius_tree_lower_representability_gate():
    # variant 1 at (k, r) = (3, 2) exists; an unrepresentable size must raise
    res = frobenius_tree_lower(3, 2, 1)
    assert res.mapping.n >= 3
    with pytest.raises(ValueError):
        frobenius_tree_lower(3, 2, 9)

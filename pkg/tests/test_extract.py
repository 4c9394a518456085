import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from edgemaps.detect import find_shifted, validate
from edgemaps.extract import (
    FunctionalDigraph,
    color_bounded,
    exclusive_star,
    free_from_shifted,
    independent_set_d1,
    largest_color_class,
)
from edgemaps.graphs import complete, make_pattern, matching, star
from edgemaps.mapping import ContractError, EdgeMapping, MappingClass, random_mapping


def digraphs(d_max=3, n_max=12):
    def build(args):
        n, d, seed = args
        rng = random.Random(seed)
        arcs = []
        for v in range(n):
            k = rng.randint(0, d)
            choices = [w for w in range(n) if w != v]
            arcs.append(rng.sample(choices, min(k, len(choices))))
        return FunctionalDigraph.from_arcs(n, arcs, d=d)

    return st.tuples(
        st.integers(min_value=1, max_value=n_max),
        st.integers(min_value=1, max_value=d_max),
        st.integers(min_value=0, max_value=2**30),
    ).map(build)


def test_digraph_validation():
    with pytest.raises(ContractError):
        FunctionalDigraph(2, ((1,), (0, 0)), d=1)  # duplicate arc blows the budget
    with pytest.raises(ContractError):
        FunctionalDigraph(2, ((0,), ()), d=1)  # loop
    with pytest.raises(ContractError):
        FunctionalDigraph(3, ((1, 2), (), ()), d=1)  # out-degree over budget
    D = FunctionalDigraph.from_arcs(3, [[1], [2], []])
    assert D.d == 1
    assert D.zero_outdeg_count == 1


@given(digraphs())
@settings(max_examples=150, deadline=None)
def test_coloring_is_proper_and_narrow(D):
    colors = color_bounded(D)
    assert len(set(colors)) <= 2 * D.d + 1
    for v in range(D.n):
        for w in D.undirected[v]:
            assert colors[v] != colors[w]


@given(digraphs())
@settings(max_examples=80, deadline=None)
def test_largest_color_class_meets_pigeonhole(D):
    cls = largest_color_class(color_bounded(D))
    assert len(cls) * (2 * D.d + 1) >= D.n


@given(digraphs(d_max=1, n_max=10))
@settings(max_examples=150, deadline=None)
def test_independent_set_d1_guarantee(D):
    S = independent_set_d1(D)
    # independence in the underlying undirected graph
    for a in S:
        for b in S:
            if a != b:
                assert b not in D.undirected[a]
    m = D.zero_outdeg_count
    assert len(S) >= m + math.ceil((D.n - 2 * m) / 3)


def test_independent_set_d1_is_optimal_on_small_cases():
    # exhaustive maximum for comparison on every out-degree-1 digraph shape
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 8)
        arcs = []
        for v in range(n):
            if rng.random() < 0.7 and n > 1:
                arcs.append([rng.choice([w for w in range(n) if w != v])])
            else:
                arcs.append([])
        D = FunctionalDigraph.from_arcs(n, arcs, d=1)
        S = independent_set_d1(D)
        best = 0
        for mask in range(1 << n):
            chosen = [v for v in range(n) if mask >> v & 1]
            if all(b not in D.undirected[a] for a in chosen for b in chosen if a < b):
                best = max(best, len(chosen))
        assert len(S) == best


def test_independent_set_rejects_wide_digraphs():
    D = FunctionalDigraph.from_arcs(3, [[1, 2], [], []], d=2)
    with pytest.raises(ContractError):
        independent_set_d1(D)


Z7_DIFFERENCE = None  # filled lazily, construction import kept local


def _z7():
    global Z7_DIFFERENCE
    if Z7_DIFFERENCE is None:
        from edgemaps.constructions import small_exact_constructions

        Z7_DIFFERENCE = small_exact_constructions("z7_difference").mapping
    return Z7_DIFFERENCE


def test_exclusive_star_on_moved_clear_mapping():
    f = _z7()
    # degree 6 supports r = 2 (needs 5r - 4 = 6)
    cert = exclusive_star(f, 0, 2)
    assert cert.kind == "exclusive"
    assert validate(f, cert)


def test_exclusive_star_contract_checks():
    f = _z7()
    with pytest.raises(ValueError):
        exclusive_star(f, 0, 3)  # needs degree >= 11
    ident = EdgeMapping.identity(7)
    with pytest.raises(ContractError):
        exclusive_star(ident, 0, 1)  # star edges are fixed, not strong-shifted


def test_free_from_shifted_on_matchings():
    rng = random.Random(13)
    pat = matching(3)
    hits = 0
    for _ in range(300):
        f = random_mapping(7, rng)
        cert = find_shifted(f, pat)
        if cert is None:
            continue
        hits += 1
        out = free_from_shifted(f, cert)
        assert out.kind == "free"
        assert validate(f, out)
        assert out.pattern.m >= math.ceil(pat.m / 3)
    assert hits > 50


def test_free_from_shifted_on_stars():
    rng = random.Random(14)
    pat = star(4)
    hits = 0
    for _ in range(300):
        f = random_mapping(7, rng)
        cert = find_shifted(f, pat)
        if cert is None:
            continue
        hits += 1
        out = free_from_shifted(f, cert)
        assert validate(f, out)
        assert out.pattern.m >= math.ceil(pat.m / 3)
    assert hits > 50


def test_free_from_shifted_rejects_fixed_edges():
    ident = EdgeMapping.identity(5)
    from edgemaps.detect import Certificate

    cert = Certificate("shifted", make_pattern("K2"), (0, 1))
    with pytest.raises(ContractError):
        free_from_shifted(ident, cert)

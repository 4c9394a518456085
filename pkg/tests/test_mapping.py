import random

import pytest
from hypothesis import given, settings, strategies as st

from edgemaps.graphs import edge_count, edge_id
from edgemaps.mapping import (
    EdgeMapping,
    MappingClass,
    classify,
    format_mapping,
    in_class,
    overlap,
    parse_mapping,
    project,
    random_mapping,
)

K4_INVOLUTION = EdgeMapping(4, (5, 4, 3, 2, 1, 0))


def mappings(n_min=2, n_max=7):
    return st.integers(min_value=n_min, max_value=n_max).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.tuples(
                *[st.integers(min_value=0, max_value=edge_count(n) - 1)] * edge_count(n)
            ),
        )
    ).map(lambda t: EdgeMapping(t[0], t[1]))


def test_constructor_validation():
    with pytest.raises(ValueError):
        EdgeMapping(4, (0, 1, 2))
    with pytest.raises(ValueError):
        EdgeMapping(4, (0, 1, 2, 3, 4, 6))


def test_from_pairs_round_trip():
    f = EdgeMapping.from_pairs(4, [((u, v), K4_INVOLUTION.apply_pair(u, v))
                                   for u in range(4) for v in range(u + 1, 4)])
    assert f == K4_INVOLUTION
    with pytest.raises(ValueError):
        EdgeMapping.from_pairs(3, [((0, 1), (0, 2))])


def test_identity_profile():
    f = EdgeMapping.identity(5)
    assert f.profile.fixed == 10
    assert f.profile.shifted == 0


def test_involution_profile_is_all_strong():
    p = K4_INVOLUTION.profile
    assert (p.fixed, p.shifted, p.strong_shifted) == (0, 6, 6)


def test_shifted_degrees_definition():
    # edge (0,1) -> (2,3): the image avoids both endpoints
    f = K4_INVOLUTION
    assert f.shifted_degrees == (3, 3, 3, 3)
    assert EdgeMapping.identity(4).shifted_degrees == (0, 0, 0, 0)


@given(mappings())
@settings(max_examples=100, deadline=None)
def test_profile_counts_sum(f):
    p = f.profile
    assert p.fixed + p.shifted == edge_count(f.n)
    assert p.strong_shifted <= p.shifted


@given(mappings(n_min=3))
@settings(max_examples=100, deadline=None)
def test_format_parse_round_trip(f):
    assert parse_mapping(format_mapping(f)) == f


def test_parse_rejects_malformed():
    with pytest.raises(ValueError):
        parse_mapping("no header\n")
    with pytest.raises(ValueError):
        parse_mapping("n=4\n0 1 -> 0 5\n")


def test_class_membership():
    all_cls = MappingClass("all")
    ov1 = MappingClass("overlap_le_1")
    disj = MappingClass("disjoint")
    fstr = MappingClass("fixed_or_strong")
    ident = EdgeMapping.identity(4)
    assert all_cls.admits(ident) and fstr.admits(ident)
    assert not ov1.admits(ident) and not disj.admits(ident)
    assert all(c.admits(K4_INVOLUTION) for c in (all_cls, ov1, disj, fstr))


def test_mostly_class_parameter_validation():
    with pytest.raises(ValueError):
        MappingClass("mostly_le_d", m=-1)
    with pytest.raises(ValueError):
        MappingClass("mostly_le_d", m=1, d=3)
    cls = MappingClass("mostly_le_d", d=1, m=4)
    # involution has all 6 edges at overlap 0, quota of 4 is met
    assert cls.admits(K4_INVOLUTION)
    assert in_class(K4_INVOLUTION, 1, m=4)
    assert not in_class(EdgeMapping.identity(4), 1, m=1)


def test_unknown_class_kind_rejected():
    with pytest.raises(ValueError):
        MappingClass("sideways")


@given(mappings(n_min=4, n_max=6))
@settings(max_examples=100, deadline=None)
def test_classify_consistent_with_admits(f):
    for cls in classify(f):
        assert cls.admits(f)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_random_mapping_respects_class(seed):
    rng = random.Random(seed)
    f = random_mapping(6, rng, MappingClass("disjoint"))
    assert MappingClass("disjoint").admits(f)
    g = random_mapping(6, rng)
    assert MappingClass("all").admits(g)


def test_class_emptiness():
    # at n=3 no edge has a disjoint partner
    assert MappingClass("disjoint").is_empty(3)
    assert not MappingClass("disjoint").is_empty(4)
    assert MappingClass("overlap_le_1").is_empty(2)
    assert not MappingClass("all").is_empty(2)


def test_value_ok_matches_overlap():
    ov1 = MappingClass("overlap_le_1")
    for e in range(6):
        for x in range(6):
            assert ov1.value_ok(e, x) == (overlap(e, x) <= 1)


def test_project_keeps_interior_images():
    # build a mapping on 6 vertices whose restriction to {0,1,2,3} is the involution
    images = []
    for e in range(edge_count(6)):
        images.append(e)
    f6 = EdgeMapping(6, tuple(K4_INVOLUTION.images) + tuple(images[6:]))
    g = project(f6, [0, 1, 2, 3])
    assert g == K4_INVOLUTION


def test_project_redirects_escaped_images():
    # send every edge of the subset to an edge outside it
    n = 8
    out_edge = edge_id(6, 7)
    images = tuple(out_edge for _ in range(edge_count(n)))
    f = EdgeMapping(n, images)
    g = project(f, [0, 1, 2, 3, 4])
    assert g.n == 5
    # projection must keep every edge clear of itself
    assert all(g.overlap_of(e) == 0 for e in range(edge_count(5)))


def test_project_needs_room():
    with pytest.raises(ValueError):
        project(K4_INVOLUTION, [0, 1, 2])

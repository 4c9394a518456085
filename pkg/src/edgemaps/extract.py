"""Turning bounded-out-degree structure into free and exclusive patterns.

A digraph with max out-degree d has a 2d-degenerate undirected version, hence
a proper coloring with at most 2d+1 colors; the d=1 case supports a sharper
independent-set guarantee.  These two facts drive every extraction here: the
conflict arcs among candidate edges have small out-degree, so a large color
class is a large conflict-free edge set.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import detect
from .detect import Certificate
from .graphs import (
    PatternGraph,
    SimpleGraph,
    edge_id,
    edge_pair,
    edge_vertex_mask,
    matching,
    multi,
    star,
)
from .mapping import ContractError, EdgeMapping, overlap


@dataclass(frozen=True)
class FunctionalDigraph:
    """Loop-free digraph with a declared out-degree bound.

    ``arcs[v]`` lists the out-neighbors of v.  The undirected version is the
    graph on the same vertices with an edge wherever an arc runs either way.
    """

    n: int
    arcs: tuple[tuple[int, ...], ...]
    d: int

    def __post_init__(self) -> None:
        if len(self.arcs) != self.n:
            raise ValueError(f"expected {self.n} arc lists, got {len(self.arcs)}")
        for v, out in enumerate(self.arcs):
            if len(out) > self.d:
                raise ContractError(
                    f"vertex {v} has out-degree {len(out)} > declared bound {self.d}"
                )
            if v in out:
                raise ContractError(f"loop at vertex {v}")
            if any(not 0 <= w < self.n for w in out):
                raise ValueError(f"arc endpoint out of range at vertex {v}")

    @classmethod
    def from_arcs(cls, n: int, arcs, d: int | None = None) -> "FunctionalDigraph":
        tup = tuple(tuple(sorted(set(out))) for out in arcs)
        if d is None:
            d = max((len(out) for out in tup), default=0)
        return cls(n, tup, d)

    @cached_property
    def undirected(self) -> tuple[frozenset, ...]:
        adj = [set() for _ in range(self.n)]
        for v, out in enumerate(self.arcs):
            for w in out:
                adj[v].add(w)
                adj[w].add(v)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def zero_outdeg_count(self) -> int:
        return sum(1 for out in self.arcs if not out)

    def max_outdeg(self) -> int:
        return max((len(out) for out in self.arcs), default=0)


def color_bounded(D: FunctionalDigraph) -> list[int]:
    """Proper coloring of the undirected version with at most 2d+1 colors.

    Vertices are peeled in min-degree order (the undirected version is
    2d-degenerate), then colored greedily in reverse; each vertex sees at most
    2d earlier neighbors, so 2d+1 colors always suffice.
    """
    adj = D.undirected
    deg = [len(a) for a in adj]
    removed = [False] * D.n
    peel: list[int] = []
    for _ in range(D.n):
        v = min(
            (x for x in range(D.n) if not removed[x]),
            key=lambda x: (deg[x], x),
        )
        removed[v] = True
        peel.append(v)
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
    colors = [-1] * D.n
    for v in reversed(peel):
        taken = {colors[w] for w in adj[v] if colors[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    limit = 2 * D.d + 1
    if D.n and max(colors) + 1 > limit:
        raise AssertionError(f"greedy used {max(colors) + 1} colors, bound {limit}")
    return colors


def largest_color_class(colors: list[int]) -> list[int]:
    by: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        by.setdefault(c, []).append(v)
    return max(by.values(), key=lambda cls: (len(cls), -cls[0]), default=[])


def independent_set_d1(D: FunctionalDigraph) -> list[int]:
    """Independent set of size >= m + ceil((n-2m)/3), m = zero-out-degree count.

    Out-degree 1 makes every component of the undirected version a tree or
    unicyclic: trees give the larger bipartition side, unicyclic components a
    largest-of-three color class.
    """
    if D.max_outdeg() > 1:
        bad = next(v for v, out in enumerate(D.arcs) if len(out) > 1)
        raise ContractError(f"vertex {bad} has out-degree {len(D.arcs[bad])}, need <= 1")
    adj = D.undirected
    seen = [False] * D.n
    out: list[int] = []
    for s in range(D.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        edges = sum(len(adj[v]) for v in comp) // 2
        if edges == len(comp) - 1:
            out.extend(_larger_side(comp[0], adj))
        else:
            out.extend(_unicyclic_class(comp, adj))
    return sorted(out)


def _larger_side(root: int, adj) -> list[int]:
    side = {root: 0}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in side:
                side[y] = side[x] ^ 1
                stack.append(y)
    zero = [v for v, s in side.items() if s == 0]
    one = [v for v, s in side.items() if s == 1]
    return zero if len(zero) >= len(one) else one


def _unicyclic_class(comp: list[int], adj) -> list[int]:
    # remove one cycle edge, 2-color the tree, patch the seam with a 3rd color
    u, v = detect._find_cycle_edge(comp[0], {x: set(adj[x]) for x in comp})
    side = {u: 0}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if (x, y) in ((u, v), (v, u)):
                continue
            if y not in side:
                side[y] = side[x] ^ 1
                stack.append(y)
    if side[u] == side[v]:
        side[u] = 2
    zero = [x for x, s in side.items() if s == 0]
    one = [x for x, s in side.items() if s == 1]
    return zero if len(zero) >= len(one) else one


def exclusive_star(
    mapping: EdgeMapping, v: int, r: int, host: SimpleGraph | None = None
) -> Certificate:
    """r host edges at v forming an exclusive star, for strong-shifted maps.

    The conflict digraph on the edges at v (arc when one image touches the
    other edge) has out-degree <= 2 because no image comes back to v, so a
    color class of the <= 5 gives ceil(deg/5) >= r conflict-free edges.
    """
    if host is None:
        host = SimpleGraph.complete(mapping.n)
    if r < 1:
        raise ValueError("r must be positive")
    if _dominating_edge(host) is not None:
        raise ValueError("host has an edge incident to all other edges")
    leaves = _bits(host.adj[v])
    deg = len(leaves)
    if deg < 5 * r - 4:
        raise ValueError(f"degree {deg} at vertex {v} is below 5r-4 = {5 * r - 4}")
    star_edges = [edge_id(v, l) for l in leaves]
    for e in star_edges:
        if overlap(e, mapping(e)) != 0:
            raise ContractError(f"edge {edge_pair(e)} at v is not strong-shifted")
    arcs: list[list[int]] = [[] for _ in star_edges]
    index = {l: i for i, l in enumerate(leaves)}
    for i, e in enumerate(star_edges):
        for x in edge_pair(mapping(e)):
            j = index.get(x)
            if j is not None and j != i:
                arcs[i].append(j)
    D = FunctionalDigraph.from_arcs(len(star_edges), arcs, d=2)
    cls = largest_color_class(color_bounded(D))
    chosen = sorted(leaves[i] for i in cls)[:r]
    P = star(r)
    cert = Certificate("exclusive", P, detect._star_embedding(P, v, tuple(chosen)))
    if not detect.validate(mapping, cert):
        raise AssertionError("extracted star failed exclusivity revalidation")
    return cert


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out


def _dominating_edge(host: SimpleGraph) -> tuple[int, int] | None:
    for e in host.edges:
        u, v = edge_pair(e)
        if all(
            edge_vertex_mask(e2) & edge_vertex_mask(e)
            for e2 in host.edges
            if e2 != e
        ):
            return (u, v)
    return None


def free_from_shifted(mapping: EdgeMapping, cert: Certificate) -> Certificate:
    """Extract a free star / matching / star forest from an all-shifted copy.

    Within a shifted star or matching, the only freeness conflicts are
    image-equalities between its own edges, an out-degree-1 digraph; blocks of
    a star forest additionally conflict when a selected image lands in another
    block, still with bounded out-degree.
    """
    eids = cert.copy_edge_ids()
    for e in eids:
        if mapping(e) == e:
            raise ContractError(f"copy edge {edge_pair(e)} is fixed, not shifted")
    P = cert.pattern
    if P.as_star() is not None:
        center = cert.embedding[max(range(P.k), key=lambda x: P.graph.degrees[x])]
        chosen = _free_subset(mapping, eids)
        leaves = sorted(u if w == center else w for u, w in map(edge_pair, chosen))
        out_pat = star(len(leaves))
        out = Certificate("free", out_pat, detect._star_embedding(out_pat, center, tuple(leaves)))
    elif P.as_matching() is not None:
        chosen = sorted(_free_subset(mapping, eids))
        emb: list[int] = []
        for e in chosen:
            emb.extend(edge_pair(e))
        out = Certificate("free", matching(len(chosen)), tuple(emb))
    elif P.as_star_forest() is not None:
        out = _free_star_forest(mapping, cert)
    else:
        raise ValueError("shifted copy must be a star, a matching, or a star forest")
    if not detect.validate(mapping, out):
        raise AssertionError("extracted structure failed freeness revalidation")
    return out


def _free_subset(mapping: EdgeMapping, eids: list[int]) -> list[int]:
    """Edges of the copy whose images avoid the chosen subset, via the d=1 digraph."""
    order = sorted(eids)
    index = {e: i for i, e in enumerate(order)}
    arcs = [[] for _ in order]
    for i, e in enumerate(order):
        j = index.get(mapping(e))
        if j is not None:
            arcs[i].append(j)
    D = FunctionalDigraph.from_arcs(len(order), arcs, d=1)
    return [order[i] for i in independent_set_d1(D)]


def _free_star_forest(mapping: EdgeMapping, cert: Certificate) -> Certificate:
    P = cert.pattern
    blocks = []
    for comp in P.graph.components():
        sub = sorted(comp)
        center_pv = max(sub, key=lambda x: P.graph.degrees[x])
        c = cert.embedding[center_pv]
        block_eids = sorted(
            edge_id(c, cert.embedding[x]) for x in sub if x != center_pv
        )
        selected = sorted(_free_subset(mapping, block_eids))
        blocks.append((c, selected))
    r_out = min(len(sel) for _, sel in blocks)
    blocks = [(c, sel[:r_out]) for c, sel in blocks]
    sel_sets = [set(sel) for _, sel in blocks]
    arcs: list[list[int]] = [[] for _ in blocks]
    for i, (_, sel) in enumerate(blocks):
        for e in sel:
            img = mapping(e)
            for j, s in enumerate(sel_sets):
                if j != i and img in s:
                    arcs[i].append(j)
    D = FunctionalDigraph.from_arcs(len(blocks), arcs)
    cls = sorted(largest_color_class(color_bounded(D)))
    emb: list[int] = []
    for i in cls:
        c, sel = blocks[i]
        emb.append(c)
        for e in sel:
            u, w = edge_pair(e)
            emb.append(u if w == c else w)
    pattern = multi(len(cls), star(r_out))
    return Certificate("free", pattern, tuple(emb))

"""Simple graphs on 0..n-1 with colexicographic edge ids, plus small pattern graphs.

Edge ids: the pair (u, v) with u < v gets id C(v,2) + u.  Ids are stable
under growing n, so an edge keeps its id in every host that contains it.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from math import comb, isqrt


def edge_id(u: int, v: int) -> int:
    """Colex id of the undirected edge {u, v}."""
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def edge_pair(eid: int) -> tuple[int, int]:
    """Inverse of edge_id: returns (u, v) with u < v."""
    if eid < 0:
        raise ValueError(f"bad edge id {eid}")
    v = (1 + isqrt(8 * eid + 1)) // 2
    # isqrt rounding can land one off on either side
    while v * (v - 1) // 2 > eid:
        v -= 1
    while (v + 1) * v // 2 <= eid:
        v += 1
    return (eid - v * (v - 1) // 2, v)


def edge_count(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=4096)
def edge_vertex_mask(eid: int) -> int:
    u, v = edge_pair(eid)
    return (1 << u) | (1 << v)


def edges_overlap(e1: int, e2: int) -> int:
    """Number of shared endpoints of two edges (0, 1, or 2)."""
    return bin(edge_vertex_mask(e1) & edge_vertex_mask(e2)).count("1")


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertex set {0, ..., n-1}."""

    n: int
    edges: frozenset[int]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        for eid in self.edges:
            _, v = edge_pair(eid)
            if v >= self.n:
                raise ValueError(f"edge {edge_pair(eid)} out of range for n={self.n}")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "SimpleGraph":
        return cls(n, frozenset(edge_id(u, v) for u, v in pairs))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(range(edge_count(n))))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset())

    @property
    def m(self) -> int:
        return len(self.edges)

    def pairs(self) -> list[tuple[int, int]]:
        return [edge_pair(e) for e in sorted(self.edges)]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_id(u, v) in self.edges

    @cached_property
    def edge_mask(self) -> int:
        mask = 0
        for e in self.edges:
            mask |= 1 << e
        return mask

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Adjacency bitmasks indexed by vertex."""
        masks = [0] * self.n
        for e in self.edges:
            u, v = edge_pair(e)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(bin(a).count("1") for a in self.adj)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees, reverse=True))

    def complement(self) -> "SimpleGraph":
        return SimpleGraph(
            self.n, frozenset(range(edge_count(self.n))) - self.edges
        )

    def subgraph(self, vertices) -> "SimpleGraph":
        """Induced subgraph, relabeled along sorted(vertices) -> 0.."""
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        keep = set(vs)
        new_edges = []
        for e in self.edges:
            u, v = edge_pair(e)
            if u in keep and v in keep:
                new_edges.append(edge_id(pos[u], pos[v]))
        return SimpleGraph(len(vs), frozenset(new_edges))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                x = stack.pop()
                nb = self.adj[x]
                while nb:
                    y = (nb & -nb).bit_length() - 1
                    nb &= nb - 1
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


# ---------------------------------------------------------------------------
# pattern graphs


@dataclass(frozen=True)
class PatternGraph:
    """A small graph to be matched inside hosts; carries derived stats.

    ``est_assumed`` marks patterns whose extremal numbers are only available
    under the unproven tree-density assumption; certifiers propagate the flag.
    """

    graph: SimpleGraph
    name: str = ""
    est_assumed: bool = False

    @property
    def k(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def degseq(self) -> tuple[int, ...]:
        return self.graph.degree_sequence()

    @cached_property
    def chi(self) -> int:
        return chromatic_number(self.graph)

    def __str__(self) -> str:
        return self.name or f"graph(k={self.k},m={self.m})"

    # -- shape probes used by certifier dispatch ---------------------------

    def as_complete(self) -> int | None:
        """r if this is K_r (r >= 2), else None."""
        r = self.k
        if r >= 2 and self.m == comb(r, 2):
            return r
        return None

    def as_star(self) -> int | None:
        """r if this is K_{1,r} (r >= 1), else None."""
        if self.k >= 2 and self.m == self.k - 1:
            ds = self.degseq()
            if ds[0] == self.k - 1 and all(d == 1 for d in ds[1:]):
                return self.k - 1
        return None

    def as_matching(self) -> int | None:
        """t if this is tK_2, else None."""
        if self.k >= 2 and self.k == 2 * self.m and all(d == 1 for d in self.graph.degrees):
            return self.m
        return None

    def as_star_forest(self) -> tuple[int, int] | None:
        """(t, r) if this is t disjoint copies of K_{1,r} with r >= 2."""
        comps = self.graph.components()
        if not comps:
            return None
        sizes = set()
        for comp in comps:
            sub = self.graph.subgraph(comp)
            s = PatternGraph(sub).as_star()
            if s is None or s < 2:
                return None
            sizes.add(s)
        if len(sizes) != 1:
            return None
        return len(comps), sizes.pop()


def pattern(graph: SimpleGraph, name: str = "", est_assumed: bool = False) -> PatternGraph:
    return PatternGraph(graph, name, est_assumed)


# -- family factories.  Labeling conventions are part of the contract. -----


def complete(r: int) -> PatternGraph:
    """K_r on vertices 0..r-1."""
    if r < 1:
        raise ValueError("complete: r >= 1 required")
    return pattern(SimpleGraph.complete(r), f"K{r}")


def star(r: int) -> PatternGraph:
    """K_{1,r}: center 0, leaves 1..r."""
    if r < 1:
        raise ValueError("star: r >= 1 required")
    return pattern(
        SimpleGraph.from_pairs(r + 1, [(0, i) for i in range(1, r + 1)]), f"K1,{r}"
    )


def matching(t: int) -> PatternGraph:
    """tK_2: edges (0,1), (2,3), ..."""
    if t < 1:
        raise ValueError("matching: t >= 1 required")
    return pattern(
        SimpleGraph.from_pairs(2 * t, [(2 * i, 2 * i + 1) for i in range(t)]),
        f"{t}K2" if t > 1 else "K2",
    )


def path(k: int) -> PatternGraph:
    """Path 0-1-...-(k-1)."""
    if k < 1:
        raise ValueError("path: k >= 1 required")
    return pattern(SimpleGraph.from_pairs(k, [(i, i + 1) for i in range(k - 1)]), f"P{k}")


def cycle(k: int) -> PatternGraph:
    """Cycle 0-1-...-(k-1)-0."""
    if k < 3:
        raise ValueError("cycle: k >= 3 required")
    return pattern(
        SimpleGraph.from_pairs(k, [(i, (i + 1) % k) for i in range(k)]), f"C{k}"
    )


def complete_bipartite(a: int, b: int) -> PatternGraph:
    """K_{a,b}: one side 0..a-1, other a..a+b-1."""
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite: sides >= 1 required")
    if a == 1:
        return star(b)
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    return pattern(SimpleGraph.from_pairs(a + b, pairs), f"K{a},{b}")


def turan_graph(n: int, parts: int) -> PatternGraph:
    """Balanced complete multipartite graph on n vertices with the given
    number of parts (the K_{parts+1}-free edge maximizer)."""
    if parts < 1:
        raise ValueError("turan_graph: need at least one part")
    if n < parts:
        raise ValueError("turan_graph: need n >= parts")
    q, rem = divmod(n, parts)
    sizes = [q + 1] * rem + [q] * (parts - rem)
    label = [0] * n
    v = 0
    for idx, s in enumerate(sizes):
        for _ in range(s):
            label[v] = idx
            v += 1
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n) if label[u] != label[w]]
    return pattern(SimpleGraph.from_pairs(n, pairs), f"T{n},{parts}")


def complete_minus_clique(k: int, t: int) -> PatternGraph:
    """K_k with the edges inside {0..t-1} removed."""
    if not (2 <= t < k):
        raise ValueError("complete_minus_clique: need 2 <= t < k")
    drop = {edge_id(u, v) for u, v in combinations(range(t), 2)}
    return pattern(
        SimpleGraph(k, frozenset(range(edge_count(k))) - drop), f"K{k}-K{t}"
    )


def complete_minus_factor(k: int) -> PatternGraph:
    """K_k minus the perfect matching {0,1}, {2,3}, ...; k must be even."""
    if k < 2 or k % 2:
        raise ValueError("complete_minus_factor: even k >= 2 required")
    drop = {edge_id(2 * i, 2 * i + 1) for i in range(k // 2)}
    return pattern(SimpleGraph(k, frozenset(range(edge_count(k))) - drop), f"K{k}-F")


def union(*parts: PatternGraph, name: str = "") -> PatternGraph:
    """Disjoint union; vertex blocks in argument order."""
    offset = 0
    pairs: list[tuple[int, int]] = []
    for p in parts:
        pairs.extend((u + offset, v + offset) for u, v in p.graph.pairs())
        offset += p.k
    nm = name or "u".join(str(p) for p in parts)
    return pattern(SimpleGraph.from_pairs(offset, pairs), nm)


def multi(t: int, p: PatternGraph) -> PatternGraph:
    """t disjoint copies of p."""
    if t < 1:
        raise ValueError("multi: t >= 1 required")
    if t == 1:
        return p
    return union(*([p] * t), name=f"{t}{p}")


def join(a: PatternGraph, b: PatternGraph) -> PatternGraph:
    """Join: a's vertices first, then b's, plus all cross edges."""
    pairs = list(a.graph.pairs())
    pairs += [(u + a.k, v + a.k) for u, v in b.graph.pairs()]
    pairs += [(u, a.k + w) for u in range(a.k) for w in range(b.k)]
    return pattern(SimpleGraph.from_pairs(a.k + b.k, pairs), f"{a}+{b}")


def from_edge_list(k: int, pairs, name: str = "") -> PatternGraph:
    return pattern(SimpleGraph.from_pairs(k, pairs), name)


_ATOM_RE = re.compile(
    r"^(?:(?P<mult>\d+)\s*)?(?:"
    r"K(?P<ka>\d+),(?P<kb>\d+)"
    r"|K(?P<k>\d+)(?:-(?:K(?P<minus>\d+)|(?P<factor>F)))?"
    r"|T(?P<tn>\d+),(?P<tp>\d+)"
    r"|C(?P<c>\d+)"
    r"|(?:P|path)(?P<p>\d+)"
    r")$"
)


def _parse_atom(text: str) -> PatternGraph:
    m = _ATOM_RE.match(text.strip())
    if not m:
        raise ValueError(f"unrecognized pattern spec {text!r}")
    if m["ka"] is not None:
        base = complete_bipartite(int(m["ka"]), int(m["kb"]))
    elif m["tn"] is not None:
        base = turan_graph(int(m["tn"]), int(m["tp"]))
    elif m["k"] is not None:
        k = int(m["k"])
        if m["minus"] is not None:
            base = complete_minus_clique(k, int(m["minus"]))
        elif m["factor"] is not None:
            base = complete_minus_factor(k)
        else:
            base = complete(k)
    elif m["c"] is not None:
        base = cycle(int(m["c"]))
    else:
        base = path(int(m["p"]))
    if m["mult"] is not None:
        return multi(int(m["mult"]), base)
    return base


def make_pattern(spec: str | PatternGraph) -> PatternGraph:
    """Parse family specs like "K4", "K1,3", "3K2", "C5", "K6-K2", "path7".

    A top-level "+" denotes join, e.g. "C5+K2".
    """
    if isinstance(spec, PatternGraph):
        return spec
    terms = [t for t in spec.split("+") if t.strip()]
    if not terms:
        raise ValueError(f"empty pattern spec {spec!r}")
    out = _parse_atom(terms[0])
    for t in terms[1:]:
        out = join(out, _parse_atom(t))
    return out


# ---------------------------------------------------------------------------
# copy enumeration


def _embedding_order(P: SimpleGraph) -> list[int]:
    """Pattern vertices ordered so each one touches an earlier one when possible."""
    order: list[int] = []
    placed = [False] * P.n
    for comp in sorted(P.components(), key=lambda c: (-len(c), c)):
        start = max(comp, key=lambda v: (P.degrees[v], -v))
        placed[start] = True
        order.append(start)
        for _ in range(len(comp) - 1):
            # most placed neighbors first, then degree; index breaks ties
            best = None
            for v in comp:
                if placed[v]:
                    continue
                back = bin(P.adj[v] & _mask_of(order)).count("1")
                key = (back, P.degrees[v], -v)
                if best is None or key > best[0]:
                    best = (key, v)
            order.append(best[1])
            placed[best[1]] = True
    return order


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def enumerate_copies(P: PatternGraph | SimpleGraph, host: SimpleGraph):
    """Yield each copy of P in host exactly once, as a vertex map tuple.

    A copy is a subgraph of the host isomorphic to P; two embeddings that
    differ by an automorphism of P describe the same copy and are deduped
    on the (vertex set, edge set) image.  The map sends pattern vertex i
    to embedding[i].
    """
    pg = P.graph if isinstance(P, PatternGraph) else P
    if pg.n > host.n:
        return
    order = _embedding_order(pg)
    prev_nbrs = []
    for i, v in enumerate(order):
        prev_nbrs.append([(j, order[j]) for j in range(i) if pg.has_edge(v, order[j])])
    assign = [-1] * pg.n
    seen: set[tuple[int, int]] = set()

    def extend(i: int, used: int):
        if i == len(order):
            vmask = used
            emask = 0
            for e in pg.edges:
                a, b = edge_pair(e)
                emask |= 1 << edge_id(assign[a], assign[b])
            key = (vmask, emask)
            if key not in seen:
                seen.add(key)
                yield tuple(assign)
            return
        pv = order[i]
        for hv in range(host.n):
            if used & (1 << hv):
                continue
            ok = True
            for _, pu in prev_nbrs[i]:
                if not host.adj[hv] & (1 << assign[pu]):
                    ok = False
                    break
            if ok:
                assign[pv] = hv
                yield from extend(i + 1, used | (1 << hv))
        assign[pv] = -1

    yield from extend(0, 0)


def count_copies(P: PatternGraph | SimpleGraph, host: SimpleGraph) -> int:
    """Number of distinct copies (subgraphs isomorphic to P) in host."""
    return sum(1 for _ in enumerate_copies(P, host))


def count_labeled_copies(P: PatternGraph | SimpleGraph, host: SimpleGraph) -> int:
    """Number of injective vertex maps carrying pattern edges onto host edges."""
    pg = P.graph if isinstance(P, PatternGraph) else P
    if pg.n > host.n:
        return 0
    order = _embedding_order(pg)
    prev_nbrs = []
    for i, v in enumerate(order):
        prev_nbrs.append([order[j] for j in range(i) if pg.has_edge(v, order[j])])
    assign = [-1] * pg.n

    def extend(i: int, used: int) -> int:
        if i == len(order):
            return 1
        total = 0
        pv = order[i]
        for hv in range(host.n):
            if used & (1 << hv):
                continue
            if all(host.adj[hv] & (1 << assign[pu]) for pu in prev_nbrs[i]):
                assign[pv] = hv
                total += extend(i + 1, used | (1 << hv))
        assign[pv] = -1
        return total

    return extend(0, 0)


def contains_copy(P: PatternGraph | SimpleGraph, host: SimpleGraph) -> bool:
    for _ in enumerate_copies(P, host):
        return True
    return False


def deck(P: PatternGraph) -> list[PatternGraph]:
    """The k vertex-deleted subgraphs, duplicates retained, in deletion order."""
    out = []
    for v in range(P.k):
        rest = [u for u in range(P.k) if u != v]
        out.append(pattern(P.graph.subgraph(rest), f"{P}-v{v}"))
    return out


# ---------------------------------------------------------------------------
# chromatic number (exact, small graphs)


def max_clique_size(G: SimpleGraph) -> int:
    best = 1 if G.n else 0

    def grow(cand: int, size: int):
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            grow(cand & G.adj[v], size + 1)

    grow((1 << G.n) - 1, 0)
    return best


def _colorable(G: SimpleGraph, c: int) -> bool:
    order = sorted(range(G.n), key=lambda v: -G.degrees[v])
    colors = [-1] * G.n

    def assign(i: int) -> bool:
        if i == G.n:
            return True
        v = order[i]
        used = {colors[u] for u in range(G.n) if colors[u] >= 0 and G.adj[v] >> u & 1}
        limit = min(c, max([colors[order[j]] for j in range(i)], default=-1) + 2)
        for col in range(limit):
            if col not in used:
                colors[v] = col
                if assign(i + 1):
                    return True
                colors[v] = -1
        return False

    return assign(0)


def chromatic_number(G: SimpleGraph) -> int:
    if G.n == 0:
        return 0
    if not G.edges:
        return 1
    lo = max_clique_size(G)
    c = lo
    while not _colorable(G, c):
        c += 1
    return c


# ---------------------------------------------------------------------------
# trees


@lru_cache(maxsize=32)
def all_trees(k: int) -> tuple[PatternGraph, ...]:
    """All trees on k vertices up to isomorphism (via Prüfer + canonical dedupe)."""
    from .canon import canonical_code  # local import: canon depends on edge ids only

    if k < 1:
        raise ValueError("all_trees: k >= 1 required")
    if k == 1:
        return (pattern(SimpleGraph.empty(1), "K1"),)
    if k == 2:
        return (matching(1),)
    seen = {}
    for seq in _prufer_sequences(k):
        pairs = _prufer_decode(seq, k)
        g = SimpleGraph.from_pairs(k, pairs)
        code = canonical_code(k, g.edge_mask)
        if code not in seen:
            seen[code] = g
    out = [
        pattern(g, f"tree{k}.{i}")
        for i, (_, g) in enumerate(sorted(seen.items()))
    ]
    return tuple(out)


def _prufer_sequences(k: int):
    def rec(prefix):
        if len(prefix) == k - 2:
            yield tuple(prefix)
            return
        for x in range(k):
            prefix.append(x)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def _prufer_decode(seq: tuple[int, ...], k: int) -> list[tuple[int, int]]:
    degree = [1] * k
    for x in seq:
        degree[x] += 1
    pairs = []
    for x in seq:
        for v in range(k):
            if degree[v] == 1:
                pairs.append((v, x))
                degree[v] -= 1
                degree[x] -= 1
                break
    last = [v for v in range(k) if degree[v] == 1]
    pairs.append((last[0], last[1]))
    return pairs


# ---------------------------------------------------------------------------
# serialization: edge-list text and graph6


def parse_edge_list(text: str, name: str = "") -> PatternGraph:
    """Parse "k m" header plus m lines "u v" (0-based)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header {lines[0]!r}, expected 'k m'")
    k, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header promises {m} edges, found {len(lines) - 1}")
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return from_edge_list(k, pairs, name)


def format_edge_list(P: PatternGraph) -> str:
    lines = [f"{P.k} {P.m}"]
    lines += [f"{u} {v}" for u, v in P.graph.pairs()]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str, name: str = "") -> PatternGraph:
    """Decode a single graph6 line (n <= 62)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise ValueError("invalid graph6 characters")
    n = data[0]
    if n == 63:
        raise ValueError("graph6 with n > 62 not supported")
    bits = []
    for b in data[1:]:
        bits.extend((b >> i) & 1 for i in range(5, -1, -1))
    need = comb(n, 2)
    if len(bits) < need:
        raise ValueError("graph6 string too short")
    pairs = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                pairs.append((u, v))
            idx += 1
    return from_edge_list(n, pairs, name)


def format_graph6(P: PatternGraph | SimpleGraph) -> str:
    g = P.graph if isinstance(P, PatternGraph) else P
    if g.n > 62:
        raise ValueError("graph6 with n > 62 not supported")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def load_pattern(source: str, name: str = "") -> PatternGraph:
    """Parse a pattern from edge-list text or graph6 (sniffed on the header)."""
    first = source.strip().splitlines()[0] if source.strip() else ""
    if re.match(r"^\d+\s+\d+$", first.strip()):
        return parse_edge_list(source, name)
    return parse_graph6(source, name)

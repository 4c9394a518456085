"""Backtracking search over edge mappings that avoid prescribed relations.

The searcher decides questions of the form: does K_n admit a mapping, inside
a given overlap class, with no fixed copy of one pattern, no free copy of
another, and so on.  Images are chosen edge by edge in id order, the fixed
image first where the class allows it, so a run is a deterministic walk of
one tree: exhaustion settles the forcing question at that n, a witness
refutes it.

Four devices keep the tree small.  Each is switchable so their verdicts can
be cross-checked against the bare engine:

* prefix-stabilizer symmetry: candidate images of the branching edge are
  reduced to orbit minima under vertex permutations that stabilize the
  partial assignment;
* destroyer propagation: an avoided free or exclusive copy with exactly one
  unassigned edge forces that edge's image into (or onto) the copy;
* counting: copies still needing a destroyer must not outnumber the
  destructions the remaining edges can possibly perform;
* per-vertex tallies: enough incident edges with images missing a vertex
  force a free star outright, and enough moved clear of both endpoints
  force an exclusive star.

Witnesses are re-validated by the detection module before being returned,
so a bug in the incremental bookkeeping surfaces as a loud error rather
than a wrong verdict.
"""
from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import permutations
from functools import lru_cache

from . import constructions, detect
from .bounds import (
    ASSUMED_TREE_DENSITY,
    Bound,
    BoundReport,
    ex_value,
    exclusive_matching_certify,
    exclusive_star_certify,
    free_star_certify,
    g_degree_check,
    g_matching_certify,
    g_strong_sound,
    m_counting_certify,
    shifted_budget_certify,
    tree_star_exclusive_upper,
    w_bounds,
    w_clique_bounds,
    w_star_upper,
)
from .canon import graphs_by_edge_count
from .graphs import (
    PatternGraph,
    SimpleGraph,
    contains_copy,
    edge_count,
    edge_id,
    edge_pair,
    edge_vertex_mask,
    enumerate_copies,
    path,
)
from .mapping import EdgeMapping, MappingClass, overlap, random_mapping

RELATIONS = ("fixed", "shifted", "strong_shifted", "free", "exclusive")

_FINDERS = {
    "fixed": detect.find_fixed,
    "shifted": lambda f, P: detect.find_shifted(f, P),
    "strong_shifted": lambda f, P: detect.find_shifted(f, P, strong=True),
    "free": detect.find_free,
    "exclusive": detect.find_exclusive,
}

# Largest host the plain engine accepts per class without force=True.  The
# moved-clear class has the smallest pools and stretches one vertex further.
ENVELOPE = {"all": 6, "overlap_le_1": 6, "disjoint": 7, "fixed_or_strong": 6}

# Flag on results whose reading of the support capacity is our own; the
# quantity is pinned only through how proofs consume it.
INFERRED_CAPACITY = "support-maximum reading of the capacity"

# Flag on bounds that import a pair-avoidance support capacity from
# published tables instead of deriving it here.
EXTERNAL_CAPACITY = "pair-avoidance support capacity assumed from tables"


@dataclass(frozen=True)
class AvoidanceSpec:
    """What to avoid: (relation, pattern) pairs over mappings of K_n.

    Patterns larger than the host are dropped by the engine (they cannot
    occur).  The mostly_le_d class is a global count, not a per-edge rule,
    and is not searchable here.
    """

    n: int
    klass: MappingClass
    avoid: tuple[tuple[str, PatternGraph], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one vertex")
        if self.klass.kind not in ENVELOPE:
            raise ValueError(f"class {self.klass.kind!r} is not searchable")
        object.__setattr__(self, "avoid", tuple(self.avoid))
        for rel, P in self.avoid:
            if rel not in RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            if not isinstance(P, PatternGraph):
                raise TypeError("avoid entries take PatternGraph patterns")


@dataclass(frozen=True)
class SearchOptions:
    symmetry: bool = True
    destroyer_propagation: bool = True
    counting_prune: bool = True
    shifted_degree_prune: bool = True
    budget: float | None = None
    workers: int = 1
    force: bool = False


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0

    def bump(self, rule: str) -> None:
        self.prunes[rule] = self.prunes.get(rule, 0) + 1

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        for rule, cnt in other.prunes.items():
            self.prunes[rule] = self.prunes.get(rule, 0) + cnt


@dataclass(frozen=True)
class SearchOutcome:
    """Verdict of one avoidance search.

    WITNESS carries a mapping realizing the avoidance; EXHAUSTED means the
    tree was walked to the end without one; TIMEOUT means the budget ran
    out first and says nothing about existence.
    """

    verdict: str
    witness: EdgeMapping | None
    stats: SearchStats
    symmetry: str

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else list(self.witness.images),
            "nodes": self.stats.nodes,
            "prunes": dict(sorted(self.stats.prunes.items())),
            "wall_time": round(self.stats.wall_time, 6),
            "symmetry": self.symmetry,
        }


class _Timeout(Exception):
    pass


@lru_cache(maxsize=4)
def _edge_perms(n: int) -> tuple[tuple[int, ...], ...]:
    """Every vertex permutation as a permutation of edge ids."""
    m = edge_count(n)
    pairs = [edge_pair(e) for e in range(m)]
    out = []
    for sigma in permutations(range(n)):
        out.append(tuple(edge_id(sigma[u], sigma[v]) for u, v in pairs))
    return tuple(out)


class _Engine:
    """One depth-first walk.  Edges are assigned strictly in id order, so
    the recursion depth equals the id of the edge being assigned."""

    def __init__(
        self,
        spec: AvoidanceSpec,
        options: SearchOptions,
        objective: int | None = None,
        prefix: tuple[tuple[int, int], ...] = (),
    ):
        self.spec = spec
        self.opt = options
        self.n = spec.n
        self.m_edges = edge_count(spec.n)
        self.klass = spec.klass
        self.objective = objective
        self.prefix = tuple(prefix)
        self.stats = SearchStats()
        self.witness: EdgeMapping | None = None
        self.deadline: float | None = None

        self.assign = [-1] * self.m_edges
        self.fixed_mask = 0
        self.d_sh = [0] * spec.n
        self.strong_sh = [0] * spec.n
        self.nonfixed_used = 0
        self.evm = [edge_vertex_mask(e) for e in range(self.m_edges)]

        self.pools = self._build_pools()
        self.mask_cons: list[tuple[str, list[int], list[list[int]]]] = []
        self.copy_cons: list[dict] = []
        self.r_free: int | None = None
        self.r_exc: int | None = None
        host = SimpleGraph.complete(spec.n)
        for rel, P in spec.avoid:
            if P.k > spec.n:
                continue
            if rel in ("fixed", "shifted", "strong_shifted"):
                self._add_mask_constraint(rel, P, host)
            else:
                self._add_copy_constraint(rel, P, host)
        # masks of currently fixed / moved / moved-clear edges, grown as the
        # assignment extends, checked against the mask constraints
        self.rel_masks = {"fixed": 0, "shifted": 0, "strong_shifted": 0}

    # -- construction-time tables ------------------------------------------

    def _build_pools(self) -> list[list[int]]:
        pools = []
        shifted_first = self.objective is not None
        for e in range(self.m_edges):
            moved = [
                x for x in range(self.m_edges) if x != e and self.klass.value_ok(e, x)
            ]
            own = [e] if self.klass.value_ok(e, e) else []
            pools.append(moved + own if shifted_first else own + moved)
        return pools

    def _add_mask_constraint(self, rel: str, P: PatternGraph, host: SimpleGraph) -> None:
        emasks: list[int] = []
        by_edge: list[list[int]] = [[] for _ in range(self.m_edges)]
        for emb in enumerate_copies(P, host):
            emask = 0
            for a, b in P.graph.pairs():
                emask |= 1 << edge_id(emb[a], emb[b])
            ci = len(emasks)
            emasks.append(emask)
            for x in _mask_bits(emask):
                by_edge[x].append(ci)
        self.mask_cons.append((rel, emasks, by_edge))

    def _add_copy_constraint(self, rel: str, P: PatternGraph, host: SimpleGraph) -> None:
        emasks: list[int] = []
        vmasks: list[int] = []
        by_edge: list[list[int]] = [[] for _ in range(self.m_edges)]
        n_edges_in_copy = P.m
        for emb in enumerate_copies(P, host):
            emask = 0
            vmask = 0
            for a, b in P.graph.pairs():
                emask |= 1 << edge_id(emb[a], emb[b])
            for v in emb:
                vmask |= 1 << v
            ci = len(emasks)
            emasks.append(emask)
            vmasks.append(vmask)
            for x in _mask_bits(emask):
                by_edge[x].append(ci)
        con = {
            "rel": rel,
            "pattern": P,
            "emasks": emasks,
            "vmasks": vmasks,
            "by_edge": by_edge,
            "size": n_edges_in_copy,
            "destroyed": [False] * len(emasks),
            "remaining": [n_edges_in_copy] * len(emasks),
            "undestroyed": len(emasks),
        }
        self._counting_tables(con)
        self.copy_cons.append(con)
        r = P.as_star()
        if r is not None:
            if rel == "free":
                self.r_free = r if self.r_free is None else min(self.r_free, r)
            else:
                self.r_exc = r if self.r_exc is None else min(self.r_exc, r)

    def _destroys(self, con: dict, x: int, ci: int) -> bool:
        if con["rel"] == "free":
            return bool(con["emasks"][ci] >> x & 1)
        return bool(con["vmasks"][ci] & self.evm[x])

    def _counting_tables(self, con: dict) -> None:
        # static per-edge maxima are sound even after pools narrow
        shift_d = [0] * self.m_edges
        fix_d = [0] * self.m_edges
        for e in range(self.m_edges):
            cids = con["by_edge"][e]
            if not cids:
                continue
            fix_d[e] = len(cids)
            best = 0
            for x in self.pools[e]:
                if x == e:
                    continue
                cnt = sum(1 for ci in cids if self._destroys(con, x, ci))
                if cnt > best:
                    best = cnt
            shift_d[e] = best
        if self.objective is None:
            own = [
                fix_d[e] if self.pools[e] and e in self.pools[e] else 0
                for e in range(self.m_edges)
            ]
            d = [max(shift_d[e], own[e]) for e in range(self.m_edges)]
            suffix = [0] * (self.m_edges + 1)
            for e in range(self.m_edges - 1, -1, -1):
                suffix[e] = suffix[e + 1] + d[e]
            con["suffix"] = suffix
            con["maxdiff"] = 0
        else:
            suffix = [0] * (self.m_edges + 1)
            for e in range(self.m_edges - 1, -1, -1):
                suffix[e] = suffix[e + 1] + shift_d[e]
            con["suffix"] = suffix
            con["maxdiff"] = max(
                (fix_d[e] - shift_d[e] for e in range(self.m_edges)), default=0
            )

    # -- incremental state --------------------------------------------------

    def _apply(self, e: int, x: int):
        self.stats.nodes += 1
        if self.deadline is not None and self.stats.nodes & 1023 == 0:
            if time.perf_counter() > self.deadline:
                raise _Timeout
        self.assign[e] = x
        bit = 1 << e
        ov = overlap(e, x)
        prev_masks = dict(self.rel_masks)
        dsh_touch: list[int] = []
        strong_pair = False
        ok = True
        cause = ""

        if x == e:
            self.rel_masks["fixed"] |= bit
        else:
            self.nonfixed_used += 1
            self.rel_masks["shifted"] |= bit
            if ov == 0:
                self.rel_masks["strong_shifted"] |= bit
            u, v = edge_pair(e)
            vm = self.evm[x]
            if not vm & (1 << u):
                self.d_sh[u] += 1
                dsh_touch.append(u)
            if not vm & (1 << v):
                self.d_sh[v] += 1
                dsh_touch.append(v)
            if ov == 0:
                strong_pair = True
                self.strong_sh[u] += 1
                self.strong_sh[v] += 1
            if self.opt.shifted_degree_prune:
                if self.r_free is not None and any(
                    self.d_sh[w] >= self.r_free for w in dsh_touch
                ):
                    ok, cause = False, "shifted_degree"
                if ok and strong_pair and self.r_exc is not None:
                    thr = 5 * self.r_exc - 4
                    if self.strong_sh[u] >= thr or self.strong_sh[v] >= thr:
                        ok, cause = False, "shifted_degree"

        if ok:
            for rel, emasks, by_edge in self.mask_cons:
                mask = self.rel_masks[rel]
                if not mask >> e & 1:
                    continue
                for ci in by_edge[e]:
                    if emasks[ci] & ~mask == 0:
                        ok, cause = False, f"pattern_{rel}"
                        break
                if not ok:
                    break

        rem_touch: list[tuple[int, int]] = []
        dst_touch: list[tuple[int, int]] = []
        if ok:
            for j, con in enumerate(self.copy_cons):
                for ci in con["by_edge"][e]:
                    con["remaining"][ci] -= 1
                    rem_touch.append((j, ci))
                    if con["destroyed"][ci]:
                        continue
                    if self._destroys(con, x, ci):
                        con["destroyed"][ci] = True
                        con["undestroyed"] -= 1
                        dst_touch.append((j, ci))
                    elif con["remaining"][ci] == 0:
                        ok, cause = False, "copy_complete"
                        break
                if not ok:
                    break

        if ok and self.objective is not None:
            if self.nonfixed_used + (self.m_edges - e - 1) < self.objective:
                ok, cause = False, "objective"

        if ok and self.opt.counting_prune:
            if self.objective is None:
                for con in self.copy_cons:
                    if con["undestroyed"] > con["suffix"][e + 1]:
                        ok, cause = False, "counting"
                        break
            else:
                fixed_used = (e + 1) - self.nonfixed_used
                allowed = max(0, (self.m_edges - self.objective) - fixed_used)
                for con in self.copy_cons:
                    if con["undestroyed"] > con["suffix"][e + 1] + allowed * con["maxdiff"]:
                        ok, cause = False, "counting"
                        break

        token = (e, x, prev_masks, dsh_touch, strong_pair, rem_touch, dst_touch)
        return ok, token, cause

    def _undo(self, token) -> None:
        e, x, prev_masks, dsh_touch, strong_pair, rem_touch, dst_touch = token
        self.assign[e] = -1
        self.rel_masks = prev_masks
        if x != e:
            self.nonfixed_used -= 1
            for w in dsh_touch:
                self.d_sh[w] -= 1
            if strong_pair:
                u, v = edge_pair(e)
                self.strong_sh[u] -= 1
                self.strong_sh[v] -= 1
        for j, ci in dst_touch:
            con = self.copy_cons[j]
            con["destroyed"][ci] = False
            con["undestroyed"] += 1
        for j, ci in rem_touch:
            self.copy_cons[j]["remaining"][ci] += 1

    # -- tree walk -----------------------------------------------------------

    def _candidates(self, e: int) -> list[int]:
        pool = self.pools[e]
        if not self.opt.destroyer_propagation or not self.copy_cons:
            return pool
        for con in self.copy_cons:
            for ci in con["by_edge"][e]:
                if con["destroyed"][ci] or con["remaining"][ci] != 1:
                    continue
                pool = [x for x in pool if self._destroys(con, x, ci)]
                if not pool:
                    self.stats.bump("forced_empty")
                    return pool
        return pool

    def _leaf(self) -> bool:
        mp = EdgeMapping(self.n, tuple(self.assign))
        if not self.klass.admits(mp):
            raise RuntimeError("engine produced a mapping outside its class")
        for rel, P in self.spec.avoid:
            if _FINDERS[rel](mp, P) is not None:
                raise RuntimeError(f"engine witness contains a {rel} copy of {P}")
        if self.objective is not None:
            count = (
                mp.profile.strong_shifted
                if self.klass.kind == "fixed_or_strong"
                else mp.profile.shifted
            )
            if count < self.objective:
                raise RuntimeError("engine witness misses its moved-edge target")
        self.witness = mp
        return True

    def _dfs(self, i: int, group) -> bool:
        if i == self.m_edges:
            return self._leaf()
        stab = [p for p in group if p[i] == i] if len(group) > 1 else group
        for x in self._candidates(i):
            if len(stab) > 1 and any(p[x] < x for p in stab):
                self.stats.bump("symmetry")
                continue
            ok, token, cause = self._apply(i, x)
            if ok:
                child = [p for p in stab if p[x] == x] if len(stab) > 1 else stab
                if self._dfs(i + 1, child):
                    self._undo(token)
                    return True
            else:
                self.stats.bump(cause)
            self._undo(token)
        return False

    def _initial_group(self):
        if self.opt.symmetry and self.n <= 8:
            return list(_edge_perms(self.n))
        return [tuple(range(self.m_edges))]

    def symmetry_mode(self) -> str:
        if self.opt.symmetry and self.n <= 8:
            return "prefix-stabilizer"
        return "off"

    def root_candidates(self) -> list[int]:
        if self.m_edges == 0:
            return []
        group = self._initial_group()
        stab = [p for p in group if p[0] == 0] if len(group) > 1 else group
        pool = self._candidates(0)
        if len(stab) > 1:
            pool = [x for x in pool if not any(p[x] < x for p in stab)]
        return pool

    def run(self) -> SearchOutcome:
        start = time.perf_counter()
        if self.opt.budget is not None:
            self.deadline = start + self.opt.budget
        verdict = "EXHAUSTED"
        try:
            group = self._initial_group()
            depth = 0
            dead = False
            for e, x in self.prefix:
                if e != depth:
                    raise ValueError("prefix must pin edges 0..k-1 in order")
                ok, _token, cause = self._apply(e, x)
                if not ok:
                    self.stats.bump(cause)
                    dead = True
                    break
                if len(group) > 1:
                    group = [p for p in group if p[e] == e and p[x] == x]
                depth += 1
            if not dead and self._dfs(depth, group):
                verdict = "WITNESS"
        except _Timeout:
            verdict = "TIMEOUT"
        self.stats.wall_time = time.perf_counter() - start
        return SearchOutcome(verdict, self.witness, self.stats, self.symmetry_mode())


def _mask_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check_envelope(spec: AvoidanceSpec, options: SearchOptions) -> None:
    cap = ENVELOPE[spec.klass.kind]
    if spec.n > cap and not options.force:
        raise ValueError(
            f"n={spec.n} exceeds the {spec.klass.kind} feasibility cap of {cap}; "
            "pass SearchOptions(force=True) to run anyway"
        )


def _branch_entry(args) -> SearchOutcome:
    spec, options, prefix = args
    return _Engine(spec, options, prefix=prefix).run()


def exists_avoiding(spec: AvoidanceSpec, options: SearchOptions | None = None) -> SearchOutcome:
    """Decide whether some mapping in the class avoids every listed relation.

    Returns WITNESS with a re-validated mapping, EXHAUSTED when the walk
    finished without one, or TIMEOUT when the budget expired.  An empty
    class yields EXHAUSTED with zero nodes: no mapping exists at all, so in
    particular none avoids.  With workers > 1 the root branches run in
    separate processes; the reported witness is the one the sequential walk
    would have found first, and each branch receives the full budget.
    """
    options = options or SearchOptions()
    _check_envelope(spec, options)
    if spec.klass.is_empty(spec.n):
        return SearchOutcome("EXHAUSTED", None, SearchStats(), "off")
    if options.workers > 1 and edge_count(spec.n) > 0:
        return _parallel(spec, options)
    return _Engine(spec, options).run()


def _parallel(spec: AvoidanceSpec, options: SearchOptions) -> SearchOutcome:
    start = time.perf_counter()
    sequential = replace(options, workers=1)
    probe = _Engine(spec, sequential)
    root = probe.root_candidates()
    stats = SearchStats()
    if not root:
        stats.wall_time = time.perf_counter() - start
        return SearchOutcome("EXHAUSTED", None, stats, probe.symmetry_mode())
    args = [(spec, sequential, ((0, x),)) for x in root]
    with ProcessPoolExecutor(max_workers=options.workers) as pool:
        results = list(pool.map(_branch_entry, args))
    witness = None
    timed_out = False
    for res in results:
        stats.merge(res.stats)
        if res.verdict == "WITNESS" and witness is None:
            witness = res.witness
        elif res.verdict == "TIMEOUT":
            timed_out = True
    stats.wall_time = time.perf_counter() - start
    if witness is not None:
        return SearchOutcome("WITNESS", witness, stats, probe.symmetry_mode())
    if timed_out:
        return SearchOutcome("TIMEOUT", None, stats, probe.symmetry_mode())
    return SearchOutcome("EXHAUSTED", None, stats, probe.symmetry_mode())


# ---------------------------------------------------------------------------
# specialized deciders


def z_via_coloring(G: PatternGraph, H: PatternGraph, n: int) -> bool:
    """Whether some red/blue edge coloring of K_n has no red G and no blue H.

    Red subgraphs are enumerated once per isomorphism class.  The verdict
    transfers to mappings: painting the fixed edges red turns a coloring
    witness into a mapping with no fixed G and no moved H and vice versa,
    any blue edge having somewhere else to go once n >= 3; at n = 2 both
    readings force monochromatic and agree as well.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > 8:
        raise ValueError("isomorph-free enumeration is capped at n = 8")
    for level in graphs_by_edge_count(n):
        for mask in level:
            red = SimpleGraph(n, frozenset(_mask_bits(mask)))
            if contains_copy(G, red):
                continue
            if not contains_copy(H, red.complement()):
                return True
    return False


def w_p3_exact_cover(n: int, options: SearchOptions | None = None) -> SearchOutcome:
    """Decide exclusive-P3 avoidance for moved-clear mappings on 5 or 6 vertices.

    On six vertices the count is rigid: 60 copies of the 3-vertex path, 15
    edges, and every admissible image meets exactly four copies, so each
    edge must claim a fresh block of four (an exact cover).  The counting
    rule enforces that rigidity; the first image is normalized to the least
    edge disjoint from it, which any witness could be relabeled to use.  On
    five vertices the same search yields a witness instead.
    """
    if n not in (5, 6):
        raise ValueError("the exact-cover reformulation applies at n = 5 and n = 6")
    spec = AvoidanceSpec(n, MappingClass("disjoint"), (("exclusive", path(3)),))
    opts = replace(options or SearchOptions(), counting_prune=True)
    prefix = ((0, edge_id(2, 3)),) if n == 6 else ()
    return _Engine(spec, opts, prefix=prefix).run()


@dataclass(frozen=True)
class CapacityReport:
    """Largest avoidance-compatible moved-edge count found for one host."""

    n: int
    pattern: PatternGraph
    relation: str
    value: int
    exact: bool
    witness: EdgeMapping | None
    flags: tuple[str, ...]
    scan: tuple[tuple[int, str], ...]


def shift_capacity(
    n: int,
    H: PatternGraph,
    exclusive: bool = False,
    budget: float | None = None,
    options: SearchOptions | None = None,
) -> CapacityReport:
    """Most edges a mapping of K_n can move while avoiding a free copy of H.

    The exclusive variant instead counts edges moved clear of both
    endpoints, over mappings that never share exactly one endpoint with
    their image, and avoids exclusive copies.  Targets are scanned downward
    with a fresh walk each; the first witness pins the value.  A step that
    times out leaves the levels above unresolved, so the result degrades to
    an inexact lower bound and says so.  The identity mapping settles
    target 0, hence the scan always terminates.
    """
    relation = "exclusive" if exclusive else "free"
    klass = MappingClass("fixed_or_strong" if exclusive else "all")
    base = options or SearchOptions()
    cap = ENVELOPE[klass.kind]
    if n > cap and not base.force:
        raise ValueError(
            f"n={n} exceeds the {klass.kind} feasibility cap of {cap}; "
            "pass SearchOptions(force=True) to run anyway"
        )
    spec = AvoidanceSpec(n, klass, ((relation, H),))
    opts = replace(base, budget=budget if budget is not None else base.budget)
    scan: list[tuple[int, str]] = []
    exact = True
    for target in range(edge_count(n), -1, -1):
        out = _Engine(spec, opts, objective=target).run()
        scan.append((target, out.verdict))
        if out.verdict == "TIMEOUT":
            exact = False
            continue
        if out.verdict == "WITNESS":
            flags = (INFERRED_CAPACITY,)
            if not exact:
                flags += ("unresolved levels above; value is a lower bound",)
            return CapacityReport(
                n, H, relation, target, exact, out.witness, flags, tuple(scan)
            )
    return CapacityReport(
        n,
        H,
        relation,
        0,
        False,
        None,
        (INFERRED_CAPACITY, "every level timed out"),
        tuple(scan),
    )


@dataclass(frozen=True)
class MonteCarloReport:
    pattern: PatternGraph
    n: int
    seed: int
    trials: int
    tried: int
    witness: EdgeMapping | None
    expected_copies: float

    @property
    def conclusive(self) -> bool:
        return self.witness is not None


def monte_carlo_w_witness(
    G: PatternGraph, n: int, trials: int = 2000, seed: int = 0
) -> MonteCarloReport:
    """Randomized hunt for a moved-clear mapping with no exclusive copy of G.

    Draws mappings uniformly per edge and keeps the first that detection
    clears.  The companion value exp(k ln n - 2m(k-2)/(n-2)) estimates the
    surviving labeled-copy count under that model; below 1, witnesses
    should be abundant.  Coming up empty is inconclusive and the report
    says which.  Fixed seed, fixed outcome.
    """
    if n < 4:
        raise ValueError("moved-clear mappings need n >= 4")
    if trials < 1:
        raise ValueError("need at least one trial")
    expected = math.exp(G.k * math.log(n) - 2.0 * G.m * (G.k - 2) / (n - 2))
    rng = random.Random(seed)
    cls = MappingClass("disjoint")
    for t in range(trials):
        f = random_mapping(n, rng, cls)
        if detect.find_exclusive(f, G) is None:
            return MonteCarloReport(G, n, seed, trials, t + 1, f, expected)
    return MonteCarloReport(G, n, seed, trials, trials, None, expected)


# ---------------------------------------------------------------------------
# parameter assembly


_PARAMETERS = ("m", "m_star", "g", "w", "z")


def _avoidance_form(
    name: str, G: PatternGraph, H: PatternGraph | None, d: int
) -> tuple[MappingClass, tuple[tuple[str, PatternGraph], ...]]:
    if name == "m":
        return MappingClass("all"), (("fixed", G), ("free", H))
    if name == "m_star":
        return MappingClass("fixed_or_strong"), (("fixed", G), ("exclusive", H))
    if name == "g":
        if d not in (0, 1):
            raise ValueError("g takes overlap budget d of 0 or 1")
        kind = "overlap_le_1" if d == 1 else "disjoint"
        return MappingClass(kind), (("free", G),)
    if name == "w":
        return MappingClass("disjoint"), (("exclusive", G),)
    raise ValueError(f"unknown parameter {name!r}")


def _is_tree(G: PatternGraph) -> bool:
    return G.m == G.k - 1 and G.graph.is_connected()


def _valid_witness(
    mapping: EdgeMapping, klass: MappingClass, avoid: tuple[tuple[str, PatternGraph], ...]
) -> bool:
    if mapping.n < 1 or not klass.admits(mapping):
        return False
    return all(_FINDERS[rel](mapping, P) is None for rel, P in avoid)


def _construction_thunks(name: str, G: PatternGraph, H: PatternGraph | None, d: int):
    """Witness builders plausibly applicable to the parameter instance.
    Each is built and re-checked by the caller; failures just drop out."""
    thunks = []
    if name == "g":
        t = G.as_matching()
        if t == 2:
            thunks.append(lambda: constructions.small_exact_constructions("k4_involution"))
        if t == 3:
            thunks.append(lambda: constructions.small_exact_constructions("matching_3k2"))
        r = G.as_star()
        if r is not None and r >= 2:
            nn = 2 * r - 1
            thunks.append(
                lambda nn=nn, r=r: constructions.euler_partition(
                    SimpleGraph.empty(nn), SimpleGraph.complete(nn), r
                )
            )
    elif name == "w":
        if G.as_star() == 2:
            thunks.append(
                lambda: constructions.small_exact_constructions("pentagon_involution")
            )
        if G.as_matching() == 2:
            thunks.append(lambda: constructions.small_exact_constructions("z7_difference"))
    elif name in ("m", "m_star") and H is not None:
        r = H.as_star()
        tree = _is_tree(G)
        if name == "m" and H.as_matching() == 2 and tree:
            thunks.append(lambda k=G.k: constructions.star_shift(k))
        if r is not None and r >= 2:
            if G.chi >= 3:
                thunks.append(
                    lambda chi=G.chi, r=r: constructions.chromatic_blocks(chi, r)
                )
            if tree and name == "m":
                for variant in (1, 3, 4):
                    thunks.append(
                        lambda k=G.k, r=r, v=variant: constructions.frobenius_tree_lower(
                            k, r, v
                        )
                    )
            if (
                tree
                and name == "m_star"
                and G.k >= 3
                and G.k % 2 == 1
                and (2 * r - 2) % (G.k - 1) == 0
            ):
                thunks.append(
                    lambda k=G.k, r=r: constructions.cycle_decomp_star_exclusive(k, r)
                )
    return thunks


def _ex_for(n: int, P: PatternGraph):
    """Extremal count with provenance, falling back to the density assumption
    for trees that did not opt in themselves (the flags say when it fired)."""
    try:
        return ex_value(n, P)
    except ValueError:
        if _is_tree(P) and not P.est_assumed:
            try:
                return ex_value(n, replace(P, est_assumed=True))
            except ValueError:
                return None
        return None


def _certify_at(
    name: str, G: PatternGraph, H: PatternGraph | None, d: int, n: int
) -> tuple[str, tuple[str, ...]] | None:
    """Which certifier, if any, asserts the parameter is at most n."""
    if name == "g":
        if d == 1:
            t = G.as_matching()
            if t is not None and t >= 2:
                try:
                    if g_matching_certify(t, n):
                        return ("matching-count certifier", ())
                except ValueError:
                    pass
            if G.m >= 2:
                try:
                    if g_degree_check(G, n):
                        return ("degree-profile certifier", ())
                except ValueError:
                    pass
        else:
            if G.k >= 3 and G.m >= 2:
                try:
                    if g_strong_sound(G.k, G.m, n):
                        return ("moved-clear counting certifier", ())
                except ValueError:
                    pass
        return None
    if name in ("m", "m_star"):
        exg = _ex_for(n, G)
        if exg is None:
            return None
        if name == "m":
            r = H.as_star()
            if r is not None:
                try:
                    if free_star_certify(n, exg.value, r):
                        return ("free-star tally certifier", exg.flags)
                except ValueError:
                    pass
            else:
                try:
                    if m_counting_certify(n, exg.value, H):
                        return ("copy-counting certifier", exg.flags)
                except ValueError:
                    pass
                if H.as_matching() == 2 and n >= 7:
                    try:
                        if shifted_budget_certify(n, exg.value, n):
                            return (
                                "moved-support budget certifier",
                                exg.flags + (EXTERNAL_CAPACITY,),
                            )
                    except ValueError:
                        pass
            return None
        r = H.as_star()
        if r is not None and r >= 2:
            try:
                if exclusive_star_certify(n, exg.value, r):
                    return ("exclusive-star tally certifier", exg.flags)
            except ValueError:
                pass
        t = H.as_matching()
        if t is not None:
            try:
                if exclusive_matching_certify(n, exg.value, t):
                    return ("exclusive-matching count certifier", exg.flags)
            except ValueError:
                pass
    return None


def _closed_form_uppers(
    name: str, G: PatternGraph, H: PatternGraph | None
) -> list[Bound]:
    out = []
    if name == "w":
        r = G.as_star()
        if r is not None and r >= 2:
            out.append(Bound(w_star_upper(r), "exclusive-star closed form"))
        kk = G.as_complete()
        if kk is not None and kk >= 4:
            rep = w_clique_bounds(kk)
            if rep.upper is not None:
                out.append(rep.upper)
        if G.k >= 4 and G.m >= 1:
            rep = w_bounds(G.k, G.m)
            if rep.upper is not None:
                out.append(rep.upper)
    elif name == "m_star" and H is not None:
        r = H.as_star()
        if r is not None and r >= 2 and _is_tree(G):
            flags = () if G.as_star() is not None else (ASSUMED_TREE_DENSITY,)
            out.append(
                Bound(tree_star_exclusive_upper(G.k, r), "tree-star closed form", flags)
            )
    return out


def compute_parameter(
    name: str,
    G: PatternGraph,
    H: PatternGraph | None = None,
    d: int = 1,
    n_max: int | None = None,
    options: SearchOptions | None = None,
    budget_per_n: float | None = 60.0,
) -> BoundReport:
    """Bracket a forcing threshold by search, certifiers, and constructions.

    Hosts are scanned upward; a witness (or an empty class, which cannot
    force anything) rules n out, the first exhaustion settles the value
    exactly.  When the scan hits its feasibility cap or budget first, the
    report combines the verified floor with construction witnesses below
    and the least host a certifier clears above.  A witness at n is read as
    the threshold exceeding n, matching how these quantities behave on
    every instance decided here.  Search exactness is preferred even when a
    certifier would close the same value.
    """
    if name not in _PARAMETERS:
        raise ValueError(f"unknown parameter {name!r}, expected one of {_PARAMETERS}")
    if name in ("m", "m_star", "z") and H is None:
        raise ValueError(f"parameter {name} needs a second pattern")
    if name in ("g", "w") and H is not None:
        raise ValueError(f"parameter {name} takes a single pattern")

    if name == "z":
        label = f"z({G}, {H})"
        cap = min(8, n_max) if n_max is not None else 8
        floor = 1
        for n in range(2, cap + 1):
            if z_via_coloring(G, H, n):
                floor = n
                continue
            b = Bound(n, "two-coloring enumeration")
            return BoundReport(label, lower=b, upper=b)
        return BoundReport(
            label, lower=Bound(floor + 1, "two-coloring enumeration"), upper=None
        )

    klass, avoid = _avoidance_form(name, G, H, d)
    if name == "g":
        label = f"g({G}, d={d})"
    elif name == "w":
        label = f"w({G})"
    else:
        label = f"{name}({G}, {H})"

    opts = options or SearchOptions()
    if opts.budget is None and budget_per_n is not None:
        opts = replace(opts, budget=budget_per_n)

    scan_cap = ENVELOPE[klass.kind]
    if n_max is not None:
        scan_cap = min(scan_cap, n_max)
    floor = 1
    exact: int | None = None
    for n in range(2, scan_cap + 1):
        if klass.is_empty(n):
            floor = n
            continue
        out = exists_avoiding(AvoidanceSpec(n, klass, avoid), opts)
        if out.verdict == "WITNESS":
            floor = n
            continue
        if out.verdict == "EXHAUSTED":
            exact = n
        break

    if exact is not None:
        b = Bound(exact, "exhaustive avoidance search")
        return BoundReport(label, lower=b, upper=b)

    lower = Bound(max(2, floor + 1), "exhaustive avoidance search below")
    for thunk in _construction_thunks(name, G, H, d):
        try:
            res = thunk()
        except (ValueError, RuntimeError):
            continue
        wn = res.mapping.n
        if wn + 1 > lower.value and _valid_witness(res.mapping, klass, avoid):
            lower = Bound(wn + 1, f"construction: {res.provenance} on {wn} vertices")

    upper: Bound | None = None
    cert_cap = n_max if n_max is not None else 64
    for n in range(2, cert_cap + 1):
        hit = _certify_at(name, G, H, d, n)
        if hit is not None:
            upper = Bound(n, hit[0], hit[1])
            break
    for cand in _closed_form_uppers(name, G, H):
        if upper is None or cand.value < upper.value:
            upper = cand

    return BoundReport(label, lower=lower, upper=upper)

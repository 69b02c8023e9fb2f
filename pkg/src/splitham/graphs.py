"""Core graph types: simple graphs, split partitions, star witnesses.

Vertices are 1-based integer ids. Graphs are immutable once built; adjacency
is stored CSR-style in numpy arrays so that clique-heavy instances (m ~ n^2/8
at n = 10^4) stay cheap, with per-vertex Python sets materialized lazily for
the small-graph code paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GraphError(ValueError):
    pass


class OutOfRangeVertex(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class SNotInClique(GraphError):
    pass


class TooSmall(GraphError):
    pass


@dataclass(frozen=True)
class StarWitness:
    """An induced K_{1,t}: center adjacent to t pairwise non-adjacent leaves."""

    center: int
    leaves: frozenset[int]

    @property
    def t(self) -> int:
        return len(self.leaves)


@dataclass(frozen=True)
class NotSplitWitness:
    """Induced C4, C5 or 2K2 certifying that a graph is not split."""

    kind: str  # "C4" | "C5" | "2K2"
    vertices: tuple[int, ...]  # cycle order for C4/C5, (a,b,c,d) with ab,cd edges for 2K2


class NotSplit(GraphError):
    def __init__(self, witness: NotSplitWitness):
        super().__init__(f"graph is not split: induced {witness.kind} on {witness.vertices}")
        self.witness = witness


class Graph:
    """Undirected simple graph on vertices 1..n."""

    __slots__ = ("n", "m", "_indptr", "_indices", "_sets")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = n
        self.m = len(indices) // 2
        self._indptr = indptr
        self._indices = indices
        self._sets: list[set[int]] | None = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        if n < 0:
            raise GraphError("negative vertex count")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GraphError("edges must be pairs")
        if arr.size:
            if arr.min() < 1 or arr.max() > n:
                bad = arr[(arr < 1).any(axis=1) | (arr > n).any(axis=1)][0]
                raise OutOfRangeVertex(f"edge {tuple(bad)} out of range 1..{n}")
            if (arr[:, 0] == arr[:, 1]).any():
                v = int(arr[arr[:, 0] == arr[:, 1]][0][0])
                raise SelfLoop(f"self-loop at vertex {v}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if arr.size:
            key = lo * np.int64(n + 1) + hi
            _, uniq = np.unique(key, return_index=True)
            lo, hi = lo[uniq], hi[uniq]
        heads = np.concatenate([lo, hi])
        tails = np.concatenate([hi, lo])
        order = np.lexsort((tails, heads))
        heads, tails = heads[order], tails[order]
        indptr = np.zeros(n + 2, dtype=np.int64)
        np.add.at(indptr, heads + 1, 1)
        np.cumsum(indptr, out=indptr)
        return Graph(n, indptr, tails.astype(np.int32))

    # -- queries -----------------------------------------------------------

    def neighbors(self, v: int) -> np.ndarray:
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)[1:]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def adjacency_sets(self) -> list[set[int]]:
        """Per-vertex neighbor sets, index 0 unused. Built once, cached."""
        if self._sets is None:
            self._sets = [set()] + [set(self.neighbors(v).tolist())
                                    for v in range(1, self.n + 1)]
        return self._sets

    def count_neighbors_in(self, mask: np.ndarray) -> np.ndarray:
        """For every vertex v (1..n) the number of neighbors u with mask[u].

        mask is a bool array of length n+1 indexed by vertex id.
        """
        cs = np.concatenate([[0], np.cumsum(mask[self._indices], dtype=np.int64)])
        return cs[self._indptr[2:]] - cs[self._indptr[1:-1]]

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self):
        for v in self.vertices():
            for u in self.neighbors(v):
                if u > v:
                    yield (v, int(u))

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self._indptr, other._indptr)
                and np.array_equal(self._indices, other._indices))

    def __hash__(self):
        return hash((self.n, self.m, self._indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SplitPartition:
    """A (K, I) split with K a maximum clique."""

    clique: frozenset[int]
    independent: frozenset[int]

    def side(self, v: int) -> str:
        return "K" if v in self.clique else "I"


def build_graph(n: int, edges) -> Graph:
    """Build a simple graph; rejects out-of-range vertices and self-loops,
    deduplicates parallel/reversed edge listings."""
    return Graph.from_edges(n, edges)


# -- connectivity ------------------------------------------------------------

def _component_of(g: Graph, start: int, blocked: set[int] | frozenset[int] = frozenset()) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            u = int(u)
            if u not in seen and u not in blocked:
                seen.add(u)
                stack.append(u)
    return seen


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    if g.n > 4096:  # scipy's C BFS; pure-python traversal is too slow here
        from scipy.sparse import csgraph, csr_matrix
        mat = csr_matrix((np.ones(len(g._indices), dtype=np.int8),
                          g._indices - 1, g._indptr[1:]), shape=(g.n, g.n))
        return csgraph.connected_components(mat, directed=False, return_labels=False) == 1
    return len(_component_of(g, 1)) == g.n


def is_2connected(g: Graph) -> bool:
    """Connected with no cut vertex; requires n >= 3."""
    if g.n < 3:
        raise TooSmall("2-connectivity needs n >= 3")
    if not is_connected(g):
        return False
    for v in g.vertices():
        rest = [u for u in g.vertices() if u != v]
        if len(_component_of(g, rest[0], blocked={v})) != g.n - 1:
            return False
    return True


def components_after_removal(g: Graph, removed) -> int:
    """Number of connected components of G - S."""
    blocked = set(removed)
    count = 0
    seen: set[int] = set()
    for v in g.vertices():
        if v in blocked or v in seen:
            continue
        seen |= _component_of(g, v, blocked=frozenset(blocked))
        count += 1
    return count


# -- split recognition -------------------------------------------------------

def _find_not_split_witness(g: Graph) -> NotSplitWitness:
    """Search an induced C4, then 2K2, then C5. Guaranteed to find one when
    the degree-sequence test failed (split graphs are exactly the
    {C4, C5, 2K2}-free graphs)."""
    adj = g.adjacency_sets()
    verts = list(g.vertices())
    # C4: non-adjacent u,v with two non-adjacent common neighbors
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if v in adj[u]:
                continue
            common = sorted(adj[u] & adj[v])
            for a in range(len(common)):
                for b in range(a + 1, len(common)):
                    x, y = common[a], common[b]
                    if y not in adj[x]:
                        return NotSplitWitness("C4", (u, x, v, y))
    # 2K2: disjoint edges with no cross edge
    edge_list = list(g.edges())
    for i, (a, b) in enumerate(edge_list):
        nab = adj[a] | adj[b] | {a, b}
        for c, d in edge_list[i + 1:]:
            if c not in nab and d not in nab:
                return NotSplitWitness("2K2", (a, b, c, d))
    # C5: induced 5-cycle
    for a in verts:
        for b in sorted(adj[a]):
            if b < a:
                continue
            for c in sorted(adj[b]):
                if c == a or c in adj[a]:
                    continue
                for d in sorted(adj[c]):
                    if d in (a, b) or d in adj[a] or d in adj[b]:
                        continue
                    for e in sorted(adj[d] & adj[a]):
                        if e in (b, c) or e in adj[b] or e in adj[c]:
                            return NotSplitWitness("C5", (a, b, c, d, e))
    raise AssertionError("splittance positive but no forbidden subgraph found")


def try_split_partition(g: Graph) -> SplitPartition | NotSplitWitness:
    """Degree-sequence split recognition (Hammer-Simeone).

    Sort degrees non-increasingly (ties by smaller id first), take
    h = max{i : d_i >= i-1}; the graph is split iff
    sum_{i<=h} d_i = h(h-1) + sum_{i>h} d_i, and then the top-h vertices
    form a maximum clique. If some I-vertex is adjacent to all of K it is
    moved into K (smallest id first), preserving maximality.
    """
    n = g.n
    if n == 0:
        return SplitPartition(frozenset(), frozenset())
    deg = g.degrees()
    order = sorted(g.vertices(), key=lambda v: (-deg[v - 1], v))
    d = [int(deg[v - 1]) for v in order]
    h = 0
    for i in range(1, n + 1):
        if d[i - 1] >= i - 1:
            h = i
    if sum(d[:h]) != h * (h - 1) + sum(d[h:]):
        return _find_not_split_witness(g)
    clique = set(order[:h])
    indep = set(order[h:])
    # safety adjustment: keep K maximum (only degree >= |K| candidates can qualify)
    moved = True
    while moved:
        moved = False
        for v in sorted(indep):
            if g.degree(v) >= len(clique) and all(g.has_edge(v, w) for w in clique):
                indep.discard(v)
                clique.add(v)
                moved = True
                break
    part = SplitPartition(frozenset(clique), frozenset(indep))
    _check_partition(g, part)
    return part


def split_partition(g: Graph) -> SplitPartition:
    """As try_split_partition but raising NotSplit with the witness."""
    res = try_split_partition(g)
    if isinstance(res, NotSplitWitness):
        raise NotSplit(res)
    return res


def _check_partition(g: Graph, p: SplitPartition) -> None:
    mask_k = np.zeros(g.n + 1, dtype=bool)
    mask_k[list(p.clique)] = True
    counts = g.count_neighbors_in(mask_k)
    for w in p.clique:
        if counts[w - 1] != len(p.clique) - 1:
            raise AssertionError(f"clique side not complete at {w}")
    for u in p.independent:
        if counts[u - 1] != g.degree(u):
            raise AssertionError(f"independent side has an internal edge at {u}")


# -- partition-aware helpers -------------------------------------------------

def neighborhood_I(p: SplitPartition, g: Graph, S) -> set[int]:
    """N(S) ∩ I for S ⊆ K."""
    S = set(S)
    if not S <= p.clique:
        raise SNotInClique(f"{sorted(S - p.clique)} not in clique side")
    out: set[int] = set()
    for v in S:
        out.update(int(u) for u in g.neighbors(v) if u in p.independent)
    return out


def d_I(p: SplitPartition, g: Graph, v: int) -> int:
    return len(neighborhood_I(p, g, {v}))


def d_I_counts(p: SplitPartition, g: Graph) -> np.ndarray:
    """d^I(v) for every vertex (0 for I-vertices), indexed by vertex id."""
    mask_i = np.zeros(g.n + 1, dtype=bool)
    if p.independent:
        mask_i[list(p.independent)] = True
    counts = np.zeros(g.n + 1, dtype=np.int64)
    counts[1:] = g.count_neighbors_in(mask_i)
    if p.independent:
        counts[list(p.independent)] = 0
    return counts


def delta_I(p: SplitPartition, g: Graph) -> int:
    if not p.clique or not p.independent:
        return 0
    return int(d_I_counts(p, g)[list(p.clique)].max())


def induced_subgraph(g: Graph, keep) -> tuple["Graph", list[int]]:
    """Induced subgraph on `keep`, renumbered 1..len(keep).

    Returns (subgraph, old_of_new) with old_of_new[new_id] = original id
    (index 0 unused).
    """
    keep_sorted = sorted(keep)
    new_of = {v: i + 1 for i, v in enumerate(keep_sorted)}
    edges = []
    for v in keep_sorted:
        for u in g.neighbors(v).tolist():
            if u > v and u in new_of:
                edges.append((new_of[v], new_of[u]))
    return Graph.from_edges(len(keep_sorted), edges), [0] + keep_sorted


# -- induced stars ------------------------------------------------------------

def is_star_free(g: Graph, t: int, partition: SplitPartition | None = None):
    """True iff g has no induced K_{1,t}; otherwise one StarWitness.

    Deterministic: centers ascending, leaves chosen greedily smallest-first,
    so the witness is the lexicographically first found by this search order.
    For split graphs with a partition the search is specialized: a star center
    with >= 2 independent leaves must lie in K, leaves are I-vertices plus at
    most one K-vertex.
    """
    if t < 2:
        raise GraphError("t must be >= 2")
    if partition is not None:
        return _split_star_free(g, t, partition)
    adj = g.adjacency_sets()
    for c in g.vertices():
        nbrs = sorted(adj[c])
        if len(nbrs) < t:
            continue
        ind = _greedy_independent(adj, nbrs, t)
        if ind is not None:
            return StarWitness(c, frozenset(ind))
    return True


def _greedy_independent(adj, candidates, t):
    """Exact search for an independent t-subset among candidates (small t)."""
    picked: list[int] = []

    def rec(idx: int) -> bool:
        if len(picked) == t:
            return True
        if len(candidates) - idx < t - len(picked):
            return False
        for j in range(idx, len(candidates)):
            v = candidates[j]
            if all(v not in adj[u] for u in picked):
                picked.append(v)
                if rec(j + 1):
                    return True
                picked.pop()
        return False

    return list(picked) if rec(0) else None


def _split_star_free(g: Graph, t: int, p: SplitPartition):
    """Split-graph specialization.

    In a split graph an induced K_{1,t>=2} has its center in K and at most
    one leaf in K. So a witness exists iff some w in K has d^I(w) >= t
    (all-I leaves), or d^I(w) = t-1 and some other clique vertex is adjacent
    to none of N^I(w) (t-1 I-leaves plus that K-leaf).
    """
    if not p.clique:
        return True
    k_sorted = sorted(p.clique)
    dI = d_I_counts(p, g)
    for w in k_sorted:
        if dI[w] >= t:
            nI = sorted(u for u in g.neighbors(w).tolist() if u in p.independent)
            return StarWitness(w, frozenset(nI[:t]))
    kidx = {w: i for i, w in enumerate(k_sorted)}
    full_words = (len(k_sorted) + 63) // 64
    full = np.full(full_words, ~np.uint64(0), dtype=np.uint64)
    slack = len(k_sorted) % 64
    if slack:
        full[-1] = np.uint64((1 << slack) - 1)
    for w in k_sorted:
        if dI[w] != t - 1:
            continue
        nI = sorted(u for u in g.neighbors(w).tolist() if u in p.independent)
        cover = np.zeros(full_words, dtype=np.uint64)
        for u in nI:
            for x in g.neighbors(u).tolist():
                i = kidx.get(x)
                if i is not None:
                    cover[i >> 6] |= np.uint64(1 << (i & 63))
        hole = full & ~cover
        if hole.any():
            word = int(np.flatnonzero(hole)[0])
            low = (int(hole[word]) & -int(hole[word])).bit_length() - 1
            w2 = k_sorted[(word << 6) + low]
            return StarWitness(w, frozenset(nI + [w2]))
    return True

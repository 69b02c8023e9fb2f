"""Exact Hamiltonian path/cycle oracles and small split-graph enumeration.

Ground truth for everything else in the package: a layered bitmask DP over
(visited set, last vertex) up to ``max_n`` vertices, and a degree-pruned
backtracking search with a node budget beyond that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, SplitPartition, build_graph, split_partition, try_split_partition

NO = None  # verdict alias: oracles return a path/cycle list or None


class BudgetExceeded(RuntimeError):
    pass


class NTooLarge(ValueError):
    pass


class TooSmall(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 20          # bitmask DP vertex cap (memory: 2^n dp cells)
    max_nodes: int = 5_000_000  # backtracking node cap beyond max_n

    def __post_init__(self):
        if self.max_n > 25:
            raise ValueError("max_n capped at 25 (2^n DP states)")


DEFAULT_BUDGET = OracleBudget()

# per-n cache: masks sorted by popcount and the layer boundaries
_LAYER_CACHE: dict[int, tuple[np.ndarray, list[slice]]] = {}


def _layers(n: int) -> tuple[np.ndarray, list[slice]]:
    got = _LAYER_CACHE.get(n)
    if got is not None:
        return got
    masks = np.arange(1 << n, dtype=np.uint32)
    pop = np.zeros(1 << n, dtype=np.uint8)
    for b in range(n):
        pop += ((masks >> np.uint32(b)) & np.uint32(1)).astype(np.uint8)
    order = np.argsort(pop, kind="stable").astype(np.uint32)
    bounds = np.searchsorted(pop[order], np.arange(n + 2))
    slices = [slice(int(bounds[k]), int(bounds[k + 1])) for k in range(n + 1)]
    got = (masks[order], slices)
    if n <= 20:  # keep the big tables only for reasonable n
        _LAYER_CACHE[n] = got
    return got


def _adj_bits(g: Graph) -> list[int]:
    bits = [0] * g.n
    for v in g.vertices():
        acc = 0
        for u in g.neighbors(v).tolist():
            acc |= 1 << (u - 1)
        bits[v - 1] = acc
    return bits


def _dp_table(g: Graph, start_mask_fixed: int | None = None) -> np.ndarray:
    """dp[mask] = bitset of vertices the states (mask, last) can end at.

    If start_mask_fixed is given only paths starting at that single vertex
    are considered (used for the cycle oracle).
    """
    n = g.n
    adj = np.array(_adj_bits(g), dtype=np.uint32)
    dp = np.zeros(1 << n, dtype=np.uint32)
    if start_mask_fixed is None:
        for v in range(n):
            dp[1 << v] = np.uint32(1 << v)
    else:
        dp[start_mask_fixed] = np.uint32(start_mask_fixed)
    sorted_masks, slices = _layers(n)
    for k in range(1, n):
        layer = sorted_masks[slices[k]]
        vals = dp[layer]
        nz = vals != 0
        if not nz.any():
            continue
        layer = layer[nz]
        vals = vals[nz]
        for u in range(n):
            bit = np.uint32(1 << u)
            sel = (layer & bit) == 0
            if not sel.any():
                continue
            cand = layer[sel]
            hit = (vals[sel] & adj[u]) != 0
            if not hit.any():
                continue
            tgt = cand[hit] | bit
            dp[tgt] |= bit
    return dp


def _walk_back(g: Graph, dp: np.ndarray, full: int, last_bit_choices: int) -> list[int]:
    adj = _adj_bits(g)
    mask = full
    avail = int(dp[full]) & last_bit_choices
    v = (avail & -avail).bit_length() - 1
    rev = [v + 1]
    while mask != (1 << v):
        prev = mask ^ (1 << v)
        cand = int(dp[prev]) & adj[v]
        assert cand, "DP table inconsistent"
        u = (cand & -cand).bit_length() - 1
        rev.append(u + 1)
        mask, v = prev, u
    return rev[::-1]


def ham_path_oracle(g: Graph, budget: OracleBudget = DEFAULT_BUDGET):
    """Exact Hamiltonian path: vertex list, or None.

    Raises BudgetExceeded only in backtracking mode (n > budget.max_n).
    Output canonicalized with the lexicographically smaller endpoint first.
    """
    if g.n < 1:
        raise ValueError("empty graph")
    if g.n == 1:
        return [1]
    if g.n <= budget.max_n:
        dp = _dp_table(g)
        full = (1 << g.n) - 1
        if dp[full] == 0:
            return None
        path = _walk_back(g, dp, full, (1 << g.n) - 1)
        return path if path[0] <= path[-1] else path[::-1]
    path = _backtrack_path(g, budget.max_nodes)
    if path is None:
        return None
    return path if path[0] <= path[-1] else path[::-1]


def ham_cycle_oracle(g: Graph, budget: OracleBudget = DEFAULT_BUDGET):
    """Exact Hamiltonian cycle: vertex list (closing edge implicit), or None."""
    if g.n < 3:
        raise TooSmall("Hamiltonian cycle needs n >= 3")
    if g.n <= budget.max_n:
        dp = _dp_table(g, start_mask_fixed=1)
        full = (1 << g.n) - 1
        adj0 = _adj_bits(g)[0]
        if int(dp[full]) & adj0 & ~1 == 0:
            return None
        cyc = _walk_back(g, dp, full, adj0 & ~1)
        # walk ends at vertex 1; canonicalize direction
        assert cyc[0] == 1
        if cyc[-1] < cyc[1]:
            cyc = [cyc[0]] + cyc[1:][::-1]
        return cyc
    cyc = _backtrack_cycle(g, budget.max_nodes)
    if cyc is None:
        return None
    if cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[1:][::-1]
    return cyc


def ham_path_bruteforce(g: Graph):
    """Permutation-enumeration oracle, n <= 8. Independent cross-check."""
    if g.n > 8:
        raise NTooLarge("bruteforce capped at n = 8")
    if g.n == 1:
        return [1]
    adj = g.adjacency_sets()
    for perm in itertools.permutations(g.vertices()):
        if all(perm[i + 1] in adj[perm[i]] for i in range(g.n - 1)):
            p = list(perm)
            return p if p[0] <= p[-1] else p[::-1]
    return None


# -- backtracking beyond the DP cap -------------------------------------------


def _backtrack_path(g: Graph, max_nodes: int):
    n = g.n
    adj = g.adjacency_sets()
    deg1 = [v for v in g.vertices() if g.degree(v) <= 1]
    if any(g.degree(v) == 0 for v in g.vertices()):
        return None
    if len(deg1) > 2:
        return None
    nodes = 0
    unvisited = set(g.vertices())

    def prune(end: int) -> bool:
        forced = 0
        for u in unvisited:
            eff = len(adj[u] & unvisited) + (1 if end in adj[u] else 0)
            if eff == 0:
                return True
            if eff == 1:
                forced += 1
                if forced > 1:
                    return True
        return False

    path: list[int] = []

    def rec(v: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"backtracking exceeded {max_nodes} nodes")
        path.append(v)
        unvisited.discard(v)
        if not unvisited:
            return True
        if not prune(v):
            for u in sorted(adj[v] & unvisited):
                if rec(u):
                    return True
        path.pop()
        unvisited.add(v)
        return False

    starts = deg1 if deg1 else list(g.vertices())
    for s in sorted(starts):
        if rec(s):
            return path
    return None


def _backtrack_cycle(g: Graph, max_nodes: int):
    n = g.n
    adj = g.adjacency_sets()
    if any(g.degree(v) < 2 for v in g.vertices()):
        return None
    nodes = 0
    unvisited = set(g.vertices())
    path = [1]
    unvisited.discard(1)

    def rec(v: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"backtracking exceeded {max_nodes} nodes")
        if not unvisited:
            return 1 in adj[v]
        for u in sorted(adj[v] & unvisited):
            path.append(u)
            unvisited.discard(u)
            if rec(u):
                return True
            path.pop()
            unvisited.add(u)
        return False

    return path if rec(1) else None


# -- canonical forms and exhaustive small split enumeration -------------------


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-canonical adjacency encoding (exact, meant for n <= 9).

    Iterated neighbor-color refinement, then the lexicographically minimal
    upper-triangle bitstring over all permutations respecting the refinement
    classes. Complete graphs short-circuit (single orbit).
    """
    n = g.n
    if n <= 1:
        return bytes([n])
    if g.m == n * (n - 1) // 2:
        return b"K" + bytes([n])
    adj = g.adjacency_sets()
    color = {v: g.degree(v) for v in g.vertices()}
    for _ in range(n):
        sig = {v: (color[v], tuple(sorted(color[u] for u in adj[v]))) for v in g.vertices()}
        relabel = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: relabel[sig[v]] for v in g.vertices()}
        if new == color:
            break
        color = new
    classes: dict[int, list[int]] = {}
    for v in g.vertices():
        classes.setdefault(color[v], []).append(v)
    ordered = [sorted(classes[c]) for c in sorted(classes)]
    best: bytes | None = None
    for parts in itertools.product(*[itertools.permutations(cl) for cl in ordered]):
        perm = [v for cl in parts for v in cl]  # position -> original vertex
        bits = 0
        b = 0
        for i in range(n):
            for j in range(i + 1, n):
                if perm[j] in adj[perm[i]]:
                    bits |= 1 << b
                b += 1
        enc = bits.to_bytes((b + 7) // 8, "big")
        if best is None or enc < best:
            best = enc
    return bytes([n]) + best


# -- exhaustive small split enumeration ---------------------------------------


def _mask_graph_is_connected(n: int, adj_bits: list[int]) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= adj_bits[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def _mask_graph_is_split(n: int, adj_bits: list[int]) -> bool:
    degs = sorted((bin(a).count("1") for a in adj_bits), reverse=True)
    h = 0
    for i in range(1, n + 1):
        if degs[i - 1] >= i - 1:
            h = i
    return sum(degs[:h]) == h * (h - 1) + sum(degs[h:])


def enumerate_small_split(n: int, mode: str | None = None):
    """Yield (Graph, SplitPartition) for connected split graphs on n vertices.

    mode="labeled": every labeled graph (n <= 7).
    mode="representatives": one graph per isomorphism class (n <= 9).
    Default: labeled for n <= 7, representatives for n in {8, 9}.
    """
    if n > 9:
        raise NTooLarge("enumeration capped at n = 9")
    if n < 1:
        return
    if mode is None:
        mode = "labeled" if n <= 7 else "representatives"
    if mode == "labeled":
        if n > 7:
            raise NTooLarge("labeled enumeration capped at n = 7")
        yield from _enumerate_labeled(n)
    elif mode == "representatives":
        yield from _enumerate_representatives(n)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def _enumerate_labeled(n: int):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    npairs = len(pairs)
    for code in range(1 << npairs):
        adj_bits = [0] * n
        edges = []
        c = code
        b = 0
        while c:
            if c & 1:
                i, j = pairs[b]
                adj_bits[i] |= 1 << j
                adj_bits[j] |= 1 << i
                edges.append((i + 1, j + 1))
            c >>= 1
            b += 1
        if not _mask_graph_is_connected(n, adj_bits):
            continue
        if not _mask_graph_is_split(n, adj_bits):
            continue
        g = build_graph(n, edges)
        yield g, split_partition(g)


def _canon_multiset_key(k: int, masks: tuple[int, ...]) -> tuple:
    """Canonical key of a multiset of K-neighborhoods under S_k.

    Exact: full permutation search for k <= 5; Venn-cell signature for at
    most 3 distinct sets (which covers k >= 6 since then |I| = n-k <= 3).
    """
    if k <= 5:
        best = None
        for perm in itertools.permutations(range(k)):
            imgs = tuple(sorted(sum(1 << perm[b] for b in range(k) if m >> b & 1)
                                for m in masks))
            if best is None or imgs < best:
                best = imgs
        return ("perm", k, best)
    assert len(masks) <= 3
    sig_best = None
    for perm in itertools.permutations(range(len(masks))):
        ms = [masks[p] for p in perm]
        while len(ms) < 3:
            ms.append(0)
        a, b, c = ms
        cells = (
            bin(a & ~b & ~c).count("1"), bin(b & ~a & ~c).count("1"),
            bin(c & ~a & ~b).count("1"), bin(a & b & ~c).count("1"),
            bin(a & c & ~b).count("1"), bin(b & c & ~a).count("1"),
            bin(a & b & c).count("1"),
        )
        if sig_best is None or cells < sig_best:
            sig_best = cells
    return ("venn", k, len(masks), sig_best)


def _enumerate_representatives(n: int):
    seen_canon: set[bytes] = set()
    for k in range(1, n + 1):
        i_cnt = n - k
        if i_cnt == 0:
            g = build_graph(n, [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)])
            if n >= 1:
                yield g, split_partition(g)
            continue
        nonempty = range(1, 1 << k)
        seen_keys: set[tuple] = set()
        for combo in itertools.combinations_with_replacement(nonempty, i_cnt):
            if any(m == (1 << k) - 1 for m in combo) and k < n:
                continue  # I-vertex adjacent to all of K: belongs to k+1 enumeration
            key = _canon_multiset_key(k, combo)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            edges = [(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1)]
            for idx, m in enumerate(combo):
                v = k + 1 + idx
                for b in range(k):
                    if m >> b & 1:
                        edges.append((b + 1, v))
            g = build_graph(n, edges)
            part = try_split_partition(g)
            if isinstance(part, SplitPartition) and len(part.clique) == k:
                canon = canonical_form(g)
                if canon not in seen_canon:
                    seen_canon.add(canon)
                    yield g, part

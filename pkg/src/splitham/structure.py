"""Restricted bipartite subgraph H, its piece decomposition, and refutations.

H lives on V_a = {u in I : d(u) <= 2} and V_b = N(V_a). Because every edge
of a V_a vertex goes to the clique, all of its edges are H-edges, so maximal
H-paths ending in I end at vertices of full degree <= 1 in the host graph.
Under Delta^I <= 2, and under K_{1,4}-free Delta^I = 3 with |K| >= 5, every
V_b vertex has H-degree <= 2 and H decomposes into paths and cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, SplitPartition, components_after_removal

II_PATH = "II_PATH"
IK_PATH = "IK_PATH"
KK_PATH = "KK_PATH"
CYCLE = "CYCLE"


class NotDecomposable(RuntimeError):
    """H has a V_b vertex of degree >= 3; no path/cycle decomposition."""


class NotAViolation(RuntimeError):
    """Claimed refutation failed its own re-check; upstream bug."""


@dataclass(frozen=True)
class RestrictedSubgraph:
    va: frozenset[int]
    vb: frozenset[int]
    adj: dict[int, tuple[int, ...]]  # H-adjacency for va|vb vertices
    host_n: int

    def degree(self, v: int) -> int:
        return len(self.adj.get(v, ()))

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for v, nbrs in self.adj.items():
            for u in nbrs:
                out.add((min(u, v), max(u, v)))
        return frozenset(out)


@dataclass(frozen=True)
class ClassifiedPiece:
    kind: str
    vertices: tuple[int, ...]
    is_short: bool

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class StructureReport:
    pieces: tuple[ClassifiedPiece, ...]
    short_cycles: int
    short_ii_paths: int
    ik_paths: int
    property_a: bool


@dataclass(frozen=True)
class CutSetWitness:
    vertices: tuple[int, ...]


def restricted_subgraph(g: Graph, p: SplitPartition,
                        exclude: frozenset[int] = frozenset()) -> RestrictedSubgraph:
    """H of the host graph, or of G - exclude for exclude a subset of I.

    Removing I-vertices leaves the other I-degrees unchanged, so the
    restricted subgraph of G - exclude is exactly H minus those vertices.
    """
    assert exclude <= p.independent
    va = set()
    adj: dict[int, tuple[int, ...]] = {}
    vb: set[int] = set()
    for u in p.independent:
        if u in exclude:
            continue
        if g.degree(u) <= 2:
            va.add(u)
    for u in va:
        nbrs = tuple(int(x) for x in g.neighbors(u))
        adj[u] = nbrs
        vb.update(nbrs)
    back: dict[int, list[int]] = {w: [] for w in vb}
    for u in sorted(va):
        for w in adj[u]:
            back[w].append(u)
    for w, lst in back.items():
        adj[w] = tuple(lst)
    return RestrictedSubgraph(frozenset(va), frozenset(vb), adj, g.n)


def decompose(h: RestrictedSubgraph, p: SplitPartition) -> list[ClassifiedPiece]:
    """Maximal paths and cycles of H, classified and orientation-normalized.

    II paths lead with their smaller I-end, KK with their smaller K-end,
    IK paths lead with the K-end; cycles start at their smallest K-vertex
    heading toward its smaller neighbor. Pieces are returned sorted by
    smallest contained vertex.
    """
    for w in h.vb:
        if h.degree(w) >= 3:
            raise NotDecomposable(f"V_b vertex {w} has H-degree {h.degree(w)}")
    verts = sorted(h.va | h.vb)
    seen: set[int] = set()
    pieces: list[ClassifiedPiece] = []

    def walk(start: int, prev: int | None) -> list[int]:
        out = [start]
        cur, last = start, prev
        while True:
            nxt = [u for u in h.adj.get(cur, ()) if u != last]
            if not nxt:
                return out
            last, cur = cur, nxt[0]
            if cur == start:
                return out  # closed a cycle
            out.append(cur)

    # paths first: start from endpoints (H-degree <= 1)
    for v in verts:
        if v in seen or h.degree(v) > 1:
            continue
        path = walk(v, None)
        seen.update(path)
        pieces.append(_classify_path(path, p, h.host_n))
    # remaining vertices lie on cycles
    for v in verts:
        if v in seen:
            continue
        cyc = walk(v, None)
        seen.update(cyc)
        pieces.append(_classify_cycle(cyc, p, h.host_n))
    pieces.sort(key=lambda pc: min(pc.vertices))
    return pieces


def _classify_path(path: list[int], p: SplitPartition, host_n: int) -> ClassifiedPiece:
    a_side, b_side = p.side(path[0]), p.side(path[-1])
    short = len(path) < host_n
    if a_side == "I" and b_side == "I":
        kind = II_PATH
        if path[-1] < path[0]:
            path = path[::-1]
    elif a_side == "K" and b_side == "K":
        kind = KK_PATH
        if path[-1] < path[0]:
            path = path[::-1]
    else:
        kind = IK_PATH
        if a_side != "K":
            path = path[::-1]
    for i, v in enumerate(path):  # strict alternation holds by construction
        assert (p.side(v) == p.side(path[0])) == (i % 2 == 0)
    return ClassifiedPiece(kind, tuple(path), short)


def _classify_cycle(cyc: list[int], p: SplitPartition, host_n: int) -> ClassifiedPiece:
    assert len(cyc) % 2 == 0 and len(cyc) >= 4
    ks = [v for v in cyc if p.side(v) == "K"]
    start = cyc.index(min(ks))
    rot = cyc[start:] + cyc[:start]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    for i, v in enumerate(rot):
        assert (p.side(v) == "K") == (i % 2 == 0), "cycle must alternate K/I"
    return ClassifiedPiece(CYCLE, tuple(rot), len(rot) < host_n)


def structure_report(g: Graph, p: SplitPartition,
                     exclude: frozenset[int] = frozenset()) -> StructureReport:
    h = restricted_subgraph(g, p, exclude)
    pieces = decompose(h, p)
    sc = sum(1 for pc in pieces if pc.kind == CYCLE and pc.is_short)
    sii = sum(1 for pc in pieces if pc.kind == II_PATH and pc.is_short)
    ik = sum(1 for pc in pieces if pc.kind == IK_PATH)
    size_ok = len(p.clique) >= len(p.independent) - 1 >= 8
    prop_a = size_ok and sii == 0 and (ik + sc) <= 2
    return StructureReport(tuple(pieces), sc, sii, ik, prop_a)


def refutation_from_short_ii(g: Graph, piece: ClassifiedPiece) -> CutSetWitness:
    """Chvátal cut from a short I-I path: S = V(piece) ∩ K, re-checked."""
    if piece.kind != II_PATH or not piece.is_short:
        raise ValueError("piece must be a short I-I path")
    s = tuple(v for i, v in enumerate(piece.vertices) if i % 2 == 1)
    if components_after_removal(g, s) <= len(s) + 1:
        raise NotAViolation(f"S={s} does not violate the cut condition")
    return CutSetWitness(s)

"""Exact Hamiltonian-path decision for split graphs with few independent
vertices.

A Hamiltonian path in a split graph is an ordering of I with clique segments
between consecutive I-vertices: each junction uses either one shared
connector (adjacent to both sides) or two distinct connectors, and leftover
clique vertices are absorbed into any two-connector segment or a clique
prefix/suffix. Clique vertices with equal I-neighborhoods are
interchangeable, so the DP tracks per-neighborhood-class connector usage
over subsets of I: exponential in |I| only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, SplitPartition, is_connected, components_after_removal
from . import structure as st
from .certificates import (Certificate, Witness, yes_certificate, no_certificate,
                           CUTSET, TOO_MANY_DEGREE_ONE, SHORT_II_PATH, EXHAUSTIVE,
                           DISCONNECTED)


class IToLarge(ValueError):
    pass


SMALL_I_THRESHOLD = 12


def small_i_dp(g: Graph, p: SplitPartition,
               threshold: int = SMALL_I_THRESHOLD) -> Certificate:
    if len(p.independent) > threshold:
        raise IToLarge(f"|I| = {len(p.independent)} exceeds {threshold}")
    if not is_connected(g):
        return no_certificate(Witness(DISCONNECTED), trace=[("SmallDP", "disconnected")])
    i_list = sorted(p.independent)
    k_list = sorted(p.clique)
    if not i_list:
        return yes_certificate(k_list, trace=[("SmallDP", "clique-only")])
    sigma = len(i_list)
    idx = {v: i for i, v in enumerate(i_list)}
    # connector classes: clique vertices grouped by I-neighborhood bitmask
    mask_of: dict[int, int] = {}
    for w in k_list:
        m = 0
        for u in g.neighbors(w).tolist():
            j = idx.get(u)
            if j is not None:
                m |= 1 << j
        mask_of[w] = m
    class_masks = sorted({m for m in mask_of.values() if m})
    members: dict[int, list[int]] = {m: [] for m in class_masks}
    fillers: list[int] = []
    for w in k_list:
        (members[mask_of[w]] if mask_of[w] else fillers).append(w)
    counts = tuple(len(members[m]) for m in class_masks)
    ncls = len(class_masks)
    full = (1 << sigma) - 1
    have_filler = bool(fillers)

    # state: (placed mask, last I index, usage tuple, absorber flag)
    seen: set[tuple] = set()
    found: list | None = None

    def shared_options(a: int, b: int, usage):
        want = (1 << a) | (1 << b)
        for c in range(ncls):
            if class_masks[c] & want == want and usage[c] < counts[c]:
                yield c

    def free_options(a: int, b: int, usage):
        for c1 in range(ncls):
            if not class_masks[c1] >> a & 1:
                continue
            for c2 in range(ncls):
                if not class_masks[c2] >> b & 1:
                    continue
                need = 2 if c1 == c2 else 1
                if usage[c1] + (need if c1 == c2 else 1) <= counts[c1] \
                        and usage[c2] + 1 <= counts[c2]:
                    yield c1, c2

    def extend(mask: int, last: int, usage, absorber: bool, steps) -> bool:
        nonlocal found
        key = (mask, last, usage, absorber)
        if key in seen:
            return False
        seen.add(key)
        if mask == full:
            used = sum(usage)
            leftover = len(k_list) - used
            if leftover == 0 or absorber:
                found = (steps, ("endI",))
                return True
            for c in range(ncls):  # clique suffix after the final I-vertex
                if class_masks[c] >> last & 1 and usage[c] < counts[c]:
                    found = (steps, ("endK", c))
                    return True
            return False
        for j in range(sigma):
            if mask >> j & 1:
                continue
            for c in shared_options(last, j, usage):
                u2 = usage[:c] + (usage[c] + 1,) + usage[c + 1:]
                if extend(mask | 1 << j, j, u2, absorber,
                          steps + ((j, "shared", c),)):
                    return True
            for c1, c2 in free_options(last, j, usage):
                u2 = list(usage)
                u2[c1] += 1
                u2[c2] += 1
                if extend(mask | 1 << j, j, tuple(u2), True,
                          steps + ((j, "free", c1, c2),)):
                    return True
        return False

    zero = (0,) * ncls
    ok = False
    for j in range(sigma):  # start at an I-vertex
        if extend(1 << j, j, zero, False, (("startI", j),)):
            ok = True
            break
    if not ok:
        for j in range(sigma):  # start with a clique prefix
            done = False
            for c in range(ncls):
                if class_masks[c] >> j & 1:
                    u2 = zero[:c] + (1,) + zero[c + 1:]
                    if extend(1 << j, j, u2, True, (("startK", j, c),)):
                        ok = done = True
                        break
            if done:
                break
    if not ok:
        return no_certificate(_no_witness(g, p), trace=[("SmallDP", "exhausted")])
    path = _materialize(found, i_list, class_masks, members, fillers)
    return yes_certificate(path, trace=[("SmallDP", "dp")])


def _materialize(found, i_list, class_masks, members, fillers) -> list[int]:
    steps, end = found
    next_of = {m: 0 for m in class_masks}

    def take(c: int) -> int:
        m = class_masks[c]
        w = members[m][next_of[m]]
        next_of[m] += 1
        return w

    tokens: list[tuple] = []  # ("v", vertex) and at most one ("abs",) slot
    first = steps[0]
    if first[0] == "startI":
        tokens.append(("v", i_list[first[1]]))
    else:
        _, j, c = first
        tokens.append(("abs",))
        tokens.append(("v", take(c)))
        tokens.append(("v", i_list[j]))
    for stp in steps[1:]:
        if stp[1] == "shared":
            j, _, c = stp
            tokens.append(("v", take(c)))
            tokens.append(("v", i_list[j]))
        else:
            j, _, c1, c2 = stp
            tokens.append(("v", take(c1)))
            tokens.append(("abs",))
            tokens.append(("v", take(c2)))
            tokens.append(("v", i_list[j]))
    if end[0] == "endK":
        tokens.append(("v", take(end[1])))
        tokens.append(("abs",))
    leftovers = fillers + [members[m][i] for m in class_masks
                           for i in range(next_of[m], len(members[m]))]
    leftovers.sort()
    path: list[int] = []
    used_abs = False
    for t in tokens:
        if t[0] == "v":
            path.append(t[1])
        elif not used_abs and leftovers:
            path.extend(leftovers)
            used_abs = True
    assert used_abs or not leftovers, "leftover clique vertices but no absorber"
    return path


def _no_witness(g: Graph, p: SplitPartition) -> Witness:
    """Best refutation witness available; EXHAUSTIVE if none applies."""
    ones = sorted(v for v in p.independent if g.degree(v) == 1)
    if len(ones) >= 3:
        return Witness(TOO_MANY_DEGREE_ONE, vertices=tuple(ones))
    if len(p.independent) > len(p.clique) + 1:
        return Witness(CUTSET, vertices=tuple(sorted(p.clique)))
    try:
        rep = st.structure_report(g, p)
        for pc in rep.pieces:
            if pc.kind == st.II_PATH and pc.is_short:
                return Witness(SHORT_II_PATH, pieces=(pc.vertices,))
    except st.NotDecomposable:
        pass
    for w in sorted(p.clique):
        if components_after_removal(g, [w]) > 2:
            return Witness(CUTSET, vertices=(w,))
    return Witness(EXHAUSTIVE)

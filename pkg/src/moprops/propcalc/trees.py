"""Enumeration of decorated trees with a fixed leg profile."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from .dgraph import PLANAR, Comb, DGraph, HalfEdge, Vertex, canonical, comp
from .families import Family, words

Leg = tuple[int, tuple[int, ...]]  # (label, word)


def _set_partitions(items: tuple) -> Iterator[list[tuple]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1:]
        yield [(first,)] + part


def operad_trees(family: Family, out_word: tuple, leaves: Sequence[Leg], max_vertices: int | None = None) -> list[DGraph]:
    """All rooted trees of valid family corollas with the given leaves.

    Planar families use ordered children; otherwise one child order per
    set partition (the canonical form takes care of the rest). Internal
    edges run over all words.
    """
    planar = family.blocks("")[1] == PLANAR
    word_of = dict(leaves)
    k = family.k
    tag = "a" if planar else "l"

    @lru_cache(maxsize=None)
    def build(labels: frozenset, w: tuple) -> tuple:
        # structures: (vertex count, nested description)
        res = []
        labs = tuple(sorted(labels))
        for part in _set_partitions(labs):
            if len(part) < 2:
                continue
            orders = itertools.permutations(part) if planar else [tuple(part)]
            for order in orders:
                options = []
                for block in order:
                    if len(block) == 1:
                        options.append([(1, 0, ("leaf", block[0]), word_of[block[0]])])
                    else:
                        opts = []
                        for s in words(k):
                            for nv, sub in build(frozenset(block), s):
                                opts.append((0, nv, ("tree", sub, s), comp(s)))
                        options.append(opts)
                for combo in itertools.product(*options):
                    ins_words = tuple(c[3] for c in combo)
                    probe = Vertex(
                        tag, 2 - len(combo), (HalfEdge("L", -1, w),),
                        tuple(HalfEdge("L", -1, x) for x in ins_words),
                    )
                    if not family.valid(probe):
                        continue
                    nv = 1 + sum(c[1] for c in combo)
                    if max_vertices is not None and nv > max_vertices:
                        continue
                    res.append((nv, (w, tuple(c[2] for c in combo))))
        return tuple(res)

    out = []
    for _, desc in build(frozenset(word_of), out_word):
        out.append(_realize(k, tag, desc, word_of))
    return out


def _realize(k: int, tag: str, desc, word_of) -> DGraph:
    verts: list[Vertex] = []
    counter = itertools.count()

    def walk(d, out_he: HalfEdge) -> None:
        w, children = d
        slot = len(verts)
        verts.append(None)
        ins = []
        pending = []
        for ch in children:
            if ch[0] == "leaf":
                ins.append(HalfEdge("L", ch[1], word_of[ch[1]]))
            else:
                eid = next(counter)
                ins.append(HalfEdge("E", eid, comp(ch[2])))
                pending.append((ch[1], HalfEdge("E", eid, ch[2])))
        verts[slot] = Vertex(tag, 2 - len(ins), (out_he,), tuple(ins))
        for sub, he in pending:
            walk(sub, he)

    walk(desc, HalfEdge("L", 0, desc[0]))
    return DGraph(k, tuple(verts))


def unique(family: Family, graphs) -> list[DGraph]:
    """Canonical representatives, dropping graphs that vanish by symmetry."""
    seen = {}
    for g in graphs:
        key, s, cg = canonical(g, family.blocks)
        if s and key not in seen:
            seen[key] = cg
    return [seen[key] for key in sorted(seen)]


def dioperad_trees(
    family: Family,
    outs: Sequence[Leg],
    ins: Sequence[Leg],
    n_vertices: int,
    shapes: Sequence[tuple[str, int, int]],
) -> list[DGraph]:
    """Genus-zero graphs with ``n_vertices`` vertices of the given (tag, m, n) shapes.

    Brute force: grow trees one vertex at a time, then assign internal edge
    words and external legs in every way, keeping valid canonical graphs.
    """
    k = family.k
    M, N = len(outs), len(ins)
    results: dict = {}
    # skeleton: list of (tag, m, n) and edges (tail v, tail slot, head v, head slot)
    def grow(vs, edges):
        if len(vs) == n_vertices:
            yield vs, edges
            return
        used_out = {(t, ts) for t, ts, _, _ in edges}
        used_in = {(h, hs) for _, _, h, hs in edges}
        new = len(vs)
        for tag, m, n in shapes:
            for v, (_, vm, vn) in enumerate(vs):
                for s in range(vm):  # existing output -> new input
                    if (v, s) in used_out:
                        continue
                    for j in range(n):
                        yield from grow(vs + [(tag, m, n)], edges + [(v, s, new, j)])
                for s in range(vn):  # new output -> existing input
                    if (v, s) in used_in:
                        continue
                    for j in range(m):
                        yield from grow(vs + [(tag, m, n)], edges + [(new, j, v, s)])

    starts = ([(tag, m, n)] for tag, m, n in shapes)
    for start in starts:
        for vs, edges in grow(start, []):
            if sum(x[1] for x in vs) - len(edges) != M or sum(x[2] for x in vs) - len(edges) != N:
                continue
            used_out = {(t, ts) for t, ts, _, _ in edges}
            used_in = {(h, hs) for _, _, h, hs in edges}
            free_out = [(v, s) for v, x in enumerate(vs) for s in range(x[1]) if (v, s) not in used_out]
            free_in = [(v, s) for v, x in enumerate(vs) for s in range(x[2]) if (v, s) not in used_in]
            for po in itertools.permutations(outs):
                for pi in itertools.permutations(ins):
                    for ws in itertools.product(words(k), repeat=len(edges)):
                        slots_o = [[None] * x[1] for x in vs]
                        slots_i = [[None] * x[2] for x in vs]
                        for (v, s), (lab, w) in zip(free_out, po):
                            slots_o[v][s] = HalfEdge("L", lab, w)
                        for (v, s), (lab, w) in zip(free_in, pi):
                            slots_i[v][s] = HalfEdge("L", lab, w)
                        for eid, ((t, ts, h, hs), w) in enumerate(zip(edges, ws)):
                            slots_o[t][ts] = HalfEdge("E", eid, w)
                            slots_i[h][hs] = HalfEdge("E", eid, comp(w))
                        verts = tuple(
                            Vertex(x[0], family.degree(x[0], x[1], x[2]), tuple(slots_o[v]), tuple(slots_i[v]))
                            for v, x in enumerate(vs)
                        )
                        if not all(family.valid(u) for u in verts):
                            continue
                        g = DGraph(k, verts)
                        key, sgn, cg = canonical(g, family.blocks)
                        if sgn and key not in results:
                            results[key] = cg
    return [results[key] for key in sorted(results)]


def to_comb(family: Family, graphs) -> Comb:
    out = Comb(family.blocks)
    for g in graphs:
        out.add(g)
    return out

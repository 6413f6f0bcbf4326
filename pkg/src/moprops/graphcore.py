"""Multi-oriented graphs: storage, wheels, canonical forms, enumeration.

An edge is a triple ``(tail, head, word)``. The basic direction runs
tail -> head. ``word`` is a bitmask over the extra colors: bit ``t`` set means
color ``t + 1`` flows tail -> head as well (the color is *aligned*).

Two non-standard word values exist for internal algebra:

* ``STAR`` marks an undirected "summed" edge standing for the sum over every
  direction word, the reversed basic direction weighted by ``(-1)**d``;
* words ``>= GENERIC_BASE`` are opaque symbols used for decoration-generic
  computations (see :mod:`moprops.gcomplex`).

Sign data: for even ``d`` the edge order is the orientation; for odd ``d``
the vertex order is.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

STAR = -1
GENERIC_BASE = 1 << 20

Edge = tuple[int, int, int]
Leg = tuple[int, str, str]


class GraphError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Raised when an enumeration grows past a configured cap."""


# ---------------------------------------------------------------- words


def word_to_str(word: int, k: int) -> str:
    return "".join("+" if word >> t & 1 else "-" for t in range(k))


def str_to_word(s: str) -> int:
    w = 0
    for t, ch in enumerate(s):
        if ch == "+":
            w |= 1 << t
        elif ch != "-":
            raise GraphError(f"bad orientation letter {ch!r}")
    return w


def opp(multidir: str) -> str:
    """Flip every position of an out/in word."""
    return "".join("i" if c == "o" else "o" for c in multidir)


def edge_multidirs(word: int, k: int) -> tuple[str, str]:
    """Multidirections of an edge as seen from its tail and from its head."""
    tail = "o" + "".join("o" if word >> t & 1 else "i" for t in range(k))
    return tail, opp(tail)


# ---------------------------------------------------------------- graph type


@dataclass(frozen=True)
class MOGraph:
    k: int
    n: int
    edges: tuple[Edge, ...] = ()
    legs: tuple[Leg, ...] = ()

    def __post_init__(self) -> None:
        if self.k < 0 or self.n < 0:
            raise GraphError("negative size")
        for t, h, w in self.edges:
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise GraphError(f"edge endpoint out of range: {(t, h)}")
            if w != STAR and w < GENERIC_BASE and not 0 <= w < (1 << self.k):
                raise GraphError(f"word {w} too long for k={self.k}")
        labels = [lab for _, lab, _ in self.legs]
        if len(set(labels)) != len(labels):
            raise GraphError("duplicate leg labels")
        for v, _, md in self.legs:
            if not 0 <= v < self.n:
                raise GraphError(f"leg anchored at missing vertex {v}")
            if len(md) != self.k + 1 or set(md) - {"o", "i"}:
                raise GraphError(f"bad leg multidirection {md!r}")

    def valence(self, v: int) -> int:
        c = sum((t == v) + (h == v) for t, h, _ in self.edges)
        return c + sum(1 for u, _, _ in self.legs if u == v)

    def relabel(self, perm: Sequence[int]) -> "MOGraph":
        """Apply ``v -> perm[v]`` keeping the edge order."""
        edges = tuple((perm[t], perm[h], w) for t, h, w in self.edges)
        legs = tuple((perm[v], lab, md) for v, lab, md in self.legs)
        return MOGraph(self.k, self.n, edges, legs)


@dataclass(frozen=True)
class CanonicalClass:
    graph: MOGraph
    sign: int

    @property
    def key(self) -> tuple:
        return encode(self.graph)


def encode(g: MOGraph) -> tuple:
    """Hashable encoding; equal for equal canonical graphs."""
    return (g.k, g.n, g.edges, g.legs)


# ---------------------------------------------------------------- wheels


def flow(g: MOGraph, tau: int) -> list[tuple[int, int]]:
    """Internal edges directed along color ``tau`` (0 = basic)."""
    if not 0 <= tau <= g.k:
        raise GraphError(f"color index {tau} out of range 0..{g.k}")
    out = []
    for t, h, w in g.edges:
        if w == STAR:
            raise GraphError("summed edges have no single direction")
        if tau == 0 or (w >> (tau - 1)) & 1:
            out.append((t, h))
        else:
            out.append((h, t))
    return out


def _has_cycle(n: int, arcs: Iterable[tuple[int, int]]) -> bool:
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in arcs:
        if a == b:
            return True
        succ[a].append(b)
        indeg[b] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for u in succ[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                stack.append(u)
    return seen < n


def has_wheel(g: MOGraph, tau: int) -> bool:
    return _has_cycle(g.n, flow(g, tau))


def is_admissible(g: MOGraph, l: int) -> bool:
    if not -1 <= l <= g.k:
        raise GraphError(f"orientation level {l} out of range -1..{g.k}")
    return not any(has_wheel(g, tau) for tau in range(l + 1))


# ---------------------------------------------------------------- canonical form
#
# Individualization-refinement: colour vertices by local invariants, refine
# to an equitable partition, branch on the first non-singleton cell. Every
# discrete leaf yields a relabeling; the lexicographically least encoding is
# the canonical form and all leaves reaching it differ by automorphisms.


def _adjacency(n: int, edges: Sequence[Edge]) -> list[list[tuple[int, tuple]]]:
    adj: list[list[tuple[int, tuple]]] = [[] for _ in range(n)]
    for t, h, w in edges:
        if t == h:
            adj[t].append((t, (3, w)))
        elif w == STAR:
            adj[t].append((h, (2, 0)))
            adj[h].append((t, (2, 0)))
        else:
            adj[t].append((h, (0, w)))
            adj[h].append((t, (1, w)))
    return adj


def _rank(sigs: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(adj, colors: list[int]) -> list[int]:
    ncells = len(set(colors))
    n = len(colors)
    while ncells < n:
        sigs = [
            (colors[v], tuple(sorted((c, colors[u]) for u, c in adj[v])))
            for v in range(n)
        ]
        colors = _rank(sigs)
        m = len(set(colors))
        if m == ncells:
            break
        ncells = m
    return colors


def _leaves(adj, colors: list[int]) -> Iterator[list[int]]:
    colors = _refine(adj, colors)
    n = len(colors)
    if len(set(colors)) == n:
        yield colors
        return
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    target = min(c for c, m in counts.items() if m > 1)
    for v in range(n):
        if colors[v] != target:
            continue
        split = [2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)]
        yield from _leaves(adj, _rank(split))


def _perm_parity(seq: Sequence[int]) -> int:
    """Parity (0/1) of the permutation given as a sequence of distinct ints."""
    seen = [False] * len(seq)
    pos = {x: i for i, x in enumerate(sorted(seq))}
    p = [pos[x] for x in seq]
    parity = 0
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            parity ^= (length - 1) & 1
    return parity


def _apply(perm: Sequence[int], edges: Sequence[Edge]) -> tuple[list[tuple[int, int, int]], int]:
    items = []
    flips = 0
    for t, h, w in edges:
        a, b = perm[t], perm[h]
        if w == STAR and a > b:
            a, b = b, a
            flips += 1
        items.append((a, b, w))
    return items, flips


@lru_cache(maxsize=1 << 17)
def canonical_key(
    n: int, edges: tuple[Edge, ...], legs: tuple[Leg, ...] = (), odd: bool = False
) -> tuple[tuple[Edge, ...], tuple[Leg, ...], int]:
    """Canonical (edges, legs) and the sign relating the input to it.

    ``odd`` selects the vertex order (odd ``d``) instead of the edge order
    as the sign-carrying datum. Sign 0 means the class vanishes.
    """
    adj = _adjacency(n, edges)
    legs_at: list[list[tuple[str, str]]] = [[] for _ in range(n)]
    for v, lab, md in legs:
        legs_at[v].append((lab, md))
    init = _rank(
        [(tuple(sorted(legs_at[v])), tuple(sorted(c for _, c in adj[v]))) for v in range(n)]
    )
    best = None
    best_sign = None
    for perm in _leaves(adj, init):
        items, flips = _apply(perm, edges)
        enc_e = tuple(sorted(items))
        enc_l = tuple(sorted((perm[v], lab, md) for v, lab, md in legs))
        enc = (enc_e, enc_l)
        if best is not None and enc > best:
            continue
        if odd:
            sign = -1 if (_perm_parity(perm) + flips) & 1 else 1
        else:
            if len(set(items)) < len(items):
                sign = 0
            else:
                sign = -1 if _perm_parity(items) else 1
        if best is None or enc < best:
            best, best_sign = enc, sign
        elif sign != best_sign:
            best_sign = 0
    if best is None:  # n == 0
        return (), (), 1
    return best[0], best[1], best_sign


def canonicalize(g: MOGraph, d_parity: str = "even") -> CanonicalClass:
    if d_parity not in ("even", "odd"):
        raise GraphError("d_parity must be 'even' or 'odd'")
    e, lg, s = canonical_key(g.n, tuple(g.edges), tuple(g.legs), d_parity == "odd")
    return CanonicalClass(MOGraph(g.k, g.n, e, lg), s)


def automorphisms(g: MOGraph) -> list[tuple[int, ...]]:
    """All vertex permutations fixing the graph (edge multiset and legs)."""
    adj = _adjacency(g.n, g.edges)
    legs_at: list[list[tuple[str, str]]] = [[] for _ in range(g.n)]
    for v, lab, md in g.legs:
        legs_at[v].append((lab, md))
    init = _rank(
        [(tuple(sorted(legs_at[v])), tuple(sorted(c for _, c in adj[v]))) for v in range(g.n)]
    )
    leaves = []
    for perm in _leaves(adj, init):
        items, _ = _apply(perm, g.edges)
        enc = (tuple(sorted(items)), tuple(sorted((perm[v], lab, md) for v, lab, md in g.legs)))
        leaves.append((enc, perm))
    best = min(enc for enc, _ in leaves)
    good = [perm for enc, perm in leaves if enc == best]
    p0 = good[0]
    inv0 = [0] * g.n
    for v, x in enumerate(p0):
        inv0[x] = v
    return sorted({tuple(inv0[p[v]] for v in range(g.n)) for p in good})


# ---------------------------------------------------------------- enumeration


def _shape_key(n: int, pairs: tuple[tuple[int, int], ...]) -> tuple:
    e, _, _ = canonical_key(n, tuple((a, b, STAR) for a, b in pairs), (), False)
    return tuple((a, b) for a, b, _ in e)


@lru_cache(maxsize=None)
def shapes(
    n: int, e: int, loops: bool, min_valence: int = 0, connected: bool = False
) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Undirected multigraphs on ``n`` vertices with ``e`` edges, one per class."""
    all_pairs = [(a, b) for a in range(n) for b in range(a if loops else a + 1, n)]
    level = {()}
    for step in range(e):
        remaining = e - step - 1
        nxt = set()
        for sh in level:
            for p in all_pairs:
                cand = tuple(sorted(sh + (p,)))
                deg = [0] * n
                for a, b in cand:
                    deg[a] += 1
                    deg[b] += 1
                if sum(max(0, min_valence - x) for x in deg) > 2 * remaining:
                    continue
                if connected and _components(n, cand) - 1 > remaining:
                    continue
                nxt.add(_shape_key(n, cand))
        level = nxt
    out = []
    for sh in sorted(level):
        deg = [0] * n
        for a, b in sh:
            deg[a] += 1
            deg[b] += 1
        if any(x < min_valence for x in deg):
            continue
        if connected and _components(n, sh) != 1:
            continue
        out.append(sh)
    return tuple(out)


def _components(n: int, pairs: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in range(n)})


def _color_choices(
    n: int, shape: Sequence[tuple[int, int]], oriented: bool, basic: bool
) -> list[tuple[int, ...]]:
    """Direction bit vectors for one color (0 = low -> high vertex).

    On a loop the basic bit is fixed to 0; an extra color's bit then records
    whether it runs along or against the basic direction.
    """
    e = len(shape)
    loops = [i for i, (a, b) in enumerate(shape) if a == b]
    out = []
    for bits in itertools.product((0, 1), repeat=e):
        if basic and any(bits[i] for i in loops):
            continue
        if oriented:
            arcs = [(a, b) if x == 0 else (b, a) for (a, b), x in zip(shape, bits)]
            if _has_cycle(n, arcs):
                continue
        out.append(bits)
    return out


def orientations(
    n: int, shape: Sequence[tuple[int, int]], k: int, l: int
) -> Iterator[tuple[Edge, ...]]:
    """All admissible direction data on a labeled shape, as edge tuples."""
    per_color = [_color_choices(n, shape, tau <= l, tau == 0) for tau in range(k + 1)]
    loops = {i for i, (a, b) in enumerate(shape) if a == b}
    for basic in per_color[0]:
        for extra in itertools.product(*per_color[1:]):
            edges = []
            for i, (a, b) in enumerate(shape):
                p0 = basic[i]
                w = 0
                for t in range(k):
                    same = extra[t][i] == p0
                    if i in loops:
                        same = extra[t][i] == 0
                    if same:
                        w |= 1 << t
                edges.append((a, b, w) if p0 == 0 else (b, a, w))
            yield tuple(edges)


def enumerate_graphs(
    n_vertices: int,
    n_edges: int,
    k: int,
    l: int,
    min_valence: int = 0,
    connected: bool = True,
    d_parity: str = "even",
    cap: int | None = None,
) -> list[CanonicalClass]:
    """One canonical representative per nonvanishing leg-free class."""
    odd = d_parity == "odd"
    seen: dict[tuple, CanonicalClass] = {}
    for sh in shapes(n_vertices, n_edges, l < 0, min_valence, connected):
        for edges in orientations(n_vertices, sh, k, l):
            e, _, s = canonical_key(n_vertices, edges, (), odd)
            if s == 0 or e in seen:
                continue
            seen[e] = CanonicalClass(MOGraph(k, n_vertices, e), 1)
            if cap is not None and len(seen) > cap:
                raise CapExceeded(f"more than {cap} graphs at (V={n_vertices}, E={n_edges})")
    return [seen[key] for key in sorted(seen)]


# ---------------------------------------------------------------- contraction


def contract(g: MOGraph, vertex_subset: Iterable[int]) -> MOGraph:
    """Collapse a vertex subset to one vertex, deleting edges inside it.

    The subset must be closed under the edges it spans (every internal edge
    between two of its vertices is removed) and nonempty.
    """
    sub = set(vertex_subset)
    if not sub or not sub <= set(range(g.n)):
        raise GraphError("contraction subset must be a nonempty set of vertices")
    keep = [v for v in range(g.n) if v not in sub]
    new_id = {}
    target = min(sub)
    idx = 0
    for v in range(g.n):
        if v == target:
            new_id[v] = idx
            idx += 1
        elif v not in sub:
            new_id[v] = idx
            idx += 1
    for v in sub:
        new_id[v] = new_id[target]
    edges = tuple(
        (new_id[t], new_id[h], w) for t, h, w in g.edges if not (t in sub and h in sub)
    )
    legs = tuple((new_id[v], lab, md) for v, lab, md in g.legs)
    return MOGraph(g.k, len(keep) + 1, edges, legs)


# ---------------------------------------------------------------- I/O


def to_json(g: MOGraph) -> dict:
    def word(w: int) -> str:
        if w == STAR:
            return "*"
        return word_to_str(w, g.k)

    return {
        "k": g.k,
        "vertices": g.n,
        "edges": [{"tail": t, "head": h, "orient": word(w)} for t, h, w in g.edges],
        "legs": [{"vertex": v, "label": lab, "multidir": md} for v, lab, md in g.legs],
    }


def from_json(data: dict | str) -> MOGraph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        k = int(data["k"])
        edges = []
        for e in data.get("edges", []):
            o = e.get("orient", "")
            if o == "*":
                w = STAR
            else:
                if len(o) != k:
                    raise GraphError(f"orientation word {o!r} must have length {k}")
                w = str_to_word(o)
            edges.append((int(e["tail"]), int(e["head"]), w))
        legs = [(int(x["vertex"]), str(x["label"]), str(x["multidir"])) for x in data.get("legs", [])]
        return MOGraph(k, int(data["vertices"]), tuple(edges), tuple(legs))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc


def to_dot(g: MOGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.n):
        lines.append(f"  v{v} [shape=point];")
    for t, h, w in g.edges:
        lab = "*" if w == STAR else word_to_str(w, g.k)
        lines.append(f'  v{t} -> v{h} [label="{lab}"];')
    for v, lab, md in g.legs:
        lines.append(f'  leg_{lab} [shape=plaintext, label="{lab}"];')
        if md[0] == "o":
            lines.append(f'  v{v} -> leg_{lab} [label="{md[1:]}"];')
        else:
            lines.append(f'  leg_{lab} -> v{v} [label="{md[1:]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Decorated graphs: vertices are generator corollas, edges join an output
half-edge of one vertex to an input half-edge of another.

Each half-edge carries a word of ``k`` bits for the extra colors; bit 1 means
that color points out of the vertex. The two ends of an internal edge carry
complementary words. The vertex order is the Koszul order: swapping
neighbouring vertices of degrees ``a`` and ``b`` costs ``(-1)^(a*b)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from ..graphcore import _has_cycle, _perm_parity

Word = tuple[int, ...]
PLANAR, SYM, SKEW = "planar", "sym", "skew"

BlockTypes = Callable[[str], tuple[str, str]]


class InadmissibleError(ValueError):
    """A composition closed a directed cycle in an oriented color."""


class HalfEdge(NamedTuple):
    kind: str  # "L" external leg, "E" internal edge
    ref: int  # leg label or edge id
    word: Word


class Vertex(NamedTuple):
    tag: str
    deg: int
    outs: tuple[HalfEdge, ...]
    ins: tuple[HalfEdge, ...]


@dataclass(frozen=True)
class DGraph:
    k: int
    verts: tuple[Vertex, ...]

    @property
    def degree(self) -> int:
        return sum(v.deg for v in self.verts)

    def legs(self) -> dict[int, tuple[int, str, int, Word]]:
        """label -> (vertex, side, slot, word)."""
        out = {}
        for i, v in enumerate(self.verts):
            for side, block in (("out", v.outs), ("in", v.ins)):
                for s, he in enumerate(block):
                    if he.kind == "L":
                        out[he.ref] = (i, side, s, he.word)
        return out

    def edges(self) -> dict[int, list]:
        """edge id -> [(tail vertex, slot, word), (head vertex, slot, word)]."""
        ends: dict[int, list] = {}
        for i, v in enumerate(self.verts):
            for s, he in enumerate(v.outs):
                if he.kind == "E":
                    ends.setdefault(he.ref, [None, None])[0] = (i, s, he.word)
            for s, he in enumerate(v.ins):
                if he.kind == "E":
                    ends.setdefault(he.ref, [None, None])[1] = (i, s, he.word)
        return ends

    def profile(self) -> tuple[tuple, tuple]:
        """(outputs, inputs) as sorted (label, word) pairs."""
        outs, ins = [], []
        for lab, (_, side, _, w) in self.legs().items():
            (outs if side == "out" else ins).append((lab, w))
        return tuple(sorted(outs)), tuple(sorted(ins))


def comp(w: Word) -> Word:
    return tuple(1 - b for b in w)


def corolla(tag: str, deg: int, outs: Sequence[tuple[int, Word]], ins: Sequence[tuple[int, Word]], k: int) -> DGraph:
    return DGraph(
        k,
        (Vertex(tag, deg, tuple(HalfEdge("L", a, w) for a, w in outs), tuple(HalfEdge("L", a, w) for a, w in ins)),),
    )


def validate(g: DGraph) -> None:
    for eid, (t, h) in g.edges().items():
        if t is None or h is None:
            raise ValueError(f"edge {eid} is missing an end")
        if t[2] != comp(h[2]):
            raise ValueError(f"edge {eid}: multidirections do not match")
    labels = [he.ref for v in g.verts for he in v.outs + v.ins if he.kind == "L"]
    if len(labels) != len(set(labels)):
        raise ValueError("duplicate leg labels")


def is_admissible(g: DGraph, l: int) -> bool:
    """No directed cycle in colors ``0..l`` (0 = basic)."""
    n = len(g.verts)
    edges = g.edges()
    for tau in range(l + 1):
        arcs = []
        for (t, _, wt), (h, _, _) in edges.values():
            if tau == 0 or wt[tau - 1] == 1:
                arcs.append((t, h))
            else:
                arcs.append((h, t))
        if _has_cycle(n, arcs):
            return False
    return True


# ---------------------------------------------------------------- canonical form


def _koszul_parity(degs: Sequence[int], order: Sequence[int]) -> int:
    """Parity of reordering objects of the given degrees into ``order``."""
    odd = [i for i in order if degs[i] % 2]
    return _perm_parity(odd)


def canonical(g: DGraph, blocks: BlockTypes) -> tuple[tuple | None, int, DGraph | None]:
    """(key, sign, canonical graph); sign 0 means the graph vanishes."""
    verts = g.verts
    n = len(verts)
    ends = g.edges()
    other: dict[tuple[int, str, int], tuple[int, str, int]] = {}
    for (t, ts, _), (h, hs, _) in ends.values():
        other[(t, "out", ts)] = (h, "in", hs)
        other[(h, "in", hs)] = (t, "out", ts)

    def inv(i: int) -> tuple:
        v = verts[i]
        legs = tuple(sorted((side, he.ref, he.word) for side, blk in (("o", v.outs), ("i", v.ins)) for he in blk if he.kind == "L"))
        ew = tuple(sorted((side, he.word) for side, blk in (("o", v.outs), ("i", v.ins)) for he in blk if he.kind == "E"))
        return (v.tag, v.deg, len(v.outs), len(v.ins), legs, ew)

    invs = [inv(i) for i in range(n)]
    groups: dict[tuple, list[int]] = {}
    for i in range(n):
        groups.setdefault(invs[i], []).append(i)
    gkeys = sorted(groups)
    degs = [v.deg for v in verts]

    best = None
    best_sign = 0
    best_data = None
    for choice in itertools.product(*(itertools.permutations(groups[key]) for key in gkeys)):
        order = [i for part in choice for i in part]
        pos = {old: new for new, old in enumerate(order)}
        enc = []
        sign = -1 if _koszul_parity(degs, order) else 1
        layout = []
        dead = False
        for old in order:
            v = verts[old]
            bt = blocks(v.tag)
            row = [v.tag, v.deg]
            lay = []
            for side, blk, btype in (("out", v.outs, bt[0]), ("in", v.ins, bt[1])):
                keys = []
                for s, he in enumerate(blk):
                    if he.kind == "L":
                        keys.append((0, he.ref, he.word))
                    else:
                        q, qside, qs = other[(old, side, s)]
                        qbt = blocks(verts[q].tag)[0 if qside == "out" else 1]
                        keys.append((1, pos[q], qs if qbt == PLANAR else -1, he.word))
                idx = list(range(len(blk)))
                if btype != PLANAR:
                    idx.sort(key=lambda j: keys[j])
                    if btype == SKEW and _perm_parity(idx):
                        sign = -sign
                    for a, b in zip(idx, idx[1:]):
                        if keys[a] == keys[b]:
                            # identical parallel edges: their swap is an automorphism
                            q, qside, _ = other[(old, side, a)]
                            qbt = blocks(verts[q].tag)[0 if qside == "out" else 1]
                            if (btype == SKEW) != (qbt == SKEW):
                                dead = True
                row.append(tuple(keys[j] for j in idx))
                lay.append(idx)
            enc.append(tuple(row))
            layout.append(lay)
        if dead:
            return None, 0, None
        enc = tuple(enc)
        if best is None or enc < best:
            best, best_sign, best_data = enc, sign, (order, layout)
        elif enc == best and sign != best_sign:
            best_sign = 0
    if best is None:
        return (), 1, DGraph(g.k, ())
    if best_sign == 0:
        return None, 0, None
    order, layout = best_data
    # rebuild with edges renumbered by (tail position, slot)
    pos = {old: new for new, old in enumerate(order)}
    new_id: dict[int, int] = {}
    for new, old in enumerate(order):
        v = verts[old]
        for j in layout[new][0]:
            he = v.outs[j]
            if he.kind == "E":
                new_id[he.ref] = len(new_id)
    nv = []
    for new, old in enumerate(order):
        v = verts[old]
        outs = tuple(_renum(v.outs[j], new_id) for j in layout[new][0])
        ins = tuple(_renum(v.ins[j], new_id) for j in layout[new][1])
        nv.append(Vertex(v.tag, v.deg, outs, ins))
    return (g.k, best), best_sign, DGraph(g.k, tuple(nv))


def _renum(he: HalfEdge, ids: dict[int, int]) -> HalfEdge:
    return he if he.kind == "L" else HalfEdge("E", ids[he.ref], he.word)


# ---------------------------------------------------------------- combinations


class Comb:
    """Finite linear combination of canonical decorated graphs."""

    def __init__(self, blocks: BlockTypes):
        self.blocks = blocks
        self.terms: dict[tuple, int | Fraction] = {}
        self.graphs: dict[tuple, DGraph] = {}

    def add(self, g: DGraph, coeff: int | Fraction = 1) -> None:
        if not coeff:
            return
        key, s, cg = canonical(g, self.blocks)
        if s == 0:
            return
        c = self.terms.get(key, 0) + s * coeff
        if c:
            self.terms[key] = c
            self.graphs[key] = cg
        else:
            self.terms.pop(key, None)

    def add_comb(self, other: "Comb", coeff: int | Fraction = 1) -> None:
        for key, c in other.terms.items():
            v = self.terms.get(key, 0) + coeff * c
            if v:
                self.terms[key] = v
                self.graphs[key] = other.graphs[key]
            else:
                self.terms.pop(key, None)

    def items(self) -> Iterator[tuple[DGraph, int | Fraction]]:
        for key in sorted(self.terms):
            yield self.graphs[key], self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Comb):
            return NotImplemented
        return self.terms == other.terms

    def copy(self) -> "Comb":
        out = Comb(self.blocks)
        out.terms = dict(self.terms)
        out.graphs = dict(self.graphs)
        return out

    def scaled(self, c: int | Fraction) -> "Comb":
        out = Comb(self.blocks)
        if c:
            out.terms = {key: v * c for key, v in self.terms.items()}
            out.graphs = dict(self.graphs)
        return out


# ---------------------------------------------------------------- composition


def _max_edge(g: DGraph) -> int:
    ids = [he.ref for v in g.verts for he in v.outs + v.ins if he.kind == "E"]
    return max(ids, default=-1)


def substitute(g: DGraph, p: int, h: DGraph, shift: int = 0) -> tuple[int, DGraph]:
    """Replace vertex ``p`` of ``g`` by ``h``.

    Legs of ``h`` are labelled by slots of ``p``: ``0..m-1`` are its outputs
    and ``m..m+n-1`` its inputs. ``shift`` is the degree of the operation
    producing ``h`` from the vertex; it passes the earlier vertices with the
    usual Koszul sign, which is returned.
    """
    v = g.verts[p]
    m = len(v.outs)
    slots = list(v.outs) + list(v.ins)
    base = _max_edge(g) + 1
    nv = []
    for u in h.verts:
        def conv(he: HalfEdge, side: str) -> HalfEdge:
            if he.kind == "E":
                return HalfEdge("E", base + he.ref, he.word)
            target = slots[he.ref]
            if (he.ref < m) != (side == "out") or target.word != he.word:
                raise ValueError("substituted graph does not match the vertex legs")
            return target
        nv.append(Vertex(u.tag, u.deg, tuple(conv(x, "out") for x in u.outs), tuple(conv(x, "in") for x in u.ins)))
    before = sum(u.deg for u in g.verts[:p])
    sign = -1 if (shift * before) % 2 else 1
    return sign, DGraph(g.k, g.verts[:p] + tuple(nv) + g.verts[p + 1:])


def graft(
    a: DGraph, b: DGraph, matching: Iterable[tuple[int, int]], l: int = -1,
    blocks: BlockTypes | None = None,
) -> Comb | DGraph:
    """Glue output legs of ``a`` to input legs of ``b`` (pairs of labels).

    Vertex order: ``a`` then ``b``. Raises on mismatched directions or on a
    directed cycle in colors ``0..l``. Returns a canonical ``Comb`` when
    ``blocks`` is given, else the raw glued graph.
    """
    la, lb = a.legs(), b.legs()
    base = _max_edge(a) + 1
    ren_b = {}
    for v in b.verts:
        for he in v.outs + v.ins:
            if he.kind == "E":
                ren_b[he.ref] = base + he.ref
    nxt = base + len(ren_b) + 1
    glue_a, glue_b = {}, {}
    for x, y in matching:
        if x not in la or y not in lb:
            raise ValueError(f"unknown legs {x}, {y}")
        if la[x][1] != "out" or lb[y][1] != "in":
            raise ValueError("graft joins an output of the first graph to an input of the second")
        if la[x][3] != comp(lb[y][3]):
            raise ValueError(f"multidirection mismatch on legs {x}, {y}")
        glue_a[x] = nxt
        glue_b[y] = nxt
        nxt += 1

    def conv_a(he):
        return HalfEdge("E", glue_a[he.ref], he.word) if he.kind == "L" and he.ref in glue_a else he

    def conv_b(he):
        if he.kind == "E":
            return HalfEdge("E", ren_b[he.ref], he.word)
        return HalfEdge("E", glue_b[he.ref], he.word) if he.ref in glue_b else he

    va = tuple(Vertex(v.tag, v.deg, tuple(map(conv_a, v.outs)), tuple(map(conv_a, v.ins))) for v in a.verts)
    vb = tuple(Vertex(v.tag, v.deg, tuple(map(conv_b, v.outs)), tuple(map(conv_b, v.ins))) for v in b.verts)
    g = DGraph(a.k, va + vb)
    validate(g)
    if not is_admissible(g, l):
        raise InadmissibleError("composition closes a directed cycle in an oriented color")
    if blocks is None:
        return g
    out = Comb(blocks)
    out.add(g)
    return out


def relabel_legs(g: DGraph, mapping: dict[int, int]) -> DGraph:
    def conv(he):
        return HalfEdge("L", mapping.get(he.ref, he.ref), he.word) if he.kind == "L" else he
    return DGraph(g.k, tuple(Vertex(v.tag, v.deg, tuple(map(conv, v.outs)), tuple(map(conv, v.ins))) for v in g.verts))


# ---------------------------------------------------------------- JSON


def _word_str(w: Word) -> str:
    return "".join("o" if b else "i" for b in w)


def to_json(g: DGraph, family: str = "", params: dict | None = None) -> dict:
    """Skeleton in the plain graph format plus per-vertex decorations."""
    edges = []
    for eid, ((t, _, wt), (h, _, _)) in sorted(g.edges().items()):
        # orient[tau] = '+' when color tau+1 runs tail -> head
        edges.append({"tail": t, "head": h, "orient": "".join("+" if b else "-" for b in wt)})
    legs = []
    for lab, (v, side, _, w) in sorted(g.legs().items()):
        legs.append({"vertex": v, "label": lab, "multidir": ("o" if side == "out" else "i") + _word_str(w)})
    decorations = []
    for i, v in enumerate(g.verts):
        def ref(he):
            return f"leg:{he.ref}" if he.kind == "L" else f"edge:{he.ref}"
        decorations.append({
            "vertex": i, "family": family, "params": dict(params or {}), "tag": v.tag, "degree": v.deg,
            "leg_map": [{"side": "out", "ref": ref(he)} for he in v.outs] + [{"side": "in", "ref": ref(he)} for he in v.ins],
        })
    return {"k": g.k, "vertices": len(g.verts), "edges": edges, "legs": legs, "decorations": decorations}


def from_json(data: dict) -> DGraph:
    k = int(data["k"])
    edge_words = {}
    for eid, e in enumerate(data["edges"]):
        wt = tuple(1 if ch == "+" else 0 for ch in e["orient"])
        edge_words[eid] = (int(e["tail"]), int(e["head"]), wt)
    leg_words = {}
    for lg in data["legs"]:
        md = lg["multidir"]
        leg_words[int(lg["label"])] = tuple(1 if ch == "o" else 0 for ch in md[1:])
    verts = []
    for dec in sorted(data["decorations"], key=lambda x: x["vertex"]):
        i = dec["vertex"]
        outs, ins = [], []
        for item in dec["leg_map"]:
            kind, num = item["ref"].split(":")
            num = int(num)
            if kind == "leg":
                he = HalfEdge("L", num, leg_words[num])
            else:
                t, h, wt = edge_words[num]
                he = HalfEdge("E", num, wt if item["side"] == "out" else comp(wt))
            (outs if item["side"] == "out" else ins).append(he)
        verts.append(Vertex(dec["tag"], int(dec["degree"]), tuple(outs), tuple(ins)))
    g = DGraph(k, tuple(verts))
    validate(g)
    return g

"""Maps that forget the basic direction: the single extra color becomes the
only orientation of a dioperad.

Each binary generator is sent to a generator of the target according to which
of its half-edges the extra color points out of. Higher corollas go to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import linalg
from .dgraph import Comb, DGraph, HalfEdge, Vertex, canonical
from .families import AssInf, IB, LieBdiop, LieInf

E = ()  # the empty word of a plain dioperad


def _leg(label: int) -> HalfEdge:
    return HalfEdge("L", label, E)


def _edge() -> HalfEdge:
    return HalfEdge("E", 0, E)


def _two(tag_lo, outs_lo, ins_lo, tag_up, outs_up, ins_up) -> DGraph:
    return DGraph(0, (Vertex(tag_lo, 0, tuple(outs_lo), tuple(ins_lo)), Vertex(tag_up, 0, tuple(outs_up), tuple(ins_up))))


# ---------------------------------------------------------------- relation templates


def ib_relation_templates():
    """(arity, builder) pairs; builders take output and input labels."""
    L, e = _leg, _edge

    def assoc(po, pi):
        (o,), (x, y, z) = po, pi
        return [
            (1, _two("mu", [e()], [L(x), L(y)], "mu", [L(o)], [e(), L(z)])),
            (-1, _two("mu", [e()], [L(y), L(z)], "mu", [L(o)], [L(x), e()])),
        ]

    def coassoc(po, pi):
        (p, q, r), (x,) = po, pi
        return [
            (1, _two("Delta", [e(), L(r)], [L(x)], "Delta", [L(p), L(q)], [e()])),
            (-1, _two("Delta", [L(p), e()], [L(x)], "Delta", [L(q), L(r)], [e()])),
        ]

    def mixed(po, pi):
        (p, q), (x, y) = po, pi
        return [
            (1, _two("mu", [e()], [L(x), L(y)], "Delta", [L(p), L(q)], [e()])),
            (-1, _two("Delta", [L(p), e()], [L(x)], "mu", [L(q)], [e(), L(y)])),
            (-1, _two("Delta", [e(), L(q)], [L(y)], "mu", [L(p)], [L(x), e()])),
        ]

    return [((1, 3), assoc), ((3, 1), coassoc), ((2, 2), mixed)]


def lieb_relation_templates():
    L, e = _leg, _edge

    def jacobi(po, pi):
        (o,), (x, y, z) = po, pi
        return [
            (1, _two("br", [e()], [L(a), L(b)], "br", [L(o)], [e(), L(c)]))
            for a, b, c in ((x, y, z), (z, x, y), (y, z, x))
        ]

    def cojacobi(po, pi):
        (p, q, r), (x,) = po, pi
        return [
            (1, _two("cobr", [e(), L(c)], [L(x)], "cobr", [L(a), L(b)], [e()]))
            for a, b, c in ((p, q, r), (r, p, q), (q, r, p))
        ]

    def cocycle(po, pi):
        (p, q), (x, y) = po, pi
        return [
            (1, _two("br", [e()], [L(x), L(y)], "cobr", [L(p), L(q)], [e()])),
            (-1, _two("cobr", [L(p), e()], [L(x)], "br", [L(q)], [e(), L(y)])),
            (1, _two("cobr", [L(p), e()], [L(y)], "br", [L(q)], [e(), L(x)])),
            (-1, _two("cobr", [L(q), e()], [L(y)], "br", [L(p)], [e(), L(x)])),
            (1, _two("cobr", [L(q), e()], [L(x)], "br", [L(p)], [e(), L(y)])),
        ]

    return [((1, 3), jacobi), ((3, 1), cojacobi), ((2, 2), cocycle)]


# ---------------------------------------------------------------- generator tables

# (output bit; first input bit, second input bit) -> (tag, outputs, inputs),
# where "o", "a", "b" name the output and the two inputs in planar order
_TABLE = {
    (1, 0, 0): ("P", ("o",), ("a", "b")),
    (0, 1, 1): ("C", ("b", "a"), ("o",)),
    (1, 0, 1): ("C", ("o", "b"), ("a",)),
    (0, 0, 1): ("P", ("b",), ("o", "a")),
}


def _strip(he: HalfEdge) -> HalfEdge:
    return HalfEdge(he.kind, he.ref, E)


def _image_vertex(v: Vertex, product: str, coproduct: str) -> Vertex | None:
    if len(v.ins) != 2:
        return None
    key = (v.outs[0].word[0], v.ins[0].word[0], v.ins[1].word[0])
    tag, outs, ins = _TABLE[key]
    named = {"o": _strip(v.outs[0]), "a": _strip(v.ins[0]), "b": _strip(v.ins[1])}
    t = product if tag == "P" else coproduct
    return Vertex(t, 0, tuple(named[x] for x in outs), tuple(named[x] for x in ins))


@dataclass(frozen=True)
class ForgetfulMap:
    name: str
    source: object
    target: object
    corrupt: tuple = ()  # table keys whose image is negated (negative controls)

    def on_graph(self, g: DGraph) -> tuple[int, DGraph | None]:
        sign = 1
        verts = []
        for v in g.verts:
            if len(v.ins) != 2 or len(v.outs) != 1:
                return 0, None
            w = (v.outs[0].word[0], v.ins[0].word[0], v.ins[1].word[0])
            if w not in _TABLE:
                if self.name != "beta":
                    raise ValueError(f"no image for generator {w}")
                # skew inputs: swap into table order
                v = Vertex(v.tag, v.deg, v.outs, (v.ins[1], v.ins[0]))
                sign = -sign
                w = (w[0], w[2], w[1])
            if w in self.corrupt:
                sign = -sign
            prod, coprod = ("mu", "Delta") if self.name == "alpha" else ("br", "cobr")
            verts.append(_image_vertex(v, prod, coprod))
        return sign, DGraph(0, tuple(verts))

    def __call__(self, x: Comb) -> Comb:
        out = Comb(self.target.blocks)
        for g, c in x.items():
            s, h = self.on_graph(g)
            if s:
                out.add(h, s * c)
        return out


alpha = ForgetfulMap("alpha", AssInf(k=1, binary_only=True), IB())
beta = ForgetfulMap("beta", LieInf(k=1, binary_only=True), LieBdiop())


def forgetful(which: str | ForgetfulMap, x: Comb) -> Comb:
    fmap = which if isinstance(which, ForgetfulMap) else {"alpha": alpha, "beta": beta}[which]
    return fmap(x)


# ---------------------------------------------------------------- verification


def source_relations(fmap: ForgetfulMap) -> list[tuple[str, Comb]]:
    """Generating relations of the source: transcribed for alpha, expanded
    (the differential of every ternary generator) for beta."""
    from .differential import _local
    from .slices import relation_constants

    if fmap.name == "alpha":
        rels = relation_constants(AssInf(k=1), "transcribed")
        return [(f"R{i + 1}", rels[key]) for i, key in enumerate(rels)]
    dg = LieInf(k=1)
    out = []
    for i, g in enumerate(dg.generators(1, 3)):
        c = Comb(dg.blocks)
        for coeff, h in dg.delta_corolla(_local(g.verts[0])):
            c.add(h, coeff)
        out.append((f"L{i + 1}", c))
    return out


@dataclass
class MorphismReport:
    name: str
    checked: int = 0
    results: list[tuple[str, bool, int]] = field(default_factory=list)  # (relation, in span, image size)

    @property
    def ok(self) -> bool:
        return all(r[1] for r in self.results)

    @property
    def failures(self) -> list[str]:
        return [r[0] for r in self.results if not r[1]]


def _labels(x: Comb) -> tuple[list[int], list[int]]:
    for g, _ in x.items():
        outs, ins = g.profile()
        return [a for a, _ in outs], [a for a, _ in ins]
    return [], []


def in_relation_span(target, x: Comb) -> bool:
    from .slices import dioperad_relations

    if x.is_zero():
        return True
    outs, ins = _labels(x)
    inst = dioperad_relations(target, outs, ins)
    index: dict = {}
    for c in inst + [x]:
        for key in c.terms:
            index.setdefault(key, len(index))
    M = linalg.SparseMatrix(
        len(inst), len(index), {(r, index[key]): v for r, c in enumerate(inst) for key, v in c.terms.items()}
    )
    return linalg.in_span({index[key]: v for key, v in x.terms.items()}, M)


def verify_morphism(fmap: ForgetfulMap | str) -> MorphismReport:
    fmap = fmap if isinstance(fmap, ForgetfulMap) else {"alpha": alpha, "beta": beta}[fmap]
    rep = MorphismReport(fmap.name)
    for name, rel in source_relations(fmap):
        img = fmap(rel)
        rep.checked += 1
        rep.results.append((name, in_relation_span(fmap.target, img), len(img)))
    return rep

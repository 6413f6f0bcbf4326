"""Generator differentials extended to decorated graphs by the Leibniz rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dgraph import Comb, DGraph, HalfEdge, Vertex, substitute
from .families import Family


def _local(v: Vertex) -> Vertex:
    """The vertex as a corolla whose legs are labelled by slot."""
    m = len(v.outs)
    return Vertex(
        v.tag, v.deg,
        tuple(HalfEdge("L", i, he.word) for i, he in enumerate(v.outs)),
        tuple(HalfEdge("L", m + j, he.word) for j, he in enumerate(v.ins)),
    )


def delta(family: Family, c: DGraph) -> Comb:
    """Differential of a one-vertex graph."""
    return delta_on_graph(family, c)


def delta_on_graph(family: Family, g: DGraph) -> Comb:
    out = Comb(family.blocks)
    for p, v in enumerate(g.verts):
        for coeff, h in family.delta_corolla(_local(v)):
            s, ng = substitute(g, p, h, shift=1)
            out.add(ng, s * coeff)
    return out


def delta_comb(family: Family, x: Comb) -> Comb:
    out = Comb(family.blocks)
    for g, c in x.items():
        out.add_comb(delta_on_graph(family, g), c)
    return out


@dataclass
class SquareResidual:
    generator: DGraph
    residual: Comb


@dataclass
class DSquaredReport:
    family: str
    bound: int
    checked: int = 0
    residuals: list[SquareResidual] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.residuals


def verify_d_squared(family: Family, arity_bound: int) -> DSquaredReport:
    """Apply the differential twice to every generator of total arity <= bound."""
    if arity_bound < 2:
        raise ValueError("arity bound must be at least 2")
    rep = DSquaredReport(family.label(), arity_bound)
    for m, n in family.arities(arity_bound):
        for g in family.generators(m, n):
            rep.checked += 1
            r = delta_comb(family, delta_on_graph(family, g))
            if not r.is_zero():
                rep.residuals.append(SquareResidual(g, r))
    return rep


def comb_from(family: Family, terms) -> Comb:
    out = Comb(family.blocks)
    for g, c in terms:
        out.add(g, Fraction(c) if isinstance(c, str) else c)
    return out

"""Slice complexes at a fixed leg profile, and relation quotients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .. import linalg
from .dgraph import Comb, DGraph, canonical, substitute
from .differential import delta_on_graph
from .families import AssInf, Family, HoLB, IB, LieBdiop, LieInf, _profiles
from .trees import Leg, dioperad_trees, operad_trees

Profile = tuple[tuple[Leg, ...], tuple[Leg, ...]]


def operad_profile(out_word: tuple, in_words: Sequence[tuple]) -> Profile:
    return (((0, tuple(out_word)),), tuple((i + 1, tuple(w)) for i, w in enumerate(in_words)))


def profiles(family: Family, m: int, n: int) -> list[Profile]:
    """Leg profiles up to relabelling (words nondecreasing along labels)."""
    out = []
    for ow, iw in _profiles(family.k, m, n):
        out.append((tuple((i, w) for i, w in enumerate(ow)), tuple((m + j, w) for j, w in enumerate(iw))))
    return out


def profile_str(p: Profile) -> str:
    def w(x):
        return "".join(str(b) for b in x) or "-"
    return ";".join(f"{lab}:{w(x)}" for lab, x in p[0]) + "|" + ";".join(f"{lab}:{w(x)}" for lab, x in p[1])


def _operad_slice(family: Family, profile: Profile, max_vertices=None) -> list[DGraph]:
    (o,), ins = profile
    return operad_trees(family, o[1], ins, max_vertices)


def slice_basis(family: Family, profile: Profile, vertex_bound: int | None = None) -> dict[int, list[DGraph]]:
    """Basis trees of the slice, grouped by degree."""
    if isinstance(family, (AssInf, LieInf)):
        graphs = _operad_slice(family, profile, vertex_bound)
    elif isinstance(family, HoLB):
        graphs = _holb_trees(family, profile, vertex_bound or 3)
    else:
        raise ValueError(f"no slice complex for {family.label()}")
    by_deg: dict[int, dict] = {}
    for g in graphs:
        key, s, cg = canonical(g, family.blocks)
        if s:
            by_deg.setdefault(cg.degree, {})[key] = cg
    return {d: [v[key] for key in sorted(v)] for d, v in sorted(by_deg.items())}


def _holb_trees(family: HoLB, profile: Profile, vertex_bound: int) -> list[DGraph]:
    outs, ins = profile
    M, N = len(outs), len(ins)
    out = []
    for nv in range(1, vertex_bound + 1):
        shapes = [("h", m, n) for m in range(1, M + 1) for n in range(1, N + 1) if m + n >= 3 and m + n <= M + N + 2 * (nv - 1)]
        out += dioperad_trees(family, outs, ins, nv, shapes)
    return out


def _matrix(family: Family, src: list[DGraph], tgt: list[DGraph]) -> linalg.SparseMatrix:
    index = {canonical(g, family.blocks)[0]: i for i, g in enumerate(tgt)}
    cols = []
    for g in src:
        col = {}
        for h, c in delta_on_graph(family, g).items():
            key = canonical(h, family.blocks)[0]
            if key not in index:
                raise KeyError("differential leaves the enumerated slice")
            col[index[key]] = col.get(index[key], 0) + c
        cols.append(col)
    return linalg.SparseMatrix.from_columns(len(tgt), cols)


@dataclass(frozen=True)
class SliceCohomology:
    family: str
    profile: Profile
    chain_dims: dict[int, int]
    dims: dict[int, int]

    def concentrated_in(self, degree: int = 0) -> bool:
        return all(v == 0 for d, v in self.dims.items() if d != degree)

    def to_csv_rows(self) -> list[str]:
        return [f"{self.family},{profile_str(self.profile)},{d},{v}" for d, v in sorted(self.dims.items())]


def slice_cohomology(family: Family, profile: Profile, vertex_bound: int | None = None) -> SliceCohomology:
    """Cohomology of the slice complex per degree (exact over Q)."""
    basis = slice_basis(family, profile, vertex_bound)
    if not basis:
        return SliceCohomology(family.label(), profile, {}, {})
    lo, hi = min(basis), max(basis)
    mats = {}
    for d in range(lo - 1, hi + 1):
        src, tgt = basis.get(d, []), basis.get(d + 1, [])
        mats[d] = _matrix(family, src, tgt)
    dims = {}
    for d in range(lo, hi + 1):
        dims[d] = linalg.cohomology_dim(mats[d - 1], mats[d])
    return SliceCohomology(family.label(), profile, {d: len(b) for d, b in basis.items()}, dims)


# ---------------------------------------------------------------- quotients


def _tree(k, tag, outer_out, outer_ins, inner_out, inner_ins, inner_pos):
    """Two-vertex operad tree; ``inner_pos`` is the input slot of the outer vertex."""
    from .dgraph import HalfEdge, Vertex

    e_in = HalfEdge("E", 0, tuple(1 - b for b in inner_out))
    ins = list(outer_ins)
    ins.insert(inner_pos, e_in)
    outer = Vertex(tag, 2 - len(ins), (outer_out,), tuple(ins))
    inner = Vertex(tag, 2 - len(inner_ins), (HalfEdge("E", 0, tuple(inner_out)),), tuple(inner_ins))
    return DGraph(len(inner_out), (outer, inner))


def _ass1_relations() -> dict[tuple, list[tuple[int, DGraph]]]:
    """The six generating relations of the one-extra-color associative operad.

    Keyed by (output word, input words in planar order) of the ternary
    corolla they come from; each is a list of (coefficient, tree) written as
    left side minus right side. ``A`` is aligned with the basic direction,
    ``X`` is anti-aligned.
    """
    from .dgraph import HalfEdge

    A, X = "A", "X"

    def out_leg(c):
        return HalfEdge("L", 0, (1,) if c == A else (0,))

    def in_leg(label, c):
        return HalfEdge("L", label, (0,) if c == A else (1,))

    def left(o, a, b, e, c):  # ((1 2) 3): inner takes legs 1, 2
        return _tree(1, "a", out_leg(o), [in_leg(3, c)], (1,) if e == A else (0,), [in_leg(1, a), in_leg(2, b)], 0)

    def right(o, a, e, b, c):  # (1 (2 3)): inner takes legs 2, 3
        return _tree(1, "a", out_leg(o), [in_leg(1, a)], (1,) if e == A else (0,), [in_leg(2, b), in_leg(3, c)], 1)

    return {
        ((1,), ((0,), (0,), (0,))): [(1, left(A, A, A, A, A)), (-1, right(A, A, A, A, A))],
        ((1,), ((0,), (0,), (1,))): [
            (1, left(A, A, A, A, X)), (-1, right(A, A, A, A, X)), (-1, right(A, A, X, A, X)),
        ],
        ((1,), ((0,), (1,), (1,))): [(1, left(A, A, X, A, X)), (-1, right(A, A, X, X, X))],
        ((0,), ((1,), (1,), (1,))): [(1, left(X, X, X, X, X)), (-1, right(X, X, X, X, X))],
        ((0,), ((0,), (1,), (1,))): [
            (1, left(X, A, X, X, X)), (1, left(X, A, X, A, X)), (-1, right(X, A, X, X, X)),
        ],
        ((0,), ((0,), (0,), (1,))): [(1, left(X, A, A, A, X)), (-1, right(X, A, X, A, X))],
    }


ASS1_RELATIONS = _ass1_relations()


def relation_constants(family: Family, source: str = "auto") -> dict[tuple, Comb]:
    """Generating relations of Ass(k) or Lie(k), keyed by ternary local profile.

    ``source="transcribed"`` uses the stored Ass(1) table; ``"derived"``
    takes the differential of each ternary generator of the resolution.
    """
    if source == "auto":
        source = "transcribed" if isinstance(family, AssInf) and family.k == 1 else "derived"
    out = {}
    if source == "transcribed":
        if not (isinstance(family, AssInf) and family.k == 1):
            raise ValueError("transcribed relations exist only for Ass(1)")
        for key, terms in ASS1_RELATIONS.items():
            c = Comb(family.blocks)
            for coeff, g in terms:
                c.add(g, coeff)
            out[key] = c
        return out
    dg = AssInf(k=family.k) if isinstance(family, AssInf) else LieInf(k=family.k)
    for g in dg.generators(1, 3):
        v = g.verts[0]
        key = (v.outs[0].word, tuple(he.word for he in v.ins))
        c = Comb(dg.blocks)
        for coeff, h in dg.delta_corolla(_slot_local(v)):
            c.add(h, coeff)
        if isinstance(family, LieInf):
            out.setdefault(key, c)
        else:
            out[key] = c
    return out


def _slot_local(v):
    from .differential import _local
    return _local(v)


def quotient_dim(family: Family, profile: Profile, source: str = "auto") -> int:
    """dim(free slice) - rank(relations composed into every position)."""
    if isinstance(family, (AssInf, LieInf)):
        return _operad_quotient(family, profile, source)
    if isinstance(family, (IB, LieBdiop)):
        return _dioperad_quotient(family, profile)
    raise ValueError(f"{family.label()} has no relation presentation here")


def _operad_quotient(family, profile, source):
    (o,), ins = profile
    free = AssInf(k=family.k, binary_only=True) if isinstance(family, AssInf) else LieInf(k=family.k, binary_only=True)
    basis = [g for g in operad_trees(free, o[1], ins)]
    index = {}
    for g in basis:
        key, s, _ = canonical(g, free.blocks)
        if s:
            index.setdefault(key, len(index))
    if not index:
        return 0
    if source == "auto":
        source = "transcribed" if isinstance(family, AssInf) and family.k == 1 else "derived"
    rels = relation_constants(family, source) if source == "transcribed" else None
    dg = AssInf(k=family.k) if isinstance(family, AssInf) else LieInf(k=family.k)
    rows = []
    for ctx in operad_trees(dg, o[1], ins):
        tern = [p for p, v in enumerate(ctx.verts) if len(v.ins) == 3]
        if len(tern) != 1 or any(len(v.ins) > 3 for v in ctx.verts):
            continue
        p = tern[0]
        v = ctx.verts[p]
        if rels is not None:
            rel = rels[(v.outs[0].word, tuple(he.word for he in v.ins))]
        else:
            rel = Comb(dg.blocks)
            for coeff, h in dg.delta_corolla(_slot_local(v)):
                rel.add(h, coeff)
        row = {}
        for h, c in rel.items():
            s, ng = substitute(ctx, p, h)
            key, s2, _ = canonical(ng, free.blocks)
            if s2 == 0:
                continue
            if key not in index:
                raise KeyError("relation leaves the free slice")
            row[index[key]] = row.get(index[key], 0) + s * s2 * c
        rows.append(row)
    M = linalg.SparseMatrix(len(rows), len(index), {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})
    return len(index) - linalg.rank(M)


# dioperad relation templates ------------------------------------------------


def dioperad_relations(family: Family, outs: Sequence[int], ins: Sequence[int]) -> list[Comb]:
    """All relation instances with the given output and input labels."""
    from .forgetful import ib_relation_templates, lieb_relation_templates

    templates = ib_relation_templates() if isinstance(family, IB) else lieb_relation_templates()
    out = []
    for (m, n), build in templates:
        if (m, n) != (len(outs), len(ins)):
            continue
        for po in itertools.permutations(outs):
            for pi in itertools.permutations(ins):
                c = Comb(family.blocks)
                for coeff, g in build(po, pi):
                    c.add(g, coeff)
                if not c.is_zero():
                    out.append(c)
    return out


def _dioperad_quotient(family, profile):
    outs, ins = profile
    O = [lab for lab, _ in outs]
    I = [lab for lab, _ in ins]
    M, N = len(O), len(I)
    nv = M + N - 2
    if nv < 1:
        return 0
    shapes = [("mu", 1, 2), ("Delta", 2, 1)] if isinstance(family, IB) else [("br", 1, 2), ("cobr", 2, 1)]
    legs_o = [(lab, ()) for lab in O]
    legs_i = [(lab, ()) for lab in I]
    basis = dioperad_trees(family, legs_o, legs_i, nv, shapes)
    index = {canonical(g, family.blocks)[0]: i for i, g in enumerate(basis)}
    if nv == 1:
        return len(index)
    # contexts: trees with one placeholder vertex of relation arity
    placeholder = ("P", 0, 0)
    rows = []
    for (pm, pn) in ((1, 3), (3, 1), (2, 2)):
        ctx_shapes = shapes + [("P", pm, pn)]
        fam = _WithPlaceholder(family, pm, pn)
        for ctx in dioperad_trees(fam, legs_o, legs_i, nv - 1, ctx_shapes):
            ps = [p for p, v in enumerate(ctx.verts) if v.tag == "P"]
            if len(ps) != 1:
                continue
            p = ps[0]
            loc_o = list(range(pm))
            loc_i = list(range(pm, pm + pn))
            for rel in dioperad_relations(family, loc_o, loc_i):
                row = {}
                for h, c in rel.items():
                    s, ng = substitute(ctx, p, h)
                    key, s2, _ = canonical(ng, family.blocks)
                    if s2 == 0:
                        continue
                    row[index[key]] = row.get(index[key], 0) + s * s2 * c
                rows.append(row)
    Mx = linalg.SparseMatrix(len(rows), len(index), {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})
    return len(index) - linalg.rank(Mx)


class _WithPlaceholder:
    """A dioperad family extended by one unsymmetric placeholder vertex."""

    def __init__(self, base, m, n):
        self.base, self.m, self.n, self.k = base, m, n, 0

    def blocks(self, tag):
        return ("planar", "planar") if tag == "P" else self.base.blocks(tag)

    def degree(self, tag, m, n):
        return 0

    def valid(self, v):
        if v.tag == "P":
            return (len(v.outs), len(v.ins)) == (self.m, self.n)
        return self.base.valid(v)


@dataclass(frozen=True)
class ResolutionRow:
    profile: Profile
    dims: dict[int, int] | None  # None when the slice is not a complex
    quotient: int

    @property
    def ok(self) -> bool:
        return self.dims is not None and all(v == 0 for d, v in self.dims.items() if d != 0) and self.dims.get(0, 0) == self.quotient


def resolution_rows(kind: str, k: int, max_arity: int) -> list[ResolutionRow]:
    """Slice cohomology of AssInf(k) or LieInf(k) against the quotient
    dimension of Ass(k) or Lie(k), one row per orbit profile."""
    resolution = {"ass": AssInf(k=k), "lie": LieInf(k=k)}[kind]
    quotient = AssInf(k=k, binary_only=True) if kind == "ass" else LieInf(k=k, binary_only=True)
    rows = []
    for n in range(2, max_arity + 1):
        for prof in profiles(resolution, 1, n):
            try:
                dims = slice_cohomology(resolution, prof).dims
            except linalg.CompositionError:
                dims = None
            rows.append(ResolutionRow(prof, dims, quotient_dim(quotient, prof)))
    return rows

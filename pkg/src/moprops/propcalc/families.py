"""Generator families and their differentials on generating corollas.

Corolla legs are labelled ``0..m-1`` (basic outputs) and ``m..m+n-1``
(basic inputs). Words are tuples of ``k`` bits, 1 meaning the extra color
points out of the vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from ..graphcore import _perm_parity
from .dgraph import PLANAR, SKEW, SYM, DGraph, HalfEdge, Vertex, comp, corolla

Term = tuple[int, DGraph]  # (coefficient, two-vertex graph with slot-labelled legs)


def words(k: int) -> list[tuple[int, ...]]:
    return [tuple(w) for w in itertools.product((0, 1), repeat=k)]


def input_code(w: tuple[int, ...]) -> str:
    """Aligned/anti-aligned letters of an input word (bit 0 = aligned)."""
    return "".join("-" if b else "+" for b in w)


def curvature_ok(v: Vertex, k: int) -> bool:
    """Every extra color has one half-edge pointing in and one pointing out."""
    hs = v.outs + v.ins
    for t in range(k):
        bits = {he.word[t] for he in hs}
        if bits != {0, 1}:
            return False
    return True


def is_special(v: Vertex) -> bool:
    """Input words nondecreasing in planar order, aligned before anti-aligned."""
    return all(a.word <= b.word for a, b in zip(v.ins, v.ins[1:]))


def _shuffle_parity(first: list[int], second: list[int]) -> int:
    return _perm_parity(first + second)


@dataclass(frozen=True)
class Family:
    """Base class; ``tags`` maps a vertex tag to its (output, input) block types."""

    name: str
    k: int = 0
    params: dict = field(default_factory=dict, compare=False, hash=False)

    is_dg = False

    def blocks(self, tag: str) -> tuple[str, str]:
        raise NotImplementedError

    def degree(self, tag: str, m: int, n: int) -> int:
        raise NotImplementedError

    def valid(self, v: Vertex) -> bool:
        raise NotImplementedError

    def delta_corolla(self, v: Vertex) -> list[Term]:
        return []

    def generators(self, m: int, n: int, profile=None) -> list[DGraph]:
        raise NotImplementedError

    def arities(self, bound: int) -> Iterator[tuple[int, int]]:
        raise NotImplementedError

    def label(self) -> str:
        if self.params:
            inner = ",".join(str(v) for v in self.params.values())
            return f"{self.name}({inner})"
        return self.name


def _profiles(k: int, m: int, n: int) -> Iterator[tuple[tuple, tuple]]:
    """Orbit representatives: words nondecreasing along the labels on each side."""
    ws = words(k)
    for ow in itertools.combinations_with_replacement(ws, m):
        for iw in itertools.combinations_with_replacement(ws, n):
            yield ow, iw


# ---------------------------------------------------------------- operads


@dataclass(frozen=True)
class AssInf(Family):
    """Planar corollas with one output, n >= 2 special inputs, degree 2 - n."""

    name: str = "AssInf"
    binary_only: bool = False

    is_dg = True

    def __post_init__(self):
        object.__setattr__(self, "params", {"k": self.k})
        if self.binary_only:
            object.__setattr__(self, "name", "Ass")

    def blocks(self, tag):
        return (PLANAR, PLANAR)

    def degree(self, tag, m, n):
        return 2 - n

    def valid(self, v):
        n = len(v.ins)
        if len(v.outs) != 1 or n < 2 or (self.binary_only and n != 2):
            return False
        return is_special(v) and curvature_ok(v, self.k)

    def delta_corolla(self, v):
        if self.binary_only:
            return []
        n = len(v.ins)
        out = []
        for r in range(n - 1):
            for l in range(2, n - r + 1):
                if n - l + 1 < 2:
                    continue
                sign = -1 if (r * l + n - r - l + 1) % 2 else 1
                inner_ins = v.ins[r:r + l]
                for s in words(self.k):
                    inner = Vertex("a", 2 - l, (HalfEdge("E", 0, s),), inner_ins)
                    outer = Vertex(
                        "a", 2 - (n - l + 1), v.outs,
                        v.ins[:r] + (HalfEdge("E", 0, comp(s)),) + v.ins[r + l:],
                    )
                    if self.valid(inner) and self.valid(outer):
                        out.append((sign, DGraph(self.k, (outer, inner))))
        return out

    def generators(self, m, n, profile=None):
        if m != 1 or n < 2 or (self.binary_only and n != 2):
            return []
        profs = [profile] if profile is not None else list(_profiles(self.k, 1, n))
        out = []
        for ow, iw in profs:
            labels = list(range(1, n + 1))
            seen = set()
            for perm in itertools.permutations(range(n)):
                order = tuple(iw[i] for i in perm)
                if any(a > b for a, b in zip(order, order[1:])):
                    continue
                key = tuple(labels[i] for i in perm)
                if key in seen:
                    continue
                seen.add(key)
                g = corolla("a", 2 - n, [(0, ow[0])], [(labels[i], iw[i]) for i in perm], self.k)
                if self.valid(g.verts[0]):
                    out.append(g)
        return out

    def arities(self, bound):
        for n in range(2, bound + 1):
            yield 1, n


def Ass(k: int) -> AssInf:
    return AssInf(k=k, binary_only=True)


@dataclass(frozen=True)
class LieInf(Family):
    """Skew-symmetric inputs, one output, degree 2 - n."""

    name: str = "LieInf"
    binary_only: bool = False
    # vertex order of the two-vertex terms: "outer" puts the vertex carrying the
    # output first; "inner" puts the vertex with only leaf inputs first
    first: str = "outer"

    is_dg = True

    def __post_init__(self):
        object.__setattr__(self, "params", {"k": self.k})
        if self.binary_only:
            object.__setattr__(self, "name", "Lie")

    def blocks(self, tag):
        return (PLANAR, SKEW)

    def degree(self, tag, m, n):
        return 2 - n

    def valid(self, v):
        n = len(v.ins)
        if len(v.outs) != 1 or n < 2 or (self.binary_only and n != 2):
            return False
        return curvature_ok(v, self.k)

    def delta_corolla(self, v):
        if self.binary_only:
            return []
        n = len(v.ins)
        out = []
        idx = list(range(n))
        for size in range(2, n):
            for J1 in itertools.combinations(idx, size):
                J2 = [i for i in idx if i not in J1]
                e = 1 + len(J2) + _shuffle_parity(list(J1), J2)
                sign = -1 if e % 2 else 1
                for s in words(self.k):
                    inner = Vertex("l", 2 - len(J1), (HalfEdge("E", 0, s),), tuple(v.ins[i] for i in J1))
                    outer = Vertex(
                        "l", 2 - (len(J2) + 1), v.outs,
                        (HalfEdge("E", 0, comp(s)),) + tuple(v.ins[i] for i in J2),
                    )
                    if self.valid(inner) and self.valid(outer):
                        pair = (inner, outer) if self.first == "inner" else (outer, inner)
                        out.append((sign, DGraph(self.k, pair)))
        return out

    def generators(self, m, n, profile=None):
        if m != 1 or n < 2 or (self.binary_only and n != 2):
            return []
        profs = [profile] if profile is not None else list(_profiles(self.k, 1, n))
        out = []
        for ow, iw in profs:
            g = corolla("l", 2 - n, [(0, ow[0])], [(i + 1, iw[i]) for i in range(n)], self.k)
            if self.valid(g.verts[0]):
                out.append(g)
        return out

    def arities(self, bound):
        for n in range(2, bound + 1):
            yield 1, n


def Lie(k: int) -> LieInf:
    return LieInf(k=k, binary_only=True)


# ---------------------------------------------------------------- props


@dataclass(frozen=True)
class HoLB(Family):
    """(Skew)symmetric corollas with m, n >= 1, m + n >= 3, degree 1 + c(1-m) + d(1-n)."""

    name: str = "HoLB"
    c: int = 1
    d: int = 1
    # "auto" picks the exponent per parity of (c, d); "I1" and "I2" force the
    # two printed exponents for c = d = 1
    sign_variant: str = "auto"
    first: str = "lower"

    is_dg = True

    def __post_init__(self):
        object.__setattr__(self, "params", {"c": self.c, "d": self.d, "k": self.k})

    def blocks(self, tag):
        return (SKEW if self.c % 2 else SYM, SKEW if self.d % 2 else SYM)

    def degree(self, tag, m, n):
        return 1 + self.c * (1 - m) + self.d * (1 - n)

    def valid(self, v):
        m, n = len(v.outs), len(v.ins)
        return m >= 1 and n >= 1 and m + n >= 3 and curvature_ok(v, self.k)

    def delta_corolla(self, v):
        m, n = len(v.outs), len(v.ins)
        out = []
        oi, ii = list(range(m)), list(range(n))
        for a in range(0, m):
            for I1 in itertools.combinations(oi, a):
                I2 = [i for i in oi if i not in I1]
                for b in range(1, n + 1):
                    for J1 in itertools.combinations(ii, b):
                        J2 = [j for j in ii if j not in J1]
                        e = self._exponent(len(I1), len(I2), len(J1), len(J2)) + (
                            self.c * _shuffle_parity(list(I1), I2)
                            + self.d * _shuffle_parity(list(J1), J2)
                        )
                        sign = -1 if e % 2 else 1
                        for s in words(self.k):
                            lower = Vertex(
                                "h", self.degree("h", len(I1) + 1, len(J1)),
                                tuple(v.outs[i] for i in I1) + (HalfEdge("E", 0, s),),
                                tuple(v.ins[j] for j in J1),
                            )
                            upper = Vertex(
                                "h", self.degree("h", len(I2), len(J2) + 1),
                                tuple(v.outs[i] for i in I2),
                                (HalfEdge("E", 0, comp(s)),) + tuple(v.ins[j] for j in J2),
                            )
                            if self.valid(lower) and self.valid(upper):
                                pair = (lower, upper) if self.first == "lower" else (upper, lower)
                                out.append((sign, DGraph(self.k, pair)))
        return out

    def _exponent(self, i1: int, i2: int, j1: int, j2: int) -> int:
        v = self.sign_variant
        if v == "I1":
            return i1 * j2 + i1 + j2
        if v == "I2":
            return i1 * j2 + i2 + j2
        parity = (self.c % 2, self.d % 2)
        if parity == (1, 1):
            return i1 * j2 + i2 + j2
        if parity == (0, 1):
            return i1 + i2 + j2
        if parity == (1, 0):
            return i1
        return 0

    def generators(self, m, n, profile=None):
        if m < 1 or n < 1 or m + n < 3:
            return []
        profs = [profile] if profile is not None else list(_profiles(self.k, m, n))
        out = []
        for ow, iw in profs:
            g = corolla(
                "h", self.degree("h", m, n),
                [(i, ow[i]) for i in range(m)], [(m + j, iw[j]) for j in range(n)], self.k,
            )
            if self.valid(g.verts[0]):
                out.append(g)
        return out

    def arities(self, bound):
        for total in range(3, bound + 1):
            for m in range(1, total):
                yield m, total - m


# ---------------------------------------------------------------- dioperads


@dataclass(frozen=True)
class IB(Family):
    """Product ``mu`` (planar inputs) and coproduct ``Delta`` (planar outputs)."""

    name: str = "IB"

    def blocks(self, tag):
        return (PLANAR, PLANAR)

    def degree(self, tag, m, n):
        return 0

    def valid(self, v):
        return (v.tag, len(v.outs), len(v.ins)) in {("mu", 1, 2), ("Delta", 2, 1)}

    def generators(self, m, n, profile=None):
        if (m, n) == (1, 2):
            return [corolla("mu", 0, [(0, ())], [(1, ()), (2, ())], 0), corolla("mu", 0, [(0, ())], [(2, ()), (1, ())], 0)]
        if (m, n) == (2, 1):
            return [corolla("Delta", 0, [(0, ()), (1, ())], [(2, ())], 0), corolla("Delta", 0, [(1, ()), (0, ())], [(2, ())], 0)]
        return []


@dataclass(frozen=True)
class LieBdiop(Family):
    """Skew bracket ``br`` and skew cobracket ``cobr``, both of degree 0."""

    name: str = "LieBdiop"

    def blocks(self, tag):
        return (SKEW, SKEW)

    def degree(self, tag, m, n):
        return 0

    def valid(self, v):
        return (v.tag, len(v.outs), len(v.ins)) in {("br", 1, 2), ("cobr", 2, 1)}

    def generators(self, m, n, profile=None):
        if (m, n) == (1, 2):
            return [corolla("br", 0, [(0, ())], [(1, ()), (2, ())], 0)]
        if (m, n) == (2, 1):
            return [corolla("cobr", 0, [(0, ()), (1, ())], [(2, ())], 0)]
        return []


def generator_basis(family: Family, m: int, n: int, profile=None) -> list[DGraph]:
    """One corolla per symmetry orbit, in deterministic order."""
    return family.generators(m, n, profile)

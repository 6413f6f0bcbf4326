"""Finite-dimensional representations of multi-oriented props.

A braned space splits into blocks ``W^m`` indexed by sign vectors
``m in {+,-}^k``. A leg lives in block ``m`` where ``m[t] = +`` iff extra
color ``t`` agrees with the basic direction at that leg. Outputs carry
vectors, inputs carry covectors, and an internal edge pairs the two through
the identity on its block. Graphs evaluate to dense tensors with exact
rational entries.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .graphcore import _perm_parity
from .propcalc.dgraph import PLANAR, SKEW, SYM, DGraph, HalfEdge, Vertex, comp
from .propcalc.families import AssInf, Family, LieInf
from .propcalc.forgetful import _TABLE

Key = tuple[str, tuple, tuple]  # (tag, output words, input words)
ZERO = Fraction(0)


# ---------------------------------------------------------------- spaces


def _sign_key(s: str | Sequence[str]) -> str:
    s = "".join(s)
    if any(ch not in "+-" for ch in s):
        raise ValueError(f"bad block label {s!r}")
    return s


@dataclass(frozen=True)
class BranedSpace:
    k: int
    block_dims: Mapping[str, int]
    lagrangian: bool = False
    grading: Mapping[str, int] = field(default_factory=dict)

    def dim(self, block: str) -> int:
        return self.block_dims.get(block, 0)

    @property
    def total(self) -> int:
        return sum(self.block_dims.values())

    def brane(self, t: int, sign: str) -> int:
        """dim W_t^sign: the sum of blocks with that sign at color t."""
        return sum(d for b, d in self.block_dims.items() if b[t] == sign)

    def opposite(self, block: str) -> str:
        return "".join("-" if ch == "+" else "+" for ch in block)

    def pairing(self, block: str) -> np.ndarray:
        """Matrix of the pairing of ``W^block`` with the dual of its opposite block."""
        if not self.lagrangian:
            raise ValueError("space carries no symplectic pairing")
        n = self.dim(block)
        return _identity(n)


def build_braned_space(k: int, block_dims: Mapping, lagrangian: bool = False, grading=None) -> BranedSpace:
    dims = {}
    for b, d in block_dims.items():
        b = _sign_key(b)
        if len(b) != k:
            raise ValueError(f"block {b!r} has wrong length for k={k}")
        if int(d) < 0:
            raise ValueError("block dimensions must be nonnegative")
        dims[b] = int(d)
    for b in ("".join(p) for p in itertools.product("+-", repeat=k)):
        dims.setdefault(b, 0)
    space = BranedSpace(k, dims, lagrangian, dict(grading or {}))
    if lagrangian:
        for t in range(k):
            if space.brane(t, "+") != space.brane(t, "-"):
                raise ValueError(f"color {t + 1}: W^+ and W^- have different dimensions")
    return space


def leg_block(side: str, word: Sequence[int]) -> str:
    """Block of a half-edge: ``+`` where the color runs with the basic direction."""
    return "".join("+" if (b == 1) == (side == "out") else "-" for b in word)


# ---------------------------------------------------------------- tensors


def _zeros(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(ZERO)
    return a


def _identity(n: int) -> np.ndarray:
    a = _zeros((n, n))
    for i in range(n):
        a[i, i] = Fraction(1)
    return a


def as_tensor(data) -> np.ndarray:
    a = np.array(data, dtype=object)
    flat = a.reshape(-1)
    for i, x in enumerate(flat):
        flat[i] = Fraction(x)
    return a


def vertex_key(v: Vertex) -> Key:
    return (v.tag, tuple(he.word for he in v.outs), tuple(he.word for he in v.ins))


def _slot_blocks(key: Key) -> list[str]:
    _, ow, iw = key
    return [leg_block("out", w) for w in ow] + [leg_block("in", w) for w in iw]


def _side_perms(words: tuple, target: tuple, kind: str):
    """Permutations p with words[p[i]] == target[i], as (p, sign)."""
    if kind == PLANAR:
        if words == target:
            yield tuple(range(len(words))), 1
        return
    for p in itertools.permutations(range(len(words))):
        if all(words[p[i]] == target[i] for i in range(len(words))):
            yield p, (_perm_parity(list(p)) and -1 or 1) if kind == SKEW else 1


@dataclass(frozen=True)
class Representation:
    """Generator tensors keyed by (tag, output words, input words).

    Axes follow the slots: outputs, then inputs. Corollas that differ from a
    stored key by permuting symmetric or skew slots are looked up with the
    matching sign.
    """

    space: BranedSpace
    tensors: Mapping[Key, np.ndarray]
    blocks: Callable[[str], tuple[str, str]] = lambda tag: (PLANAR, PLANAR)
    reduced: bool = False

    def __post_init__(self):
        for key, T in self.tensors.items():
            want = tuple(self.space.dim(b) for b in _slot_blocks(key))
            if T.shape != want:
                raise ValueError(f"tensor for {key} has shape {T.shape}, expected {want}")
            self._check_symmetry(key, T)
        if self.reduced:
            _check_reduced(self)

    def _check_symmetry(self, key: Key, T: np.ndarray) -> None:
        tag, ow, iw = key
        ko, ki = self.blocks(tag)
        m = len(ow)
        for kind, ws, off in ((ko, ow, 0), (ki, iw, m)):
            if kind == PLANAR:
                continue
            sgn = -1 if kind == SKEW else 1
            for i, j in itertools.combinations(range(len(ws)), 2):
                if ws[i] != ws[j]:
                    continue
                axes = list(range(T.ndim))
                axes[off + i], axes[off + j] = axes[off + j], axes[off + i]
                if not np.array_equal(np.transpose(T, axes), T * sgn):
                    raise ValueError(f"tensor for {key} does not have the {kind} symmetry of its corolla")

    def tensor_for(self, v: Vertex) -> tuple[int, np.ndarray]:
        key = vertex_key(v)
        if key in self.tensors:
            return 1, self.tensors[key]
        tag, ow, iw = key
        ko, ki = self.blocks(tag)
        m = len(ow)
        for stored, T in self.tensors.items():
            if stored[0] != tag or len(stored[1]) != m or len(stored[2]) != len(iw):
                continue
            for po, so in _side_perms(ow, stored[1], ko):
                for pi, si in _side_perms(iw, stored[2], ki):
                    # stored axis i is vertex axis p[i]; invert to get vertex order
                    p = list(po) + [m + x for x in pi]
                    inv = [0] * len(p)
                    for i, x in enumerate(p):
                        inv[x] = i
                    return so * si, np.transpose(T, inv)
        raise KeyError(f"no tensor for generator {key}")


def _check_reduced(rep: Representation) -> None:
    seen: dict[str, np.ndarray] = {}
    for key, T in rep.tensors.items():
        word_key = _table_key(key)
        if word_key is None:
            continue
        name, X = _forget(word_key, T)
        if name in seen and not np.array_equal(seen[name], X):
            raise ValueError(f"reduced flag: {key} disagrees with another generator of the same underlying type")
        seen.setdefault(name, X)


def _table_key(key: Key):
    _, ow, iw = key
    if len(ow) != 1 or len(iw) != 2 or len(ow[0]) != 1:
        return None
    w = (ow[0][0], iw[0][0], iw[1][0])
    return w if w in _TABLE else None


def _forget(word_key, T: np.ndarray) -> tuple[str, np.ndarray]:
    """The underlying product or coproduct tensor, axes (outputs, inputs)."""
    tag, outs, ins = _TABLE[word_key]
    pos = {"o": 0, "a": 1, "b": 2}
    return tag, np.transpose(T, [pos[x] for x in outs + ins])


def _remember(word_key, X: np.ndarray) -> np.ndarray:
    tag, outs, ins = _TABLE[word_key]
    names = outs + ins
    return np.transpose(X, [names.index(x) for x in "oab"])


# ---------------------------------------------------------------- evaluation


@dataclass
class Evaluation:
    legs: tuple[tuple[int, str, tuple], ...]  # (label, side, word), sorted by label
    array: np.ndarray

    def blocks(self) -> list[str]:
        return [leg_block(side, w) for _, side, w in self.legs]

    def as_map(self, tau: int = 0) -> tuple[np.ndarray, list[int], list[int]]:
        """Matrix along color ``tau`` (0 = basic): rows are the tau-outgoing
        legs, columns the tau-incoming ones."""
        def outgoing(side, w):
            return side == "out" if tau == 0 else w[tau - 1] == 1

        outs = [i for i, (_, s, w) in enumerate(self.legs) if outgoing(s, w)]
        ins = [i for i, (_, s, w) in enumerate(self.legs) if not outgoing(s, w)]
        A = np.transpose(self.array, outs + ins)
        rows = int(np.prod([self.array.shape[i] for i in outs]))
        cols = int(np.prod([self.array.shape[i] for i in ins]))
        return A.reshape(rows, cols), [self.legs[i][0] for i in outs], [self.legs[i][0] for i in ins]

    def max_abs(self) -> Fraction:
        return max((abs(x) for x in self.array.reshape(-1)), default=ZERO)


def evaluate(g: DGraph, rep: Representation, fixed: Mapping[int, int] | None = None) -> Evaluation:
    """Contract the generator tensors of ``g`` along its internal edges.

    ``fixed`` pins leg labels to basis indices; the pinned legs drop out of
    the result, which is how single coefficients are read off cheaply.
    """
    fixed = dict(fixed or {})
    letters: dict[tuple, int] = {}
    legs = {}
    operands = []
    sign = 1
    for v in g.verts:
        s, T = rep.tensor_for(v)
        sign *= s
        index = []
        subs = []
        for slot, (side, he) in enumerate([("out", h) for h in v.outs] + [("in", h) for h in v.ins]):
            n = rep.space.dim(leg_block(side, he.word))
            if T.shape[slot] != n:
                raise ValueError(f"vertex {v.tag}: slot {slot} has size {T.shape[slot]}, block needs {n}")
            if he.kind == "L":
                legs[he.ref] = (he.ref, side, he.word)
                if he.ref in fixed:
                    index.append(fixed[he.ref])
                    continue
            index.append(slice(None))
            subs.append(letters.setdefault((he.kind, he.ref), len(letters)))
        operands += [T[tuple(index)], subs]
    free = sorted(lab for lab in legs if lab not in fixed)
    out = [letters[("L", lab)] for lab in free]
    if len(letters) > 52:
        raise ValueError("graph too large for dense contraction")
    res = np.einsum(*operands, out, optimize=len(g.verts) > 2)
    res = np.asarray(res, dtype=object)
    if sign < 0:
        res = -res
    return Evaluation(tuple(legs[lab] for lab in free), res)


def contract(a: Evaluation, b: Evaluation, matching: Iterable[tuple[int, int]]) -> Evaluation:
    """Pair output legs of ``a`` with input legs of ``b`` (oracle for grafting)."""
    matching = list(matching)
    ia = [next(i for i, x in enumerate(a.legs) if x[0] == la) for la, _ in matching]
    ib = [next(i for i, x in enumerate(b.legs) if x[0] == lb) for _, lb in matching]
    res = np.tensordot(a.array, b.array, axes=(ia, ib)) if matching else np.multiply.outer(a.array, b.array)
    legs = [x for i, x in enumerate(a.legs) if i not in ia] + [x for i, x in enumerate(b.legs) if i not in ib]
    order = sorted(range(len(legs)), key=lambda i: legs[i][0])
    return Evaluation(tuple(legs[i] for i in order), np.transpose(np.asarray(res, dtype=object), order))


# ---------------------------------------------------------------- relations


@dataclass
class RelationReport:
    residuals: list[tuple[str, tuple, Fraction]] = field(default_factory=list)  # (name, profile, max |entry|)

    @property
    def ok(self) -> bool:
        return all(r == 0 for _, _, r in self.residuals)

    @property
    def max_residual(self) -> Fraction:
        return max((r for _, _, r in self.residuals), default=ZERO)

    @property
    def failures(self) -> list[str]:
        return [n for n, _, r in self.residuals if r != 0]


def check_relations(rep: Representation, family: Family) -> RelationReport:
    """Evaluate every generating relation of Ass(k) or Lie(k) in ``rep``."""
    from .propcalc.slices import relation_constants

    report = RelationReport()
    for i, (key, rel) in enumerate(relation_constants(family).items()):
        total = None
        for g, c in rel.items():
            ev = evaluate(g, rep)
            total = ev.array * c if total is None else total + ev.array * c
        res = ZERO if total is None else max((abs(x) for x in total.reshape(-1)), default=ZERO)
        report.residuals.append((f"R{i + 1}", key, Fraction(res)))
    return report


# ---------------------------------------------------------------- reduced representations


def reduced_representation(family: Family, space: BranedSpace, product, coproduct) -> Representation:
    """Reduced representation of a k=1 family from a product ``P[o, a, b]``
    and a coproduct ``C[x, y, z]`` on ``W^+`` (outputs first).

    Every binary generator gets the same underlying tensor, re-indexed by
    which legs the extra color leaves; the pairing identifies the dual of
    ``W^-`` with ``W^+``.
    """
    if family.k != 1 or not space.lagrangian:
        raise ValueError("reduced representations need k=1 and a Lagrangian space")
    under = {"P": as_tensor(product), "C": as_tensor(coproduct)}
    n = space.dim("+")
    for name, X in under.items():
        if X.shape != (n, n, n):
            raise ValueError(f"{name} must have shape {(n, n, n)}, got {X.shape}")
    tensors = {}
    for g in family.generators(1, 2):
        key = vertex_key(g.verts[0])
        wk = _table_key(key)
        tensors[key] = _remember(wk, under[_TABLE[wk][0]])
    return Representation(space, tensors, family.blocks, reduced=True)


def _check_skew(X: np.ndarray, axes: tuple[int, int], what: str) -> None:
    perm = list(range(X.ndim))
    perm[axes[0]], perm[axes[1]] = perm[axes[1]], perm[axes[0]]
    if not np.array_equal(np.transpose(X, perm), -X):
        raise ValueError(f"{what} is not skew-symmetric")


def manin_from_bialgebra(bracket, cobracket) -> Representation:
    """Reduced representation of Lie(1) from structure constants on W^+.

    ``bracket[i][j][c]`` is the e_c coefficient of [e_i, e_j];
    ``cobracket[c][i][j]`` is the e_i (x) e_j coefficient of delta(e_c).
    """
    br, cob = as_tensor(bracket), as_tensor(cobracket)
    n = br.shape[0]
    if br.shape != (n, n, n) or cob.shape != (n, n, n):
        raise ValueError("bracket and cobracket must be n x n x n")
    _check_skew(br, (0, 1), "bracket")
    _check_skew(cob, (1, 2), "cobracket")
    space = build_braned_space(1, {"+": n, "-": n}, lagrangian=True)
    return reduced_representation(LieInf(k=1, binary_only=True), space, np.transpose(br, (2, 0, 1)), np.transpose(cob, (1, 2, 0)))


def ib_from_algebra(product, coproduct) -> Representation:
    """Reduced representation of Ass(1): ``product[i][j][c]`` for e_i e_j,
    ``coproduct[c][i][j]`` for Delta(e_c)."""
    mu, de = as_tensor(product), as_tensor(coproduct)
    n = mu.shape[0]
    if mu.shape != (n, n, n) or de.shape != (n, n, n):
        raise ValueError("product and coproduct must be n x n x n")
    space = build_braned_space(1, {"+": n, "-": n}, lagrangian=True)
    return reduced_representation(AssInf(k=1, binary_only=True), space, np.transpose(mu, (2, 0, 1)), np.transpose(de, (1, 2, 0)))


# ---------------------------------------------------------------- independent checkers


def _ein(*args):
    return np.asarray(np.einsum(*args), dtype=object)


def _is_zero(X: np.ndarray) -> bool:
    return all(x == 0 for x in X.reshape(-1))


def lie_bialgebra_conditions(bracket, cobracket) -> dict[str, bool]:
    """Jacobi, co-Jacobi and the cocycle identity, checked on structure constants."""
    br, cob = as_tensor(bracket), as_tensor(cobracket)
    # [[x, y], z] as J[x, y, z, out]
    J = _ein(br, [0, 1, 4], br, [4, 2, 3], [0, 1, 2, 3])
    jac = J + np.transpose(J, (1, 2, 0, 3)) + np.transpose(J, (2, 0, 1, 3))
    # (delta x 1) delta(x) as D[x, a, b, c]
    D = _ein(cob, [0, 4, 3], cob, [4, 1, 2], [0, 1, 2, 3])
    cojac = D + np.transpose(D, (0, 2, 3, 1)) + np.transpose(D, (0, 3, 1, 2))
    # delta([x, y]) versus ad_x delta(y) - ad_y delta(x), as [x, y, a, b]
    lhs = _ein(br, [0, 1, 4], cob, [4, 2, 3], [0, 1, 2, 3])
    ad = _ein(cob, [1, 4, 3], br, [0, 4, 2], [0, 1, 2, 3]) + _ein(cob, [1, 2, 4], br, [0, 4, 3], [0, 1, 2, 3])
    cocycle = lhs - ad + np.transpose(ad, (1, 0, 2, 3))
    return {"jacobi": _is_zero(jac), "cojacobi": _is_zero(cojac), "cocycle": _is_zero(cocycle)}


def is_lie_bialgebra(bracket, cobracket) -> bool:
    return all(lie_bialgebra_conditions(bracket, cobracket).values())


def infinitesimal_bialgebra_conditions(product, coproduct) -> dict[str, bool]:
    """Associativity, coassociativity and Delta(xy) = x.Delta(y) + Delta(x).y."""
    mu, de = as_tensor(product), as_tensor(coproduct)
    assoc = _ein(mu, [0, 1, 4], mu, [4, 2, 3], [0, 1, 2, 3]) - _ein(mu, [1, 2, 4], mu, [0, 4, 3], [0, 1, 2, 3])
    coassoc = _ein(de, [0, 4, 3], de, [4, 1, 2], [0, 1, 2, 3]) - _ein(de, [0, 1, 4], de, [4, 2, 3], [0, 1, 2, 3])
    lhs = _ein(mu, [0, 1, 4], de, [4, 2, 3], [0, 1, 2, 3])
    rhs = _ein(de, [1, 4, 3], mu, [0, 4, 2], [0, 1, 2, 3]) + _ein(de, [0, 2, 4], mu, [4, 1, 3], [0, 1, 2, 3])
    return {"assoc": _is_zero(assoc), "coassoc": _is_zero(coassoc), "compat": _is_zero(lhs - rhs)}


def is_infinitesimal_bialgebra(product, coproduct) -> bool:
    return all(infinitesimal_bialgebra_conditions(product, coproduct).values())


# ---------------------------------------------------------------- truncations


@dataclass(frozen=True)
class TruncationFamily:
    """Representations on the spans of the first ``p`` basis vectors of each block."""

    levels: tuple[int, ...]
    build: Callable[[int], Representation]

    def at(self, p: int) -> Representation:
        return self.build(p)


def _indicator(shape, pred) -> np.ndarray:
    a = _zeros(shape)
    for idx in itertools.product(*(range(n) for n in shape)):
        if pred(*idx):
            a[idx] = Fraction(1)
    return a


# Built-in divergence family, k=1, bases indexed from 0 (index 0 is the first
# basis vector). Axes: coproduct [out a, out b, in d], product [out c, in a, in b].
#   coproduct, both outputs aligned:  Psi[a,b,d] = [a=d][b=0]
#       for a fixed input d only finitely many (a, b) are nonzero
#   product, both inputs aligned:     Phi[c,a,b] = [c=a][b=0]
#       for fixed inputs (a, b) only finitely many outputs c
#   coproduct, second output reversed: Psi[a,b,d] = [a=b][d=0]
#       for fixed outputs (a, b) only finitely many inputs d
#   product, second input reversed:    Phi[c,a,b] = [a=b][c=0]
#       for a fixed aligned input a only finitely many (c, b)
# Glued along two edges, the aligned pair gives a single term per coefficient,
# while the mixed pair sums [a=b] over all a, i.e. p terms.
_UP, _DN = (1,), (0,)
DIVERGENCE_PATTERNS = {
    ("Delta", (_UP, _UP), (_DN,)): lambda a, b, d: a == d and b == 0,
    ("mu", (_UP,), (_DN, _DN)): lambda c, a, b: c == a and b == 0,
    ("Delta", (_UP, _DN), (_DN,)): lambda a, b, d: a == b and d == 0,
    ("mu", (_UP,), (_DN, _UP)): lambda c, a, b: a == b and c == 0,
}


def divergence_family(levels: Sequence[int] = (4, 8, 16, 32), zero: bool = False) -> TruncationFamily:
    def build(p: int) -> Representation:
        space = build_braned_space(1, {"+": p, "-": p}, lagrangian=True)
        tensors = {}
        for key, pred in DIVERGENCE_PATTERNS.items():
            shape = tuple(p for _ in _slot_blocks(key))
            tensors[key] = _zeros(shape) if zero else _indicator(shape, pred)
        return Representation(space, tensors)

    return TruncationFamily(tuple(levels), build)


def two_edge_diagram(reversed_edge: bool) -> DGraph:
    """Coproduct below a product, joined by two edges; the second edge has
    its extra color reversed when ``reversed_edge``. Legs: 0 out, 1 in."""
    w1 = _DN if reversed_edge else _UP
    lower = Vertex("Delta", 0, (HalfEdge("E", 0, _UP), HalfEdge("E", 1, w1)), (HalfEdge("L", 1, _DN),))
    upper = Vertex("mu", 0, (HalfEdge("L", 0, _UP),), (HalfEdge("E", 0, _DN), HalfEdge("E", 1, comp(w1))))
    return DGraph(1, (lower, upper))


def divergence_probe(fam: TruncationFamily, diagram: DGraph, coords: Mapping[int, int], levels=None) -> dict[int, Fraction]:
    """The coefficient at ``coords`` (leg label -> basis index) for each level."""
    out = {}
    for p in levels or fam.levels:
        ev = evaluate(diagram, fam.at(p), fixed=coords)
        out[p] = Fraction(ev.array.reshape(-1)[0]) if ev.array.size else ZERO
    return out


# ---------------------------------------------------------------- JSON


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rep_to_json(rep: Representation) -> dict:
    tensors = []
    for (tag, ow, iw), T in sorted(rep.tensors.items()):
        entries = [[list(idx), _q(T[idx])] for idx in itertools.product(*(range(n) for n in T.shape)) if T[idx] != 0]
        tensors.append({
            "generator": {"tag": tag, "outs": [list(w) for w in ow], "ins": [list(w) for w in iw]},
            "entries": entries,
        })
    return {
        "space": {"k": rep.space.k, "block_dims": dict(rep.space.block_dims), "lagrangian": rep.space.lagrangian},
        "tensors": tensors,
        "reduced": rep.reduced,
    }


def rep_from_json(data: dict | str, blocks=None) -> Representation:
    if isinstance(data, str):
        data = json.loads(data)
    sp = data["space"]
    space = build_braned_space(int(sp["k"]), sp["block_dims"], bool(sp.get("lagrangian", False)))
    tensors = {}
    for item in data["tensors"]:
        gen = item["generator"]
        key = (gen["tag"], tuple(tuple(w) for w in gen["outs"]), tuple(tuple(w) for w in gen["ins"]))
        T = _zeros(tuple(space.dim(b) for b in _slot_blocks(key)))
        for idx, val in item["entries"]:
            T[tuple(idx)] = Fraction(val)
        tensors[key] = T
    kwargs = {"blocks": blocks} if blocks else {}
    return Representation(space, tensors, reduced=bool(data.get("reduced", False)), **kwargs)


# ---------------------------------------------------------------- random suites

_ALGEBRAS_3 = {
    "abelian": [],
    "heisenberg": [(0, 1, 2, 1)],
    "so3": [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)],
    "sl2": [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)],
    "e2": [(0, 1, 2, 1), (0, 2, 1, -1)],
}


def _bracket(n: int, pairs) -> np.ndarray:
    b = np.zeros((n, n, n), dtype=int)
    for i, j, c, x in pairs:
        b[i, j, c] += x
        b[j, i, c] -= x
    return b


def _random_skew(rng, n: int, density: float) -> np.ndarray:
    b = np.zeros((n, n, n), dtype=int)
    for i, j in itertools.combinations(range(n), 2):
        for c in range(n):
            if rng.random() < density:
                x = rng.choice([-2, -1, 1, 2])
                b[i, j, c], b[j, i, c] = x, -x
    return b


def coboundary(bracket, r) -> np.ndarray:
    """delta(x) = ad_x r for a skew matrix r."""
    br, r = np.asarray(bracket), np.asarray(r)
    return np.einsum("ub,xua->xab", r, br) + np.einsum("av,xvb->xab", r, br)


def random_bialgebra_pairs(count: int, seed: int = 0, dims: Sequence[int] = (2, 3)) -> list[tuple[np.ndarray, np.ndarray]]:
    """Mixed (bracket, cobracket) pairs: coboundary bialgebras on unimodular
    3-dim algebras, perturbations of them, and unstructured skew pairs."""
    import random

    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = dims[i % len(dims)]
        mode = rng.choice(("coboundary", "perturbed", "random"))
        if n == 3 and mode != "random":
            br = _bracket(3, _ALGEBRAS_3[rng.choice(sorted(_ALGEBRAS_3))])
            r = np.zeros((3, 3), dtype=int)
            for a, b in itertools.combinations(range(3), 2):
                r[a, b] = rng.randint(-2, 2)
                r[b, a] = -r[a, b]
            cob = coboundary(br, r)
            if mode == "perturbed":
                cob = cob + np.transpose(_random_skew(rng, 3, 0.2), (2, 0, 1))
        else:
            br = _random_skew(rng, n, 0.3)
            cob = np.transpose(_random_skew(rng, n, 0.3), (2, 0, 1))
        out.append((br, cob))
    return out


def manin_suite(count: int = 60, seed: int = 0) -> list[tuple[int, bool, bool]]:
    """(dimension, independent checker verdict, relation-residual verdict) per pair."""
    fam = LieInf(k=1, binary_only=True)
    rows = []
    for br, cob in random_bialgebra_pairs(count, seed):
        rows.append((br.shape[0], is_lie_bialgebra(br, cob), check_relations(manin_from_bialgebra(br, cob), fam).ok))
    return rows

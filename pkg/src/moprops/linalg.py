"""Exact sparse linear algebra over Q and over prime fields.

A matrix of a map ``A -> B`` has ``rows = dim B`` and ``cols = dim A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003
CONSENSUS_PRIMES = (32003, 1000003)

Scalar = int | Fraction


class CompositionError(ArithmeticError):
    """D_out . D_in is not zero."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class ExactField:
    modulus: int | None = None  # None means Q

    def __post_init__(self) -> None:
        if self.modulus is not None and (self.modulus == 2 or not _is_prime(self.modulus)):
            raise ValueError(f"modulus {self.modulus} is not an odd prime")

    @property
    def tag(self) -> str:
        return "Q" if self.modulus is None else f"F{self.modulus}"

    def convert(self, x: Scalar) -> Scalar:
        if self.modulus is None:
            return x
        p = self.modulus
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    @classmethod
    def from_tag(cls, tag: str) -> "ExactField":
        if tag == "Q":
            return RATIONALS
        if tag.startswith("F"):
            return cls(int(tag[1:]))
        raise ValueError(f"unknown field tag {tag!r}")


RATIONALS = ExactField()


def prime_field(p: int = DEFAULT_PRIME) -> ExactField:
    return ExactField(p)


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], Scalar] = field(default_factory=dict)
    field: ExactField = RATIONALS

    def __post_init__(self) -> None:
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = self.field.convert(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Scalar]], fld: ExactField = RATIONALS) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row) if v}
        return cls(rows, cols, ent, fld)

    @classmethod
    def from_columns(
        cls, n_rows: int, columns: Sequence[Mapping[int, Scalar]], fld: ExactField = RATIONALS
    ) -> "SparseMatrix":
        ent = {(r, c): v for c, col in enumerate(columns) for r, v in col.items()}
        return cls(n_rows, len(columns), ent, fld)

    def to_dense(self) -> list[list[Scalar]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}, self.field)

    def over(self, fld: ExactField) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, dict(self.entries), fld)

    def row_dicts(self) -> list[dict[int, Scalar]]:
        out: list[dict[int, Scalar]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], Scalar] = {}
        for (r, m), v in self.entries.items():
            for c, w in by_row.get(m, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseMatrix(self.rows, other.cols, acc, self.field)

    def nnz(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------- elimination


class _Echelon:
    """Rows in semi-echelon form, one pivot row per leading column."""

    def __init__(self, fld: ExactField):
        self.p = fld.modulus
        self.pivots: dict[int, dict[int, Scalar]] = {}

    def reduce(self, row: dict[int, Scalar]) -> dict[int, Scalar]:
        row = dict(row)
        p = self.p
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            a = row[lead]
            if p is None:
                # fraction-free: row <- b*row - a*piv, then strip content
                b = piv[lead]
                g = gcd(a, b)
                ca, cb = b // g, a // g
                new = {c: ca * v for c, v in row.items()}
                for c, v in piv.items():
                    x = new.get(c, 0) - cb * v
                    if x:
                        new[c] = x
                    else:
                        new.pop(c, None)
                row = _primitive(new)
            else:
                for c, v in piv.items():
                    x = (row.get(c, 0) - a * v) % p
                    if x:
                        row[c] = x
                    else:
                        row.pop(c, None)
        return row

    def add(self, row: dict[int, Scalar]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        if self.p is not None:
            inv = pow(row[lead], -1, self.p)
            row = {c: v * inv % self.p for c, v in row.items()}
        self.pivots[lead] = row
        return True


def _primitive(row: dict[int, Scalar]) -> dict[int, int]:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if row[min(row)] < 0:
        g = -g
    return {c: v // g for c, v in row.items()} if g not in (0, 1) else row


def _integer_rows(M: SparseMatrix) -> list[dict[int, int]]:
    rows = M.row_dicts()
    if M.field.modulus is not None:
        return rows
    out = []
    for row in rows:
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        out.append(_primitive({c: int(v * den) for c, v in row.items()}))
    return out


def _echelon(M: SparseMatrix) -> _Echelon:
    ech = _Echelon(M.field)
    rows = [r for r in _integer_rows(M) if r]
    rows.sort(key=len)  # cheap Markowitz-style ordering: sparse rows first
    for row in rows:
        ech.add(row)
    return ech


def rank(M: SparseMatrix) -> int:
    """Exact rank over the matrix's field."""
    return len(_echelon(M).pivots)


@dataclass(frozen=True)
class ConsensusRank:
    rank: int
    by_prime: dict[int, int]
    rational: int | None

    @property
    def agree(self) -> bool:
        vals = set(self.by_prime.values())
        if self.rational is not None:
            vals.add(self.rational)
        return len(vals) == 1


def rank_consensus(
    M: SparseMatrix, primes: Iterable[int] = CONSENSUS_PRIMES, confirm_rational: bool = False
) -> ConsensusRank:
    """Rank at several primes (each a lower bound for the rational rank)."""
    primes = tuple(primes)
    if len(set(primes)) < 2:
        raise ValueError("consensus needs at least two distinct primes")
    by_prime = {p: rank(M.over(prime_field(p))) for p in primes}
    rat = rank(M.over(RATIONALS)) if confirm_rational else None
    best = rat if rat is not None else max(by_prime.values())
    return ConsensusRank(best, by_prime, rat)


def cohomology_dim(D_in: SparseMatrix, D_out: SparseMatrix, check: bool = True) -> int:
    """dim ker(D_out) - rank(D_in) for ``A --D_in--> V --D_out--> B``."""
    if D_out.cols != D_in.rows:
        raise ValueError(f"middle dimensions differ: {D_out.cols} vs {D_in.rows}")
    if check and D_in.nnz() and D_out.nnz() and (D_out @ D_in).nnz():
        raise CompositionError("D_out . D_in != 0")
    return D_out.cols - rank(D_out) - rank(D_in)


def in_span(v: Mapping[int, Scalar] | Sequence[Scalar], M: SparseMatrix) -> bool:
    """Whether ``v`` lies in the row space of ``M``."""
    if not isinstance(v, Mapping):
        if len(v) != M.cols:
            raise ValueError("dimension mismatch")
        v = {i: x for i, x in enumerate(v) if x}
    vec = SparseMatrix(1, M.cols, {(0, c): x for c, x in v.items()}, M.field)
    row = _integer_rows(vec)[0]
    if not row:
        return True
    return not _echelon(M).reduce(row)


def in_image(v: Mapping[int, Scalar] | Sequence[Scalar], M: SparseMatrix) -> bool:
    """Whether ``v`` lies in the column space (image) of ``M``."""
    return in_span(v, M.transpose())


# ---------------------------------------------------------------- dump format


def _fmt(v: Scalar) -> str:
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(int(v))


def dumps(M: SparseMatrix) -> str:
    lines = [f"{M.rows} {M.cols} {M.field.tag}"]
    lines += [f"{r} {c} {_fmt(v)}" for (r, c), v in sorted(M.entries.items())]
    return "\n".join(lines) + "\n"


def loads(text: str) -> SparseMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix dump")
    r, c, tag = lines[0].split()
    fld = ExactField.from_tag(tag)
    ent = {}
    for ln in lines[1:]:
        a, b, v = ln.split()
        key = (int(a), int(b))
        if key in ent:
            raise ValueError(f"duplicate coordinate {key}")
        ent[key] = Fraction(v) if "/" in v else int(v)
    return SparseMatrix(int(r), int(c), ent, fld)

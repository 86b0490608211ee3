"""Exact rational scalars and matrices.

Rationals are :class:`fractions.Fraction`.  Matrices keep their nonzero
entries row by row; rank is computed by fraction-free (Bareiss) elimination
over the integers after clearing row denominators, so no intermediate
fraction ever appears.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction

# a 61-bit Mersenne prime; used only for the modular lower bound on rank
MODULUS = (1 << 61) - 1


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.replace(" ", ""))
    return Fraction(x)


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable matrix over the rationals.

    ``data`` holds one ``{col: value}`` mapping per row with zero entries
    omitted.  Use :meth:`dense`, :meth:`from_triplets` or :meth:`from_rows`
    to build one.
    """

    rows: int
    cols: int
    data: tuple

    @classmethod
    def dense(cls, entries: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        entries = [list(r) for r in entries]
        if cols is None:
            cols = len(entries[0]) if entries else 0
        data = []
        for r in entries:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            data.append({j: as_rational(v) for j, v in enumerate(r) if v != 0})
        return cls(len(entries), cols, tuple(data))

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, object]], cols: int) -> "ExactMatrix":
        data = []
        for r in rows:
            row = {}
            for j, v in r.items():
                if not 0 <= j < cols:
                    raise IndexError(f"column {j} out of range for {cols} columns")
                if v != 0:
                    row[j] = as_rational(v)
            data.append(row)
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, object]]) -> "ExactMatrix":
        acc = [dict() for _ in range(rows)]
        for i, j, v in triplets:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            acc[i][j] = acc[i].get(j, 0) + as_rational(v)
        return cls(rows, cols, tuple({j: v for j, v in r.items() if v != 0} for r in acc))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, tuple({} for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple({i: Fraction(1)} for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.data[i].get(j, Fraction(0))

    def to_lists(self) -> list[list[Fraction]]:
        return [[r.get(j, Fraction(0)) for j in range(self.cols)] for r in self.data]

    def nnz(self) -> int:
        return sum(len(r) for r in self.data)

    def is_zero(self) -> bool:
        return all(not r for r in self.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self.data)))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for r in self.data:
            acc: dict[int, Fraction] = {}
            for k, a in r.items():
                for j, b in other.data[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: v for j, v in acc.items() if v != 0})
        return ExactMatrix(self.rows, other.cols, tuple(out))

    def scale_row(self, i: int, c) -> "ExactMatrix":
        c = as_rational(c)
        if c == 0:
            raise ValueError("scaling by zero")
        data = list(self.data)
        data[i] = {j: v * c for j, v in data[i].items()}
        return ExactMatrix(self.rows, self.cols, tuple(data))

    def permute(self, row_perm: Sequence[int] | None = None, col_perm: Sequence[int] | None = None) -> "ExactMatrix":
        data = [self.data[i] for i in row_perm] if row_perm is not None else list(self.data)
        if col_perm is not None:
            inv = {old: new for new, old in enumerate(col_perm)}
            data = [{inv[j]: v for j, v in r.items()} for r in data]
        return ExactMatrix(self.rows, self.cols, tuple(data))


def transpose(m: ExactMatrix) -> ExactMatrix:
    out = [dict() for _ in range(m.cols)]
    for i, r in enumerate(m.data):
        for j, v in r.items():
            out[j][i] = v
    return ExactMatrix(m.cols, m.rows, tuple(out))


def _integer_rows(m: ExactMatrix) -> list[dict[int, int]]:
    rows = []
    for r in m.data:
        if not r:
            continue
        den = 1
        for v in r.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        rows.append({j: int(v * den) for j, v in r.items()})
    return rows


def bareiss_rank(m: ExactMatrix) -> int:
    """Rank by dense fraction-free Gaussian elimination."""
    rows = _integer_rows(m)
    if not rows:
        return 0
    cols = sorted({j for r in rows for j in r})
    pos = {j: k for k, j in enumerate(cols)}
    a = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for j, v in r.items():
            a[i][pos[j]] = v
    nr, nc = len(a), len(cols)
    rank = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        top = a[rank]
        for i in range(rank + 1, nr):
            row = a[i]
            x = row[c]
            for k in range(c + 1, nc):
                # exact division is the Sylvester identity behind Bareiss
                row[k] = (p * row[k] - x * top[k]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def sparse_integer_rank(m: ExactMatrix) -> int:
    """Exact rank by sparse fraction-free row reduction.

    Each new row is reduced against stored pivot rows by cross-multiplication
    and divided by its content, so entries stay integral and small.  Suited to
    the sparse, small-integer differentials of the homological modules.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in _integer_rows(m):
        row = dict(row)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                if g != 1:
                    row = {j: v // g for j, v in row.items()}
                pivots[lead] = row
                rank += 1
                break
            a, b = prow[lead], row[lead]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {j: a * v for j, v in row.items()}
            for j, v in prow.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            g = 0
            for v in new.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            row = new
    return rank


def rank_mod_p(m: ExactMatrix, p: int = MODULUS) -> int:
    """Rank of the reduction modulo ``p``; a lower bound for the rational rank.

    Rows whose denominators vanish mod ``p`` raise ``ZeroDivisionError``.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for r in m.data:
        row = {}
        for j, v in r.items():
            x = v.numerator * pow(v.denominator, -1, p) % p
            if x:
                row[j] = x
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {j: v * inv % p for j, v in row.items()}
                rank += 1
                break
            c = row[lead]
            for j, v in prow.items():
                w = (row.get(j, 0) - c * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return rank


DENSE_LIMIT = 40_000


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.rows * m.cols <= DENSE_LIMIT:
        return bareiss_rank(m)
    return sparse_integer_rank(m)


def nullity(m: ExactMatrix) -> int:
    return m.cols - rank(m)


def gaussian_rank(m: ExactMatrix) -> int:
    """Textbook rational Gaussian elimination; kept as an independent oracle."""
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r

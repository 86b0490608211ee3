"""Bigraded Poincaré series of the quasimap algebras.

Three independent routes to the same numbers:

* :func:`staircase_series` counts monomials outside the leading-term ideal of
  a Gröbner basis;
* :func:`chain_series` counts multisets whose support is a chain of the
  Hasse-diagram poset;
* :func:`closed_form` expands the product formula.

Series are bigraded by total degree (``t``) and loop weight (``q``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from . import groebner, quadric
from .polyring import Polynomial
from .quadric import DiagramPoset, QuasimapSpec, VariableTable

Cell = tuple  # (t_degree, q_weight)


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class BigradedSeries:
    """Integer coefficients on cells ``(t_degree, q_weight)``.

    ``degrees`` is the inclusive t-degree window the coefficients are exact
    on; every q-weight inside that window is carried.
    """

    coeffs: Mapping
    degrees: tuple

    def __post_init__(self):
        lo, hi = self.degrees
        clean = {c: v for c, v in self.coeffs.items() if v and lo <= c[0] <= hi}
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @property
    def window(self) -> tuple:
        return self.degrees

    def __getitem__(self, cell: Cell) -> int:
        return self.coeffs.get(cell, 0)

    def restrict(self, degrees: tuple) -> "BigradedSeries":
        lo = max(degrees[0], self.degrees[0])
        hi = min(degrees[1], self.degrees[1])
        return BigradedSeries(self.coeffs, (lo, hi))

    def __eq__(self, other):
        if not isinstance(other, BigradedSeries):
            return NotImplemented
        return self.degrees == other.degrees and self.coeffs == other.coeffs

    def agrees_with(self, other: "BigradedSeries") -> bool:
        """Equality on the intersection of the two windows."""
        lo = max(self.degrees[0], other.degrees[0])
        hi = min(self.degrees[1], other.degrees[1])
        return self.restrict((lo, hi)) == other.restrict((lo, hi))

    def mismatches(self, other: "BigradedSeries") -> list:
        lo = max(self.degrees[0], other.degrees[0])
        hi = min(self.degrees[1], other.degrees[1])
        a, b = self.restrict((lo, hi)), other.restrict((lo, hi))
        cells = sorted(set(a.coeffs) | set(b.coeffs))
        return [(c, a[c], b[c]) for c in cells if a[c] != b[c]]

    def at_q1(self) -> list[int]:
        """Coefficients of the q=1 specialization, indexed from ``degrees[0]``."""
        lo, hi = self.degrees
        out = [0] * (hi - lo + 1)
        for (d, _), v in self.coeffs.items():
            out[d - lo] += v
        return out

    def weights(self, degree: int) -> dict[int, int]:
        return {w: v for (d, w), v in self.coeffs.items() if d == degree}

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.coeffs.values())

    def to_rows(self) -> list[dict]:
        return [{"t_degree": str(d), "q_weight": str(w), "coefficient": str(v)}
                for (d, w), v in self.coeffs.items()]

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping], degrees: tuple) -> "BigradedSeries":
        return cls({(int(r["t_degree"]), int(r["q_weight"])): int(r["coefficient"]) for r in rows}, degrees)

    def q1_text(self) -> str:
        lo = self.degrees[0]
        parts = []
        for k, v in enumerate(self.at_q1()):
            if v:
                d = k + lo
                parts.append(f"{v}" if d == 0 else f"{v}*t^{d}")
        return " + ".join(parts) if parts else "0"


# ------------------------------------------------------------ series algebra


def _mul(a: Mapping, b: Mapping, dmax: int) -> dict:
    out: dict = {}
    for (d1, w1), v1 in a.items():
        for (d2, w2), v2 in b.items():
            d = d1 + d2
            if d > dmax:
                continue
            k = (d, w1 + w2)
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _geometric_power(a: int, b: int, e: int, dmax: int) -> dict:
    """``(1 - q^a t^b)^(-e)`` truncated at t-degree ``dmax`` (``b > 0``)."""
    out = {}
    k = 0
    while k * b <= dmax:
        out[(k * b, k * a)] = comb(e + k - 1, k)
        k += 1
    return out


def _binomial_factor(a: int, b: int, e: int, dmax: int) -> dict:
    """``(1 - q^a t^b)^e`` for ``e >= 0``."""
    return {(k * b, k * a): (-1) ** k * comb(e, k) for k in range(e + 1) if k * b <= dmax}


@dataclass(frozen=True)
class SeriesExpr:
    """``prod (1 - q^a t^b)^e`` over numerator / denominator factor lists."""

    numerator: tuple = ()  # of (a, b)
    denominator: tuple = ()  # of (a, b, exponent)

    def expand(self, D: int) -> BigradedSeries:
        acc = {(0, 0): 1}
        for a, b in self.numerator:
            acc = _mul(acc, _binomial_factor(a, b, 1, D), D)
        for a, b, e in self.denominator:
            acc = _mul(acc, _geometric_power(a, b, e, D), D)
        return BigradedSeries(acc, (0, D))


def product_expr(spec: QuasimapSpec) -> SeriesExpr:
    num = tuple((l, 2) for l in range(-2 * spec.N1, 2 * spec.N2 + 1))
    den = tuple((l, 1, spec.n) for l in range(-spec.N1, spec.N2 + 1))
    return SeriesExpr(num, den)


def closed_form(spec: QuasimapSpec, D: int) -> BigradedSeries:
    """Expansion of ``prod_l (1 - q^l t^2) / prod_l (1 - q^l t)^n``."""
    if spec.n < 3:
        raise ValueError("no product formula for n = 2")
    return product_expr(spec).expand(D)


def rational_q1(numerator: Sequence[int], denominator_power: int, D: int) -> list[int]:
    """Coefficients up to ``t^D`` of ``numerator(t) / (1 - t)^k``."""
    out = [0] * (D + 1)
    for i, c in enumerate(numerator):
        if not c:
            continue
        for k in range(0, D + 1 - i):
            out[i + k] += c * comb(denominator_power + k - 1, k) if denominator_power else (c if k == 0 else 0)
    return out


# ------------------------------------------------------------ staircase


def staircase_series(leading: Sequence, table: VariableTable | Sequence[int], D: int) -> BigradedSeries:
    """Count monomials divisible by no monomial of ``leading``, up to degree ``D``."""
    weights = table.weights if isinstance(table, VariableTable) else tuple(table)
    k = len(weights)
    # leading monomials grouped by their last variable, as sparse lists
    by_last: list[list] = [[] for _ in range(k)]
    for m in leading:
        supp = [(i, e) for i, e in enumerate(m) if e]
        if not supp:
            return BigradedSeries({}, (0, D))
        by_last[supp[-1][0]].append(supp)
    counts: dict = {}
    exps = [0] * k

    def blocked(i: int) -> bool:
        for supp in by_last[i]:
            if all(exps[j] >= e for j, e in supp):
                return True
        return False

    def rec(i: int, deg: int, w: int):
        if i == k:
            key = (deg, w)
            counts[key] = counts.get(key, 0) + 1
            return
        wi = weights[i]
        e = 0
        while deg + e <= D:
            exps[i] = e
            if e and blocked(i):
                break
            rec(i + 1, deg + e, w + e * wi)
            e += 1
        exps[i] = 0

    rec(0, 0, 0)
    return BigradedSeries(counts, (0, D))


def standard_monomials(leading: Sequence, table: VariableTable, D: int) -> dict:
    """Standard monomials grouped by ``(degree, weight)`` in canonical order."""
    weights = table.weights
    k = len(weights)
    by_last: list[list] = [[] for _ in range(k)]
    for m in leading:
        supp = [(i, e) for i, e in enumerate(m) if e]
        by_last[supp[-1][0]].append(supp)
    out: dict = {}
    exps = [0] * k

    def rec(i: int, deg: int, w: int):
        if i == k:
            out.setdefault((deg, w), []).append(tuple(exps))
            return
        e = 0
        while deg + e <= D:
            exps[i] = e
            if e and any(all(exps[j] >= f for j, f in supp) for supp in by_last[i]):
                break
            rec(i + 1, deg + e, w + e * weights[i])
            e += 1
        exps[i] = 0

    rec(0, 0, 0)
    for cell in out:
        out[cell].sort()
    return out


def groebner_basis(spec: QuasimapSpec, **budget) -> groebner.GroebnerBasis:
    """Reduced Gröbner basis of the relation ideal in the repo's default order."""
    return groebner.buchberger(quadric.relations(spec), **budget)


def series(spec: QuasimapSpec, D: int, **budget) -> BigradedSeries:
    """Bigraded series of ``AQ`` via Buchberger and the staircase."""
    gb = groebner_basis(spec, **budget)
    return staircase_series(gb.leading_monomials(), quadric.algebra(spec).table, D)


# ------------------------------------------------------------ chains


def chain_series(poset: DiagramPoset, elements: Sequence[int] | None, D: int) -> BigradedSeries:
    """Weighted count of chain multisets drawn from ``elements``.

    Non-reflexive elements appear with multiplicity at most one.
    """
    if elements is None:
        elements = range(len(poset))
    elements = list(elements)
    weights = poset.table.weights
    # a linear extension: sort by the size of the strict down-set inside the interval
    below = {x: [y for y in elements if poset.less(y, x)] for x in elements}
    ext = sorted(elements, key=lambda x: (len(below[x]), x))
    F: dict = {}
    total = {(0, 0): 1}
    for x in ext:
        w = weights[x]
        if poset.reflexive[x]:
            mult = {(k, k * w): 1 for k in range(1, D + 1)}
        else:
            mult = {(1, w): 1} if D >= 1 else {}
        base = {(0, 0): 1}
        for y in below[x]:
            for c, v in F[y].items():
                base[c] = base.get(c, 0) + v
        F[x] = _mul(mult, base, D)
        for c, v in F[x].items():
            total[c] = total.get(c, 0) + v
    return BigradedSeries(total, (0, D))


def spec_chain_series(spec: QuasimapSpec, D: int) -> BigradedSeries:
    poset = quadric.diagram_poset(spec)
    tab = poset.table
    m = spec.n // 2
    lo = tab.index("f", m, spec.lo)
    hi = tab.index("g", m, spec.hi)
    return chain_series(poset, poset.interval(lo, hi), D)


# ------------------------------------------------------------ PBW and Koszul checks


def _series_mul(a: list, b: list, D: int) -> list:
    out = [0] * (D + 1)
    for i, x in enumerate(a[: D + 1]):
        if x:
            for j, y in enumerate(b[: D + 1 - i]):
                out[i + j] += x * y
    return out


def _series_inverse(a: list, D: int) -> list:
    if a[0] != 1:
        raise ValueError("series must have constant term 1")
    inv = [0] * (D + 1)
    inv[0] = 1
    for k in range(1, D + 1):
        inv[k] = -sum(a[j] * inv[k - j] for j in range(1, min(k, len(a) - 1) + 1))
    return inv


def _gen_binom(e: int, j: int) -> int:
    num = 1
    for i in range(j):
        num *= e - i
    den = 1
    for i in range(2, j + 1):
        den *= i
    return num // den


def _power_factor(k: int, sign: int, e: int, D: int) -> list:
    """``(1 + sign*t^k)^e`` for any integer ``e``."""
    out = [0] * (D + 1)
    j = 0
    while j * k <= D:
        out[j * k] = _gen_binom(e, j) * sign ** j
        j += 1
    return out


@dataclass
class PBWResult:
    dims: list  # dims[k-1] = dim L_k
    first_negative: int | None = None

    @property
    def consistent(self) -> bool:
        return self.first_negative is None

    def __str__(self):
        if self.consistent:
            return "PBW: consistent " + " ".join(f"L{k+1}={d}" for k, d in enumerate(self.dims))
        return f"PBW inconsistency at degree {self.first_negative}: L={self.dims}"


def pbw_dual_dims(series_q1, D: int) -> PBWResult:
    """Graded dimensions of the Koszul dual Lie algebra.

    Solves ``A(-t)^{-1} = prod_odd (1+t^k)^{L_k} / prod_even (1-t^k)^{L_k}``
    degree by degree.
    """
    a = series_q1.at_q1() if isinstance(series_q1, BigradedSeries) else list(series_q1)
    if len(a) < D + 1:
        raise WindowTooSmall(f"need {D + 1} coefficients, have {len(a)}")
    alt = [c * (-1) ** i for i, c in enumerate(a[: D + 1])]
    target = _series_inverse(alt, D)
    cur = [1] + [0] * D
    dims = []
    first_negative = None
    for k in range(1, D + 1):
        L = target[k] - cur[k]
        dims.append(L)
        if L < 0 and first_negative is None:
            first_negative = k
        if k % 2:
            factor = _power_factor(k, 1, L, D)
        else:
            factor = _power_factor(k, -1, -L, D)
        cur = _series_mul(cur, factor, D)
    return PBWResult(dims, first_negative)


def numerator_from_series(series_q1, k: int, min_trailing_zeros: int = 3) -> list[int]:
    """Multiply a q=1 series window by ``(1-t)^k`` and return the polynomial.

    The window must run at least ``min_trailing_zeros`` degrees past the
    numerator's degree, otherwise :class:`WindowTooSmall` is raised.
    """
    a = series_q1.at_q1() if isinstance(series_q1, BigradedSeries) else list(series_q1)
    D = len(a) - 1
    num = _series_mul(a, _power_factor(1, -1, k, D), D)
    top = max((i for i, c in enumerate(num) if c), default=0)
    if D - top < min_trailing_zeros:
        raise WindowTooSmall(f"numerator not determined: degree {top} in a window of {D}")
    return num[: top + 1]


def palindrome_check(coeffs: Sequence[int]) -> bool:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs == coeffs[::-1]


# ------------------------------------------------------------ quotient algebras


class QuotientAlgebra:
    """Standard-monomial model of a graded quotient up to a degree bound.

    ``order`` overrides the algebra's default monomial order; the Gröbner
    basis is truncated at degree ``D``.
    """

    def __init__(self, algebra: quadric.LoopAlgebra, D: int, order=None):
        self.algebra = algebra
        self.D = D
        self.ring = algebra.ring if order is None else algebra.ring.with_order(order)
        rels = [r.reorder(self.ring) for r in algebra.relations]
        if rels:
            self.basis = groebner.buchberger(rels, truncate=D)
            lead = self.basis.leading_monomials()
        else:
            self.basis = []
            lead = []
        self.cells = standard_monomials(lead, algebra.table, D)
        self._nf_cache: dict = {}

    @property
    def table(self) -> VariableTable:
        return self.algebra.table

    def cell_of(self, m) -> tuple:
        return (sum(m), self.table.weight_of(m))

    def dimension(self, degree: int, weight: int) -> int:
        return len(self.cells.get((degree, weight), ()))

    def monomials(self):
        for cell in sorted(self.cells):
            yield from self.cells[cell]

    def series(self) -> BigradedSeries:
        return BigradedSeries({c: len(v) for c, v in self.cells.items()}, (0, self.D))

    def normal_form(self, f: Polynomial) -> dict:
        """Coordinates of ``f`` in the standard monomial basis."""
        if not self.basis:
            return dict(f.terms)
        return dict(groebner.reduce(f, self.basis).terms)

    def multiply_variable(self, var: int, m) -> dict:
        """Normal form of ``x_var * m``; ``m`` should be standard."""
        key = (var, m)
        hit = self._nf_cache.get(key)
        if hit is None:
            e = list(m)
            e[var] += 1
            hit = self.normal_form(Polynomial(self.ring, ((tuple(e), Fraction(1)),)))
            self._nf_cache[key] = hit
        return hit

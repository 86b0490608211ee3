"""Koszul (mini-BRST) complex of the loop relations and its cohomology.

The complex is ``C = k[lambda] (x) Lambda[c[k]]`` with one odd ghost per
relation, internal degree ``deg(even) + 2 * #ghosts`` and differential
``sum_k r[k] d/dc[k]``.  Ghosts are ordered by increasing loop index; removing
the ghost in position ``p`` of an ordered product costs ``(-1)^p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import exactnum, hilbert, quadric
from .exactnum import ExactMatrix
from .quadric import QuasimapSpec

Block = tuple  # (internal degree, ghost number, q-weight)


def _monomials_by_cell(weights, degree: int) -> dict:
    """All monomials of exactly ``degree`` grouped by weight, each list sorted."""
    k = len(weights)
    out: dict = {}
    exps = [0] * k

    def rec(i, left, w):
        if i == k - 1:
            exps[i] = left
            out.setdefault(w + left * weights[i], []).append(tuple(exps))
            exps[i] = 0
            return
        for e in range(left, -1, -1):
            exps[i] = e
            rec(i + 1, left - e, w + e * weights[i])
        exps[i] = 0

    if k == 0:
        return {0: [()]} if degree == 0 else {}
    rec(0, degree, 0)
    return out


@dataclass(frozen=True)
class SuperMonomial:
    even: tuple
    odd: tuple  # ghost loop indices, strictly increasing

    @property
    def ghost_number(self) -> int:
        return len(self.odd)

    def internal_degree(self) -> int:
        return sum(self.even) + 2 * len(self.odd)


@dataclass
class BrstComplex:
    spec: QuasimapSpec
    D: int
    ghosts: tuple
    bases: dict = field(repr=False)  # Block -> list[SuperMonomial]
    differentials: dict = field(repr=False)  # Block (source) -> ExactMatrix, rows = source, cols = target

    def blocks(self):
        return sorted(self.bases)

    def dimension(self, block: Block) -> int:
        return len(self.bases.get(block, ()))


def build_complex(spec: QuasimapSpec, D: int, ghost_order=None) -> BrstComplex:
    """All blocks of internal degree ``<= D``.

    ``ghost_order`` permutes the ghost positions used for signs (default:
    increasing loop index).
    """
    A = quadric.algebra(spec)
    tab = A.table
    rels = A.relation_map
    ghosts = tuple(A.relation_indices)
    position = {k: p for p, k in enumerate(ghost_order or ghosts)}
    weights = tab.weights
    even_cells = {d: _monomials_by_cell(weights, d) for d in range(D + 1)}

    bases: dict = {}
    for d in range(D + 1):
        for j in range(0, d // 2 + 1):
            ed = d - 2 * j
            for S in combinations(ghosts, j):
                S = tuple(sorted(S, key=position.__getitem__))
                gw = sum(S)
                for w, monos in even_cells[ed].items():
                    bases.setdefault((d, j, w + gw), []).extend(SuperMonomial(m, S) for m in monos)
    for b in bases.values():
        b.sort(key=lambda sm: (tuple(position[k] for k in sm.odd), tuple(-e for e in sm.even)))

    index = {blk: {sm: i for i, sm in enumerate(b)} for blk, b in bases.items()}
    diffs: dict = {}
    for (d, j, w), basis in bases.items():
        if j == 0:
            continue
        tgt = (d, j - 1, w)
        tindex = index.get(tgt, {})
        triplets = []
        for row, sm in enumerate(basis):
            for p, k in enumerate(sm.odd):
                sign = -1 if p % 2 else 1
                rest = sm.odd[:p] + sm.odd[p + 1:]
                for rm, rc in rels[k].terms:
                    e = tuple(a + b for a, b in zip(rm, sm.even))
                    col = tindex[SuperMonomial(e, rest)]
                    triplets.append((row, col, sign * rc))
        diffs[(d, j, w)] = ExactMatrix.from_triplets(len(basis), len(tindex), triplets)
    return BrstComplex(spec, D, ghosts, bases, diffs)


def differential_of(cx: BrstComplex, sm: SuperMonomial) -> dict:
    """``d(sm)`` as ``{SuperMonomial: coefficient}``."""
    blk = (sm.internal_degree(), sm.ghost_number, _weight(cx, sm))
    if sm.ghost_number == 0:
        return {}
    row = cx.bases[blk].index(sm)
    tgt = cx.bases[(blk[0], blk[1] - 1, blk[2])]
    return {tgt[c]: v for c, v in cx.differentials[blk].data[row].items()}


def _weight(cx: BrstComplex, sm: SuperMonomial) -> int:
    return quadric.algebra(cx.spec).table.weight_of(sm.even) + sum(sm.odd)


def d_squared_is_zero(cx: BrstComplex) -> tuple[bool, Block | None]:
    for (d, j, w), M in sorted(cx.differentials.items()):
        N = cx.differentials.get((d, j - 1, w))
        if N is None:
            continue
        if not (M @ N).is_zero():
            return False, (d, j, w)
    return True, None


@dataclass
class CohomologyTable:
    dims: dict  # Block -> int
    D: int

    def __getitem__(self, block: Block) -> int:
        return self.dims.get(block, 0)

    def euler(self) -> dict:
        out: dict = {}
        for (d, j, w), v in self.dims.items():
            out[(d, w)] = out.get((d, w), 0) + (-1) ** j * v
        return {c: v for c, v in out.items() if v}

    def ghost_row(self, j: int) -> dict:
        return {(d, w): v for (d, jj, w), v in self.dims.items() if jj == j and v}

    def to_rows(self) -> list[dict]:
        return [{"degree": str(d), "ghost": str(j), "q_weight": str(w), "dim": str(v)}
                for (d, j, w), v in sorted(self.dims.items())]


def cohomology(cx: BrstComplex) -> CohomologyTable:
    ranks = {blk: exactnum.rank(M) for blk, M in cx.differentials.items()}
    dims = {}
    for (d, j, w), basis in cx.bases.items():
        out_rank = ranks.get((d, j, w), 0)
        in_rank = ranks.get((d, j + 1, w), 0)
        dims[(d, j, w)] = len(basis) - out_rank - in_rank
    return CohomologyTable(dims, cx.D)


def free_euler(spec: QuasimapSpec, D: int) -> dict:
    """Coefficients of ``prod_k (1 - q^k t^2) / prod_l (1 - q^l t)^n`` by cell."""
    expr = hilbert.SeriesExpr(
        tuple((k, 2) for k in range(2 * spec.lo, 2 * spec.hi + 1)),
        tuple((l, 1, spec.n) for l in range(spec.lo, spec.hi + 1)),
    )
    return dict(expr.expand(D).coeffs)


@dataclass
class TheoremReport:
    spec: QuasimapSpec
    D: int
    passed: bool
    d_squared_zero: bool
    euler_ok: bool
    first_failure: tuple | None
    table: CohomologyTable = field(repr=False)

    def verdict(self) -> str:
        return "THEOREM-1: PASS" if self.passed else f"THEOREM-1: FAIL at {self.first_failure}"


def verify_main_theorem(spec: QuasimapSpec, D: int, series: hilbert.BigradedSeries | None = None,
                        margin: int = 0) -> TheoremReport:
    """Ghost-0 cohomology against the algebra's series; higher ghosts vanish.

    Vanishing is asserted for internal degrees ``<= D - margin``.  The
    differential keeps internal degree fixed, so every block up to ``D`` is
    complete and the default margin is 0.  ``series`` defaults to the
    hyperbolic staircase of the same window.
    """
    cx = build_complex(spec, D)
    ok2, bad = d_squared_is_zero(cx)
    table = cohomology(cx)
    if series is None:
        series = hilbert.series(spec.with_coords(quadric.HYPERBOLIC), D, truncate=D)
    failure = None if ok2 else ("d^2", bad)
    cells = sorted(set(series.coeffs) | set(table.ghost_row(0)))
    for c in cells:
        if failure:
            break
        if table[(c[0], 0, c[1])] != series[c]:
            failure = ("ghost 0", c, table[(c[0], 0, c[1])], series[c])
    if not failure:
        for (d, j, w), v in sorted(table.dims.items()):
            if j >= 1 and d <= D - margin and v:
                failure = ("ghost", (d, j, w), v)
                break
    euler_ok = table.euler() == free_euler(spec, D)
    passed = failure is None and euler_ok
    if failure is None and not euler_ok:
        failure = ("euler",)
    return TheoremReport(spec, D, passed, ok2, euler_ok, failure, table)

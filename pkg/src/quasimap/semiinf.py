"""Two-term semi-infinite complex at finite truncation.

The space is ``X = (AQ_{-N1}^0)^* (x) AQ_1^{N2}`` spanned by pairs
``(a*, b)`` of standard monomials, bigraded by
``t = deg b - deg a`` and ``w = w(b) - w(a)``.  The differential is

    d = sum_{s+t=1, s<=0, t>=1} B(lambda[s], lambda[t])

where ``lambda[s]`` acts on the dual factor by the transpose of
multiplication and ``B`` is the bilinear form of the quadric.  It has
bidegree ``(+2, +1)``.

Conventions worth knowing:

* With this grading the alternating sums of the complex for ``(N1, N2)`` equal
  the product series of :func:`euler_series` for ``(N2, N1)`` read at
  ``t -> 1/t``.  :func:`euler_check` does the comparison that way.
* Under ``l -> 1 - l`` the dual of the complex for ``(N1, N2)`` is the complex
  for ``(N2 - 1, N1 + 1)``.  :func:`pairing_symmetry` compares the two matrices
  entry by entry after transporting bases and monomial orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import exactnum, hilbert, quadric
from .exactnum import ExactMatrix
from .polyring import MonomialOrder
from .quadric import LoopAlgebra, QuasimapSpec


@dataclass(frozen=True)
class Window:
    """Cells ``|t| <= T`` and ``0 <= w <= Q`` are reported."""

    T: int
    Q: int

    def __post_init__(self):
        if self.T < 0 or self.Q < 0:
            raise ValueError("window bounds must be nonnegative")

    def cells(self):
        return [(t, w) for w in range(self.Q + 1) for t in range(-self.T, self.T + 1)]


def left_algebra(spec: QuasimapSpec) -> LoopAlgebra:
    return LoopAlgebra(spec.n, spec.coords, -spec.N1, 0)


def right_algebra(spec: QuasimapSpec) -> LoopAlgebra:
    return LoopAlgebra(spec.n, spec.coords, 1, spec.N2)


@dataclass
class SemiInfSpace:
    spec: QuasimapSpec
    window: Window
    left: hilbert.QuotientAlgebra = field(repr=False)
    right: hilbert.QuotientAlgebra = field(repr=False)
    cells: dict = field(repr=False)  # (t, w) -> list of (a, b)

    def dimension(self, cell) -> int:
        return len(self.cells.get(cell, ()))


def build_space(spec: QuasimapSpec, window: Window, left_order: MonomialOrder | None = None,
                right_order: MonomialOrder | None = None) -> SemiInfSpace:
    # every cell with |t| <= T+2 and w <= Q+1 is enumerated completely
    wmax = window.Q + 1
    tmax = window.T + 2
    DR = wmax  # right weights are >= 1
    DL = DR + tmax
    L = hilbert.QuotientAlgebra(left_algebra(spec), DL, left_order)
    R = hilbert.QuotientAlgebra(right_algebra(spec), DR, right_order)
    cells: dict = {}
    for (db, wb), bs in sorted(R.cells.items()):
        for (da, wa), as_ in sorted(L.cells.items()):
            t, w = db - da, wb - wa
            if abs(t) > tmax or w > wmax:
                continue
            cells.setdefault((t, w), []).extend((a, b) for a in as_ for b in bs)
    return SemiInfSpace(spec, window, L, R, cells)


@dataclass
class TwoTermComplex:
    space: SemiInfSpace
    blocks: dict = field(repr=False)  # source cell -> ExactMatrix, rows = source, cols = target

    @property
    def spec(self) -> QuasimapSpec:
        return self.space.spec

    def source_cells(self):
        w = self.space.window
        return [(t, q) for q in range(-1, w.Q + 1) for t in range(-w.T - 2, w.T + 1)]

    def rank(self, source) -> int:
        M = self.blocks.get(source)
        return exactnum.rank(M) if M is not None else 0

    def kernel(self, cell) -> int:
        return self.space.dimension(cell) - self.rank(cell)

    def cokernel(self, cell) -> int:
        return self.space.dimension(cell) - self.rank((cell[0] - 2, cell[1] - 1))

    def cohomology(self) -> dict:
        """``{cell: (ker, coker)}`` on the reported window."""
        return {c: (self.kernel(c), self.cokernel(c)) for c in self.space.window.cells()}


def _operators(space: SemiInfSpace) -> list:
    """``(u, v, coeff, transpose of u*)`` for each summand of ``d``."""
    spec = space.spec
    L, R = space.left, space.right
    transposed: dict = {}
    out = []
    for (ka, ca), (kb, cb), coeff in quadric.bilinear_pairs(spec.n, spec.coords):
        for s in range(-spec.N1, 1):
            t = 1 - s
            if t > spec.N2:
                continue
            u = L.table.index(ka, ca, s)
            v = R.table.index(kb, cb, t)
            if u not in transposed:
                acc: dict = {}
                for m in L.monomials():
                    if sum(m) < L.D:
                        for a, c in L.multiply_variable(u, m).items():
                            acc.setdefault(a, []).append((m, c))
                transposed[u] = acc
            out.append((u, v, coeff, transposed[u]))
    return out


def build_two_term(spec: QuasimapSpec, window: Window, left_order=None, right_order=None) -> TwoTermComplex:
    space = build_space(spec, window, left_order, right_order)
    R = space.right
    terms = _operators(space)
    index = {c: {p: i for i, p in enumerate(v)} for c, v in space.cells.items()}
    blocks = {}
    wdw = space.window
    for (t, w), basis in space.cells.items():
        if t > wdw.T or w > wdw.Q:
            continue
        tgt = (t + 2, w + 1)
        tindex = index.get(tgt, {})
        acc: dict = {}
        for row, (a, b) in enumerate(basis):
            for u, v, coeff, LT in terms:
                left = LT.get(a)
                if not left:
                    continue
                right = R.multiply_variable(v, b)
                for m, c1 in left:
                    for b2, c2 in right.items():
                        col = tindex[(m, b2)]
                        key = (row, col)
                        acc[key] = acc.get(key, 0) + coeff * c1 * c2
        blocks[(t, w)] = ExactMatrix.from_triplets(len(basis), len(tindex), ((i, j, v) for (i, j), v in acc.items()))
    return TwoTermComplex(space, blocks)


def bidegree_shift_ok(cx: TwoTermComplex) -> bool:
    """Every nonzero entry maps cell ``(t, w)`` into ``(t + 2, w + 1)``."""
    sp = cx.space
    for (t, w), M in cx.blocks.items():
        tgt = sp.cells.get((t + 2, w + 1), [])
        for row, r in enumerate(M.data):
            a, b = sp.cells[(t, w)][row]
            for col in r:
                a2, b2 = tgt[col]
                dt = (sum(b2) - sum(a2)) - (sum(b) - sum(a))
                dw = (sp.right.table.weight_of(b2) - sp.left.table.weight_of(a2)) - (
                    sp.right.table.weight_of(b) - sp.left.table.weight_of(a))
                if (dt, dw) != (2, 1):
                    return False
    return True


# ------------------------------------------------------------ Euler series


def euler_factors(spec: QuasimapSpec) -> list:
    """``(a, b, e)`` for ``(1 - q^a t^b)^e`` in the product for ``spec``."""
    n = spec.n
    out = [(l, 2, 1) for l in range(0, 2 * spec.N2 + 1)]
    out += [(l, 1, -n) for l in range(0, spec.N2 + 1)]
    out += [(l, -2, 1) for l in range(1, 2 * spec.N1 + 1)]
    out += [(l, -1, -n) for l in range(1, spec.N1 + 1)]
    return out


def _expand_q_positive(factors, Q: int, tmax: int) -> dict:
    """Expand a product whose t^{-1}-type factors all carry ``q^{>=1}``.

    Terms are kept while they can still reach ``t <= tmax`` at ``w <= Q``.
    """
    acc = {(0, 0): 1}
    for a, b, e in factors:
        if a < 0 or (a == 0 and b < 0):
            raise ValueError("factor cannot be expanded in this direction")
        if e > 0:
            f = {(k * b, k * a): (-1) ** k * comb(e, k) for k in range(e + 1)}
        else:
            f = {}
            k = 0
            while k * a <= Q and (a > 0 or k * b <= tmax + 2 * Q):
                f[(k * b, k * a)] = comb(-e + k - 1, k)
                k += 1
        new: dict = {}
        for (t1, w1), v1 in acc.items():
            for (t2, w2), v2 in f.items():
                t, w = t1 + t2, w1 + w2
                if w > Q or t - 2 * (Q - w) > tmax:
                    continue
                new[(t, w)] = new.get((t, w), 0) + v1 * v2
        acc = {k: v for k, v in new.items() if v}
    return acc


def euler_series(spec: QuasimapSpec, window: Window) -> hilbert.BigradedSeries:
    """The Euler product for ``spec`` on ``|t| <= T``, ``0 <= w <= Q``."""
    if spec.n < 3:
        raise ValueError("no product formula for n = 2")
    acc = _expand_q_positive(euler_factors(spec), window.Q, window.T)
    return hilbert.BigradedSeries({c: v for c, v in acc.items() if abs(c[0]) <= window.T}, (-window.T, window.T))


def complex_euler(cx: TwoTermComplex) -> dict:
    """``coker(t, w) - ker(t - 2, w - 1)`` on the reported window."""
    out = {}
    for t, w in cx.space.window.cells():
        v = cx.cokernel((t, w)) - cx.kernel((t - 2, w - 1))
        if v:
            out[(t, w)] = v
    return out


def euler_check(cx: TwoTermComplex) -> tuple[bool, list]:
    """Alternating sums against the mirrored product; returns mismatches."""
    ref = euler_series(cx.spec.flipped(), cx.space.window)
    got = complex_euler(cx)
    bad = []
    for t, w in cx.space.window.cells():
        if got.get((t, w), 0) != ref[(-t, w)]:
            bad.append(((t, w), got.get((t, w), 0), ref[(-t, w)]))
    return not bad, bad


def dimension_euler_ok(cx: TwoTermComplex) -> bool:
    """The alternating sums equal ``dim X(t, w) - dim X(t - 2, w - 1)``."""
    sp = cx.space
    got = complex_euler(cx)
    return all(got.get(c, 0) == sp.dimension(c) - sp.dimension((c[0] - 2, c[1] - 1)) for c in sp.window.cells())


# ------------------------------------------------------------ stability


@dataclass
class StabilityReport:
    """Cell-by-cell comparison of ``(N1, N2)`` with ``(N1+1, N2+1)``.

    ``kernel_bound`` (``cokernel_bound``) is the largest weight up to which
    every kernel (cokernel) cell of the window agrees.  The larger truncation
    adds variables of weight ``N1+1`` (dual side) and ``N2+1``, and changes
    relations only from those weights on; a kernel at weight ``w`` also sees
    the target cell at ``w+1``.  So agreement can only be expected for
    kernels at ``w <= min(N1, N2) - 1`` and cokernels at ``w <= min(N1, N2)``,
    and ``stable`` asks for at least that much.
    """

    spec: QuasimapSpec
    window: Window
    kernel_bound: int
    cokernel_bound: int
    mismatches: list
    cells: dict = field(repr=False)

    @property
    def expected_kernel_bound(self) -> int:
        return min(min(self.spec.N1, self.spec.N2) - 1, self.window.Q)

    @property
    def expected_cokernel_bound(self) -> int:
        return min(min(self.spec.N1, self.spec.N2), self.window.Q)

    @property
    def stable(self) -> bool:
        return (self.kernel_bound >= self.expected_kernel_bound
                and self.cokernel_bound >= self.expected_cokernel_bound)


def stability(spec: QuasimapSpec, window: Window) -> StabilityReport:
    """Kernel and cokernel dims at ``(N1, N2)`` against ``(N1+1, N2+1)``."""
    a = build_two_term(spec, window).cohomology()
    bigger = QuasimapSpec(spec.n, spec.N1 + 1, spec.N2 + 1, spec.coords)
    b = build_two_term(bigger, window).cohomology()
    bad = [(c, a[c], b[c]) for c in window.cells() if a[c] != b[c]]
    kb = min((c[1] for c, x, y in bad if x[0] != y[0]), default=window.Q + 1) - 1
    cb = min((c[1] for c, x, y in bad if x[1] != y[1]), default=window.Q + 1) - 1
    return StabilityReport(spec, window, kb, cb, bad, a)


# ------------------------------------------------------------ pairing


def dual_spec(spec: QuasimapSpec) -> QuasimapSpec:
    """Window paired with ``spec`` by ``l -> 1 - l``."""
    if spec.N2 < 1:
        raise ValueError("pairing needs N2 >= 1 (the differential vanishes otherwise)")
    return QuasimapSpec(spec.n, spec.N2 - 1, spec.N1 + 1, spec.coords)


def _transported_order(src: hilbert.QuotientAlgebra, dst: LoopAlgebra) -> tuple[MonomialOrder, tuple]:
    mapping = quadric.reindex_substitution(src.algebra, dst, lambda l: 1 - l)
    ranking = tuple(mapping[i] for i in src.ring.order.ranking)
    return MonomialOrder(ranking, src.ring.order.convention), mapping


def _map_mono(m, mapping, size):
    out = [0] * size
    for i, e in enumerate(m):
        if e:
            out[mapping[i]] += e
    return tuple(out)


@dataclass
class PairingReport:
    spec: QuasimapSpec
    partner: QuasimapSpec
    entrywise: bool
    ranks_match: bool
    blocks_checked: int
    first_mismatch: tuple | None = None


def pairing_symmetry(spec: QuasimapSpec, window: Window) -> PairingReport:
    """Compare ``d`` for ``spec`` with the transpose of ``d`` for its partner.

    The partner uses monomial orders transported through ``l -> 1 - l`` so
    the standard monomial bases correspond one to one; ranks are also checked
    against an independent build with the partner's native orders.
    """
    partner = dual_spec(spec)
    big = Window(window.T, window.Q + window.T + 2)
    C = build_two_term(spec, window)
    lo, lmap = _transported_order(C.space.right, left_algebra(partner))
    ro, rmap = _transported_order(C.space.left, right_algebra(partner))
    P = build_two_term(partner, big, left_order=lo, right_order=ro)
    nl, nr = len(P.space.left.table), len(P.space.right.table)

    def pair(x):
        a, b = x
        return (_map_mono(b, lmap, nl), _map_mono(a, rmap, nr))

    pidx = {c: {p: i for i, p in enumerate(v)} for c, v in P.space.cells.items()}
    mismatch = None
    checked = 0
    for (t, w), M in sorted(C.blocks.items()):
        src = C.space.cells[(t, w)]
        tgt = C.space.cells.get((t + 2, w + 1), [])
        psrc_cell, ptgt_cell = (-t - 2, w - t - 1), (-t, w - t)
        PM = P.blocks.get(psrc_cell)
        mine = {}
        for i, r in enumerate(M.data):
            for j, v in r.items():
                mine[(pair(tgt[j]), pair(src[i]))] = v
        theirs = {}
        if PM is not None:
            ps, pt = P.space.cells[psrc_cell], P.space.cells.get(ptgt_cell, [])
            for i, r in enumerate(PM.data):
                for j, v in r.items():
                    theirs[(ps[i], pt[j])] = v
        checked += 1
        if mine != theirs:
            mismatch = ((t, w), len(mine), len(theirs))
            break
        if PM is not None and (len(P.space.cells[psrc_cell]) != len(tgt)
                               or len(P.space.cells.get(ptgt_cell, [])) != len(src)):
            mismatch = ((t, w), "basis size")
            break
    # ranks with native orders on both sides
    N = build_two_term(partner, big)
    ranks_ok = all(C.rank((t, w)) == N.rank((-t - 2, w - t - 1)) for (t, w) in C.blocks)
    return PairingReport(spec, partner, mismatch is None, ranks_ok, checked, mismatch)


# ------------------------------------------------------------ Z(q, t)


def _ldiv_one_minus_t(p: dict) -> dict | None:
    """``p / (1 - t)`` for a Laurent polynomial, or ``None`` if it does not divide."""
    if not p:
        return {}
    lo, hi = min(p), max(p)
    # p = (1 - t) * s  =>  s_k = s_{k-1} + p_k, starting from the bottom
    s = {}
    run = 0
    for k in range(lo, hi):
        run += p.get(k, 0)
        if run:
            s[k] = run
    if run + p.get(hi, 0) != 0:
        return None
    return s


@dataclass(frozen=True)
class TRational:
    """``num(t) * (1 - t)^power`` with ``num`` a Laurent polynomial, ``num(1) != 0``."""

    num: tuple  # sorted (exponent, coefficient)
    power: int

    @classmethod
    def make(cls, num: dict, power: int) -> "TRational":
        num = {k: v for k, v in num.items() if v}
        if not num:
            return cls((), 0)
        while True:
            q = _ldiv_one_minus_t(num)
            if q is None:
                break
            num, power = q, power + 1
        return cls(tuple(sorted(num.items())), power)

    def __add__(self, other: "TRational") -> "TRational":
        if not self.num:
            return other
        if not other.num:
            return self
        p = min(self.power, other.power)
        return TRational.make(_add(_times_one_minus_t(dict(self.num), self.power - p),
                                   _times_one_minus_t(dict(other.num), other.power - p)), p)

    def expand(self, tmin: int, tmax: int) -> dict:
        """Laurent expansion in ascending powers of ``t`` on ``[tmin, tmax]``."""
        base = dict(self.num)
        if self.power >= 0:
            out = _times_one_minus_t(base, self.power)
        else:
            k = -self.power
            out = {}
            for e, c in base.items():
                for j in range(0, tmax - e + 1):
                    out[e + j] = out.get(e + j, 0) + c * comb(k + j - 1, j)
        return {e: v for e, v in out.items() if tmin <= e <= tmax and v}


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _times_one_minus_t(p: dict, k: int) -> dict:
    for _ in range(k):
        q: dict = {}
        for e, c in p.items():
            q[e] = q.get(e, 0) + c
            q[e + 1] = q.get(e + 1, 0) - c
        p = {e: c for e, c in q.items() if c}
    return p


def _mul_laurent(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


# unit part and (1-t)-power of (1 - t^b) for the b that occur
_T_FACTOR = {
    1: ({0: 1}, 1),
    -1: ({-1: -1}, 1),
    2: ({0: 1, 1: 1}, 1),
    -2: ({-2: -1, -1: -1}, 1),
}


def z_factors(n: int, L: int) -> list:
    """Truncated product for ``Z``: ``(a, b, e)`` meaning ``(1 - q^a t^b)^e``."""
    out = []
    for l in range(0, L + 1):
        out += [(l, 2, 1), (l, 1, -n)]
    for l in range(1, L + 1):
        out += [(l, -2, 1), (l, -1, -n)]
    return out


def substitute(factors, alpha: int, beta: int) -> list:
    """``t -> q^alpha t^beta`` applied to every factor."""
    return [(a + alpha * b, beta * b, e) for a, b, e in factors]


def expand_z(factors, W: int) -> dict:
    """``{q_exponent: TRational}`` for all exponents ``<= W``.

    Factors with ``a == 0`` are rational in ``t`` and kept exact; the others
    are expanded as power series in ``q`` (negative ``a`` only in numerators).
    """
    scalar, power = {0: 1}, 0
    series = []
    shift = 0
    for a, b, e in factors:
        if a == 0:
            unit, k = _T_FACTOR[b]
            if e < 0 and len(unit) != 1:
                raise ValueError(f"(1 - t^{b}) in a denominator is not supported")
            if e > 0:
                for _ in range(e):
                    scalar = _mul_laurent(scalar, unit)
            else:
                (ue, uc), = unit.items()
                inv = {-ue: uc}  # uc is +-1
                for _ in range(-e):
                    scalar = _mul_laurent(scalar, inv)
            power += k * e
        else:
            if a < 0:
                if e < 0:
                    raise ValueError("negative q-power in a denominator")
                shift += -a * e
            series.append((a, b, e))
    cut = W + shift
    acc = {(0, 0): 1}  # (q, t) -> int
    for a, b, e in series:
        if e > 0:
            f = {(k * a, k * b): (-1) ** k * comb(e, k) for k in range(e + 1)}
        else:
            f = {}
            k = 0
            while k * a <= cut:
                f[(k * a, k * b)] = comb(-e + k - 1, k)
                k += 1
        new: dict = {}
        for (q1, t1), v1 in acc.items():
            for (q2, t2), v2 in f.items():
                q = q1 + q2
                if q > cut:
                    continue
                new[(q, t1 + t2)] = new.get((q, t1 + t2), 0) + v1 * v2
        acc = {k: v for k, v in new.items() if v}
    by_q: dict = {}
    for (q, t), v in acc.items():
        if q <= W:
            by_q.setdefault(q, {})[t] = v
    return {q: TRational.make(_mul_laurent(p, scalar), power) for q, p in sorted(by_q.items())}


def _monomial_times(z: dict, c: int, qx: int, ty: int) -> dict:
    return {q + qx: TRational.make({e + ty: c * v for e, v in dict(r.num).items()}, r.power) for q, r in z.items()}


IDENTITIES = {
    # name: (alpha, beta, sign, q-shift, t-shift as a function of n)
    "Z(q,1/t) = -(-t)^(n-2) Z(q,t)": (0, -1, lambda n: -((-1) ** (n - 2)), 0, lambda n: n - 2),
    "Z(q,qt) = (-1)^n t^(n-4) q^-1 Z(q,t)": (1, 1, lambda n: (-1) ** n, -1, lambda n: n - 4),
    "Z(q,q/t) = -t^2 q^-1 Z(q,t)": (1, -1, lambda n: -1, -1, lambda n: 2),
}


@dataclass
class ZReport:
    n: int
    W: int
    L: int
    stable: bool
    results: dict  # identity -> (ok, first mismatching q exponent or None)

    @property
    def passed(self) -> bool:
        return self.stable and all(ok for ok, _ in self.results.values())

    def lines(self) -> list[str]:
        out = [f"Z n={self.n} q<={self.W} truncation L={self.L}: {'stable' if self.stable else 'UNSTABLE'}"]
        for name, (ok, bad) in self.results.items():
            out.append(f"  {name}: {'PASS' if ok else f'FAIL at q^{bad}'}")
        return out


def z_functional_equations(n: int, W: int = 4, L: int | None = None) -> ZReport:
    """Check the three identities for every ``q``-coefficient up to ``q^W``.

    Coefficients are compared as exact rational functions of ``t``, which
    covers every ``t``-window at once.  The product is truncated at ``L``
    and the result is compared against truncation ``L + 1``.
    """
    if L is None:
        L = W + 4
    results = {}
    stable = True
    for name, (alpha, beta, sign, qs, ts) in IDENTITIES.items():
        lhs = {}
        for LL in (L, L + 1):
            cur = expand_z(substitute(z_factors(n, LL), alpha, beta), W)
            if lhs and cur != lhs:
                stable = False
            lhs = cur
        z = expand_z(z_factors(n, L), W + 1)
        z2 = expand_z(z_factors(n, L + 1), W + 1)
        stable = stable and z == z2
        rhs = _monomial_times(z, sign(n), qs, ts(n))
        bad = None
        for q in range(-2, W + 1):
            a = lhs.get(q, TRational((), 0))
            b = rhs.get(q, TRational((), 0))
            if a != b:
                bad = q
                break
        results[name] = (bad is None, bad)
    return ZReport(n, W, L, stable, results)

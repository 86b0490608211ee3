"""Rings of quasimaps to a quadric.

Coordinates on the ambient space are either orthonormal (``lam1..lamn``,
quadratic form ``sum lam_i^2``) or hyperbolic (``f1..fm``, ``g1..gm`` and, for
odd ``n``, ``h``; quadratic form ``sum f_i g_i + h^2``).  A window of loop
indices ``[lo, hi]`` gives one variable per coordinate and loop index, and one
quadratic relation per ``l`` in ``[2*lo, 2*hi]``: the coefficient of ``z^l`` in
the quadratic form evaluated on ``sum_k lambda[k] z^k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .polyring import REVLEX, MonomialOrder, Polynomial, Ring

ORTHONORMAL = "orthonormal"
HYPERBOLIC = "hyperbolic"
COORDS = (ORTHONORMAL, HYPERBOLIC)

EVEN, ODD = "even", "odd"


@dataclass(frozen=True)
class QuasimapSpec:
    n: int
    N1: int = 0
    N2: int = 0
    coords: str = HYPERBOLIC

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("ambient dimension must be at least 2")
        if self.N1 < 0 or self.N2 < 0:
            raise ValueError("truncation bounds must be nonnegative")
        if self.coords not in COORDS:
            raise ValueError(f"coords must be one of {COORDS}")

    @property
    def lo(self) -> int:
        return -self.N1

    @property
    def hi(self) -> int:
        return self.N2

    def flipped(self) -> "QuasimapSpec":
        return QuasimapSpec(self.n, self.N2, self.N1, self.coords)

    def with_coords(self, coords: str) -> "QuasimapSpec":
        return QuasimapSpec(self.n, self.N1, self.N2, coords)

    def __str__(self):
        return f"n={self.n} N1={self.N1} N2={self.N2} coords={self.coords}"

    @classmethod
    def parse(cls, text: str) -> "QuasimapSpec":
        fields = dict(re.findall(r"(\w+)=(\w+)", text))
        try:
            return cls(int(fields["n"]), int(fields["N1"]), int(fields["N2"]), fields.get("coords", HYPERBOLIC))
        except KeyError as e:
            raise ValueError(f"missing field {e.args[0]} in {text!r}") from None


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "lam", "f", "g", "h" or "c"
    component: int
    loop: int
    degree: int
    parity: str

    @property
    def weight(self) -> int:
        return self.loop


def _name(kind: str, component: int, loop: int) -> str:
    if kind in ("h", "c"):
        return f"{kind}[{loop}]"
    return f"{kind}{component}[{loop}]"


class VariableTable:
    """Ordered inventory of variables with their bigrading."""

    def __init__(self, variables: Sequence[Variable]):
        self.variables = tuple(variables)
        self._by_key = {(v.kind, v.component, v.loop): i for i, v in enumerate(self.variables)}
        self._by_name = {v.name: i for i, v in enumerate(self.variables)}
        if len(self._by_name) != len(self.variables):
            raise ValueError("duplicate variable")

    def __len__(self):
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)

    def __getitem__(self, i: int) -> Variable:
        return self.variables[i]

    @property
    def names(self) -> tuple:
        return tuple(v.name for v in self.variables)

    @property
    def weights(self) -> tuple:
        return tuple(v.weight for v in self.variables)

    def index(self, kind: str, component: int, loop: int) -> int:
        return self._by_key[(kind, component, loop)]

    def find(self, kind: str, component: int, loop: int) -> int | None:
        return self._by_key.get((kind, component, loop))

    def by_name(self, name: str) -> int:
        return self._by_name[name]

    def weight_of(self, m) -> int:
        return sum(e * v.loop for e, v in zip(m, self.variables) if e)


def coordinate_kinds(n: int, coords: str) -> list[tuple[str, int]]:
    """Coordinate labels in ascending snake order within one loop period."""
    if coords == ORTHONORMAL:
        return [("lam", i) for i in range(1, n + 1)]
    m = n // 2
    if n % 2:
        return [("f", i) for i in range(m, 0, -1)] + [("h", 0)] + [("g", i) for i in range(1, m + 1)]
    if m == 1:
        return [("f", 1), ("g", 1)]
    return ([("f", i) for i in range(m, 1, -1)] + [("g", 1), ("f", 1)]
            + [("g", i) for i in range(2, m + 1)])


def build_table(n: int, coords: str, lo: int, hi: int) -> VariableTable:
    out = []
    for t in range(lo, hi + 1):
        for kind, comp in coordinate_kinds(n, coords):
            out.append(Variable(_name(kind, comp, t), kind, comp, t, 1, EVEN))
    return VariableTable(out)


def ghost_table(lo: int, hi: int) -> VariableTable:
    """Odd ghosts, one per relation index ``l`` in ``[2*lo, 2*hi]``."""
    return VariableTable([Variable(_name("c", 0, k), "c", 0, k, 2, ODD) for k in range(2 * lo, 2 * hi + 1)])


def quadratic_pairs(n: int, coords: str) -> list[tuple[tuple[str, int], tuple[str, int], int]]:
    """Quadratic form as ``(coord_a, coord_b, coefficient)`` over ordered pairs.

    The relation of index ``l`` is ``sum_{s+t=l} sum coeff * a[s] * b[t]``.
    """
    if coords == ORTHONORMAL:
        return [(("lam", i), ("lam", i), 1) for i in range(1, n + 1)]
    m = n // 2
    pairs = [(("f", i), ("g", i), 1) for i in range(1, m + 1)]
    if n % 2:
        pairs.append((("h", 0), ("h", 0), 1))
    return pairs


def bilinear_pairs(n: int, coords: str) -> list[tuple[tuple[str, int], tuple[str, int], Fraction]]:
    """Symmetric bilinear form ``B`` with ``B(x, x)`` the quadratic form."""
    if coords == ORTHONORMAL:
        return [(("lam", i), ("lam", i), Fraction(1)) for i in range(1, n + 1)]
    m = n // 2
    out = []
    for i in range(1, m + 1):
        out.append((("f", i), ("g", i), Fraction(1, 2)))
        out.append((("g", i), ("f", i), Fraction(1, 2)))
    if n % 2:
        out.append((("h", 0), ("h", 0), Fraction(1)))
    return out


def snake_ranking(table: VariableTable) -> tuple:
    """Variable indices, most significant first, for the snake order.

    The table is built in ascending snake order, so this is its reverse.
    """
    return tuple(range(len(table) - 1, -1, -1))


def default_order(table: VariableTable, coords: str) -> MonomialOrder:
    # orthonormal tables are built loop-major with lam_n last in each period,
    # so the same reversal makes higher loop indices and components dominate
    return MonomialOrder(snake_ranking(table), REVLEX)


def loop_relations(n: int, coords: str, lo: int, hi: int, ring: Ring, table: VariableTable) -> dict[int, Polynomial]:
    """Relations ``r[l]`` for ``l`` in ``[2*lo, 2*hi]`` keyed by ``l``."""
    pairs = quadratic_pairs(n, coords)
    out = {}
    for l in range(2 * lo, 2 * hi + 1):
        acc: dict = {}
        for s in range(lo, hi + 1):
            t = l - s
            if not lo <= t <= hi:
                continue
            for (ka, ca), (kb, cb), coeff in pairs:
                i = table.index(ka, ca, s)
                j = table.index(kb, cb, t)
                e = [0] * len(table)
                e[i] += 1
                e[j] += 1
                m = tuple(e)
                acc[m] = acc.get(m, 0) + coeff
        out[l] = Polynomial.from_dict(ring, acc)
    return out


@dataclass(frozen=True)
class LoopAlgebra:
    """Presentation of the quadric loop algebra on the window ``[lo, hi]``."""

    n: int
    coords: str
    lo: int
    hi: int

    @cached_property
    def table(self) -> VariableTable:
        return build_table(self.n, self.coords, self.lo, self.hi)

    @cached_property
    def ring(self) -> Ring:
        return Ring(self.table.names, default_order(self.table, self.coords))

    @cached_property
    def relation_map(self) -> dict:
        return loop_relations(self.n, self.coords, self.lo, self.hi, self.ring, self.table)

    @property
    def relations(self) -> list:
        return [self.relation_map[l] for l in sorted(self.relation_map)]

    @property
    def relation_indices(self) -> list:
        return sorted(self.relation_map)


def algebra(spec: QuasimapSpec) -> LoopAlgebra:
    return LoopAlgebra(spec.n, spec.coords, spec.lo, spec.hi)


def relations(spec: QuasimapSpec) -> list[Polynomial]:
    """The ``2*N1 + 2*N2 + 1`` relations ``r[-2N1], ..., r[2N2]``."""
    return algebra(spec).relations


def snake_order(spec: QuasimapSpec) -> MonomialOrder:
    if spec.coords != HYPERBOLIC:
        raise ValueError("the snake order is defined for hyperbolic coordinates only")
    return default_order(algebra(spec).table, spec.coords)


def lex_snake_order(spec: QuasimapSpec) -> MonomialOrder:
    """Literal degree-lexicographic reading on the snake ranking (for comparison)."""
    from .polyring import LEX

    return MonomialOrder(snake_order(spec).ranking, LEX)


def expected_leading_monomials(spec: QuasimapSpec) -> list:
    """The non-chain quadratic monomials that lead the hyperbolic relations.

    ``g1[t]*f1[t]`` (``h[t]^2`` for odd ``n``) for ``r[2t]`` and
    ``gm[t]*fm[t+1]`` for ``r[2t+1]``, listed in relation order.
    """
    if spec.coords != HYPERBOLIC:
        raise ValueError("hyperbolic coordinates only")
    A = algebra(spec)
    tab = A.table
    m = spec.n // 2
    out = []
    for l in A.relation_indices:
        e = [0] * len(tab)
        if l % 2 == 0:
            t = l // 2
            if spec.n % 2:
                e[tab.index("h", 0, t)] += 2
            else:
                e[tab.index("g", 1, t)] += 1
                e[tab.index("f", 1, t)] += 1
        else:
            t = (l - 1) // 2
            e[tab.index("g", m, t)] += 1
            e[tab.index("f", m, t + 1)] += 1
        out.append(tuple(e))
    return out


# ---------------------------------------------------------------- posets


def _period_arrows(n: int, t: int) -> list[tuple[tuple, tuple]]:
    """Covering arrows of the affine Hasse diagram leaving period ``t``."""
    m = n // 2
    F = lambda i, s=t: ("f", i, s)  # noqa: E731
    G = lambda i, s=t: ("g", i, s)  # noqa: E731
    H = lambda s=t: ("h", 0, s)  # noqa: E731
    arrows = []
    if n % 2 == 0 and m >= 3:
        arrows += [(F(i + 1), F(i)) for i in range(2, m)]
        arrows += [(F(2), F(1)), (F(2), G(1)), (F(1), G(2)), (G(1), G(2))]
        arrows += [(G(i), G(i + 1)) for i in range(2, m - 1)]
        arrows += [(G(m - 1), G(m)), (G(m - 1), F(m, t + 1)),
                   (G(m), F(m - 1, t + 1)), (F(m, t + 1), F(m - 1, t + 1))]
    elif n == 4:
        arrows += [(F(2), F(1)), (F(1), F(2, t + 1)), (G(1), G(2)), (G(2), G(1, t + 1)),
                   (F(2), G(1)), (F(1), G(2)), (G(2), F(1, t + 1)), (G(1), F(2, t + 1))]
    elif n % 2 == 1 and m >= 2:
        arrows += [(F(i + 1), F(i)) for i in range(1, m)]
        arrows += [(F(1), H()), (H(), G(1))]
        arrows += [(G(i), G(i + 1)) for i in range(1, m - 1)]
        arrows += [(G(m - 1), G(m)), (G(m - 1), F(m, t + 1)),
                   (G(m), F(m - 1, t + 1)), (F(m, t + 1), F(m - 1, t + 1))]
    elif n == 3:
        arrows += [(H(), F(1, t + 1)), (H(), G(1)), (F(1, t + 1), H(t + 1)), (G(1), H(t + 1))]
    else:
        raise ValueError(f"no Hasse diagram for n={n}")
    return arrows


class DiagramPoset:
    """Weak partial order on the degree-1 variables of a hyperbolic window.

    ``less[a]`` is the set of elements strictly above ``a``.  Elements with
    ``reflexive[a] == False`` (the ``h`` variables) may not repeat in a chain.
    """

    def __init__(self, table: VariableTable, covers: Sequence[tuple[int, int]], reflexive: Sequence[bool]):
        self.table = table
        self.covers = tuple(sorted(set(covers)))
        self.reflexive = tuple(reflexive)
        k = len(table)
        up = [set() for _ in range(k)]
        for a, b in self.covers:
            up[a].add(b)
        above = [None] * k

        def closure(a):
            if above[a] is None:
                acc = set()
                for b in up[a]:
                    acc.add(b)
                    acc |= closure(b)
                above[a] = acc
            return above[a]

        for a in range(k):
            closure(a)
        self.above = tuple(frozenset(s) for s in above)

    def __len__(self):
        return len(self.table)

    def leq(self, a: int, b: int) -> bool:
        return b in self.above[a] or (a == b and self.reflexive[a])

    def less(self, a: int, b: int) -> bool:
        return b in self.above[a]

    def comparable(self, a: int, b: int) -> bool:
        return self.less(a, b) or self.less(b, a)

    def interval(self, lo: int, hi: int) -> list[int]:
        return [x for x in range(len(self.table))
                if (x == lo or self.less(lo, x)) and (x == hi or self.less(x, hi))]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        k = len(self.table)
        return [(a, b) for a in range(k) for b in range(a + 1, k) if not self.comparable(a, b)]

    def linear_extension(self) -> list[int]:
        return sorted(range(len(self.table)), key=lambda x: (len(self.down_set(x)), x))

    def down_set(self, x: int) -> list[int]:
        return [y for y in range(len(self.table)) if self.less(y, x)]

    def is_antisymmetric(self) -> bool:
        return all(not (self.less(a, b) and self.less(b, a)) for a in range(len(self.table)) for b in self.above[a])

    def supremum_candidates(self, a: int, b: int) -> list[int]:
        ub = [x for x in range(len(self.table)) if self.leq(a, x) and self.leq(b, x)]
        return [x for x in ub if not any(self.less(y, x) for y in ub if y != x)]

    def infimum_candidates(self, a: int, b: int) -> list[int]:
        lb = [x for x in range(len(self.table)) if self.leq(x, a) and self.leq(x, b)]
        return [x for x in lb if not any(self.less(x, y) for y in lb if y != x)]


def diagram_poset(spec: QuasimapSpec) -> DiagramPoset:
    if spec.coords != HYPERBOLIC:
        raise ValueError("Hasse diagrams are defined on hyperbolic coordinates")
    if spec.n == 2:
        raise ValueError("the n=2 diagram does not define a lattice; chain machinery is disabled")
    tab = algebra(spec).table
    covers = []
    for t in range(spec.lo - 1, spec.hi + 1):
        for a, b in _period_arrows(spec.n, t):
            ia, ib = tab.find(*a), tab.find(*b)
            if ia is not None and ib is not None:
                covers.append((ia, ib))
    reflexive = [v.kind != "h" for v in tab]
    return DiagramPoset(tab, covers, reflexive)


def is_chain_monomial(m, poset: DiagramPoset) -> bool:
    support = [i for i, e in enumerate(m) if e]
    for i in support:
        if m[i] >= 2 and not poset.reflexive[i]:
            return False
    for x in range(len(support)):
        for y in range(x + 1, len(support)):
            if not poset.comparable(support[x], support[y]):
                return False
    return True


# ---------------------------------------------------------------- involution


@dataclass(frozen=True)
class Substitution:
    """Variable renaming between two loop algebras."""

    source: QuasimapSpec
    target: QuasimapSpec
    mapping: tuple  # source index -> target index

    def apply(self, f: Polynomial, ring: Ring) -> Polynomial:
        return f.substitute(ring, self.mapping)

    def compose(self, other: "Substitution") -> "Substitution":
        """``other`` after ``self``."""
        if other.source != self.target:
            raise ValueError("substitutions do not compose")
        return Substitution(self.source, other.target, tuple(other.mapping[i] for i in self.mapping))

    def is_identity(self) -> bool:
        return self.source == self.target and self.mapping == tuple(range(len(self.mapping)))


def reindex_substitution(src: LoopAlgebra, dst: LoopAlgebra, reindex) -> tuple:
    """Map variable ``x[l]`` of ``src`` to ``x[reindex(l)]`` of ``dst``."""
    out = []
    for v in src.table:
        out.append(dst.table.index(v.kind, v.component, reindex(v.loop)))
    return tuple(out)


def shift_involution(spec: QuasimapSpec) -> Substitution:
    """``lambda(z) -> lambda(1/z)``: loop index ``l`` goes to ``-l``."""
    target = spec.flipped()
    mapping = reindex_substitution(algebra(spec), algebra(target), lambda l: -l)
    return Substitution(spec, target, mapping)

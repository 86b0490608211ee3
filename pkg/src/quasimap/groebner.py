"""S-polynomials, normal forms and Buchberger's algorithm.

Reduction walks the terms of a polynomial from the top of the order down and
rewrites any term divisible by a leading monomial of the basis.  When several
leading monomials divide the same term, the basis element with the greatest
list index is used, so results are reproducible for a fixed list order.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polyring import (
    Polynomial,
    Ring,
    mono_coprime,
    mono_divides,
    mono_lcm,
    mono_quotient,
)

PAIR_BUDGET_ENV = "QUASIMAP_PAIR_BUDGET"
DEFAULT_PAIR_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """Buchberger hit its pair or degree budget before reaching a fixed point."""


@dataclass(frozen=True)
class GeneratorSet:
    polys: tuple
    ring: Ring

    @classmethod
    def of(cls, polys: Sequence[Polynomial], ring: Ring | None = None) -> "GeneratorSet":
        polys = [p for p in polys if p]
        if ring is None:
            if not polys:
                raise ValueError("cannot infer the ring of an empty generator set")
            ring = polys[0].ring
        out = []
        for p in polys:
            if p.ring != ring:
                p = p.reorder(ring)
            out.append(p.monic())
        return cls(tuple(out), ring)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def leading_monomials(self) -> list:
        return [p.lm() for p in self.polys]


@dataclass(frozen=True)
class GroebnerBasis:
    polys: GeneratorSet
    reduced: bool = False
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def ring(self) -> Ring:
        return self.polys.ring

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def leading_monomials(self) -> list:
        return self.polys.leading_monomials()


@dataclass
class Certificate:
    """Witness that a generator set is not a Gröbner basis."""

    pair: tuple
    normal_form: Polynomial

    def as_dict(self) -> dict:
        return {"pair": list(self.pair), "normal_form": str(self.normal_form)}


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """``(L/lm(g))*g - (L/lm(f))*f`` with ``L`` the lcm of the leading monomials."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    cf, mf = f.leading_term()
    cg, mg = g.leading_term()
    lcm = mono_lcm(mf, mg)
    return g.mul_term(1 / cg, mono_quotient(lcm, mg)) - f.mul_term(1 / cf, mono_quotient(lcm, mf))


def _as_list(basis) -> list:
    if isinstance(basis, GroebnerBasis):
        return list(basis.polys.polys)
    if isinstance(basis, GeneratorSet):
        return list(basis.polys)
    return list(basis)


def reduce(f: Polynomial, basis, cofactors: bool = False):
    """Full normal form of ``f`` against ``basis``.

    With ``cofactors=True`` returns ``(remainder, quotients)`` with
    ``f == sum(q*g) + remainder`` exactly.
    """
    G = _as_list(basis)
    ring = f.ring
    key = ring.key
    lead = []
    for g in G:
        c, m = g.leading_term()
        lead.append((m, c, g))
    order = list(range(len(G) - 1, -1, -1))  # greatest index first

    p = dict(f.terms)
    heap = [(_Neg(key(m)), m) for m in p]
    heapq.heapify(heap)
    rem: dict = {}
    quot = [dict() for _ in G] if cofactors else None
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for i in order:
            lm, lc, g = lead[i]
            if mono_divides(lm, m):
                s = mono_quotient(m, lm)
                factor = c / lc
                if cofactors:
                    quot[i][s] = quot[i].get(s, 0) + factor
                for gm, gc in g.terms[1:]:
                    t = tuple(a + b for a, b in zip(gm, s))
                    old = p.get(t)
                    v = (old or 0) - factor * gc
                    if v:
                        p[t] = v
                        if old is None:
                            heapq.heappush(heap, (_Neg(key(t)), t))
                    elif old is not None:
                        del p[t]
                break
        else:
            rem[m] = c
    r = Polynomial.from_dict(ring, rem)
    if cofactors:
        return r, [Polynomial.from_dict(ring, q) for q in quot]
    return r


class _Neg:
    """Reverses comparison of an order key inside a min-heap."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _pairs_to_check(G: Sequence[Polynomial]):
    for j in range(len(G)):
        for i in range(j):
            yield i, j


def is_groebner(basis) -> tuple[bool, Certificate | None]:
    """One round of Buchberger's criterion with the coprime skip."""
    G = _as_list(basis)
    lms = [g.lm() for g in G]
    for i, j in _pairs_to_check(G):
        if mono_coprime(lms[i], lms[j]):
            continue
        r = reduce(s_polynomial(G[i], G[j]), G)
        if r:
            return False, Certificate((i, j), r)
    return True, None


def pair_budget() -> int:
    v = os.environ.get(PAIR_BUDGET_ENV)
    return int(v) if v else DEFAULT_PAIR_BUDGET


def buchberger(seed, max_pairs: int | None = None, max_degree: int | None = None,
               truncate: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``seed``.

    Pairs are processed by the normal strategy (smallest lcm first).  Pairs
    with coprime leading monomials are skipped without forming the
    S-polynomial.  Raises :class:`BudgetExceeded` when more than
    ``max_pairs`` S-polynomials would be reduced or a new element exceeds
    ``max_degree``.

    ``truncate`` drops every pair whose lcm has degree above the bound.  For a
    homogeneous ideal the result then agrees with the true basis in degrees up
    to ``truncate``, which is all a staircase count to that degree needs.
    """
    gens = seed if isinstance(seed, GeneratorSet) else GeneratorSet.of(_as_list(seed))
    if not gens.polys:
        raise ValueError("empty seed")
    ring = gens.ring
    if max_pairs is None:
        max_pairs = pair_budget()
    G: list = list(gens.polys)
    heap: list = []
    counter = 0

    dropped = 0

    def push(i, j):
        nonlocal counter, dropped
        lcm = mono_lcm(G[i].lm(), G[j].lm())
        if truncate is not None and sum(lcm) > truncate:
            dropped += 1
            return
        heapq.heappush(heap, (ring.key(lcm), counter, i, j))  # smallest lcm first
        counter += 1

    for j in range(len(G)):
        for i in range(j):
            push(i, j)

    reduced_pairs = skipped = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        if G[i] is None or G[j] is None:
            continue
        if mono_coprime(G[i].lm(), G[j].lm()):
            skipped += 1
            continue
        if reduced_pairs >= max_pairs:
            raise BudgetExceeded(f"pair budget {max_pairs} exceeded with {len(G)} elements")
        reduced_pairs += 1
        live = [g for g in G if g is not None]
        r = reduce(s_polynomial(G[i], G[j]), live)
        if not r:
            continue
        r = r.monic()
        if max_degree is not None and r.degree() > max_degree:
            raise BudgetExceeded(f"degree budget {max_degree} exceeded")
        G.append(r)
        k = len(G) - 1
        for i2 in range(k):
            if G[i2] is not None:
                push(i2, k)

    basis = _interreduce([g for g in G if g is not None])
    stats = {
        "seed_size": len(gens),
        "pairs_reduced": reduced_pairs,
        "pairs_skipped_coprime": skipped,
        "final_size": len(basis),
    }
    if truncate is not None:
        stats["truncated_at"] = truncate
        stats["pairs_dropped"] = dropped
    return GroebnerBasis(GeneratorSet(tuple(basis), ring), reduced=True, stats=stats)


def _interreduce(G: list) -> list:
    G = [g.monic() for g in G]
    # drop elements whose leading monomial is a multiple of another's
    keep = []
    for i, g in enumerate(G):
        lm = g.lm()
        redundant = False
        for j, h in enumerate(G):
            if j == i:
                continue
            hm = h.lm()
            if mono_divides(hm, lm) and (hm != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        tail = Polynomial(g.ring, g.terms[1:])
        r = reduce(tail, others)
        out.append(Polynomial.from_dict(g.ring, {g.lm(): Fraction(1), **r.to_dict()}))
    out.sort(key=lambda p: p.ring.key(p.lm()))
    return out


def reduced_basis(polys) -> list:
    return list(buchberger(polys).polys)

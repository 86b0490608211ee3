"""Sparse multivariate polynomials over the rationals.

A :class:`Ring` fixes the variable names and a graded :class:`MonomialOrder`.
Monomials are dense exponent tuples indexed like ``Ring.names``; a
:class:`Polynomial` is an immutable tuple of ``(monomial, coefficient)``
pairs sorted strictly decreasing in the ring's order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactnum import as_rational

Monomial = tuple  # tuple[int, ...]

LEX = "lex"
REVLEX = "revlex"

MAX_EXPONENT = (1 << 31) - 1


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Graded order on monomials.

    ``ranking`` lists variable indices from most to least significant.  Ties in
    total degree are broken lexicographically on the ranking (``lex``) or by
    reverse lexicographic comparison starting from the least significant
    variable, where more of a low variable means a smaller monomial
    (``revlex``).
    """

    ranking: tuple
    convention: str = REVLEX

    def __post_init__(self):
        if self.convention not in (LEX, REVLEX):
            raise ValueError(f"unknown convention {self.convention!r}")
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError("ranking must be a permutation of the variable indices")

    @classmethod
    def standard(cls, nvars: int, convention: str = REVLEX) -> "MonomialOrder":
        return cls(tuple(range(nvars)), convention)

    def key(self, m: Monomial) -> tuple:
        if self.convention == LEX:
            return (sum(m), tuple(m[v] for v in self.ranking))
        return (sum(m), tuple(-m[v] for v in reversed(self.ranking)))


def compare(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b) or len(a) != len(order.ranking):
        raise RingMismatch("monomials over different variable tables")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if max(out, default=0) > MAX_EXPONENT:
        raise OverflowError("exponent overflow")
    return out


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_quotient(b: Monomial, a: Monomial) -> Monomial:
    """``b / a``; requires ``a`` to divide ``b``."""
    out = tuple(y - x for x, y in zip(a, b))
    if min(out, default=0) < 0:
        raise ValueError("monomial does not divide")
    return out


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class Ring:
    names: tuple
    order: MonomialOrder = None
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.order is None:
            object.__setattr__(self, "order", MonomialOrder.standard(len(self.names)))
        if len(self.order.ranking) != len(self.names):
            raise ValueError("order does not match the variable count")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.names)})

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names and self.order == other.order

    def __hash__(self):
        return hash((self.names, self.order))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.names, order)

    def key(self, m: Monomial):
        return self.order.key(m)

    def one(self) -> Monomial:
        return (0,) * len(self.names)

    def var_monomial(self, i: int, e: int = 1) -> Monomial:
        m = [0] * len(self.names)
        m[i] = e
        return tuple(m)

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial(self, ((self.var_monomial(i), Fraction(1)),))

    def const(self, c) -> "Polynomial":
        return Polynomial.from_dict(self, {self.one(): c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(self.names[i])
            elif e:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable polynomial with terms sorted decreasing by the ring order."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: tuple):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_dict(cls, ring: Ring, d: Mapping[Monomial, object]) -> "Polynomial":
        items = [(m, as_rational(c)) for m, c in d.items() if c != 0]
        items.sort(key=lambda mc: ring.key(mc[0]), reverse=True)
        return cls(ring, tuple(items))

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable[tuple[object, Monomial]]) -> "Polynomial":
        acc: dict = {}
        for c, m in terms:
            if len(m) != ring.nvars:
                raise RingMismatch("monomial length does not match the ring")
            acc[m] = acc.get(m, 0) + as_rational(c)
        return cls.from_dict(ring, acc)

    def to_dict(self) -> dict:
        return dict(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch("polynomials from different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial.from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return scale(other, self)
        self._check(other)
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial.from_dict(self.ring, acc)

    def __rmul__(self, other):
        return scale(other, self)

    def __pow__(self, e: int):
        out = self.ring.const(1)
        for _ in range(e):
            out = out * self
        return out

    def mul_term(self, c: Fraction, m: Monomial) -> "Polynomial":
        if c == 0:
            return self.ring.zero()
        # multiplication by a monomial preserves the order, no re-sort needed
        return Polynomial(self.ring, tuple((mono_mul(m, mm), c * cc) for mm, cc in self.terms))

    def leading_term(self) -> tuple[Fraction, Monomial]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m, c = self.terms[0]
        return c, m

    def lm(self) -> Monomial:
        return self.leading_term()[1]

    def lc(self) -> Fraction:
        return self.leading_term()[0]

    def monic(self) -> "Polynomial":
        return scale(1 / self.lc(), self)

    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    def reorder(self, ring: Ring) -> "Polynomial":
        """Same polynomial viewed in ``ring`` (same variables, new order)."""
        if ring.names != self.ring.names:
            raise RingMismatch("reorder needs identical variable names")
        return Polynomial.from_dict(ring, dict(self.terms))

    def substitute(self, ring: Ring, mapping: Sequence[int]) -> "Polynomial":
        """Rename variable ``i`` to variable ``mapping[i]`` of ``ring``."""
        acc: dict = {}
        for m, c in self.terms:
            new = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    new[mapping[i]] += e
            new = tuple(new)
            acc[new] = acc.get(new, 0) + c
        return Polynomial.from_dict(ring, acc)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def scale(c, f: Polynomial) -> Polynomial:
    c = as_rational(c)
    if c == 0:
        return f.ring.zero()
    return Polynomial(f.ring, tuple((m, c * cc) for m, cc in f.terms))


def leading_term(f: Polynomial) -> tuple[Fraction, Monomial]:
    return f.leading_term()


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(f.terms):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = f.ring.monomial_str(m)
        if mono == "1":
            body = _coeff_str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_coeff_str(a)}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TERM_SPLIT = re.compile(r"\s+([+\-−])\s+")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Inverse of :func:`format_polynomial`; also accepts the unicode minus."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    sign = 1
    if text[:1] in "-−":
        sign, text = -1, text[1:].lstrip()
    pieces = _TERM_SPLIT.split(text)
    signs = [sign] + [-1 if s in "-−" else 1 for s in pieces[1::2]]
    acc: dict = {}
    for s, body in zip(signs, pieces[0::2]):
        coeff = Fraction(s)
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            name, _, e = factor.partition("^")
            try:
                i = ring.index(name)
            except KeyError:
                raise ValueError(f"unknown variable {name!r}") from None
            exps[i] += int(e) if e else 1
        m = tuple(exps)
        acc[m] = acc.get(m, 0) + coeff
    return Polynomial.from_dict(ring, acc)

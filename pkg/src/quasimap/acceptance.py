"""The nine acceptance checks, shared by ``selftest`` and the test suite.

Each check returns a :class:`CheckResult`; runtime limits are part of the
check and a run over its limit fails.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import brst, groebner, hilbert, quadric, semiinf
from .polyring import LEX, MonomialOrder, Polynomial, Ring, mono_coprime
from .quadric import HYPERBOLIC, ORTHONORMAL, QuasimapSpec


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    seconds: float
    limit: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds <= self.limit

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        over = "" if self.seconds <= self.limit else " (over time limit)"
        return f"[{self.number}] {self.name}: {tag} in {self.seconds:.2f}s / {self.limit:g}s{over} {self.detail}".rstrip()


def _timed(number: int, name: str, limit: float, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = body()
    return CheckResult(number, name, ok, time.perf_counter() - t0, limit, detail)


# ------------------------------------------------------------ 1


def finite_quadric() -> tuple[bool, str]:
    for n in range(3, 9):
        spec = QuasimapSpec(n, 0, 0, ORTHONORMAL)
        got = hilbert.series(spec, 10).at_q1()
        want = hilbert.rational_q1([1, 0, -1], n, 10)
        if got != want:
            return False, f"n={n}: {got} != {want}"
    return True, ""


# ------------------------------------------------------------ 2


def groebner_property() -> tuple[bool, str]:
    for n in range(3, 9):
        for N1 in range(3):
            for N2 in range(3):
                spec = QuasimapSpec(n, N1, N2, HYPERBOLIC)
                ok, cert = groebner.is_groebner(quadric.relations(spec))
                if not ok or cert is not None:
                    return False, f"{spec}: certificate {cert.as_dict() if cert else None}"
    for N2 in (1, 2):
        spec = QuasimapSpec(2, 0, N2, HYPERBOLIC)
        ok, cert = groebner.is_groebner(quadric.relations(spec))
        if ok:
            return False, f"{spec}: unexpectedly a Gröbner basis"
        try:
            groebner.buchberger(quadric.relations(spec))
        except groebner.BudgetExceeded as e:
            return False, f"{spec}: {e}"
    return True, ""


# ------------------------------------------------------------ 3

GOLDEN_N2 = {
    0: ([1, 1], 1),
    1: ([1, 2, 0, -2, 1], 2),
    2: ([1, 3, 1, -5, -5, 11, -3, -1], 3),
    3: ([1, 4, 3, -8, -14, 0, 56, -48, 3, 4, 1], 4),
}


def golden_series() -> tuple[bool, str]:
    for N, (num, k) in GOLDEN_N2.items():
        got = hilbert.series(QuasimapSpec(2, 0, N), 12).at_q1()
        want = hilbert.rational_q1(num, k, 12)
        if got != want:
            return False, f"N={N}: {got} != {want}"
    return True, ""


# ------------------------------------------------------------ 4


def triple_agreement() -> tuple[bool, str]:
    D = 6
    for n in range(3, 7):
        for N1 in (0, 1):
            for N2 in (0, 1):
                spec = QuasimapSpec(n, N1, N2)
                a = hilbert.series(spec, D)
                b = hilbert.spec_chain_series(spec, D)
                c = hilbert.closed_form(spec, D)
                if not (a == b == c):
                    return False, f"{spec}: staircase/chain {a.mismatches(b)[:3]} staircase/closed {a.mismatches(c)[:3]}"
    return True, ""


# ------------------------------------------------------------ 5


def pbw_dims() -> tuple[bool, str]:
    for n in (3, 4, 5):
        for N1 in (0, 1):
            for N2 in (0, 1):
                spec = QuasimapSpec(n, N1, N2)
                res = hilbert.pbw_dual_dims(hilbert.series(spec, 8), 8)
                want = [n * (N1 + N2 + 1), 2 * (N1 + N2) + 1] + [0] * 6
                if res.dims != want:
                    return False, f"{spec}: {res.dims} != {want}"
    res = hilbert.pbw_dual_dims(hilbert.series(QuasimapSpec(2, 0, 3), 12), 12)
    if res.first_negative is None or res.first_negative >= 12:
        return False, f"n=2 N2=3: no negative dimension below degree 12 ({res.dims})"
    return True, f"(n=2 N2=3 first negative at degree {res.first_negative})"


# ------------------------------------------------------------ 6

THEOREM_TRIPLES = [(3, 0, 0), (3, 0, 1), (4, 0, 1), (5, 0, 0), (5, 1, 1)]


def main_theorem() -> tuple[bool, str]:
    for n, N1, N2 in THEOREM_TRIPLES:
        rep = brst.verify_main_theorem(QuasimapSpec(n, N1, N2, ORTHONORMAL), 6)
        if not (rep.passed and rep.d_squared_zero):
            return False, f"{rep.spec}: {rep.verdict()}"
    return True, ""


# ------------------------------------------------------------ 7


def semi_infinite() -> tuple[bool, str]:
    spec = QuasimapSpec(3, 1, 1)
    window = semiinf.Window(3, 2)
    cx = semiinf.build_two_term(spec, window)
    if not semiinf.bidegree_shift_ok(cx):
        return False, "bidegree shift"
    ok, bad = semiinf.euler_check(cx)
    if not ok:
        return False, f"euler {bad[:3]}"
    pr = semiinf.pairing_symmetry(spec, window)
    if not (pr.entrywise and pr.ranks_match):
        return False, f"pairing {pr}"
    st = semiinf.stability(spec, window)
    if not st.stable:
        return False, f"stability {st.mismatches[:3]}"
    return True, f"(stable kernels w<={st.kernel_bound}, cokernels w<={st.cokernel_bound})"


# ------------------------------------------------------------ 8


def z_equations() -> tuple[bool, str]:
    for n in (3, 4, 5):
        rep = semiinf.z_functional_equations(n, 4)
        if not rep.passed:
            return False, "; ".join(rep.lines())
    return True, ""


# ------------------------------------------------------------ 9


def worked_example() -> tuple[bool, str]:
    ring = Ring(("x", "y"), MonomialOrder((0, 1), LEX))
    f1 = ring.parse("x^3 - 2*x*y")
    f2 = ring.parse("x^2*y - 2*y^2 + x")
    s = groebner.s_polynomial(f1, f2)
    if s != ring.parse("x^2"):
        return False, f"S = {s}"
    gb = groebner.buchberger([f1, f2])
    if groebner.reduce(ring.parse("x^2"), gb):
        return False, "x^2 does not reduce to zero"
    return True, ""


def random_coprime_pair(rng: random.Random, ring: Ring):
    """Two polynomials whose leading monomials share no variable."""
    k = ring.nvars
    while True:
        split = rng.randrange(1, k)
        vs = list(range(k))
        rng.shuffle(vs)
        A, B = vs[:split], vs[split:]
        polys = []
        for side in (A, B):
            deg = rng.randint(1, 3)
            e = [0] * k
            for _ in range(deg):
                e[rng.choice(side)] += 1
            lead = tuple(e)
            terms = {lead: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))}
            for _ in range(rng.randint(0, 3)):
                d = rng.randint(0, deg)
                e = [0] * k
                for _ in range(d):
                    e[rng.randrange(k)] += 1
                m = tuple(e)
                if ring.key(m) < ring.key(lead):
                    terms[m] = Fraction(rng.randint(-4, 4))
            polys.append(Polynomial.from_dict(ring, terms))
        f, g = polys
        if mono_coprime(f.lm(), g.lm()):
            return f, g


def coprime_skip(trials: int = 1000, seed: int = 20240101) -> tuple[bool, str]:
    rng = random.Random(seed)
    ring = Ring(("a", "b", "c", "d"))
    for i in range(trials):
        f, g = random_coprime_pair(rng, ring)
        if groebner.reduce(groebner.s_polynomial(f, g), [f, g]):
            return False, f"trial {i}: f={f} g={g}"
    return True, ""


def kernel_suite() -> tuple[bool, str]:
    ok, detail = worked_example()
    if not ok:
        return ok, detail
    return coprime_skip()


CHECKS = [
    (1, "finite quadric series", 5, finite_quadric),
    (2, "Groebner property of the relations", 60, groebner_property),
    (3, "golden n=2 series", 120, golden_series),
    (4, "staircase = chain = closed form", 60, triple_agreement),
    (5, "PBW dual dimensions", 10, pbw_dims),
    (6, "Koszul complex theorem", 600, main_theorem),
    (7, "semi-infinite two-term complex", 300, semi_infinite),
    (8, "Z functional equations", 30, z_equations),
    (9, "Groebner kernel unit suite", 30, kernel_suite),
]


def run_check(number: int) -> CheckResult:
    num, name, limit, body = CHECKS[number - 1]
    return _timed(num, name, limit, body)


def run_all() -> list[CheckResult]:
    return [run_check(k) for k in range(1, len(CHECKS) + 1)]

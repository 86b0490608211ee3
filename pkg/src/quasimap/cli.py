"""Command-line interface: ``python -m quasimap <command> [flags]``.

Exit status is 0 on success, 1 when a verification fails or a budget is
exceeded, and 2 on a usage error.  ``--format structured`` writes one JSON
document (schema ``SCHEMA_ID``) with every integer as a decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance, brst, groebner, hilbert, quadric, semiinf
from .quadric import HYPERBOLIC, ORTHONORMAL, QuasimapSpec

SCHEMA_ID = "quasimap-report/1"

COMMANDS = ("relations", "groebner", "series", "chains", "pbw", "brst", "semiinf", "zcheck", "selftest")


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasimap", description="Exact computations for quasimaps into a quadric.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=3, help="ambient dimension")
    p.add_argument("--N1", type=int, default=0)
    p.add_argument("--N2", type=int, default=0)
    p.add_argument("--coords", choices=(ORTHONORMAL, HYPERBOLIC), default=None,
                   help="default: orthonormal for brst, hyperbolic otherwise")
    p.add_argument("--degree", type=int, default=None, help="degree cutoff (t-window for semiinf)")
    p.add_argument("--qdeg", type=int, default=None, help="q-weight cutoff for semiinf and zcheck")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    return p


def _spec(args) -> QuasimapSpec:
    coords = args.coords or (ORTHONORMAL if args.command == "brst" else HYPERBOLIC)
    try:
        return QuasimapSpec(args.n, args.N1, args.N2, coords)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _degree(args, default: int) -> int:
    d = default if args.degree is None else args.degree
    if d < 0:
        raise UsageError("--degree must be nonnegative")
    return d


def _spec_dict(spec: QuasimapSpec) -> dict:
    return {"n": str(spec.n), "N1": str(spec.N1), "N2": str(spec.N2), "coords": spec.coords}


# every handler returns (ok, text lines, structured payload)


def cmd_relations(args):
    spec = _spec(args)
    A = quadric.algebra(spec)
    lines = [f"# relations for {spec}"]
    rows = []
    for l, r in sorted(A.relation_map.items()):
        lines.append(f"r[{l}] = {r}")
        rows.append({"index": str(l), "polynomial": str(r)})
    return True, lines, {"relations": rows, "variables": list(A.table.names)}


def cmd_groebner(args):
    spec = _spec(args)
    rels = quadric.relations(spec)
    ok, cert = groebner.is_groebner(rels)
    if ok:
        return True, ["GROEBNER: PASS (0 new elements)"], {"groebner": True, "new_elements": "0"}
    gb = groebner.buchberger(rels)
    new = len(gb) - len(rels)
    lines = [f"GROEBNER: FAIL (pair {cert.pair} leaves {cert.normal_form})",
             f"completed basis: {len(gb)} elements ({new:+d}), {gb.stats['pairs_reduced']} pairs reduced"]
    lines += [f"  {g}" for g in gb]
    payload = {"groebner": False, "certificate": cert.as_dict(), "new_elements": str(new),
               "completed_basis": [str(g) for g in gb]}
    return False, lines, payload


def _series_lines(s: hilbert.BigradedSeries) -> list[str]:
    lines = ["q=1: " + " ".join(str(v) for v in s.at_q1())]
    lo, hi = s.degrees
    for d in range(lo, hi + 1):
        ws = s.weights(d)
        if ws:
            lines.append(f"t^{d}: " + " ".join(f"q^{w}:{v}" for w, v in sorted(ws.items())))
    return lines


def cmd_series(args):
    spec = _spec(args)
    D = _degree(args, 8)
    s = hilbert.series(spec, D, truncate=D)
    lines = [f"# series of {spec} up to t^{D}"] + _series_lines(s)
    payload = {"degree": str(D), "series": s.to_rows(), "q1": [str(v) for v in s.at_q1()]}
    return True, lines, payload


def cmd_chains(args):
    spec = _spec(args)
    D = _degree(args, 6)
    try:
        c = hilbert.spec_chain_series(spec, D)
    except ValueError as e:
        raise UsageError(str(e)) from None
    s = hilbert.series(spec, D, truncate=D)
    ok = c == s
    verdict = "CHAINS: PASS (chain series equals staircase)" if ok else f"CHAINS: FAIL {c.mismatches(s)[:5]}"
    lines = [verdict] + _series_lines(c)
    return ok, lines, {"agree": ok, "chain_series": c.to_rows()}


def cmd_pbw(args):
    spec = _spec(args)
    D = _degree(args, 8)
    res = hilbert.pbw_dual_dims(hilbert.series(spec, D, truncate=D), D)
    payload = {"dims": [str(v) for v in res.dims], "consistent": res.consistent,
               "first_negative": None if res.first_negative is None else str(res.first_negative)}
    return True, [str(res)], payload


def cmd_brst(args):
    spec = _spec(args)
    D = _degree(args, 6)
    rep = brst.verify_main_theorem(spec, D)
    lines = [rep.verdict(), f"d^2 = 0: {rep.d_squared_zero}", f"euler = product formula: {rep.euler_ok}"]
    nz = [(b, v) for b, v in sorted(rep.table.dims.items()) if v]
    lines += [f"H(deg={d}, ghost={j}, q^{w}) = {v}" for (d, j, w), v in nz]
    payload = {"theorem": rep.passed, "d_squared_zero": rep.d_squared_zero, "euler": rep.euler_ok,
               "first_failure": None if rep.first_failure is None else repr(rep.first_failure),
               "cohomology": [r for r in rep.table.to_rows() if r["dim"] != "0"]}
    return rep.passed, lines, payload


def cmd_semiinf(args):
    spec = _spec(args)
    T = _degree(args, 3)
    Q = args.qdeg if args.qdeg is not None else max(1, min(spec.N1, spec.N2) + 1)
    window = semiinf.Window(T, Q)
    cx = semiinf.build_two_term(spec, window)
    shift = semiinf.bidegree_shift_ok(cx)
    checks = {"bidegree_shift": shift}
    lines = [f"# two-term complex for {spec}, |t|<={T}, w<={Q}", f"bidegree (+2,+1): {'PASS' if shift else 'FAIL'}"]
    if spec.n >= 3:
        ok, bad = semiinf.euler_check(cx)
        checks["euler"] = ok
        lines.append(f"euler sums vs product (N1<->N2, t->1/t): {'PASS' if ok else f'FAIL {bad[:3]}'}")
    if spec.N2 >= 1:
        pr = semiinf.pairing_symmetry(spec, window)
        checks["pairing"] = pr.entrywise and pr.ranks_match
        lines.append(f"pairing with {pr.partner}: entrywise {pr.entrywise}, ranks {pr.ranks_match}")
    st = semiinf.stability(spec, window)
    checks["stability"] = st.stable
    lines.append(f"stability vs (N1+1,N2+1): kernels w<={st.kernel_bound}, cokernels w<={st.cokernel_bound}"
                 f" -> {'PASS' if st.stable else 'FAIL'}")
    coh = cx.cohomology()
    for (t, w), (k, c) in sorted(coh.items(), key=lambda x: (x[0][1], x[0][0])):
        if k or c:
            lines.append(f"cell t={t} w={w}: ker {k} coker {c}")
    ok = all(checks.values())
    payload = {"window": {"T": str(T), "Q": str(Q)}, "checks": checks,
               "cells": [{"t": str(t), "w": str(w), "ker": str(k), "coker": str(c)}
                         for (t, w), (k, c) in sorted(coh.items(), key=lambda x: (x[0][1], x[0][0]))]}
    return ok, lines, payload


def cmd_zcheck(args):
    W = 4 if args.qdeg is None else args.qdeg
    rep = semiinf.z_functional_equations(args.n, W)
    payload = {"n": str(args.n), "W": str(W), "stable": rep.stable,
               "identities": {k: ok for k, (ok, _) in rep.results.items()}}
    return rep.passed, rep.lines(), payload


def cmd_selftest(args):
    results = acceptance.run_all()
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"SELFTEST: {'PASS' if ok else 'FAIL'} ({sum(r.passed for r in results)}/{len(results)})")
    payload = {"checks": [{"number": str(r.number), "name": r.name, "passed": r.passed} for r in results]}
    return ok, lines, payload


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def run(argv) -> tuple[int, str]:
    """Run one command; returns ``(exit status, report text)``."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return (2 if e.code else 0), ""
    try:
        ok, lines, payload = HANDLERS[args.command](args)
    except UsageError as e:
        return 2, f"usage error: {e}\n"
    except groebner.BudgetExceeded as e:
        return 1, f"BUDGET EXCEEDED: {e}\n"
    if args.format == "structured":
        doc = {"schema": SCHEMA_ID, "command": args.command, "ok": ok, "result": payload}
        if args.command not in ("zcheck", "selftest"):
            doc["spec"] = _spec_dict(_spec(args))
        text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return (0 if ok else 1), text


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, text = run(argv)
    to_file = any(a == "--out" or a.startswith("--out=") for a in argv)
    if text and not (to_file and code != 2):
        sys.stdout.write(text)
    return code

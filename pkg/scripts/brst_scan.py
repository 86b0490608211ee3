#!/usr/bin/env python3
"""Koszul complex cohomology over a list of windows."""

import time

from quasimap import brst
from quasimap.config import BrstScanConfig
from quasimap.quadric import QuasimapSpec


def main(cfg=BrstScanConfig()):
    for n, N1, N2 in cfg.triples:
        t0 = time.perf_counter()
        rep = brst.verify_main_theorem(QuasimapSpec(n, N1, N2, cfg.coords), cfg.degree)
        higher = sum(v for (d, j, w), v in rep.table.dims.items() if j >= 1)
        print(f"{rep.spec} D={cfg.degree}: {rep.verdict()}  higher-ghost total {higher}"
              f"  euler {rep.euler_ok}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()

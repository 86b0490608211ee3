#!/usr/bin/env python3
"""q=1 series of the loop algebras, with the PBW dual dimensions next to them."""

import argparse

from quasimap import hilbert
from quasimap.config import SeriesTableConfig
from quasimap.quadric import QuasimapSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degree", type=int, default=SeriesTableConfig.degree)
    cfg = SeriesTableConfig(degree=ap.parse_args().degree)
    for n in cfg.ns:
        for N1, N2 in cfg.windows:
            spec = QuasimapSpec(n, N1, N2, cfg.coords)
            s = hilbert.series(spec, cfg.degree, truncate=cfg.degree)
            agree = s == hilbert.closed_form(spec, cfg.degree)
            pbw = hilbert.pbw_dual_dims(s, cfg.degree)
            print(f"{spec}: {' '.join(map(str, s.at_q1()))}  closed={agree}  dual={pbw.dims[:3]}")
    # the n=2 family has no product formula
    for N in range(4):
        s = hilbert.series(QuasimapSpec(2, 0, N), cfg.degree + 4)
        print(f"n=2 N2={N}: {' '.join(map(str, s.at_q1()))}  {hilbert.pbw_dual_dims(s, cfg.degree + 4)}")


if __name__ == "__main__":
    main()

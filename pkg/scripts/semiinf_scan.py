#!/usr/bin/env python3
"""Two-term complex checks and the Z identities."""

from quasimap import semiinf
from quasimap.config import SemiInfScanConfig
from quasimap.quadric import QuasimapSpec


def main(cfg=SemiInfScanConfig()):
    window = semiinf.Window(cfg.T, cfg.Q)
    for trip in cfg.specs:
        spec = QuasimapSpec(*trip)
        cx = semiinf.build_two_term(spec, window)
        ok, _ = semiinf.euler_check(cx)
        pr = semiinf.pairing_symmetry(spec, window)
        st = semiinf.stability(spec, window)
        print(f"{spec}: shift {semiinf.bidegree_shift_ok(cx)} euler {ok} "
              f"pairing({pr.partner.N1},{pr.partner.N2}) {pr.entrywise} stable {st.stable}")
        for (t, w), (k, c) in sorted(cx.cohomology().items(), key=lambda x: (x[0][1], x[0][0])):
            if k or c:
                print(f"   t={t:+d} w={w}: ker {k} coker {c}")
    for n in cfg.z_ns:
        print("\n".join(semiinf.z_functional_equations(n, cfg.z_weight).lines()))


if __name__ == "__main__":
    main()

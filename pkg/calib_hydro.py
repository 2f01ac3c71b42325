"""Calibration: hydro acceptance geometry (wall placement, fit windows)."""
import sys
import time

import numpy as np

from voidlab import hydro


def run(L, wall, t_max, every, lam=2.0, sig=1.0, n_hi=1.0):
    p = hydro.HydroParams(lam=lam, sigma=sig, length=L)
    f = hydro.init_domain_wall(p, n_hi=n_hi, n_lo=0.0, wall=wall)
    m0 = f.mass
    t0 = time.time()
    snaps = list(hydro.evolve(f, p, t_max, list(range(every, t_max + 1, every))))
    dt = time.time() - t0
    drift = max(abs(s.mass - m0) / m0 for s in snaps)
    print(f"L={L} wall={wall} t_max={t_max}: {dt:.1f}s, mass drift {drift:.2e}", flush=True)
    return snaps


def tail_slopes(snaps, wall, window=(3.0, 20.0)):
    for s in snaps:
        r = hydro.scaling_profile([s], wall, window)
        print(f"  t={s.time}: tail slope {r.tail_slope:+.3f}", flush=True)


def pooled_slope(snaps, wall, tlo, thi, window=(3.0, 20.0)):
    sel = [s for s in snaps if tlo <= s.time <= thi]
    r = hydro.scaling_profile(sel, wall, window)
    print(f"  pooled t in [{tlo},{thi}]: slope {r.tail_slope:+.3f}", flush=True)
    return r.tail_slope


def center_exponents(snaps, wall, cs=(2, 4, 8), decade=10.0):
    for c in cs:
        t, v = hydro.density_at_scaled_position(snaps, wall, c)
        ok = v > 0
        t, v = t[ok], v[ok]
        tmax = t.max()
        sel = t >= tmax / decade
        slope = np.polyfit(np.log(t[sel]), np.log(v[sel]), 1)[0]
        print(f"  c={c}: exponent over last decade {slope:+.4f}  (pts {sel.sum()})", flush=True)


if __name__ == "__main__":
    mode = sys.argv[1] if len(sys.argv) > 1 else "accept"
    if mode == "quick":
        # small rehearsal for speed estimate
        snaps = run(4000, 1000, 8000, 500)
        tail_slopes(snaps[1::4], 1000)
        center_exponents(snaps, 1000)
    elif mode == "accept":
        # acceptance-pinned run: L=2e4, lam=2, sig=1, samples every 1e3 to 5e4
        wall = 5000
        snaps = run(20000, wall, 50000, 1000)
        print("per-snapshot tail slopes, eta in [3,20]:")
        tail_slopes(snaps[::5], wall)
        print("pooled windows:")
        for tlo, thi in [(5000, 20000), (10000, 30000), (5000, 50000), (20000, 50000)]:
            pooled_slope(snaps, wall, tlo, thi)
        print("center density exponents (same run):")
        center_exponents(snaps, wall)
    elif mode == "center":
        # candidate dedicated geometry for the center-density criterion
        wall = 5000
        snaps = run(40000, wall, 30000, 500)
        center_exponents(snaps, wall)
        print("tail slopes late:")
        tail_slopes(snaps[19::20], wall)

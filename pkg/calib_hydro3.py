"""Verify frozen hydro acceptance configurations end to end."""
import time

import numpy as np

from voidlab import hydro


def main():
    # Criterion 1 geometry: pinned L=2e4, lam=2, sig=1, samples 1e3..5e4
    p = hydro.HydroParams(lam=2.0, sigma=1.0, length=20000, boundary="open")
    f = hydro.init_domain_wall(p, n_hi=8.0, n_lo=0.0, wall=3000)
    m0 = f.mass
    t0 = time.time()
    snaps = list(hydro.evolve(f, p, 50000, list(range(1000, 50001, 1000))))
    print(f"run A: {time.time()-t0:.0f}s drift={max(abs(s.mass-m0)/m0 for s in snaps):.2e}", flush=True)
    late = [s for s in snaps if 20000 <= s.time <= 50000]
    r = hydro.scaling_profile(late, 3000, (3.0, 20.0))
    print(f"run A pooled slope t in [2e4,5e4], eta [3,20]: {r.tail_slope:+.4f}", flush=True)
    for tsel in (20000, 35000, 50000):
        s = [x for x in snaps if x.time == tsel]
        print(f"  t={tsel}: {hydro.scaling_profile(s, 3000, (3.0,20.0)).tail_slope:+.4f}", flush=True)

    # Criterion 2 geometry: L=4e4 (unpinned), same couplings
    p2 = hydro.HydroParams(lam=2.0, sigma=1.0, length=40000, boundary="open")
    f2 = hydro.init_domain_wall(p2, n_hi=8.0, n_lo=0.0, wall=3000)
    t0 = time.time()
    snaps2 = list(hydro.evolve(f2, p2, 50000, list(range(1000, 50001, 1000))))
    print(f"run B: {time.time()-t0:.0f}s", flush=True)
    for c in (2.0, 4.0, 8.0):
        t, v = hydro.density_at_scaled_position(snaps2, 3000, c)
        sel = (t >= 5000) & (v > 0)
        slope = np.polyfit(np.log(t[sel]), np.log(v[sel]), 1)[0]
        # collapse amplitude check: c^2 * n * t^(1/3) should be ~A for all c
        amp = np.median(c**2 * v[sel] * t[sel] ** (1.0 / 3.0))
        print(f"run B c={c}: exponent {slope:+.4f}  c^2*n*t^(1/3) ~ {amp:.3f}", flush=True)


if __name__ == "__main__":
    main()

"""Inspect the local slope of the collapsed profile and the tail amplitude."""
import numpy as np

from voidlab import hydro


def local_structure(L, wall, t_probe, lam=2.0, sig=1.0, n_hi=1.0):
    p = hydro.HydroParams(lam=lam, sigma=sig, length=L)
    f = hydro.init_domain_wall(p, n_hi=n_hi, n_lo=0.0, wall=wall)
    snaps = list(hydro.evolve(f, p, max(t_probe), list(t_probe)))
    for s in snaps:
        x = np.arange(L) - wall
        keep = x > 0
        eta = x[keep] / np.sqrt(s.time)
        n = s.total[keep]
        print(f"t={s.time} (lam={lam}, sig={sig}):")
        # local slope over sliding eta bands and amplitude A = n*eta^2
        for lo, hi in [(2, 4), (3, 6), (4, 8), (6, 12), (8, 16), (12, 24), (16, 32), (24, 48), (32, 64)]:
            selw = (eta >= lo) & (eta <= hi) & (n > 0)
            if selw.sum() < 4:
                continue
            sl = np.polyfit(np.log(eta[selw]), np.log(n[selw]), 1)[0]
            amid = np.median(n[selw] * eta[selw] ** 2)
            print(f"  eta [{lo:>4},{hi:>4}]: slope {sl:+.3f}  A=n*eta^2 ~ {amid:.3f}", flush=True)


if __name__ == "__main__":
    local_structure(20000, 3000, [10000])
    local_structure(20000, 3000, [10000], lam=1.0, sig=0.01, n_hi=1.0)

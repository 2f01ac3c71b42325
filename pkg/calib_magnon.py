"""Calibration scan: where does alpha(t) plateau, and with what noise?"""
import sys
import time

import numpy as np

from voidlab import analysis, gasmagnon as gm


def scan(name, n, t_max, L, samples=20000, gamma=1.0):
    cfg = gm.MagnonConfig(length=L, density=n, gamma=gamma, t_max=t_max,
                          samples=samples, batch_size=1024, seed=11)
    t0 = time.time()
    ts = gm.survival_probability(cfg)
    el = time.time() - t0
    i_last = np.argmax(ts.values < 20 * ts.stderr) or len(ts.values)
    print(f"[{name}] n={n} L={L} t_max={t_max} N={samples}: {el:.0f}s; "
          f"P({t_max})={ts.values[-1]:.3e}+-{ts.stderr[-1]:.1e}; "
          f"P<20sigma first at t={i_last}", flush=True)
    # alpha over sliding decades
    for t_hi in (t_max // 4, t_max // 2, t_max):
        t_lo = max(2, t_hi // 10)
        try:
            a = analysis.stretch_exponent(ts, window=(t_lo, t_hi))
            sel = a.times >= t_hi / 2
            print(f"   window [{t_lo},{t_hi}]: alpha(last half) = "
                  f"{a.values[sel].mean():.3f} +- {a.values[sel].std():.3f}", flush=True)
        except ValueError as e:
            print(f"   window [{t_lo},{t_hi}]: {e}", flush=True)
    fit = analysis.fit_stretched(ts, (t_max // 10, t_max))
    print(f"   global fit [{t_max//10},{t_max}]: alpha={fit.alpha:.3f}", flush=True)
    return ts


if __name__ == "__main__":
    which = sys.argv[1]
    if which == "A":
        scan("A", 0.10, 250, 256)
    elif which == "B":
        scan("B", 0.075, 300, 384)
    elif which == "C":
        scan("C", 0.05, 450, 512)
    elif which == "D":
        scan("D", 0.15, 160, 256)

"""Second magnon scan: stronger dephasing to reach the void-dominated regime."""
import sys
import time

import numpy as np

from voidlab import analysis, gasmagnon as gm


def scan(name, n, gamma, t_max, L, samples=20000):
    cfg = gm.MagnonConfig(length=L, density=n, gamma=gamma, t_max=t_max,
                          samples=samples, batch_size=1024, seed=11)
    t0 = time.time()
    ts = gm.survival_probability(cfg)
    el = time.time() - t0
    print(f"[{name}] n={n} gamma={gamma} L={L} t_max={t_max} N={samples}: {el:.0f}s; "
          f"P(end)={ts.values[-1]:.3e}+-{ts.stderr[-1]:.1e}", flush=True)
    for t_hi in (t_max // 2, t_max):
        t_lo = max(2, t_hi // 10)
        a = analysis.stretch_exponent(ts, window=(t_lo, t_hi))
        sel = a.times >= t_hi / 2
        print(f"   decade [{t_hi//10},{t_hi}]: mean alpha over full decade = "
              f"{a.values[a.times>=t_hi//10].mean():.3f}; last half {a.values[sel].mean():.3f}",
              flush=True)
    return ts


if __name__ == "__main__":
    for arg in sys.argv[1:]:
        if arg == "E":
            scan("E", 0.10, 3.0, 400, 384)
        elif arg == "F":
            scan("F", 0.15, 4.0, 300, 320)
        elif arg == "G":
            scan("G", 0.10, 2.0, 300, 320)
        elif arg == "H":
            scan("H", 0.15, 6.0, 300, 320)
        elif arg == "I":
            scan("I", 0.20, 4.0, 250, 288)

def scan_more():
    for name, n, gamma, t_max, L in [
        ("J", 0.3, 3.0, 220, 288),
        ("K", 0.5, 3.0, 160, 256),
        ("M", 1.0, 2.0, 120, 224),
        ("O", 0.6, 6.0, 120, 256),
        ("Q", 0.5, 0.5, 250, 256),
    ]:
        scan(name, n, gamma, t_max, L)

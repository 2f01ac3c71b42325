"""Second Kubo/collapse rehearsal with the time-averaged estimators."""
import time

import numpy as np

from voidlab import analysis, gasmagnon as gm


def kubo_part(densities, n_traj=64, seed=21):
    ds = []
    t0 = time.time()
    for n in densities:
        cfg = gm.MagnonConfig(length=2048, density=n, t_max=0, samples=1, seed=seed)
        t_run = int(min(6000, 500.0 / n))
        series = gm.current_autocorrelation(cfg, t_run=t_run, n_trajectories=n_traj,
                                            max_lag=int(25.0 / n))
        d, report = analysis.kubo_diffusivity(series, susceptibility=n)
        ds.append(d)
        print(f"n={n}: D={d:.3f} D*n={d*n:.3f} window={report.window} "
              f"({time.time()-t0:.0f}s)", flush=True)
    inv_n = 1.0 / np.asarray(densities)
    ds = np.asarray(ds)
    coeffs = np.polyfit(inv_n, ds, 1)
    pred = np.polyval(coeffs, inv_n)
    r2 = 1 - ((ds - pred) ** 2).sum() / ((ds - ds.mean()) ** 2).sum()
    print(f"D vs 1/n: slope {coeffs[0]:.3f} intercept {coeffs[1]:.3f} R^2 = {r2:.5f}",
          flush=True)


def collapse_part(densities, n_traj=24, seed=22):
    curves = []
    t0 = time.time()
    for n in densities:
        cfg = gm.MagnonConfig(length=1024, density=n, t_max=0, samples=1, seed=seed)
        lag = int(round(30.0 / n))
        corr = gm.density_correlator(cfg, [lag], n_trajectories=n_traj)[lag]
        L = cfg.length
        x = ((np.arange(L) + L // 2) % L) - L // 2
        order = np.argsort(x)
        xs = np.sort(x).astype(float)
        vals = corr[order]
        u = xs * np.sqrt(n / lag)
        peak = vals.max()
        curves.append((u, vals / peak))
        print(f"n={n}: lag={lag} peak={peak:.5f} peak/n^2={peak/n**2:.3f} "
              f"({time.time()-t0:.0f}s)", flush=True)
    grid = np.linspace(-3.0, 3.0, 61)
    interped = [np.interp(grid, u, v) for u, v in curves]
    worst = 0.0
    for i in range(len(interped)):
        for j in range(i + 1, len(interped)):
            worst = max(worst, np.max(np.abs(interped[i] - interped[j])))
    print(f"max pairwise deviation (|u|<=3): {worst:.3f} (need < 0.10)", flush=True)


if __name__ == "__main__":
    dens = [0.05, 0.1, 0.2, 0.4]
    kubo_part(dens)
    collapse_part(dens)

"""Rehearse the gas-diffusivity acceptance: D vs 1/n linearity + collapse."""
import time

import numpy as np

from voidlab import analysis, gasmagnon as gm


def main():
    densities = [0.05, 0.1, 0.2, 0.4]
    ds = []
    t0 = time.time()
    for n in densities:
        cfg = gm.MagnonConfig(length=2048, density=n, t_max=0, samples=1, seed=21)
        t_run = int(min(3000, 120.0 / n))
        series = gm.current_autocorrelation(cfg, t_run=t_run, n_trajectories=24,
                                            max_lag=t_run // 3)
        d, report = analysis.kubo_diffusivity(series, susceptibility=n)
        ds.append(d)
        print(f"n={n}: D={d:.3f} window={report.window} ({time.time()-t0:.0f}s)", flush=True)
    inv_n = 1.0 / np.asarray(densities)
    ds = np.asarray(ds)
    coeffs = np.polyfit(inv_n, ds, 1)
    pred = np.polyval(coeffs, inv_n)
    ss_res = ((ds - pred) ** 2).sum()
    ss_tot = ((ds - ds.mean()) ** 2).sum()
    r2 = 1 - ss_res / ss_tot
    print(f"D vs 1/n: slope {coeffs[0]:.3f} intercept {coeffs[1]:.3f} R^2 = {r2:.5f}", flush=True)

    # structure-factor collapse: peak-normalized curves vs x sqrt(n/t)
    print("collapse check:", flush=True)
    curves = []
    for n in densities:
        cfg = gm.MagnonConfig(length=2048, density=n, t_max=0, samples=1, seed=22)
        lag = int(round(30.0 / n))
        corr = gm.density_correlator(cfg, [lag], n_trajectories=24)[lag]
        L = cfg.length
        x = ((np.arange(L) + L // 2) % L) - L // 2
        order = np.argsort(x)
        xs = np.sort(x).astype(float)
        vals = corr[order]
        u = xs * np.sqrt(n / lag)
        peak = vals.max()
        curves.append((u, vals / peak))
        print(f"  n={n}: lag={lag} peak={peak:.4f}", flush=True)
    grid = np.linspace(-3.0, 3.0, 61)
    interped = [np.interp(grid, u, v) for u, v in curves]
    worst = 0.0
    for i in range(len(interped)):
        for j in range(i + 1, len(interped)):
            worst = max(worst, np.max(np.abs(interped[i] - interped[j])))
    print(f"max pairwise deviation of peak-normalized curves: {worst:.3f} (need < 0.10)",
          flush=True)


if __name__ == "__main__":
    main()

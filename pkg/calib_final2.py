"""Final rehearsals: binned collapse metric; magnon seed robustness."""
import time

import numpy as np

from voidlab import analysis, gasmagnon as gm


def binned_curve(n, seed, L=1024, n_traj=48):
    cfg = gm.MagnonConfig(length=L, density=n, t_max=0, samples=1, seed=seed)
    lag_c = int(round(25.0 / n))
    lags = sorted({int(round(f * lag_c)) for f in (0.8, 1.0, 1.2)})
    corr = gm.density_correlator(cfg, lags, n_trajectories=n_traj)
    x = ((np.arange(L) + L // 2) % L) - L // 2
    edges = np.linspace(-3.0, 3.0, 25)
    centers = 0.5 * (edges[:-1] + edges[1:])
    acc = np.zeros(centers.size)
    cnt = np.zeros(centers.size)
    for lag in lags:
        u = x * np.sqrt(n / lag)
        vals = corr[lag]
        idx = np.digitize(u, edges) - 1
        ok = (idx >= 0) & (idx < centers.size)
        np.add.at(acc, idx[ok], vals[ok])
        np.add.at(cnt, idx[ok], 1)
    curve = acc / np.maximum(cnt, 1)
    return centers, curve / curve.max()


def collapse(seed=22):
    t0 = time.time()
    curves = []
    for n in (0.05, 0.1, 0.2, 0.4):
        u, c = binned_curve(n, seed)
        curves.append(c)
        print(f"n={n}: {time.time()-t0:.0f}s", flush=True)
    worst = 0.0
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            worst = max(worst, float(np.max(np.abs(curves[i] - curves[j]))))
    print(f"binned collapse max deviation: {worst:.3f} (need < 0.10)", flush=True)


def magnon_seeds():
    for seed in (2024, 7, 99):
        cfg = gm.MagnonConfig(length=192, density=0.6, gamma=6.0, t_max=60,
                              samples=100_000, batch_size=1024, seed=seed)
        t0 = time.time()
        ts = gm.survival_probability(cfg, n_workers=2)
        rel = ts.stderr / np.maximum(ts.values, 1e-300)
        usable = np.nonzero(rel < 0.2)[0]
        t_end = int(usable.max())
        t_lo = max(3, int(np.ceil(t_end / 10)))
        alpha = analysis.stretch_exponent(ts, window=(t_lo, t_end))
        m = alpha.values.mean()
        print(f"seed={seed}: alpha_mean={m:.4f} decade=[{t_lo},{t_end}] "
              f"({time.time()-t0:.0f}s)", flush=True)


if __name__ == "__main__":
    collapse()
    magnon_seeds()

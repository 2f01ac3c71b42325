"""Third rehearsal round: windowed anomaly fit; high-statistics collapse."""
import time

import numpy as np

from voidlab import floquet as fq, gasmagnon as gm


def stretched_residual(t, logz, alpha):
    x = t**alpha
    coeffs = np.polyfit(x, logz, 1)
    return float(np.sqrt(np.mean((np.polyval(coeffs, x) - logz) ** 2)))


def noise_anomaly():
    t0 = time.time()
    res = fq.noisy_correlator(6, "haar", 8, 0.4, method="superoperator",
                              num_circuits=3000, boundary="open", seed=5)
    zsum = res.values.real.sum(axis=1)
    zerr = np.sqrt((res.stderr**2).sum(axis=1))
    keep = np.nonzero(zsum > 20 * zerr / np.sqrt(1.0))[0]
    keep = keep[keep >= 1]
    print("usable t:", keep, flush=True)
    t = res.times[keep]
    logz = np.log(zsum[keep])
    r_exp = stretched_residual(t, logz, 1.0)
    alphas = np.linspace(0.3, 0.9, 25)
    r_str = min(stretched_residual(t, logz, a) for a in alphas)
    print(f"exp residual {r_exp:.6f} vs best stretched {r_str:.6f} -> "
          f"{'PASS' if r_exp < r_str else 'FAIL'} ({time.time()-t0:.0f}s)", flush=True)


def binned_curve(n, seed, L, n_traj):
    cfg = gm.MagnonConfig(length=L, density=n, t_max=0, samples=1, seed=seed)
    lag_c = 25.0 / n
    lags = sorted({int(round(f * lag_c)) for f in (0.7, 0.85, 1.0, 1.15, 1.3)})
    corr = gm.density_correlator(cfg, lags, n_trajectories=n_traj)
    x = ((np.arange(L) + L // 2) % L) - L // 2
    edges = np.linspace(-3.0, 3.0, 17)
    centers = 0.5 * (edges[:-1] + edges[1:])
    acc = np.zeros(centers.size)
    cnt = np.zeros(centers.size)
    for lag in lags:
        u = x * np.sqrt(n / lag)
        idx = np.digitize(u, edges) - 1
        ok = (idx >= 0) & (idx < centers.size)
        np.add.at(acc, idx[ok], corr[lag][ok])
        np.add.at(cnt, idx[ok], 1)
    curve = acc / np.maximum(cnt, 1)
    return centers, curve / curve.max()


def collapse():
    t0 = time.time()
    curves = []
    for n, traj in [(0.05, 160), (0.1, 160), (0.2, 96), (0.4, 64)]:
        u, c = binned_curve(n, 22, 1024, traj)
        curves.append(c)
        print(f"n={n}: {time.time()-t0:.0f}s", flush=True)
    worst = 0.0
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            worst = max(worst, float(np.max(np.abs(curves[i] - curves[j]))))
    print(f"binned collapse max deviation: {worst:.3f} (need < 0.10)", flush=True)


if __name__ == "__main__":
    noise_anomaly()
    collapse()

"""Fourth rehearsal: deeper magnon configs; deterministic anomaly fit."""
import time

import numpy as np

from voidlab import analysis, floquet as fq, gasmagnon as gm


def stretched_residual(t, logz, alpha):
    x = t**alpha
    coeffs = np.polyfit(x, logz, 1)
    return float(np.sqrt(np.mean((np.polyval(coeffs, x) - logz) ** 2)))


def anomaly_fixed_gates():
    t0 = time.time()
    params = fq.FloquetParams.from_model("A")
    res = fq.noisy_correlator(6, params, 16, 0.4, method="superoperator")
    zsum = res.values.real.sum(axis=1)
    print("zsum ratios:", np.round(zsum[:-1] / zsum[1:], 3), flush=True)
    for lo in (1, 2, 3):
        t = res.times[lo:]
        logz = np.log(zsum[lo:])
        r_exp = stretched_residual(t, logz, 1.0)
        r_str = min(stretched_residual(t, logz, a) for a in np.linspace(0.3, 0.9, 25))
        print(f"window [{lo},16]: exp {r_exp:.6f} vs stretched {r_str:.6f} -> "
              f"{'PASS' if r_exp < r_str else 'FAIL'}", flush=True)
    print(f"({time.time()-t0:.0f}s)", flush=True)


def magnon(name, n, gamma, t_max, L, seeds=(2024, 7)):
    for seed in seeds:
        cfg = gm.MagnonConfig(length=L, density=n, gamma=gamma, t_max=t_max,
                              samples=100_000, batch_size=1024, seed=seed)
        t0 = time.time()
        ts = gm.survival_probability(cfg, n_workers=2)
        rel = ts.stderr / np.maximum(ts.values, 1e-300)
        usable = np.nonzero(rel < 0.2)[0]
        t_end = int(usable.max())
        t_lo = max(3, int(np.ceil(t_end / 10)))
        alpha = analysis.stretch_exponent(ts, window=(t_lo, t_end))
        m = alpha.values.mean()
        print(f"[{name}] seed={seed}: alpha={m:.4f} decade=[{t_lo},{t_end}] "
              f"P(end)={ts.values[t_end]:.1e} ({time.time()-t0:.0f}s)", flush=True)


if __name__ == "__main__":
    anomaly_fixed_gates()
    magnon("W1", 0.6, 6.0, 75, 200)
    magnon("W2", 0.7, 6.0, 60, 192)

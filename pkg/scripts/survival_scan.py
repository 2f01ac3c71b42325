#!/usr/bin/env python3
"""Scan the magnon survival stretch exponent over densities and couplings.

Useful for exploring how fast alpha(t) approaches 2/3 at different points
of the (density, gamma) plane before committing to a long run.
"""
import argparse
import sys

import numpy as np

from voidlab import analysis, gasmagnon as gm


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--densities", type=float, nargs="+", default=[0.3, 0.6])
    parser.add_argument("--gammas", type=float, nargs="+", default=[3.0, 6.0])
    parser.add_argument("--t-max", type=int, default=80)
    parser.add_argument("--length", type=int, default=192)
    parser.add_argument("--samples", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=2)
    args = parser.parse_args()
    for n in args.densities:
        for gamma in args.gammas:
            cfg = gm.MagnonConfig(length=args.length, density=n, gamma=gamma,
                                  t_max=args.t_max, samples=args.samples,
                                  seed=args.seed)
            ts = gm.survival_probability(cfg, n_workers=args.workers)
            rel = ts.stderr / np.maximum(ts.values, 1e-300)
            usable = np.nonzero(rel < 0.2)[0]
            if usable.size < 10:
                print(f"n={n} gamma={gamma}: decayed below the noise floor too fast")
                continue
            t_end = int(usable.max())
            alpha = analysis.stretch_exponent(ts, window=(max(3, t_end // 10), t_end))
            print(f"n={n} gamma={gamma}: alpha over [{max(3, t_end // 10)},{t_end}] "
                  f"= {alpha.values.mean():.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

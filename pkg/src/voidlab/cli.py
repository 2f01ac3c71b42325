"""Experiment driver: one subcommand per module, JSON configs, manifests.

Every run writes its data files plus a manifest.json carrying the full
configuration echo, package versions, wall time, and sha256 checksums, so
deterministic backends can be verified by re-running and comparing digests.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, analysis, floquet, gasmagnon, hydro, nhbound, replica

FORMAT_VERSION = 1
OUTPUT_ROOT_ENV = "VOIDLAB_OUTPUT_ROOT"

USAGE_ERROR = 2
CAPACITY_ERROR = 3


class CapacityError(RuntimeError):
    pass


def _out_dir(args) -> Path:
    root = Path(args.out or os.environ.get(OUTPUT_ROOT_ENV, "."))
    root.mkdir(parents=True, exist_ok=True)
    return root


def _write_csv(path: Path, header: dict, columns: list[str], rows) -> None:
    with path.open("w") as fh:
        for key, value in header.items():
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(out_dir: Path, config: dict, files: list[Path], started: float) -> Path:
    manifest = {
        "format_version": FORMAT_VERSION,
        "config": config,
        "versions": {
            "voidlab": __version__,
            "numpy": np.__version__,
            "python": sys.version.split()[0],
        },
        "wall_time_s": round(time.time() - started, 3),
        "files": {f.name: _sha256(f) for f in sorted(files)},
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def read_timeseries_csv(path: Path) -> analysis.TimeSeries:
    """Read a t,value[,stderr] CSV with '# key=value' comment headers."""
    meta: dict = {}
    rows = []
    with Path(path).open() as fh:
        header = None
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("# ")
                if "=" in body:
                    key, value = body.split("=", 1)
                    meta[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None or not rows:
        raise ValueError(f"no data rows in {path}")
    data = np.asarray(rows)
    stderr = data[:, 2] if data.shape[1] > 2 else None
    return analysis.TimeSeries(data[:, 0], data[:, 1], stderr, meta)


def read_profile_csv(path: Path) -> analysis.ProfileSeries:
    """Read a t,x,value[,...] CSV into profile slices (one row per time).

    Four-column t,x,re,im tables are folded into squared magnitudes.
    """
    rows = []
    with Path(path).open() as fh:
        header = None
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None or not rows:
        raise ValueError(f"no data rows in {path}")
    data = np.asarray(rows)
    values = data[:, 2] ** 2 + data[:, 3] ** 2 if data.shape[1] >= 4 else data[:, 2]
    times = np.unique(data[:, 0])
    positions = np.unique(data[:, 1])
    grid = np.full((times.size, positions.size), np.nan)
    t_idx = np.searchsorted(times, data[:, 0])
    x_idx = np.searchsorted(positions, data[:, 1])
    grid[t_idx, x_idx] = values
    if np.any(np.isnan(grid)):
        raise ValueError(f"{path} does not hold a complete (t, x) grid")
    return analysis.ProfileSeries(times, positions, grid)


# ---------------------------------------------------------------- hydro


def run_hydro(args) -> int:
    out_dir = _out_dir(args)
    started = time.time()
    params = hydro.HydroParams(args.lam, args.sigma, args.length, args.boundary)
    wall = args.wall if args.wall is not None else args.length // 2
    field = hydro.init_domain_wall(params, args.n_hi, args.n_lo, wall)
    sample_times = list(range(0, args.t_max + 1, args.sample_every)) or [0]
    header = {
        "module": "hydro", "lambda": args.lam, "sigma": args.sigma,
        "length": args.length, "boundary": args.boundary, "wall": wall,
        "n_hi": args.n_hi, "n_lo": args.n_lo, "t_max": args.t_max,
    }
    data_path = out_dir / "hydro_profiles.csv"
    snapshots = []
    with data_path.open("w") as fh:
        for key, value in header.items():
            fh.write(f"# {key}={value}\n")
        fh.write("t,x,n_left,n_right\n")
        for snap in hydro.evolve(field, params, args.t_max, sample_times):
            for x in range(params.length):
                fh.write(
                    f"{snap.time},{x},{snap.n_left[x]!r},{snap.n_right[x]!r}\n"
                )
            snapshots.append(snap)
    files = [data_path]
    late = [s for s in snapshots if s.time > 0]
    if late:
        result = hydro.scaling_profile(late, wall)
        collapse_path = out_dir / "hydro_collapse.csv"
        rows = []
        for prof in result.profiles:
            for eta, n in zip(prof.eta, prof.density):
                rows.append((prof.time, eta, n))
        _write_csv(
            collapse_path,
            {**header, "tail_slope": result.tail_slope,
             "eta_window": f"{result.tail_window[0]}:{result.tail_window[1]}"},
            ["t", "eta", "n"],
            rows,
        )
        files.append(collapse_path)
    write_manifest(out_dir, {"subcommand": "hydro", **header}, files, started)
    return 0


# ---------------------------------------------------------------- magnon


def run_magnon(args) -> int:
    out_dir = _out_dir(args)
    started = time.time()
    config = gasmagnon.MagnonConfig(
        length=args.length, density=args.density, gamma=args.gamma,
        t_max=args.t_max, samples=args.samples, seed=args.seed,
        batch_size=args.batch_size,
    )
    series = gasmagnon.survival_probability(config, n_workers=args.workers)
    path = out_dir / "magnon_survival.csv"
    _write_csv(
        path,
        dict(series.metadata),
        ["t", "P", "stderr"],
        zip(series.times, series.values, series.stderr),
    )
    write_manifest(out_dir, {"subcommand": "magnon", **series.metadata}, [path], started)
    return 0


def run_gas_corr(args) -> int:
    out_dir = _out_dir(args)
    started = time.time()
    config = gasmagnon.MagnonConfig(
        length=args.length, density=args.density, t_max=args.t_max,
        samples=1, seed=args.seed,
    )
    lags = sorted(set(args.lags))
    corr = gasmagnon.density_correlator(config, lags, n_trajectories=args.trajectories)
    path = out_dir / "gas_corr.csv"
    rows = []
    for lag in lags:
        values = corr[lag]
        for x in range(args.length):
            signed_x = ((x + args.length // 2) % args.length) - args.length // 2
            rows.append((lag, signed_x, values[x]))
    _write_csv(
        path,
        {"module": "gasmagnon", "observable": "density_correlator",
         "density": args.density, "length": args.length,
         "trajectories": args.trajectories, "seed": args.seed},
        ["t", "x", "corr"],
        rows,
    )
    write_manifest(out_dir, {"subcommand": "gas-corr", "density": args.density,
                             "length": args.length, "lags": lags}, [path], started)
    return 0


# ---------------------------------------------------------------- bound


def run_bound(args) -> int:
    out_dir = _out_dir(args)
    started = time.time()
    params = nhbound.OscillatorParams.from_void(args.t, args.ell, args.m_star)
    spectrum = nhbound.quasispectrum(params, args.n_max)
    times = np.geomspace(1.0, args.t, 41)
    table = []
    for ti in times:
        opt = nhbound.optimal_void(ti, args.a1, args.a2)
        table.append((ti, opt.ell_star, opt.log_bound))
    payload = {
        "params": {"t": args.t, "ell": args.ell, "m_star": args.m_star,
                   "k": params.k, "floor": params.floor,
                   "omega": [params.omega.real, params.omega.imag]},
        "quasispectrum": [[z.real, z.imag] for z in spectrum],
        "survival_lower_bound": nhbound.survival_lower_bound(args.t, args.ell, args.m_star),
        "optimal_void_exponent": "2/3",
    }
    json_path = out_dir / "bound.json"
    json_path.write_text(json.dumps(payload, indent=2) + "\n")
    csv_path = out_dir / "bound_ellstar.csv"
    _write_csv(csv_path, {"module": "nhbound", "a1": args.a1, "a2": args.a2},
               ["t", "ell_star", "log_bound"], table)
    write_manifest(out_dir, {"subcommand": "bound", "t": args.t, "ell": args.ell},
                   [json_path, csv_path], started)
    return 0


# ---------------------------------------------------------------- replica


def run_replica(args) -> int:
    out_dir = _out_dir(args)
    started = time.time()
    if args.backend == "dense" and args.length > replica.DENSE_MAX_SITES:
        raise CapacityError(
            f"dense replica backend limited to L <= {replica.DENSE_MAX_SITES} "
            f"(6^{args.length} = {6.0**args.length:.2e} coefficients)"
        )
    if args.backend == "sparse" and args.length > 7:
        raise CapacityError(
            "sparse replica runs from the identity-background insertion grow "
            "dense; limited to L <= 7 (use the module API for polarized states)"
        )
    header = {
        "module": "replica", "length": args.length, "t_max": args.t_max,
        "gamma_z": args.gamma_z, "boundary": args.boundary, "seed": args.seed,
        "backend": args.backend,
    }
    rows = []
    zsum_rows = []
    state = replica.charged_insertion_state(args.length, 0)
    if args.backend == "sparse":
        state = replica.to_sparse(state)
    for t in range(args.t_max + 1):
        profile = np.array(
            [replica._contract_charged_bra(state, s) for s in range(args.length)]
        ) / 4.0**args.length
        for x, z in enumerate(profile):
            rows.append((t, x, z))
        zsum_rows.append((t, profile.sum()))
        if t < args.t_max:
            state = replica.apply_brickwork(state, 1, args.boundary)
            if args.gamma_z > 0:
                state = replica.dephasing_layer(state, args.gamma_z)
    files = []
    z_path = out_dir / "replica_z.csv"
    _write_csv(z_path, header, ["t", "x", "Z"], rows)
    files.append(z_path)
    zsum_path = out_dir / "replica_zsum.csv"
    _write_csv(zsum_path, header, ["t", "Zsum"], zsum_rows)
    files.append(zsum_path)
    if args.oracle_samples > 0:
        est = replica.haar_oracle(args.length, args.t_max, args.oracle_samples,
                                  seed=args.seed, boundary=args.boundary)
        oracle_path = out_dir / "replica_oracle.csv"
        _write_csv(oracle_path, {**header, "samples": args.oracle_samples},
                   ["x", "Z", "stderr"],
                   zip(range(args.length), est.mean, est.stderr))
        files.append(oracle_path)
    write_manifest(out_dir, {"subcommand": "replica", **header}, files, started)
    return 0


# ---------------------------------------------------------------- floquet


def run_floquet(args) -> int:
    out_dir = _out_dir(args)
    started = time.time()
    if args.model == "custom":
        params = floquet.FloquetParams(args.J, args.Delta, args.delta, args.g)
    else:
        params = floquet.FloquetParams.from_model(args.model)
    if args.length > floquet.DENSE_MAX_SITES:
        raise CapacityError(
            f"dense floquet backend limited to L <= {floquet.DENSE_MAX_SITES}"
        )
    mu = floquet.mu_for_density(args.density) if args.density is not None else args.mu
    if args.gamma_z > 0:
        result = floquet.noisy_correlator(
            args.length, params, args.t_max, args.gamma_z,
            method="superoperator" if args.length <= 7 else "trajectory",
            num_circuits=args.samples, seed=args.seed,
        )
    else:
        result = floquet.charged_correlator(
            args.length, params, args.t_max, mu=mu, method=args.method,
            samples=args.samples, seed=args.seed,
        )
    header = {
        "module": "floquet", "model": params.model, "L": args.length,
        "mu": mu, "gamma_z": args.gamma_z, "method": result.method,
    }
    rows = []
    for ti, t in enumerate(result.times):
        for x in range(args.length):
            v = result.values[ti, x]
            rows.append((t, x, v.real, v.imag))
    files = []
    c_path = out_dir / "floquet_corr.csv"
    _write_csv(c_path, header, ["t", "x", "re", "im"], rows)
    files.append(c_path)
    sumsq = result.sumsq
    s_path = out_dir / "floquet_sumsq.csv"
    err = (
        np.zeros_like(sumsq)
        if result.stderr is None
        else 2.0 * (np.abs(result.values) * result.stderr).sum(axis=1)
    )
    _write_csv(s_path, header, ["t", "sumsq", "stderr"],
               zip(result.times, sumsq, err))
    files.append(s_path)
    write_manifest(out_dir, {"subcommand": "floquet", **header}, files, started)
    return 0


# ---------------------------------------------------------------- analyze


def run_analyze(args) -> int:
    out_dir = _out_dir(args)
    started = time.time()
    if args.op != "msd":
        series = read_timeseries_csv(Path(args.input))
    files = []
    if args.op == "smooth":
        result = analysis.gaussian_smooth(series, args.width)
        path = out_dir / "analyze_smooth.csv"
        _write_csv(path, dict(result.metadata), ["t", "value"],
                   zip(result.times, result.values))
        files.append(path)
    elif args.op == "alpha":
        window = tuple(args.window) if args.window else None
        result = analysis.stretch_exponent(series, window=window)
        path = out_dir / "analyze_alpha.csv"
        _write_csv(path, dict(result.metadata), ["t", "alpha"],
                   zip(result.times, result.values))
        files.append(path)
    elif args.op == "fit":
        window = tuple(args.window) if args.window else (series.times[1], series.times[-1])
        report = analysis.fit_stretched(series, window)
        path = out_dir / "analyze_fit.json"
        path.write_text(json.dumps({
            "alpha": report.alpha, "amplitude": report.amplitude,
            "alpha_stderr": report.alpha_stderr, "residual": report.residual,
            "window": list(report.window),
        }, indent=2) + "\n")
        files.append(path)
    elif args.op == "kubo":
        d, report = analysis.kubo_diffusivity(series, args.susceptibility)
        path = out_dir / "analyze_kubo.json"
        path.write_text(json.dumps({
            "D": d, "window": list(report.window),
            "noise_floor": report.extra.get("noise_floor"),
        }, indent=2) + "\n")
        files.append(path)
    elif args.op == "msd":
        profiles = read_profile_csv(Path(args.input))
        result = analysis.msd(profiles)
        path = out_dir / "analyze_msd.csv"
        _write_csv(path, dict(result.metadata), ["t", "msd"],
                   zip(result.times, result.values))
        files.append(path)
    write_manifest(out_dir, {"subcommand": "analyze", "op": args.op,
                             "input": str(args.input)}, files, started)
    return 0


# ---------------------------------------------------------------- figure


def run_figure(args) -> int:
    out_dir = _out_dir(args)
    name = args.name.upper() if args.name.lower().startswith("s") else args.name
    recipes = {
        "1": _figure_1, "2": _figure_2, "S1": _figure_s1, "S2": _figure_s2,
        "S3": _figure_s3, "S4": _figure_s4, "S5": _figure_s5,
    }
    if name not in recipes:
        raise ValueError(f"unknown figure {args.name!r}; valid: {sorted(recipes)}")
    started = time.time()
    files = recipes[name](out_dir, quick=args.quick, seed=args.seed)
    write_manifest(out_dir, {"subcommand": "figure", "name": name,
                             "quick": args.quick, "seed": args.seed}, files, started)
    return 0


def _figure_1(out_dir: Path, quick: bool, seed: int) -> list[Path]:
    """Clean vs dephased decay of the summed squared correlator (random gates)."""
    L, t_max = (6, 6) if quick else (8, 14)
    profile_rows, zsum_rows = [], []
    state = replica.charged_insertion_state(L, 0)
    for t in range(t_max + 1):
        prof = np.array([replica._contract_charged_bra(state, s) for s in range(L)]) / 4.0**L
        zsum_rows.append((t, prof.sum()))
        for x, z in enumerate(prof):
            profile_rows.append((t, x, z))
        if t < t_max:
            state = replica.apply_brickwork(state, 1)
    clean = out_dir / "fig1_zsum.csv"
    _write_csv(clean, {"module": "replica", "L": L, "gamma_z": 0.0},
               ["t", "Zsum"], zsum_rows)
    noisy_L, noisy_t = (4, 6) if quick else (6, 16)
    zs = replica.noisy_zsum(noisy_L, noisy_t, gamma_z=0.4)
    noisy = out_dir / "fig1_zsum_noisy.csv"
    _write_csv(noisy, {"module": "replica", "L": noisy_L, "gamma_z": 0.4},
               ["t", "Zsum"], list(enumerate(zs)))
    return [clean, noisy]


def _figure_2(out_dir: Path, quick: bool, seed: int) -> list[Path]:
    """Low-density rate collapse plus the domain-wall scaling collapse."""
    files = []
    L, periods = (8, 6) if quick else (12, 25)
    densities = [0.05, 0.1] if quick else [0.02, 0.05, 0.1]
    params = floquet.FloquetParams.from_model("A")
    rows = []
    for n in densities:
        t_end = min(periods, max(4, int(0.5 / n)))
        res = floquet.charged_correlator(L, params, t_end, mu=floquet.mu_for_density(n))
        for t, s in zip(res.times, res.sumsq):
            rows.append((n, t, s))
    lowd = out_dir / "fig2_lowdensity.csv"
    _write_csv(lowd, {"module": "floquet", "model": "A", "L": L},
               ["n", "t", "sumsq"], rows)
    files.append(lowd)
    hl, ht = (2000, 2000) if quick else (20000, 20000)
    p = hydro.HydroParams(2.0, 1.0, hl, "open")
    wall = hl // 4
    f = hydro.init_domain_wall(p, 1.0, 0.0, wall)
    every = max(1, ht // 10)
    snaps = list(hydro.evolve(f, p, ht, list(range(every, ht + 1, every))))
    result = hydro.scaling_profile(snaps, wall, (3.0, 20.0))
    rows = []
    for prof in result.profiles:
        for eta, nval in zip(prof.eta, prof.density):
            if nval > 0:
                rows.append((prof.time, eta, nval))
    hyd = out_dir / "fig2_hydro_collapse.csv"
    _write_csv(hyd, {"module": "hydro", "tail_slope": result.tail_slope},
               ["t", "eta", "n"], rows)
    files.append(hyd)
    return files


def _figure_s1(out_dir: Path, quick: bool, seed: int) -> list[Path]:
    """Exponential decay under dephasing at several noise strengths."""
    L, t_max = (4, 6) if quick else (6, 16)
    files = []
    rows = []
    for gz in (0.2, 0.3, 0.4):
        zs = replica.noisy_zsum(L, t_max, gamma_z=gz)
        for t, z in enumerate(zs):
            rows.append((gz, t, z))
    path = out_dir / "figS1_noisy_zsum.csv"
    _write_csv(path, {"module": "replica", "L": L}, ["gamma_z", "t", "Zsum"], rows)
    files.append(path)
    return files


def _figure_s2(out_dir: Path, quick: bool, seed: int) -> list[Path]:
    L, t_max = (2000, 2000) if quick else (40000, 50000)
    p = hydro.HydroParams(2.0, 1.0, L, "open")
    wall = max(100, L * 3 // 40)
    f = hydro.init_domain_wall(p, 1.0, 0.0, wall)
    every = max(1, t_max // 50)
    snaps = list(hydro.evolve(f, p, t_max, list(range(every, t_max + 1, every))))
    result = hydro.scaling_profile(snaps, wall, (3.0, 20.0))
    rows = []
    for prof in result.profiles:
        for eta, nval in zip(prof.eta, prof.density):
            if nval > 0:
                rows.append((prof.time, eta, nval))
    path = out_dir / "figS2_collapse.csv"
    _write_csv(path, {"module": "hydro", "tail_slope": result.tail_slope},
               ["t", "eta", "n"], rows)
    track_rows = []
    for c in (2.0, 4.0, 8.0):
        tt, vv = hydro.density_at_scaled_position(snaps, wall, c)
        for t, v in zip(tt, vv):
            track_rows.append((c, t, v))
    track = out_dir / "figS2_tracks.csv"
    _write_csv(track, {"module": "hydro", "exponent": 2.0 / 3.0},
               ["c", "t", "n"], track_rows)
    return [path, track]


def _figure_s3(out_dir: Path, quick: bool, seed: int) -> list[Path]:
    densities = [0.1, 0.2] if quick else [0.05, 0.1, 0.2, 0.4]
    L = 512 if quick else 2048
    n_traj = 8 if quick else 48
    files = []
    kubo_rows = []
    corr_rows = []
    for n in densities:
        cfg = gasmagnon.MagnonConfig(length=L, density=n, t_max=0, samples=1, seed=seed)
        t_run = int((100 if quick else 500) / n)
        series = gasmagnon.current_autocorrelation(
            cfg, t_run, n_trajectories=n_traj, max_lag=int((10 if quick else 25) / n)
        )
        d, report = analysis.kubo_diffusivity(series, susceptibility=n)
        kubo_rows.append((n, 1.0 / n, d))
        lag = max(2, int(round((8 if quick else 40) / n)))
        corr = gasmagnon.density_correlator(cfg, [lag], n_trajectories=n_traj)
        vals = corr[lag]
        for x in range(L):
            sx = ((x + L // 2) % L) - L // 2
            corr_rows.append((n, lag, sx, vals[x]))
    kubo = out_dir / "figS3_kubo.csv"
    _write_csv(kubo, {"module": "gasmagnon"}, ["n", "inv_n", "D"], kubo_rows)
    files.append(kubo)
    corr = out_dir / "figS3_structure.csv"
    _write_csv(corr, {"module": "gasmagnon"}, ["n", "t", "x", "corr"], corr_rows)
    files.append(corr)
    return files


def _figure_s4(out_dir: Path, quick: bool, seed: int) -> list[Path]:
    cfg = gasmagnon.MagnonConfig(
        length=64 if quick else 192,
        density=0.7,
        gamma=6.0,
        t_max=30 if quick else 60,
        samples=2000 if quick else 100_000,
        seed=seed,
    )
    series = gasmagnon.survival_probability(cfg, n_workers=2)
    surv = out_dir / "figS4_survival.csv"
    _write_csv(surv, dict(series.metadata), ["t", "P", "stderr"],
               zip(series.times, series.values, series.stderr))
    alpha = analysis.stretch_exponent(
        series, window=(max(2, cfg.t_max // 100), cfg.t_max)
    )
    ap = out_dir / "figS4_alpha.csv"
    _write_csv(ap, dict(alpha.metadata), ["t", "alpha"],
               zip(alpha.times, alpha.values))
    return [surv, ap]


def _figure_s5(out_dir: Path, quick: bool, seed: int) -> list[Path]:
    """Half-filling decay of the summed squared correlator for models A, B, C."""
    L, t_max = (6, 8) if quick else (10, 30)
    rows = []
    for tag in ("A", "B", "C"):
        params = floquet.FloquetParams.from_model(tag)
        res = floquet.charged_correlator(L, params, t_max, mu=0.0)
        for t, s in zip(res.times, res.sumsq):
            rows.append((tag, t, s))
    path = out_dir / "figS5_infT.csv"
    _write_csv(path, {"module": "floquet", "L": L}, ["model", "t", "sumsq"], rows)
    return [path]


# ---------------------------------------------------------------- validate


def run_validate(args) -> int:
    diagnostics = []
    if args.subject == "replica":
        entries = 6.0**args.length
        mem = entries * 8 / 1e9
        if args.length > replica.DENSE_MAX_SITES:
            diagnostics.append(
                f"capacity: dense replica at L={args.length} needs 6^{args.length} "
                f"= {entries:.2e} coefficients (~{mem:.1f} GB); limit is "
                f"L={replica.DENSE_MAX_SITES}"
            )
        else:
            diagnostics.append(f"ok: dense replica at L={args.length} ~ {mem*1e3:.1f} MB")
    elif args.subject == "floquet":
        entries = 4.0**args.length
        mem = entries * 16 / 1e9
        if args.length > floquet.DENSE_MAX_SITES:
            diagnostics.append(
                f"capacity: dense floquet at L={args.length} needs {entries:.2e} "
                f"amplitudes (~{mem:.1f} GB); limit is L={floquet.DENSE_MAX_SITES}"
            )
        else:
            diagnostics.append(f"ok: dense floquet at L={args.length} ~ {mem*1e3:.1f} MB")
    elif args.subject == "model":
        if args.tag not in floquet.MODEL_TABLE and args.tag != "custom":
            print(f"error: unknown model tag {args.tag!r}; valid tags: A|B|C|custom")
            return 0
        diagnostics.append(f"ok: model tag {args.tag}")
    for line in diagnostics:
        print(line)
    if not diagnostics:
        print("ok")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voidlab",
        description="Numerical laboratory for void-limited relaxation",
    )
    parser.add_argument("--config", type=str, default=None,
                        help="JSON file with default argument values")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("hydro", help="two-species lattice gas evolution")
    p.add_argument("--length", type=int, default=20000)
    p.add_argument("--lambda", dest="lam", type=float, default=2.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--n-hi", type=float, default=1.0)
    p.add_argument("--n-lo", type=float, default=0.0)
    p.add_argument("--wall", type=int, default=None)
    p.add_argument("--t-max", type=int, default=10000)
    p.add_argument("--sample-every", type=int, default=1000)
    p.add_argument("--boundary", choices=["periodic", "open"], default="periodic")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_hydro)

    p = sub.add_parser("magnon", help="magnon survival probability")
    p.add_argument("--length", type=int, default=320)
    p.add_argument("--density", type=float, default=0.15)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--t-max", type=int, default=300)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batch-size", type=int, default=1024)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_magnon)

    p = sub.add_parser("gas-corr", help="gas density-density correlator")
    p.add_argument("--length", type=int, default=1024)
    p.add_argument("--density", type=float, default=0.1)
    p.add_argument("--t-max", type=int, default=200)
    p.add_argument("--lags", type=int, nargs="+", default=[50, 100])
    p.add_argument("--trajectories", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_gas_corr)

    p = sub.add_parser("bound", help="damped-oscillator survival bound")
    p.add_argument("--t", type=float, default=100.0)
    p.add_argument("--ell", type=float, default=40.0)
    p.add_argument("--m-star", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--a1", type=float, default=1.0)
    p.add_argument("--a2", type=float, default=1.0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_bound)

    p = sub.add_parser("replica", help="two-replica transfer-matrix evolution")
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--t-max", type=int, default=6)
    p.add_argument("--gamma-z", type=float, default=0.0)
    p.add_argument("--backend", choices=["dense", "sparse"], default="dense")
    p.add_argument("--boundary", choices=["open", "periodic"], default="open")
    p.add_argument("--oracle-samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_replica)

    p = sub.add_parser("floquet", help="Floquet correlators")
    p.add_argument("--model", choices=["A", "B", "C", "custom"], default="A")
    p.add_argument("--J", type=float, default=0.393)
    p.add_argument("--Delta", type=float, default=0.177)
    p.add_argument("--delta", type=float, default=0.333)
    p.add_argument("--g", type=float, default=0.3)
    p.add_argument("--length", type=int, default=10)
    p.add_argument("--t-max", type=int, default=20)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--density", type=float, default=None,
                   help="overrides --mu via the density-potential map")
    p.add_argument("--method", choices=["dense", "typicality"], default="dense")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--gamma-z", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_floquet)

    p = sub.add_parser("analyze", help="post-process a t,value[,stderr] CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--op", choices=["smooth", "alpha", "fit", "kubo", "msd"],
                   required=True)
    p.add_argument("--width", type=float, default=2.5)
    p.add_argument("--window", type=float, nargs=2, default=None)
    p.add_argument("--susceptibility", type=float, default=1.0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_analyze)

    p = sub.add_parser("figure", help="one-command figure dataset recipes")
    p.add_argument("--name", required=True, help="1|2|S1|S2|S3|S4|S5")
    p.add_argument("--quick", action="store_true",
                   help="small desk-test variant of the recipe")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=run_figure)

    p = sub.add_parser("validate", help="schema and capacity checks, no execution")
    p.add_argument("subject", choices=["replica", "floquet", "model"])
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--tag", type=str, default="A")
    p.set_defaults(func=run_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    config_path = None
    if "--config" in argv:
        idx = argv.index("--config")
        config_path = argv[idx + 1]
    args = parser.parse_args(argv)
    if config_path:
        defaults = json.loads(Path(config_path).read_text())
        defaults.pop("version", None)
        explicit = {a.lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
        for key, value in defaults.items():
            attr = key.replace("-", "_")
            if hasattr(args, attr) and attr not in explicit:
                setattr(args, attr, value)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return CAPACITY_ERROR
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

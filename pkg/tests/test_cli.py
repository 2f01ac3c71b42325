import json
import numpy as np
import pytest

from voidlab import cli


def run(argv):
    return cli.main(argv)


class TestRunHydro:
    def test_t_zero_snapshot_and_manifest(self, tmp_path):
        out = tmp_path / "h"
        code = run(["hydro", "--length", "32", "--t-max", "0", "--out", str(out)])
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["format_version"] == 1
        assert "hydro_profiles.csv" in manifest["files"]
        lines = (out / "hydro_profiles.csv").read_text().splitlines()
        data = [l for l in lines if not l.startswith("#")]
        assert data[0] == "t,x,n_left,n_right"
        assert len(data) == 1 + 32

    def test_rerun_checksums_identical(self, tmp_path):
        args = ["hydro", "--length", "64", "--t-max", "40", "--sample-every", "20"]
        out1, out2 = tmp_path / "a", tmp_path / "b"
        run(args + ["--out", str(out1)])
        run(args + ["--out", str(out2)])
        m1 = json.loads((out1 / "manifest.json").read_text())["files"]
        m2 = json.loads((out2 / "manifest.json").read_text())["files"]
        assert m1 == m2

    def test_collapse_csv_columns(self, tmp_path):
        out = tmp_path / "h"
        run(["hydro", "--length", "128", "--t-max", "60", "--sample-every", "30",
             "--out", str(out)])
        lines = (out / "hydro_collapse.csv").read_text().splitlines()
        header = [l for l in lines if not l.startswith("#")][0]
        assert header == "t,eta,n"


class TestRunMagnonAndAnalyze:
    def test_magnon_csv_then_alpha(self, tmp_path):
        out = tmp_path / "m"
        code = run(["magnon", "--length", "32", "--density", "0.4",
                    "--gamma", "1.5", "--t-max", "30", "--samples", "200",
                    "--out", str(out)])
        assert code == 0
        series = cli.read_timeseries_csv(out / "magnon_survival.csv")
        assert series.values[0] == 1.0
        assert series.metadata["module"] == "gasmagnon"
        out2 = tmp_path / "a"
        code = run(["analyze", "--in", str(out / "magnon_survival.csv"),
                    "--op", "alpha", "--window", "2", "30", "--out", str(out2)])
        assert code == 0
        alpha = cli.read_timeseries_csv(out2 / "analyze_alpha.csv")
        assert np.all(np.isfinite(alpha.values))

    def test_analyze_fit_json(self, tmp_path):
        t = np.geomspace(1, 100, 40)
        p = np.exp(-0.2 * np.sqrt(t))
        csv = tmp_path / "s.csv"
        rows = "\n".join(f"{float(a)!r},{float(b)!r}" for a, b in zip(t, p))
        csv.write_text("# module=test\nt,P\n" + rows + "\n")
        out = tmp_path / "fit"
        code = run(["analyze", "--in", str(csv), "--op", "fit",
                    "--window", "1", "100", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "analyze_fit.json").read_text())
        assert abs(report["alpha"] - 0.5) < 1e-6

    def test_usage_error_on_missing_file(self, tmp_path):
        code = run(["analyze", "--in", str(tmp_path / "nope.csv"), "--op", "fit",
                    "--out", str(tmp_path)])
        assert code == cli.USAGE_ERROR


class TestRunBoundReplicaFloquet:
    def test_bound_outputs(self, tmp_path):
        out = tmp_path / "b"
        code = run(["bound", "--t", "64", "--ell", "20", "--out", str(out)])
        assert code == 0
        payload = json.loads((out / "bound.json").read_text())
        assert payload["optimal_void_exponent"] == "2/3"
        assert len(payload["quasispectrum"]) == 6
        lines = (out / "bound_ellstar.csv").read_text().splitlines()
        assert [l for l in lines if not l.startswith("#")][0] == "t,ell_star,log_bound"

    def test_replica_capacity_exit_code(self, tmp_path):
        code = run(["replica", "--length", "12", "--t-max", "1",
                    "--out", str(tmp_path)])
        assert code == cli.CAPACITY_ERROR

    def test_replica_outputs_with_oracle(self, tmp_path):
        out = tmp_path / "r"
        code = run(["replica", "--length", "4", "--t-max", "2",
                    "--oracle-samples", "50", "--out", str(out)])
        assert code == 0
        for name in ("replica_z.csv", "replica_zsum.csv", "replica_oracle.csv"):
            assert (out / name).exists()

    def test_floquet_csv(self, tmp_path):
        out = tmp_path / "f"
        code = run(["floquet", "--model", "A", "--length", "6", "--t-max", "3",
                    "--out", str(out)])
        assert code == 0
        lines = (out / "floquet_corr.csv").read_text().splitlines()
        assert [l for l in lines if not l.startswith("#")][0] == "t,x,re,im"
        sums = (out / "floquet_sumsq.csv").read_text().splitlines()
        assert [l for l in sums if not l.startswith("#")][0] == "t,sumsq,stderr"

    def test_floquet_capacity(self, tmp_path):
        code = run(["floquet", "--length", "14", "--t-max", "1", "--out", str(tmp_path)])
        assert code == cli.CAPACITY_ERROR

    def test_replica_sparse_backend_matches_dense(self, tmp_path):
        out_d, out_s = tmp_path / "d", tmp_path / "s"
        run(["replica", "--length", "4", "--t-max", "2", "--out", str(out_d)])
        run(["replica", "--length", "4", "--t-max", "2", "--backend", "sparse",
             "--out", str(out_s)])
        def values(path):
            rows = [l for l in path.read_text().splitlines()
                    if l and not l.startswith("#")][1:]
            return np.array([[float(v) for v in r.split(",")] for r in rows])

        np.testing.assert_allclose(
            values(out_d / "replica_z.csv"),
            values(out_s / "replica_z.csv"),
            rtol=1e-12, atol=1e-18,
        )

    def test_analyze_msd_on_profile_csv(self, tmp_path):
        out_f = tmp_path / "f"
        run(["floquet", "--model", "A", "--length", "4", "--t-max", "3",
             "--out", str(out_f)])
        out_m = tmp_path / "m"
        code = run(["analyze", "--in", str(out_f / "floquet_corr.csv"),
                    "--op", "msd", "--out", str(out_m)])
        assert code == 0
        series = cli.read_timeseries_csv(out_m / "analyze_msd.csv")
        assert series.values[0] == 0.0
        assert series.values[1] > 0.0


class TestValidate:
    def test_replica_capacity_warning(self, capsys):
        run(["validate", "replica", "--length", "20"])
        out = capsys.readouterr().out
        assert "6^20" in out and "capacity" in out

    def test_unknown_model(self, capsys):
        run(["validate", "model", "--tag", "Z"])
        out = capsys.readouterr().out
        assert "A|B|C|custom" in out

    def test_ok_cases(self, capsys):
        run(["validate", "replica", "--length", "6"])
        run(["validate", "floquet", "--length", "8"])
        run(["validate", "model", "--tag", "B"])
        out = capsys.readouterr().out
        assert out.count("ok") == 3


class TestConfigFile:
    def test_config_defaults_and_flag_precedence(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"version": 1, "length": 16, "t-max": 0}))
        out = tmp_path / "h"
        code = run(["--config", str(cfg), "hydro", "--out", str(out)])
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["length"] == 16
        out2 = tmp_path / "h2"
        code = run(["--config", str(cfg), "hydro", "--length", "8", "--out", str(out2)])
        manifest2 = json.loads((out2 / "manifest.json").read_text())
        assert manifest2["config"]["length"] == 8


class TestFigure:
    @pytest.mark.parametrize("name", ["1", "2", "S1", "S2", "S3", "S4", "S5"])
    def test_quick_recipes(self, tmp_path, name):
        out = tmp_path / f"fig{name}"
        code = run(["figure", "--name", name, "--quick", "--out", str(out)])
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["name"] == name.upper() if name.startswith("s") else True
        assert manifest["files"]

    def test_unknown_figure(self, tmp_path):
        code = run(["figure", "--name", "S9", "--out", str(tmp_path)])
        assert code == cli.USAGE_ERROR

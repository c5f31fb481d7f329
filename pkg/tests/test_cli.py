import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from lagprop.cli import main
from lagprop.specfun import hermite_h, laguerre_l


def run_cli(args, env_extra=None):
    env = dict(os.environ)
    env.pop("LAGPROP_THREADS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "lagprop.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def solve_config(**overrides):
    cfg = {
        "dim": 1,
        "rho": {"re": 1.0, "im": 0.0},
        "c": {"re": 0.0, "im": 0.0},
        "r": 1.0,
        "T": 4.0,
        "modes": [8],
        "initial": {"type": "coeffs", "data": [{"n": [1], "re": 1.0, "im": 0.0}]},
        "output_times": [0.0, math.pi],
    }
    cfg.update(overrides)
    return cfg


class TestVerifyCommand:
    def test_single_suite_passes(self, tmp_path):
        out = tmp_path / "rep.json"
        assert main(["verify", "hille_hardy", "--tol", "1e-8", "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        assert rep["passed"] and all(c["pass"] for c in rep["checks"])

    def test_unknown_suite_exits_2(self):
        assert main(["verify", "bogus"]) == 2

    def test_unattainable_tolerance_exits_1(self, tmp_path):
        out = tmp_path / "rep.json"
        assert main(["verify", "orthonormality", "--tol", "1e-30", "--out", str(out)]) == 1
        rep = json.loads(out.read_text())
        assert not rep["passed"]

    @pytest.mark.parametrize(
        "suite", ["orthonormality", "bridge", "posedness"]
    )
    def test_named_suites_pass(self, tmp_path, suite):
        out = tmp_path / f"{suite}.json"
        assert main(["verify", suite, "--out", str(out)]) == 0

    def test_bad_thread_env_exits_2(self, tmp_path):
        res = run_cli(["verify", "orthonormality"], env_extra={"LAGPROP_THREADS": "many"})
        assert res.returncode == 2
        res = run_cli(["verify", "orthonormality"], env_extra={"LAGPROP_THREADS": "2"})
        assert res.returncode == 0


class TestSolveCommand:
    def test_phase_row_at_pi(self, tmp_path):
        cfg = write_json(tmp_path / "cfg.json", solve_config())
        out = tmp_path / "traj.csv"
        assert main(["solve", "--config", cfg, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "time,flat_index,n_1,re,im,overflow"
        # row for mode 1 at t=pi: e^{-i pi} = -1
        row = [ln for ln in lines[1:] if ln.startswith(repr(math.pi)) and ",1," in ln][0]
        fields = row.split(",")
        assert float(fields[3]) == pytest.approx(-1.0, abs=1e-12)
        assert float(fields[4]) == pytest.approx(0.0, abs=1e-12)
        summary = json.loads((tmp_path / "traj.csv.summary.json").read_text())
        assert summary["l2_norms"] == pytest.approx([1.0, 1.0], abs=1e-12)

    def test_decimal_text_numbers_accepted(self, tmp_path):
        cfg = solve_config(T="4.0", r="1.0", output_times=["0.5"])
        path = write_json(tmp_path / "cfg.json", cfg)
        out = tmp_path / "traj.csv"
        assert main(["solve", "--config", path, "--out", str(out)]) == 0

    def test_empty_output_times_header_only(self, tmp_path):
        cfg = write_json(tmp_path / "cfg.json", solve_config(output_times=[]))
        out = tmp_path / "traj.csv"
        assert main(["solve", "--config", cfg, "--out", str(out)]) == 0
        assert out.read_text() == "time,flat_index,n_1,re,im,overflow\n"

    def test_unknown_key_rejected(self, tmp_path):
        cfg = write_json(tmp_path / "cfg.json", solve_config(extra_knob=1))
        assert main(["solve", "--config", cfg, "--out", str(tmp_path / "t.csv")]) == 2

    def test_mode_outside_truncation_rejected(self, tmp_path):
        bad = solve_config(initial={"type": "coeffs", "data": [{"n": [99], "re": 1.0}]})
        cfg = write_json(tmp_path / "cfg.json", bad)
        assert main(["solve", "--config", cfg, "--out", str(tmp_path / "t.csv")]) == 2

    def test_strict_overflow_exits_3(self, tmp_path):
        cfg = solve_config(
            rho={"re": 0.0, "im": 2.0},
            T=1.0,
            modes=[600],
            initial={"type": "coeffs", "data": [{"n": [599], "re": 1.0}]},
            output_times=[1.0],
        )
        path = write_json(tmp_path / "cfg.json", cfg)
        out = tmp_path / "traj.csv"
        assert main(["solve", "--config", path, "--out", str(out), "--strict"]) == 3
        assert main(["solve", "--config", path, "--out", str(out)]) == 0

    def test_source_column_values(self, tmp_path):
        # mode 3 driven by F=1 from zero data: a(t) = (e^{-3it} - 1)/3
        cfg = solve_config(
            initial={"type": "coeffs", "data": []},
            source={"type": "coeffs_poly", "per_mode": [{"n": [3], "poly": [1.0]}]},
            output_times=[2.0],
        )
        path = write_json(tmp_path / "cfg.json", cfg)
        out = tmp_path / "traj.csv"
        assert main(["solve", "--config", path, "--out", str(out)]) == 0
        rows = out.read_text().splitlines()[1:]
        vals = {int(r.split(",")[1]): complex(float(r.split(",")[3]), float(r.split(",")[4])) for r in rows}
        expected = (np.exp(-6j) - 1) / 3
        assert vals[3] == pytest.approx(expected, abs=1e-12)
        assert vals[2] == 0


class TestClassifyCommand:
    def test_isomorphism_line(self, tmp_path, capsys):
        cfg = write_json(
            tmp_path / "c.json",
            {"z": {"re": 0.0, "im": 1.0}, "r": 1.0, "c": {"re": 0.0}, "alpha": 3.0, "kind": "roumieu"},
        )
        assert main(["classify", "--config", cfg]) == 0
        assert capsys.readouterr().out == "isomorphism\n"

    def test_boundary_flagged(self, tmp_path, capsys):
        cfg = write_json(
            tmp_path / "c.json",
            {"z": {"re": 1.0}, "r": 1.0, "alpha": 1.0, "kind": "roumieu"},
        )
        assert main(["classify", "--config", cfg]) == 0
        assert capsys.readouterr().out == "discontinuous boundary\n"


class TestKernelCommand:
    def test_matches_series_oracle(self, tmp_path):
        cfg = write_json(tmp_path / "k.json", {"w": {"re": 0.3}, "x": [1.0], "y": [1.0]})
        out = tmp_path / "k.csv"
        assert main(["kernel", "--config", cfg, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x,y,reK,imK"
        _, _, re_k, im_k = (float(v) for v in lines[1].split(","))
        vals = laguerre_l(300, 1.0)
        series = float(np.sum(0.3 ** np.arange(301) * vals**2))
        assert re_k == pytest.approx(series, abs=1e-10)
        assert im_k == pytest.approx(0.0, abs=1e-15)

    def test_rejects_degenerate_w(self, tmp_path):
        cfg = write_json(tmp_path / "k.json", {"w": {"re": 1.0}, "x": [1.0], "y": [1.0]})
        assert main(["kernel", "--config", cfg, "--out", str(tmp_path / "k.csv")]) == 2


class TestTransformCommand:
    def test_frac_fourier_period_four(self, tmp_path):
        points = [0.0, 0.5, 1.3, 2.2]
        cfg = write_json(
            tmp_path / "t.json",
            {
                "which": "frac_fourier",
                "params": {"rho": 4.0},
                "modes": [6],
                "input": {"type": "coeffs", "data": [{"n": [2], "re": 1.0}]},
                "points": points,
            },
        )
        out = tmp_path / "t.csv"
        assert main(["transform", "--config", cfg, "--out", str(out)]) == 0
        rows = out.read_text().splitlines()[1:]
        for p, row in zip(points, rows):
            re_v, im_v = float(row.split(",")[1]), float(row.split(",")[2])
            assert complex(re_v, im_v) == pytest.approx(hermite_h(2, p)[2], abs=1e-9)

    def test_hankel_clifford_sign(self, tmp_path):
        cfg = write_json(
            tmp_path / "t.json",
            {
                "which": "hankel_clifford",
                "params": {"phases": [math.pi]},
                "modes": [4],
                "input": {"type": "coeffs", "data": [{"n": [1], "re": 2.0}]},
                "points": [1.0],
            },
        )
        out = tmp_path / "t.csv"
        assert main(["transform", "--config", cfg, "--out", str(out)]) == 0
        re_v = float(out.read_text().splitlines()[1].split(",")[1])
        assert re_v == pytest.approx(-2.0 * laguerre_l(1, 1.0)[1], abs=1e-12)

    def test_frac_hankel_points_squared(self, tmp_path):
        cfg = write_json(
            tmp_path / "t.json",
            {
                "which": "frac_hankel",
                "params": {"t": 2 * math.pi},
                "modes": [3],
                "input": {"type": "coeffs", "data": [{"n": [2], "re": 1.0}]},
                "points": [0.7, 1.4],
            },
        )
        out = tmp_path / "t.csv"
        assert main(["transform", "--config", cfg, "--out", str(out)]) == 0
        rows = out.read_text().splitlines()[1:]
        for p, row in zip([0.7, 1.4], rows):
            got = complex(float(row.split(",")[1]), float(row.split(",")[2]))
            assert got == pytest.approx(laguerre_l(2, p**2)[2], abs=1e-10)


class TestDeterminism:
    def test_verify_all_byte_identical(self, tmp_path):
        outs = []
        for k in range(2):
            out = tmp_path / f"rep{k}.json"
            res = run_cli(["verify", "all", "--out", str(out)])
            assert res.returncode == 0
            outs.append(out.read_bytes())
            assert res.stdout == "verify all: pass (22 checks)\n"
        assert outs[0] == outs[1]

    def test_solve_byte_identical(self, tmp_path):
        cfg = write_json(
            tmp_path / "cfg.json",
            solve_config(
                rho={"re": 0.3, "im": 0.1},
                initial={
                    "type": "coeffs",
                    "data": [{"n": [k], "re": 1.0 / (k + 1), "im": 0.25 * k} for k in range(8)],
                },
                source={"type": "coeffs_poly", "per_mode": [{"n": [2], "poly": [0.5, 0.1]}]},
                output_times=[0.0, 1.1, 2.7],
            ),
        )
        blobs = []
        for k in range(2):
            out = tmp_path / f"traj{k}.csv"
            res = run_cli(["solve", "--config", cfg, "--out", str(out)])
            assert res.returncode == 0
            blobs.append(out.read_bytes() + (tmp_path / f"traj{k}.csv.summary.json").read_bytes())
        assert blobs[0] == blobs[1]

"""CLI workflows: configs, outputs, exit codes, determinism."""

import json

import numpy as np

from ricciwarp.cli import main
from ricciwarp.shooting import SolitonProfile


def write_config(path, extra=None, **blocks):
    cfg = {"schema_version": 1, "out_dir": str(path.parent / "out")}
    cfg.update(blocks)
    if extra:
        cfg.update(extra)
    path.write_text(json.dumps(cfg))
    return cfg


def cylinder_solve_block(m=2, lam=0.5, t_max=6.0):
    return {"k": 0, "m": m, "lambda": lam,
            "b0": float(np.sqrt((m - 1) / lam)), "t_max": t_max}


class TestSolve:
    def test_cylinder_constant_b_column(self, tmp_path):
        cfg_path = tmp_path / "c.json"
        write_config(cfg_path, solve=cylinder_solve_block())
        assert main(["solve", "--config", str(cfg_path)]) == 0
        out = tmp_path / "out"
        prof = SolitonProfile.from_csv(str(out / "profile.csv"))
        assert np.abs(prof.b - prof.params.b0).max() < 1e-6
        summary = json.loads((out / "solve_summary.json").read_text())
        assert summary["status"] == "completed"
        assert summary["classification"] == "shrinking"
        assert "config_hash" in summary and "tool_version" in summary

    def test_flat_config_zero_residual_columns(self, tmp_path):
        cfg_path = tmp_path / "f.json"
        write_config(cfg_path,
                     solve={"k": 1, "m": 1, "lambda": 0.0, "b0": 1.0,
                            "phi2": 0.0, "t_max": 5.0})
        assert main(["solve", "--config", str(cfg_path)]) == 0
        prof = SolitonProfile.from_csv(str(tmp_path / "out" / "profile.csv"))
        assert np.abs(prof.res_tt).max() < 1e-12
        assert np.abs(prof.res_sk).max() < 1e-12
        assert np.abs(prof.res_sm).max() < 1e-12

    def test_invalid_b0_exits_2(self, tmp_path, capsys):
        cfg_path = tmp_path / "bad.json"
        write_config(cfg_path, solve={"k": 0, "m": 2, "lambda": 0.5, "b0": -1.0})
        assert main(["solve", "--config", str(cfg_path)]) == 2

    def test_unknown_key_rejected(self, tmp_path):
        cfg_path = tmp_path / "u.json"
        write_config(cfg_path, solve=dict(cylinder_solve_block(), typo=1))
        assert main(["solve", "--config", str(cfg_path)]) == 2

    def test_missing_config_file_exits_4(self, tmp_path):
        assert main(["solve", "--config", str(tmp_path / "nope.json")]) == 4

    def test_wrong_schema_version_exits_2(self, tmp_path):
        cfg_path = tmp_path / "v.json"
        cfg_path.write_text(json.dumps({"schema_version": 99, "solve": {}}))
        assert main(["solve", "--config", str(cfg_path)]) == 2

    def test_out_flag_overrides(self, tmp_path):
        cfg_path = tmp_path / "c.json"
        write_config(cfg_path, solve=cylinder_solve_block(t_max=2.0))
        alt = tmp_path / "elsewhere"
        assert main(["solve", "--config", str(cfg_path), "--out", str(alt)]) == 0
        assert (alt / "profile.csv").exists()


class TestCertify:
    def test_solve_then_certify_roundtrip(self, tmp_path):
        cfg_path = tmp_path / "c.json"
        write_config(cfg_path, solve={"k": 1, "m": 2, "lambda": 0.0,
                                      "b0": 1.0, "t_max": 6.0},
                     certify={"n_base": 6, "n_product": 8})
        assert main(["solve", "--config", str(cfg_path)]) == 0
        out = tmp_path / "out"

        # in-memory path: no profile key, certify re-runs the solve block
        assert main(["certify", "--config", str(cfg_path)]) == 0
        mem_doc = json.loads((out / "certification.json").read_text())

        # file path: certify the emitted CSV
        cfg2 = tmp_path / "c2.json"
        write_config(cfg2, solve={"k": 1, "m": 2, "lambda": 0.0,
                                  "b0": 1.0, "t_max": 6.0},
                     certify={"n_base": 6, "n_product": 8,
                              "profile": str(out / "profile.csv")})
        assert main(["certify", "--config", str(cfg2)]) == 0
        file_doc = json.loads((out / "certification.json").read_text())

        # identical verdict and residuals up to the config hash
        file_doc.pop("config_hash"), mem_doc.pop("config_hash")
        assert file_doc == mem_doc
        assert file_doc["verdict"] == "pass"

    def test_certify_perturbed_lambda_fails(self, tmp_path):
        cfg_path = tmp_path / "c.json"
        write_config(cfg_path, solve=cylinder_solve_block(t_max=6.0))
        assert main(["solve", "--config", str(cfg_path)]) == 0
        csv_path = tmp_path / "out" / "profile.csv"
        text = csv_path.read_text()
        tampered = text.replace('"lam": 0.5', '"lam": 0.55')
        assert tampered != text
        bad_path = tmp_path / "bad_profile.csv"
        bad_path.write_text(tampered)
        cfg2 = tmp_path / "c2.json"
        write_config(cfg2, certify={"profile": str(bad_path),
                                    "n_base": 6, "n_product": 6})
        assert main(["certify", "--config", str(cfg2)]) == 2

    def test_certify_missing_profile_exits_4(self, tmp_path):
        cfg_path = tmp_path / "c.json"
        write_config(cfg_path, certify={"profile": str(tmp_path / "none.csv")})
        assert main(["certify", "--config", str(cfg_path)]) == 4

    def test_certify_empty_profile_exits_4(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        cfg_path = tmp_path / "c.json"
        write_config(cfg_path, certify={"profile": str(empty)})
        assert main(["certify", "--config", str(cfg_path)]) == 4

    def test_certify_without_source_exits_2(self, tmp_path):
        cfg_path = tmp_path / "c.json"
        write_config(cfg_path, certify={})
        assert main(["certify", "--config", str(cfg_path)]) == 2


class TestQuotient:
    def test_antipodal_example_passes(self, tmp_path):
        cfg_path = tmp_path / "q.json"
        write_config(cfg_path,
                     solve={"k": 1, "m": 2, "lambda": 0.0, "b0": 1.0,
                            "t_max": 6.0},
                     quotient={"p": 2, "k": 1, "m": 2, "kind": "antipodal"})
        assert main(["quotient", "--config", str(cfg_path)]) == 0
        doc = json.loads((tmp_path / "out" / "quotient_certificate.json").read_text())
        assert doc["verdict"] == "pass"
        assert doc["freeness_margin"] > 0.1

    def test_fixed_point_action_fails(self, tmp_path):
        cfg_path = tmp_path / "q.json"
        write_config(cfg_path,
                     solve={"k": 1, "m": 2, "lambda": 0.0, "b0": 1.0,
                            "t_max": 6.0},
                     quotient={"p": 2, "k": 1, "m": 2, "kind": "axis_rotation"})
        assert main(["quotient", "--config", str(cfg_path)]) == 2

    def test_hopf_even_m_config_error(self, tmp_path):
        cfg_path = tmp_path / "q.json"
        write_config(cfg_path,
                     solve={"k": 1, "m": 2, "lambda": 0.0, "b0": 1.0,
                            "t_max": 6.0},
                     quotient={"p": 3, "k": 1, "m": 2, "kind": "hopf"})
        assert main(["quotient", "--config", str(cfg_path)]) == 2

    def test_dimension_mismatch_rejected(self, tmp_path):
        cfg_path = tmp_path / "q.json"
        write_config(cfg_path,
                     solve={"k": 1, "m": 2, "lambda": 0.0, "b0": 1.0,
                            "t_max": 6.0},
                     quotient={"p": 3, "k": 1, "m": 3, "kind": "hopf"})
        assert main(["quotient", "--config", str(cfg_path)]) == 2


class TestSweep:
    def test_empty_grid_empty_table(self, tmp_path):
        cfg_path = tmp_path / "s.json"
        write_config(cfg_path, sweep={"k": [], "m": [2], "lambda": [0.0],
                                      "b0": [1.0]})
        assert main(["sweep", "--config", str(cfg_path)]) == 0
        lines = (tmp_path / "out" / "sweep.csv").read_text().splitlines()
        assert lines[1].startswith("k,m,lambda,b0")
        assert len(lines) == 2

    def test_degenerate_row_flagged_exit_zero(self, tmp_path):
        cfg_path = tmp_path / "s.json"
        write_config(cfg_path, sweep={"k": [0], "m": [2], "lambda": [0.5],
                                      "b0": [2.0], "t_max": 5.0})
        assert main(["sweep", "--config", str(cfg_path)]) == 0
        rows = (tmp_path / "out" / "sweep.csv").read_text().splitlines()[2:]
        assert "hit_b_zero" in rows[0]

    def test_reruns_byte_identical(self, tmp_path):
        cfg_path = tmp_path / "s.json"
        write_config(cfg_path, sweep={"k": [1], "m": [2], "lambda": [0.0],
                                      "b0": [0.9, 1.1], "t_max": 2.0,
                                      "rtol": 1e-9, "atol": 1e-9})
        assert main(["sweep", "--config", str(cfg_path)]) == 0
        first = (tmp_path / "out" / "sweep.csv").read_bytes()
        assert main(["sweep", "--config", str(cfg_path)]) == 0
        assert (tmp_path / "out" / "sweep.csv").read_bytes() == first

"""End-to-end tests for the command-line entry point."""

import json

import pytest

from main import create_application, main
from twirlc import storage
from twirlc.config import settings
from twirlc.core.errors import EXIT_COUNTEREXAMPLE, EXIT_INFEASIBLE, EXIT_IO, EXIT_OK


@pytest.fixture
def out(tmp_path):
    return tmp_path / "out"


def write_json(path, data):
    path.write_text(json.dumps(data))
    return path


class TestParser:
    def test_commands_registered(self):
        parser = create_application()
        args = parser.parse_args(["color", "--device", "ring7"])
        assert args.command == "color"
        assert args.out == settings.DEFAULT_OUT_DIR / "coloring.json"

    def test_command_required(self):
        with pytest.raises(SystemExit):
            main([])


class TestColor:
    def test_dsatur_coloring(self, out):
        assert main(["color", "--device", "bilinear7", "--out", str(out / "c.json")]) == EXIT_OK
        assert storage.read_json(out / "c.json")["num_colors"] == 3

    def test_missing_device(self, out):
        code = main(["color", "--device", "/no/such/device.json", "--out", str(out / "c.json")])
        assert code == EXIT_IO

    def test_unknown_model(self, out):
        code = main(["color", "--device", "ring7", "--model", "ising", "--out", str(out / "c.json")])
        assert code == EXIT_IO


class TestCompile:
    def test_chirality_target(self, out, capsys):
        code = main(["compile", "--device", "trilinear", "--target", "chirality", "--out", str(out)])
        assert code == EXIT_OK
        assert "chirality4" in capsys.readouterr().out
        schedule = storage.read_json(out / "schedule.json")
        assert schedule["L"] == 16
        assert storage.read_json(out / "verdict.json")["ok"] is True
        lifted = storage.read_csv(out / "lifted.csv")
        assert lifted[0] == [f"q{q}" for q in range(1, 9)]
        assert len(lifted) == 17

    def test_selective_sign_flip(self, out):
        code = main([
            "compile", "--device", "kitaev_folded", "--target", "selective",
            "--preserve", "kitaev_comb", "--sign-flip", "--out", str(out),
        ])
        assert code == EXIT_OK
        schedule = storage.read_json(out / "schedule.json")
        assert schedule["L"] == 12
        assert len(storage.read_json(out / "group.json")["generators"]) == 2

    def test_selective_needs_preserve(self, out):
        code = main(["compile", "--device", "ring7", "--target", "selective", "--out", str(out)])
        assert code == EXIT_IO

    def test_sign_flip_infeasible(self, tmp_path, out):
        preserve = write_json(tmp_path / "h.json", {"n": 3, "terms": [{"pauli": "XXX", "role": "preserve"}]})
        code = main([
            "compile", "--device", "ring7", "--target", "selective",
            "--preserve", str(preserve), "--sign-flip", "--out", str(out),
        ])
        assert code == EXIT_INFEASIBLE


class TestVerify:
    @pytest.fixture
    def triangle_code(self, tmp_path):
        path = tmp_path / "triangle.json"
        assert main(["codes", "triangle-universal", "--out", str(path)]) == EXIT_OK
        return path

    def test_two_local_passes(self, triangle_code, out):
        code = main(["verify", "--code", str(triangle_code), "--device", "ring7", "--out", str(out / "v.json")])
        assert code == EXIT_OK
        assert storage.read_json(out / "v.json")["group_size"] == 16

    def test_three_local_counterexample(self, triangle_code, out, capsys):
        code = main([
            "verify", "--code", str(triangle_code), "--device", "ring7",
            "--k", "3", "--complete", "--out", str(out / "v.json"),
        ])
        assert code == EXIT_COUNTEREXAMPLE
        assert "counterexample" in capsys.readouterr().out
        assert storage.read_json(out / "v.json")["ok"] is False

    def test_code_width_mismatch(self, tmp_path, out):
        path = tmp_path / "hexacode.json"
        main(["codes", "hexacode", "--out", str(path)])
        code = main(["verify", "--code", str(path), "--device", "ring7", "--out", str(out / "v.json")])
        assert code == EXIT_IO


class TestScaling:
    def test_table_and_plot(self, out):
        csv_path = out / "scaling.csv"
        code = main([
            "scaling", "--families", "mod-RM,RM", "--chi-min", "2", "--chi-max", "8",
            "--references", "--plot", str(out / "scaling.png"), "--out", str(csv_path),
        ])
        assert code == EXIT_OK
        rows = storage.read_csv(csv_path)
        assert rows[0][:4] == ["family", "chi", "generators", "L"]
        assert "baseline_4chi" in rows[0]
        assert (out / "scaling.png").stat().st_size > 0

    def test_cross_check(self, out):
        csv_path = out / "scaling.csv"
        code = main(["scaling", "--chi-max", "8", "--cross-check", "8", "--out", str(csv_path)])
        assert code == EXIT_OK
        assert (out / "scaling_crosscheck.csv").exists()

    def test_unknown_family(self, out):
        assert main(["scaling", "--families", "golay", "--out", str(out / "s.csv")]) == EXIT_IO


class TestSimulate:
    def test_kitaev(self, out):
        assert main(["simulate", "--kitaev", "--out", str(out / "r.json")]) == EXIT_OK
        report = storage.read_json(out / "r.json")
        assert report["ok"] is True
        assert set(report["residuals"]) == {"twirl", "sign_flip", "cycle", "with_identity"}

    def test_cpmg_slope(self, tmp_path, out):
        h = write_json(tmp_path / "h.json", {"n": 1, "terms": [{"pauli": "X", "coeff": 0.3}, {"pauli": "Z", "coeff": 0.5}]})
        code = main(["simulate", "--sequence", "cpmg", "--hamiltonian", str(h), "--out", str(out / "r.json")])
        assert code == EXIT_OK
        report = storage.read_json(out / "r.json")
        assert settings.SLOPE_MIN <= report["slope"] <= settings.SLOPE_MAX

    def test_hamiltonian_size_mismatch(self, tmp_path, out):
        h = write_json(tmp_path / "h.json", {"n": 2, "terms": [{"pauli": "XX"}]})
        code = main(["simulate", "--sequence", "xy4", "--hamiltonian", str(h), "--out", str(out / "r.json")])
        assert code == EXIT_IO


class TestCodes:
    def test_hexacode_with_array(self, out, capsys):
        code = main(["codes", "hexacode", "--oa", str(out / "oa.csv"), "--out", str(out / "code.json")])
        assert code == EXIT_OK
        assert "dual distance 4" in capsys.readouterr().out
        assert storage.read_csv(out / "oa.csv")[0] == [f"c{j}" for j in range(1, 7)]

    def test_sized_needs_chi(self, out):
        assert main(["codes", "rm-universal", "--out", str(out / "code.json")]) == EXIT_IO

    def test_sized_construction(self, out):
        assert main(["codes", "rm-universal", "--chi", "6", "--out", str(out / "code.json")]) == EXIT_OK
        assert storage.load_code(out / "code.json").size == 16

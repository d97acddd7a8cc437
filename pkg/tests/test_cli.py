import io
import json
import math

import pytest

from boxwell.cli import main, parse_config_file, to_json
from boxwell.errors import InvalidParameterError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def csv_rows(text):
    lines = text.splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestSpectrum:
    def test_free_box_physical(self):
        code, out, _ = run("spectrum", "--coupling", "0", "--levels", "3", "--matrix-size", "16")
        assert code == 0
        rows = csv_rows(out)
        expected = [math.pi**2 / 8, math.pi**2 / 2, 9 * math.pi**2 / 8]
        for row, e in zip(rows, expected):
            assert float(row["e_diag"]) == pytest.approx(e, rel=1e-12)
            assert float(row["e2_closed"]) == 0.0

    def test_json_schema(self):
        code, out, _ = run("spectrum", "--coupling", "1", "--levels", "10", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"params", "levels", "meta"}
        assert doc["meta"]["n_matrix"] == 256 and doc["meta"]["tol"] == 1e-12
        assert len(doc["levels"]) == 10
        for i, lv in enumerate(doc["levels"]):
            assert lv["r"] == i
            for key in ("e_diag", "e_rs2", "e2_closed", "e2_series", "abs_diff"):
                assert isinstance(lv[key], (int, float))
        assert doc["params"]["g"] == pytest.approx(8 / math.pi**2, rel=1e-15)

    def test_json_round_trip(self):
        _, out, _ = run("spectrum", "--levels", "4", "--matrix-size", "32", "--format", "json")
        doc = json.loads(out)
        assert json.loads(to_json(doc)) == doc
        assert to_json(doc) + "\n" == out

    def test_reduced_units(self):
        _, out, _ = run("spectrum", "--coupling", "0", "--levels", "2", "--matrix-size", "8", "--reduced")
        assert [float(r["e_diag"]) for r in csv_rows(out)] == [1.0, 4.0]

    def test_invalid_half_width(self):
        code, out, err = run("spectrum", "--half-width", "-1")
        assert code == 2 and out == "" and "half_width" in err

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run("spectrum", "--levels", "5", "--matrix-size", "64", "--output", str(a))[0] == 0
        assert run("spectrum", "--levels", "5", "--matrix-size", "64", "--output", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()
        assert b"\r" not in a.read_bytes()

    def test_float_format(self):
        _, out, _ = run("perturb", "--coupling", "1")
        row = csv_rows(out)[0]
        assert row["e0"] == "%.17g" % (math.pi**2 / 8)


class TestPerturb:
    def test_free_box(self):
        code, out, _ = run("perturb", "--r", "0", "--coupling", "0")
        row = csv_rows(out)[0]
        assert code == 0
        assert float(row["e0"]) == pytest.approx(math.pi**2 / 8, rel=1e-15)
        assert float(row["e1"]) == 0.0 and float(row["e2"]) == 0.0

    def test_series_matches_closed(self):
        _, a, _ = run("perturb", "--r", "0", "--coupling", "1", "--e2-source", "series", "--format", "json")
        _, b, _ = run("perturb", "--r", "0", "--coupling", "1", "--e2-source", "closed", "--format", "json")
        sa, sb = json.loads(a)["breakdown"], json.loads(b)["breakdown"]
        assert sa["e2_source"] == "series" and sb["e2_source"] == "closed"
        assert sa["e2"] == pytest.approx(sb["e2"], rel=1e-9)

    def test_negative_r(self):
        code, _, err = run("perturb", "--r", "-1")
        assert code == 2 and err

    def test_bad_choice_is_usage_error(self):
        assert run("perturb", "--e2-source", "symbolic")[0] == 2


class TestValidate:
    def test_quick_passes(self):
        code, out, _ = run("validate", "--quick")
        assert code == 0
        assert "residual_slope" not in out
        assert out.count("PASS") == 6

    def test_full_passes(self):
        code, out, _ = run("validate")
        assert code == 0 and "FAIL" not in out and "residual_slope" in out

    @pytest.mark.parametrize("k", range(5))
    def test_mutation_detected(self, k):
        code, out, _ = run("validate", "--quick", "--mutate-coefficient", str(k))
        assert code == 1
        assert "FAIL closed_vs_series" in out

    def test_no_color_when_not_tty(self, monkeypatch):
        monkeypatch.delenv("BOXWELL_NO_COLOR", raising=False)
        _, out, _ = run("validate", "--quick")
        assert "\033[" not in out

    def test_no_color_env(self, monkeypatch):
        class Tty(io.StringIO):
            def isatty(self):
                return True

        out = Tty()
        monkeypatch.setenv("BOXWELL_NO_COLOR", "1")
        main(["validate", "--quick"], stdout=out)
        assert "\033[" not in out.getvalue()
        monkeypatch.delenv("BOXWELL_NO_COLOR")
        out = Tty()
        main(["validate", "--quick"], stdout=out)
        assert "\033[32mPASS" in out.getvalue()


class TestSweep:
    def test_slope(self):
        code, out, _ = run("sweep", "--g-min", "0.02", "--g-max", "0.2", "--steps", "4", "--r", "0")
        assert code == 0
        rows = csv_rows(out)
        assert len(rows) == 4
        assert float(rows[0]["g"]) == 0.02 and float(rows[-1]["g"]) == 0.2
        assert 2.8 <= float(rows[0]["fitted_slope"]) <= 3.2

    def test_single_point(self):
        code, out, _ = run("sweep", "--steps", "1", "--format", "json", "--levels", "2", "--matrix-size", "64")
        doc = json.loads(out)
        assert code == 0
        assert doc["report"]["fitted_slope"] is None
        assert len(doc["report"]["g_values"]) == 1 and len(doc["tables"]) == 1

    def test_inverted_range(self):
        assert run("sweep", "--g-min", "0.2", "--g-max", "0.02")[0] == 2
        assert run("sweep", "--g-min", "0.2", "--g-max", "0.2")[0] == 2

    def test_parallel_identical(self):
        args = ("sweep", "--levels", "2", "--matrix-size", "64", "--format", "json")
        assert run(*args)[1] == run(*args, "--parallel")[1]


class TestDumpMatrix:
    def test_csv(self):
        code, out, _ = run("dump-matrix", "--matrix-size", "4", "--reduced", "--coupling", "0")
        rows = csv_rows(out)
        assert code == 0 and len(rows) == 16
        diag = {int(r["row"]): float(r["value"]) for r in rows if r["row"] == r["col"]}
        assert diag == {0: 1.0, 1: 4.0, 2: 9.0, 3: 16.0}
        assert all(float(r["value"]) == 0.0 for r in rows if (int(r["row"]) + int(r["col"])) % 2)

    def test_json(self):
        _, out, _ = run("dump-matrix", "--matrix-size", "3", "--format", "json")
        doc = json.loads(out)
        assert doc["n"] == 3 and len(doc["entries"]) == 9


class TestConfig:
    def test_file_and_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# box\ncoupling = 0   # free\nlevels = 2\nmatrix-size = 8\nreduced = true\n",
                       encoding="utf-8")
        _, out, _ = run("spectrum", "--config", str(cfg))
        assert [float(r["e_diag"]) for r in csv_rows(out)] == [1.0, 4.0]
        _, out, _ = run("spectrum", "--config", str(cfg), "--levels", "1")
        assert len(csv_rows(out)) == 1

    def test_parse_errors(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("colour = blue\n", encoding="utf-8")
        with pytest.raises(InvalidParameterError):
            parse_config_file(str(bad))
        bad.write_text("mass = heavy\n", encoding="utf-8")
        with pytest.raises(InvalidParameterError):
            parse_config_file(str(bad))
        assert run("spectrum", "--config", str(bad))[0] == 2

    def test_missing_file(self, tmp_path):
        assert run("spectrum", "--config", str(tmp_path / "nope.cfg"))[0] == 2

    def test_half_width_aliases(self, tmp_path):
        cfg = tmp_path / "a.cfg"
        cfg.write_text("half_width = 2\nhalf-width = 3\n", encoding="utf-8")
        assert parse_config_file(str(cfg)) == {"half_width": 3.0}

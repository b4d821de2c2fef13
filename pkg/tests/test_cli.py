import csv
import io
import json
import re
import subprocess
import sys

import numpy as np
import pytest

from dpcheck.cli import main, read_data_csv
from dpcheck.distributions import Normal
from dpcheck.errors import DataError
from dpcheck.rng import RngStream

FAST_FLAGS = ["--N", "100", "--r1", "100", "--r2", "100"]
RB_LINE = re.compile(r"^RB\(0\) = \d+\.\d\d \(strength \d+\.\d\d\)\n$")


@pytest.fixture(scope="module")
def data_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "sample.csv"
    values = Normal(0.0, 1.0).sample(20, RngStream(21, "cli-data").generator())
    path.write_text("\n".join(f"{v:.17g}" for v in values) + "\n")
    return str(path)


def run_main(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestReadDataCsv:
    def write(self, tmp_path, text, name="in.csv"):
        path = tmp_path / name
        path.write_bytes(text.encode())
        return str(path)

    def test_plain_column(self, tmp_path):
        path = self.write(tmp_path, "1.5\n-2\n3e-1\n")
        assert np.array_equal(read_data_csv(path), [1.5, -2.0, 0.3])

    def test_crlf_header_and_blank_lines(self, tmp_path):
        path = self.write(tmp_path, "stress\r\n1.0\r\n\r\n2.0\r\n\r\n")
        assert np.array_equal(read_data_csv(path), [1.0, 2.0])

    def test_trailing_commas_tolerated(self, tmp_path):
        path = self.write(tmp_path, "1.0,\n2.0,,\n")
        assert np.array_equal(read_data_csv(path), [1.0, 2.0])

    def test_two_values_per_line_rejected(self, tmp_path):
        path = self.write(tmp_path, "1.0,2.0\n")
        with pytest.raises(DataError, match="one value per line"):
            read_data_csv(path)

    def test_non_numeric_after_header_rejected(self, tmp_path):
        path = self.write(tmp_path, "x\n1.0\noops\n")
        with pytest.raises(DataError, match="non-numeric"):
            read_data_csv(path)

    @pytest.mark.parametrize("text", ["", "\n\n", "only_header\n"])
    def test_no_numbers_means_no_data(self, tmp_path, text):
        path = self.write(tmp_path, text)
        with pytest.raises(DataError, match="no data"):
            read_data_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="cannot read"):
            read_data_csv(str(tmp_path / "absent.csv"))


class TestCheckCommand:
    def test_one_line_summary(self, data_file, capsys):
        code, out, err = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--seed", "3", *FAST_FLAGS],
            capsys,
        )
        assert code == 0
        assert RB_LINE.match(out)

    def test_json_report_schema(self, data_file, capsys, tmp_path):
        out_path = str(tmp_path / "report.json")
        code, out, _ = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--seed", "3", "--out", out_path, *FAST_FLAGS],
            capsys,
        )
        assert code == 0
        report = json.loads(open(out_path).read())
        assert set(report) == {
            "family", "theta", "a", "N", "r1", "r2", "M", "p0",
            "d_quantiles", "rb_bins", "rb_at_zero", "strength", "warnings",
        }
        assert report["family"] == "location-normal"
        assert report["p0"] == pytest.approx(0.05)
        assert len(report["d_quantiles"]) == 21
        assert len(report["rb_bins"]) == 20
        assert isinstance(report["warnings"], list)

    def test_json_to_stdout(self, data_file, capsys):
        code, out, _ = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--seed", "3", "--out", "-", *FAST_FLAGS],
            capsys,
        )
        assert code == 0
        summary_line, _, rest = out.partition("\n")
        assert RB_LINE.match(summary_line + "\n")
        assert json.loads(rest)["M"] == 20

    def test_samples_csv_layout(self, data_file, capsys, tmp_path):
        samples = tmp_path / "samples.csv"
        code, _, _ = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--seed", "3", "--samples-out", str(samples), *FAST_FLAGS],
            capsys,
        )
        assert code == 0
        lines = samples.read_text().splitlines()
        assert lines[0] == "which,distance"
        which = [ln.split(",")[0] for ln in lines[1:]]
        assert which == ["prior"] * 100 + ["posterior"] * 100
        for ln in lines[1:]:
            float(ln.split(",")[1])

    def test_byte_identical_reruns(self, data_file, capsys, tmp_path):
        outputs = []
        for name in ("a", "b"):
            out_path = tmp_path / f"{name}.json"
            samples_path = tmp_path / f"{name}.csv"
            run_main(
                ["check", "--data", data_file, "--family", "location-normal",
                 "--seed", "9", "--out", str(out_path),
                 "--samples-out", str(samples_path), *FAST_FLAGS],
                capsys,
            )
            outputs.append((out_path.read_bytes(), samples_path.read_bytes()))
        assert outputs[0] == outputs[1]

    def test_p0_must_sit_on_the_grid(self, data_file, capsys):
        code, _, err = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--p0", "0.07", *FAST_FLAGS],
            capsys,
        )
        assert code == 2
        assert "p0" in err

    def test_custom_p0_changes_cutoff(self, data_file, capsys):
        code, out, _ = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--seed", "3", "--p0", "0.10", "--out", "-", *FAST_FLAGS],
            capsys,
        )
        assert code == 0
        assert json.loads(out.partition("\n")[2])["p0"] == pytest.approx(0.10)

    def test_concentration_warning_goes_to_stderr(self, data_file, capsys):
        code, out, err = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--seed", "3", "--a", "10", *FAST_FLAGS],
            capsys,
        )
        assert code == 0
        assert "warning:" in err and "n/4" in err
        assert "warning" not in out


class TestExitCodes:
    def test_bad_config_is_2(self, data_file, capsys):
        code, _, err = run_main(
            ["check", "--data", data_file, "--family", "location-normal", "--a", "0"],
            capsys,
        )
        assert code == 2 and err.startswith("error:")

    def test_bad_override_spec_is_2(self, data_file, capsys):
        code, _, err = run_main(
            ["check", "--data", data_file, "--family", "location-normal",
             "--base-override", "normal(0)", *FAST_FLAGS],
            capsys,
        )
        assert code == 2 and err.startswith("error:")

    def test_missing_data_file_is_3(self, tmp_path, capsys):
        code, _, err = run_main(
            ["check", "--data", str(tmp_path / "nope.csv"),
             "--family", "location-normal"],
            capsys,
        )
        assert code == 3 and err.startswith("error:")

    def test_bad_rows_are_3(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("x\n1.0\nnot-a-number\n")
        code, _, _ = run_main(
            ["check", "--data", str(path), "--family", "location-normal"],
            capsys,
        )
        assert code == 3

    def test_degenerate_fit_is_4(self, tmp_path, capsys):
        path = tmp_path / "const.csv"
        path.write_text("2.0\n" * 10)
        code, _, err = run_main(
            ["check", "--data", str(path), "--family", "location-scale-normal",
             *FAST_FLAGS],
            capsys,
        )
        assert code == 4 and "degenerate" in err

    def test_simulate_source_flags_are_exclusive(self, capsys, tmp_path):
        code, _, _ = run_main(["simulate"], capsys)
        assert code == 2
        scen = tmp_path / "s.json"
        scen.write_text("[]")
        code, _, _ = run_main(
            ["simulate", "--table", "1", "--scenario-file", str(scen)], capsys
        )
        assert code == 2

    def test_unknown_flag_exits_2(self, data_file):
        with pytest.raises(SystemExit) as exc:
            main(["check", "--data", data_file, "--frobnicate"])
        assert exc.value.code == 2


@pytest.fixture(scope="module")
def scenario_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("scen") / "study.json"
    path.write_text(json.dumps([
        {
            "scenario_id": "tiny",
            "distribution": "normal(0,1)",
            "family": "location-normal",
            "n": 15,
            "a": [1, 5],
            "replications": 2,
            "with_d_min": False,
            "N": 100,
            "r1": 100,
            "r2": 100,
        }
    ]))
    return str(path)


class TestSimulateCommand:
    def test_rows_then_summaries(self, scenario_file, capsys):
        code, out, _ = run_main(
            ["simulate", "--scenario-file", scenario_file], capsys
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "kind"
        kinds = [r[0] for r in rows[1:]]
        assert kinds == ["rep"] * 4 + ["summary"] * 2
        rep = dict(zip(rows[0], rows[1]))
        assert rep["scenario"] == "tiny"
        assert rep["distribution"] == "normal(0,1)"
        assert rep["d_min"] == ""
        float(rep["rb_at_zero"])
        summary = dict(zip(rows[0], rows[-1]))
        assert summary["errors"] == "0"
        float(summary["median_rb"])

    def test_scenario_runs_are_deterministic(self, scenario_file, capsys, tmp_path):
        texts = []
        for name in ("a.csv", "b.csv"):
            out_path = tmp_path / name
            code, _, _ = run_main(
                ["simulate", "--scenario-file", scenario_file,
                 "--out", str(out_path)],
                capsys,
            )
            assert code == 0
            texts.append(out_path.read_bytes())
        assert texts[0] == texts[1]

    def test_progress_lines_on_stderr(self, scenario_file, capsys):
        code, _, err = run_main(
            ["simulate", "--scenario-file", scenario_file, "--progress"], capsys
        )
        assert code == 0
        assert err.count("done tiny") == 4

    def test_bad_scenario_file_is_3(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('[{"distribution": "normal(0,1)"}]')
        code, _, err = run_main(["simulate", "--scenario-file", str(path)], capsys)
        assert code == 3 and "scenario" in err


def test_console_entry_point(data_file, tmp_path):
    """The installed script behaves like main(): same summary, exit 0."""
    proc = subprocess.run(
        [sys.executable, "-m", "dpcheck.cli", "check", "--data", data_file,
         "--family", "location-normal", "--seed", "3", *FAST_FLAGS],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert RB_LINE.match(proc.stdout)

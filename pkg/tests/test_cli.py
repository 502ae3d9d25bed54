from pathlib import Path

import orjson
import pytest
from jsonschema import Draft202012Validator
from typer.testing import CliRunner

from CoarseLab.Utils import ReportWriter
from coarse_lab import COMMANDS, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, app

runner = CliRunner()
SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"

Z3POW = {"group": {"kind": "integers"}, "generators": {"kind": "powers", "base": 3, "count": 9}}
CUBE3 = {"group": {"kind": "bounded_sum", "modulus": 2, "coordinate_bound": 16},
         "generators": {"kind": "basis", "count": 3}, "window": {"kind": "support", "indices": [0, 1, 2]}}
LINE = {"group": {"kind": "integers"}, "generators": {"kind": "list", "values": [1]},
        "window": {"kind": "box", "intervals": [[0, 29]]}}


def schema(name):
    return Draft202012Validator(ReportWriter.read_json(SCHEMAS / f"{name}.schema.json"))


REPORT_SCHEMA = schema("run_report")
CONFIG_SCHEMA = schema("experiment_config")


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def config_file(directory, data, name="config.json"):
    path = directory / name
    path.write_bytes(orjson.dumps(data))
    return str(path)


def invoke(command, config, *flags):
    result = runner.invoke(app, [command, "--config", config, *flags])
    report = orjson.loads(result.stdout) if result.stdout.strip() else None
    return result, report


class TestCommands:
    """Subcommands end to end through the typer app."""

    def test_every_command_is_registered(self):
        assert len(COMMANDS) == 16

    def test_dist(self, workdir):
        result, report = invoke("dist", config_file(workdir, Z3POW), "--x", "0", "--y", "5")
        assert result.exit_code == EXIT_OK
        assert report["result"]["distance"] == {"value": 3, "search_bound": 12}
        assert report["verdict"] is None

    def test_embed_is_verified(self, workdir):
        result, report = invoke("embed", config_file(workdir, Z3POW), "--target-len", "4", "--verify-support", "4")
        assert result.exit_code == EXIT_OK
        certificate = report["result"]["certificate"]
        assert certificate["verified"]
        assert certificate["b_seq"] == [[[0, 1]], [[0, 3]], [[0, 9]], [[0, 27]]]
        assert certificate["checks"]["isometry"]["pairs_checked"] == 256

    def test_embed_scan_exhausted(self, workdir):
        config = config_file(workdir, {**Z3POW, "sequence": [1, 1, 1]})
        result, report = invoke("embed", config, "--target-len", "2")
        assert result.exit_code == EXIT_VIOLATION
        assert report["result"]["certificate"] is None
        assert report["result"]["scan_exhausted"]["selected"] == [[[0, 1]]]

    def test_min_colors_on_the_cube(self, workdir):
        result, report = invoke("min-colors", config_file(workdir, CUBE3), "--r", "1", "--candidates", "singletons")
        assert result.exit_code == EXIT_OK
        assert report["result"]["classes"] == 4 and report["result"]["exact"]

    def test_cover_verify_violation(self, workdir):
        classes = [[[a for a in range(lo, lo + 5)] for lo in (0, 10, 20)],
                   [[a for a in range(lo, lo + 5)] for lo in (5, 15, 25)]]
        config = config_file(workdir, {**LINE, "classes": classes, "D": 4})
        result, report = invoke("cover-verify", config, "--r", "3")
        assert result.exit_code == EXIT_VIOLATION
        assert report["verdict"] == "violated"
        assert report["result"]["violation"]["category"] == "separation"
        result, report = invoke("cover-verify", config, "--r", "2")
        assert result.exit_code == EXIT_OK and report["result"]["valid"]

    def test_fs_check_violation(self, workdir):
        result, report = invoke("fs-check", config_file(workdir, Z3POW), "--sequence", "[1, 2, 3]")
        assert result.exit_code == EXIT_VIOLATION
        assert report["result"]["fs_strict"]["witness"] == [[0, 1], [2]]

    def test_family_override(self, workdir):
        result, report = invoke("osc", config_file(workdir, CUBE3), "--family", "parity")
        assert result.exit_code == EXIT_OK
        assert report["config"]["function"]["family"] == "parity"
        assert report["result"]["max"] == 1

    def test_output_and_csv_files(self, workdir):
        config = config_file(workdir, {**LINE, "r_list": [1, 2]})
        result, report = invoke("dim-profile", config, "--candidates", "bricks",
                                "--output", "out/report.json", "--csv-output", "profile.csv")
        assert result.exit_code == EXIT_OK
        assert (workdir / "out" / "report.json").read_bytes() == result.stdout.encode("utf-8")
        assert (workdir / "profile.csv").read_text().splitlines()[0] == "r,D_rule,D,greedy,exact,exact_flag"


class TestUsageErrors:
    """Exit code 2 when a command cannot run."""

    def test_unknown_field(self, workdir):
        result, report = invoke("dist", config_file(workdir, {**Z3POW, "colour": "blue"}), "--x", "0", "--y", "1")
        assert result.exit_code == EXIT_USAGE
        assert report is None

    def test_missing_argument(self, workdir):
        result, _ = invoke("dist", config_file(workdir, Z3POW), "--x", "0")
        assert result.exit_code == EXIT_USAGE

    def test_malformed_json_flag(self, workdir):
        result, _ = invoke("dist", config_file(workdir, Z3POW), "--x", "[0,", "--y", "1")
        assert result.exit_code == EXIT_USAGE

    def test_window_kind_mismatch(self, workdir):
        config = config_file(workdir, {**Z3POW, "window": {"kind": "support", "indices": [0]}})
        result, _ = invoke("osc", config)
        assert result.exit_code == EXIT_USAGE

    def test_exceeded_budget(self, workdir):
        result, _ = invoke("fs-check", config_file(workdir, Z3POW), "--sequence", str(list(range(1, 26))))
        assert result.exit_code == EXIT_USAGE


RUNS = [
    ("dist", Z3POW, ["--x", "4", "--y", "-7"]),
    ("ball", Z3POW, ["--x", "0", "--n", "1"]),
    ("ideal-ball", Z3POW, ["--centers", "[0, 100]", "--n", "1"]),
    ("cover-radius", Z3POW, ["--points", "[0, 10, 20]", "--k", "2"]),
    ("merge", Z3POW, ["--sequences", "[[1, 3], [2]]"]),
    ("embed", Z3POW, ["--target-len", "3", "--verify-support", "3"]),
    ("verify-embed", Z3POW, ["--sequence", "[1, 3, 9]"]),
    ("fs-check", Z3POW, ["--sequence", "[1, 3, 9]"]),
    ("hamming-check", CUBE3, ["--pairs", "50", "--exhaustive-support", "2"]),
    ("cover-greedy", LINE, ["--candidates", "bricks", "--candidate-size", "5", "--r", "2"]),
    ("min-colors", CUBE3, ["--r", "1"]),
    ("dim-profile", CUBE3, ["--r-list", "[0, 1]"]),
    ("osc", CUBE3, ["--family", "support-size"]),
    ("so-index", CUBE3, ["--family", "coordinate-indicator"]),
    ("classify", CUBE3, ["--family", "support-size", "--r-list", "[1]"]),
]


class TestReports:
    """Reports conform to the published schemas and are reproducible."""

    @pytest.mark.parametrize("command, data, flags", RUNS, ids=[run[0] for run in RUNS])
    def test_report_matches_schema(self, workdir, command, data, flags):
        result, report = invoke(command, config_file(workdir, data), *flags)
        assert result.exit_code in (EXIT_OK, EXIT_VIOLATION)
        REPORT_SCHEMA.validate(report)
        CONFIG_SCHEMA.validate(report["config"])
        assert report["command"] == command and report["exit_code"] == result.exit_code

    @pytest.mark.parametrize("command, data, flags", RUNS, ids=[run[0] for run in RUNS])
    def test_payload_is_byte_identical_across_runs(self, workdir, command, data, flags):
        config = config_file(workdir, data)
        first = invoke(command, config, *flags)[1]
        second = invoke(command, config, *flags)[1]
        assert ReportWriter.dumps(first["result"]) == ReportWriter.dumps(second["result"])
        assert first["config"] == second["config"]

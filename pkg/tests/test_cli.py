import csv
import io
import json

import pytest

from config.settings import SCHEMA_VERSION
from core.command import BadFlagValue, UnknownSubcommand
from core.controller import Controller


def run_json(controller, capsys, *argv):
    code = controller.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def usage_error(controller, capsys, *argv):
    code = controller.main(list(argv))
    captured = capsys.readouterr()
    assert captured.out == ""
    return code, json.loads(captured.err)


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["habiro", "ev", "--f", "q", "--level", "4", "--zeta", "1/4"], {"order": 4, "coeffs": ["0", "1"]}),
        (["witt", "ghost", "--u", "2,-1,-2,-4"], ["2", "2", "2", "2"]),
        (["lambda", "ghost", "--u", "1,1"], ["1", "3"]),
        (["braid", "torus", "--a", "2", "--b", "3", "--m", "1"], {"a": 2, "b": 3, "b_prime": 9, "word_verified": True}),
        (["braid", "torus", "--a=3", "--b=2", "--m=-1"], {"a": 3, "b": 2, "b_prime": -10, "word_verified": True}),
    ],
)
def test_exact_results(controller, capsys, argv, expected):
    code, data = run_json(controller, capsys, *argv)
    assert code == 0
    assert data["schema"] == SCHEMA_VERSION
    assert data["exact"] is True
    assert data["result"] == expected


def test_envelope_echoes_flags_with_defaults(controller, capsys):
    code, data = run_json(controller, capsys, "habiro", "taylor", "--f", "1 + q^2", "--level", "4", "--zeta", "1/2")
    assert code == 0
    assert data["command"] == "habiro.taylor"
    assert data["config"] == {"f": "1 + q^2", "level": "4", "zeta": "1/2", "depth": "1"}


def test_hnf_count(controller, capsys):
    _, data = run_json(controller, capsys, "multi", "hnf", "--det", "6")
    assert data["result"]["count"] == 12
    assert len(data["result"]["matrices"]) == 12


def test_braid_composition(controller, capsys):
    _, data = run_json(controller, capsys, "braid", "compose", "--n", "3", "--word", "s1 s2", "--n1", "1", "--n2", "1")
    assert data["result"] == {"exponent": 8, "writhe": 2, "holds": True}


def test_partition_function_is_numeric(controller, capsys):
    _, data = run_json(controller, capsys, "qsm", "partition", "--hbar", "0.5")
    assert data["exact"] is False
    assert data["result"]["closed_form"] == pytest.approx(2.1932454, abs=1e-7)
    assert data["result"]["value"] <= data["result"]["closed_form"]
    assert data["result"]["deterministic"] is True


def test_cone_value(controller, capsys):
    _, data = run_json(controller, capsys, "mzv", "cone", "--gens", "1", "--forms", "1|1", "--theta", "0", "--hmax", "1000")
    assert data["result"]["value_re"] == pytest.approx(1.6439345, abs=1e-6)
    assert data["result"]["points"] == 1000
    assert "warnings" not in data


def test_divergent_cone_reports_a_warning(controller, capsys):
    code, data = run_json(controller, capsys, "mzv", "cone", "--gens", "1", "--forms", "1", "--theta", "0", "--hmax", "50")
    assert code == 0
    assert data["warnings"]


def test_boolean_switch(controller, capsys):
    _, plain = run_json(controller, capsys, "bc", "rho", "--x", "0", "--n", "2")
    _, integral = run_json(controller, capsys, "bc", "rho", "--x", "0", "--n", "2", "--integral")
    assert integral["config"]["integral"] == "true"
    assert plain["result"] != integral["result"]


def test_csv_output(controller, capsys):
    assert controller.main(["witt", "ghost", "--u", "2,-1,-2,-4", "--format", "csv"]) == 0
    rows = dict(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows["command"] == "witt.ghost"
    assert json.loads(rows["result"]) == ["2", "2", "2", "2"]


def test_sweep_table_as_csv(controller, capsys):
    argv = ["qsm", "sweep", "--f", "q", "--zeta", "1/2", "--nmax", "20", "--mmax", "8", "--betas", "2,4", "--format", "csv"]
    assert controller.main(argv) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["beta", "value_re", "value_im", "error"]
    assert [r[0] for r in rows[1:]] == ["2.0", "4.0"]


def test_domain_errors_exit_one(controller, capsys):
    code, data = run_json(controller, capsys, "habiro", "ev", "--f", "q", "--level", "2", "--zeta", "1/4")
    assert code == 1
    assert data["error"] == "OrderExceedsLevel"
    code, data = run_json(controller, capsys, "multi", "hnf", "--det", "0")
    assert code == 1
    assert data["error"] == "ValueError"


def test_unknown_subcommands(controller, capsys):
    code, data = usage_error(controller, capsys, "nope")
    assert code == 2
    assert data["error"] == "UnknownSubcommand"
    assert data["position"] == 0
    code, data = usage_error(controller, capsys, "habiro", "integrate")
    assert code == 2
    assert data["position"] == 1


def test_bad_flag_values_report_their_position(controller, capsys):
    code, data = usage_error(controller, capsys, "habiro", "ev", "--f", "q", "--level", "abc", "--zeta", "1/4")
    assert code == 2
    assert data == {
        "error": "BadFlagValue",
        "message": data["message"],
        "flag": "--level",
        "position": 5,
    }
    code, data = usage_error(controller, capsys, "braid", "torus", "--a", "2")
    assert data["flag"] == "--b"
    code, data = usage_error(controller, capsys, "witt", "ghost", "--u", "1", "--bogus", "2")
    assert data["flag"] == "--bogus"
    code, data = usage_error(controller, capsys, "witt", "ghost", "--u", "1", "--format", "xml")
    assert data["flag"] == "--format"


def test_parse_raises_usage_errors(controller):
    with pytest.raises(UnknownSubcommand):
        controller.parse(["multi"])
    with pytest.raises(BadFlagValue):
        controller.parse(["bc", "rho", "--x", "0", "--n", "2", "--integral", "maybe"])
    cmd = controller.parse(["lambda", "ghost", "--u", "1,2", "--trunc", "4"])
    assert cmd.path == "witt.ghost"
    assert cmd["trunc"] == 4


def test_usage_and_help(controller, capsys):
    assert controller.main([]) == 2
    assert "witt (lambda)" in capsys.readouterr().err
    assert controller.main(["--help"]) == 0
    assert "habiro:" in capsys.readouterr().out
    assert controller.main(["witt", "ghost", "--help"]) == 0


def test_repro_exit_code_and_table(app_config, capsys):
    app_config.repro = {"braid": {"samples": 5}}
    controller = Controller(app_config)
    assert controller.main(["repro", "braid", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0][:3] == ["suite", "check", "passed"]
    assert len(rows) == 5


def test_gibbs_routes_agree_within_tolerance(controller, capsys):
    argv = ["qsm", "gibbs", "--f", "q + q^2", "--zeta", "1/2", "--ell", "1", "--nmax", "20", "--mmax", "8", "--beta", "3"]
    code, data = run_json(controller, capsys, *argv)
    assert code == 0
    assert data["result"]["routes_agree"] is True
    _, limit = run_json(controller, capsys, "qsm", "kms-limit", "--f", "q + q^2", "--zeta", "1/2", "--ell", "1")
    assert limit["result"]["agrees"] is True


def test_kms_limit_is_reported_as_numeric(controller, capsys):
    code, data = run_json(controller, capsys, "qsm", "kms-limit", "--f", "1 + q^2", "--zeta", "1/2", "--ell", "1")
    assert code == 0
    assert data["exact"] is False
    assert data["result"]["agrees"] is True

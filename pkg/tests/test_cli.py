"""Tests for the command line interface, the dispatcher, report models and configuration"""

import json

import pytest

from config import DEFAULT_SMOOTHNESS_BOUND, get_log_level, get_smoothness_bound
from dispatcher import EddDispatcher
from errors import DomainError, UsageError
from main import build_parser, config_from_args, divisor_list, main
from models import CommandConfig, Coordinates, EddMethod, EddReport, EulerData, ProductSpec


@pytest.fixture(autouse=True)
def default_smoothness_bound(monkeypatch):
    monkeypatch.delenv("EDD_SMOOTHNESS_BOUND", raising=False)


def run_json(capsys, *argv) -> dict:
    assert main([*argv, "--json"]) == 0
    return json.loads(capsys.readouterr().out)


def run_error(capsys, *argv) -> dict:
    code = main(list(argv))
    err = capsys.readouterr().err
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["exit_code"] == code
    return payload


# ==================== Successful runs ====================

def test_plane_curve_json(capsys):
    report = run_json(capsys, "plane-curve", "--poly", "x^5+y^5+z^5")
    assert report["edd"] == "23"
    assert report["intermediates"]["R"] == "8"
    assert report["method"] == EddMethod.PLANE_CURVE.value
    assert report["warnings"] == []


def test_text_output(capsys):
    assert main(["from-euler", "--dim", "2", "--chi", "4,2,2,2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("【ED Degree】 2")


def test_negative_list_values(capsys):
    report = run_json(capsys, "from-segre", "--dim", "2", "--chern", "4,4,2", "--segre=-2,2")
    assert report["edd"] == "2"
    assert report["intermediates"]["gamma"] == "4"

    explicit = run_json(capsys, "from-segre", "--dim", "2", "--chern", "4,4,2", "--segre=-2,2", "--ambient", "3")
    assert explicit["edd"] == "2"


def test_class_commands(capsys):
    assert run_json(capsys, "generic", "--chern", "4,4,2", "--dim", "2")["edd"] == "6"
    assert run_json(capsys, "hypersurface", "--n", "4", "--d", "2")["edd"] == "6"
    assert run_json(capsys, "from-milnor", "--dim", "2", "--chern", "4,4,2", "--milnor=2,-2")["edd"] == "2"
    assert run_json(capsys, "from-milnor", "--dim", "2", "--chern", "4,4,2", "--segre=-2,2")["edd"] == "2"
    assert run_json(capsys, "sphere", "--n", "4")["edd"] == "2"


def test_product_commands(capsys):
    report = run_json(capsys, "segre", "--dims", "2,2", "--method", "both")
    assert report["edd"] == "2"
    assert report["intermediates"] == {"segre": "2", "fo": "2"}

    assert run_json(capsys, "segre-veronese", "--dims", "3", "--weights", "2")["edd"] == "13"
    assert run_json(capsys, "segre-veronese", "--dims", "3", "--weights", "2", "--coords", "invariant",
                    "--method", "both")["edd"] == "3"
    assert run_json(capsys, "snc", "--dims", "2,2", "--divisors", "2,0;0,2")["edd"] == "2"


def test_curve_commands(capsys):
    report = run_json(capsys, "rational-curve", "--param", "s^3", "--param", "s^2*t", "--param", "s*t^2",
                      "--param", "t^3", "--weights", "1,3,3,1")
    assert report["edd"] == "3"
    assert run_json(capsys, "rnc", "--n", "5")["edd"] == "4"
    assert run_json(capsys, "curve", "--degree", "3", "--num-qc", "6", "--chi", "0")["edd"] == "9"


def test_surface_commands(capsys):
    assert run_json(capsys, "surface-p3", "--d", "4", "--chi=-16")["edd"] == "52"
    assert run_json(capsys, "veronese-surface", "--deg-c", "4", "--chi=-4")["edd"] == "13"


def test_output_is_deterministic(capsys):
    argv = ["segre", "--dims", "3,4,5", "--method", "both", "--json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_verbose_mode(capsys):
    assert main(["plane-curve", "--poly", "x^2+2*y^2+2*i*y*z", "--json", "-v"]) == 0
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["edd"] == "1"
    assert "pullback" in report["intermediates"]
    assert "┌─ [curves] plane-curve started" in captured.err
    assert "└─ plane-curve completed: 1" in captured.err


# ==================== Failures ====================

def test_parse_error_exit(capsys):
    payload = run_error(capsys, "plane-curve", "--poly", "x^2+")
    assert payload["exit_code"] == 2
    assert payload["kind"] == "parse"
    assert "offset 5" in payload["error"]


def test_domain_error_exit(capsys):
    payload = run_error(capsys, "from-euler", "--dim=-1", "--chi", "4,2,2,2")
    assert payload["exit_code"] == 3
    assert payload["kind"] == "domain"


def test_precondition_error_exit(capsys):
    payload = run_error(capsys, "plane-curve", "--poly", "y^2*z-x^3")
    assert payload["exit_code"] == 3
    assert payload["kind"] == "precondition"


def test_unsupported_exit(capsys):
    assert run_error(capsys, "segre-veronese", "--dims", "3", "--weights", "2", "--method", "fo")["exit_code"] == 4
    assert run_error(capsys, "plane-curve", "--poly", "x^7+y^7+z^7")["exit_code"] == 4
    assert main(["plane-curve", "--poly", "x^7+y^7+z^7", "--assume-smooth"]) == 0


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["segre"],
    ["segre", "--dims", "2,x"],
    ["segre", "--dims", "2,2", "--method", "fast"],
    ["from-milnor", "--dim", "2", "--chern", "4,4,2", "--milnor=2,-2", "--segre=-2,2"],
    ["from-segre", "--dim", "2", "--chern", "4,4,2", "--segre=-2,2", "--ambient", "1"],
    ["from-euler", "--dim", "2", "--chi", "4,2,2"],
])
def test_usage_errors_exit_with_two(capsys, argv):
    payload = run_error(capsys, *argv)
    assert payload["exit_code"] == 2
    assert payload["kind"] == "usage"


def test_error_output_is_one_json_line(capsys):
    assert main(["plane-curve", "--poly", "(x+y"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    line = captured.err.strip().splitlines()[-1]
    assert set(json.loads(line)) == {"error", "exit_code", "kind"}


# ==================== Argument handling ====================

def test_divisor_list():
    assert divisor_list("2,0;0,2") == [[2, 0], [0, 2]]
    assert divisor_list("") == []


def test_config_from_args():
    args = build_parser().parse_args(["segre-veronese", "--dims", "2,3", "--weights", "1,2", "--method", "both"])
    config = config_from_args(args)
    assert config.subcommand == "segre-veronese"
    assert config.method == "both"
    assert config.params["dims"] == [2, 3]
    assert "json" not in config.params and "command" not in config.params


# ==================== Dispatcher ====================

def test_dispatcher_routes_every_subcommand():
    dispatcher = EddDispatcher()
    assert len(dispatcher.subcommands) == 16
    assert "plane-curve" in dispatcher.subcommands
    with pytest.raises(UsageError):
        dispatcher.run_command(CommandConfig("frobnicate"))


def test_dispatcher_events():
    dispatcher = EddDispatcher()
    events = []
    dispatcher.on("action_start", lambda data: events.append(("start", data["action_type"])))
    dispatcher.on("action_complete", lambda data: events.append(("complete", data["value"])))
    dispatcher.on("action_error", lambda data: events.append(("error", data["subcommand"])))
    dispatcher.on("action_complete", lambda data: 1 / 0)

    report = dispatcher.run_command(CommandConfig("rnc", {"n": 4}))
    assert report.value == 3
    assert events == [("start", "curves"), ("complete", 3)]

    events.clear()
    with pytest.raises(DomainError):
        dispatcher.run_command(CommandConfig("from-euler", {"dim": -1, "chi": [1, 2, 3, 4]}))
    assert events == [("start", "topology"), ("error", "from-euler")]


def test_missing_parameters():
    with pytest.raises(UsageError):
        CommandConfig("rnc").require("n")
    with pytest.raises(UsageError):
        EddDispatcher().run_command(CommandConfig("surface-p3", {"d": 3}))


# ==================== Models ====================

def test_report_round_trip():
    report = EddReport(value=23, method=EddMethod.PLANE_CURVE, intermediates={"R": 8}, warnings=["w"])
    data = report.to_dict()
    assert data["edd"] == "23"
    back = EddReport.from_dict(data)
    assert back.value == 23
    assert back.method == EddMethod.PLANE_CURVE
    assert back.warnings == ["w"]


def test_model_round_trips():
    spec = ProductSpec((2, 3), (1, 2), Coordinates.INVARIANT)
    assert ProductSpec.from_dict(spec.to_dict()) == spec
    data = EulerData(2, 4, 2, 2, 2)
    assert EulerData.from_dict(data.to_dict()) == data


# ==================== Configuration ====================

def test_smoothness_bound_from_environment(monkeypatch):
    assert get_smoothness_bound() == DEFAULT_SMOOTHNESS_BOUND
    monkeypatch.setenv("EDD_SMOOTHNESS_BOUND", "9")
    assert get_smoothness_bound() == 9
    monkeypatch.setenv("EDD_SMOOTHNESS_BOUND", "many")
    assert get_smoothness_bound() == DEFAULT_SMOOTHNESS_BOUND
    monkeypatch.setenv("EDD_SMOOTHNESS_BOUND", "0")
    assert get_smoothness_bound() == DEFAULT_SMOOTHNESS_BOUND


def test_log_level_from_environment(monkeypatch, capsys):
    monkeypatch.delenv("EDD_LOG_LEVEL", raising=False)
    assert get_log_level() == "WARNING"
    monkeypatch.setenv("EDD_LOG_LEVEL", "info")
    assert get_log_level() == "INFO"
    monkeypatch.setenv("EDD_LOG_LEVEL", "FOO")
    assert get_log_level() == "WARNING"

    report = run_json(capsys, "from-euler", "--dim", "2", "--chi", "4,2,2,2")
    assert report["edd"] == "2"

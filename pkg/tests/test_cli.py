import json

import pytest

from pfgr import cli, geometry


def window_config(**extra):
    base = dict(suites=("window",), dp_cutoff=3, dx_cutoff=3)
    base.update(extra)
    return cli.SuiteConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        cli.SuiteConfig(d=6).validate()
    with pytest.raises(ValueError):
        cli.SuiteConfig(q=15).validate()
    with pytest.raises(ValueError):
        cli.SuiteConfig(suites=("nope",)).validate()
    cli.SuiteConfig().validate()


def test_window_suite_report_passes():
    report = cli.run(window_config())
    assert report.passed
    names = {c["check_name"] for c in report.checks}
    assert "window.strong_exceptionality_gr" in names


def test_report_json_deterministic():
    a = cli.run(window_config()).to_json()
    b = cli.run(window_config()).to_json()
    assert a == b
    payload = json.loads(a)
    assert payload["schema_version"] == 1
    assert payload["overall"] == "pass"
    for check in payload["checks"]:
        assert {"check_name", "claim", "parameters", "verdict", "witness"} <= set(check)


def test_oversized_rectangle_fails_with_witness():
    report = cli.run(window_config(l_bound=3, m_bound=8))
    assert not report.passed
    failing = [c for c in report.checks if c["verdict"] == "fail"]
    assert any(c["witness"].get("violations") for c in failing)


def test_main_exit_codes(tmp_path):
    out = tmp_path / "report.json"
    code = cli.main(["window", "--dp-cutoff", "2", "--dx-cutoff", "2",
                     "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["overall"] == "pass"
    code = cli.main(["window", "--dp-cutoff", "2", "--dx-cutoff", "2",
                     "--rect", "3,8"])
    assert code == 1
    code = cli.main(["window", "--q", "15"])
    assert code == 2
    code = cli.main(["run", "--suite", "window", "--d", "6"])
    assert code == 2


def test_smaller_dimension_window_suite():
    code = cli.main(["run", "--suite", "window", "--d", "5",
                     "--dp-cutoff", "4", "--dx-cutoff", "4"])
    assert code == 0


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"d": 5, "dp_cutoff": 2, "dx_cutoff": 2,
                               "suites": ["window"]}))

    class Args:
        command = "run"
        config = str(cfg)
        field = None
        q = None
        seed = None
        d = 7
        dp_cutoff = None
        dx_cutoff = None
        trunc = None
        samples = None
        census_q = None
        rect = None
        suite = None

    config = cli.config_from_args(Args())
    # the explicit flag beats the file; the file beats the default
    assert config.d == 7
    assert config.dp_cutoff == 2
    assert config.suites == ("window",)


def test_census_flag_parsing():
    class Args:
        command = "run"
        config = None
        field = None
        q = None
        seed = None
        d = None
        dp_cutoff = None
        dx_cutoff = None
        trunc = None
        samples = None
        census_q = "2,3"
        rect = None
        suite = ["geometry"]

    config = cli.config_from_args(Args())
    assert config.census_qs == (2, 3)
    assert config.suites == ("geometry",)


def test_model_gen_and_show(tmp_path):
    path = tmp_path / "model.json"
    assert cli.main(["model", "gen", "--seed", "3", "--out", str(path)]) == 0
    stored = geometry.model_from_json(path.read_text())
    assert stored.d == 7
    assert cli.main(["model", "show", str(path)]) == 0


def test_full_json_report_schema(tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["run", "--suite", "window", "--dp-cutoff", "2",
                     "--dx-cutoff", "2", "--format", "json", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["config"]["suites"] == ["window"]

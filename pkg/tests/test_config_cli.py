import csv
import io
import json
import re

import pytest

from alphatime import cli
from alphatime.config import ConfigError, ExperimentConfig, FieldSpec, coerce, parse_text, resolve
from alphatime.experiments import CATALOG, parse_sine_sum
from alphatime.report import write_csv


# -- config ---------------------------------------------------------------------------------------

@pytest.mark.parametrize("kind, text, value", [
    ("int", "1e6", 1_000_000),
    ("int", "42", 42),
    ("float", "0.5", 0.5),
    ("float", "1/4", 0.25),
    ("bool", "true", True),
    ("bool", "No", False),
    ("str", '"sin(x)"', "sin(x)"),
    ("alpha", "0.5", "1/2"),
    ("alpha", "3/2", "3/2"),
    ("floats", "[0.5, 1, 2]", [0.5, 1.0, 2.0]),
    ("floats", "1", [1.0]),
    ("alphas", "1/2, 1/3", ["1/2", "1/3"]),
])
def test_coerce(kind, text, value):
    assert coerce(kind, text) == value


@pytest.mark.parametrize("kind, text", [("int", "1.5"), ("float", "abc"), ("bool", "maybe"),
                                        ("alpha", "5/2"), ("floats", "1,,2"), ("nope", "1")])
def test_coerce_errors(kind, text):
    with pytest.raises(ConfigError):
        coerce(kind, text)


def test_parse_text_comments_and_separators():
    raw = parse_text("# header\nexperiment = thm21\nkappa: 1  # inline\n\nseed=7\n")
    assert raw == {"experiment": "thm21", "kappa": "1", "seed": "7"}


@pytest.mark.parametrize("text", ["a = 1\na = 2", "just words", "bad key = 1"])
def test_parse_text_errors(text):
    with pytest.raises(ConfigError):
        parse_text(text)


def test_resolve_suggests_near_key():
    fields = {"kappa": FieldSpec("floats", [1.0])}
    with pytest.raises(ConfigError, match="did you mean 'kappa'"):
        resolve("thm21", {"kapa": "1"}, fields)


def test_resolve_fills_defaults_and_overrides():
    fields = {"kappa": FieldSpec("floats", [1.0])}
    cfg = resolve("thm21", {"seed": "3"}, fields, {"workers": 2})
    assert cfg["kappa"] == [1.0] and cfg["seed"] == 3 and cfg["workers"] == 2


def test_resolve_rejects_mismatched_experiment_and_workers():
    with pytest.raises(ConfigError):
        resolve("thm21", {"experiment": "btp"}, {})
    with pytest.raises(ConfigError):
        resolve("thm21", {"workers": "0"}, {})


def test_config_hash_is_canonical():
    a = ExperimentConfig("x", {"b": 1, "a": 2})
    b = ExperimentConfig("x", {"a": 2, "b": 1})
    assert a.hash == b.hash and len(a.hash) == 64
    assert ExperimentConfig("x", {"a": 3, "b": 1}).hash != a.hash


def test_parse_sine_sum():
    c = parse_sine_sum("sin(x)+0.5*sin(3x)")
    assert [m[0] for m in c.modes] == [1, 3]
    assert len(parse_sine_sum("bump").modes) == 20
    assert len(parse_sine_sum("bump:8").modes) == 8
    with pytest.raises(ConfigError):
        parse_sine_sum("cos(x)")


# -- CSV ----------------------------------------------------------------------------------------

def test_csv_is_rfc4180(tmp_path):
    p = tmp_path / "r.csv"
    write_csv(p, [{"a": 1, "b": "x,y"}, {"a": 0.1, "c": 'q"t'}])
    raw = p.read_bytes()
    assert raw.count(b"\r\n") == 3
    rows = list(csv.reader(io.StringIO(raw.decode("utf-8"))))
    assert rows == [["a", "b", "c"], ["1", "x,y", ""], ["0.1", "", 'q"t']]


# -- CLI ----------------------------------------------------------------------------------------

def test_catalog_has_ten_anchored_entries():
    cat = cli.list_experiments()
    assert [e["id"] for e in cat] == ["thm21", "thm22", "thm23", "thm24", "thm25", "btp", "exit", "skbm",
                                      "samplers", "densities"]
    assert all(e["anchor"] and e["description"] for e in cat)


def test_list_command(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    assert all(e in out for e in CATALOG)


def test_unknown_experiment_suggests(capsys, tmp_path):
    assert cli.main(["run", "--experiment", "thm12", "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "thm21" in err


def test_bad_config_key_exit_code(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("kapa = 1\n")
    assert cli.main(["run", "-e", "thm21", "-c", str(cfg), "--out", str(tmp_path)]) == 2
    assert "kappa" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert cli.main(["run", "-e", "thm21", "-c", str(tmp_path / "none.cfg"), "--out", str(tmp_path)]) == 2


def _thm21(tmp_path, name, workers=1):
    cfg = tmp_path / "thm21.cfg"
    cfg.write_text("experiment = thm21\nkappa = 1\nt_grid = [0.5, 1, 2]\nseed = 42\nmc_n = 20000\n")
    out = tmp_path / name
    status = cli.main(["run", "-e", "thm21", "-c", str(cfg), "--out", str(out), "--workers", str(workers)])
    return status, out


def test_thm21_run_is_byte_identical(tmp_path):
    s1, a = _thm21(tmp_path, "a")
    s2, b = _thm21(tmp_path, "b")
    assert s1 == s2 == 0
    for name in ("thm21.json", "thm21.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_report_echoes_config(tmp_path):
    _, out = _thm21(tmp_path, "a")
    rep = json.loads((out / "thm21.json").read_text())
    assert rep["config"]["kappa"] == [1.0] and rep["config"]["seed"] == 42
    assert len(rep["config_hash"]) == 64
    assert rep["passed"] is True and rep["failure"] is None
    assert not re.search(r"\d{4}-\d{2}-\d{2}", json.dumps(rep))  # no timestamps


def test_worker_count_keeps_csv(tmp_path):
    _, a = _thm21(tmp_path, "a", workers=1)
    _, b = _thm21(tmp_path, "b", workers=2)
    assert (a / "thm21.csv").read_bytes() == (b / "thm21.csv").read_bytes()


def test_out_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("ALPHATIME_OUT", str(tmp_path / "env"))
    cfg = tmp_path / "c.cfg"
    cfg.write_text("mc_n = 0\n")
    assert cli.main(["run", "-e", "btp", "-c", str(cfg)]) == 0
    assert (tmp_path / "env" / "btp.json").exists()


def test_failing_criterion_exit_code(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("mc_n = 0\ntolerance = 1e-30\n")
    assert cli.main(["run", "-e", "thm21", "-c", str(cfg), "--out", str(tmp_path)]) == 1


def test_bad_test_function_exit_code(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("f = cos(x)\nmc_n = 0\n")
    assert cli.main(["run", "-e", "skbm", "-c", str(cfg), "--out", str(tmp_path)]) == 2


def test_numerical_failure_exit_code(tmp_path):
    # a stencil that crosses t = 0 is a numerical failure, and the report is still written
    cfg = tmp_path / "c.cfg"
    cfg.write_text("mc_n = 0\nt_grid = 0.01\nbase_step = 0.5\n")
    assert cli.main(["run", "-e", "thm21", "-c", str(cfg), "--out", str(tmp_path)]) == 3
    rep = json.loads((tmp_path / "thm21.json").read_text())
    assert rep["failure"].startswith("StencilError")


def test_skbm_config_example(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text('experiment = skbm\nalpha = "1/2"\nf = sin(x)+sin(2x)\nmc_n = 0\n')
    assert cli.main(["run", "-e", "skbm", "-c", str(cfg), "--out", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "skbm.json").read_text())
    assert rep["passed"] is True and rep["records"]


def test_exit_config_example_shape(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("experiment = exit\nn = 1\nR = 1\nx = 0\nN = 2000\nh = [1e-2, 5e-3, 2.5e-3]\n")
    cli.main(["run", "-e", "exit", "-c", str(cfg), "--out", str(tmp_path)])
    rep = json.loads((tmp_path / "exit.json").read_text())
    assert rep["extras"]["exit"]["oracle"] == 0.5
    assert len(rep["extras"]["exit"]["levels"]) == 3

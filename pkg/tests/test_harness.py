import csv
import json
import math

import pytest

from ncverify.cli import main
from ncverify.errors import ConfigError
from ncverify.harness import PolySpec, RunOptions, random_polynomial, run_check, run_scenarios, scenario_from_dict
from ncverify.harness.catalogue import default_scenarios
from ncverify.harness.report import CSV_HEADER
from ncverify.harness.scenario import load_config


def _sc(**kw):
    base = {"id": "s", "algebra": "free", "check": "hs-tail"}
    base.update(kw)
    return scenario_from_dict(base)


def test_hs_tail_literal_example():
    s = _sc(d=2, t_grid=[0.5], p_list=[4], polynomial={"literal": [{"word": "g1*g2", "re": 1}, {"word": "g2*g1", "re": 1}]})
    (row,) = run_check(s)
    assert row.status == "pass"
    # both sides scale exactly: the decay factor is e^{-td} and lhs / rhs is 1
    assert row.params["decay"] == pytest.approx(math.exp(-1.0), abs=1e-12)
    assert row.ratio == pytest.approx(1.0, abs=1e-12)


def test_moment_cmp_example():
    s = _sc(check="moment-cmp", d=1, options={"pairs": [[2, 4]]}, polynomial={"literal": [{"word": "e", "re": 1}, {"word": "g1", "re": 1}]})
    rows = run_check(s)
    first = rows[0]
    assert first.lhs == pytest.approx(6 ** 0.25, abs=1e-12)
    assert first.rhs == pytest.approx(3 * math.sqrt(2), abs=1e-12)
    assert all(r.status == "pass" for r in rows)


def test_torus_sharpness_example():
    s = _sc(algebra="qtorus", check="sharpness", params={"n": 2, "theta12": 0.3}, d=3, t_grid=[0.2, 1.0], p_list=[4])
    rows = run_check(s)
    assert all(r.status == "pass" for r in rows)
    assert all(abs(r.lhs - r.rhs) < 1e-12 for r in rows)


def test_literal_outside_population_is_an_error_row():
    s = _sc(d=2, polynomial={"literal": [{"word": "g1", "re": 1}]})
    (row,) = run_check(s)
    assert row.status == "error" and "tail space" in row.params["error"]


def test_unknown_check_and_bad_fields():
    with pytest.raises(ConfigError):
        run_check(_sc(check="nope"))
    with pytest.raises(ConfigError):
        _sc(p_list=[3])
    with pytest.raises(ConfigError):
        _sc(algebra="qgauss", p_list=["inf"])
    with pytest.raises(ConfigError):
        _sc(polynomial={"random": {"count": 3}})
    with pytest.raises(ConfigError):
        _sc(colour="blue")


@pytest.mark.parametrize("algebra,params", [("free", {"n": 2}), ("qgauss", {"dimH": 2}), ("qtorus", {"n": 2, "theta12": 0.3})])
def test_random_polynomial_contract(algebra, params):
    spec = PolySpec(algebra, params, min_degree=2, max_degree=4, support_size=6, holomorphic=True)
    x = random_polynomial(7, spec)
    y = random_polynomial(7, spec)
    assert x.coeffs == y.coeffs
    assert x.low_degree() >= 2 and x.degree() <= 4
    for c in x.coeffs.values():
        assert -1 <= c.real <= 1 and -1 <= c.imag <= 1
    if algebra != "qgauss":
        assert x.is_holomorphic()


def test_random_polynomial_non_holomorphic_and_empty():
    x = random_polynomial(3, PolySpec("free", {"n": 2}, 3, 3, 8, holomorphic=False))
    assert x.low_degree() == 3
    assert not x.is_holomorphic()
    with pytest.raises(ConfigError):
        random_polynomial(1, PolySpec("free", {"n": 2}, 4, 2))
    with pytest.raises(ConfigError):
        random_polynomial(1, PolySpec("qgauss", {}, 0, 2, holomorphic=False))


def test_inf_rows_are_estimates_unless_opted_in():
    s = _sc(algebra="qtorus", params={"n": 2, "theta12": 0.2, "weyl": {"a": 1, "b": 5}}, d=1, p_list=["inf"],
            polynomial={"literal": [{"alpha": [1, 0], "re": 1}, {"alpha": [1, 1], "re": 0.5}]})
    (row,) = run_check(s)
    assert row.status == "estimate"
    (row,) = run_check(s, RunOptions(hard_inf=True))
    assert row.status in ("pass", "fail")


def test_rows_are_reproducible_and_sorted():
    a = _sc(id="b", polynomial={"random": {"seed": 5, "count": 3}}, p_list=[2, 4])
    b = _sc(id="a", check="gap-low", polynomial={"random": {"seed": 6, "count": 2}})
    rows1 = run_scenarios([a, b])
    rows2 = run_scenarios([b, a])
    assert [r.scenario for r in rows1][0] == "a"
    assert [(r.lhs, r.rhs) for r in rows1] == [(r.lhs, r.rhs) for r in rows2]


def test_default_catalogue_ids_unique_and_sorted():
    ids = [s.id for s in default_scenarios()]
    assert ids == sorted(ids) and len(ids) == len(set(ids))


def test_cli_end_to_end(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"scenarios": [
        {"id": "hs", "algebra": "free", "check": "hs-tail", "d": 1, "t_grid": [0.5], "p_list": [2, 4],
         "polynomial": {"random": {"seed": 1, "count": 2, "max_degree": 3}}},
        {"id": "gram", "algebra": "qgauss", "check": "gram-psd", "params": {"q": 0.5, "dimH": 1, "K": 3}},
    ]}))
    out, js = tmp_path / "r.csv", tmp_path / "r.json"
    assert main(["run", "--config", str(cfg), "--out", str(out), "--json", str(js), "--quiet"]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_HEADER
    data = json.loads(js.read_text())
    assert len(data) == len(rows) - 1
    assert [r["scenario"] for r in data] == sorted(r["scenario"] for r in data)
    assert len(load_config(cfg)) == 2


def test_cli_bad_config_exit_code(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    assert main(["run", "--config", str(cfg)]) == 2
    cfg.write_text(json.dumps([{"id": "x", "algebra": "free", "check": "hs-tail", "p_list": [3]}]))
    assert main(["run", "--config", str(cfg)]) == 2
    assert main(["run"]) == 2


def test_cli_error_row_gives_nonzero_exit(tmp_path, capsys):
    # a degree-2 literal is not in the degree-3 tail space
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps([{"id": "bad", "algebra": "free", "check": "hs-tail", "d": 3, "t_grid": [0.5],
                                "polynomial": {"literal": [{"word": "g1*g2", "re": 1}]}}]))
    assert main(["run", "--config", str(cfg)]) == 1
    assert "ERROR" in capsys.readouterr().out

import csv
import io
import json

import pytest

from erm_majorities.core import InvalidInput
from erm_majorities.experiments import (
    METRICS,
    ExperimentConfig,
    build_problem,
    default_lower_grid,
    emit_report,
    reduction_trial,
    load_config,
    load_summary_config,
    lower_bound_thresholds,
    parse_config_text,
    records_csv,
    run_coupon,
    run_lower_bound,
    run_trial,
    run_trials,
    run_upper_bound,
    summary_json,
)


def test_bad_erm_on_empty_sample():
    cfg = ExperimentConfig(family="cantor", d=3, eps=0.05, learner="erm_bad", splitter="none")
    rec = run_trial(cfg, 0, 0)
    assert rec.metrics["majority_error"] == pytest.approx(0.2, abs=1e-15)
    assert rec.n_voters == 1


def test_consistent_target_class_gives_zero():
    cfg = ExperimentConfig(family="random", domain_size=4, n_labels=2, n_hypotheses=1, learner="erm",
                           splitter="none")
    rec = run_trial(cfg, 5, 0)
    assert all(rec.metrics[k] == 0 for k in METRICS)


def test_trial_is_deterministic():
    cfg = ExperimentConfig(d=4, eps=0.02, splitter="bagging", rho=0.5)
    assert run_trial(cfg, 40, 3) == run_trial(cfg, 40, 3)
    assert run_trial(cfg, 40, 3).metrics == run_trial(cfg, 40, 3).metrics


def test_config_validation():
    with pytest.raises(InvalidInput):
        ExperimentConfig(m_grid=(10, 10))
    with pytest.raises(InvalidInput):
        ExperimentConfig(trials=0)
    with pytest.raises(InvalidInput):
        ExperimentConfig(splitter="quarters")
    with pytest.raises(InvalidInput):
        ExperimentConfig.from_dict({"nonsense": 1})
    with pytest.raises(InvalidInput):
        ExperimentConfig(tie_policy="coin")


def test_config_text_round_trip(tmp_path):
    text = "# lower bound\nd = 5\neps=0.02\nm-grid = 10, 20\nsplitter = hanneke\n"
    assert parse_config_text(text)["m_grid"] == "10, 20"
    p = tmp_path / "run.cfg"
    p.write_text(text)
    cfg = load_config(p, trials=7)
    assert cfg == ExperimentConfig(d=5, eps=0.02, m_grid=(10, 20), splitter="hanneke", trials=7)
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


def test_reduction_inequality_on_random_classes():
    for splitter in ("hanneke", "bagging", "three"):
        cfg = ExperimentConfig(family="random", domain_size=4, n_labels=3, n_hypotheses=10,
                               learner="erm", splitter=splitter, rho=0.5, seed=2)
        for t in range(20):
            out = reduction_trial(cfg, 9, t)
            for p in ("idk", "first_voter", "label_order"):
                assert out[f"multiclass_{p}"] <= out["binary_idk"] + 1e-12
            assert out["multiclass_idk"] >= max(out["multiclass_first_voter"], out["multiclass_label_order"])


def test_parallel_matches_serial():
    cfg = ExperimentConfig(d=3, eps=0.05, m_grid=(6, 12), trials=6, splitter="hanneke")
    assert run_trials(cfg, workers=1) == run_trials(cfg, workers=2)


def test_report_files(tmp_path):
    cfg = ExperimentConfig(d=3, eps=0.05, m_grid=(6, 12, 24), trials=5)
    res = run_lower_bound(cfg)
    rec, summ = emit_report(res, tmp_path / "a")
    rows = list(csv.reader(io.StringIO(rec.read_text())))
    assert rows[0] == ["m", "trial", "metric", "value"]
    assert len(rows) - 1 == 3 * 5 * len(METRICS)
    assert load_summary_config(summ) == cfg
    doc = json.loads(summ.read_text())
    assert doc["seed"] == 0
    assert set(doc["aggregates"]) == {"6", "12", "24"}
    emit_report(run_lower_bound(cfg), tmp_path / "b")
    assert (tmp_path / "a" / "records.csv").read_bytes() == (tmp_path / "b" / "records.csv").read_bytes()
    assert (tmp_path / "a" / "summary.json").read_bytes() == (tmp_path / "b" / "summary.json").read_bytes()


def test_lower_bound_default_grid():
    ts = lower_bound_thresholds(10, 0.01, 0.05)
    assert ts["majority_d"] == pytest.approx(62.5)
    assert 277 < ts["single_erm"] < 279
    res = run_lower_bound(ExperimentConfig(d=2, eps=0.05, trials=2))
    assert tuple(res.aggregates) == default_lower_grid(2, 0.05, 0.05)
    assert res.config.m_grid == default_lower_grid(2, 0.05, 0.05)


def test_upper_bound_requires_explicit_class():
    with pytest.raises(InvalidInput):
        run_upper_bound(ExperimentConfig(family="cantor", m_grid=(10,)))
    res = run_upper_bound(ExperimentConfig(family="cantor-explicit", d=2, domain_size=8,
                                           m_grid=(12, 24), trials=4))
    assert res.extra["graph_dimension"] == 2
    assert set(res.extra["c_hat"]) == {12, 24}
    assert summary_json(res) == summary_json(res)


def test_erm_learner_on_cantor_is_exact():
    cfg = ExperimentConfig(family="cantor", d=2, eps=0.05, learner="erm", splitter="three", m_grid=(30,),
                           trials=3)
    problem = build_problem(cfg)
    for t in range(3):
        assert run_trial(cfg, 30, t, problem).metrics["majority_error"] == 0


def test_coupon_config():
    stats = run_coupon(ExperimentConfig(d=2, eps=0.1, trials=50))
    assert stats.domain_size == 5
    assert stats.counts.min() >= 3
    assert stats.to_json()["trials"] == 50


def test_records_csv_uses_repr_floats():
    cfg = ExperimentConfig(d=3, eps=0.05, m_grid=(9,), trials=2)
    text = records_csv(run_lower_bound(cfg))
    values = [row[3] for row in csv.reader(io.StringIO(text))][1:]
    assert all(float(v) == float(repr(float(v))) for v in values)

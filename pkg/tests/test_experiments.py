import csv
import io
import json
import math

import numpy as np
import pytest
from scipy import stats

from raagrand.experiments import (
    ExperimentConfig,
    emit_report,
    pooled_chi_square,
    report_to_csv,
    report_to_json,
    run_betti_poisson_experiment,
    run_dimension_experiment,
    run_experiment,
    run_moment_experiment,
    run_tc_experiment,
    total_variation_to_poisson,
)
from raagrand.graph import RNG_ALGORITHM, Graph


def test_degenerate_betti():
    rep = run_betti_poisson_experiment(ExperimentConfig("betti", n=10, p=1.0, r=2))
    assert [t["b_r"] for t in rep.trials] == [45]
    rep = run_experiment(ExperimentConfig("betti", n=10, p=0.0, r=3, trials=3))
    assert [t["b_r"] for t in rep.trials] == [0, 0, 0]


def test_degenerate_dimension():
    rep = run_dimension_experiment(ExperimentConfig("dimension", n=20, p=1.0))
    assert rep.trials[0]["cd"] == 20
    rep = run_dimension_experiment(ExperimentConfig("dimension", n=20, p=0.0, trials=2))
    assert {t["cd"] for t in rep.trials} == {1}


def test_degenerate_moment():
    rep = run_moment_experiment(ExperimentConfig("moment", n=4, p=1.0, r=2))
    assert rep.trials[0]["x"] == 6
    assert rep.theory["expected_x"] == pytest.approx(6)
    rep = run_moment_experiment(ExperimentConfig("moment", n=9, p=1.0, r=3))
    assert rep.trials[0]["x"] == math.factorial(9) // (6 * 6 * 6)
    rep = run_moment_experiment(ExperimentConfig("moment", n=9, p=0.0, r=2))
    assert rep.trials[0]["x"] == 0


def test_fixed_graph_tc():
    rep = run_tc_experiment(ExperimentConfig("tc", graph=Graph.complete(7), trials=2))
    assert rep.trials[0]["pair_r"] == 3
    assert (rep.trials[0]["tc_lower"], rep.trials[0]["tc_upper"]) == (7, 15)
    assert rep.config["n"] == 7 and rep.trials[0]["seed"] is None


def test_fixed_graph_from_file(tmp_path):
    from raagrand.graph import write_graph

    path = tmp_path / "c4.txt"
    write_graph(Graph.cycle(4), path)
    rep = run_tc_experiment(ExperimentConfig("tc", graph_path=str(path)))
    assert rep.trials[0]["pair_r"] == 2 and rep.config["graph_path"] == str(path)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="nope", n=5, p=0.5),
        dict(kind="betti", n=5, p=0.5),
        dict(kind="betti", n=5, p=0.5, r=1),
        dict(kind="betti", n=5, p=0.5, c=1.0, r=2),
        dict(kind="betti", n=5, r=2),
        dict(kind="dimension", n=5, p=1.5),
        dict(kind="dimension", n=5, p=0.5, trials=0),
        dict(kind="dimension", n=5, p=0.5, epsilon=0.7),
        dict(kind="moment", n=5, p=0.5, r=3),
        dict(kind="tc", n=5, p=0.5, format="xml"),
        dict(kind="tc", n=5, p=0.5, seed=-1),
    ],
)
def test_invalid_configs(kwargs):
    with pytest.raises(ValueError):
        ExperimentConfig(**kwargs)


def test_betti_report_schema():
    rep = run_experiment(ExperimentConfig("betti", n=40, r=2, c=2.0, trials=50, seed=3))
    d = json.loads(report_to_json(rep))
    assert set(d) == {
        "config", "rng_algorithm", "theory", "empirical", "statistics", "checks", "trials", "wall_time_ms",
    }
    assert set(d["theory"]) >= {
        "lambda_n", "lambda_limit", "z", "matula_window", "tc_window", "expected_x", "second_moment_ratio",
    }
    assert set(d["empirical"]) >= {"pmf", "mean", "variance", "fractions"}
    assert set(d["statistics"]) >= {"tv_distance", "chi_square", "dof"}
    assert d["rng_algorithm"] == RNG_ALGORITHM
    assert d["theory"]["lambda_n"] == pytest.approx(math.comb(40, 2) * 4 / 40**2)
    assert d["theory"]["lambda_limit"] == pytest.approx(2.0)
    assert math.fsum(d["empirical"]["pmf"].values()) == pytest.approx(1)
    assert 0 <= d["statistics"]["tv_distance"] <= 1


def test_dimension_fractions_sum_to_one():
    rep = run_dimension_experiment(ExperimentConfig("dimension", n=40, p=0.5, trials=20))
    f = rep.empirical["fractions"]
    assert f["in_window"] + f["outside_window"] == pytest.approx(1)


def test_tc_ordered_in_every_trial():
    rep = run_tc_experiment(ExperimentConfig("tc", n=30, p=0.5, trials=20, seed=9))
    assert rep.empirical["fractions"]["ordered"] == 1.0
    assert all(t["tc_lower"] <= t["tc_upper"] for t in rep.trials)


def test_moment_bound_check():
    rep = run_moment_experiment(ExperimentConfig("moment", n=16, p=0.5, r=2, trials=200, seed=1))
    e = rep.empirical
    assert e["second_moment_bound"] == pytest.approx(e["mean"] ** 2 / e["second_moment"])
    assert rep.checks["positive_at_least_bound_minus_4se"]
    assert rep.theory["second_moment_ratio"] is not None


def test_csv_has_one_row_per_trial():
    rep = run_experiment(ExperimentConfig("betti", n=20, p=0.3, r=3, trials=17, format="csv"))
    text = report_to_csv(rep)
    head, summary = text.split("\n\n", 1)
    rows = list(csv.reader(io.StringIO(head)))
    assert rows[0] == ["trial", "seed", "edge_count", "b_r"]
    assert len(rows) - 1 == 17
    keys = [r[0] for r in csv.reader(io.StringIO(summary))]
    assert "statistics.tv_distance" in keys and "theory.lambda_n" in keys


def test_determinism_and_worker_independence():
    base = dict(kind="tc", n=25, p=0.5, trials=12, seed=42)
    a = report_to_json(run_experiment(ExperimentConfig(**base)), include_wall_time=False)
    b = report_to_json(run_experiment(ExperimentConfig(**base)), include_wall_time=False)
    c = report_to_json(run_experiment(ExperimentConfig(**base, workers=2)), include_wall_time=False)
    assert a == b == c
    d = report_to_json(run_experiment(ExperimentConfig(**{**base, "seed": 43})), include_wall_time=False)
    assert d != a


def test_trial_order_does_not_matter():
    rep = run_experiment(ExperimentConfig("betti", n=30, p=0.2, r=3, trials=40, seed=5))
    values = [t["b_r"] for t in rep.trials]
    lam = rep.theory["lambda_n"]
    shuffled = values[::-1]
    assert total_variation_to_poisson(values, lam) == total_variation_to_poisson(shuffled, lam)
    assert pooled_chi_square(values, lam) == pooled_chi_square(shuffled, lam)


def test_tv_distance_against_direct_sum():
    values = [0, 0, 1, 2, 2, 2, 5]
    lam = 1.7
    top = 15
    emp = np.bincount(values, minlength=top + 1) / len(values)
    pmf = stats.poisson.pmf(np.arange(top + 1), lam)
    expected = 0.5 * (np.abs(emp - pmf).sum() + stats.poisson.sf(top, lam))
    assert total_variation_to_poisson(values, lam) == pytest.approx(expected, abs=1e-12)


def test_chi_square_pools_small_cells():
    rng = np.random.default_rng(0)
    values = rng.poisson(3.0, 2000).tolist()
    statistic, dof, p_value = pooled_chi_square(values, 3.0)
    assert dof >= 1 and 0 <= p_value <= 1
    # a badly wrong mean is rejected
    assert pooled_chi_square(values, 6.0)[2] < 1e-6
    assert pooled_chi_square([0, 0, 0], 0.01) == (None, 0, None)


def test_emit_report(tmp_path):
    rep = run_experiment(ExperimentConfig("dimension", n=10, p=0.5, trials=3))
    emit_report(rep, tmp_path / "r.json")
    assert json.loads((tmp_path / "r.json").read_text())["config"]["kind"] == "dimension"
    emit_report(rep, tmp_path / "r.csv", "csv")
    assert (tmp_path / "r.csv").read_text().startswith("trial,seed,cd\n")
    with pytest.raises(OSError, match="missing"):
        emit_report(rep, tmp_path / "missing" / "r.json")

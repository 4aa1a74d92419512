"""Reproducible Monte Carlo experiments on random graph groups.

Four experiment kinds are supported:

``betti``
    distribution of ``b_r`` against a Poisson law with the finite-n mean
    ``C(n, r) p^C(r, 2)``;
``dimension``
    concentration of the clique number (= cohomological dimension) in the
    window ``[floor(z - eps), floor(z + eps)]``;
``tc``
    the bracket ``2 pair_r + 1 <= TC <= 2 cd + 1`` against
    ``2 floor(z -/+ eps) + 1``;
``moment``
    the number ``X`` of ordered pairs of disjoint ``r``-cliques against its
    first two moments and the bound ``P(X > 0) >= E[X]^2 / E[X^2]``.

Trial ``i`` samples its graph from ``split_seed(seed, i)``, so results do
not depend on worker count or scheduling.  Reductions run in trial order.
All pass/fail thresholds in the ``checks`` block are finite-n calibrations
of asymptotic statements and are labelled as such.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from scipy import stats

from . import asymptotics as asy
from .cliques import clique_number, count_bicliques, count_cliques_of_size, max_disjoint_clique_size
from .graph import RNG_ALGORITHM, GnpParams, Graph, read_graph, sample_gnp, split_seed

__all__ = [
    "KINDS",
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
    "run_betti_poisson_experiment",
    "run_dimension_experiment",
    "run_tc_experiment",
    "run_moment_experiment",
    "total_variation_to_poisson",
    "pooled_chi_square",
    "emit_report",
    "report_to_json",
    "report_to_csv",
]

KINDS = ("betti", "dimension", "tc", "moment")
CALIBRATION_NOTE = "finite-n calibration of an asymptotic statement; not a threshold from theory"


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment.

    Exactly one of ``p`` and ``c`` is given, unless ``graph`` fixes the
    graph of every trial: with ``c`` the edge probability is
    ``critical_p(n, r, c)``.
    """

    kind: str
    n: int | None = None
    p: float | None = None
    r: int | None = None
    c: float | None = None
    epsilon: float = asy.DEFAULT_EPSILON
    trials: int = 1
    seed: int = 0
    output_path: str | None = None
    format: str = "json"
    graph_path: str | None = None
    graph: Graph | None = field(default=None, compare=False, repr=False)
    workers: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be 'json' or 'csv'")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.graph is None and self.graph_path is not None:
            object.__setattr__(self, "graph", read_graph(self.graph_path))
        if self.graph is not None:
            if self.c is not None:
                raise ValueError("c cannot be combined with a fixed graph")
            if self.n is not None and self.n != self.graph.n:
                raise ValueError(f"n={self.n} disagrees with the fixed graph (n={self.graph.n})")
            object.__setattr__(self, "n", self.graph.n)
        else:
            if self.n is None or self.n < 0:
                raise ValueError("n must be a non-negative integer")
            if (self.p is None) == (self.c is None):
                raise ValueError("give exactly one of p or (r, c)")
            if self.c is not None and self.r is None:
                raise ValueError("c requires r")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.kind in ("betti", "moment") and self.r is None:
            raise ValueError(f"{self.kind} experiments need r")
        if self.kind == "betti" and self.r < 2:
            raise ValueError("betti experiments need r >= 2")
        if self.kind == "moment":
            if self.r < 1:
                raise ValueError("moment experiments need r >= 1")
            if 2 * self.r > self.n:
                raise ValueError("moment experiments need 2r <= n")
        if not 0.0 < self.epsilon <= 0.5:
            raise ValueError("epsilon must lie in (0, 1/2]")

    @property
    def edge_probability(self) -> float | None:
        if self.p is not None:
            return self.p
        if self.c is not None:
            return asy.critical_p(self.n, self.r, self.c)
        return None

    def echo(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "p": self.edge_probability,
            "p_spec": {"p": self.p} if self.c is None else {"r": self.r, "c": self.c},
            "r": self.r,
            "epsilon": self.epsilon,
            "trials": self.trials,
            "seed": self.seed,
            "graph_path": self.graph_path,
            "format": self.format,
        }


@dataclass
class ExperimentReport:
    config: dict
    rng_algorithm: str
    theory: dict
    empirical: dict
    statistics: dict
    checks: dict
    trials: list[dict]
    wall_time_ms: float = 0.0

    def to_dict(self, include_wall_time: bool = True) -> dict:
        d = {
            "config": self.config,
            "rng_algorithm": self.rng_algorithm,
            "theory": self.theory,
            "empirical": self.empirical,
            "statistics": self.statistics,
            "checks": self.checks,
            "trials": self.trials,
        }
        if include_wall_time:
            d["wall_time_ms"] = self.wall_time_ms
        return d


# -- per-trial work ---------------------------------------------------------


def _trial_graph(n: int, p: float, seed: int, fixed: Graph | None) -> Graph:
    if fixed is not None:
        return fixed
    return sample_gnp(GnpParams(n, p, seed))


def _betti_trial(args) -> dict:
    n, p, r, seed, fixed = args
    g = _trial_graph(n, p, seed, fixed)
    return {"edge_count": g.edge_count, "b_r": count_cliques_of_size(g, r)}


def _dimension_trial(args) -> dict:
    n, p, _, seed, fixed = args
    return {"cd": clique_number(_trial_graph(n, p, seed, fixed))}


def _tc_trial(args) -> dict:
    n, p, _, seed, fixed = args
    g = _trial_graph(n, p, seed, fixed)
    cd = clique_number(g)
    pair_r = max_disjoint_clique_size(g)
    return {"pair_r": pair_r, "cd": cd, "tc_lower": 2 * pair_r + 1, "tc_upper": 2 * cd + 1}


def _moment_trial(args) -> dict:
    n, p, r, seed, fixed = args
    return {"x": count_bicliques(_trial_graph(n, p, seed, fixed), r)}


_TRIAL_FUNCS = {
    "betti": _betti_trial,
    "dimension": _dimension_trial,
    "tc": _tc_trial,
    "moment": _moment_trial,
}


def _run_trials(config: ExperimentConfig) -> list[dict]:
    p = config.edge_probability
    fixed = config.graph
    seeds = [None if fixed is not None else split_seed(config.seed, i) for i in range(config.trials)]
    jobs = [(config.n, p, config.r, s, fixed) for s in seeds]
    func = _TRIAL_FUNCS[config.kind]
    if config.workers > 1 and config.trials > 1:
        chunk = max(1, config.trials // (4 * config.workers))
        with ProcessPoolExecutor(config.workers) as pool:
            results = list(pool.map(func, jobs, chunksize=chunk))
    else:
        results = [func(job) for job in jobs]
    return [{"trial": i, "seed": s, **rec} for i, (s, rec) in enumerate(zip(seeds, results))]


# -- statistics ---------------------------------------------------------------


def _distribution(values: list[int]) -> dict[str, float]:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    total = len(values)
    return {str(k): counts[k] / total for k in sorted(counts)}


def _mean_var(values) -> tuple[float, float]:
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1) if n > 1 else 0.0
    return mean, var


def total_variation_to_poisson(values: list[int], lam: float) -> float:
    """Half the L1 distance between the empirical law and Poisson(``lam``).

    Bins run over ``0..max(values) + 10``; the Poisson mass beyond that is one
    extra bin where the empirical mass is zero.
    """
    top = max(values) + 10
    counts = [0] * (top + 1)
    for v in values:
        counts[v] += 1
    total = len(values)
    pmf = [asy.poisson_pmf(lam, k) for k in range(top + 1)]
    tail = max(0.0, 1.0 - math.fsum(pmf))
    return 0.5 * (math.fsum(abs(c / total - q) for c, q in zip(counts, pmf)) + tail)


def pooled_chi_square(values: list[int], lam: float, min_expected: float = 5.0):
    """Pearson chi-square of ``values`` against Poisson(``lam``).

    Cells are ``0, 1, .., m - 1`` and ``>= m`` where ``m`` is the largest
    observation; cells with expected count below ``min_expected`` are merged
    into their inner neighbour, working inward from each tail.  Returns
    ``(statistic, dof, p_value)``, or ``(None, 0, None)`` when fewer than two
    cells survive.
    """
    total = len(values)
    top = max(values)
    observed = [0] * (top + 1)
    for v in values:
        observed[v] += 1
    expected = [total * asy.poisson_pmf(lam, k) for k in range(top)]
    expected.append(max(0.0, total - math.fsum(expected)))
    cells = [[o, e] for o, e in zip(observed, expected)]
    while len(cells) > 1 and cells[-1][1] < min_expected:
        o, e = cells.pop()
        cells[-1][0] += o
        cells[-1][1] += e
    while len(cells) > 1 and cells[0][1] < min_expected:
        o, e = cells.pop(0)
        cells[0][0] += o
        cells[0][1] += e
    if len(cells) < 2:
        return None, 0, None
    statistic = math.fsum((o - e) ** 2 / e for o, e in cells)
    dof = len(cells) - 1
    return statistic, dof, float(stats.chi2.sf(statistic, dof))


# -- theory ---------------------------------------------------------------


def _theory_block(config: ExperimentConfig) -> dict:
    p = config.edge_probability
    n, r, eps = config.n, config.r, config.epsilon
    theory: dict[str, Any] = {
        "lambda_n": None,
        "lambda_limit": None,
        "z": None,
        "matula_window": None,
        "tc_window": None,
        "expected_x": None,
        "second_moment_ratio": None,
    }
    if p is None:
        return theory
    if r is not None and r >= 2 and p > 0:
        theory["lambda_n"] = asy.expected_betti(n, p, r)
        c = config.c if config.c is not None else n * p ** ((r - 1) / 2)
        theory["lambda_limit"] = asy.poisson_limit_mean(c, r)
    try:
        z = asy.z_statistic(n, p)
    except asy.DomainError:
        pass
    else:
        theory["z"] = z
        theory["matula_window"] = list(asy.matula_window(n, p, eps))
        lo, hi = theory["matula_window"]
        theory["tc_window"] = [2 * lo + 1, 2 * hi + 1]
    if config.kind == "moment" and p > 0:
        theory["expected_x"] = asy.expected_biclique_count(n, p, r)
        if 0 < p < 1 and n >= 4 * r:
            theory["second_moment_ratio"] = asy.second_moment_ratio(n, p, r).ratio
    return theory


def _empty_statistics() -> dict:
    return {"tv_distance": None, "chi_square": None, "dof": None, "chi_square_p_value": None}


# -- experiments ------------------------------------------------------------


def _finish(config, theory, empirical, statistics, checks, records, started) -> ExperimentReport:
    return ExperimentReport(
        config=config.echo(),
        rng_algorithm=RNG_ALGORITHM,
        theory=theory,
        empirical=empirical,
        statistics=statistics,
        checks={"note": CALIBRATION_NOTE, **checks},
        trials=records,
        wall_time_ms=round((time.perf_counter() - started) * 1000.0, 3),
    )


def run_betti_poisson_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Sample ``b_r`` per trial and compare with Poisson(``C(n, r) p^C(r, 2)``)."""
    if config.kind != "betti":
        raise ValueError("config.kind must be 'betti'")
    started = time.perf_counter()
    records = _run_trials(config)
    theory = _theory_block(config)
    values = [rec["b_r"] for rec in records]
    mean, var = _mean_var(values)
    lam = theory["lambda_n"]
    if lam is None:
        # fixed graph with unknown p: compare against the observed mean
        lam = mean
    statistic, dof, p_value = pooled_chi_square(values, lam)
    tv = total_variation_to_poisson(values, lam)
    p_zero = sum(1 for v in values if v == 0) / len(values)
    se = math.sqrt(var / len(values))
    empirical = {
        "pmf": _distribution(values),
        "mean": mean,
        "variance": var,
        "fractions": {"zero": p_zero},
    }
    statistics = {"tv_distance": tv, "chi_square": statistic, "dof": dof, "chi_square_p_value": p_value}
    checks = {
        "poisson_p_zero": math.exp(-lam),
        "mean_within_4se": abs(mean - lam) <= 4 * se if se > 0 else math.isclose(mean, lam, rel_tol=1e-9),
        "tv_at_most_0.1": tv <= 0.1,
    }
    return _finish(config, theory, empirical, statistics, checks, records, started)


def _top_two_mass(values: list[int]) -> tuple[float, list[int]]:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:2]
    return sum(c for _, c in ranked) / len(values), sorted(v for v, _ in ranked)


def run_dimension_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Exact clique number per trial; share inside the concentration window."""
    if config.kind != "dimension":
        raise ValueError("config.kind must be 'dimension'")
    started = time.perf_counter()
    records = _run_trials(config)
    theory = _theory_block(config)
    values = [rec["cd"] for rec in records]
    mean, var = _mean_var(values)
    two_mass, two_values = _top_two_mass(values)
    fractions: dict[str, Any] = {"two_point_mass": two_mass, "two_point_values": two_values}
    checks: dict[str, Any] = {"two_point_mass_at_least_0.9": two_mass >= 0.9}
    if theory["matula_window"] is not None:
        lo, hi = theory["matula_window"]
        inside = sum(1 for v in values if lo <= v <= hi) / len(values)
        fractions["in_window"] = inside
        fractions["outside_window"] = 1.0 - inside
        checks["in_window_at_least_0.7"] = inside >= 0.7
    empirical = {"pmf": _distribution(values), "mean": mean, "variance": var, "fractions": fractions}
    return _finish(config, theory, empirical, _empty_statistics(), checks, records, started)


def run_tc_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Per-trial TC bracket against the asymptotic window.

    Besides the window itself, the lower end is also checked relaxed by one
    clique size (``pair_r >= floor(z - eps) - 1``), which separates "bound
    fails" from "n still too small for two disjoint cliques of that size".
    """
    if config.kind != "tc":
        raise ValueError("config.kind must be 'tc'")
    started = time.perf_counter()
    records = _run_trials(config)
    theory = _theory_block(config)
    total = len(records)
    pair = [rec["pair_r"] for rec in records]
    cds = [rec["cd"] for rec in records]
    mean, var = _mean_var(pair)
    cd_mean, cd_var = _mean_var(cds)
    ordered = sum(1 for rec in records if rec["tc_lower"] <= rec["tc_upper"]) / total
    corollary = sum(1 for rec in records if rec["tc_lower"] >= 2 * rec["cd"] - 1) / total
    fractions: dict[str, Any] = {"ordered": ordered, "corollary_lower": corollary}
    checks: dict[str, Any] = {"ordered_all_trials": ordered == 1.0}
    if theory["tc_window"] is not None:
        lo_r = theory["matula_window"][0]
        tc_lo, tc_hi = theory["tc_window"]
        fractions["upper_within"] = sum(1 for rec in records if rec["tc_upper"] <= tc_hi) / total
        fractions["lower_within"] = sum(1 for rec in records if rec["tc_lower"] >= tc_lo) / total
        fractions["lower_within_relaxed"] = sum(1 for v in pair if v >= lo_r - 1) / total
        theory["relaxed_lower_pair_r"] = lo_r - 1
        checks["lower_within_relaxed_at_least_0.8"] = fractions["lower_within_relaxed"] >= 0.8
    empirical = {
        "pmf": _distribution(pair),
        "mean": mean,
        "variance": var,
        "fractions": fractions,
        "cd_mean": cd_mean,
        "cd_variance": cd_var,
        "histograms": {"pair_r": _distribution(pair), "cd": _distribution(cds)},
    }
    return _finish(config, theory, empirical, _empty_statistics(), checks, records, started)


def run_moment_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Count ordered disjoint ``r``-clique pairs per trial; compare the moments."""
    if config.kind != "moment":
        raise ValueError("config.kind must be 'moment'")
    started = time.perf_counter()
    records = _run_trials(config)
    theory = _theory_block(config)
    xs = [rec["x"] for rec in records]
    total = len(xs)
    mean, var = _mean_var(xs)
    squares = [x * x for x in xs]
    m2, var2 = _mean_var(squares)
    se_mean = math.sqrt(var / total)
    se_m2 = math.sqrt(var2 / total)
    positive = sum(1 for x in xs if x > 0) / total
    empirical: dict[str, Any] = {
        "pmf": _distribution(xs),
        "mean": mean,
        "variance": var,
        "fractions": {"positive": positive},
        "mean_se": se_mean,
        "second_moment": m2,
        "second_moment_se": se_m2,
        "ratio": m2 / mean**2 if mean > 0 else None,
    }
    checks: dict[str, Any] = {}
    if m2 > 0:
        bound = mean * mean / m2
        if total > 1:
            cov = math.fsum((x - mean) * (s - m2) for x, s in zip(xs, squares)) / (total - 1)
            g1, g2 = 2 * mean / m2, -mean * mean / m2**2
            bound_var = (g1 * g1 * var + 2 * g1 * g2 * cov + g2 * g2 * var2) / total
            bound_se = math.sqrt(max(bound_var, 0.0))
        else:
            bound_se = 0.0
        empirical["second_moment_bound"] = bound
        empirical["second_moment_bound_se"] = bound_se
        checks["positive_at_least_bound_minus_4se"] = positive >= bound - 4 * bound_se
    if theory["expected_x"] is not None:
        ex = theory["expected_x"]
        if se_mean > 0:
            checks["mean_within_4se"] = abs(mean - ex) <= 4 * se_mean
        else:
            checks["mean_within_4se"] = math.isclose(mean, ex, rel_tol=1e-9, abs_tol=1e-9)
    return _finish(config, theory, empirical, _empty_statistics(), checks, records, started)


_RUNNERS = {
    "betti": run_betti_poisson_experiment,
    "dimension": run_dimension_experiment,
    "tc": run_tc_experiment,
    "moment": run_moment_experiment,
}


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    return _RUNNERS[config.kind](config)


# -- output -------------------------------------------------------------------


def report_to_json(report: ExperimentReport, include_wall_time: bool = True) -> str:
    return json.dumps(report.to_dict(include_wall_time), indent=2) + "\n"


def _flatten(prefix: str, value, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    else:
        out.append((prefix, json.dumps(value)))


def report_to_csv(report: ExperimentReport, include_wall_time: bool = True) -> str:
    """Per-trial rows, a blank line, then a ``key,value`` summary block."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    fields = list(report.trials[0].keys())
    w.writerow(fields)
    for rec in report.trials:
        w.writerow(["" if rec[f] is None else rec[f] for f in fields])
    w.writerow([])
    w.writerow(["key", "value"])
    summary: list[tuple[str, str]] = []
    d = report.to_dict(include_wall_time)
    del d["trials"]
    _flatten("", d, summary)
    w.writerows(summary)
    return buf.getvalue()


def emit_report(report: ExperimentReport, path, format: str = "json") -> None:
    if format == "json":
        text = report_to_json(report)
    elif format == "csv":
        text = report_to_csv(report)
    else:
        raise ValueError("format must be 'json' or 'csv'")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write report to {path}: {exc.strerror or exc}") from exc

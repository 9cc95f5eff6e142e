"""Monte Carlo harness: seeded trials, exact errors, sweeps, and reports.

Every trial is keyed by ``(seed, m, trial)``; its randomness comes from a
dedicated stream, so records do not depend on execution order or on the
number of worker processes.
"""

from __future__ import annotations

import csv
import dataclasses
import functools
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .aggregation import TiePolicy, ensemble_errors, majority_error_exact
from .classes import ExplicitClass
from .constructions import (
    cantor_explicit,
    cantor_instance,
    cantor_instance_sized,
    coupon_mean,
    coupon_mean_lower_bound,
    coupon_trial,
    coupon_variance_bound,
    geometric_weights,
    random_class,
)
from .core import InvalidInput, LabeledDistribution, RandomSource, TrainingSequence
from .dimensions import graph_dimension
from .learners import BadCantorERM, CantorParams, FirstConsistentERM
from .reduction import bar_learner, lift_distribution
from .splitting import make_plan, materialize

METRICS = ("majority_error", "half_vote_error", "list_error", "bottom_rate")
FAMILIES = ("cantor", "cantor-explicit", "random")
LEARNERS = ("erm", "erm_bad")
SPLITTERS = ("hanneke", "bagging", "three", "none")

# stream tags under (seed, m, trial)
_SAMPLE, _SPLIT = 0, 1
_CLASS_STREAM = 0xC1A55


@dataclass(frozen=True)
class ExperimentConfig:
    family: str = "cantor"
    d: int = 10
    eps: float = 0.01
    domain_size: int = 0  # 0: ceil(d / (4 eps)) for Cantor families
    marginal: str = "uniform"  # uniform | geometric
    marginal_ratio: float = 0.6
    n_labels: int = 3  # random family only
    n_hypotheses: int = 8  # random family only
    learner: str = "erm_bad"
    splitter: str = "three"
    rho: float = 1.0
    delta: float = 0.05
    bag_delta: float = 0.0  # 0: use delta
    tie_policy: str = "idk"
    m_grid: tuple[int, ...] = ()
    trials: int = 200
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "m_grid", tuple(int(m) for m in self.m_grid))
        if self.family not in FAMILIES:
            raise InvalidInput(f"family must be one of {FAMILIES}")
        if self.learner not in LEARNERS:
            raise InvalidInput(f"learner must be one of {LEARNERS}")
        if self.splitter not in SPLITTERS:
            raise InvalidInput(f"splitter must be one of {SPLITTERS}")
        if self.marginal not in ("uniform", "geometric"):
            raise InvalidInput("marginal must be uniform or geometric")
        if self.tie_policy not in {p.value for p in TiePolicy}:
            raise InvalidInput(f"tie_policy must be one of {[p.value for p in TiePolicy]}")
        if self.trials < 1:
            raise InvalidInput("trials must be at least 1")
        if any(b <= a for a, b in zip(self.m_grid, self.m_grid[1:])):
            raise InvalidInput("m_grid must be strictly increasing")
        if any(m < 0 for m in self.m_grid):
            raise InvalidInput("m_grid entries must be nonnegative")
        if not 0 < self.eps <= 1:
            raise InvalidInput("eps must lie in (0, 1]")
        if not 0 < self.delta < 1:
            raise InvalidInput("delta must lie in (0, 1)")

    @property
    def policy(self) -> TiePolicy:
        return TiePolicy(self.tie_policy)

    @property
    def split_delta(self) -> float:
        return self.bag_delta or self.delta

    def replace(self, **kw) -> "ExperimentConfig":
        return dataclasses.replace(self, **kw)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["m_grid"] = list(self.m_grid)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        names = {f.name: f for f in dataclasses.fields(cls)}
        unknown = set(data) - set(names)
        if unknown:
            raise InvalidInput(f"unknown config keys: {sorted(unknown)}")
        kw = {}
        for key, value in data.items():
            kw[key] = _coerce(key, names[key].default, value)
        return cls(**kw)


def _coerce(key: str, default, value):
    try:
        if key == "m_grid":
            if isinstance(value, str):
                return tuple(int(v) for v in value.replace(",", " ").split())
            return tuple(int(v) for v in value)
        if isinstance(default, bool):
            return value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise InvalidInput(f"bad value for {key}: {value!r}") from None


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def load_config(path: str | Path, **overrides) -> ExperimentConfig:
    data = parse_config_text(Path(path).read_text())
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_dict(data)


@dataclass(frozen=True)
class Problem:
    hypothesis_class: object
    distribution: LabeledDistribution
    learner: object
    d: int


def _weights(config: ExperimentConfig, n: int):
    if config.marginal == "uniform":
        return None
    return geometric_weights(n, config.marginal_ratio)


@functools.lru_cache(maxsize=32)
def build_problem(config: ExperimentConfig) -> Problem:
    if config.family == "random":
        n = config.domain_size or 5
        rng = RandomSource(config.seed).fork(_CLASS_STREAM).generator()
        H = random_class(n, config.n_labels, config.n_hypotheses, rng)
        target = H[int(rng.integers(len(H)))]
        D = LabeledDistribution.from_target(target, weights=_weights(config, n))
        if config.learner != "erm":
            raise InvalidInput("the random family only supports learner = erm")
        return Problem(H, D, FirstConsistentERM(H), graph_dimension(H)[0])

    if config.domain_size:
        inst = cantor_instance_sized(config.d, config.domain_size)
    else:
        inst = cantor_instance(config.d, config.eps)
    n = inst.domain_size
    D = LabeledDistribution.from_target(inst.target, weights=_weights(config, n))
    H = cantor_explicit(config.d, n) if config.family == "cantor-explicit" else inst.cls
    if config.learner == "erm_bad":
        learner = BadCantorERM(CantorParams(config.d, n))
    else:
        learner = FirstConsistentERM(H)
    return Problem(H, D, learner, config.d)


@dataclass(frozen=True)
class TrialRecord:
    m: int
    trial: int
    n_voters: int
    metrics: dict = field(hash=False)


def _plan_and_sample(config: ExperimentConfig, problem: Problem, m: int, trial: int):
    base = RandomSource(config.seed).fork(m, trial)
    S = problem.distribution.sample(m, base.fork(_SAMPLE).generator())
    plan = make_plan(config.splitter, m, rho=config.rho, delta=config.split_delta,
                     r=base.fork(_SPLIT))
    return S, plan


def run_trial(config: ExperimentConfig, m: int, trial_index: int, problem: Problem | None = None) -> TrialRecord:
    problem = problem or build_problem(config)
    S, plan = _plan_and_sample(config, problem, m, trial_index)
    voters = [problem.learner(s) for s in materialize(plan, S)]
    metrics = ensemble_errors(voters, problem.distribution, config.policy)
    return TrialRecord(m, trial_index, len(voters), metrics)


def reduction_trial(config: ExperimentConfig, m: int, trial_index: int, problem: Problem | None = None) -> dict:
    """Multiclass majority error under every tie policy, next to the lifted binary one.

    The binary side trains the wrapped learner on the same index plan
    replayed over ``((x, y), 1)`` and votes with ties counted as errors.
    """
    problem = problem or build_problem(config)
    S, plan = _plan_and_sample(config, problem, m, trial_index)
    voters = [problem.learner(s) for s in materialize(plan, S)]
    out = {f"multiclass_{p.value}": majority_error_exact(voters, problem.distribution, p) for p in TiePolicy}
    lifted_learner = bar_learner(problem.learner)
    bar_voters = [lifted_learner(s) for s in materialize(plan, S.with_ones())]
    out["binary_idk"] = majority_error_exact(bar_voters, lift_distribution(problem.distribution), TiePolicy.IDK)
    return out


def _unit(args) -> TrialRecord:
    config, m, t = args
    return run_trial(config, m, t)


def run_trials(config: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    if not config.m_grid:
        raise InvalidInput("m_grid is empty")
    units = [(config, m, t) for m in config.m_grid for t in range(config.trials)]
    if workers <= 1:
        problem = build_problem(config)
        return [run_trial(config, m, t, problem) for _, m, t in units]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(_unit, units, chunksize=max(1, len(units) // (4 * workers))))
    return sorted(records, key=lambda r: (r.m, r.trial))


@dataclass
class ExperimentResult:
    kind: str
    config: ExperimentConfig
    records: list[TrialRecord]
    aggregates: dict
    extra: dict = field(default_factory=dict)

    def metric(self, name: str, m: int) -> np.ndarray:
        return np.array([r.metrics[name] for r in self.records if r.m == m])


def aggregate(records: list[TrialRecord], eps: float) -> dict:
    out: dict = {}
    for m in sorted({r.m for r in records}):
        rows = [r for r in records if r.m == m]
        per = {"trials": len(rows), "n_voters": rows[0].n_voters}
        for name in METRICS:
            v = np.array([r.metrics[name] for r in rows])
            per[name] = {
                "mean": float(np.mean(v)),
                "median": float(np.median(v)),
                "p_gt_eps": float(np.mean(v > eps)),
                "p_ge_2eps": float(np.mean(v >= 2 * eps)),
            }
        out[m] = per
    return out


def lower_bound_thresholds(d: int, eps: float, delta: float) -> dict:
    return {
        "majority_d": d / (16 * eps),
        "majority_delta": math.log(1 / delta) / (8 * eps),
        "single_erm": d * math.log(1 / (8 * math.exp(math.sqrt(2)) * eps)) / (4 * eps),
    }


def default_lower_grid(d: int, eps: float, delta: float) -> tuple[int, ...]:
    ts = lower_bound_thresholds(d, eps, delta)
    grid = {max(3, int(f * t)) for t in ts.values() for f in (0.5, 1.0, 2.0)}
    return tuple(sorted(grid))


def run_lower_bound(config: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    """Sweep ``m`` around the lower-bound thresholds on a Cantor instance."""
    if config.family == "random":
        raise InvalidInput("lower-bound experiments need a Cantor family")
    if not config.m_grid:
        config = config.replace(m_grid=default_lower_grid(config.d, config.eps, config.delta))
    records = run_trials(config, workers)
    problem = build_problem(config)
    extra = {
        "thresholds": lower_bound_thresholds(config.d, config.eps, config.delta),
        "domain_size": len(problem.distribution),
    }
    return ExperimentResult("lower-bound", config, records, aggregate(records, config.eps), extra)


def run_upper_bound(config: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    """Doubling sweep on an explicit class with a brute-forced Graph dimension.

    Reports ``c_hat = median(majority error) * m / d_G`` per ``m``.
    """
    if config.family == "cantor":
        raise InvalidInput("upper-bound experiments need an explicit class (cantor-explicit or random)")
    if not config.m_grid:
        raise InvalidInput("upper-bound experiments need an m_grid")
    problem = build_problem(config)
    H = problem.hypothesis_class
    d_graph = problem.d if not isinstance(H, ExplicitClass) else graph_dimension(H)[0]
    records = run_trials(config, workers)
    agg = aggregate(records, config.eps)
    c_hat = {m: agg[m]["majority_error"]["median"] * m / d_graph for m in config.m_grid}
    return ExperimentResult("upper-bound", config, records, agg, {"graph_dimension": d_graph, "c_hat": c_hat})


@dataclass(frozen=True)
class CouponStats:
    domain_size: int
    d: int
    counts: np.ndarray = field(repr=False)
    mean: float
    exact_mean: float
    mean_lower_bound: float
    variance: float
    variance_bound: float

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in
                ("domain_size", "d", "mean", "exact_mean", "mean_lower_bound", "variance", "variance_bound")} | {
            "trials": int(self.counts.size)}


def run_coupon(config: ExperimentConfig) -> CouponStats:
    if config.domain_size:
        n = config.domain_size
    else:
        n = CantorParams.from_eps(config.d, config.eps).domain_size
    src = RandomSource(config.seed)
    counts = np.array([coupon_trial((n, config.d), src.fork(t)) for t in range(config.trials)])
    return CouponStats(
        n, config.d, counts,
        mean=float(counts.mean()),
        exact_mean=coupon_mean(n, config.d),
        mean_lower_bound=coupon_mean_lower_bound(n, config.d),
        variance=float(counts.var(ddof=1)) if counts.size > 1 else 0.0,
        variance_bound=coupon_variance_bound(n, config.d) if config.d else math.inf,
    )


def records_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "trial", "metric", "value"])
    for r in sorted(result.records, key=lambda r: (r.m, r.trial)):
        for name in METRICS:
            w.writerow([r.m, r.trial, name, repr(float(r.metrics[name]))])
    return buf.getvalue()


def summary_json(result: ExperimentResult) -> str:
    def keyed(d):
        return {str(k): v for k, v in d.items()}

    extra = {k: keyed(v) if isinstance(v, dict) else v for k, v in result.extra.items()}
    doc = {
        "kind": result.kind,
        "seed": result.config.seed,
        "config": result.config.to_dict(),
        "aggregates": keyed(result.aggregates),
        "extra": extra,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit_report(result: ExperimentResult, path: str | Path) -> tuple[Path, Path]:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    rec, summ = out / "records.csv", out / "summary.json"
    rec.write_text(records_csv(result))
    summ.write_text(summary_json(result))
    return rec, summ


def load_summary_config(path: str | Path) -> ExperimentConfig:
    return ExperimentConfig.from_dict(json.loads(Path(path).read_text())["config"])


def sample_size_for(config: ExperimentConfig, target: float, quantile: float = 0.5,
                    m_max: int = 1 << 16) -> int:
    """Smallest ``m`` (to within a doubling-then-bisection search) whose error quantile is <= ``target``."""

    def q(m: int) -> float:
        cfg = config.replace(m_grid=(m,))
        recs = run_trials(cfg)
        return float(np.quantile([r.metrics["majority_error"] for r in recs], quantile))

    lo_min = 3 if config.splitter in ("three", "hanneke", "bagging") else 1
    hi = max(lo_min, 4)
    while q(hi) > target:
        hi *= 2
        if hi > m_max:
            raise InvalidInput(f"no m <= {m_max} reaches error {target}")
    lo = max(lo_min, hi // 2)
    if q(lo) <= target:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if q(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def erm_separation(d: int, eps_grid, trials: int = 100, seed: int = 0,
                   splitter: str = "three") -> list[dict]:
    """Sample size for median error <= eps: single bad ERM vs a majority of bad ERMs.

    Each eps uses its own Cantor instance over ``[ceil(d / 4 eps)]``.
    """
    rows = []
    for eps in eps_grid:
        base = ExperimentConfig(family="cantor", d=d, eps=eps, learner="erm_bad", trials=trials, seed=seed)
        m_single = sample_size_for(base.replace(splitter="none"), eps)
        m_major = sample_size_for(base.replace(splitter=splitter), eps)
        rows.append({
            "eps": eps,
            "m_single": m_single,
            "m_majority": m_major,
            "single_scaled": m_single * eps / d,
            "majority_scaled": m_major * eps / d,
        })
    return rows

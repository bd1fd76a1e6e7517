"""End-to-end orchestration: rank, cluster, pool, search, evaluate.

Every stage draws randomness from the run seed plus a fixed stage offset,
so a run is a pure function of (dataset, config).  The before/after
comparison reuses the identical evaluation split seeds, which also makes
the "after" overall accuracy equal the best fitness the search reports.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from .classifier import ClassificationMetrics, evaluate_subset, mean_metrics
from .data import FeatureMatrix, LabelVector
from .feature_space import build_feature_space, cluster_features
from .ga import GAResult, SubsetOptimizer
from .rankers import keep_count, rank_all

SEED_KMEANS = 101
SEED_SPACE = 211
SEED_GA = 307
SEED_EVAL = 401
SEED_BASELINE = 503

METRIC_KEYS = ("overall", "recall", "specificity", "balanced", "precision", "f_measure", "mcc")


@dataclass(frozen=True)
class PipelineConfig:
    """Tuning knobs for one run; defaults follow the reference settings."""

    keep_fraction: float = 0.05
    method: str = "dmc"
    q: int = 100
    n_var: int = 10
    n_pop: int = 20
    stagnation_limit: int = 30
    max_iterations: int = 1000
    n_splits: int = 10
    test_fraction: float = 0.2
    n_restarts: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be at least 1")
        if self.n_var < 1:
            raise ValueError("n_var must be at least 1")
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError("test_fraction must be in (0, 1)")


@dataclass(frozen=True)
class PipelineResult:
    config: PipelineConfig
    retained: tuple[int, ...]
    space: tuple[int, ...]
    selected: tuple[int, ...]
    before: dict[str, float]
    after: dict[str, float]
    ga: GAResult
    elapsed_seconds: float

    @property
    def improvement(self) -> float:
        return self.after["overall"] - self.before["overall"]


def effective_sizes(m: int, config: PipelineConfig) -> tuple[int, int, int]:
    """(retained count, pool size, subset size) after clamping.

    The retained count is raised, if needed, so the pool can exceed the
    subset size; the search requires at least one unused pool member.
    """
    m_keep = max(keep_count(m, config.keep_fraction), min(m, config.n_var + 1))
    q_eff = min(config.q, m_keep)
    n_var_eff = max(1, min(config.n_var, q_eff - 1))
    return m_keep, q_eff, n_var_eff


def _build_space(
    matrix: FeatureMatrix, labels: LabelVector, config: PipelineConfig
) -> tuple[np.ndarray, np.ndarray, int]:
    m_keep, q_eff, n_var_eff = effective_sizes(matrix.m, config)
    order = rank_all(matrix, labels, method=config.method)
    retained = order[:m_keep]
    model = cluster_features(
        matrix, retained, q_eff, config.seed + SEED_KMEANS, n_restarts=config.n_restarts
    )
    space = build_feature_space(retained, model, config.seed + SEED_SPACE)
    return retained, space, n_var_eff


def run_pipeline(
    matrix: FeatureMatrix, labels: LabelVector, config: PipelineConfig
) -> PipelineResult:
    """Rank, cluster, pool, search, then score before and after selection."""
    started = time.perf_counter()
    retained, space, n_var_eff = _build_space(matrix, labels, config)
    eval_seed = config.seed + SEED_EVAL

    def fitness(genes: tuple[int, ...]) -> float:
        mean_overall, _ = evaluate_subset(
            matrix, labels, np.array(genes, dtype=int),
            n_splits=config.n_splits, test_fraction=config.test_fraction, base_seed=eval_seed,
        )
        return mean_overall

    optimizer = SubsetOptimizer(
        space,
        n_var_eff,
        fitness,
        seed=config.seed + SEED_GA,
        n_pop=config.n_pop,
        stagnation_limit=config.stagnation_limit,
        max_iterations=config.max_iterations,
    )
    ga = optimizer.run()

    _, before_splits = evaluate_subset(
        matrix, labels, np.arange(matrix.m),
        n_splits=config.n_splits, test_fraction=config.test_fraction, base_seed=eval_seed,
    )
    _, after_splits = evaluate_subset(
        matrix, labels, np.array(ga.best_genes, dtype=int),
        n_splits=config.n_splits, test_fraction=config.test_fraction, base_seed=eval_seed,
    )
    return PipelineResult(
        config=config,
        retained=tuple(int(j) for j in retained),
        space=tuple(int(j) for j in space),
        selected=ga.best_genes,
        before=mean_metrics(before_splits),
        after=mean_metrics(after_splits),
        ga=ga,
        elapsed_seconds=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class ExperimentResult:
    """Repeated pipeline runs; run i reuses the config with seed + i."""

    runs: tuple[PipelineResult, ...]
    mean_before: dict[str, float]
    mean_after: dict[str, float]
    std_after: dict[str, float]
    mean_nfe: float


def run_experiment(
    matrix: FeatureMatrix, labels: LabelVector, config: PipelineConfig, n_runs: int = 3
) -> ExperimentResult:
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    runs = []
    for i in range(n_runs):
        run_config = PipelineConfig(**{**asdict(config), "seed": config.seed + i})
        runs.append(run_pipeline(matrix, labels, run_config))
    mean_before = {k: float(np.mean([r.before[k] for r in runs])) for k in METRIC_KEYS}
    mean_after = {k: float(np.mean([r.after[k] for r in runs])) for k in METRIC_KEYS}
    std_after = {k: float(np.std([r.after[k] for r in runs])) for k in METRIC_KEYS}
    return ExperimentResult(
        runs=tuple(runs),
        mean_before=mean_before,
        mean_after=mean_after,
        std_after=std_after,
        mean_nfe=float(np.mean([r.ga.nfe for r in runs])),
    )


@dataclass(frozen=True)
class BaselineRun:
    genes: tuple[int, ...]
    metrics: dict[str, float]


@dataclass(frozen=True)
class BaselineResult:
    """Random draws from the same candidate pool, scored the same way."""

    runs: tuple[BaselineRun, ...]
    mean: dict[str, float]
    std: dict[str, float]


def random_baseline(
    matrix: FeatureMatrix, labels: LabelVector, config: PipelineConfig, n_runs: int = 3
) -> BaselineResult:
    """Control arm: uniform subsets of the pool instead of the search."""
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    _, space, n_var_eff = _build_space(matrix, labels, config)
    eval_seed = config.seed + SEED_EVAL
    runs = []
    for i in range(n_runs):
        rng = np.random.default_rng(config.seed + SEED_BASELINE + i)
        genes = np.sort(rng.choice(space, size=n_var_eff, replace=False))
        _, splits = evaluate_subset(
            matrix, labels, genes,
            n_splits=config.n_splits, test_fraction=config.test_fraction, base_seed=eval_seed,
        )
        runs.append(BaselineRun(tuple(int(g) for g in genes), mean_metrics(splits)))
    mean = {k: float(np.mean([r.metrics[k] for r in runs])) for k in METRIC_KEYS}
    std = {k: float(np.std([r.metrics[k] for r in runs])) for k in METRIC_KEYS}
    return BaselineResult(runs=tuple(runs), mean=mean, std=std)


def pipeline_report(result: PipelineResult) -> dict:
    """JSON-ready summary; wall time is deliberately left out so the same
    run always serializes to identical bytes."""
    return {
        "config": asdict(result.config),
        "n_retained": len(result.retained),
        "retained": list(result.retained),
        "space": list(result.space),
        "selected": list(result.selected),
        "before": result.before,
        "after": result.after,
        "improvement": result.improvement,
        "nfe": result.ga.nfe,
        "n_iterations": result.ga.n_iterations,
        "search_space_size": result.ga.search_space_size,
    }


def experiment_report(result: ExperimentResult) -> dict:
    return {
        "n_runs": len(result.runs),
        "mean_before": result.mean_before,
        "mean_after": result.mean_after,
        "std_after": result.std_after,
        "mean_nfe": result.mean_nfe,
        "runs": [pipeline_report(r) for r in result.runs],
    }


def baseline_report(result: BaselineResult) -> dict:
    return {
        "n_runs": len(result.runs),
        "mean": result.mean,
        "std": result.std,
        "runs": [{"genes": list(r.genes), "metrics": r.metrics} for r in result.runs],
    }


def write_json(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(report, indent=2, sort_keys=True))
        fh.write("\n")

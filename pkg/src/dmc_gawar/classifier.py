"""Binary decision tree with Gini splits, confusion metrics, subset evaluation.

The tree is grown greedily: at each impure node every midpoint between
consecutive distinct values of every column is tried, and the split with
the largest Gini gain wins.  Ties go to the earlier column, then the lower
threshold.  A best split is accepted even at zero gain as long as the node
is impure and a candidate threshold exists; parity-style targets need such
splits at the root before any informative gain appears, and each split
strictly shrinks both children, so growth always terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import FeatureMatrix, LabelVector, stratified_split


@dataclass(frozen=True)
class TreeNode:
    """One tree node; leaves carry a class, internals carry a test."""

    prediction: int | None = None
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.prediction is not None


def _leaf(y: np.ndarray) -> TreeNode:
    ones = int(y.sum())
    zeros = len(y) - ones
    return TreeNode(prediction=1 if ones > zeros else 0)


def _best_split(x: np.ndarray, y: np.ndarray) -> tuple[float, float] | None:
    """Lowest weighted child Gini over midpoints of one column.

    Returns (threshold, weighted_gini) or None when the column is constant.
    The sweep runs ascending and keeps the first minimum, so equal-quality
    thresholds resolve to the lowest one.
    """
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y[order]
    cut = np.flatnonzero(xs[:-1] < xs[1:])
    if len(cut) == 0:
        return None
    n = len(y)
    ones_cum = np.cumsum(ys)
    total_ones = ones_cum[-1]

    left_n = cut + 1
    right_n = n - left_n
    left_ones = ones_cum[cut]
    right_ones = total_ones - left_ones
    left_zeros = left_n - left_ones
    right_zeros = right_n - right_ones

    gini_left = 1.0 - (left_ones / left_n) ** 2 - (left_zeros / left_n) ** 2
    gini_right = 1.0 - (right_ones / right_n) ** 2 - (right_zeros / right_n) ** 2
    weighted = (left_n * gini_left + right_n * gini_right) / n

    best = int(np.argmin(weighted))
    pos = cut[best]
    threshold = (xs[pos] + xs[pos + 1]) / 2.0
    return float(threshold), float(weighted[best])


def fit_tree(x: np.ndarray, y: np.ndarray) -> TreeNode:
    """Grow the full tree; stops at purity, <2 samples, or constant columns."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=int)
    if x.ndim != 2 or len(x) != len(y):
        raise ValueError("x must be 2-D with one row per label")

    ones = int(y.sum())
    if len(y) < 2 or ones == 0 or ones == len(y):
        return _leaf(y)

    best_feature = None
    best_threshold = 0.0
    best_weighted = np.inf
    for j in range(x.shape[1]):
        found = _best_split(x[:, j], y)
        if found is None:
            continue
        threshold, weighted = found
        if weighted < best_weighted:
            best_feature, best_threshold, best_weighted = j, threshold, weighted
    if best_feature is None:
        return _leaf(y)

    goes_left = x[:, best_feature] <= best_threshold
    return TreeNode(
        feature=best_feature,
        threshold=best_threshold,
        left=fit_tree(x[goes_left], y[goes_left]),
        right=fit_tree(x[~goes_left], y[~goes_left]),
    )


def predict(node: TreeNode, x: np.ndarray) -> np.ndarray:
    """Predict one class per row; values equal to a threshold go left."""
    x = np.asarray(x, dtype=float)
    out = np.empty(len(x), dtype=int)
    for i, row in enumerate(x):
        cursor = node
        while not cursor.is_leaf:
            cursor = cursor.left if row[cursor.feature] <= cursor.threshold else cursor.right
        out[i] = cursor.prediction
    return out


def confusion_counts(y_true: np.ndarray, y_pred: np.ndarray) -> tuple[int, int, int, int]:
    """(TP, TN, FP, FN) with class 1 as the positive class."""
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    tp = int(((y_true == 1) & (y_pred == 1)).sum())
    tn = int(((y_true == 0) & (y_pred == 0)).sum())
    fp = int(((y_true == 0) & (y_pred == 1)).sum())
    fn = int(((y_true == 1) & (y_pred == 0)).sum())
    return tp, tn, fp, fn


def _safe_div(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator != 0.0 else 0.0


@dataclass(frozen=True)
class ClassificationMetrics:
    """Confusion-derived scores; every 0/0 collapses to 0 by convention."""

    tp: int
    tn: int
    fp: int
    fn: int
    overall: float
    recall: float
    specificity: float
    balanced: float
    precision: float
    f_measure: float
    mcc: float

    @classmethod
    def from_counts(cls, tp: int, tn: int, fp: int, fn: int) -> "ClassificationMetrics":
        overall = _safe_div(tp + tn, tp + tn + fp + fn)
        recall = _safe_div(tp, tp + fn)
        specificity = _safe_div(tn, tn + fp)
        balanced = (recall + specificity) / 2.0
        precision = _safe_div(tp, tp + fp)
        f_measure = _safe_div(2.0 * precision * recall, precision + recall)
        denom_parts = (tp + fp, tp + fn, tn + fp, tn + fn)
        if any(p == 0 for p in denom_parts):
            mcc = 0.0
        else:
            mcc = (tp * tn - fp * fn) / float(np.sqrt(np.prod(np.array(denom_parts, dtype=float))))
        return cls(tp, tn, fp, fn, overall, recall, specificity, balanced, precision, f_measure, mcc)

    def as_dict(self) -> dict[str, float]:
        return {
            "overall": self.overall,
            "recall": self.recall,
            "specificity": self.specificity,
            "balanced": self.balanced,
            "precision": self.precision,
            "f_measure": self.f_measure,
            "mcc": self.mcc,
        }


def evaluate_split(
    matrix: FeatureMatrix,
    labels: LabelVector,
    features: np.ndarray,
    test_fraction: float,
    seed: int,
) -> ClassificationMetrics:
    """Train on one stratified split restricted to the given columns."""
    features = np.asarray(features, dtype=int)
    plan = stratified_split(labels, test_fraction, seed)
    train = np.array(plan.train_indices)
    test = np.array(plan.test_indices)
    x = matrix.values[:, features]
    tree = fit_tree(x[train], labels.labels[train])
    predictions = predict(tree, x[test])
    return ClassificationMetrics.from_counts(*confusion_counts(labels.labels[test], predictions))


def evaluate_subset(
    matrix: FeatureMatrix,
    labels: LabelVector,
    features: np.ndarray,
    n_splits: int = 10,
    test_fraction: float = 0.2,
    base_seed: int = 0,
) -> tuple[float, list[ClassificationMetrics]]:
    """Mean test accuracy of a feature subset over seeded repeated splits.

    Split k uses seed ``base_seed + k``, so the same arguments always yield
    the same value; this is the fitness the optimizer maximizes.
    """
    if n_splits < 1:
        raise ValueError("n_splits must be at least 1")
    per_split = [
        evaluate_split(matrix, labels, features, test_fraction, base_seed + k)
        for k in range(n_splits)
    ]
    mean_overall = float(np.mean([m.overall for m in per_split]))
    return mean_overall, per_split


def mean_metrics(per_split: list[ClassificationMetrics]) -> dict[str, float]:
    """Average each confusion-derived score over a list of splits."""
    keys = per_split[0].as_dict().keys()
    return {k: float(np.mean([m.as_dict()[k] for m in per_split])) for k in keys}

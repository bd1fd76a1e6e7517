"""Per-feature relevance scores built on the mixed-label congestion region.

Sorting one feature's values ascending (stable, so ties keep sample order)
yields a label sequence.  Call the label at position 0 the x-class and the
other label the y-class.  The congestion region spans from the first y-class
appearance to the last x-class appearance; it is where the two classes
interleave.  A small region means the feature nearly separates the classes
on its own.

Two scores are derived from the region:

* the mutual-congestion score is the region's width as a fraction of n,
* the distance score compares, for each class, how far the in-region values
  sit from the region boundary against how far the out-of-region values sit,
  so values crowding the boundary from inside push the score up.

Both are "smaller is better".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import FeatureMatrix, LabelVector

# Stand-in ratio when one class has zero spread outside the region but
# nonzero spread inside; the feature is maximally congested on that side.
ZERO_DENOMINATOR_SENTINEL = 1e6


@dataclass(frozen=True)
class CongestionRegion:
    """Half-open description of where the two classes interleave.

    ``order`` is the stable ascending argsort of the feature values.
    ``start``/``end`` are inclusive positions in that order; the region is
    empty when ``end < start`` (the feature separates the classes exactly).
    ``x_class`` is the label found at sorted position 0.
    """

    order: np.ndarray
    start: int
    end: int
    x_class: int

    @property
    def is_empty(self) -> bool:
        return self.end < self.start

    @property
    def width(self) -> int:
        return 0 if self.is_empty else self.end - self.start + 1


def find_region(values: np.ndarray, labels: np.ndarray) -> CongestionRegion:
    """Locate the congestion region of one feature column."""
    values = np.asarray(values, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if values.ndim != 1 or values.shape != labels.shape:
        raise ValueError("values and labels must be equal-length 1-D arrays")
    order = np.argsort(values, kind="stable")
    sorted_labels = labels[order]
    x_class = int(sorted_labels[0])
    y_class = 1 - x_class
    y_positions = np.flatnonzero(sorted_labels == y_class)
    x_positions = np.flatnonzero(sorted_labels == x_class)
    start = int(y_positions[0])
    end = int(x_positions[-1])
    return CongestionRegion(order=order, start=start, end=end, x_class=x_class)


def mc_score(values: np.ndarray, labels: np.ndarray) -> float:
    """Width of the congestion region as a fraction of the sample count."""
    region = find_region(values, labels)
    return region.width / len(np.asarray(values))


def _ratio(numerator: float, denominator: float) -> float:
    if denominator > 0.0:
        return numerator / denominator
    if numerator > 0.0:
        return ZERO_DENOMINATOR_SENTINEL
    return 0.0


def dmc_score(values: np.ndarray, labels: np.ndarray) -> float:
    """Distance-based congestion score of one feature column.

    Anchors are the region's boundary values: the value at the region start
    (first y-class appearance) and the value at the region end (last x-class
    appearance).  For each class, sum |value - anchor| over that class's
    in-region members, divide by the same sum over its out-of-region members,
    and add the two ratios.  An empty region scores 0.  A zero denominator
    under a positive numerator contributes ``ZERO_DENOMINATOR_SENTINEL``.
    """
    values = np.asarray(values, dtype=float)
    labels = np.asarray(labels, dtype=int)
    region = find_region(values, labels)
    if region.is_empty:
        return 0.0

    sorted_values = values[region.order]
    sorted_labels = labels[region.order]
    x_class = region.x_class
    y_class = 1 - x_class
    y_min = sorted_values[region.start]
    x_max = sorted_values[region.end]

    inside = np.zeros(len(values), dtype=bool)
    inside[region.start : region.end + 1] = True

    score = 0.0
    for cls, anchor in ((x_class, y_min), (y_class, x_max)):
        is_cls = sorted_labels == cls
        distances = np.abs(sorted_values - anchor)
        numerator = float(distances[is_cls & inside].sum())
        denominator = float(distances[is_cls & ~inside].sum())
        score += _ratio(numerator, denominator)
    return score


def score_features(matrix: FeatureMatrix, labels: LabelVector, method: str = "dmc") -> np.ndarray:
    """Score every column of the matrix; method is ``"dmc"`` or ``"mc"``."""
    if method == "dmc":
        scorer = dmc_score
    elif method == "mc":
        scorer = mc_score
    else:
        raise ValueError(f"unknown scoring method {method!r}")
    y = labels.labels
    return np.array([scorer(matrix.values[:, j], y) for j in range(matrix.m)], dtype=float)


def order_by_score(scores: np.ndarray) -> np.ndarray:
    """Feature indices ascending by score; ties break toward the lower index."""
    scores = np.asarray(scores, dtype=float)
    return np.lexsort((np.arange(len(scores)), scores))


def rank_all(matrix: FeatureMatrix, labels: LabelVector, method: str = "dmc") -> np.ndarray:
    """All feature indices ordered ascending by score, lower index on ties,
    so the ranking is a pure function of its inputs."""
    return order_by_score(score_features(matrix, labels, method=method))


def keep_count(m: int, keep_fraction: float) -> int:
    """max(1, floor(keep_fraction * m)), guarded against float slop in the
    product (0.3 * 10 must floor to 3, not 2)."""
    if not 0.0 < keep_fraction <= 1.0:
        raise ValueError("keep_fraction must be in (0, 1]")
    return max(1, int(np.floor(keep_fraction * m + 1e-9)))


def rank_features(
    matrix: FeatureMatrix,
    labels: LabelVector,
    keep_fraction: float = 0.05,
    method: str = "dmc",
) -> np.ndarray:
    """Indices of the best-scoring max(1, floor(keep_fraction * m)) features,
    ascending by score."""
    order = rank_all(matrix, labels, method=method)
    return order[: keep_count(matrix.m, keep_fraction)].copy()

"""Build a decorrelated candidate pool from the retained features.

Highly ranked features are often near-copies of each other.  Treating each
feature column as a point and clustering groups the copies; drawing one
member per cluster yields a pool of complementary candidates.
"""

import numpy as np

from dmc_gawar import build_feature_space, cluster_features, minmax_normalize
from dmc_gawar.data import FeatureMatrix, LabelVector

rng = np.random.default_rng(1)

# Twelve features in four correlated blocks of three.
base = rng.standard_normal((24, 4))
columns = np.repeat(base, 3, axis=1) + 0.02 * rng.standard_normal((24, 12))
matrix = FeatureMatrix(columns, tuple(f"f{j}" for j in range(12)))
labels = LabelVector(np.array([0] * 12 + [1] * 12), ("neg", "pos"))

normalized = minmax_normalize(columns)
print("normalized column ranges:", normalized.min(), "to", normalized.max())

retained = np.arange(12)  # pretend ranking kept everything
model = cluster_features(matrix, retained, q=4, seed=0)
print("cluster of each feature:", model.assignments.tolist())
print("inertia after each update:", [round(v, 4) for v in model.inertia_history])

space = build_feature_space(retained, model, seed=3)
print("candidate pool (one feature per cluster):", space.tolist())

# The pool has exactly one member from each correlated block.
blocks = [space.tolist()[k] // 3 for k in range(4)]
print("blocks represented:", sorted(blocks))

"""Exact features of 0-1 knapsack instances built on inclusionwise maximal solutions."""

from .cardinality import CardinalityResult, bounded_knapsack_max, theorem3_z
from .clustering import ClusteringResult, KMeansResult, h_curve, kmeans_1d, select_g_star
from .counting import (
    CountingFeatures,
    ImsWeightProfile,
    counting_features,
    number_ims_weight,
)
from .instance import KnapsackInstance, generate_control, parse, read_instance, serialize
from .kernels import BACKEND
from .lower_bound import (
    LowerBoundResult,
    compute_b,
    corollary1_ratio,
    dantzig_upper_bound,
    efficiency_order,
    solve_optimal,
    theorem2_lower_bound,
)
from .pipeline import (
    FeatureVector,
    Normalizer,
    extract,
    fit_normalizer,
    project,
    read_feature_csv,
    write_feature_csv,
)

__version__ = "0.1.0"

"""Nonlinear quality-of-life country index.

Pipeline: parse the 171-country indicator table, standardize to z-values,
compute the PCA basis and linear index, fit a 1D elastic-map principal
curve, project countries onto it and rank them by the [-1, +1] NQL index.
"""

from .chain import (ChainConfig, ElasticChain, EnergyBreakdown, FitResult, Partition,
                    curve_explained_variance, fit)
from .dataset import (CountryRecord, CountryTable, StandardizedMatrix, destandardize,
                      load_packaged_table, load_reference_ranking, parse_table,
                      serialize_table, standardize)
from .index import (ComparisonReport, IndexRow, IndexTable, PolylineProjection,
                    build_index_table, compare_linear_nonlinear, nql_index, orient,
                    project_point, rank)
from .pca import PrincipalBasis, covariance, eigendecompose, explained_variance_ratio, pc1_scores

__version__ = "0.1.0"

__all__ = [
    "ChainConfig", "ElasticChain", "EnergyBreakdown", "FitResult", "Partition",
    "CountryRecord", "CountryTable", "StandardizedMatrix", "PrincipalBasis",
    "ComparisonReport", "IndexRow", "IndexTable", "PolylineProjection",
    "parse_table", "serialize_table", "standardize", "destandardize",
    "load_packaged_table", "load_reference_ranking",
    "covariance", "eigendecompose", "explained_variance_ratio", "pc1_scores",
    "fit", "curve_explained_variance",
    "build_index_table", "compare_linear_nonlinear", "nql_index", "orient",
    "project_point", "rank",
    "__version__",
]

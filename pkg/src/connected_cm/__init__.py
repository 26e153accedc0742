"""Connected graphs with prescribed degrees.

Computes the exponential rate at which connectivity becomes rare in the
configuration model, builds the enlarged degree sequence whose giant
component reproduces a target type sequence, samples and repairs
configurations, and validates everything against exhaustive small-instance
oracles.
"""
from .census import (
    bp_tree_probability,
    empirical_census,
    giant_rejection_sample,
    neighborhood_tree,
    sample_uniform_connected,
)
from .confmodel import components, is_simple, project, sample_configuration
from .degrees import (
    DegreeDistribution,
    TypeSequence,
    empirical_distribution,
    size_biased,
    type_from_degrees,
)
from .embedding import build_embedding, in_nps, truncate_p
from .kernels import BACKEND
from .oracle import count_configurations, decomposition_check, enumerate_counts
from .rate import rate_K, solve_beta
from .switching import apply_switching, connect_repair

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DegreeDistribution",
    "TypeSequence",
    "apply_switching",
    "bp_tree_probability",
    "build_embedding",
    "components",
    "connect_repair",
    "count_configurations",
    "decomposition_check",
    "empirical_census",
    "empirical_distribution",
    "enumerate_counts",
    "giant_rejection_sample",
    "in_nps",
    "is_simple",
    "neighborhood_tree",
    "project",
    "rate_K",
    "sample_configuration",
    "sample_uniform_connected",
    "size_biased",
    "solve_beta",
    "truncate_p",
    "type_from_degrees",
    "__version__",
]

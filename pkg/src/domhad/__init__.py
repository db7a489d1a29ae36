"""Dominating clique models: exact search, constructions, decompositions and random-graph experiments."""

from .graph import Graph, GraphError, parse_graph, format_graph
from .models import CliqueModel, Verdict, verify_model, check_degree_path
from .exact import exact_domhad, exact_pseudo_domhad, has_clique_minor, has_dominating_model, find_dominating_model
from .constructive import (
    colour_or_model,
    construct_avg_degree,
    construct_dense,
    construct_k4_min_degree3,
    min_sum_colouring_pseudo_model,
    regular_pseudo_model,
)
from .decomposition import independence_bound, large_colourable_subgraph, tree_partition
from .experiments import chi_upper, domhad_lower_bound, greedy_dominating_model, run_sweep, sample_gnp

__version__ = "0.1.0"

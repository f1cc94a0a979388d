"""Training-free vector-symbolic graph classification.

Spike-diffusion node identification plus associative message passing
build graph embeddings in hyperdimensional space without any gradient
training; a prototype classifier with cosine matching does inference.
A faithful GraphHD baseline (PageRank ranks, edge binding, majority
bundling, Hamming matching) and a repeated stratified cross-validation
harness reproduce accuracy, dimensionality-robustness, and latency
experiments on TUDataset-format corpora.
"""

__version__ = "0.1.0"

from .classifier import PrototypeModel, fit, predict, predict_scores
from .datasets import GraphDataset, dataset_stats, parse_tudataset
from .diffusion import RankBasis, assign_node_hvs, default_basis, diffuse, rank_nodes
from .encoder import EncoderConfig, aggregate, blend, encode_graph, encode_graphs
from .graphhd import (GraphHDModel, encode_graphhd, fit_graphhd, pagerank,
                      predict_graphhd)
from .graphs import Graph, make_graph, random_graph, validate_graph
from .harness import CVConfig, CVReport, run_cv, run_dim_sweep, stratified_kfold
from .hdc import (BinaryHypervector, bind, bundle, cosine_similarity,
                  hamming_similarity, random_hypervector, to_dense)
from .model_io import load_model, save_model
from .seeding import SeedSpec

__all__ = [
    "__version__",
    "BinaryHypervector", "bind", "bundle", "cosine_similarity",
    "hamming_similarity", "random_hypervector", "to_dense",
    "SeedSpec",
    "Graph", "make_graph", "random_graph", "validate_graph",
    "GraphDataset", "parse_tudataset", "dataset_stats",
    "RankBasis", "default_basis", "diffuse", "rank_nodes", "assign_node_hvs",
    "EncoderConfig", "aggregate", "blend", "encode_graph", "encode_graphs",
    "PrototypeModel", "fit", "predict", "predict_scores",
    "GraphHDModel", "pagerank", "encode_graphhd", "fit_graphhd",
    "predict_graphhd",
    "CVConfig", "CVReport", "stratified_kfold", "run_cv", "run_dim_sweep",
    "load_model", "save_model",
]

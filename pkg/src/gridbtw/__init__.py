"""Parallel Brandes betweenness for power-network contingency selection."""

from .graph import EdgeKey, Graph, build_graph, edge_index, neighbors
from .ingest import GridModel, preprocess, read_edgelist, read_grid_json
from .parallel import ParallelConfig, edge_betweenness_parallel, node_betweenness_parallel
from .ranking import RankingReport, rank, write_report
from .scores import DEFAULT_CONVENTION, Convention, ScoreTable, normalize_scores
from .serial import SourceState, edge_betweenness_serial, node_betweenness_serial, single_source_state

__version__ = "0.1.0"

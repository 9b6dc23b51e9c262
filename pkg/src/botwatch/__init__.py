"""botwatch: detect coordinated socialbot campaigns in tweet archives.

Pipeline pieces: archive ingestion, mention networks, temporally
coordinated co-retweet graphs, Louvain communities, eigenvector
centrality ranking, bot-score acquisition with 2D KDE bimodality checks,
account-metadata batch signals, and a synthetic planted-team benchmark.
"""

from .bot_scoring import (
    BotScoreRecord,
    ScoreCache,
    fetch_scores,
    load_cache,
    score_pairs,
    store_cache,
)
from .centrality import (
    CentralityScores,
    eigenvector_centrality,
    rank_accounts,
    ranking_table,
)
from .community import (
    Partition,
    adjusted_rand_index,
    community_sizes,
    louvain,
    modularity,
)
from .density import (
    KdeGrid,
    ModeReport,
    bimodality_report,
    find_modes,
    kde2d,
    select_bandwidth,
)
from .errors import BotwatchError, ConfigurationError, DataError, NetworkError
from .gexf import gexf_document, write_gexf
from .graphs import (
    CoordinationEvent,
    WeightedGraph,
    build_mention_graph,
    edge_list_csv,
    extract_coordination_events,
    graph_stats,
    project_coordination_graph,
)
from .ingest import (
    dataset_stats,
    filter_by_source,
    filter_by_window,
    parse_csv,
    parse_jsonl,
)
from .models import Dataset, Tweet
from .signals import (
    CreationBatch,
    NameCluster,
    detect_creation_batches,
    detect_name_clusters,
    signal_report,
)
from .synth import GroundTruth, SynthConfig, generate

__version__ = "0.1.0"

__all__ = [
    "BotScoreRecord", "ScoreCache", "fetch_scores", "load_cache",
    "score_pairs", "store_cache",
    "CentralityScores", "eigenvector_centrality", "rank_accounts",
    "ranking_table",
    "Partition", "adjusted_rand_index", "community_sizes", "louvain",
    "modularity",
    "KdeGrid", "ModeReport", "bimodality_report", "find_modes", "kde2d",
    "select_bandwidth",
    "BotwatchError", "ConfigurationError", "DataError", "NetworkError",
    "gexf_document", "write_gexf",
    "CoordinationEvent", "WeightedGraph", "build_mention_graph",
    "edge_list_csv", "extract_coordination_events", "graph_stats",
    "project_coordination_graph",
    "dataset_stats", "filter_by_source", "filter_by_window", "parse_csv",
    "parse_jsonl",
    "Dataset", "Tweet",
    "CreationBatch", "NameCluster", "detect_creation_batches",
    "detect_name_clusters", "signal_report",
    "GroundTruth", "SynthConfig", "generate",
]

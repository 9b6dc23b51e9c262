"""Mention networks and temporal co-retweet coordination graphs.

Two constructions:

* the directed mention network (mentioner -> mentioned, weight = mention
  count), and
* the coordination graph: timed retweet events are grouped into
  (original tweet, time bucket) keys, and two accounts are linked with
  weight equal to the number of distinct keys they share.  Dense cliques
  in this graph are the signature of coordinated, timed retweeting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .models import Dataset

__all__ = [
    "WeightedGraph",
    "CoordinationEvent",
    "GraphStats",
    "build_mention_graph",
    "extract_coordination_events",
    "project_coordination_graph",
    "graph_stats",
    "edge_list_csv",
]


class WeightedGraph:
    """Weighted graph over string-named nodes, directed or undirected.

    Node order is insertion order and is part of the graph's identity:
    seeded algorithms (Louvain) visit nodes by position, so two graphs
    built in the same order behave identically under node relabeling.
    """

    def __init__(self, directed: bool = False):
        self.directed = directed
        self._adj: dict[str, dict[str, float]] = {}
        self._in_weight: dict[str, float] = {}
        self._self_loops: dict[str, float] = {}

    # -- construction -----------------------------------------------------

    def add_node(self, name: str) -> None:
        if name not in self._adj:
            self._adj[name] = {}
            self._in_weight[name] = 0.0

    def add_edge(self, u: str, v: str, weight: float = 1.0) -> None:
        """Add (or accumulate onto) an edge."""
        self.add_node(u)
        self.add_node(v)
        if u == v:
            self._self_loops[u] = self._self_loops.get(u, 0.0) + weight
            self._adj[u][u] = self._self_loops[u]
            self._in_weight[u] += weight
            return
        self._adj[u][v] = self._adj[u].get(v, 0.0) + weight
        self._in_weight[v] += weight
        if not self.directed:
            self._adj[v][u] = self._adj[v].get(u, 0.0) + weight
            self._in_weight[u] += weight

    # -- queries ----------------------------------------------------------

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, name: str) -> bool:
        return name in self._adj

    def neighbors(self, u: str) -> dict[str, float]:
        """Adjacency of ``u``: successors for directed graphs."""
        return dict(self._adj[u])

    def weight(self, u: str, v: str) -> float:
        return self._adj.get(u, {}).get(v, 0.0)

    def edges(self):
        """Yield (u, v, weight); undirected edges appear once, u <= v."""
        for u, nbrs in self._adj.items():
            for v, w in nbrs.items():
                if self.directed or u <= v:
                    yield u, v, w

    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())

    def weight_sum(self) -> float:
        return sum(w for _, _, w in self.edges())

    def degree(self, u: str) -> float:
        """Weighted degree; self-loops count twice, directed sums in+out."""
        if self.directed:
            return sum(self._adj[u].values()) + self._in_weight[u]
        return sum(self._adj[u].values()) + self._self_loops.get(u, 0.0)

    def has_self_loops(self) -> bool:
        return bool(self._self_loops)

    # -- transforms -------------------------------------------------------

    def symmetrized(self) -> "WeightedGraph":
        """Undirected copy; opposite directed weights are summed."""
        if not self.directed:
            return self
        g = WeightedGraph(directed=False)
        for u in self._adj:
            g.add_node(u)
        for u, v, w in self.edges():
            g.add_edge(u, v, w)
        return g


@dataclass(frozen=True)
class CoordinationEvent:
    """A timed retweet: who retweeted which original in which bucket."""

    original_id: str
    bucket: int
    retweeter: str

    @property
    def key(self) -> tuple[str, int]:
        return (self.original_id, self.bucket)


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    weight_sum: float
    degree_median: float
    degree_p90: float
    degree_p99: float

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "weight_sum": self.weight_sum,
            "degree_median": self.degree_median,
            "degree_p90": self.degree_p90,
            "degree_p99": self.degree_p99,
        }


def build_mention_graph(d: Dataset) -> WeightedGraph:
    """Directed mention network: author -> mentioned, weight = count.

    Mentioned-but-never-posting accounts become nodes too.  Nodes and
    edge insertion are ordered by name for determinism.
    """
    weights: dict[tuple[str, str], float] = {}
    names: set[str] = set()
    for t in d.tweets:
        for mentioned in t.mentions:
            key = (t.author_screen_name, mentioned)
            weights[key] = weights.get(key, 0.0) + 1.0
            names.add(t.author_screen_name)
            names.add(mentioned)

    g = WeightedGraph(directed=True)
    for name in sorted(names):
        g.add_node(name)
    for (u, v) in sorted(weights):
        g.add_edge(u, v, weights[(u, v)])
    return g


def bucket_of(created_at, bucket_width: int) -> int:
    """Time bucket index: floor(unix seconds / width), Unix epoch anchored."""
    return int(created_at.timestamp()) // bucket_width


def extract_coordination_events(
    d: Dataset, bucket_width: int = 1
) -> list[CoordinationEvent]:
    """One event per retweet; non-retweets are ignored."""
    if bucket_width < 1:
        raise ValueError("bucket_width must be >= 1 second")
    return [
        CoordinationEvent(
            original_id=t.retweet_of,
            bucket=bucket_of(t.created_at, bucket_width),
            retweeter=t.author_screen_name,
        )
        for t in d.tweets
        if t.retweet_of is not None
    ]


def project_coordination_graph(
    events: list[CoordinationEvent], k: int = 3
) -> WeightedGraph:
    """Account projection of the (event key x retweeter) bipartite structure.

    Edge weight between two accounts is the number of distinct
    (original_id, bucket) keys both share; edges below threshold ``k``
    and accounts left isolated are dropped.
    """
    if k < 1:
        raise ValueError("threshold k must be >= 1")

    by_key: dict[tuple[str, int], set[str]] = {}
    for e in events:
        by_key.setdefault(e.key, set()).add(e.retweeter)

    pair_weight: dict[tuple[str, str], int] = {}
    for accounts in by_key.values():
        if len(accounts) < 2:
            continue
        for a, b in itertools.combinations(sorted(accounts), 2):
            pair_weight[(a, b)] = pair_weight.get((a, b), 0) + 1

    kept = {pair: w for pair, w in pair_weight.items() if w >= k}
    names = sorted({n for pair in kept for n in pair})

    g = WeightedGraph(directed=False)
    for name in names:
        g.add_node(name)
    for (a, b) in sorted(kept):
        g.add_edge(a, b, float(kept[(a, b)]))
    return g


def graph_stats(g: WeightedGraph) -> GraphStats:
    """Exact node/edge/weight counts and degree quantiles (0.5/0.9/0.99)."""
    if len(g) == 0:
        return GraphStats(0, 0, 0.0, 0.0, 0.0, 0.0)
    degrees = np.array([g.degree(u) for u in g.nodes], dtype=float)
    q50, q90, q99 = np.quantile(degrees, [0.5, 0.9, 0.99])
    return GraphStats(
        node_count=len(g),
        edge_count=g.edge_count(),
        weight_sum=g.weight_sum(),
        degree_median=float(q50),
        degree_p90=float(q90),
        degree_p99=float(q99),
    )


def edge_list_csv(g: WeightedGraph) -> str:
    """``source,target,weight`` export, deterministically ordered."""
    lines = ["source,target,weight"]
    for u, v, w in sorted(g.edges()):
        wtxt = format(w, "g")
        lines.append(f"{u},{v},{wtxt}")
    return "\n".join(lines) + "\n"

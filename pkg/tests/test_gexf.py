import random

import networkx as nx
import pytest

from botwatch.errors import DataError
from botwatch.gexf import gexf_document, write_gexf
from botwatch.graphs import WeightedGraph


def triangle():
    g = WeightedGraph()
    g.add_edge("a", "b", 2.0)
    g.add_edge("b", "c", 1.0)
    g.add_edge("a", "c", 1.0)
    return g


class TestGexf:
    def test_triangle_with_partition(self, tmp_path):
        path = str(tmp_path / "tri.gexf")
        write_gexf(path, triangle(), partition={"a": 0, "b": 0, "c": 1})
        parsed = nx.read_gexf(path)
        assert parsed.number_of_nodes() == 3
        assert parsed.number_of_edges() == 3
        assert parsed.nodes["a"]["community"] == 0
        assert parsed.nodes["c"]["community"] == 1

    def test_roundtrip_counts_and_attributes(self, tmp_path):
        g = WeightedGraph()
        rng = random.Random(0)
        for i in range(50):
            for j in range(i + 1, 50):
                if rng.random() < 0.1:
                    g.add_edge(f"n{i:02d}", f"n{j:02d}", rng.randint(1, 9))
        centrality = {n: rng.random() for n in g.nodes}
        bots = {n: rng.random() for n in list(g.nodes)[:10]}
        path = str(tmp_path / "g.gexf")
        write_gexf(path, g, centrality=centrality, bot_overall=bots)
        parsed = nx.read_gexf(path)
        assert parsed.number_of_nodes() == len(g)
        assert parsed.number_of_edges() == g.edge_count()
        for u, v, w in g.edges():
            assert parsed[u][v]["weight"] == pytest.approx(w)
        for n in g.nodes:
            assert parsed.nodes[n]["centrality"] == pytest.approx(
                centrality[n], abs=1e-6
            )
        for n, score in bots.items():
            assert parsed.nodes[n]["bot_overall"] == pytest.approx(
                score, abs=1e-6
            )

    def test_directed_flag_respected(self, tmp_path):
        g = WeightedGraph(directed=True)
        g.add_edge("a", "b")
        path = str(tmp_path / "d.gexf")
        write_gexf(path, g)
        parsed = nx.read_gexf(path)
        assert parsed.is_directed()

    def test_deterministic_output(self):
        a = gexf_document(triangle(), partition={"a": 0, "b": 0, "c": 1})
        b = gexf_document(triangle(), partition={"a": 0, "b": 0, "c": 1})
        assert a == b

    def test_empty_graph_rejected(self):
        with pytest.raises(DataError):
            gexf_document(WeightedGraph())

    def test_large_graph_roundtrip(self, tmp_path):
        # ~10^4 edges
        g = WeightedGraph()
        rng = random.Random(1)
        n = 500
        edges = set()
        while len(edges) < 10_000:
            u, v = rng.sample(range(n), 2)
            key = (min(u, v), max(u, v))
            if key not in edges:
                edges.add(key)
                g.add_edge(f"v{key[0]:03d}", f"v{key[1]:03d}",
                           rng.randint(1, 50))
        path = str(tmp_path / "big.gexf")
        write_gexf(path, g)
        parsed = nx.read_gexf(path)
        assert parsed.number_of_nodes() == len(g)
        assert parsed.number_of_edges() == 10_000

import random

import pytest
from sklearn.metrics import adjusted_rand_score

from botwatch.community import (
    adjusted_rand_index,
    community_sizes,
    louvain,
    modularity,
    Partition,
)
from botwatch.errors import DataError
from botwatch.graphs import WeightedGraph


def double_sum_modularity(g: WeightedGraph, assignment, resolution=1.0):
    """O(n^2) oracle: explicit dense matrix, full double sum.

    A[i][j] = weight for i != j; A[i][i] = 2 * self-loop weight, so row
    sums are weighted degrees.
    """
    sg = g.symmetrized()
    names = list(sg.nodes)
    idx = {n: i for i, n in enumerate(names)}
    n = len(names)
    a = [[0.0] * n for _ in range(n)]
    for u, v, w in sg.edges():
        i, j = idx[u], idx[v]
        if i == j:
            a[i][i] += 2.0 * w
        else:
            a[i][j] += w
            a[j][i] += w
    k = [sum(row) for row in a]
    two_m = sum(k)
    if two_m == 0:
        return 0.0
    q = 0.0
    for i in range(n):
        for j in range(n):
            if assignment[names[i]] == assignment[names[j]]:
                q += a[i][j] - resolution * k[i] * k[j] / two_m
    return q / two_m


def random_graph(seed, n=20, p=0.25):
    rng = random.Random(seed)
    g = WeightedGraph()
    for i in range(n):
        g.add_node(f"n{i}")
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                g.add_edge(f"n{i}", f"n{j}", rng.randint(1, 4))
    return g


def two_triangles():
    g = WeightedGraph()
    for a, b in [("a", "b"), ("b", "c"), ("a", "c"),
                 ("x", "y"), ("y", "z"), ("x", "z")]:
        g.add_edge(a, b)
    return g


class TestModularity:
    def test_single_edge_one_community_is_zero(self):
        # full double sum: internal term 1 cancels against the null model
        g = WeightedGraph()
        g.add_edge("a", "b")
        assignment = {"a": 0, "b": 0}
        assert modularity(g, assignment) == pytest.approx(0.0, abs=1e-15)
        assert double_sum_modularity(g, assignment) == pytest.approx(0.0)

    def test_singletons_no_self_loops(self):
        # every node its own community: Q = -gamma * sum (k_i/2m)^2
        g = two_triangles()
        assignment = {n: i for i, n in enumerate(g.nodes)}
        two_m = sum(g.degree(n) for n in g.nodes)
        expected = -sum((g.degree(n) / two_m) ** 2 for n in g.nodes)
        assert modularity(g, assignment) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_partition_matches_double_sum_oracle(self, seed):
        g = random_graph(seed)
        rng = random.Random(1000 + seed)
        assignment = {n: rng.randrange(4) for n in g.nodes}
        gamma = rng.choice([0.5, 1.0, 2.0])
        assert modularity(g, assignment, resolution=gamma) == pytest.approx(
            double_sum_modularity(g, assignment, gamma), abs=1e-12
        )

    def test_missing_node_rejected(self):
        g = two_triangles()
        with pytest.raises(DataError):
            modularity(g, {"a": 0})

    def test_directed_graph_symmetrized(self):
        gd = WeightedGraph(directed=True)
        gd.add_edge("a", "b", 2)
        gd.add_edge("b", "a", 1)
        gu = WeightedGraph()
        gu.add_edge("a", "b", 3)
        assignment = {"a": 0, "b": 1}
        assert modularity(gd, assignment) == pytest.approx(
            modularity(gu, assignment)
        )


class TestLouvain:
    def test_empty_graph_rejected(self):
        with pytest.raises(DataError):
            louvain(WeightedGraph())

    def test_two_disjoint_triangles(self):
        p = louvain(two_triangles(), seed=1)
        assert p.community_count == 2
        assert len({p.assignment[n] for n in ("a", "b", "c")}) == 1
        assert len({p.assignment[n] for n in ("x", "y", "z")}) == 1

    def test_single_edge_matches_enumerated_best(self):
        g = WeightedGraph()
        g.add_edge("a", "b")
        together = modularity(g, {"a": 0, "b": 0})
        apart = modularity(g, {"a": 0, "b": 1})
        p = louvain(g, seed=0)
        assert p.modularity == pytest.approx(max(together, apart), abs=1e-12)

    def test_reported_modularity_recomputable(self):
        for seed in range(5):
            g = random_graph(seed, n=30)
            p = louvain(g, seed=seed)
            assert p.modularity == pytest.approx(
                modularity(g, p), abs=1e-9
            )
            assert p.modularity == pytest.approx(
                double_sum_modularity(g, p.assignment), abs=1e-9
            )

    def test_phase_modularity_non_decreasing(self):
        for seed in range(5):
            g = random_graph(seed, n=40, p=0.15)
            p = louvain(g, seed=seed)
            phases = p.phase_modularity
            assert all(b >= a - 1e-12 for a, b in zip(phases, phases[1:]))

    def test_planted_teams_recovered(self):
        g = WeightedGraph()
        rng = random.Random(9)
        truth = {}
        for team in range(5):
            members = [f"t{team}m{i}" for i in range(12)]
            for m in members:
                truth[m] = team
            for i, a in enumerate(members):
                for b in members[i + 1:]:
                    g.add_edge(a, b, 10)
        # sparse random cross-team noise
        nodes = list(truth)
        for _ in range(15):
            a, b = rng.sample(nodes, 2)
            if truth[a] != truth[b]:
                g.add_edge(a, b, 1)
        p = louvain(g, seed=42)
        labels = [truth[n] for n in g.nodes]
        detected = [p.assignment[n] for n in g.nodes]
        assert adjusted_rand_score(labels, detected) >= 0.95

    def test_label_permutation_equivariance(self):
        g = random_graph(3, n=25)
        mapping = {n: f"z{i:02d}" for i, n in enumerate(reversed(g.nodes))}
        h = WeightedGraph()
        for n in g.nodes:  # same insertion order, new labels
            h.add_node(mapping[n])
        for u, v, w in g.edges():
            h.add_edge(mapping[u], mapping[v], w)
        p_g = louvain(g, seed=7)
        p_h = louvain(h, seed=7)
        # identical up to community relabeling
        pairs = {(p_g.assignment[n], p_h.assignment[mapping[n]]) for n in g.nodes}
        assert len(pairs) == len({a for a, _ in pairs})
        assert len(pairs) == len({b for _, b in pairs})

    def test_disconnected_components_not_merged(self):
        g = WeightedGraph()
        for offset in range(4):
            a, b, c = (f"c{offset}{x}" for x in "abc")
            g.add_edge(a, b)
            g.add_edge(b, c)
        p = louvain(g, resolution=1.0, seed=0)
        comps = {}
        for n in g.nodes:
            comps.setdefault(n[:2], set()).add(p.assignment[n])
        seen = [c for group in comps.values() for c in group]
        # communities never span two components
        for g1 in comps.values():
            for g2 in comps.values():
                if g1 is not g2:
                    assert not (g1 & g2)

    def test_deterministic_per_seed(self):
        g = random_graph(4, n=30)
        assert louvain(g, seed=5).assignment == louvain(g, seed=5).assignment

    def test_community_ids_dense(self):
        g = random_graph(6, n=30)
        p = louvain(g, seed=2)
        ids = set(p.assignment.values())
        assert ids == set(range(len(ids)))


class TestCommunitySizes:
    def test_single(self):
        p = Partition({"a": 0, "b": 0, "c": 0}, 0.0, 1.0)
        assert community_sizes(p) == [(0, 3)]

    def test_tie_break_by_id(self):
        p = Partition(
            {f"n{i}": c for i, c in enumerate([0] * 5 + [1] * 5 + [2] * 2)},
            0.0,
            1.0,
        )
        assert community_sizes(p) == [(0, 5), (1, 5), (2, 2)]


class TestAri:
    @pytest.mark.parametrize("seed", range(6))
    def test_matches_sklearn(self, seed):
        rng = random.Random(seed)
        keys = [f"k{i}" for i in range(40)]
        a = {k: rng.randrange(4) for k in keys}
        b = {k: rng.randrange(4) for k in keys}
        ours = adjusted_rand_index(a, b)
        ref = adjusted_rand_score([a[k] for k in keys], [b[k] for k in keys])
        assert ours == pytest.approx(ref, abs=1e-12)

    def test_identical_labelings(self):
        a = {"x": 0, "y": 0, "z": 1}
        assert adjusted_rand_index(a, a) == 1.0

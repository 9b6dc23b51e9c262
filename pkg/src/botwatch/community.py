"""Modularity community detection (Louvain method).

Modularity uses the full double-sum convention

    Q = (1/2m) sum_ij [A_ij - gamma * k_i * k_j / 2m] delta(c_i, c_j)

on the symmetrized graph, with A_ii equal to twice the self-loop weight
so that row sums equal weighted degrees.  Louvain is deterministic for a
fixed seed: node visiting order is shuffled by a seeded generator and
modularity-gain ties break toward the lowest candidate community id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .errors import DataError
from .graphs import WeightedGraph

__all__ = [
    "Partition",
    "louvain",
    "modularity",
    "community_sizes",
    "adjusted_rand_index",
]

#: stop aggregating when a full phase improves modularity by less than this
GAIN_EPS = 1e-7


@dataclass(frozen=True)
class Partition:
    """Node-to-community assignment with its modularity score."""

    assignment: dict[str, int]
    modularity: float
    resolution: float
    seed: int = 0
    phase_modularity: tuple[float, ...] = field(default=())

    @property
    def community_count(self) -> int:
        return len(set(self.assignment.values()))

    def communities(self) -> dict[int, list[str]]:
        groups: dict[int, list[str]] = {}
        for node, cid in self.assignment.items():
            groups.setdefault(cid, []).append(node)
        return groups


def _index_graph(g: WeightedGraph):
    """Symmetrize and convert to index-based adjacency.

    Returns (names, adj, loops, degrees, two_m) where adj[i] maps
    neighbor index -> weight (no self entries) and loops[i] = A_ii.
    """
    sg = g.symmetrized()
    names = list(sg.nodes)
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    adj: list[dict[int, float]] = [{} for _ in range(n)]
    loops = [0.0] * n
    for u, v, w in sg.edges():
        i, j = index[u], index[v]
        if i == j:
            loops[i] += 2.0 * w
        else:
            adj[i][j] = adj[i].get(j, 0.0) + w
            adj[j][i] = adj[j].get(i, 0.0) + w
    degrees = [sum(adj[i].values()) + loops[i] for i in range(n)]
    return names, adj, loops, degrees, sum(degrees)


def _modularity_indexed(adj, loops, degrees, two_m, comm, resolution) -> float:
    """Q for an index-based graph and community label list."""
    if two_m == 0:
        return 0.0
    internal = 0.0
    for i, nbrs in enumerate(adj):
        internal += loops[i]
        for j, w in nbrs.items():
            if comm[i] == comm[j]:
                internal += w  # each undirected edge visited twice
    tot: dict[int, float] = {}
    for i, c in enumerate(comm):
        tot[c] = tot.get(c, 0.0) + degrees[i]
    null = sum((t / two_m) ** 2 for t in tot.values())
    return internal / two_m - resolution * null


def modularity(g: WeightedGraph, p: Partition | dict[str, int],
               resolution: float | None = None) -> float:
    """Evaluate modularity of an assignment on the symmetrized graph.

    Raises DataError if any graph node is missing from the assignment.
    """
    assignment = p.assignment if isinstance(p, Partition) else p
    if resolution is None:
        resolution = p.resolution if isinstance(p, Partition) else 1.0
    names, adj, loops, degrees, two_m = _index_graph(g)
    comm = []
    for name in names:
        if name not in assignment:
            raise DataError(f"node '{name}' missing from partition")
        comm.append(assignment[name])
    return _modularity_indexed(adj, loops, degrees, two_m, comm, resolution)


def _one_phase(adj, loops, degrees, two_m, resolution, rng):
    """Louvain local-moving phase.  Returns community labels (dense)."""
    n = len(adj)
    comm = list(range(n))
    tot = list(degrees)  # total degree per community

    order = list(range(n))
    rng.shuffle(order)

    improved = True
    while improved:
        improved = False
        for i in order:
            ci = comm[i]
            ki = degrees[i]
            # weights from i to each adjacent community
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                links[comm[j]] = links.get(comm[j], 0.0) + w
            # remove i from its community
            tot[ci] -= ki
            base = links.get(ci, 0.0) - resolution * ki * tot[ci] / two_m
            best_c, best_gain = ci, base
            for c in sorted(links):
                if c == ci:
                    continue
                gain = links[c] - resolution * ki * tot[c] / two_m
                if gain > best_gain + 1e-12 or (
                    abs(gain - best_gain) <= 1e-12 and c < best_c
                ):
                    best_c, best_gain = c, gain
            comm[i] = best_c
            tot[best_c] += ki
            if best_c != ci:
                improved = True

    # dense relabel by first appearance in index order
    relabel: dict[int, int] = {}
    for c in comm:
        if c not in relabel:
            relabel[c] = len(relabel)
    return [relabel[c] for c in comm]


def _aggregate(adj, loops, comm):
    """Collapse communities into super-nodes with self-loops."""
    k = max(comm) + 1
    new_adj: list[dict[int, float]] = [{} for _ in range(k)]
    new_loops = [0.0] * k
    for i, nbrs in enumerate(adj):
        ci = comm[i]
        new_loops[ci] += loops[i]
        for j, w in nbrs.items():
            cj = comm[j]
            if ci == cj:
                new_loops[ci] += w  # both (i,j) and (j,i) visits sum to 2w
            else:
                new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
    new_degrees = [sum(new_adj[c].values()) + new_loops[c] for c in range(k)]
    return new_adj, new_loops, new_degrees


def louvain(
    g: WeightedGraph, resolution: float = 1.0, seed: int = 0
) -> Partition:
    """Louvain modularity maximization on a weighted graph.

    Directed input is symmetrized by weight summation first.  Phases of
    local moves and aggregation repeat until the modularity gain drops
    below ``GAIN_EPS``.
    """
    if len(g) == 0:
        raise DataError("cannot detect communities in an empty graph")
    if resolution <= 0:
        raise ValueError("resolution must be positive")

    names, adj, loops, degrees, two_m = _index_graph(g)
    n = len(names)
    if two_m == 0:
        assignment = {name: i for i, name in enumerate(names)}
        return Partition(assignment, 0.0, resolution, seed, (0.0,))

    rng = random.Random(seed)
    node_comm = list(range(n))  # original node -> current community
    phase_q: list[float] = []
    q_prev = _modularity_indexed(adj, loops, degrees, two_m, node_comm,
                                 resolution)

    while True:
        comm = _one_phase(adj, loops, degrees, two_m, resolution, rng)
        node_comm = [comm[c] for c in node_comm]
        q = _modularity_indexed(
            adj, loops, degrees, two_m, comm, resolution
        )
        phase_q.append(q)
        if q - q_prev < GAIN_EPS:
            break
        q_prev = q
        adj, loops, degrees = _aggregate(adj, loops, comm)

    # dense final labels by first appearance in graph node order
    relabel: dict[int, int] = {}
    assignment: dict[str, int] = {}
    for i, name in enumerate(names):
        c = node_comm[i]
        if c not in relabel:
            relabel[c] = len(relabel)
        assignment[name] = relabel[c]

    q_final = modularity(g, assignment, resolution)
    return Partition(
        assignment=assignment,
        modularity=q_final,
        resolution=resolution,
        seed=seed,
        phase_modularity=tuple(phase_q),
    )


def community_sizes(p: Partition) -> list[tuple[int, int]]:
    """(community id, size) pairs, descending by size, ties by id."""
    counts: dict[int, int] = {}
    for cid in p.assignment.values():
        counts[cid] = counts.get(cid, 0) + 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def adjusted_rand_index(
    labels_a: dict[str, object], labels_b: dict[str, object]
) -> float:
    """Adjusted Rand Index between two labelings over their shared keys."""
    keys = sorted(set(labels_a) & set(labels_b))
    if not keys:
        raise DataError("labelings share no keys")
    n = len(keys)
    table: dict[tuple[object, object], int] = {}
    rows: dict[object, int] = {}
    cols: dict[object, int] = {}
    for k in keys:
        a, b = labels_a[k], labels_b[k]
        table[(a, b)] = table.get((a, b), 0) + 1
        rows[a] = rows.get(a, 0) + 1
        cols[b] = cols.get(b, 0) + 1
    sum_cells = sum(comb(v, 2) for v in table.values())
    sum_rows = sum(comb(v, 2) for v in rows.values())
    sum_cols = sum(comb(v, 2) for v in cols.values())
    total = comb(n, 2)
    expected = sum_rows * sum_cols / total if total else 0.0
    max_index = (sum_rows + sum_cols) / 2
    if max_index == expected:
        return 1.0
    return (sum_cells - expected) / (max_index - expected)

"""Eigenvector centrality and the botmaster ranking table.

Power iteration with a +1 spectral shift (x <- A x + x) so that bipartite
structures such as stars converge; the shift leaves eigenvectors of A
unchanged.  Scores are normalized so the maximum is exactly 1.0, matching
the ranking-table convention of reporting the most central account as 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DataError
from .graphs import WeightedGraph

__all__ = [
    "CentralityScores",
    "eigenvector_centrality",
    "eigenvector_centrality_per_component",
    "rank_accounts",
    "ranking_table",
]

DIRECTIONS = ("in", "out", "undirected")


@dataclass(frozen=True)
class CentralityScores:
    scores: dict[str, float]
    iterations: int
    converged: bool
    direction: str


def _adjacency(g: WeightedGraph, direction: str) -> tuple[list[str], np.ndarray]:
    """Direction-resolved dense adjacency M with update x <- M @ x.

    direction "in": score flows along edges (mentioners feed the
    mentioned), i.e. M = A^T of the directed adjacency.
    """
    base = g.symmetrized() if direction == "undirected" else g
    names = list(base.nodes)
    index = {n: i for i, n in enumerate(names)}
    mat = np.zeros((len(names), len(names)))
    for u in base.nodes:
        for v, w in base.neighbors(u).items():
            if direction == "in":
                mat[index[v], index[u]] = w
            else:
                mat[index[u], index[v]] = w
    return names, mat


def eigenvector_centrality(
    g: WeightedGraph,
    direction: str = "undirected",
    tol: float = 1e-8,
    max_iter: int = 1000,
) -> CentralityScores:
    """Principal-eigenvector scores via shifted power iteration.

    Starts from the uniform vector, renormalizes to unit max each step,
    and stops when the max per-node change drops below ``tol``.  Raises
    DataError for empty or edgeless graphs (centrality undefined).
    """
    if direction not in DIRECTIONS:
        raise ConfigurationError(f"direction must be one of {DIRECTIONS}")
    if tol <= 0 or max_iter < 1:
        raise ConfigurationError("tol must be > 0 and max_iter >= 1")
    if len(g) == 0:
        raise DataError("centrality of an empty graph is undefined")
    if g.edge_count() == 0:
        raise DataError("centrality of a graph with no edges is undefined")

    names, mat = _adjacency(g, direction)
    x = np.ones(len(names))
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        y = mat @ x + x  # +x: spectral shift, keeps bipartite graphs stable
        m = y.max()
        if m <= 0:
            raise DataError("power iteration collapsed to zero vector")
        y /= m
        if np.max(np.abs(y - x)) < tol:
            x = y
            converged = True
            break
        x = y

    x = x / x.max()
    scores = {name: float(val) for name, val in zip(names, x)}
    return CentralityScores(
        scores=scores,
        iterations=iterations,
        converged=converged,
        direction=direction,
    )


def eigenvector_centrality_per_component(
    g: WeightedGraph, direction: str = "undirected",
    tol: float = 1e-8, max_iter: int = 1000,
) -> CentralityScores:
    """Centrality computed independently on each connected component.

    Avoids the dominant component starving smaller ones of score mass;
    each component's maximum is 1.0.  Components are taken on the
    symmetrized graph; single nodes without edges score 0.
    """
    sg = g.symmetrized()
    seen: set[str] = set()
    scores: dict[str, float] = {}
    iterations = 0
    converged = True
    for start in sg.nodes:
        if start in seen:
            continue
        # BFS component
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            u = queue.pop()
            for v in sg.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        sub = WeightedGraph(directed=g.directed)
        comp_set = set(comp)
        for u in g.nodes:
            if u in comp_set:
                sub.add_node(u)
                for v, w in g.neighbors(u).items():
                    if v in comp_set:
                        sub.add_edge(u, v, w)
        if sub.edge_count() == 0:
            for u in comp:
                scores[u] = 0.0
            continue
        part = eigenvector_centrality(sub, direction, tol, max_iter)
        scores.update(part.scores)
        iterations = max(iterations, part.iterations)
        converged = converged and part.converged
    return CentralityScores(scores, iterations, converged, direction)


def rank_accounts(
    c: CentralityScores, top_n: int
) -> list[tuple[str, float]]:
    """Top accounts by score, descending; ties break alphabetically."""
    if top_n < 1:
        raise ConfigurationError("top_n must be >= 1")
    ordered = sorted(c.scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return ordered[:top_n]


def ranking_table(ranking: list[tuple[str, float]]) -> str:
    """Two-column aligned text table; scores printed to six decimals.

    A score of exactly 1 prints as "1.0" to match the conventional
    normalized-top presentation.
    """
    if not ranking:
        return ""
    width = max(len(name) for name, _ in ranking)
    lines = []
    for name, score in ranking:
        text = "1.0" if score == 1.0 else f"{score:.6f}"
        lines.append(f"{name.ljust(width)}  {text}")
    return "\n".join(lines) + "\n"

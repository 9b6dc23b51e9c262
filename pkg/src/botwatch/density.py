"""2D Gaussian kernel density estimation over score pairs, with mode
detection for the human/bot bimodality check.

The estimate is the plain product-kernel sum

    f(u, v) = (1 / (n 2 pi hx hy)) *
              sum_i exp(-((u - x_i)^2 / (2 hx^2) + (v - y_i)^2 / (2 hy^2)))

evaluated on a uniform g x g grid over the unit square of score space.
Evaluation is vectorized via the separable kernel but is exact: it must
(and does) agree with the naive double sum to 1e-12.  No boundary
correction is applied, so modes hugging the edges are attenuated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bot_scoring import ScoreCache, score_pairs
from .errors import ConfigurationError, DataError

__all__ = [
    "KdeGrid",
    "ModeReport",
    "BANDWIDTH_RULES",
    "select_bandwidth",
    "kde2d",
    "find_modes",
    "bimodality_report",
    "DEFAULT_PAIRS",
]

BANDWIDTH_RULES = ("scott", "silverman", "fixed")

#: the four classifier pairs analyzed by default
DEFAULT_PAIRS = (
    ("content", "sentiment"),
    ("network", "friend"),
    ("temporal", "friend"),
    ("network", "temporal"),
)


@dataclass(frozen=True)
class KdeGrid:
    """Evaluated density surface on a uniform grid over [0,1]^2."""

    x_axis: np.ndarray  # shape (g,)
    y_axis: np.ndarray  # shape (g,)
    density: np.ndarray  # shape (g, g); density[i, j] = f(x_axis[i], y_axis[j])
    bandwidth: tuple[float, float]
    n: int

    @property
    def resolution(self) -> int:
        return len(self.x_axis)

    def total_mass(self) -> float:
        """Riemann sum of density x cell area (trapezoid-free, cell-based)."""
        cell = (self.x_axis[1] - self.x_axis[0]) * (self.y_axis[1] - self.y_axis[0])
        return float(self.density.sum() * cell)


@dataclass(frozen=True)
class ModeReport:
    """Detected local maxima of a density grid."""

    modes: tuple[tuple[float, float, float], ...]  # (x, y, density), desc.
    separation: float | None
    classification: str  # unimodal | bimodal | multimodal


def select_bandwidth(
    points: list[tuple[float, float]],
    rule: str = "scott",
    fixed_h: float | None = None,
) -> tuple[float, float]:
    """Per-axis bandwidths by Scott's or Silverman's rule, or fixed.

    Scott (d=2): h_d = sigma_d * n^(-1/6).
    Silverman (d=2): h_d = sigma_d * (4 / (d + 2) / n)^(1 / (d + 4)) = sigma_d * n^(-1/6).
    """
    if rule not in BANDWIDTH_RULES:
        raise ConfigurationError(f"bandwidth rule must be one of {BANDWIDTH_RULES}")
    if rule == "fixed":
        if fixed_h is None or fixed_h <= 0:
            raise ConfigurationError("fixed bandwidth requires a positive h")
        return (fixed_h, fixed_h)

    n = len(points)
    if n < 2:
        raise DataError(
            "data-driven bandwidth needs >= 2 points; use a fixed bandwidth"
        )
    pts = np.asarray(points, dtype=float)
    sx = float(pts[:, 0].std(ddof=1))
    sy = float(pts[:, 1].std(ddof=1))
    if sx == 0.0 or sy == 0.0:
        raise DataError(
            "zero variance on an axis; use a fixed bandwidth instead"
        )
    d = 2
    if rule == "scott":
        factor = n ** (-1.0 / (d + 4))
    else:  # silverman
        factor = (4.0 / (d + 2) / n) ** (1.0 / (d + 4))
    return (sx * factor, sy * factor)


def kde2d(
    points: list[tuple[float, float]],
    bandwidth: tuple[float, float],
    grid_resolution: int = 128,
) -> KdeGrid:
    """Evaluate the Gaussian-product KDE on a uniform grid over [0,1]^2."""
    if not points:
        raise DataError("kde2d requires at least one point")
    hx, hy = bandwidth
    if hx <= 0 or hy <= 0:
        raise ConfigurationError("bandwidths must be positive")
    if grid_resolution < 2:
        raise ConfigurationError("grid resolution must be >= 2")

    pts = np.asarray(points, dtype=float)
    n = len(pts)
    xs = np.linspace(0.0, 1.0, grid_resolution)
    ys = np.linspace(0.0, 1.0, grid_resolution)

    # separable kernel: density = Kx @ Ky^T summed over samples, exactly
    # the double sum re-ordered per vertex
    kx = np.exp(-((xs[:, None] - pts[None, :, 0]) ** 2) / (2.0 * hx * hx))
    ky = np.exp(-((ys[:, None] - pts[None, :, 1]) ** 2) / (2.0 * hy * hy))
    density = (kx @ ky.T) / (n * 2.0 * math.pi * hx * hy)

    return KdeGrid(
        x_axis=xs, y_axis=ys, density=density, bandwidth=(hx, hy), n=n
    )


def find_modes(
    grid: KdeGrid,
    min_density_fraction: float = 0.05,
    merge_radius: float | None = None,
) -> ModeReport:
    """Locate strict local maxima of the grid and classify modality.

    A vertex qualifies if it is strictly greater than its (up to 8)
    neighbors and at least ``min_density_fraction`` of the global
    maximum.  Candidates within ``merge_radius`` (score units) collapse
    onto the denser one.  Default merge radius: max bandwidth.
    """
    if not (0.0 < min_density_fraction < 1.0):
        raise ConfigurationError("min_density_fraction must be in (0,1)")
    if merge_radius is None:
        merge_radius = max(grid.bandwidth)

    d = grid.density
    g = grid.resolution
    floor = min_density_fraction * float(d.max())

    candidates: list[tuple[float, float, float]] = []
    for i in range(g):
        for j in range(g):
            v = d[i, j]
            if v < floor:
                continue
            strict_max = True
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    if di == 0 and dj == 0:
                        continue
                    ni, nj = i + di, j + dj
                    if 0 <= ni < g and 0 <= nj < g and d[ni, nj] >= v:
                        strict_max = False
                        break
                if not strict_max:
                    break
            if strict_max:
                candidates.append(
                    (float(grid.x_axis[i]), float(grid.y_axis[j]), float(v))
                )

    candidates.sort(key=lambda m: (-m[2], m[0], m[1]))
    kept: list[tuple[float, float, float]] = []
    for x, y, v in candidates:
        if all(math.hypot(x - kx, y - ky) > merge_radius for kx, ky, _ in kept):
            kept.append((x, y, v))

    if len(kept) >= 2:
        (x1, y1, _), (x2, y2, _) = kept[0], kept[1]
        separation = math.hypot(x1 - x2, y1 - y2)
    else:
        separation = None

    if len(kept) <= 1:
        classification = "unimodal"
    elif len(kept) == 2:
        classification = "bimodal"
    else:
        classification = "multimodal"

    return ModeReport(
        modes=tuple(kept), separation=separation, classification=classification
    )


@dataclass(frozen=True)
class PairDensity:
    axis_x: str
    axis_y: str
    grid: KdeGrid | None
    report: ModeReport | None
    error: str | None = None


def bimodality_report(
    cache: ScoreCache,
    pairs: list[tuple[str, str]] | None = None,
    rule: str = "scott",
    fixed_h: float | None = None,
    grid_resolution: int = 128,
    min_density_fraction: float = 0.05,
) -> list[PairDensity]:
    """Run score_pairs -> bandwidth -> KDE -> modes for each axis pair.

    One failing pair (e.g. too few points for a data-driven bandwidth)
    is reported as an error entry and does not abort the others.
    """
    if len(cache) == 0:
        raise DataError("score cache is empty")
    if pairs is None:
        pairs = list(DEFAULT_PAIRS)

    results: list[PairDensity] = []
    for axis_x, axis_y in pairs:
        try:
            points = score_pairs(cache, axis_x, axis_y)
            if not points:
                raise DataError(
                    f"no accounts carry both '{axis_x}' and '{axis_y}' scores"
                )
            if len(points) == 1 and rule != "fixed":
                bandwidth = (0.05, 0.05)  # lone point: nominal bandwidth
            else:
                bandwidth = select_bandwidth(points, rule, fixed_h)
            grid = kde2d(points, bandwidth, grid_resolution)
            report = find_modes(grid, min_density_fraction)
            results.append(PairDensity(axis_x, axis_y, grid, report))
        except (ConfigurationError, DataError) as exc:
            results.append(PairDensity(axis_x, axis_y, None, None, str(exc)))
    return results

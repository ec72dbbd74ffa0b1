"""Pareto dominance, hypervolume, and knee-point selection.

All objectives are minimized. Points are rows of an (n, 3) array
(f1, f2, f3) = (1 - reliability, levelized cost, 1 - renewable share).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, order=True)
class Candidate:
    """A sizing decision: number of PV modules and hydro turbine units."""

    n_pv: int
    n_ht: int

    def __post_init__(self):
        if self.n_pv < 0 or self.n_ht < 0:
            raise ValueError("candidate counts must be >= 0")


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """True when a is no worse than b everywhere and better somewhere."""
    return bool(np.all(a <= b) and np.any(a < b))


def nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row.

    Duplicates of a nondominated point are all kept; they dominate
    nothing and are dominated by nothing.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    mask = np.ones(n, dtype=bool)
    for i in range(n):
        if not mask[i]:
            continue
        # <= on all coords and < on at least one: strict dominance
        no_worse = np.all(pts <= pts[i], axis=1)
        better = np.any(pts < pts[i], axis=1)
        if np.any(no_worse & better):
            mask[i] = False
    return mask


def nondominated_front(points: np.ndarray) -> np.ndarray:
    """Indices of nondominated rows, in original order."""
    return np.flatnonzero(nondominated_mask(points))


def hypervolume_2d(points: np.ndarray, ref: np.ndarray) -> float:
    """Dominated area between a 2-D front and a reference point."""
    pts = np.asarray(points, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if pts.size == 0:
        return 0.0
    pts = pts[np.all(pts < ref, axis=1)]
    if pts.size == 0:
        return 0.0
    pts = pts[nondominated_mask(pts)]
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    area = 0.0
    prev_f2 = ref[1]
    for f1, f2 in pts:
        if f2 < prev_f2:
            area += (ref[0] - f1) * (prev_f2 - f2)
            prev_f2 = f2
    return area


def hypervolume_3d(points: np.ndarray, ref: np.ndarray) -> float:
    """Dominated volume between a 3-D front and a reference point.

    Sweeps slabs along the third axis and integrates the 2-D area of
    everything active below each slab.
    """
    pts = np.asarray(points, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if pts.size == 0:
        return 0.0
    pts = pts[np.all(pts < ref, axis=1)]
    if pts.size == 0:
        return 0.0
    pts = pts[nondominated_mask(pts)]
    levels = np.unique(pts[:, 2])
    edges = np.append(levels, ref[2])
    volume = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        active = pts[pts[:, 2] <= lo][:, :2]
        volume += hypervolume_2d(active, ref[:2]) * (hi - lo)
    return volume


def normalized(points: np.ndarray) -> np.ndarray:
    """Per-column min-max rescale to [0, 1]; constant columns map to 0."""
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0)
    span = pts.max(axis=0) - lo
    out = np.zeros_like(pts)
    nonflat = span > 0
    out[:, nonflat] = (pts[:, nonflat] - lo[nonflat]) / span[nonflat]
    return out


def select_knee(points: np.ndarray, candidates: list[Candidate]) -> int:
    """Index of the front member nearest the normalized ideal point.

    Ties break toward fewer PV modules, then fewer turbine units, so the
    pick is deterministic regardless of front ordering.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] != len(candidates):
        raise ValueError("points and candidates must align")
    if pts.shape[0] == 0:
        raise ValueError("cannot select from an empty front")
    dist = np.sqrt((normalized(pts) ** 2).sum(axis=1))
    best = 0
    for i in range(1, len(candidates)):
        if dist[i] < dist[best] or (
            dist[i] == dist[best]
            and (candidates[i].n_pv, candidates[i].n_ht)
            < (candidates[best].n_pv, candidates[best].n_ht)
        ):
            best = i
    return best

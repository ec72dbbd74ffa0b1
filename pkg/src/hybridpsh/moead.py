"""Decomposition-based multi-objective search over sizing candidates.

MOEA/D with Tchebycheff scalarization: each weight vector owns one
subproblem, mating happens inside a small neighborhood of similar
weights, and improved children replace neighbors in place. Decision
variables live on an integer step grid, so results are directly
comparable with exhaustive enumeration of the same grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigError, EvaluationError, GridTooLargeError
from .pareto import Candidate, nondominated_mask

Evaluator = Callable[[Candidate], tuple[float, float, float]]

WEIGHT_FLOOR = 1e-6


@dataclass(frozen=True)
class VariableBounds:
    """Inclusive integer range with a step; values are lo, lo+step, ..."""

    lo: int
    hi: int
    step: int = 1

    def __post_init__(self):
        if self.step < 1:
            raise ConfigError("step must be >= 1")
        if self.hi < self.lo:
            raise ConfigError("hi must be >= lo")

    @property
    def n_levels(self) -> int:
        return (self.hi - self.lo) // self.step + 1

    def values(self) -> np.ndarray:
        return self.lo + self.step * np.arange(self.n_levels)

    def snap(self, x: float) -> int:
        """Nearest grid value to a continuous x, clipped to the range."""
        idx = int(np.rint((x - self.lo) / self.step))
        idx = min(max(idx, 0), self.n_levels - 1)
        return self.lo + idx * self.step


@dataclass(frozen=True)
class SearchSpace:
    n_pv: VariableBounds
    n_ht: VariableBounds

    @property
    def n_cells(self) -> int:
        return self.n_pv.n_levels * self.n_ht.n_levels

    def snap(self, x_pv: float, x_ht: float) -> Candidate:
        return Candidate(self.n_pv.snap(x_pv), self.n_ht.snap(x_ht))


@dataclass(frozen=True)
class MoeadConfig:
    """Hyperparameters; defaults give 105 weight vectors in 3 objectives."""

    h_divisions: int = 13
    t_neighbors: int = 10
    generations: int = 200
    sbx_eta: float = 15.0
    mutation_eta: float = 20.0
    mutation_prob: float = 0.5

    def __post_init__(self):
        if self.h_divisions < 1:
            raise ConfigError("h_divisions must be >= 1")
        if self.t_neighbors < 2:
            raise ConfigError("t_neighbors must be >= 2")
        if self.generations < 0:
            raise ConfigError("generations must be >= 0")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ConfigError("mutation_prob must be in [0, 1]")


@dataclass
class MoeadResult:
    candidates: list[Candidate]
    objectives: np.ndarray
    n_evaluations: int
    generations_run: int
    evaluated: dict[Candidate, tuple[float, float, float]] = field(repr=False, default_factory=dict)


def weight_vectors(n_objectives: int, h: int) -> np.ndarray:
    """Simplex-lattice weights: nonnegative multiples of 1/h summing to 1."""
    if n_objectives < 2:
        raise ConfigError("need at least two objectives")
    rows = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], h, n_objectives)
    return np.array(rows, dtype=float) / h


def neighbor_table(weights: np.ndarray, t: int) -> np.ndarray:
    """Indices of the t closest weight vectors (by Euclidean distance)."""
    n = weights.shape[0]
    if t > n:
        raise ConfigError("neighborhood larger than population")
    d = np.linalg.norm(weights[:, None, :] - weights[None, :, :], axis=2)
    order = np.argsort(d, axis=1, kind="stable")
    return order[:, :t]


def tchebycheff(f: np.ndarray, weights: np.ndarray, z_star: np.ndarray) -> float:
    """max_i max(w_i, floor) * |f_i - z_i| with a floor on zero weights."""
    w = np.maximum(weights, WEIGHT_FLOOR)
    return float(np.max(w * np.abs(f - z_star)))


def _sbx_child(x1: float, x2: float, lo: float, hi: float, eta: float, u: float) -> float:
    """First child of simulated binary crossover for one variable."""
    if u <= 0.5:
        beta = (2.0 * u) ** (1.0 / (eta + 1.0))
    else:
        beta = (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0))
    child = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2)
    return min(max(child, lo), hi)


def _poly_mutate(x: float, lo: float, hi: float, eta: float, u: float) -> float:
    """Polynomial mutation for one variable over [lo, hi]."""
    if hi <= lo:
        return x
    if u < 0.5:
        delta = (2.0 * u) ** (1.0 / (eta + 1.0)) - 1.0
    else:
        delta = 1.0 - (2.0 * (1.0 - u)) ** (1.0 / (eta + 1.0))
    child = x + delta * (hi - lo)
    return min(max(child, lo), hi)


class _Memo:
    """Caches evaluator calls so repeated candidates cost nothing."""

    def __init__(self, evaluator: Evaluator):
        self._evaluator = evaluator
        self.table: dict[Candidate, tuple[float, float, float]] = {}
        self.calls = 0

    def __call__(self, cand: Candidate) -> np.ndarray:
        hit = self.table.get(cand)
        if hit is None:
            try:
                f = self._evaluator(cand)
            except Exception as exc:  # attach the offending candidate
                raise EvaluationError(cand, exc) from exc
            hit = (float(f[0]), float(f[1]), float(f[2]))
            self.table[cand] = hit
            self.calls += 1
        return np.array(hit)


def moead_run(
    evaluator: Evaluator,
    space: SearchSpace,
    seed: int,
    config: MoeadConfig = MoeadConfig(),
) -> MoeadResult:
    """Run the search and return the nondominated archive of everything seen.

    The seed has no default on purpose: runs must be reproducible, and
    that only means something when the caller owns the seed. For a fixed
    (seed, config, space, evaluator) the population loop is serial and
    every random draw happens in a fixed order, so reruns reproduce the
    archive bit for bit.
    """
    rng = np.random.default_rng(seed)
    memo = _Memo(evaluator)

    weights = weight_vectors(3, config.h_divisions)
    n_pop = weights.shape[0]
    neighbors = neighbor_table(weights, config.t_neighbors)

    pv_vals = space.n_pv.values()
    ht_vals = space.n_ht.values()
    pop = [
        Candidate(int(pv_vals[i]), int(ht_vals[j]))
        for i, j in zip(
            rng.integers(0, len(pv_vals), size=n_pop),
            rng.integers(0, len(ht_vals), size=n_pop),
        )
    ]
    pop_f = np.array([memo(c) for c in pop])
    z_star = pop_f.min(axis=0)

    for gen in range(config.generations):
        # Per-generation normalization keeps the scalarization balanced
        # even though the three objectives live on different scales.
        f_lo = pop_f.min(axis=0)
        f_span = np.maximum(pop_f.max(axis=0) - f_lo, 1e-12)

        def norm(f):
            return (f - f_lo) / f_span

        for i in range(n_pop):
            hood = neighbors[i]
            a, b = rng.choice(hood, size=2, replace=False)
            u_cross = rng.random(2)
            u_coin = rng.random(2)
            u_mut = rng.random(2)

            x_pv = _sbx_child(
                pop[a].n_pv, pop[b].n_pv, space.n_pv.lo, space.n_pv.hi, config.sbx_eta, u_cross[0]
            )
            x_ht = _sbx_child(
                pop[a].n_ht, pop[b].n_ht, space.n_ht.lo, space.n_ht.hi, config.sbx_eta, u_cross[1]
            )
            if u_coin[0] < config.mutation_prob:
                x_pv = _poly_mutate(
                    x_pv, space.n_pv.lo, space.n_pv.hi, config.mutation_eta, u_mut[0]
                )
            if u_coin[1] < config.mutation_prob:
                x_ht = _poly_mutate(
                    x_ht, space.n_ht.lo, space.n_ht.hi, config.mutation_eta, u_mut[1]
                )
            child = space.snap(x_pv, x_ht)
            f_child = memo(child)
            z_star = np.minimum(z_star, f_child)

            fc = norm(f_child)
            zn = norm(z_star)
            for j in hood:
                if tchebycheff(fc, weights[j], zn) < tchebycheff(norm(pop_f[j]), weights[j], zn):
                    pop[j] = child
                    pop_f[j] = f_child

    cands = sorted(memo.table)
    objs = np.array([memo.table[c] for c in cands]).reshape(len(cands), 3)
    keep = nondominated_mask(objs)
    return MoeadResult(
        candidates=[c for c, k in zip(cands, keep) if k],
        objectives=objs[keep],
        n_evaluations=memo.calls,
        generations_run=config.generations,
        evaluated=dict(memo.table),
    )


def brute_force_pareto(
    evaluator: Evaluator, space: SearchSpace, max_cells: int = 20_000
) -> MoeadResult:
    """Exhaustively evaluate the grid and keep the nondominated set.

    Refuses grids above max_cells; use moead_run for those.
    """
    if space.n_cells > max_cells:
        raise GridTooLargeError(
            f"grid has {space.n_cells} cells, more than the {max_cells} allowed"
        )
    memo = _Memo(evaluator)
    cands = [
        Candidate(int(p), int(h)) for p in space.n_pv.values() for h in space.n_ht.values()
    ]
    objs = np.array([memo(c) for c in cands]).reshape(len(cands), 3)
    keep = nondominated_mask(objs)
    order = np.flatnonzero(keep)
    order = order[np.lexsort(([cands[i].n_ht for i in order], [cands[i].n_pv for i in order]))]
    return MoeadResult(
        candidates=[cands[i] for i in order],
        objectives=objs[order],
        n_evaluations=memo.calls,
        generations_run=0,
        evaluated=dict(memo.table),
    )

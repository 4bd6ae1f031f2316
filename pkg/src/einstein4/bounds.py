"""Deterministic box-constrained global minimization by grid refinement.

The engine sweeps a uniform grid over a box, keeps the best point whose
constraint margins are all ``>= -feas_tol``, then runs ``depth`` rounds of
local re-gridding in a window shrinking by a fixed factor around the
incumbent.  Results carry a resolution certificate rather than a rigorous
bound: ``best_value`` is the best value found at the recorded final grid
resolution, and refining the grid can only improve it.

Constraints and objectives are polynomials (see `poly`); the objective may be
a ratio of two polynomials with nonvanishing denominator on the box.  Grid
evaluation is sharded over contiguous flat-index ranges and merged by
``(value, flat index)``, so results are identical for any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .poly import Poly


class EngineError(RuntimeError):
    pass


@dataclass(frozen=True)
class OptimizationProblem:
    """Box-bounded minimization with polynomial margin constraints.

    Affine equality constraints are expected to be eliminated by substitution
    before the problem is built; ``eliminated`` documents them for reports.
    A point is feasible iff every constraint margin is >= -feas_tol.
    """

    name: str
    variables: tuple[str, ...]
    lower: np.ndarray
    upper: np.ndarray
    objective: Poly
    constraints: tuple[tuple[str, Poly], ...]
    objective_den: Poly | None = None
    feas_tol: float = 1e-9
    eliminated: tuple[str, ...] = ()

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=np.float64)
        hi = np.asarray(self.upper, dtype=np.float64)
        d = len(self.variables)
        if lo.shape != (d,) or hi.shape != (d,):
            raise ValueError("bounds must match the number of variables")
        if np.any(hi < lo):
            raise ValueError("upper bound below lower bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class OptimizationResult:
    """Best feasible point found, with its resolution certificate."""

    problem: str
    feasible: bool
    best_value: float | None
    minimizer: dict[str, float] | None
    grid_resolution: float
    refinement_depth: int
    feasible_points_evaluated: int
    points_evaluated: int

    def minimizer_array(self) -> np.ndarray:
        if self.minimizer is None:
            raise EngineError(f"{self.problem}: no feasible point found")
        return np.array(list(self.minimizer.values()))


def _flatten_problem(problem: OptimizationProblem):
    obj_c, obj_e = problem.objective.flatten()
    if problem.objective_den is not None:
        den_c, den_e = problem.objective_den.flatten()
    else:
        den_c = np.empty(0, dtype=np.float64)
        den_e = np.empty((0, problem.dim), dtype=np.int32)
    parts_c, parts_e, offsets = [], [], [0]
    for _, margin in problem.constraints:
        c, e = margin.flatten()
        parts_c.append(c)
        parts_e.append(e)
        offsets.append(offsets[-1] + c.shape[0])
    if parts_c:
        con_c = np.concatenate(parts_c)
        con_e = np.concatenate(parts_e, axis=0)
    else:
        con_c = np.empty(0, dtype=np.float64)
        con_e = np.empty((0, problem.dim), dtype=np.int32)
    con_off = np.asarray(offsets, dtype=np.int64)
    return obj_c, obj_e, den_c, den_e, con_c, np.ascontiguousarray(con_e), con_off


def _scan_round(scan, flat_data, lower, upper, counts, feas_tol, threads):
    total = int(np.prod(counts))
    obj_c, obj_e, den_c, den_e, con_c, con_e, con_off = flat_data
    args = (np.ascontiguousarray(lower), np.ascontiguousarray(upper),
            np.ascontiguousarray(counts, dtype=np.int64))

    def run(start, stop):
        return scan(*args, start, stop,
                    obj_c, obj_e, den_c, den_e, con_c, con_e, con_off, feas_tol)

    if threads <= 1 or total < (1 << 16):
        results = [run(0, total)]
    else:
        edges = np.linspace(0, total, threads + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda se: run(int(se[0]), int(se[1])),
                                    zip(edges[:-1], edges[1:])))
    # merge by (value, flat index): invariant under sharding
    best_val, best_flat, feas = np.inf, -1, 0
    for val, flat, count in results:
        feas += count
        if flat >= 0 and (val < best_val or (val == best_val and flat < best_flat)):
            best_val, best_flat = val, flat
    return best_val, best_flat, feas, total


def _decode(flat, lower, upper, counts):
    d = counts.shape[0]
    steps = np.where(counts > 1, (upper - lower) / np.maximum(counts - 1, 1), 0.0)
    x = np.empty(d)
    rem = int(flat)
    for j in range(d - 1, -1, -1):
        k = rem % int(counts[j])
        rem //= int(counts[j])
        x[j] = lower[j] + k * steps[j]
    return x, float(steps.max())


def minimize(problem: OptimizationProblem, grid: int = 64, depth: int = 6,
             shrink: float = 0.25, threads: int = 1,
             backend: str | None = None) -> OptimizationResult:
    """Exhaustive grid sweep plus ``depth`` refinement rounds.

    grid >= 8 points per non-degenerate axis; each refinement round re-grids
    a window of ``shrink**round`` times the original width centered on the
    incumbent (clipped into the box) and keeps the better point.  An
    infeasible first sweep returns an explicit infeasible result.
    """
    if grid < 8:
        raise ValueError("grid must be >= 8")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    scan = _kernels.get_backend(backend).scan_box
    flat_data = _flatten_problem(problem)
    widths = problem.upper - problem.lower
    counts0 = np.where(widths > 0, grid, 1).astype(np.int64)

    best_val, best_flat, feas, total = _scan_round(
        scan, flat_data, problem.lower, problem.upper, counts0,
        problem.feas_tol, threads)
    evaluated = total
    if best_flat < 0:
        _, res0 = _decode(0, problem.lower, problem.upper, counts0)
        return OptimizationResult(
            problem=problem.name, feasible=False, best_value=None, minimizer=None,
            grid_resolution=res0, refinement_depth=0,
            feasible_points_evaluated=0, points_evaluated=evaluated)

    best_x, resolution = _decode(best_flat, problem.lower, problem.upper, counts0)
    for r in range(1, depth + 1):
        w = widths * (shrink ** r)
        lo = np.maximum(problem.lower, np.minimum(best_x - w / 2.0, problem.upper - w))
        hi = np.minimum(problem.upper, lo + w)
        counts = np.where(hi > lo, grid, 1).astype(np.int64)
        val, flat, nfeas, total = _scan_round(
            scan, flat_data, lo, hi, counts, problem.feas_tol, threads)
        evaluated += total
        feas += nfeas
        if flat >= 0 and val < best_val:
            best_val = val
            best_x, resolution = _decode(flat, lo, hi, counts)
        else:
            _, resolution = _decode(0, lo, hi, counts)

    return OptimizationResult(
        problem=problem.name, feasible=True, best_value=float(best_val),
        minimizer={n: float(v) for n, v in zip(problem.variables, best_x)},
        grid_resolution=resolution, refinement_depth=depth,
        feasible_points_evaluated=feas, points_evaluated=evaluated)

"""The constrained optimizations behind the sectional-curvature bounds.

All problems are phrased at Einstein constant 1.  Trace equalities
(sum a = 1, sum b = 0, and their half-spectra analogues) are eliminated by
substitution before gridding, and strict inequalities are closed: the
objectives are continuous and the targets are infima, so closing the feasible
set changes nothing at the reported resolutions.  Variable boxes are [-3, 3];
admissibility (|b1| <= 1/3 - a1 and the trace constraints) confines the
feasible sets well inside.

Where the b-components appear they are parametrized by gap fractions

    u = (b2 - b1) / (a2 - a1),   v = (b3 - b2) / (a3 - a2),

both confined to [-1, 1]: the two adjacent admissibility gaps become exact
box edges (where the stationarity-feasible wedges press), and the third gap
|b3 - b1| <= a3 - a1 holds automatically.  This is a bijective change of
variables, so the feasible sets and optima are unchanged; it exists purely
so that a uniform grid reaches the thin feasible wedges.  Variable boxes are
the tightest ranges implied by the constraints themselves (derivations in
each builder).

Encodings
---------
* ``three_positive_bound``     min sectional curvature under a 3-positive
  operator: 3-positivity + stationarity at the minimum point; plus the two
  analytic curves in the auxiliary ratio k = a2/a1 whose band yields the
  1/30 bound.
* ``four_positive_bound``      min sectional curvature under K < 1: the
  b-eliminated stationarity relaxation
      a1 >= a1^2 + 2 a2 a3 - (a3 - a2)^2 / 2
  in (a1, a2) alone, the exact form whose boundary case has the closed-form
  root 4 - sqrt(17).  (Keeping the full b-variables with all admissibility
  constraints yields a strictly larger minimum; the relaxation is the
  encoding that realizes the stated constant.)
* ``upper_bound_step1/step2``  the two-step argument that a sectional upper
  bound below (14 - sqrt(19))/12 forces a 3-positive operator.
* ``weyl_min_eigenvalue_bound``  smallest half-Weyl eigenvalue against the
  largest, with the closed-form root for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import OptimizationProblem, OptimizationResult, minimize
from .poly import Poly, variables

SQRT17 = math.sqrt(17.0)
SQRT19 = math.sqrt(19.0)

#: sectional upper bound of the two-step argument, (14 - sqrt(19))/12
UPPER_K_BOUND = (14.0 - SQRT19) / 12.0
#: resulting sectional lower bound, (5 - sqrt(19))/12
LOWER_K_BOUND = (5.0 - SQRT19) / 12.0
#: sectional lower bound under K < 1, 4 - sqrt(17)
FOUR_POS_BOUND = 4.0 - SQRT17
#: sectional lower bound under a 3-positive operator
THREE_POS_BOUND = 1.0 / 30.0

def _b_from_gap_fractions(a1, a2, a3, u, v):
    """b-components from gap fractions; trace-free by construction.

    b2 - b1 = u (a2 - a1) and b3 - b2 = v (a3 - a2) with b1 + b2 + b3 = 0;
    for |u|, |v| <= 1 all three admissibility gap constraints hold (the third
    follows from the triangle inequality).
    """
    g21 = a2 - a1
    g32 = a3 - a2
    b2 = (u * g21 - v * g32) * (1.0 / 3.0)
    b1 = b2 - u * g21
    b3 = b2 + v * g32
    return b1, b2, b3


def stationarity_poly(a1, a2, a3, b1, b2, b3):
    """a1 - (a1^2 + b1^2 + 2 (a2 a3 + b2 b3)), the min-sectional stationarity margin."""
    return a1 - (a1 * a1 + b1 * b1 + 2.0 * (a2 * a3 + b2 * b3))


# ---------------------------------------------------------------------------
# 3-positive operator => K > 1/30


def curve_lower(k):
    """(2k - 1) / (5k^2 + 14k + 11): lower edge of the feasible a1 band."""
    k = np.asarray(k, dtype=np.float64)
    return (2.0 * k - 1.0) / (5.0 * k * k + 14.0 * k + 11.0)


def curve_upper(k):
    """(4k - sqrt(8k^2 - 8k + 1)) / (8k^2 + 8k - 1): upper edge of the band."""
    k = np.asarray(k, dtype=np.float64)
    return (4.0 * k - np.sqrt(8.0 * k * k - 8.0 * k + 1.0)) / (8.0 * k * k + 8.0 * k - 1.0)


def curve_upper_discarded(k):
    """Second root branch (4k + sqrt(...))/(...), empty for k > 1 by the
    ordering a2 <= a3; kept so the emptiness is checked, not assumed."""
    k = np.asarray(k, dtype=np.float64)
    return (4.0 * k + np.sqrt(8.0 * k * k - 8.0 * k + 1.0)) / (8.0 * k * k + 8.0 * k - 1.0)


def three_positive_problem(feas_tol: float = 1e-9) -> OptimizationProblem:
    """Variables (a1, a2, u, v).

    Box: 3-positivity forces a2 >= -2a1, and a2 <= (1 - a1)/2 from the trace
    and ordering, so a1 >= -1/3; a1 <= 1/3 <= a2's upper bound (1 - a1)/2 <= 2/3.
    """
    a1, a2, u, v = variables(4)
    a3 = 1.0 - a1 - a2
    b1, b2, b3 = _b_from_gap_fractions(a1, a2, a3, u, v)
    cons = [
        ("a2-a1", a2 - a1),
        ("a3-a2", a3 - a2),
        ("3-pos+", 2.0 * a1 + a2 + b2),
        ("3-pos-", 2.0 * a1 + a2 - b2),
        ("stationarity", stationarity_poly(a1, a2, a3, b1, b2, b3)),
    ]
    return OptimizationProblem(
        name="three_positive_sectional_bound",
        variables=("a1", "a2", "u", "v"),
        lower=np.array([-1.0 / 3.0, -1.0 / 3.0, -1.0, -1.0]),
        upper=np.array([1.0 / 3.0, 2.0 / 3.0, 1.0, 1.0]),
        objective=a1, constraints=tuple(cons), feas_tol=feas_tol,
        eliminated=("a3 = 1 - a1 - a2",
                    "b from gap fractions u = (b2-b1)/(a2-a1), v = (b3-b2)/(a3-a2)"),
    )


def curve_min_problem() -> OptimizationProblem:
    """min over k in [1, 4] of the lower curve, as a rational objective."""
    (k,) = variables(1)
    return OptimizationProblem(
        name="three_positive_curve_min",
        variables=("k",),
        lower=np.array([1.0]), upper=np.array([4.0]),
        objective=2.0 * k - 1.0,
        objective_den=5.0 * k * k + 14.0 * k + 11.0,
        constraints=(),
    )


@dataclass(frozen=True)
class ThreePositiveBound:
    """Direct minimization plus the analytic k-curve analysis."""

    direct: OptimizationResult
    curve_min: OptimizationResult
    #: k-window where the band lower < upper is nonempty (within [1, 4])
    band_window: tuple[float, float]
    #: True if the discarded branch a1 >= (4k + sqrt(...))/(...) is confirmed
    #: incompatible with a2 <= a3 for every sampled k > 1
    discarded_branch_empty: bool
    target: float = THREE_POS_BOUND


def three_positive_bound(grid: int = 64, depth: int = 6, threads: int = 1,
                         backend: str | None = None,
                         k_samples: int = 601) -> ThreePositiveBound:
    direct = minimize(three_positive_problem(), grid=grid, depth=depth,
                      threads=threads, backend=backend)
    curve = minimize(curve_min_problem(), grid=101, depth=max(depth, 3),
                     threads=1, backend=backend)
    ks = np.linspace(1.0, 4.0, k_samples)
    lower = curve_lower(ks)
    upper = curve_upper(ks)
    open_band = ks[lower < upper]
    window = (float(open_band.min()), float(open_band.max())) if open_band.size else (math.nan, math.nan)
    # discarded branch: a1 on that branch forces a2 - a3 = (2k+1) a1 - 1 > 0 for k > 1
    ks_gt1 = ks[ks > 1.0]
    empty = bool(np.all((2.0 * ks_gt1 + 1.0) * curve_upper_discarded(ks_gt1) - 1.0 > 0.0))
    return ThreePositiveBound(direct=direct, curve_min=curve,
                              band_window=window, discarded_branch_empty=empty)


# ---------------------------------------------------------------------------
# K < 1 => K > 4 - sqrt(17)


def four_positive_problem(with_stationarity: bool = True,
                          feas_tol: float = 1e-9) -> OptimizationProblem:
    """Variables (a1, a2).

    Box: a1 + a2 >= 0 and a2 <= a3 give a1 >= -1 and a2 <= (1 - a1)/2 <= 1;
    a1 <= 1/3 and a2 >= a1 >= -1.
    """
    a1, a2 = variables(2)
    a3 = 1.0 - a1 - a2
    cons = [
        ("a2-a1", a2 - a1),
        ("a3-a2", a3 - a2),
        ("a1+a2", a1 + a2),
    ]
    if with_stationarity:
        cons.append(("stationarity-relaxed",
                     a1 - (a1 * a1 + 2.0 * a2 * a3 - 0.5 * (a3 - a2) ** 2)))
    return OptimizationProblem(
        name=("four_positive_sectional_bound" if with_stationarity
              else "four_positive_sectional_bound_relaxed"),
        variables=("a1", "a2"),
        lower=np.array([-1.0, -1.0]), upper=np.array([1.0 / 3.0, 1.0]),
        objective=a1, constraints=tuple(cons), feas_tol=feas_tol,
        eliminated=("a3 = 1 - a1 - a2",
                    "b eliminated via b1^2 + 2 b2 b3 >= -(a3 - a2)^2 / 2"),
    )


@dataclass(frozen=True)
class FourPositiveBound:
    direct: OptimizationResult
    relaxed: OptimizationResult
    #: root of a1^2 - 8 a1 - 1 = 0 found numerically on [-1, 0]
    scalar_root: float
    target: float = FOUR_POS_BOUND


def _bisect_root(f, lo: float, hi: float, iters: int = 200) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) * flo > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def four_positive_bound(grid: int = 64, depth: int = 6, threads: int = 1,
                        backend: str | None = None) -> FourPositiveBound:
    direct = minimize(four_positive_problem(True), grid=grid, depth=depth,
                      threads=threads, backend=backend)
    relaxed = minimize(four_positive_problem(False), grid=grid, depth=depth,
                       threads=threads, backend=backend)
    root = _bisect_root(lambda x: x * x - 8.0 * x - 1.0, -1.0, 0.0)
    return FourPositiveBound(direct=direct, relaxed=relaxed, scalar_root=root)


# ---------------------------------------------------------------------------
# two-step upper-bound argument


def upper_bound_step1_problem(feas_tol: float = 1e-9) -> OptimizationProblem:
    """Variables (a3, a2, u, v): the binding sectional upper bound a3 <= C is
    the a3 box edge.

    Box: a3 >= 1/3 (largest of a trace-1 triple), a3 <= C; a2 <= a3 <= C and
    a2 >= a1 means a2 >= (1 - a3)/2 >= (1 - C)/2.
    """
    a3, a2, u, v = variables(4)
    a1 = 1.0 - a2 - a3
    b1, b2, b3 = _b_from_gap_fractions(a1, a2, a3, u, v)
    cons = [
        ("a2-a1", a2 - a1),
        ("a3-a2", a3 - a2),
        ("stationarity", stationarity_poly(a1, a2, a3, b1, b2, b3)),
    ]
    return OptimizationProblem(
        name="upper_bound_step1",
        variables=("a3", "a2", "u", "v"),
        lower=np.array([1.0 / 3.0, (1.0 - UPPER_K_BOUND) / 2.0, -1.0, -1.0]),
        upper=np.array([UPPER_K_BOUND, UPPER_K_BOUND, 1.0, 1.0]),
        objective=a1, constraints=tuple(cons), feas_tol=feas_tol,
        eliminated=("a1 = 1 - a2 - a3",
                    "b from gap fractions u = (b2-b1)/(a2-a1), v = (b3-b2)/(a3-a2)",
                    "K-upper a3 <= (14-sqrt(19))/12 as the a3 box edge"),
    )


def upper_bound_step1(grid: int = 64, depth: int = 6, threads: int = 1,
                      backend: str | None = None) -> OptimizationResult:
    """min a1 subject to a3 <= (14 - sqrt(19))/12 and stationarity; the
    target value is (5 - sqrt(19))/12."""
    return minimize(upper_bound_step1_problem(), grid=grid, depth=depth,
                    threads=threads, backend=backend)


def upper_bound_step2_problem(mirrored: bool = False,
                              feas_tol: float = 1e-9) -> OptimizationProblem:
    """min of 1 + mu1 - lam3 over half spectra under the two-sided sectional
    pinching and the three-eigenvalue-sum stationarity inequality.

    Box: each smallest eigenvalue is at most its trace mean 1/3, and the
    pinching lower bound gives lam1 >= 2*LOWER_K_BOUND - mu1 >= 2*L - 1/3;
    middle eigenvalues lie between that floor and (1 - floor)/2.
    """
    l1, l2, m1, m2 = variables(4)
    l3 = 1.0 - l1 - l2
    m3 = 1.0 - m1 - m2
    cons = [
        ("lam-asc-12", l2 - l1),
        ("lam-asc-23", l3 - l2),
        ("mu-asc-12", m2 - m1),
        ("mu-asc-23", m3 - m2),
        ("K-upper", 2.0 * UPPER_K_BOUND - (l3 + m3)),
        ("K-lower", (l1 + m1) - 2.0 * LOWER_K_BOUND),
        ("stationarity-3sum",
         (m1 - l3) - (m1 * m1 + 2.0 * m2 * m3 - l3 * l3 - 2.0 * l1 * l2)),
    ]
    objective = 1.0 + m1 - l3
    name = "upper_bound_step2_mirror" if mirrored else "upper_bound_step2"
    floor = 2.0 * LOWER_K_BOUND - 1.0 / 3.0
    ceil_mid = (1.0 - floor) / 2.0
    return OptimizationProblem(
        name=name,
        variables=("mu1", "mu2", "lam1", "lam2") if mirrored else ("lam1", "lam2", "mu1", "mu2"),
        lower=np.array([floor, floor, floor, floor]),
        upper=np.array([1.0 / 3.0, ceil_mid, 1.0 / 3.0, ceil_mid]),
        objective=objective, constraints=tuple(cons), feas_tol=feas_tol,
        eliminated=("lam3 = 1 - lam1 - lam2", "mu3 = 1 - mu1 - mu2"),
    )


@dataclass(frozen=True)
class UpperBoundStep2:
    result: OptimizationResult
    mirror: OptimizationResult


def upper_bound_step2(grid: int = 64, depth: int = 6, threads: int = 1,
                      backend: str | None = None) -> UpperBoundStep2:
    """The minimized three-eigenvalue sum stays nonnegative, in both orientations.

    The infimum of the closed problem is exactly 0, attained only where both
    pinching constraints hold with equality; on the open set (strict
    pinching, as at any actual point) the sum is strictly positive.  The
    mirrored problem (roles of the orientations swapped) is the identical
    encoding up to renaming, run explicitly rather than assumed symmetric.
    """
    res = minimize(upper_bound_step2_problem(False), grid=grid, depth=depth,
                   threads=threads, backend=backend)
    mirror = minimize(upper_bound_step2_problem(True), grid=grid, depth=depth,
                      threads=threads, backend=backend)
    return UpperBoundStep2(result=res, mirror=mirror)


# ---------------------------------------------------------------------------
# half-Weyl smallest eigenvalue


def weyl_min_problem(w3: float, feas_tol: float = 1e-9) -> OptimizationProblem:
    """min w1 with w2 = -w1 - w3 <= w3 and the eigenform stationarity
    inequality at half-operator eigenvalues 1/3 + w_i.

    The ordering w1 <= w2 is deliberately not imposed: the stationarity
    inequality concerns the minimum of the smallest-eigenvalue function, and
    the closed-form root is attained without that labeling constraint (for
    w3 < 2/3 imposing it would leave no feasible point at all).
    """
    (w1,) = variables(1)
    l1 = w1 + 1.0 / 3.0
    l2 = (1.0 / 3.0) - w1 - w3
    l3 = (1.0 / 3.0) + w3
    return OptimizationProblem(
        name="weyl_min_eigenvalue",
        variables=("w1",),
        lower=np.array([-2.0 * w3]), upper=np.array([w3]),
        objective=w1,
        constraints=(("stationarity-eigen", l1 - (l1 * l1 + 2.0 * l2 * l3)),),
        feas_tol=feas_tol,
        eliminated=("w2 = -w1 - w3",),
    )


def weyl_min_analytic(w3: float) -> float:
    """(2 w3 + 1 - sqrt(12 w3^2 + 4 w3 + 1)) / 2."""
    return 0.5 * (2.0 * w3 + 1.0 - math.sqrt(12.0 * w3 * w3 + 4.0 * w3 + 1.0))


@dataclass(frozen=True)
class WeylMinBound:
    w3: float
    analytic: float
    numeric: float | None
    result: OptimizationResult


def weyl_min_bound(w3: float, grid: int = 64, depth: int = 10,
                   threads: int = 1, backend: str | None = None) -> WeylMinBound:
    """Numeric and closed-form lower bound for the smallest half-Weyl
    eigenvalue given the largest one.  Negative ``w3`` is infeasible (the
    largest entry of a traceless triple cannot be negative) and is returned
    as an explicit infeasible result."""
    if w3 < 0.0:
        empty = OptimizationResult(
            problem="weyl_min_eigenvalue", feasible=False, best_value=None,
            minimizer=None, grid_resolution=math.nan, refinement_depth=0,
            feasible_points_evaluated=0, points_evaluated=0)
        return WeylMinBound(w3=w3, analytic=math.nan, numeric=None, result=empty)
    res = minimize(weyl_min_problem(w3), grid=grid, depth=depth,
                   threads=threads, backend=backend)
    return WeylMinBound(
        w3=w3, analytic=weyl_min_analytic(w3),
        numeric=res.best_value if res.feasible else None, result=res)

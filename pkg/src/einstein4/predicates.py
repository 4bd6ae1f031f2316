"""Curvature positivity conditions as signed margins.

Each condition is reported as a margin: the condition holds strictly iff the
margin is positive, holds weakly iff it is nonnegative, and the margin is
continuous and 1-homogeneous in the curvature data.  Boundary models (the
Fubini-Study plane, the sphere product) sit at margin exactly 0 for several
conditions and are classified deterministically.

All margins are computed on data normalized to Einstein constant 1; inputs
with a different constant are rescaled internally, which leaves every verdict
unchanged by homogeneity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .berger import BergerForm, half_spectra
from .tensor import RiemannTensor4


@dataclass(frozen=True)
class ConditionMargin:
    """Signed margin of one condition plus the witness achieving it."""

    name: str
    margin: float
    witness: str = ""

    @property
    def holds(self) -> bool:
        return self.margin > 0.0


@dataclass(frozen=True)
class Implication:
    antecedent: str
    consequent: str
    antecedent_holds: bool
    consequent_holds: bool

    @property
    def satisfied(self) -> bool:
        return (not self.antecedent_holds) or self.consequent_holds


@dataclass(frozen=True)
class ImplicationReport:
    """Margins for every tabulated condition plus pointwise implication verdicts."""

    einstein_constant: float
    margins: dict
    verdicts: tuple
    not_evaluated: tuple = ()


_EIG_LABELS = ("lam1", "lam2", "lam3", "mu1", "mu2", "mu3")


def _six_eigenvalues(bf: BergerForm) -> tuple[np.ndarray, list[str]]:
    hs = half_spectra(bf)
    vals = np.concatenate([hs.lam, hs.mu])
    order = sorted(range(6), key=lambda i: (vals[i], i))
    return vals[order], [_EIG_LABELS[i] for i in order]


def k_positive_margin(bf: BergerForm, k: int) -> ConditionMargin:
    """Sum of the k smallest operator eigenvalues, k in 1..6."""
    if not 1 <= k <= 6:
        raise ValueError(f"k must be in 1..6, got {k}")
    vals, labels = _six_eigenvalues(bf)
    margin = float(vals[:k].sum())
    name = "positive" if k == 1 else f"{k}-positive"
    return ConditionMargin(name, margin, "+".join(labels[:k]))


def sectional_range(bf: BergerForm) -> tuple[float, float]:
    """(min K, max K) over 2-planes: (a1, a3)."""
    return float(bf.a[0]), float(bf.a[2])


def pic_margin_closed(bf: BergerForm) -> ConditionMargin:
    """Isotropic-curvature margin in closed form: min over orientations of the
    two smallest half-operator eigenvalues' sum."""
    hs = half_spectra(bf)
    plus = float(hs.lam[0] + hs.lam[1])
    minus = float(hs.mu[0] + hs.mu[1])
    if plus <= minus:
        return ConditionMargin("pic", plus, "lam1+lam2")
    return ConditionMargin("pic", minus, "mu1+mu2")


def half_conditions(bf: BergerForm) -> list[ConditionMargin]:
    """Half 2-positivity (equivalently half PIC) for each orientation."""
    hs = half_spectra(bf)
    return [
        ConditionMargin("half-pic-plus", float(hs.lam[0] + hs.lam[1]), "lam1+lam2"),
        ConditionMargin("half-pic-minus", float(hs.mu[0] + hs.mu[1]), "mu1+mu2"),
    ]


def pic_margin_frames(rm: RiemannTensor4, samples: int = 10000,
                      seed: int = 0) -> ConditionMargin:
    """Isotropic-curvature margin by direct frame sampling.

    Minimizes R(ikik)+R(ilil)+R(jkjk)+R(jljl) - 2|R(ijkl)| over orthonormal
    frames (i,j,k,l): all 24 coordinate-axis frames plus `samples` seeded
    random rotations.  The absolute value covers both frame orientations and
    both signs of the cross term.  For a tensor in normal-form frame the
    minimum is attained at an axis frame, so the sampled minimum equals the
    true minimum, which is twice the closed-form margin.
    """
    r = rm.components
    best = np.inf
    witness = ""
    for (i, j, k, l) in permutations(range(4)):
        lhs = r[i, k, i, k] + r[i, l, i, l] + r[j, k, j, k] + r[j, l, j, l]
        val = lhs - 2.0 * abs(r[i, j, k, l])
        if val < best:
            best = val
            witness = f"axis frame (e{i+1},e{j+1},e{k+1},e{l+1})"
    if samples > 0:
        rng = np.random.default_rng(seed)
        done = 0
        batch = 65536
        while done < samples:
            n = min(batch, samples - done)
            q, _ = np.linalg.qr(rng.standard_normal((n, 4, 4)))
            u, v, w, z = q[:, :, 0], q[:, :, 1], q[:, :, 2], q[:, :, 3]
            lhs = (
                np.einsum("pqrs,np,nq,nr,ns->n", r, u, w, u, w, optimize=True)
                + np.einsum("pqrs,np,nq,nr,ns->n", r, u, z, u, z, optimize=True)
                + np.einsum("pqrs,np,nq,nr,ns->n", r, v, w, v, w, optimize=True)
                + np.einsum("pqrs,np,nq,nr,ns->n", r, v, z, v, z, optimize=True)
            )
            cross = np.einsum("pqrs,np,nq,nr,ns->n", r, u, v, w, z, optimize=True)
            vals = lhs - 2.0 * np.abs(cross)
            i_min = int(np.argmin(vals))
            if vals[i_min] < best:
                best = float(vals[i_min])
                witness = f"sampled rotation #{done + i_min}"
            done += n
    return ConditionMargin("pic-frames", float(best), witness)


# ---------------------------------------------------------------------------
# batch margins and the condition registry

#: conditions tabulated for Einstein metrics, in report order
TABLE_CONDITIONS = (
    "positive", "2-positive", "K>1/12", "3-positive", "K>1/30", "K>0",
    "pic", "half-pic-plus", "half-pic-minus", "4-positive", "K<1", "R>0",
)

#: directed arrows of the curvature table; pointwise arrows admit no
#: counterexample at a point, global ones hold only through the stationarity
#: bounds (see the bounds module) and DO admit pointwise counterexamples.
TABLE_ARROWS = (
    ("positive", "2-positive", "pointwise"),
    ("2-positive", "K>1/12", "global"),
    ("K>1/12", "3-positive", "pointwise"),
    ("3-positive", "K>1/30", "global"),
    ("K>1/30", "K>0", "pointwise"),
    ("K>0", "4-positive", "pointwise"),
    ("2-positive", "pic", "pointwise"),
    ("pic", "2-positive", "global"),
    ("pic", "half-pic-plus", "pointwise"),
    ("pic", "half-pic-minus", "pointwise"),
    ("4-positive", "K<1", "pointwise"),
    ("K<1", "4-positive", "global"),
    ("4-positive", "6-positive", "pointwise"),
    ("6-positive", "R>0", "pointwise"),
    ("R>0", "6-positive", "pointwise"),
)

NOT_EVALUATED = ("conformally-half-pic",)


def batch_margins(a: np.ndarray, b: np.ndarray) -> dict[str, np.ndarray]:
    """Margins of all tabulated conditions for (N,3) arrays of normalized
    Berger data (Einstein constant 1).  Columns follow TABLE_CONDITIONS plus
    the k-positivity ladder."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    lam = a + b
    mu = a - b
    eigs = np.sort(np.concatenate([lam, mu], axis=1), axis=1)
    csum = np.cumsum(eigs, axis=1)
    out = {
        "positive": csum[:, 0],
        "2-positive": csum[:, 1],
        "3-positive": csum[:, 2],
        "4-positive": csum[:, 3],
        "5-positive": csum[:, 4],
        "6-positive": csum[:, 5],
        "K>1/12": a[:, 0] - 1.0 / 12.0,
        "K>1/30": a[:, 0] - 1.0 / 30.0,
        "K>0": a[:, 0],
        "K<1": 1.0 - a[:, 2],
        "pic": np.minimum(lam[:, 0] + lam[:, 1], mu[:, 0] + mu[:, 1]),
        "half-pic-plus": lam[:, 0] + lam[:, 1],
        "half-pic-minus": mu[:, 0] + mu[:, 1],
        "R>0": np.full(a.shape[0], 4.0),
    }
    return out


def condition_margin(bf: BergerForm, name: str) -> ConditionMargin:
    """Margin of a named condition on a single form (rescaled to lam = 1)."""
    nf = bf.normalized()
    if name == "positive" or name.endswith("-positive"):
        k = 1 if name == "positive" else int(name.split("-")[0])
        return k_positive_margin(nf, k)
    if name == "pic":
        return pic_margin_closed(nf)
    if name in ("half-pic-plus", "half-pic-minus"):
        pair = half_conditions(nf)
        return pair[0] if name == "half-pic-plus" else pair[1]
    if name == "K>0":
        return ConditionMargin(name, float(nf.a[0]), "K(e1,e2)")
    if name == "K>1/12":
        return ConditionMargin(name, float(nf.a[0] - 1.0 / 12.0), "K(e1,e2)")
    if name == "K>1/30":
        return ConditionMargin(name, float(nf.a[0] - 1.0 / 30.0), "K(e1,e2)")
    if name == "K<1":
        return ConditionMargin(name, float(1.0 - nf.a[2]), "K(e1,e4)")
    if name == "R>0":
        return ConditionMargin(name, 4.0, "scalar curvature")
    raise KeyError(f"unknown condition {name!r}")


def table1_report(bf: BergerForm) -> ImplicationReport:
    """Margins of every tabulated condition plus pointwise implication verdicts."""
    nf = bf.normalized()
    margins = {name: condition_margin(nf, name) for name in TABLE_CONDITIONS}
    margins["6-positive"] = condition_margin(nf, "6-positive")
    verdicts = []
    for ante, cons, kind in TABLE_ARROWS:
        if kind != "pointwise":
            continue
        verdicts.append(Implication(
            ante, cons, margins[ante].holds, margins[cons].holds,
        ))
    return ImplicationReport(
        einstein_constant=bf.lam,
        margins=margins,
        verdicts=tuple(verdicts),
        not_evaluated=NOT_EVALUATED,
    )


# ---------------------------------------------------------------------------
# closed forms vs direct eigenvalue computation


def min_subset_sum(bf: BergerForm, k: int) -> float:
    """Exact minimum over all k-element subsets of the six eigenvalues."""
    vals, _ = _six_eigenvalues(bf)
    return min(sum(c) for c in combinations(vals.tolist(), k))


def bullet_equivalences_check(bf: BergerForm, tol: float = 1e-12) -> list[bool]:
    """Check each closed-form positivity criterion against direct eigenvalue
    computation on this input.  Returns one boolean per criterion:

    1. positive sectional:  lam1 + mu1 = 2 a1
    2. 2-positive:   min 2-subset sum = min((a1+a2) +- (b1+b2), 2 a1)
    3. 3-positive:   min 3-subset sum = min(2a1+a2 +- b2)
    4. 4-positive:   min 4-subset sum = min(2(a1+a2), lam + (a1 +- b1))
    5. isotropic:    min(lam1+lam2, mu1+mu2) = min((a1+a2) +- (b1+b2))
    """
    a, b, lam = bf.a, bf.b, bf.lam
    hs = half_spectra(bf)
    checks = [
        abs((hs.lam[0] + hs.mu[0]) - 2.0 * a[0]) <= tol,
        abs(min_subset_sum(bf, 2)
            - min(a[0] + a[1] + b[0] + b[1], a[0] + a[1] - b[0] - b[1], 2.0 * a[0])) <= tol,
        abs(min_subset_sum(bf, 3)
            - min(2.0 * a[0] + a[1] + b[1], 2.0 * a[0] + a[1] - b[1])) <= tol,
        abs(min_subset_sum(bf, 4)
            - min(2.0 * (a[0] + a[1]), lam + a[0] + b[0], lam + a[0] - b[0])) <= tol,
        abs(pic_margin_closed(bf).margin
            - min(a[0] + a[1] + b[0] + b[1], a[0] + a[1] - b[0] - b[1])) <= tol,
    ]
    return checks

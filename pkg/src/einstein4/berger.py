"""Berger normal form of the curvature operator of an Einstein four-manifold.

An Einstein operator can be written, in a suitable orthonormal frame, as the
block matrix ``[[A, B], [B, A]]`` with ``A = diag(a1, a2, a3)`` the extreme
sectional curvatures and ``B = diag(b1, b2, b3)`` built from R(1,2,3,4)-type
components.  The admissibility constraints are

    a1 <= a2 <= a3,          a1 + a2 + a3 = lam,
    |b_j - b_i| <= a_j - a_i  for i < j,
    b1 + b2 + b3 = 0,

and the half operators on self-dual / anti-self-dual forms have eigenvalues
``lam_i = a_i + b_i`` and ``mu_i = a_i - b_i``, each triple ascending.

Orientation convention: the self-dual triple is (b_i + b_{i+3})/sqrt(2) in the
fixed 2-form basis; reversing orientation swaps the two half spectra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import (
    DEFAULT_TOL,
    CurvatureOperator6,
    DualityBlocks,
    NonEinsteinError,
    RiemannTensor4,
    duality_blocks,
    operator_to_tensor,
    to_operator,
)


class BergerConstraintError(ValueError):
    """A candidate (a, b, lam) violates a named admissibility constraint."""


@dataclass(frozen=True)
class BergerForm:
    """Normal-form data (a1,a2,a3; b1,b2,b3; lam) of an Einstein operator."""

    a: np.ndarray
    b: np.ndarray
    lam: float = 1.0
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        a = np.array(self.a, dtype=np.float64).reshape(3)
        b = np.array(self.b, dtype=np.float64).reshape(3)
        lam = float(self.lam)
        tol = self.tol
        if lam <= 0:
            raise BergerConstraintError(f"Einstein constant must be positive, got {lam}")
        if a[0] > a[1] + tol or a[1] > a[2] + tol:
            raise BergerConstraintError(f"a must be ascending: {a}")
        if abs(a.sum() - lam) > tol:
            raise BergerConstraintError(f"a1+a2+a3 = {a.sum()} != lam = {lam}")
        if abs(b.sum()) > tol:
            raise BergerConstraintError(f"b1+b2+b3 = {b.sum()} != 0")
        for i, j in ((0, 1), (0, 2), (1, 2)):
            if abs(b[j] - b[i]) > (a[j] - a[i]) + tol:
                raise BergerConstraintError(
                    f"|b{j+1}-b{i+1}| = {abs(b[j]-b[i])} exceeds a{j+1}-a{i+1} = {a[j]-a[i]}"
                )
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "lam", lam)

    def normalized(self) -> "BergerForm":
        """Rescale to Einstein constant 1."""
        if self.lam == 1.0:
            return self
        return BergerForm(self.a / self.lam, self.b / self.lam, 1.0, tol=self.tol)

    def scaled(self, c: float) -> "BergerForm":
        return BergerForm(self.a * c, self.b * c, self.lam * c, tol=self.tol)


@dataclass(frozen=True)
class HalfSpectra:
    """Eigenvalues of the half operators: lam (self-dual), mu (anti-self-dual)."""

    lam: np.ndarray
    mu: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        lam = np.array(self.lam, dtype=np.float64).reshape(3)
        mu = np.array(self.mu, dtype=np.float64).reshape(3)
        for name, t in (("lam", lam), ("mu", mu)):
            if t[0] > t[1] + self.tol or t[1] > t[2] + self.tol:
                raise BergerConstraintError(f"{name} must be ascending: {t}")
        if abs(lam.sum() - mu.sum()) > self.tol:
            raise BergerConstraintError(
                f"half spectra traces differ: {lam.sum()} vs {mu.sum()}"
            )
        lam.flags.writeable = False
        mu.flags.writeable = False
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def einstein_constant(self) -> float:
        return float(self.lam.sum())

    def mirrored(self) -> "HalfSpectra":
        """Swap orientations (lam <-> mu)."""
        return HalfSpectra(self.mu, self.lam, tol=self.tol)


def half_spectra(bf: BergerForm) -> HalfSpectra:
    """lam_i = a_i + b_i, mu_i = a_i - b_i; ascending by admissibility."""
    return HalfSpectra(bf.a + bf.b, bf.a - bf.b, tol=bf.tol)


def from_half_spectra(hs: HalfSpectra, tol: float = DEFAULT_TOL) -> BergerForm:
    a = (hs.lam + hs.mu) / 2.0
    b = (hs.lam - hs.mu) / 2.0
    return BergerForm(a, b, float(a.sum()), tol=tol)


def extract_berger(blocks: DualityBlocks, tol: float = DEFAULT_TOL) -> BergerForm:
    """Berger form from duality blocks of an Einstein operator.

    The i-th smallest self-dual eigenvalue is paired with the i-th smallest
    anti-self-dual one; this is the unique pairing that makes both half
    spectra ascending, and ties are resolved by the sort.  Raises
    NonEinsteinError if the Ricci coupling block exceeds ``tol``.
    """
    residual = blocks.einstein_residual
    if residual > tol:
        raise NonEinsteinError(residual, tol)
    lam = np.sort(np.linalg.eigvalsh(blocks.half_operator(+1)))
    mu = np.sort(np.linalg.eigvalsh(blocks.half_operator(-1)))
    # equality constraints hold only to eigensolver accuracy; re-center
    target = blocks.scalar / 4.0
    lam = lam + (target - lam.sum()) / 3.0
    mu = mu + (target - mu.sum()) / 3.0
    return from_half_spectra(HalfSpectra(lam, mu, tol=max(tol, 1e-12)), tol=max(tol, 1e-12))


def berger_to_operator(bf: BergerForm) -> CurvatureOperator6:
    """Operator [[diag(a), diag(b)], [diag(b), diag(a)]] in the fixed basis."""
    m = np.zeros((6, 6))
    for i in range(3):
        m[i, i] = bf.a[i]
        m[i + 3, i + 3] = bf.a[i]
        m[i, i + 3] = bf.b[i]
        m[i + 3, i] = bf.b[i]
    return CurvatureOperator6(m)


def berger_to_tensor(bf: BergerForm) -> RiemannTensor4:
    """Curvature tensor realizing the Berger form in the standard frame."""
    return operator_to_tensor(berger_to_operator(bf))


def extract_from_tensor(rm: RiemannTensor4, tol: float = DEFAULT_TOL) -> BergerForm:
    return extract_berger(duality_blocks(to_operator(rm)), tol=tol)


# ---------------------------------------------------------------------------
# named model spaces (Einstein constant normalized to 1)


def round_sphere() -> BergerForm:
    """Round four-sphere: constant sectional curvature 1/3."""
    return BergerForm(np.full(3, 1.0 / 3.0), np.zeros(3), 1.0)


def fubini_study() -> BergerForm:
    """Complex projective plane: sectional range [1/6, 2/3], self-dual spectrum (0,0,1)."""
    return BergerForm(
        np.array([1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0]),
        np.array([-1.0 / 6.0, -1.0 / 6.0, 1.0 / 3.0]),
        1.0,
    )


def sphere_product() -> BergerForm:
    """Product of two round two-spheres: sectional range [0, 1]."""
    return BergerForm(np.array([0.0, 0.0, 1.0]), np.zeros(3), 1.0)


def sphere_product_tensor() -> RiemannTensor4:
    """The product tensor directly: R(1,2,1,2) = R(3,4,3,4) = 1, mixed planes flat."""
    r = np.zeros((4, 4, 4, 4))
    for (i, j) in ((0, 1), (2, 3)):
        r[i, j, i, j] = r[j, i, j, i] = 1.0
        r[i, j, j, i] = r[j, i, i, j] = -1.0
    return RiemannTensor4(r)


# ---------------------------------------------------------------------------
# sampling


_SAMPLE_BATCH = 1024


def sample_batches(seed: int, lam: float = 1.0, box_factor: float = 2.0):
    """Endless deterministic stream of admissible (a, b) batches.

    Ascending half-spectra triples are drawn as two box-uniform coordinates
    plus the trace-determined third (rejected when it leaves the box), then
    averaged into (a, b); every sample is admissible by construction.  The
    stream depends only on (seed, lam, box_factor), never on how many samples
    are consumed, so any filtered selection is a subset of the raw stream.
    """
    bound = box_factor * lam
    rng = np.random.default_rng(seed)
    while True:
        draw = rng.uniform(-bound, bound, size=(_SAMPLE_BATCH, 4))
        z_lam = lam - draw[:, 0] - draw[:, 1]
        z_mu = lam - draw[:, 2] - draw[:, 3]
        ok = (np.abs(z_lam) <= bound) & (np.abs(z_mu) <= bound)
        if not np.any(ok):
            continue
        lam_t = np.sort(np.column_stack([draw[ok, 0], draw[ok, 1], z_lam[ok]]), axis=1)
        mu_t = np.sort(np.column_stack([draw[ok, 2], draw[ok, 3], z_mu[ok]]), axis=1)
        yield (lam_t + mu_t) / 2.0, (lam_t - mu_t) / 2.0


def sample_admissible_arrays(seed: int, lam: float = 1.0, count: int = 1,
                             box_factor: float = 2.0) -> tuple[np.ndarray, np.ndarray]:
    """First ``count`` admissible (a, b) rows of the stream, shape (count, 3) each."""
    if count < 1:
        raise ValueError("count must be >= 1")
    a_parts, b_parts, have = [], [], 0
    for a, b in sample_batches(seed, lam, box_factor):
        a_parts.append(a)
        b_parts.append(b)
        have += a.shape[0]
        if have >= count:
            break
    return np.vstack(a_parts)[:count], np.vstack(b_parts)[:count]


def sample_admissible(seed: int, lam: float = 1.0, count: int = 1,
                      box_factor: float = 2.0) -> list[BergerForm]:
    """Deterministic list of admissible Berger forms for the given seed."""
    a, b = sample_admissible_arrays(seed, lam, count, box_factor)
    return [BergerForm(a[i], b[i], lam) for i in range(count)]

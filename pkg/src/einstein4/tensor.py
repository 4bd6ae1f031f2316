"""Pointwise curvature algebra in dimension four.

Conventions
-----------
All data lives in a fixed orthonormal frame ``e1..e4`` (indices 0..3 in code).
The sign convention is ``K(e_i, e_j) = R(i,j,i,j)``, so the unit round metric
has ``R(1,2,1,2) = +1``.

The 6x6 curvature operator acts on the ordered 2-form basis

    (e1^e2, e1^e3, e1^e4, e3^e4, e4^e2, e2^e3),

each element unit-norm.  With this ordering the Hodge star is the block swap
``[[0, I], [I, 0]]``, the self-dual forms are ``(b_i + b_{i+3})/sqrt(2)`` for
the first three basis elements b_i, and an operator in Berger normal form is
literally ``[[A, B], [B, A]]`` with diagonal A, B.  Diagonal operator entries
are sectional curvatures of the coordinate planes.

Everything here is an immutable value; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9

#: ordered 2-form basis, 0-based index pairs
PAIR_BASIS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))

#: (i, j) -> (basis position, sign)
_PAIR_INDEX = {}
for _p, (_i, _j) in enumerate(PAIR_BASIS):
    _PAIR_INDEX[(_i, _j)] = (_p, 1.0)
    _PAIR_INDEX[(_j, _i)] = (_p, -1.0)


class CurvatureError(ValueError):
    """An array fails the symmetries required of a curvature object."""


class NonEinsteinError(CurvatureError):
    """Raised when an Einstein-only operation meets a non-Einstein input."""

    def __init__(self, residual: float, tol: float):
        self.residual = float(residual)
        self.tol = float(tol)
        super().__init__(
            f"input is not Einstein: max |Ric - (R/4) g| = {residual:.3e} > tol {tol:.3e}"
        )


def _as_matrix(h) -> np.ndarray:
    if isinstance(h, SymmetricForm2):
        return h.matrix
    return np.asarray(h, dtype=np.float64)


@dataclass(frozen=True)
class SymmetricForm2:
    """Symmetric bilinear form on R^4 (metric, Ricci, traceless Ricci)."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.float64)
        if m.shape != (4, 4):
            raise CurvatureError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.T)) > self.tol:
            raise CurvatureError("matrix is not symmetric within tolerance")
        m = (m + m.T) / 2.0
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "SymmetricForm2":
        return cls(np.eye(4))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def traceless_part(self) -> "SymmetricForm2":
        return SymmetricForm2(self.matrix - (self.trace / 4.0) * np.eye(4))


@dataclass(frozen=True)
class RiemannTensor4:
    """Algebraic curvature tensor R(i,j,k,l) in an orthonormal frame.

    Construction validates antisymmetry in both index pairs, pair symmetry and
    the first Bianchi identity to within ``tol``.
    """

    components: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        r = np.array(self.components, dtype=np.float64)
        if r.shape != (4, 4, 4, 4):
            raise CurvatureError(f"expected shape (4,4,4,4), got {r.shape}")
        checks = (
            ("antisymmetry in the first pair", r + np.swapaxes(r, 0, 1)),
            ("antisymmetry in the second pair", r + np.swapaxes(r, 2, 3)),
            ("pair symmetry", r - np.transpose(r, (2, 3, 0, 1))),
            ("first Bianchi identity",
             r + np.transpose(r, (0, 2, 3, 1)) + np.transpose(r, (0, 3, 1, 2))),
        )
        for name, viol in checks:
            worst = float(np.max(np.abs(viol)))
            if worst > self.tol:
                raise CurvatureError(f"{name} violated by {worst:.3e} (tol {self.tol:.3e})")
        r.flags.writeable = False
        object.__setattr__(self, "components", r)

    @classmethod
    def zero(cls) -> "RiemannTensor4":
        return cls(np.zeros((4, 4, 4, 4)))

    @classmethod
    def constant_curvature(cls, k: float) -> "RiemannTensor4":
        """Space form of sectional curvature k: R(i,j,k,l) = k (d_ik d_jl - d_il d_jk)."""
        d = np.eye(4)
        r = k * (np.einsum("ik,jl->ijkl", d, d) - np.einsum("il,jk->ijkl", d, d))
        return cls(r)

    def sectional(self, i: int, j: int) -> float:
        """Sectional curvature of the coordinate plane (e_i, e_j); 0-based indices."""
        return float(self.components[i, j, i, j])

    def plane_curvature(self, u: np.ndarray, v: np.ndarray) -> float:
        """R(u,v,u,v) for an orthonormal pair u, v."""
        return float(np.einsum("ijkl,i,j,k,l->", self.components, u, v, u, v))


@dataclass(frozen=True)
class CurvatureOperator6:
    """Symmetric operator on 2-forms in the fixed PAIR_BASIS ordering."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.float64)
        if m.shape != (6, 6):
            raise CurvatureError(f"expected a 6x6 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.T)) > self.tol:
            raise CurvatureError("operator matrix is not symmetric within tolerance")
        m = (m + m.T) / 2.0
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    @property
    def scalar_curvature(self) -> float:
        # trace of the operator is R/2
        return 2.0 * float(np.trace(self.matrix))


@dataclass(frozen=True)
class StandardDecomposition:
    """Rm = weyl + ric_part + scalar_part with ric_part built from the
    traceless Ricci and scalar_part from the metric alone."""

    weyl: RiemannTensor4
    ric_part: RiemannTensor4
    scalar_part: RiemannTensor4
    scalar: float

    def reconstruct(self) -> np.ndarray:
        return (self.weyl.components + self.ric_part.components
                + self.scalar_part.components)


@dataclass(frozen=True)
class DualityBlocks:
    """Curvature operator in the self-dual/anti-self-dual splitting.

    ``w_plus``/``w_minus`` are the traceless Weyl blocks; the full half
    operators are ``scalar/12 * I + w_plus`` and ``scalar/12 * I + w_minus``.
    ``off_diag`` is the traceless-Ricci coupling block, zero exactly for
    Einstein inputs.
    """

    scalar: float
    w_plus: np.ndarray
    w_minus: np.ndarray
    off_diag: np.ndarray

    @property
    def einstein_residual(self) -> float:
        return float(np.max(np.abs(self.off_diag)))

    def half_operator(self, sign: int) -> np.ndarray:
        w = self.w_plus if sign >= 0 else self.w_minus
        return (self.scalar / 12.0) * np.eye(3) + w


# ---------------------------------------------------------------------------
# operations


def ricci_contract(rm: RiemannTensor4) -> SymmetricForm2:
    """Ricci curvature Ric(j,l) = sum_i R(i,j,i,l)."""
    return SymmetricForm2(np.einsum("ijil->jl", rm.components))


def scalar_curvature(rm: RiemannTensor4) -> float:
    return ricci_contract(rm).trace


def kulkarni_nomizu(h, k) -> RiemannTensor4:
    """Kulkarni-Nomizu product of two symmetric forms.

    (h (*) k)_{ijkl} = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il
    """
    hm, km = _as_matrix(h), _as_matrix(k)
    r = (np.einsum("ik,jl->ijkl", hm, km) + np.einsum("jl,ik->ijkl", hm, km)
         - np.einsum("il,jk->ijkl", hm, km) - np.einsum("jk,il->ijkl", hm, km))
    return RiemannTensor4(r)


def standard_decompose(rm: RiemannTensor4) -> StandardDecomposition:
    """Split into Weyl, traceless-Ricci and scalar parts (n = 4).

    Rm = W + (1/2) Ric0 (*) g + (R/24) g (*) g
    """
    ric = ricci_contract(rm)
    scal = ric.trace
    g = np.eye(4)
    ric0 = ric.matrix - (scal / 4.0) * g
    scalar_part = (scal / 24.0) * kulkarni_nomizu(g, g).components
    ric_part = 0.5 * kulkarni_nomizu(ric0, g).components
    weyl = rm.components - ric_part - scalar_part
    return StandardDecomposition(
        weyl=RiemannTensor4(weyl, tol=rm.tol),
        ric_part=RiemannTensor4(ric_part, tol=rm.tol),
        scalar_part=RiemannTensor4(scalar_part, tol=rm.tol),
        scalar=scal,
    )


def to_operator(rm: RiemannTensor4) -> CurvatureOperator6:
    """Curvature operator entries <R(b_p), b_q> = R(i_p, j_p, i_q, j_q)."""
    m = np.empty((6, 6))
    for p, (i, j) in enumerate(PAIR_BASIS):
        for q, (k, l) in enumerate(PAIR_BASIS):
            m[p, q] = rm.components[i, j, k, l]
    return CurvatureOperator6(m, tol=rm.tol)


def operator_to_tensor(op: CurvatureOperator6, tol: float = DEFAULT_TOL) -> RiemannTensor4:
    """Rebuild the full tensor from operator entries by index symmetry.

    Raises CurvatureError if the operator violates the first Bianchi identity
    (trace of the off-diagonal pairing block) beyond tolerance.
    """
    r = np.zeros((4, 4, 4, 4))
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            p, sp = _PAIR_INDEX[(i, j)]
            for k in range(4):
                for l in range(4):
                    if k == l:
                        continue
                    q, sq = _PAIR_INDEX[(k, l)]
                    r[i, j, k, l] = sp * sq * op.matrix[p, q]
    return RiemannTensor4(r, tol=tol)


def _duality_change_of_basis() -> np.ndarray:
    """Columns: self-dual triple (b_i + b_{i+3})/sqrt(2), then anti-self-dual."""
    s = 1.0 / np.sqrt(2.0)
    pmat = np.zeros((6, 6))
    for i in range(3):
        pmat[i, i] = s
        pmat[i + 3, i] = s
        pmat[i, i + 3] = s
        pmat[i + 3, i + 3] = -s
    return pmat


def hodge_star_matrix() -> np.ndarray:
    """Hodge star on 2-forms in the fixed basis ordering: block swap."""
    s = np.zeros((6, 6))
    for i in range(3):
        s[i, i + 3] = 1.0
        s[i + 3, i] = 1.0
    return s


def duality_blocks(op: CurvatureOperator6) -> DualityBlocks:
    """Conjugate into the self-dual/anti-self-dual basis and split blocks."""
    p = _duality_change_of_basis()
    m = p.T @ op.matrix @ p
    scal = op.scalar_curvature
    eye = np.eye(3)
    return DualityBlocks(
        scalar=scal,
        w_plus=m[:3, :3] - (scal / 12.0) * eye,
        w_minus=m[3:, 3:] - (scal / 12.0) * eye,
        off_diag=m[:3, 3:],
    )


def is_einstein(rm: RiemannTensor4, tol: float = DEFAULT_TOL):
    """Return the Einstein constant R/4 if Ric = (R/4) g within tol, else None."""
    ric = ricci_contract(rm)
    lam = ric.trace / 4.0
    if np.max(np.abs(ric.matrix - lam * np.eye(4))) <= tol:
        return lam
    return None


# ---------------------------------------------------------------------------
# generators and scans


def random_curvature_tensor(rng: np.random.Generator, scale: float = 1.0) -> RiemannTensor4:
    """Random valid curvature tensor, uniform operator entries in [-scale, scale].

    A symmetric 6x6 operator satisfies all tensor symmetries except first
    Bianchi, which in dimension four is the single condition that the three
    off-block diagonal entries sum to zero; that trace is projected out.
    """
    m = rng.uniform(-scale, scale, size=(6, 6))
    m = (m + m.T) / 2.0
    s = (m[0, 3] + m[1, 4] + m[2, 5]) / 3.0
    for i in range(3):
        m[i, i + 3] -= s
        m[i + 3, i] -= s
    return operator_to_tensor(CurvatureOperator6(m))


def sectional_scan(rm: RiemannTensor4, samples: int = 10000, seed: int = 0,
                   include_axis_planes: bool = True) -> tuple[float, float]:
    """Brute-force (min K, max K) over random orthonormal 2-planes.

    The coordinate planes are included by default since extremal planes of a
    tensor presented in its normal-form frame are axis planes; random planes
    alone only bracket the extremes from inside.
    """
    rng = np.random.default_rng(seed)
    r = rm.components
    values: list[float] = []
    if include_axis_planes:
        for i, j in PAIR_BASIS:
            values.append(float(r[i, j, i, j]))
    if samples > 0:
        raw = rng.standard_normal((samples, 4, 2))
        u = raw[:, :, 0]
        u = u / np.linalg.norm(u, axis=1, keepdims=True)
        v = raw[:, :, 1] - np.einsum("ni,ni->n", raw[:, :, 1], u)[:, None] * u
        v = v / np.linalg.norm(v, axis=1, keepdims=True)
        k = np.einsum("ijkl,ni,nj,nk,nl->n", r, u, v, u, v, optimize=True)
        values.append(float(k.min()))
        values.append(float(k.max()))
    if not values:
        raise ValueError("no planes to scan: samples = 0 and axis planes excluded")
    return min(values), max(values)

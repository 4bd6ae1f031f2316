"""Small multivariate polynomial algebra backing the grid optimizer.

Every constraint and objective that arises from the curvature bounds is a
polynomial (degree at most 2) in a handful of variables, optionally divided by
a second polynomial that is positive on the search box.  Representing margins
as explicit term lists instead of opaque callables lets the compiled scan
kernel and the pure-numpy kernel evaluate the exact same arithmetic, term by
term, so both backends return bit-identical optima.

Terms are kept in a dict mapping exponent tuples to coefficients.  The
flattened form (`flatten`) orders terms by exponent tuple, which fixes the
floating-point summation order everywhere.
"""

from __future__ import annotations

import numpy as np


class Poly:
    """Polynomial in ``dim`` real variables with float coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = int(dim)
        self.terms: dict[tuple[int, ...], float] = {}
        if terms:
            for expo, coeff in terms.items():
                if coeff != 0.0:
                    self.terms[tuple(expo)] = float(coeff)

    @classmethod
    def constant(cls, value: float, dim: int) -> "Poly":
        return cls(dim, {(0,) * dim: float(value)})

    @classmethod
    def variable(cls, index: int, dim: int) -> "Poly":
        expo = [0] * dim
        expo[index] = 1
        return cls(dim, {tuple(expo): 1.0})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise ValueError("polynomial dimension mismatch")
            return other
        return Poly.constant(float(other), self.dim)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            terms[expo] = terms.get(expo, 0.0) + coeff
        return Poly(self.dim, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        terms: dict[tuple[int, ...], float] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                terms[expo] = terms.get(expo, 0.0) + c1 * c2
        return Poly(self.dim, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = Poly.constant(1.0, self.dim)
        for _ in range(n):
            out = out * self
        return out

    def flatten(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (coeffs, exponents) with terms sorted by exponent tuple."""
        items = sorted(self.terms.items())
        if not items:
            items = [((0,) * self.dim, 0.0)]
        expos = np.array([e for e, _ in items], dtype=np.int32).reshape(len(items), self.dim)
        coeffs = np.array([c for _, c in items], dtype=np.float64)
        return coeffs, expos

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an (N, dim) array of points.

        Powers are expanded as repeated multiplication and terms are summed in
        flattened order, mirroring the scan kernels exactly.
        """
        points = np.asarray(points, dtype=np.float64)
        squeeze = points.ndim == 1
        if squeeze:
            points = points.reshape(1, -1)
        coeffs, expos = self.flatten()
        total = np.zeros(points.shape[0])
        for coeff, expo in zip(coeffs, expos):
            term = np.full(points.shape[0], coeff)
            for j, e in enumerate(expo):
                for _ in range(int(e)):
                    term = term * points[:, j]
            total = total + term
        return total[0] if squeeze else total

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self) -> str:
        return f"Poly(dim={self.dim}, nterms={len(self.terms)})"


def variables(dim: int) -> list[Poly]:
    """Convenience constructor: one Poly per coordinate."""
    return [Poly.variable(i, dim) for i in range(dim)]

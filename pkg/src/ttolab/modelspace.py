"""The model space K_u as a concrete coordinate space.

For a finite Blaschke product u of degree n, K_u = H^2 (-) u H^2 is
n-dimensional.  We work in the Takenaka-Malmquist orthonormal basis

    e_k(z) = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} (z-a_j)/(1-conj(a_j) z),

with the zeros (a_1, ..., a_n) of u expanded to multiplicity in stored order.
Vectors are coefficient arrays in this basis; operators are n x n matrices.
"""

from __future__ import annotations

import numpy as np

from .blaschke import BlaschkeProduct
from .errors import NumericalError, ValidationError
from .hardy import BoundaryGrid

GRAM_TOL = 1e-9


class ModelSpaceBasis:
    """Takenaka-Malmquist basis of K_u sampled on a boundary grid."""

    def __init__(self, u: BlaschkeProduct, grid: BoundaryGrid | None = None):
        if u.degree < 1:
            raise ValidationError("model space needs degree(u) >= 1")
        grid = grid or BoundaryGrid()
        if grid.n < 4 * u.degree + 64:
            raise ValidationError(
                f"grid size {grid.n} too small for degree {u.degree}"
            )
        self.u = u
        self.grid = grid
        self.zeros = u.zeros_expanded
        self.n = u.degree
        z = grid.points
        self.u_values = u(z)
        cols = []
        prefix = np.ones_like(z)
        for a in self.zeros:
            cols.append(np.sqrt(1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * z) * prefix)
            prefix = prefix * (z - a) / (1.0 - np.conj(a) * z)
        self.samples = np.column_stack(cols)
        gram = self.samples.conj().T @ self.samples / grid.n
        if np.max(np.abs(gram - np.eye(self.n))) > GRAM_TOL:
            raise NumericalError("Takenaka-Malmquist Gram matrix off identity")
        self._conjugation = None

    def evaluate_basis(self, lam: complex) -> np.ndarray:
        """Values (e_1(lam), ..., e_n(lam)); valid off the poles 1/conj(a_j)."""
        lam = complex(lam)
        out = np.empty(self.n, dtype=complex)
        prefix = 1.0 + 0.0j
        for k, a in enumerate(self.zeros):
            den = 1.0 - np.conj(a) * lam
            out[k] = np.sqrt(1.0 - abs(a) ** 2) / den * prefix
            prefix *= (lam - a) / den
        return out

    def synthesize(self, coeffs: np.ndarray) -> np.ndarray:
        """Boundary samples of sum_k c_k e_k."""
        return self.samples @ np.asarray(coeffs, dtype=complex)

    def project(self, values: np.ndarray) -> np.ndarray:
        """Coordinates of the K_u-projection of a boundary function."""
        return self.samples.conj().T @ np.asarray(values, dtype=complex) / self.grid.n

    def evaluate(self, coeffs: np.ndarray, lam: complex) -> complex:
        return complex(np.dot(self.evaluate_basis(lam), coeffs))

    def reproducing_kernel(self, lam: complex) -> np.ndarray:
        """Coordinates of k_lam, so that <f, k_lam> = f(lam)."""
        if not abs(lam) < 1.0:
            raise ValidationError("reproducing kernel needs |lambda| < 1")
        return np.conj(self.evaluate_basis(lam))

    @property
    def conjugation(self) -> np.ndarray:
        """Matrix K of the conjugation C_u f = u conj(z f): coords K conj(c).

        K is unitary and symmetric; K conj(K) = I.
        """
        if self._conjugation is None:
            z = self.grid.points
            cols = [
                self.project(self.u_values * np.conj(z * self.samples[:, k]))
                for k in range(self.n)
            ]
            self._conjugation = np.column_stack(cols)
        return self._conjugation

    def apply_conjugation(self, coeffs: np.ndarray) -> np.ndarray:
        return self.conjugation @ np.conj(np.asarray(coeffs, dtype=complex))


def tm_basis(u: BlaschkeProduct, grid: BoundaryGrid | None = None) -> ModelSpaceBasis:
    return ModelSpaceBasis(u, grid)


def reproducing_kernel(basis: ModelSpaceBasis, lam: complex) -> np.ndarray:
    return basis.reproducing_kernel(lam)


def conjugation_matrix(basis: ModelSpaceBasis) -> np.ndarray:
    return basis.conjugation


def project_Ku(basis: ModelSpaceBasis, values: np.ndarray) -> np.ndarray:
    return basis.project(values)

"""Clark measures, Clark unitaries, and atomic spectral theory.

For a finite Blaschke product u of degree n and unimodular alpha, the Clark
measure is atomic: its atoms are the n boundary solutions of u(zeta) = alpha
with weights 1/|u'(zeta)|, certified against the Herglotz relation

    Re (1 + conj(alpha) u(z)) / (1 - conj(alpha) u(z))
        = sum_j w_j Re (zeta_j + z) / (zeta_j - z).

The normalized Cauchy transform V maps weighted atom space onto K_u and
diagonalizes the modified shift at the reparametrized value
beta = (alpha - u(0)) / (1 - alpha conj(u(0))).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npp

from .blaschke import BlaschkeProduct
from .errors import ExceptionalParameterError, NumericalError, ValidationError
from .modelspace import ModelSpaceBasis
from .operators import modified_shift

HERGLOTZ_TOL = 1e-7
MASS_TOL = 1e-8
ATOM_SEPARATION = 1e-8
TOL_INV = 1e-10


@dataclass(frozen=True)
class ClarkMeasure:
    """Atoms on the unit circle with positive weights, for unimodular alpha."""

    alpha: complex
    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "atoms", np.asarray(self.atoms, dtype=complex))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if abs(abs(self.alpha) - 1.0) > 1e-10:
            raise ValidationError("Clark parameter must be unimodular")
        if np.any(np.abs(np.abs(self.atoms) - 1.0) > 1e-10):
            raise ValidationError("atoms must lie on the unit circle")
        if np.any(self.weights <= 0.0):
            raise ValidationError("weights must be positive")

    @property
    def size(self) -> int:
        return len(self.atoms)

    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def to_dict(self) -> dict:
        return {
            "alpha": [self.alpha.real, self.alpha.imag],
            "atoms": [[z.real, z.imag] for z in self.atoms],
            "weights": [float(w) for w in self.weights],
        }


def herglotz_residual(u: BlaschkeProduct, mu: ClarkMeasure, points) -> float:
    """Worst mismatch of the Herglotz identity at interior test points."""
    worst = 0.0
    for z in np.atleast_1d(np.asarray(points, dtype=complex)):
        lhs = np.real((1.0 + np.conj(mu.alpha) * u(z)) / (1.0 - np.conj(mu.alpha) * u(z)))
        rhs = float(np.sum(mu.weights * np.real((mu.atoms + z) / (mu.atoms - z))))
        worst = max(worst, abs(lhs - rhs))
    return worst


def _herglotz_points(count: int = 32, radius: float = 0.6) -> np.ndarray:
    rng = np.random.default_rng(1234)
    r = radius * np.sqrt(rng.random(count))
    theta = 2.0 * np.pi * rng.random(count)
    return r * np.exp(1j * theta)


def clark_measure(basis: ModelSpaceBasis, alpha: complex) -> ClarkMeasure:
    """Clark measure of u at unimodular alpha, certified via the Herglotz identity."""
    alpha = complex(alpha)
    if abs(abs(alpha) - 1.0) > 1e-10:
        raise ValidationError("Clark parameter must be unimodular")
    alpha /= abs(alpha)
    u = basis.u
    p, q = u.numerator(), u.denominator()
    m = max(len(p), len(q))
    coeffs = np.zeros(m, dtype=complex)
    coeffs[: len(p)] += p
    coeffs[: len(q)] -= alpha * q
    roots = npp.polyroots(coeffs)
    if np.any(np.abs(np.abs(roots) - 1.0) > 1e-7):
        raise NumericalError("boundary solutions of u = alpha drifted off the circle")
    atoms = roots / np.abs(roots)
    diffs = np.abs(atoms[:, None] - atoms[None, :]) + np.eye(len(atoms))
    if np.min(diffs) < ATOM_SEPARATION:
        raise ExceptionalParameterError(
            "exceptional Clark parameter: coincident boundary atoms"
        )
    weights = 1.0 / np.abs(u.derivative(atoms))
    mu = ClarkMeasure(alpha, atoms, weights)
    if herglotz_residual(u, mu, _herglotz_points()) > HERGLOTZ_TOL:
        raise NumericalError("Clark measure failed Herglotz certification")
    mass_target = float(np.real((1.0 + np.conj(alpha) * u(0.0)) / (1.0 - np.conj(alpha) * u(0.0))))
    if abs(mu.total_mass() - mass_target) > MASS_TOL:
        raise NumericalError("Clark weights fail the total-mass identity")
    return mu


def cauchy_transform(basis: ModelSpaceBasis, mu: ClarkMeasure) -> np.ndarray:
    """Matrix of the normalized Cauchy transform V on atom indicators.

    Column j holds the K_u coordinates of w_j (1 - conj(alpha) u) / (1 - conj(zeta_j) z),
    which equals w_j times the boundary reproducing kernel at zeta_j.  V is
    unitary from the weighted atom space onto K_u: V^H V = diag(w).
    """
    cols = [
        w * np.conj(basis.evaluate_basis(zeta))
        for zeta, w in zip(mu.atoms, mu.weights)
    ]
    return np.column_stack(cols)


def beta_parameter(basis: ModelSpaceBasis, alpha: complex) -> complex:
    """The disk automorphism beta = (alpha - u(0)) / (1 - alpha conj(u(0))).

    Exposed for parameter bookkeeping only.  The Clark measure at alpha
    diagonalizes the modified shift at alpha itself: the eigenvalues of
    S_u^alpha are the circle solutions of u = alpha, which pins the
    diagonalizing measure to the same parameter.
    """
    u0 = basis.u(0.0)
    return (complex(alpha) - u0) / (1.0 - complex(alpha) * np.conj(u0))


def diagonalizing_measure(basis: ModelSpaceBasis, alpha: complex) -> ClarkMeasure:
    """Clark measure whose Cauchy transform diagonalizes S_u^alpha, |alpha| = 1.

    This is the measure at alpha itself: S_u^alpha is unitary with
    eigenvalues the atoms of mu_alpha (the circle solutions of u = alpha).
    """
    return clark_measure(basis, alpha)


def verify_clark_intertwining(basis: ModelSpaceBasis, alpha: complex) -> dict:
    """Residuals of Clark unitarity and the diagonalization of S_u^alpha."""
    mu = clark_measure(basis, alpha)
    V = cauchy_transform(basis, mu)
    W = np.diag(mu.weights)
    Vinv = np.linalg.inv(V)
    S_alpha = modified_shift(basis, alpha)
    return {
        "unitarity": float(
            np.linalg.norm(Vinv.conj().T @ W @ Vinv - np.eye(basis.n), 2)
        ),
        "gram": float(np.linalg.norm(V.conj().T @ V - W, 2)),
        "intertwining": float(
            np.linalg.norm(V @ np.diag(mu.atoms) @ Vinv - S_alpha, 2)
        ),
    }


def functional_calculus_unitary(
    basis: ModelSpaceBasis, mu: ClarkMeasure, phi_values
) -> np.ndarray:
    """V diag(Phi(zeta_j)) V^{-1}: the atomic functional calculus operator.

    The result commutes with S_u^{beta_alpha} for the measure's alpha.
    """
    phi_values = np.asarray(phi_values, dtype=complex)
    if phi_values.shape != mu.atoms.shape:
        raise ValidationError("need one symbol value per atom")
    V = cauchy_transform(basis, mu)
    return V @ np.diag(phi_values) @ np.linalg.inv(V)


def atomic_mult_inverse(phi_values, tol: float = TOL_INV):
    """Pointwise reciprocal of an atom function, or None when 0 is in range."""
    phi_values = np.asarray(phi_values, dtype=complex)
    if np.min(np.abs(phi_values)) <= tol:
        return None
    return 1.0 / phi_values


def spectral_data(basis: ModelSpaceBasis, mu: ClarkMeasure, phi_values, tol: float = 1e-8):
    """Eigenvalues and eigenspaces of the self-adjoint calculus operator.

    Requires real atom values; returns a list of (lambda, column basis of the
    eigenspace) with eigenvalues grouped by level set, eigenvectors the
    Cauchy-transform images of level-set indicators.
    """
    phi_values = np.asarray(phi_values, dtype=complex)
    if np.max(np.abs(phi_values.imag)) > 1e-9:
        raise ValidationError("spectral data needs real atom values")
    vals = phi_values.real
    V = cauchy_transform(basis, mu)
    remaining = list(range(len(vals)))
    out = []
    while remaining:
        lam = vals[remaining[0]]
        level = [j for j in remaining if abs(vals[j] - lam) <= tol]
        remaining = [j for j in remaining if j not in level]
        vecs = V[:, level]
        vecs = vecs / np.linalg.norm(vecs, axis=0)
        out.append((float(lam), vecs))
    return out

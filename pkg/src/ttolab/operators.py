"""Operators on K_u as matrices in the Takenaka-Malmquist basis.

Covers the compressed shift S_u, its rank-one modifications S_u^alpha,
truncated Toeplitz operators A_phi, Sedlock-class constructions, Crofoot
transforms between K_{u_alpha} and K_u, quotient-type functional calculus
phi(S_u^alpha) for locally Smirnov rational symbols, and a decision
procedure recovering the Sedlock parameter of a given operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, frostman_shift
from .errors import (
    DegenerateParameterError,
    SingularDenominatorError,
    ValidationError,
)
from .hardy import RationalSymbol, local_smirnov_check
from .modelspace import ModelSpaceBasis

COND_LIMIT = 1e12
UNIT_CIRCLE_TOL = 1e-10


class _Infinity:
    """Marker for the Sedlock parameter alpha = infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Infinity()


def regime(alpha) -> str:
    """Classify a Sedlock parameter: 'inside', 'unit', 'outside' or 'infinity'."""
    if alpha is INF:
        return "infinity"
    r = abs(complex(alpha))
    if abs(r - 1.0) <= UNIT_CIRCLE_TOL:
        return "unit"
    return "inside" if r < 1.0 else "outside"


def compressed_shift(basis: ModelSpaceBasis) -> np.ndarray:
    """Matrix of f -> P_u(z f)."""
    z = basis.grid.points
    return np.column_stack(
        [basis.project(z * basis.samples[:, k]) for k in range(basis.n)]
    )


def rank_one_direction(basis: ModelSpaceBasis) -> np.ndarray:
    """The perturbation k_0 (x) conj-kernel direction of the modified shifts."""
    k0 = basis.reproducing_kernel(0.0)
    ck0 = basis.apply_conjugation(k0)
    return np.outer(k0, np.conj(ck0))


def modified_shift(basis: ModelSpaceBasis, alpha: complex) -> np.ndarray:
    """S_u^alpha = S_u + alpha/(1 - alpha conj(u(0))) * k_0 (x) C_u k_0."""
    alpha = complex(alpha)
    denom = 1.0 - alpha * np.conj(basis.u(0.0))
    if abs(denom) < 1e-14:
        raise DegenerateParameterError("1 - alpha conj(u(0)) vanishes")
    return compressed_shift(basis) + (alpha / denom) * rank_one_direction(basis)


def commutation_partner(basis: ModelSpaceBasis, alpha) -> np.ndarray:
    """The operator whose commutant is the alpha Sedlock class.

    S_u^alpha for finite |alpha| <= 1; the adjoint of S_u^{1/conj(alpha)}
    for |alpha| > 1; S_u^* for alpha = infinity.
    """
    reg = regime(alpha)
    if reg == "infinity":
        return compressed_shift(basis).conj().T
    if reg == "outside":
        return modified_shift(basis, 1.0 / np.conj(alpha)).conj().T
    return modified_shift(basis, alpha)


def tto_matrix(basis: ModelSpaceBasis, symbol_values: np.ndarray) -> np.ndarray:
    """Truncated Toeplitz matrix: entries <phi e_j, e_i> on the grid."""
    E = basis.samples
    phi = np.asarray(symbol_values, dtype=complex)
    if phi.shape != (basis.grid.n,):
        raise ValidationError("symbol values must live on the basis grid")
    return E.conj().T @ (phi[:, None] * E) / basis.grid.n


def sedlock_operator(
    basis: ModelSpaceBasis, phi_coeffs: np.ndarray, alpha: complex, c: complex = 0.0
) -> np.ndarray:
    """TTO with symbol phi + alpha conj(S_u C_u phi) + c, phi in K_u.

    By Sedlock's classification the result commutes with S_u^alpha.
    """
    phi_coeffs = np.asarray(phi_coeffs, dtype=complex)
    fvals = basis.synthesize(phi_coeffs)
    shifted = compressed_shift(basis) @ basis.apply_conjugation(phi_coeffs)
    symbol = fvals + complex(alpha) * np.conj(basis.synthesize(shifted)) + complex(c)
    return tto_matrix(basis, symbol)


def crofoot(basis: ModelSpaceBasis, alpha: complex):
    """Crofoot transform J_alpha : K_{u_alpha} -> K_u, |alpha| < 1.

    Returns (J, basis_alpha) with J the matrix of multiplication by
    (1-|alpha|^2)^{-1/2} (1 - conj(alpha) u) between the two TM bases.
    """
    alpha = complex(alpha)
    if not abs(alpha) < 1.0:
        raise ValidationError("Crofoot transform needs |alpha| < 1")
    u_alpha = frostman_shift(basis.u, alpha)
    basis_alpha = ModelSpaceBasis(u_alpha, basis.grid)
    mult = (1.0 - np.conj(alpha) * basis.u_values) / np.sqrt(1.0 - abs(alpha) ** 2)
    J = np.column_stack(
        [basis.project(mult * basis_alpha.samples[:, k]) for k in range(basis.n)]
    )
    return J, basis_alpha


def matrix_polynomial(coeffs, M: np.ndarray) -> np.ndarray:
    """Horner evaluation of an ascending-coefficient polynomial at a matrix."""
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    n = M.shape[0]
    out = coeffs[-1] * np.eye(n, dtype=complex)
    for c in coeffs[-2::-1]:
        out = out @ M + c * np.eye(n, dtype=complex)
    return out


def quotient_operator(
    basis: ModelSpaceBasis, phi: RationalSymbol, alpha: complex
) -> np.ndarray:
    """phi(S_u^alpha) for rational locally Smirnov phi, |alpha| < 1.

    Splits phi = num/den and returns den(S_u^alpha)^{-1} num(S_u^alpha) by
    Horner evaluation plus one linear solve; the denominator's inner factor
    must share no zero with u_alpha.
    """
    alpha = complex(alpha)
    if not abs(alpha) < 1.0:
        raise ValidationError("quotient calculus needs |alpha| < 1")
    u_alpha = frostman_shift(basis.u, alpha) if alpha != 0 else basis.u
    if not local_smirnov_check(phi, u_alpha):
        raise ValidationError("symbol not locally Smirnov at u_alpha")
    red = phi.reduced()
    M = modified_shift(basis, alpha)
    num = matrix_polynomial(red.num, M)
    den = matrix_polynomial(red.den, M)
    if np.linalg.cond(den) > COND_LIMIT:
        raise SingularDenominatorError(
            "denominator operator numerically singular (coprimality violated)"
        )
    return np.linalg.solve(den, num)


def adjoint_class_operator(
    basis: ModelSpaceBasis, phi: RationalSymbol, alpha
) -> np.ndarray:
    """Class operator for |alpha| > 1 (or alpha = infinity) via adjoints.

    Returns the adjoint of phi(S_u^beta) with beta = 1/conj(alpha) (beta = 0
    for alpha = infinity); it commutes with (S_u^beta)^*.
    """
    if alpha is INF:
        beta = 0.0 + 0.0j
    else:
        alpha = complex(alpha)
        if abs(alpha) <= 1.0:
            raise ValidationError("adjoint-class calculus needs |alpha| > 1")
        beta = 1.0 / np.conj(alpha)
    return quotient_operator(basis, phi, beta).conj().T


@dataclass(frozen=True)
class SedlockClassification:
    """Outcome of Sedlock-class membership detection.

    kind is 'none', 'all' (scalar operators), or 'finite' with the detected
    parameters in ``alphas`` (entries are complex or the INF marker).
    """

    kind: str
    alphas: tuple = ()

    def contains(self, alpha, tol: float = 1e-8) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "none":
            return False
        for a in self.alphas:
            if alpha is INF or a is INF:
                if alpha is INF and a is INF:
                    return True
            elif abs(complex(a) - complex(alpha)) < tol:
                return True
        return False


def _direct_parameter(A, S, R, u0, tol):
    """Solve [A, S + t R] = 0 for t; return alpha or None."""
    c1 = (A @ S - S @ A).ravel()
    c2 = (A @ R - R @ A).ravel()
    scale = max(1.0, float(np.linalg.norm(A)))
    if np.linalg.norm(c2) < tol * scale:
        return None
    t = -np.vdot(c2, c1) / np.vdot(c2, c2)
    if np.linalg.norm(c1 + t * c2) > tol * scale:
        return None
    denom = 1.0 + t * np.conj(u0)
    if abs(denom) < 1e-8:
        return INF
    return t / denom


def sedlock_membership(
    A: np.ndarray, basis: ModelSpaceBasis, tol: float = 1e-8
) -> SedlockClassification:
    """Detect the Sedlock classes containing A.

    Solves the scalar commutation condition [A, S_u + t R] = 0 directly and,
    through the adjoint, maps solutions back to the parameter alpha.
    """
    A = np.asarray(A, dtype=complex)
    n = basis.n
    scale = max(1.0, float(np.linalg.norm(A)))
    mu = np.trace(A) / n
    if np.linalg.norm(A - mu * np.eye(n)) < tol * scale:
        return SedlockClassification("all")
    S = compressed_shift(basis)
    R = rank_one_direction(basis)
    u0 = basis.u(0.0)
    found = []
    direct = _direct_parameter(A, S, R, u0, tol)
    if direct is not None:
        found.append(direct)
    dual = _direct_parameter(A.conj().T, S, R, u0, tol)
    if dual is not None:
        if dual is INF:
            mapped = 0.0 + 0.0j
        elif abs(complex(dual)) < 1e-12:
            mapped = INF
        else:
            mapped = 1.0 / np.conj(complex(dual))
        cls = SedlockClassification("finite", tuple(found))
        if not cls.contains(mapped, tol):
            found.append(mapped)
    if not found:
        return SedlockClassification("none")
    return SedlockClassification("finite", tuple(found))

"""Theorem verification suites.

Each suite turns one of the classification / invertibility / self-adjointness
statements into a family of residual checks on concrete matrices and returns
a structured report.  Every suite also runs at least one negative control: a
deliberately violated hypothesis whose detection is encoded as a
``control_*`` residual (0.0 when the violation was flagged, 1.0 otherwise),
so that ``verdict`` remains "every residual below tolerance".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npp

from .blaschke import BlaschkeProduct, divides, divisibility_residual, frostman_shift
from .clark import (
    atomic_mult_inverse,
    diagonalizing_measure,
    functional_calculus_unitary,
    spectral_data,
)
from .errors import ValidationError
from .hardy import (
    BoundaryGrid,
    RationalSymbol,
    canonical_pair,
    denominator_inner_part,
    local_smirnov_check,
)
from .modelspace import ModelSpaceBasis
from .operators import (
    INF,
    adjoint_class_operator,
    commutation_partner,
    compressed_shift,
    crofoot,
    matrix_polynomial,
    modified_shift,
    quotient_operator,
    regime,
    sedlock_membership,
    sedlock_operator,
    tto_matrix,
)
from . import sampling

DEFAULT_TOL = 1e-8


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _alpha_param(alpha):
    return "inf" if alpha is INF else _c(alpha)


def _opnorm(M) -> float:
    return float(np.linalg.norm(M, 2))


def _rel(delta, *operands) -> float:
    scale = max([1.0] + [_opnorm(M) for M in operands])
    return _opnorm(delta) / scale


@dataclass
class VerificationReport:
    suite: str
    params: dict
    residuals: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_TOL

    @property
    def verdict(self) -> bool:
        return all(r < self.tolerance for r in self.residuals.values())

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "residuals": {k: float(v) for k, v in sorted(self.residuals.items())},
            "tolerance": self.tolerance,
            "verdict": "pass" if self.verdict else "fail",
        }


def _symbol_values(basis: ModelSpaceBasis, sym: RationalSymbol, alpha: complex):
    """Grid values of sym / (1 - alpha conj(u))."""
    return sym(basis.grid.points) / (1.0 - alpha * np.conj(basis.u_values))


def _weighted_tto(basis, boundary_values, alpha):
    return tto_matrix(basis, boundary_values / (1.0 - alpha * np.conj(basis.u_values)))


def _commutant_nullspace(M: np.ndarray):
    """Orthonormal basis of {X : XM = MX}, via SVD of the commutation map."""
    n = M.shape[0]
    eye = np.eye(n)
    L = np.kron(eye, M.T) - np.kron(M, eye)
    _, s, vh = np.linalg.svd(L)
    cutoff = 1e-8 * max(1.0, s[0])
    # rows of vh are conjugated right singular vectors
    return [v.conj().reshape(n, n) for v in vh[s < cutoff]]


def _random_class_operator(basis, alpha, rng):
    """One random member of the alpha Sedlock class."""
    reg = regime(alpha)
    if reg == "inside":
        if rng.random() < 0.5:
            sym = sampling.random_bounded_symbol(rng, degree=min(3, basis.n + 1))
            return quotient_operator(basis, sym, alpha)
        return sedlock_operator(
            basis, sampling.random_ku_vector(rng, basis.n), alpha,
            complex(rng.standard_normal()),
        )
    if reg == "unit":
        if rng.random() < 0.5:
            mu = diagonalizing_measure(basis, alpha)
            phi = sampling.random_disk_points(rng, mu.size, 1.0)
            return functional_calculus_unitary(basis, mu, phi)
        return sedlock_operator(
            basis, sampling.random_ku_vector(rng, basis.n), alpha,
            complex(rng.standard_normal()),
        )
    if reg == "outside":
        sym = sampling.random_bounded_symbol(rng, degree=min(3, basis.n + 1))
        return adjoint_class_operator(basis, sym, alpha)
    poly = sampling.random_polynomial(rng, min(3, basis.n))
    return matrix_polynomial(poly, compressed_shift(basis).conj().T)


def suite_commutant(
    basis: ModelSpaceBasis, alpha, seed: int = 0, tol: float = DEFAULT_TOL,
    samples: int = 20,
) -> VerificationReport:
    """Commutant dimension and Sedlock classification round trip."""
    rng = np.random.default_rng(seed)
    M = commutation_partner(basis, alpha)
    null = _commutant_nullspace(M)
    res = {"commutant_dimension_gap": float(abs(len(null) - basis.n))}
    worst = 0.0
    for _ in range(samples):
        A = _random_class_operator(basis, alpha, rng)
        worst = max(worst, _rel(A @ M - M @ A, A, M))
    res["class_operator_commutation"] = worst
    worst = 0.0
    for _ in range(5):
        coeffs = rng.standard_normal(len(null)) + 1j * rng.standard_normal(len(null))
        X = sum(c * B for c, B in zip(coeffs, null))
        cls = sedlock_membership(X, basis)
        worst = max(worst, 0.0 if cls.contains(alpha, 1e-8) else 1.0)
    res["membership_round_trip"] = worst
    if basis.n > 1:
        X = rng.standard_normal((basis.n, basis.n)) + 1j * rng.standard_normal(
            (basis.n, basis.n)
        )
        cls = sedlock_membership(X, basis)
        res["control_random_matrix_rejected"] = 0.0 if not cls.contains(alpha) else 1.0
    return VerificationReport(
        "commutant",
        {
            "u": basis.u.to_dict(),
            "alpha": _alpha_param(alpha),
            "seed": seed,
            "grid": basis.grid.n,
        },
        res,
        tol,
    )


def _smooth_part(phi: RationalSymbol):
    """(v, phi*v reduced): clear the disk poles of a locally Smirnov symbol."""
    v = denominator_inner_part(phi)
    smooth = RationalSymbol(
        npp.polymul(phi.num, v.numerator()), npp.polymul(phi.den, v.denominator())
    ).reduced()
    return v, smooth


def suite_adjoint_graph(
    basis: ModelSpaceBasis, phi: RationalSymbol, alpha: complex,
    seed: int = 0, tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Graph identity, adjoint pairing, and Crofoot conjugacy for |alpha| < 1."""
    alpha = complex(alpha)
    u_alpha = frostman_shift(basis.u, alpha)
    if not local_smirnov_check(phi, u_alpha):
        raise ValidationError("symbol not locally Smirnov at u_alpha")
    v, smooth = _smooth_part(phi)
    pair = canonical_pair(smooth, basis.grid)
    v_vals = v(basis.grid.points)
    A = quotient_operator(basis, phi, alpha)
    A_b = _weighted_tto(basis, pair.b, alpha)
    A_va = _weighted_tto(basis, v_vals * pair.a, alpha)
    res = {"graph_identity": _rel(A_b - A_va @ A, A_b, A_va @ A)}
    # adjoint side: conjugate symbols against A^H
    wbar = 1.0 - np.conj(alpha) * basis.u_values
    A_bc = tto_matrix(basis, np.conj(pair.b) / wbar)
    A_vac = tto_matrix(basis, np.conj(v_vals * pair.a) / wbar)
    res["adjoint_pair"] = _rel(A_bc - A_vac @ A.conj().T, A_bc, A)
    J, basis_alpha = crofoot(basis, alpha)
    res["crofoot_unitarity"] = _opnorm(J.conj().T @ J - np.eye(basis.n))
    Jinv = np.linalg.inv(J)
    res["crofoot_shift_intertwining"] = _rel(
        Jinv @ modified_shift(basis, alpha) @ J - compressed_shift(basis_alpha),
        modified_shift(basis, alpha),
    )
    res["crofoot_conjugacy"] = _rel(
        A - J @ quotient_operator(basis_alpha, phi, 0.0) @ Jinv, A
    )
    res["conjugation_identity"] = _opnorm(
        basis.conjugation @ np.conj(J) - J @ basis_alpha.conjugation
    )
    # control: the Crofoot intertwining must fail for a wrong parameter
    bad = 0.5 * alpha + 0.25 if abs(alpha - 0.5) > 0.05 else 0.5 * alpha - 0.25
    J2, basis_bad = crofoot(basis, bad)
    mismatch = _opnorm(
        np.linalg.inv(J2) @ modified_shift(basis, alpha) @ J2
        - compressed_shift(basis_bad)
    )
    res["control_wrong_parameter_detected"] = 0.0 if mismatch > 100 * tol else 1.0
    return VerificationReport(
        "adjoint_graph",
        {
            "u": basis.u.to_dict(),
            "alpha": _c(alpha),
            "phi": phi.to_dict(),
            "seed": seed,
            "grid": basis.grid.n,
        },
        res,
        tol,
    )


def suite_product_uniqueness(
    basis: ModelSpaceBasis, alpha: complex, psi: RationalSymbol,
    phi: RationalSymbol, seed: int = 0, tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Product rule and mod-u_alpha symbol uniqueness for |alpha| < 1."""
    alpha = complex(alpha)
    u_alpha = frostman_shift(basis.u, alpha)
    rng = np.random.default_rng(seed)
    A_psi = quotient_operator(basis, psi, alpha)
    A_phi = quotient_operator(basis, phi, alpha)
    A_prod = quotient_operator(basis, psi * phi, alpha)
    res = {
        "product_rule": _rel(A_psi @ A_phi - A_prod, A_prod, A_psi @ A_phi),
        "product_commutation": _rel(A_psi @ A_phi - A_phi @ A_psi, A_psi @ A_phi),
    }
    # positive control: adding a multiple of u_alpha leaves the operator alone
    r = sampling.random_polynomial(rng, 2)
    ua_r = RationalSymbol(
        npp.polymul(u_alpha.numerator(), r), tuple(u_alpha.denominator())
    )
    A_shifted = quotient_operator(basis, phi + ua_r, alpha)
    res["uniqueness_multiple"] = _rel(A_phi - A_shifted, A_phi)
    if not divides(u_alpha, ua_r):
        res["uniqueness_multiple"] = 1.0
    # negative control: adding a non-multiple must move the operator
    A_bumped = quotient_operator(basis, phi + 1.0, alpha)
    moved = _opnorm(A_phi - A_bumped)
    flagged = moved > 100 * tol and not divides(u_alpha, np.array([1.0 + 0.0j]))
    res["control_non_multiple_detected"] = 0.0 if flagged else 1.0
    return VerificationReport(
        "product_uniqueness",
        {
            "u": basis.u.to_dict(),
            "alpha": _c(alpha),
            "psi": psi.to_dict(),
            "phi": phi.to_dict(),
            "seed": seed,
            "grid": basis.grid.n,
        },
        res,
        tol,
    )


def tm_rational_numerators(basis: ModelSpaceBasis):
    """Numerators of the TM basis over the common denominator of u.

    e_k = n_k / q with q = prod_j (1 - conj(a_j) z); returns the ascending
    coefficient arrays n_k.
    """
    zeros = basis.zeros
    nums = []
    for k in range(basis.n):
        poly = np.array([np.sqrt(1.0 - abs(zeros[k]) ** 2)], dtype=complex)
        for a in zeros[:k]:
            poly = npp.polymul(poly, [-a, 1.0])
        for a in zeros[k + 1 :]:
            poly = npp.polymul(poly, [1.0, -np.conj(a)])
        nums.append(poly)
    return nums


def recover_class_symbol(
    basis: ModelSpaceBasis, basis_alpha: ModelSpaceBasis, alpha: complex,
    M: np.ndarray,
):
    """Express M in the span of A_{e_k / (1 - alpha conj u)}, e_k TM in K_{u_alpha}.

    Returns (coefficients, K_{u_alpha} symbol representative as a
    RationalSymbol, reconstruction residual).
    """
    n = basis.n
    gens = [
        _weighted_tto(basis, basis_alpha.samples[:, k], alpha) for k in range(n)
    ]
    G = np.column_stack([g.ravel() for g in gens])
    coeffs, *_ = np.linalg.lstsq(G, M.ravel(), rcond=None)
    recon = (G @ coeffs).reshape(n, n)
    nums = tm_rational_numerators(basis_alpha)
    num = np.zeros(1, dtype=complex)
    for c, p in zip(coeffs, nums):
        num = npp.polyadd(num, c * p)
    psi = RationalSymbol(tuple(num), tuple(basis_alpha.u.denominator()))
    return coeffs, psi, _rel(M - recon, M)


def inverse_divisibility_residual(
    u_alpha: BlaschkeProduct, phi: RationalSymbol, psi: RationalSymbol
) -> float:
    """Residual of "u_alpha divides psi*phi - 1" in polynomial form."""
    red = phi.reduced()
    P = npp.polysub(
        npp.polymul(psi.num, red.num), npp.polymul(psi.den, red.den)
    )
    return divisibility_residual(u_alpha, P)


def _invertible_symbol(rng, degree: int) -> RationalSymbol:
    """Analytic rational symbol whose numerator has no zeros in the closed disk."""
    roots = (1.3 + rng.random(degree)) * np.exp(2j * np.pi * rng.random(degree))
    num = npp.polyfromroots(roots) * (0.5 + rng.random())
    return RationalSymbol(tuple(num), (1.0,))


def suite_inverse(
    basis: ModelSpaceBasis, alpha, phi: RationalSymbol | None = None,
    phi_atoms=None, seed: int = 0, tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Inverse characterization: class membership of A^{-1} plus divisibility."""
    rng = np.random.default_rng(seed)
    reg = regime(alpha)
    params = {
        "u": basis.u.to_dict(),
        "alpha": _alpha_param(alpha),
        "seed": seed,
        "grid": basis.grid.n,
    }
    res = {}
    if reg == "unit":
        mu = diagonalizing_measure(basis, alpha)
        if phi_atoms is None:
            phi_atoms = (0.5 + 1.5 * rng.random(mu.size)) * rng.choice(
                [-1.0, 1.0], mu.size
            )
        phi_atoms = np.asarray(phi_atoms, dtype=complex)
        params["phi_atoms"] = [_c(v) for v in phi_atoms]
        inv_vals = atomic_mult_inverse(phi_atoms)
        if inv_vals is None:
            res["noninvertible_flagged"] = 0.0
        else:
            A = functional_calculus_unitary(basis, mu, phi_atoms)
            Ainv = functional_calculus_unitary(basis, mu, inv_vals)
            res["inverse_identity"] = _rel(A @ Ainv - np.eye(basis.n), A, Ainv)
            cls = sedlock_membership(Ainv, basis)
            res["inverse_membership"] = 0.0 if cls.contains(alpha, 1e-8) else 1.0
        zeroed = np.array(phi_atoms, dtype=complex)
        zeroed[0] = 0.0
        res["control_zero_range_detected"] = (
            0.0 if atomic_mult_inverse(zeroed) is None else 1.0
        )
        return VerificationReport("inverse", params, res, tol)
    if reg in ("outside", "infinity"):
        if phi is None:
            phi = _invertible_symbol(rng, min(3, basis.n))
        params["phi"] = phi.to_dict()
        A = adjoint_class_operator(basis, phi, alpha)
        Ainv = np.linalg.inv(A)
        cls = sedlock_membership(Ainv, basis)
        res["inverse_membership"] = 0.0 if cls.contains(alpha, 1e-8) else 1.0
        res["inverse_identity"] = _rel(A @ Ainv - np.eye(basis.n), A, Ainv)
        return VerificationReport("inverse", params, res, tol)
    alpha = complex(alpha)
    if phi is None:
        phi = _invertible_symbol(rng, min(3, basis.n))
    params["phi"] = phi.to_dict()
    u_alpha = frostman_shift(basis.u, alpha)
    A = quotient_operator(basis, phi, alpha)
    if np.linalg.cond(A) > 1e12:
        res["noninvertible_flagged"] = 0.0
        return VerificationReport("inverse", params, res, tol)
    M = np.linalg.inv(A)
    cls = sedlock_membership(M, basis)
    res["inverse_membership"] = 0.0 if cls.contains(alpha, 1e-8) else 1.0
    basis_alpha = ModelSpaceBasis(u_alpha, basis.grid)
    _, psi, recon = recover_class_symbol(basis, basis_alpha, alpha, M)
    res["symbol_recovery"] = recon
    res["inverse_divisibility"] = inverse_divisibility_residual(u_alpha, phi, psi)
    # control: a numerator zero shared with u_alpha makes the operator singular
    a1 = u_alpha.zeros[0][0]
    bad = phi * RationalSymbol((-a1, 1.0))
    A_bad = quotient_operator(basis, bad, alpha)
    res["control_singular_detected"] = (
        0.0 if np.linalg.cond(A_bad) > 1e12 else 1.0
    )
    return VerificationReport("inverse", params, res, tol)


def suite_selfadjoint(
    basis: ModelSpaceBasis, alpha: complex, phi_atoms=None,
    seed: int = 0, tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Self-adjointness and spectral structure of real atomic calculus."""
    rng = np.random.default_rng(seed)
    mu = diagonalizing_measure(basis, alpha)
    if phi_atoms is None:
        pool = np.array([-1.0, 0.5, 2.0, 3.5])
        phi_atoms = rng.choice(pool, mu.size)
    phi_atoms = np.asarray(phi_atoms, dtype=complex)
    A = functional_calculus_unitary(basis, mu, phi_atoms)
    res = {"hermitian": _rel(A - A.conj().T, A)}
    evals, evecs = np.linalg.eigh((A + A.conj().T) / 2.0)
    target = np.sort(phi_atoms.real)
    res["eigenvalue_multiset"] = float(np.max(np.abs(np.sort(evals) - target)))
    worst_dim, worst_angle = 0.0, 0.0
    for lam, vecs in spectral_data(basis, mu, phi_atoms):
        idx = np.abs(evals - lam) < 1e-6
        worst_dim = max(worst_dim, float(abs(int(np.sum(idx)) - vecs.shape[1])))
        q1, _ = np.linalg.qr(vecs)
        q2 = evecs[:, idx]
        worst_angle = max(
            worst_angle,
            _opnorm(q1 @ q1.conj().T - q2 @ q2.conj().T),
        )
    res["eigenspace_dimensions"] = worst_dim
    res["eigenspace_angle"] = worst_angle
    bumped = np.array(phi_atoms, dtype=complex)
    bumped[0] += 1.0j
    A_bad = functional_calculus_unitary(basis, mu, bumped)
    gap = _rel(A_bad - A_bad.conj().T, A_bad)
    res["control_nonreal_detected"] = 0.0 if gap > max(1e-6, 100 * tol) else 1.0
    return VerificationReport(
        "selfadjoint",
        {
            "u": basis.u.to_dict(),
            "alpha": _c(alpha),
            "phi_atoms": [_c(v) for v in phi_atoms],
            "seed": seed,
            "grid": basis.grid.n,
        },
        res,
        tol,
    )


SUITE_NAMES = (
    "commutant",
    "adjoint_graph",
    "product_uniqueness",
    "inverse",
    "selfadjoint",
)


def _applicable(name: str, alpha) -> bool:
    reg = regime(alpha)
    if name in ("adjoint_graph", "product_uniqueness"):
        return reg == "inside"
    if name == "selfadjoint":
        return reg == "unit"
    return True


def run_suites(
    u: BlaschkeProduct,
    alphas,
    suites=SUITE_NAMES,
    grid: BoundaryGrid | None = None,
    symbols=None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> list[VerificationReport]:
    """Run the selected suites for every applicable (suite, alpha) pair."""
    basis = ModelSpaceBasis(u, grid)
    reports = []
    counter = 0
    for alpha in alphas:
        for name in suites:
            if name not in SUITE_NAMES:
                raise ValidationError(f"unknown suite {name!r}")
            if not _applicable(name, alpha):
                continue
            child_seed = seed + 1000 * counter
            counter += 1
            rng = np.random.default_rng(child_seed + 7)
            if name == "commutant":
                reports.append(suite_commutant(basis, alpha, child_seed, tol))
            elif name == "adjoint_graph":
                phi = _pick_symbol(symbols, 0) or sampling.random_local_smirnov_symbol(
                    rng, frostman_shift(u, complex(alpha)) if alpha != 0 else u
                )
                reports.append(suite_adjoint_graph(basis, phi, alpha, child_seed, tol))
            elif name == "product_uniqueness":
                psi = _pick_symbol(symbols, 1) or sampling.random_bounded_symbol(rng)
                phi = _pick_symbol(symbols, 0) or sampling.random_local_smirnov_symbol(
                    rng, frostman_shift(u, complex(alpha)) if alpha != 0 else u
                )
                reports.append(
                    suite_product_uniqueness(basis, alpha, psi, phi, child_seed, tol)
                )
            elif name == "inverse":
                reports.append(
                    suite_inverse(basis, alpha, seed=child_seed, tol=tol)
                )
            elif name == "selfadjoint":
                reports.append(
                    suite_selfadjoint(basis, alpha, seed=child_seed, tol=tol)
                )
    return reports


def _pick_symbol(symbols, index):
    if symbols and len(symbols) > index:
        return symbols[index]
    return None

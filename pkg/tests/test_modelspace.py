"""Takenaka-Malmquist bases, reproducing kernels, conjugation."""

import numpy as np
import pytest

from ttolab import (
    BlaschkeProduct,
    BoundaryGrid,
    ModelSpaceBasis,
    conjugation_matrix,
    project_Ku,
    reproducing_kernel,
)
from ttolab.errors import ValidationError


class TestBasis:
    def test_monomials_for_zn(self, basis_z3, grid):
        z = grid.points
        for k in range(3):
            assert np.max(np.abs(basis_z3.samples[:, k] - z**k)) < 1e-12

    def test_single_zero_normalized_kernel(self, grid):
        b = ModelSpaceBasis(BlaschkeProduct(((0.5 + 0.0j, 1),)), grid)
        z = grid.points
        ref = np.sqrt(0.75) / (1.0 - 0.5 * z)
        assert np.max(np.abs(b.samples[:, 0] - ref)) < 1e-10

    def test_gram_identity(self, basis_mixed):
        E = basis_mixed.samples
        G = E.conj().T @ E / basis_mixed.grid.n
        assert np.max(np.abs(G - np.eye(basis_mixed.n))) < 1e-9

    def test_grid_too_small_rejected(self):
        u = BlaschkeProduct(((0.0j, 80),))
        with pytest.raises(ValidationError):
            ModelSpaceBasis(u, BoundaryGrid(256))

    def test_projection_round_trip(self, basis_mixed):
        rng = np.random.default_rng(1)
        c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        back = basis_mixed.project(basis_mixed.synthesize(c))
        assert np.max(np.abs(back - c)) < 1e-9

    def test_projection_kills_u_h2(self, basis_z2, grid):
        assert np.max(np.abs(project_Ku(basis_z2, grid.points**3))) < 1e-12

    def test_projection_drops_high_part(self, basis_z2, grid):
        z = grid.points
        c = project_Ku(basis_z2, 1.0 + z + z**2)
        assert np.max(np.abs(c - np.array([1.0, 1.0]))) < 1e-10


class TestReproducingKernel:
    def test_constant_kernel_at_origin(self, basis_z2):
        k = reproducing_kernel(basis_z2, 0.0)
        assert np.max(np.abs(k - np.array([1.0, 0.0]))) < 1e-12

    def test_monomial_coefficients(self, basis_z3):
        k = reproducing_kernel(basis_z3, 0.2)
        assert np.max(np.abs(k - np.conj([1.0, 0.2, 0.04]))) < 1e-12

    def test_reproduction_random(self, basis_mixed):
        rng = np.random.default_rng(2)
        for _ in range(100):
            c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            lam = complex(*(0.6 * (rng.random(2) - 0.5)))
            k = reproducing_kernel(basis_mixed, lam)
            assert abs(np.vdot(k, c) - basis_mixed.evaluate(c, lam)) < 1e-8 * np.linalg.norm(c)

    def test_kernel_function_formula(self, basis_mixed, grid):
        lam = 0.3 - 0.2j
        u = basis_mixed.u
        z = grid.points
        ref = (1.0 - np.conj(u(lam)) * u(z)) / (1.0 - np.conj(lam) * z)
        got = basis_mixed.synthesize(reproducing_kernel(basis_mixed, lam))
        assert np.max(np.abs(got - ref)) < 1e-8

    def test_boundary_point_rejected(self, basis_mixed):
        with pytest.raises(ValidationError):
            reproducing_kernel(basis_mixed, 1.0)


class TestConjugation:
    def test_z2_swaps_coordinates(self, basis_z2):
        K = conjugation_matrix(basis_z2)
        assert np.max(np.abs(K - np.array([[0.0, 1.0], [1.0, 0.0]]))) < 1e-10

    def test_degree_one(self, grid):
        b = ModelSpaceBasis(BlaschkeProduct(((0.0j, 1),)), grid)
        out = b.apply_conjugation(np.array([1.0 + 0j]))
        assert out[0] == pytest.approx(1.0)

    def test_unitary_symmetric(self, basis_mixed):
        K = conjugation_matrix(basis_mixed)
        n = basis_mixed.n
        assert np.max(np.abs(K @ np.conj(K) - np.eye(n))) < 1e-9
        assert np.max(np.abs(K - K.T)) < 1e-9

    def test_involution_and_isometry(self, basis_mixed):
        rng = np.random.default_rng(3)
        c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        cc = basis_mixed.apply_conjugation(basis_mixed.apply_conjugation(c))
        assert np.max(np.abs(cc - c)) < 1e-10
        assert np.linalg.norm(basis_mixed.apply_conjugation(c)) == pytest.approx(
            np.linalg.norm(c), abs=1e-10
        )

    def test_matches_boundary_formula(self, basis_mixed, grid):
        # C_u f = u * conj(z f) on the circle
        rng = np.random.default_rng(4)
        c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        z = grid.points
        f = basis_mixed.synthesize(c)
        ref = basis_mixed.u(z) * np.conj(z * f)
        got = basis_mixed.synthesize(basis_mixed.apply_conjugation(c))
        assert np.max(np.abs(got - ref)) < 1e-9

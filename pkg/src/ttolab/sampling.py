"""Seeded random generation of Blaschke products and rational symbols.

Coefficients and zeros are drawn uniformly from disks so that every suite
run is reproducible from its seed.
"""

from __future__ import annotations

import numpy as np

from .blaschke import BlaschkeProduct, hyperbolic_distance
from .hardy import RationalSymbol


def random_disk_points(rng: np.random.Generator, count: int, radius: float = 0.75):
    r = radius * np.sqrt(rng.random(count))
    theta = 2.0 * np.pi * rng.random(count)
    return r * np.exp(1j * theta)


def random_unimodular(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def random_blaschke(
    rng: np.random.Generator, degree: int, radius: float = 0.75
) -> BlaschkeProduct:
    zeros = tuple((z, 1) for z in random_disk_points(rng, degree, radius))
    return BlaschkeProduct(zeros, random_unimodular(rng))


def random_polynomial(rng: np.random.Generator, degree: int) -> np.ndarray:
    """Ascending coefficients drawn uniformly from the unit disk."""
    return random_disk_points(rng, degree + 1, 1.0)


def random_ku_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return random_disk_points(rng, n, 1.0)


def random_bounded_symbol(
    rng: np.random.Generator, degree: int = 3, pole_radius: float = 1.5
) -> RationalSymbol:
    """Rational symbol analytic on the closed disk (all poles outside)."""
    num = random_polynomial(rng, degree)
    num[-1] += 2.0  # keep the leading coefficient away from zero
    droots = pole_radius + rng.random(max(1, degree - 1))
    droots = droots * np.exp(2j * np.pi * rng.random(len(droots)))
    den = np.polynomial.polynomial.polyfromroots(droots)
    return RationalSymbol(tuple(num), tuple(den))


def random_local_smirnov_symbol(
    rng: np.random.Generator,
    avoid: BlaschkeProduct,
    degree: int = 3,
    separation: float = 0.3,
) -> RationalSymbol:
    """Symbol with one disk pole kept hyperbolically away from the zeros of ``avoid``."""
    base = random_bounded_symbol(rng, degree)
    for _ in range(64):
        pole = complex(random_disk_points(rng, 1, 0.6)[0])
        if all(hyperbolic_distance(pole, a) > separation for a, _ in avoid.zeros):
            break
    else:  # pragma: no cover - 64 rejections over the disk is vanishingly rare
        raise RuntimeError("could not place a separated pole")
    den = np.polynomial.polynomial.polymul(base.den, [-pole, 1.0])
    return RationalSymbol(base.num, tuple(den))

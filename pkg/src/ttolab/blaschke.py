"""Finite Blaschke products as first-class values.

A finite Blaschke product is determined by its zero multiset in the open
unit disk together with a unimodular constant,

    u(z) = c * prod_j ((z - a_j) / (1 - conj(a_j) z))**m_j,  |c| = 1.

This module provides evaluation, Frostman shifts u_alpha = (u-alpha)/(1-conj(alpha)u),
greatest common inner divisors, and divisibility tests against analytic data.
All root extraction goes through companion-matrix eigenvalues
(``numpy.polynomial.polynomial.polyroots``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import (
    PoleProximityError,
    RootFindingError,
    ValidationError,
)

DISK_MARGIN = 1e-12
UNIMODULAR_TOL = 1e-12
TOL_ZERO = 1e-8       # zero matching, pseudo-hyperbolic metric
TOL_DIV = 1e-8        # relative divisibility tolerance
CLUSTER_TOL = 1e-6    # merging of split multiple roots


def hyperbolic_distance(a: complex, b: complex) -> float:
    """Pseudo-hyperbolic distance |a-b| / |1 - conj(a) b|."""
    return abs(a - b) / abs(1.0 - np.conj(a) * b)


def _cluster_roots(roots, tol=CLUSTER_TOL):
    """Group near-coincident roots into (centroid, multiplicity) pairs."""
    roots = list(roots)
    clusters = []
    for r in roots:
        for c in clusters:
            if hyperbolic_distance(c[0] / c[1], r) < tol:
                c[0] += r
                c[1] += 1
                break
        else:
            clusters.append([r, 1])
    return tuple((c[0] / c[1], c[1]) for c in clusters)


@dataclass(frozen=True)
class BlaschkeProduct:
    """A finite Blaschke product; ``zeros`` is a tuple of (point, multiplicity)."""

    zeros: tuple = ()
    constant: complex = 1.0 + 0.0j

    def __post_init__(self):
        zeros = tuple((complex(a), int(m)) for a, m in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "constant", complex(self.constant))
        for a, m in zeros:
            if m < 1:
                raise ValidationError(f"multiplicity {m} < 1")
            if abs(a) >= 1.0 - DISK_MARGIN:
                raise ValidationError(f"zero {a} not strictly inside the disk")
        if abs(abs(self.constant) - 1.0) > UNIMODULAR_TOL:
            raise ValidationError(f"constant {self.constant} not unimodular")

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.zeros)

    @property
    def zeros_expanded(self) -> tuple:
        """Zeros repeated to multiplicity, in stored order."""
        return tuple(a for a, m in self.zeros for _ in range(m))

    def numerator(self) -> np.ndarray:
        """Ascending coefficients of c * prod (z - a_j)^m_j."""
        p = np.array([self.constant])
        for a in self.zeros_expanded:
            p = npp.polymul(p, [-a, 1.0])
        return p

    def denominator(self) -> np.ndarray:
        """Ascending coefficients of prod (1 - conj(a_j) z)^m_j."""
        q = np.array([1.0 + 0.0j])
        for a in self.zeros_expanded:
            q = npp.polymul(q, [1.0, -np.conj(a)])
        return q

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.constant, dtype=complex)
        for a, m in self.zeros:
            den = 1.0 - np.conj(a) * z
            if np.any(np.abs(den) < 1e-14):
                raise PoleProximityError(f"evaluation too close to pole 1/conj({a})")
            out = out * ((z - a) / den) ** m
        return out[()] if out.ndim == 0 else out

    def derivative(self, z):
        """u'(z) from the rational form u = p/q."""
        z = np.asarray(z, dtype=complex)
        p, q = self.numerator(), self.denominator()
        pv, qv = npp.polyval(z, p), npp.polyval(z, q)
        dpv, dqv = npp.polyval(z, npp.polyder(p)), npp.polyval(z, npp.polyder(q))
        out = (dpv * qv - pv * dqv) / qv**2
        return out[()] if np.ndim(out) == 0 else out

    def to_dict(self) -> dict:
        return {
            "zeros": [[a.real, a.imag, m] for a, m in self.zeros],
            "constant": [self.constant.real, self.constant.imag],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BlaschkeProduct":
        zeros = tuple((complex(re, im), int(m)) for re, im, m in data["zeros"])
        cre, cim = data.get("constant", [1.0, 0.0])
        return cls(zeros, complex(cre, cim))


UNIT = BlaschkeProduct((), 1.0)


def eval_blaschke(u: BlaschkeProduct, z):
    return u(z)


def frostman_shift(u: BlaschkeProduct, alpha: complex) -> BlaschkeProduct:
    """The Frostman shift u_alpha = (u - alpha) / (1 - conj(alpha) u), |alpha| < 1.

    Zeros are the solutions of u(z) = alpha inside the disk, obtained as roots
    of p - alpha*q where u = p/q; the unimodular constant is fitted on the
    boundary so that the product matches the Moebius transform of u exactly.
    """
    alpha = complex(alpha)
    if not abs(alpha) < 1.0:
        raise ValidationError(f"|alpha| = {abs(alpha)} not < 1")
    if u.degree == 0:
        raise ValidationError("Frostman shift of a constant product")
    if alpha == 0:
        return u
    p, q = u.numerator(), u.denominator()
    n = max(len(p), len(q))
    coeffs = np.zeros(n, dtype=complex)
    coeffs[: len(p)] += p
    coeffs[: len(q)] -= alpha * q
    roots = npp.polyroots(coeffs)
    if np.any(np.abs(roots) >= 1.0 - 1e-10):
        raise RootFindingError(
            "computed Frostman-shift zero on or outside the unit circle"
        )
    zeros = _cluster_roots(roots)
    # Fit the constant at a boundary point well away from all poles and zeros.
    candidates = np.exp(2j * np.pi * np.arange(7) / 7.0)
    sep = [min(abs(1.0 - np.conj(a) * z0) for a, _ in zeros) for z0 in candidates]
    z0 = candidates[int(np.argmax(sep))]
    target = (u(z0) - alpha) / (1.0 - np.conj(alpha) * u(z0))
    base = np.prod([((z0 - a) / (1.0 - np.conj(a) * z0)) ** m for a, m in zeros])
    const = target / base
    const /= abs(const)
    return BlaschkeProduct(zeros, const)


def gcid(u1: BlaschkeProduct, u2: BlaschkeProduct,
         tol: float = TOL_ZERO) -> BlaschkeProduct:
    """Greatest common inner divisor: shared zeros at minimum multiplicity.

    Zeros are matched within ``tol`` in the pseudo-hyperbolic metric; the
    result carries constant 1 and is the degree-0 unit when nothing is shared.
    """
    avail = [[b, k] for b, k in u2.zeros]
    shared = []
    for a, m in u1.zeros:
        for entry in avail:
            if entry[1] > 0 and hyperbolic_distance(a, entry[0]) < tol:
                take = min(m, entry[1])
                shared.append((a, take))
                entry[1] -= take
                break
    return BlaschkeProduct(tuple(shared), 1.0) if shared else UNIT


def _taylor(poly, a: complex, order: int) -> np.ndarray:
    """First ``order`` Taylor coefficients of the polynomial at ``a``."""
    out = np.empty(order, dtype=complex)
    p = np.atleast_1d(np.asarray(poly, dtype=complex))
    fact = 1.0
    for k in range(order):
        out[k] = npp.polyval(a, p) / fact
        p = npp.polyder(p)
        fact *= k + 1
    return out


def _coerce_analytic(f):
    """Accept ascending polynomial coefficients or a RationalSymbol-like pair."""
    if hasattr(f, "num") and hasattr(f, "den"):
        num = np.asarray(f.num, dtype=complex)
        den = np.asarray(f.den, dtype=complex)
        droots = npp.polyroots(den) if len(np.trim_zeros(den, "b")) > 1 else []
        if np.any(np.abs(droots) <= 1.0 + 1e-8):
            raise ValidationError("divisibility test needs f analytic on the closed disk")
        return num, den
    return np.asarray(f, dtype=complex), np.array([1.0 + 0.0j])


def divisibility_residual(u1: BlaschkeProduct, f) -> float:
    """Largest scaled Taylor coefficient of f at the zeros of u1.

    Zero (up to roundoff) exactly when u1 divides f as an inner factor.
    """
    num, den = _coerce_analytic(f)
    circle = np.exp(2j * np.pi * np.arange(128) / 128.0)
    scale = np.max(np.abs(npp.polyval(circle, num) / npp.polyval(circle, den)))
    scale = max(scale, 1e-300)
    worst = 0.0
    for a, m in u1.zeros:
        nt = _taylor(num, a, m)
        dt = _taylor(den, a, m)
        # series division: Taylor coefficients of num/den at a
        ft = np.empty(m, dtype=complex)
        for k in range(m):
            ft[k] = (nt[k] - np.dot(ft[:k], dt[1 : k + 1][::-1])) / dt[0]
        worst = max(worst, float(np.max(np.abs(ft))))
    return worst / scale


def divides(u1: BlaschkeProduct, f, tol: float = TOL_DIV) -> bool:
    """True when f vanishes at every zero of u1 to full multiplicity."""
    if u1.degree == 0:
        return True
    return divisibility_residual(u1, f) < tol

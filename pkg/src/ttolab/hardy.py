"""Boundary-grid Hardy-space calculus.

All boundary data lives on a uniform power-of-two grid e^{2 pi i k / N};
boundary functions are plain complex sample arrays over such a grid.
Provides the Riesz (analytic) projection, Szego outer-function construction,
canonical pairs (a, b) with |a|^2 + |b|^2 = 1, inner-outer splitting of
rational symbols, and local Smirnov admissibility checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npp

from .blaschke import BlaschkeProduct, UNIT, _cluster_roots, gcid
from .errors import (
    DegenerateInputError,
    PositivityError,
    ValidationError,
)

DEFAULT_GRID = 1024
CIRCLE_MARGIN = 1e-8


@lru_cache(maxsize=16)
def _grid_points(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass(frozen=True)
class BoundaryGrid:
    """Uniform sampling of the unit circle at the N-th roots of unity."""

    n: int = DEFAULT_GRID

    def __post_init__(self):
        if self.n < 256 or self.n & (self.n - 1):
            raise ValidationError(f"grid size {self.n} not a power of two >= 256")

    @property
    def points(self) -> np.ndarray:
        return _grid_points(self.n)

    def inner(self, f, g) -> complex:
        """L^2(T) inner product <f, g> with normalized arc length."""
        return complex(np.mean(np.asarray(f) * np.conj(g)))

    def norm(self, f) -> float:
        return float(np.sqrt(np.mean(np.abs(f) ** 2)))


def riesz_project(values: np.ndarray) -> np.ndarray:
    """Zero out all negative-frequency Fourier content."""
    c = np.fft.fft(np.asarray(values, dtype=complex))
    c[len(c) // 2 :] = 0.0
    return np.fft.ifft(c)


def analytic_value_at_zero(values: np.ndarray) -> complex:
    """Value at the origin of an analytic boundary function (its mean)."""
    return complex(np.mean(values))


def negative_content(values: np.ndarray) -> float:
    """Relative weight of negative-frequency coefficients."""
    c = np.fft.fft(np.asarray(values, dtype=complex))
    total = np.linalg.norm(c)
    if total == 0.0:
        return 0.0
    return float(np.linalg.norm(c[len(c) // 2 :]) / total)


def outer_from_modulus(w: np.ndarray) -> np.ndarray:
    """Outer function O with |O| = w on the grid and O(0) real positive.

    Szego construction: O = exp(c_0 + 2 sum_{k>0} c_k z^k) with c_k the
    Fourier coefficients of log w (Herglotz kernel).
    """
    w = np.asarray(w, dtype=float)
    if np.min(w) <= 1e-10:
        raise PositivityError("modulus data must be strictly positive")
    c = np.fft.fft(np.log(w)).astype(complex)
    n = len(c)
    c[1 : n // 2] *= 2.0
    c[n // 2 :] = 0.0
    return np.exp(np.fft.ifft(c))


def _trim(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    trimmed = np.trim_zeros(arr, "b")
    return trimmed if len(trimmed) else arr[:1]


@dataclass(frozen=True)
class RationalSymbol:
    """A rational boundary symbol num/den, ascending coefficients.

    The denominator must stay clear of the unit circle.
    """

    num: tuple = (0.0 + 0.0j,)
    den: tuple = (1.0 + 0.0j,)

    def __post_init__(self):
        num = tuple(complex(c) for c in _trim(self.num))
        den = tuple(complex(c) for c in _trim(self.den))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if max(abs(c) for c in den) == 0.0:
            raise ValidationError("denominator identically zero")
        for r in self._den_roots():
            if abs(abs(r) - 1.0) <= CIRCLE_MARGIN:
                raise ValidationError(f"denominator root {r} on the unit circle")

    def _num_roots(self):
        return npp.polyroots(np.asarray(self.num)) if len(self.num) > 1 else np.array([])

    def _den_roots(self):
        return npp.polyroots(np.asarray(self.den)) if len(self.den) > 1 else np.array([])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = npp.polyval(z, np.asarray(self.num)) / npp.polyval(z, np.asarray(self.den))
        return out[()] if np.ndim(out) == 0 else out

    def is_zero(self) -> bool:
        return max(abs(c) for c in self.num) == 0.0

    def __add__(self, other):
        other = _as_rational(other)
        num = npp.polyadd(
            npp.polymul(self.num, other.den), npp.polymul(other.num, self.den)
        )
        return RationalSymbol(num, npp.polymul(self.den, other.den))

    __radd__ = __add__

    def __mul__(self, other):
        other = _as_rational(other)
        return RationalSymbol(
            npp.polymul(self.num, other.num), npp.polymul(self.den, other.den)
        )

    __rmul__ = __mul__

    def reduced(self, tol: float = 1e-10) -> "RationalSymbol":
        """Cancel matching numerator/denominator roots (lowest terms)."""
        if self.is_zero() or len(self.den) == 1:
            return RationalSymbol(
                np.asarray(self.num) / self.den[0], (1.0,)
            )
        nroots = list(self._num_roots())
        droots = list(self._den_roots())
        kept_d = []
        for r in droots:
            for i, s in enumerate(nroots):
                if abs(r - s) < tol * max(1.0, abs(r)):
                    del nroots[i]
                    break
            else:
                kept_d.append(r)
        lead = self.num[-1] / self.den[-1]
        num = lead * npp.polyfromroots(nroots) if nroots else np.array([lead])
        den = npp.polyfromroots(kept_d) if kept_d else np.array([1.0 + 0.0j])
        return RationalSymbol(num, den)

    def to_dict(self) -> dict:
        return {
            "num": [[c.real, c.imag] for c in self.num],
            "den": [[c.real, c.imag] for c in self.den],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RationalSymbol":
        num = [complex(re, im) for re, im in data["num"]]
        den = [complex(re, im) for re, im in data.get("den", [[1.0, 0.0]])]
        return cls(tuple(num), tuple(den))


def _as_rational(x) -> RationalSymbol:
    if isinstance(x, RationalSymbol):
        return x
    if np.isscalar(x):
        return RationalSymbol((complex(x),), (1.0,))
    return RationalSymbol(tuple(np.asarray(x, dtype=complex)), (1.0,))


def polynomial_symbol(coeffs) -> RationalSymbol:
    return _as_rational(np.asarray(coeffs, dtype=complex))


def inner_outer_split(f: RationalSymbol):
    """Split a rational symbol as (inner Blaschke, outer-remainder symbol).

    The inner part collects numerator roots strictly inside the disk;
    multiplying the two parts back reproduces f exactly.
    """
    if f.is_zero():
        raise DegenerateInputError("cannot split the zero symbol")
    roots = f._num_roots()
    if np.any(np.abs(np.abs(roots) - 1.0) <= CIRCLE_MARGIN):
        raise ValidationError("numerator root on the unit circle")
    inside = roots[np.abs(roots) < 1.0]
    outside = roots[np.abs(roots) > 1.0]
    lead = f.num[-1]
    num = lead * (npp.polyfromroots(outside) if len(outside) else np.array([1.0]))
    for r in inside:
        num = npp.polymul(num, [1.0, -np.conj(r)])
    inner = BlaschkeProduct(_cluster_roots(inside), 1.0) if len(inside) else UNIT
    return inner, RationalSymbol(tuple(num), f.den)


def denominator_inner_part(f: RationalSymbol) -> BlaschkeProduct:
    """Inner factor of the denominator of f in lowest terms."""
    red = f.reduced()
    if len(red.den) == 1:
        return UNIT
    inner, _ = inner_outer_split(RationalSymbol(red.den, (1.0,)))
    return inner


def local_smirnov_check(phi: RationalSymbol, u: BlaschkeProduct) -> bool:
    """True when the denominator's inner factor shares no zero with u."""
    return gcid(u, denominator_inner_part(phi)).degree == 0


@dataclass(frozen=True)
class SmirnovPair:
    """Canonical pair (a, b): a outer with a(0) > 0 and |a|^2 + |b|^2 = 1."""

    a: np.ndarray
    b: np.ndarray

    @property
    def a0(self) -> float:
        return float(np.real(analytic_value_at_zero(self.a)))

    def check(self, tol: float = 1e-8) -> None:
        mod = np.abs(self.a) ** 2 + np.abs(self.b) ** 2
        if np.max(np.abs(mod - 1.0)) > tol:
            raise ValidationError("pair not on the unit sphere |a|^2+|b|^2=1")
        jensen = math.exp(float(np.mean(np.log(np.abs(self.a)))))
        if self.a0 <= 0.0 or abs(math.log(self.a0) - math.log(jensen)) > 1e-7:
            raise ValidationError("a fails the Jensen outer-ness equality")


def canonical_pair(phi: RationalSymbol, grid: BoundaryGrid) -> SmirnovPair:
    """Canonical Smirnov pair of a pole-free rational symbol.

    a = outer function with |a| = (1 + |phi|^2)^{-1/2}; b = phi * a.
    """
    red = phi.reduced()
    if np.any(np.abs(red._den_roots()) <= 1.0 + CIRCLE_MARGIN):
        raise ValidationError("canonical pair needs a symbol without poles in the closed disk")
    vals = red(grid.points)
    a = outer_from_modulus(1.0 / np.sqrt(1.0 + np.abs(vals) ** 2))
    pair = SmirnovPair(a, vals * a)
    pair.check()
    return pair

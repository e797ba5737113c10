"""Shifted Poisson and shifted Fejer densities on the unit circle.

Densities are taken with respect to normalized Haar measure dphi/2pi, and
``z = e^{i phi}``.  For the Poisson kind the moments of order k >= d equal
e^{-tk}; for the Fejer kind the moments of order 0 <= k <= d equal k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import DomainError
from .numerics import circle_quadrature

DEFAULT_QUAD_POINTS = 2**14


@dataclass(frozen=True)
class CircleDensity:
    kind: Literal["poisson", "fejer"]
    d: int
    t: float | None = None

    def __post_init__(self):
        if self.kind not in ("poisson", "fejer"):
            raise DomainError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "poisson":
            if self.d < 0:
                raise DomainError(f"shift d must be >= 0, got {self.d}")
            if self.t is None or not self.t > 0:
                raise DomainError(f"shifted Poisson kernel needs t > 0, got {self.t}")
        elif self.d < 1:
            raise DomainError(f"shifted Fejer kernel needs d >= 1, got {self.d}")

    def __call__(self, phi) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        twist = np.exp(-1j * self.d * phi)
        if self.kind == "poisson":
            r = math.exp(-self.t)
            # closed-form sum of r^|n| e^{in phi}
            poisson = (1.0 - r * r) / (1.0 - 2.0 * r * np.cos(phi) + r * r)
            return math.exp(-self.t * self.d) * twist * poisson
        i = np.arange(-(self.d - 1), self.d)
        block = (self.d - np.abs(i)) * np.exp(1j * np.multiply.outer(phi, i))
        return twist * block.sum(axis=-1)


def shifted_poisson(d: int, t: float) -> CircleDensity:
    return CircleDensity("poisson", d, t)


def shifted_fejer(d: int) -> CircleDensity:
    return CircleDensity("fejer", d)


def _check_points(density: CircleDensity, k: int, quad_points: int) -> None:
    need = 4 * (density.d + abs(k) + 1)
    if quad_points < need:
        raise DomainError(f"{quad_points} quadrature points is below the required {need}")


def moment(density: CircleDensity, k: int, quad_points: int = DEFAULT_QUAD_POINTS) -> complex:
    """Trapezoidal approximation of the integral of z^k against the density."""
    _check_points(density, k, quad_points)
    return circle_quadrature(lambda phi: np.exp(1j * k * phi) * density(phi), quad_points)


def moments(density: CircleDensity, ks: Iterable[int], quad_points: int = DEFAULT_QUAD_POINTS) -> dict[int, complex]:
    """Several moments from one evaluation of the density."""
    ks = sorted(set(int(k) for k in ks))
    if not ks:
        return {}
    _check_points(density, max(ks, key=abs), quad_points)
    phi = 2.0 * np.pi * np.arange(quad_points) / quad_points
    f = density(phi)
    return {k: complex(np.mean(f * np.exp(1j * k * phi))) for k in ks}


def total_variation(density: CircleDensity, quad_points: int = DEFAULT_QUAD_POINTS) -> float:
    _check_points(density, 0, quad_points)
    return circle_quadrature(lambda phi: np.abs(density(phi)), quad_points).real


def expected_mass(density: CircleDensity) -> float:
    """The total-variation bound the kernel is built to attain."""
    if density.kind == "poisson":
        return math.exp(-density.t * density.d)
    return float(density.d)

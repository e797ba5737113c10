"""Seeded random polynomials for the three algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from ..errors import ConfigError
from ..group_algebra import GroupPolynomial
from ..qfock import HoloPolynomial, monomial_from_word
from ..torus import TorusPolynomial
from .algebras import theta_from_params

MAX_ATTEMPTS = 50


@dataclass(frozen=True)
class PolySpec:
    algebra: str
    params: Mapping[str, Any] = field(default_factory=dict)
    min_degree: int = 0
    max_degree: int = 3
    support_size: int = 4
    holomorphic: bool = True


def _free_word(rng: np.random.Generator, n: int, length: int, holomorphic: bool) -> tuple[int, ...]:
    if holomorphic:
        return tuple(int(a) for a in rng.integers(1, n + 1, size=length))
    letters: list[int] = []
    alphabet = [j for j in range(1, n + 1)] + [-j for j in range(1, n + 1)]
    for _ in range(length):
        choices = [a for a in alphabet if not letters or a != -letters[-1]]
        letters.append(choices[rng.integers(len(choices))])
    return tuple(letters)


def _composition(rng: np.random.Generator, total: int, parts: int) -> list[int]:
    cuts = np.sort(rng.integers(0, total + 1, size=parts - 1))
    edges = np.concatenate([[0], cuts, [total]])
    return [int(x) for x in np.diff(edges)]


def _torus_exponent(rng: np.random.Generator, n: int, length: int, holomorphic: bool) -> tuple[int, ...]:
    alpha = _composition(rng, length, n)
    if not holomorphic:
        signs = rng.choice([-1, 1], size=n)
        alpha = [int(a * s) for a, s in zip(alpha, signs)]
    return tuple(alpha)


def random_polynomial(seed: int | Sequence[int], spec: PolySpec):
    """Random element with support_size distinct basis elements of degree in [min_degree, max_degree].

    Coefficients have real and imaginary parts uniform on [-1, 1].  Fewer
    terms are returned when the degree window holds fewer basis elements.
    """
    if spec.min_degree > spec.max_degree or spec.min_degree < 0 or spec.support_size < 1:
        raise ConfigError(f"empty support for {spec}")
    rng = np.random.default_rng(seed)
    p = spec.params

    if spec.algebra == "free":
        n = int(p.get("n", 2))

        def draw(length):
            return _free_word(rng, n, length, spec.holomorphic)

    elif spec.algebra == "qgauss":
        if not spec.holomorphic:
            raise ConfigError("q-Gaussian polynomials are holomorphic only")
        dim_h = int(p.get("dimH", 2))

        def draw(length):
            return monomial_from_word(int(a) for a in rng.integers(1, dim_h + 1, size=length))

    elif spec.algebra == "qtorus":
        n = int(p.get("n", 2))

        def draw(length):
            return _torus_exponent(rng, n, length, spec.holomorphic)

    else:
        raise ConfigError(f"unknown algebra {spec.algebra!r}")

    support: list = []
    seen = set()
    for _ in range(MAX_ATTEMPTS * spec.support_size):
        if len(support) == spec.support_size:
            break
        key = draw(int(rng.integers(spec.min_degree, spec.max_degree + 1)))
        if key not in seen:
            seen.add(key)
            support.append(key)
    if not support:
        raise ConfigError(f"empty support for {spec}")
    vals = rng.uniform(-1.0, 1.0, size=(len(support), 2))
    coeffs = {key: complex(re, im) for key, (re, im) in zip(support, vals)}

    if spec.algebra == "free":
        return GroupPolynomial(int(p.get("n", 2)), coeffs)
    if spec.algebra == "qgauss":
        return HoloPolynomial(coeffs)
    return TorusPolynomial(int(p.get("n", 2)), theta_from_params(p), coeffs)

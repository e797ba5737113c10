"""Polynomials on the quantum torus, viewed as a twisted group algebra over Z^n.

The monomial U^alpha is the ordered product U_1^{alpha_1} ... U_n^{alpha_n}
and the generators obey U_j U_k = e^{2 pi i theta_jk} U_k U_j.  Moving
every U_k^{beta_k} of the right factor leftwards past U_j^{alpha_j} (j > k)
gives the product cocycle, and the adjoint phase follows from
(U^alpha)^* U^alpha = 1.

For n = 2 and theta_12 = a/b the clock and shift matrices give a b x b model
used to cross-check traces and Schatten norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Mapping

import numpy as np

from .circle_kernels import CircleDensity, moments as density_moments
from .errors import DomainError, RankMismatchError, UnsupportedExponentError
from .group_algebra import check_unimodular, real_moment
from .numerics import singular_values

SKEW_TOL = 1e-14
DROP_TOL = 1e-15

Exponent = tuple[int, ...]


def check_theta(theta, n: int | None = None) -> np.ndarray:
    theta = np.array(theta, dtype=float)
    if theta.ndim == 0 and n == 1:
        theta = theta.reshape(1, 1)
    if theta.ndim != 2 or theta.shape[0] != theta.shape[1]:
        raise DomainError(f"theta must be a square matrix, got shape {theta.shape}")
    if n is not None and theta.shape[0] != n:
        raise RankMismatchError(f"theta is {theta.shape[0]}x{theta.shape[0]} but n = {n}")
    if np.max(np.abs(theta + theta.T), initial=0.0) > SKEW_TOL:
        raise DomainError("theta must be skew-symmetric")
    return theta


def theta_2(theta12: float) -> np.ndarray:
    return np.array([[0.0, theta12], [-theta12, 0.0]])


def _cocycle(alpha: Exponent, beta: Exponent, theta: np.ndarray) -> float:
    """sum over j > k of alpha_j beta_k theta_jk."""
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    return float(np.sum(np.tril(np.outer(a, b) * theta, k=-1)))


def mono_product(alpha: Exponent, beta: Exponent, theta) -> tuple[complex, Exponent]:
    """U^alpha U^beta = phase * U^(alpha + beta)."""
    if len(alpha) != len(beta):
        raise RankMismatchError(f"exponent lengths {len(alpha)} and {len(beta)} differ")
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (len(alpha), len(alpha)):
        raise RankMismatchError(f"theta shape {theta.shape} does not match n = {len(alpha)}")
    phase = np.exp(2j * np.pi * _cocycle(alpha, beta, theta))
    return complex(phase), tuple(int(x) + int(y) for x, y in zip(alpha, beta))


def adjoint_phase(alpha: Exponent, theta) -> complex:
    """(U^alpha)^* = phase * U^(-alpha)."""
    return complex(np.exp(2j * np.pi * _cocycle(alpha, alpha, np.asarray(theta, dtype=float))))


def abs_degree(alpha: Exponent) -> int:
    return sum(abs(a) for a in alpha)


class TorusPolynomial:
    """Finitely supported sum of x_alpha U^alpha."""

    __slots__ = ("n", "theta", "coeffs")

    def __init__(self, n: int, theta, coeffs: Mapping[Iterable[int], complex] | None = None):
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        self.n = n
        self.theta = check_theta(theta, n)
        out: dict[Exponent, complex] = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n:
                raise RankMismatchError(f"exponent {alpha} has length {len(alpha)}, expected {n}")
            out[alpha] = out.get(alpha, 0.0) + complex(c)
        self.coeffs = {a: c for a, c in out.items() if abs(c) > DROP_TOL}

    @classmethod
    def monomial(cls, alpha: Iterable[int], theta, coeff: complex = 1.0) -> "TorusPolynomial":
        alpha = tuple(alpha)
        return cls(len(alpha), theta, {alpha: coeff})

    @classmethod
    def from_literal(cls, n: int, theta, literal: Iterable[Mapping]) -> "TorusPolynomial":
        """``[{"alpha": [1, 0], "re": .., "im": ..}, ...]``."""
        out: dict[Exponent, complex] = {}
        for item in literal:
            alpha = tuple(int(a) for a in item["alpha"])
            out[alpha] = out.get(alpha, 0.0) + complex(item.get("re", 0.0), item.get("im", 0.0))
        return cls(n, theta, out)

    def to_literal(self) -> list[dict]:
        return [{"alpha": list(a), "re": c.real, "im": c.imag} for a, c in self.coeffs.items()]

    def __repr__(self) -> str:
        terms = " + ".join(f"({c:.4g})U^{a}" for a, c in self.coeffs.items()) or "0"
        return f"TorusPolynomial(n={self.n}, {terms})"

    def _like(self, coeffs) -> "TorusPolynomial":
        return TorusPolynomial(self.n, self.theta, coeffs)

    def _check_same(self, other: "TorusPolynomial") -> None:
        if self.n != other.n or not np.array_equal(self.theta, other.theta):
            raise RankMismatchError("torus polynomials live on different algebras")

    def __getitem__(self, alpha) -> complex:
        return self.coeffs.get(tuple(alpha), 0.0)

    def support(self) -> list[Exponent]:
        return sorted(self.coeffs)

    def degree(self) -> int:
        return max((abs_degree(a) for a in self.coeffs), default=0)

    def low_degree(self) -> int:
        return min((abs_degree(a) for a in self.coeffs), default=0)

    def is_holomorphic(self) -> bool:
        return all(min(a) >= 0 for a in self.coeffs)

    def l2_norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def distance(self, other: "TorusPolynomial") -> float:
        return (self - other).l2_norm()

    def __add__(self, other: "TorusPolynomial") -> "TorusPolynomial":
        self._check_same(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0.0) + c
        return self._like(out)

    def __sub__(self, other: "TorusPolynomial") -> "TorusPolynomial":
        return self + (-1.0) * other

    def __neg__(self) -> "TorusPolynomial":
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, Number):
            return self._like({a: c * other for a, c in self.coeffs.items()})
        return convolve_theta(self, other)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def adjoint(self) -> "TorusPolynomial":
        return adjoint_theta(self)

    def trace(self) -> complex:
        return trace_theta(self)


def _arrays(x: TorusPolynomial) -> tuple[np.ndarray, np.ndarray]:
    keys = np.array(list(x.coeffs), dtype=np.int64).reshape(len(x.coeffs), x.n)
    vals = np.array(list(x.coeffs.values()), dtype=complex)
    return keys, vals


def convolve_theta(x: TorusPolynomial, y: TorusPolynomial) -> TorusPolynomial:
    x._check_same(y)
    if not x.coeffs or not y.coeffs:
        return x._like({})
    A, a = _arrays(x)
    B, b = _arrays(y)
    # cocycle of every pair at once: sum_{j>k} alpha_j beta_k theta_jk = alpha L beta^T
    phase = np.exp(2j * np.pi * (A @ np.tril(x.theta, -1) @ B.T))
    vals = (a[:, None] * b[None, :] * phase).ravel()
    G = (A[:, None, :] + B[None, :, :]).reshape(-1, x.n)
    keys, inv = np.unique(G, axis=0, return_inverse=True)
    acc = np.zeros(len(keys), dtype=complex)
    np.add.at(acc, inv.ravel(), vals)
    return x._like({tuple(int(v) for v in k): c for k, c in zip(keys, acc)})


def adjoint_theta(x: TorusPolynomial) -> TorusPolynomial:
    return x._like(
        {tuple(-v for v in a): np.conj(c) * adjoint_phase(a, x.theta) for a, c in x.coeffs.items()}
    )


def trace_theta(x: TorusPolynomial) -> complex:
    return x.coeffs.get((0,) * x.n, 0.0)


def moment_theta(x: TorusPolynomial, k: int) -> complex:
    """tau((x^* x)^k)."""
    y = adjoint_theta(x) * x
    lo, hi = k // 2, k - k // 2
    a = _power(y, lo)
    b = a if hi == lo else a * y
    return trace_theta(a * b)


def _power(y: TorusPolynomial, k: int) -> TorusPolynomial:
    out = y._like({(0,) * y.n: 1.0})
    for _ in range(k):
        out = out * y
    return out


def norm_even_theta(x: TorusPolynomial, p: int) -> float:
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p < 2 or p % 2:
        raise UnsupportedExponentError(f"only even integer exponents are supported, got {p!r}")
    if not x.coeffs:
        return 0.0
    return real_moment(moment_theta(x, int(p) // 2), "torus moment") ** (1.0 / p)


def _scale(x: TorusPolynomial, f) -> TorusPolynomial:
    return x._like({a: c * f(a) for a, c in x.coeffs.items()})


def heat_theta(x: TorusPolynomial, t: float) -> TorusPolynomial:
    return _scale(x, lambda a: math.exp(-t * abs_degree(a)))


def generator_theta(x: TorusPolynomial) -> TorusPolynomial:
    return _scale(x, lambda a: float(abs_degree(a)))


def inverse_heat_theta(x: TorusPolynomial, t: float) -> TorusPolynomial:
    return _scale(x, lambda a: math.exp(t * abs_degree(a)))


def project_tail_theta(x: TorusPolynomial, d: int) -> TorusPolynomial:
    return x._like({a: c for a, c in x.coeffs.items() if abs_degree(a) >= d})


def rotate_theta(x: TorusPolynomial, z: complex) -> TorusPolynomial:
    z = check_unimodular(z)
    return _scale(x, lambda a: z ** sum(a))


def rotation_average_theta(x: TorusPolynomial, density: CircleDensity, quad_points: int) -> TorusPolynomial:
    weights = density_moments(density, {sum(a) for a in x.coeffs}, quad_points)
    return _scale(x, lambda a: weights[sum(a)])


# -- clock and shift model ----------------------------------------------------------


def clock_shift(a: int, b: int) -> tuple[np.ndarray, np.ndarray]:
    """Clock C = diag(w^k), shift S e_k = e_{k+1}, w = e^{2 pi i a/b}; then C S = w S C."""
    if b < 2 or a % b == 0:
        raise DomainError(f"clock-shift model needs b >= 2 and a not divisible by b, got a={a}, b={b}")
    if math.gcd(a, b) != 1:
        raise DomainError(f"a={a} and b={b} must be coprime")
    w = np.exp(2j * np.pi * a / b)
    C = np.diag(w ** np.arange(b))
    S = np.roll(np.eye(b, dtype=complex), 1, axis=0)
    return C, S


def _check_weyl(x: TorusPolynomial, a: int, b: int) -> None:
    if x.n != 2:
        raise DomainError(f"the clock-shift model is for n = 2, got n = {x.n}")
    if abs(x.theta[0, 1] - a / b) > 1e-12:
        raise DomainError(f"theta_12 = {x.theta[0, 1]} does not equal a/b = {a}/{b}")
    for alpha in x.coeffs:
        if max(abs(v) for v in alpha) >= b:
            raise DomainError(f"exponent {alpha} is outside the window |alpha_j| < {b}")


def weyl_model(a: int, b: int, x: TorusPolynomial, twist: tuple[complex, complex] = (1.0, 1.0)) -> np.ndarray:
    """Image of x under U_1 -> z_1 C, U_2 -> z_2 S."""
    C, S = clock_shift(a, b)
    _check_weyl(x, a, b)
    z1, z2 = twist
    M = np.zeros((b, b), dtype=complex)
    for (p, q), c in x.coeffs.items():
        M += c * (z1**p * z2**q) * np.linalg.matrix_power(C, p) @ np.linalg.matrix_power(S, q)
    return M


def weyl_trace(M: np.ndarray) -> complex:
    return complex(np.trace(M) / M.shape[0])


def schatten_norm(M: np.ndarray, p: float) -> float:
    """(Tr/b |M|^p)^{1/p}, or the largest singular value for p = inf."""
    s = singular_values(M)
    if math.isinf(p):
        return float(s[0]) if len(s) else 0.0
    return float(np.mean(s**p) ** (1.0 / p))


def moment_window_ok(x: TorusPolynomial, p: int, b: int) -> bool:
    """Whether the b-dimensional model reproduces tau((x^*x)^{p/2}).

    Monomials of (x^*x)^{p/2} have coordinates bounded by (p/2) times the
    spread of the support; the normalized trace sees them correctly only
    when that stays below b.
    """
    if not x.coeffs:
        return True
    m = p // 2
    for j in range(x.n):
        vals = [a[j] for a in x.coeffs]
        if m * (max(vals) - min(vals)) >= b:
            return False
    return True


def weyl_norm(x: TorusPolynomial, a: int, b: int, p: int, check_window: bool = True) -> float:
    if check_window and not moment_window_ok(x, p, b):
        raise DomainError(f"support of x is too spread for an exact p={p} norm in dimension b={b}")
    return schatten_norm(weyl_model(a, b, x), p)


def weyl_sup_norm(x: TorusPolynomial, a: int, b: int, grid: int = 16) -> float:
    """Estimate of ||x||_inf: the sup over twisted representations on a grid.

    Every irreducible representation for theta_12 = a/b is a twisted
    clock-shift pair, and twisting by w in either slot is a unitary
    equivalence, so the twists range over an arc of length 2 pi / b.
    A finite grid makes this a lower bound.
    """
    best = 0.0
    arc = 2.0 * np.pi / b
    for u in range(grid):
        for v in range(grid):
            twist = (np.exp(1j * arc * u / grid), np.exp(1j * arc * v / grid))
            best = max(best, schatten_norm(weyl_model(a, b, x, twist), math.inf))
    return best

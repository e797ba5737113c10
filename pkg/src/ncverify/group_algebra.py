"""Finitely supported elements sum_g x_g lambda_g of the free group algebra.

Coefficients are kept in a dict keyed by reduced letter tuples.  All
operations return new polynomials; nothing mutates in place.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from numbers import Number
from typing import Callable, Iterable

import numpy as np
import scipy.sparse as sp

from . import words as W
from .circle_kernels import CircleDensity, moments as density_moments
from .errors import (
    CapExceededError,
    ConsistencyError,
    DomainError,
    NotUnimodularError,
    RankMismatchError,
    UndefinedMultiplierError,
    UnsupportedExponentError,
)
from .numerics import hermitian_eigs, power_norm

DROP_TOL = 1e-15
UNIMODULAR_TOL = 1e-12
IMAG_TOL = 1e-10


def _clean(coeffs: Mapping[W.Letters, complex]) -> dict[W.Letters, complex]:
    return {g: complex(c) for g, c in coeffs.items() if abs(c) > DROP_TOL}


class GroupPolynomial:
    """An element of the group algebra C[F_n] inside the free group factor."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank: int, coeffs: Mapping[W.Letters, complex] | None = None):
        if rank < 1:
            raise DomainError(f"rank must be >= 1, got {rank}")
        self.rank = rank
        self.coeffs = _clean(coeffs or {})

    # -- construction -------------------------------------------------------

    @classmethod
    def delta(cls, word: W.Word | W.Letters | str, rank: int | None = None, coeff: complex = 1.0):
        if isinstance(word, str):
            word = W.parse_word(word, rank)
        if isinstance(word, W.Word):
            rank = word.rank if rank is None else rank
            letters = word.letters
        else:
            letters = W.reduce_letters(word)
        if rank is None:
            raise DomainError("rank is required for bare letter tuples")
        W.reduce(letters, rank)
        return cls(rank, {letters: coeff})

    @classmethod
    def one(cls, rank: int):
        return cls(rank, {(): 1.0})

    @classmethod
    def from_terms(cls, rank: int, terms: Mapping[str | W.Letters, complex]):
        out: dict[W.Letters, complex] = {}
        for key, c in terms.items():
            letters = W.parse_letters(key) if isinstance(key, str) else W.reduce_letters(key)
            W.reduce(letters, rank)
            out[letters] = out.get(letters, 0.0) + c
        return cls(rank, out)

    @classmethod
    def from_literal(cls, rank: int, literal: Iterable[Mapping]):
        """Build from ``[{"word": "g1*g2^-1", "re": .., "im": ..}, ...]``."""
        terms: dict[W.Letters, complex] = {}
        for item in literal:
            letters = W.parse_letters(str(item["word"]))
            W.reduce(letters, rank)
            terms[letters] = terms.get(letters, 0.0) + complex(item.get("re", 0.0), item.get("im", 0.0))
        return cls(rank, terms)

    def to_literal(self) -> list[dict]:
        return [
            {"word": W.format_letters(g), "re": c.real, "im": c.imag}
            for g, c in sorted(self.coeffs.items(), key=lambda kv: W.word_sort_key(kv[0]))
        ]

    # -- inspection ---------------------------------------------------------

    def __repr__(self) -> str:
        terms = " + ".join(f"({c:.4g}){W.format_letters(g)}" for g, c in self.coeffs.items())
        return f"GroupPolynomial(rank={self.rank}, {terms or '0'})"

    def __getitem__(self, word) -> complex:
        if isinstance(word, str):
            word = W.parse_letters(word)
        elif isinstance(word, W.Word):
            word = word.letters
        return self.coeffs.get(tuple(word), 0.0)

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def support(self) -> list[W.Letters]:
        return list(self.coeffs)

    def degree(self) -> int:
        return max((len(g) for g in self.coeffs), default=0)

    def low_degree(self) -> int:
        """Smallest word length in the support (0 for the zero element)."""
        return min((len(g) for g in self.coeffs), default=0)

    def is_holomorphic(self) -> bool:
        return all(W.is_positive(g) for g in self.coeffs)

    def l2_norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def distance(self, other: "GroupPolynomial") -> float:
        return (self - other).l2_norm()

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "GroupPolynomial") -> None:
        if not isinstance(other, GroupPolynomial):
            raise TypeError(f"expected GroupPolynomial, got {type(other).__name__}")
        if other.rank != self.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "GroupPolynomial") -> "GroupPolynomial":
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0.0) + c
        return GroupPolynomial(self.rank, out)

    def __neg__(self) -> "GroupPolynomial":
        return GroupPolynomial(self.rank, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: "GroupPolynomial") -> "GroupPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Number):
            return GroupPolynomial(self.rank, {g: c * other for g, c in self.coeffs.items()})
        return convolve(self, other)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "GroupPolynomial":
        if k < 0:
            raise DomainError("negative powers are not supported")
        out = GroupPolynomial.one(self.rank)
        for _ in range(k):
            out = out * self
        return out

    def adjoint(self) -> "GroupPolynomial":
        return adjoint(self)

    def trace(self) -> complex:
        return trace(self)


def convolve(x: GroupPolynomial, y: GroupPolynomial) -> GroupPolynomial:
    """(xy)_h = sum over g g' = h of x_g y_g'."""
    x._check(y)
    acc: dict[W.Letters, complex] = {}
    mul = W.mul_letters
    for g, a in x.coeffs.items():
        for h, b in y.coeffs.items():
            k = mul(g, h)
            acc[k] = acc.get(k, 0.0) + a * b
    return GroupPolynomial(x.rank, acc)


def adjoint(x: GroupPolynomial) -> GroupPolynomial:
    return GroupPolynomial(x.rank, {W.inv_letters(g): c.conjugate() for g, c in x.coeffs.items()})


def trace(x: GroupPolynomial) -> complex:
    return x.coeffs.get((), 0.0 + 0.0j)


def trace_of_product(x: GroupPolynomial, y: GroupPolynomial) -> complex:
    """tau(xy) = sum_g x_g y_{g^-1}, without forming the product."""
    x._check(y)
    if len(x) > len(y):
        x, y = y, x
    return sum((c * y.coeffs.get(W.inv_letters(g), 0.0) for g, c in x.coeffs.items()), 0.0j)


def moment(x: GroupPolynomial, k: int) -> complex:
    """tau((x* x)^k)."""
    if k < 0:
        raise DomainError(f"moment order must be >= 0, got {k}")
    if k == 0:
        return 1.0 + 0.0j
    y = adjoint(x) * x
    lo, hi = k // 2, k - k // 2
    a = y ** hi
    b = a if lo == hi else y ** lo
    return trace_of_product(a, b)


def _check_even(p) -> int:
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p < 2 or p % 2:
        raise UnsupportedExponentError(f"only even integer exponents p >= 2 are supported, got {p!r}")
    return int(p)


def real_moment(value: complex, what: str = "moment") -> float:
    """Strip a numerically-zero imaginary part, refusing anything larger."""
    if abs(value.imag) > IMAG_TOL * max(1.0, abs(value.real)):
        raise ConsistencyError(f"{what} has imaginary part {value.imag:.3e} (real part {value.real:.3e})")
    if value.real < -IMAG_TOL * max(1.0, abs(value)):
        raise ConsistencyError(f"{what} is negative: {value.real:.3e}")
    return max(value.real, 0.0)


def norm_even(x: GroupPolynomial, p: int) -> float:
    """Noncommutative L_p norm tau((x* x)^{p/2})^{1/p} for even p."""
    p = _check_even(p)
    return real_moment(moment(x, p // 2), f"tau((x*x)^{p // 2})") ** (1.0 / p)


# -- radial multipliers -------------------------------------------------------


class RadialFunction:
    """A symbol k -> m_k; built from a callable, a mapping or a sequence."""

    def __init__(self, values: Callable[[int], complex] | Mapping[int, complex] | Sequence[complex], name: str = "m"):
        self._values = values
        self.name = name

    def __call__(self, k: int) -> complex:
        v = self._values
        try:
            if callable(v):
                return v(k)
            if isinstance(v, Mapping):
                return v[k]
            if k < 0:
                raise IndexError(k)
            return v[k]
        except (KeyError, IndexError):
            raise UndefinedMultiplierError(f"{self.name}_{k} is undefined") from None


def _as_radial(m) -> RadialFunction:
    return m if isinstance(m, RadialFunction) else RadialFunction(m)


def apply_radial(x: GroupPolynomial, m) -> GroupPolynomial:
    """T_m: lambda_g -> m_{|g|} lambda_g."""
    m = _as_radial(m)
    cache: dict[int, complex] = {}
    out = {}
    for g, c in x.coeffs.items():
        k = len(g)
        if k not in cache:
            cache[k] = m(k)
        out[g] = cache[k] * c
    return GroupPolynomial(x.rank, out)


def heat(x: GroupPolynomial, t: float) -> GroupPolynomial:
    return apply_radial(x, RadialFunction(lambda k: math.exp(-t * k), "heat"))


def generator(x: GroupPolynomial) -> GroupPolynomial:
    return apply_radial(x, RadialFunction(float, "length"))


def project_tail(x: GroupPolynomial, d: int) -> GroupPolynomial:
    return apply_radial(x, RadialFunction(lambda k: 1.0 if k >= d else 0.0))


def project_low(x: GroupPolynomial, d: int) -> GroupPolynomial:
    return apply_radial(x, RadialFunction(lambda k: 1.0 if k <= d else 0.0))


def inverse_heat(x: GroupPolynomial, t: float) -> GroupPolynomial:
    """P_{-t}; meaningful only because x is finitely supported."""
    return apply_radial(x, RadialFunction(lambda k: math.exp(t * k), "inverse heat"))


# -- rotations ----------------------------------------------------------------


def check_unimodular(z: complex) -> complex:
    z = complex(z)
    if abs(abs(z) - 1.0) > UNIMODULAR_TOL:
        raise NotUnimodularError(f"|z| = {abs(z)!r} is not 1")
    return z


def rotate(x: GroupPolynomial, z: complex) -> GroupPolynomial:
    """pi_z: lambda_g -> z^{(#positive - #negative letters of g)} lambda_g."""
    z = check_unimodular(z)
    return GroupPolynomial(x.rank, {g: c * z ** W.sign_sum(g) for g, c in x.coeffs.items()})


def rotation_average(x: GroupPolynomial, density: CircleDensity, quad_points: int) -> GroupPolynomial:
    """Quadrature of the integral of pi_z(x) against the density over the circle."""
    weights = density_moments(density, {W.sign_sum(g) for g in x.coeffs}, quad_points)
    return GroupPolynomial(x.rank, {g: c * weights[W.sign_sum(g)] for g, c in x.coeffs.items()})


# -- left regular representation ----------------------------------------------


def regular_matrix(x: GroupPolynomial, R: int, cap: int = W.BALL_CAP) -> sp.csr_matrix:
    """Matrix of lambda(x) with columns restricted to delta_h, |h| <= R.

    Rows are indexed by the (finitely many) words reached, so the result is
    an exact compression of lambda(x) to the column space ell_2(ball R).
    """
    reach = R + x.degree()
    if W.ball_size(x.rank, reach) > cap:
        raise CapExceededError(f"ball(n={x.rank}, R={reach}) exceeds cap {cap}")
    cols = W.enumerate_ball_letters(x.rank, R, cap)
    row_index: dict[W.Letters, int] = {}
    ri, ci, vals = [], [], []
    for j, h in enumerate(cols):
        for g, c in x.coeffs.items():
            k = W.mul_letters(g, h)
            i = row_index.setdefault(k, len(row_index))
            ri.append(i)
            ci.append(j)
            vals.append(c)
    return sp.csr_matrix((np.array(vals, dtype=complex), (ri, ci)), shape=(max(len(row_index), 1), len(cols)))


def op_norm_estimate(x: GroupPolynomial, R: int, iters: int = 500, seed: int = 0) -> float:
    """Lower bound for the operator norm ||x||_inf on ell_2(F_n)."""
    if not x.coeffs:
        return 0.0
    return power_norm(regular_matrix(x, R), iters=iters, seed=seed)


def haagerup_gram(n: int, t: float, R: int, cap: int = W.BALL_CAP) -> tuple[np.ndarray, float]:
    """Gram matrix [e^{-t|g^-1 h|}] over the ball of radius R and its least eigenvalue."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    ball = W.enumerate_ball_letters(n, R, cap)
    size = len(ball)
    G = np.empty((size, size))
    for i, g in enumerate(ball):
        gi = W.inv_letters(g)
        for j in range(i, size):
            G[i, j] = G[j, i] = math.exp(-t * len(W.mul_letters(gi, ball[j])))
    return G, float(hermitian_eigs(G)[0])

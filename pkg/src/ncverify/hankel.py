"""Radial multipliers with trace-class Hankel symbol.

For d >= 1 and 0 < r < 1 the sequence m(d, r) agrees with r^k from k = d on
and is continued downwards so that m_k - m_{k+2} = r^{2d-k} (1 - r^2).  The
Hankel matrix H = [m_{i+j} - m_{i+j+2}] then splits into a top-left block A,
a top-right block B and the lower row block C, whose trace norms have
closed forms.  With r = e^{-t} the multiplier coincides with the heat
semigroup on the tail space P^{>=d}.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np
from scipy import integrate

from .errors import DomainError, NotHermitianError
from .numerics import hermitian_eigs, singular_values

DEFAULT_N = 200


@dataclass(frozen=True)
class SharpSequence:
    d: int
    r: float
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"d must be >= 1, got {self.d}")
        if not 0.0 < self.r < 1.0:
            raise DomainError(f"r must lie in (0, 1), got {self.r}")

    def values(self, kmax: int) -> np.ndarray:
        """m_0 .. m_kmax."""
        d, r = self.d, self.r
        top = max(kmax, d + 1)
        m = np.empty(top + 1)
        m[d:] = r ** np.arange(d, top + 1, dtype=float)
        for k in range(d - 1, -1, -1):
            m[k] = m[k + 2] + r ** (2 * d - k) * (1.0 - r * r)
        return m[: kmax + 1]

    def __call__(self, k: int) -> float:
        if k < 0:
            raise DomainError(f"m_k is defined for k >= 0, got {k}")
        if k >= self.d:
            return self.r**k
        if "low" not in self._cache:
            self._cache["low"] = self.values(self.d + 1)
        return float(self._cache["low"][k])

    __getitem__ = __call__


def sharp_sequence(d: int, r: float) -> SharpSequence:
    return SharpSequence(d, r)


def heat_sequence(d: int, t: float) -> SharpSequence:
    """m(d, e^{-t}): equal to the heat multiplier e^{-tk} for k >= d."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    return SharpSequence(d, math.exp(-t))


def hankel_matrix(seq: SharpSequence, N: int = DEFAULT_N) -> np.ndarray:
    if N < seq.d + 2:
        raise DomainError(f"truncation N={N} must be at least d + 2 = {seq.d + 2}")
    m = seq.values(2 * N)
    idx = np.add.outer(np.arange(N), np.arange(N))
    return m[idx] - m[idx + 2]


def trace_norm(M) -> float:
    """Sum of |eigenvalues| of a real symmetric matrix."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {M.shape}")
    if np.max(np.abs(M - M.T), initial=0.0) > 1e-12:
        raise NotHermitianError("matrix is not symmetric within 1e-12")
    return float(np.sum(np.abs(hermitian_eigs(M))))


@dataclass(frozen=True)
class ABCNorms:
    A: float
    B: float
    C: float
    B_closed: float
    C_closed: float
    tilde_trace: float
    tilde_trace_closed: float
    tilde_min_eig: float


@dataclass(frozen=True)
class ABCDecomposition:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    norms: ABCNorms

    def reassemble(self) -> np.ndarray:
        top = np.hstack([self.A, self.B])
        return np.vstack([top, self.C])

    @property
    def A_tilde(self) -> np.ndarray:
        # swapping columns j <-> d - j for j <= d/2 reverses the column order
        return self.A[:, ::-1]


def abc_decomposition(d: int, r: float, N: int = DEFAULT_N) -> ABCDecomposition:
    if N <= d + 1:
        raise DomainError(f"need N > d + 1, got N={N}, d={d}")
    H = hankel_matrix(SharpSequence(d, r), N)
    A = H[: d + 1, : d + 1].copy()
    B = H[: d + 1, d + 1 :].copy()
    C = H[d + 1 :, :].copy()
    At = A[:, ::-1]
    norms = ABCNorms(
        A=trace_norm(A),
        B=float(np.sum(singular_values(B))),
        C=float(np.sum(singular_values(C))),
        B_closed=r ** (d + 1) * math.sqrt(1.0 - r ** (2 * (d + 1))),
        C_closed=r ** (d + 1),
        tilde_trace=float(np.trace(At)),
        tilde_trace_closed=(d + 1) * (1.0 - r * r) * r**d,
        tilde_min_eig=float(hermitian_eigs(0.5 * (At + At.T))[0]),
    )
    return ABCDecomposition(A, B, C, norms)


def multiplier_bound(d: int, r: float) -> float:
    """Trace-norm bound (d+1)(1-r^2) r^d + 2 r^{d+1} for ||T_m||."""
    return (d + 1) * (1.0 - r * r) * r**d + 2.0 * r ** (d + 1)


def semigroup_bound(d: int, t: float) -> float:
    """The bound on ||P_t : P^{>=d} -> P^{>=d}|| obtained with r = e^{-t}."""
    return multiplier_bound(d, math.exp(-t))


def smoothing_constant(d: int) -> float:
    """Closed form of the integral of semigroup_bound(d, t) over t in (0, inf)."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    return (d + 1) * (1.0 / d - 1.0 / (d + 2)) + 2.0 / (d + 1)


def smoothing_constant_quadrature(d: int) -> float:
    value, _ = integrate.quad(lambda t: semigroup_bound(d, t), 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    return value


@dataclass(frozen=True)
class HankelRow:
    d: int
    r: float
    trace_norm: float
    bound: float
    slack: float
    psd_min_eig: float


HANKEL_CSV_COLUMNS = ("d", "r", "trace_norm", "bound", "slack", "psd_min_eig")


def hankel_sweep(ds: Iterable[int], rs: Iterable[float], N: int = DEFAULT_N) -> list[HankelRow]:
    rows = []
    rs = list(rs)
    for d in ds:
        for r in rs:
            tn = trace_norm(hankel_matrix(SharpSequence(d, r), N))
            At = abc_decomposition(d, r, N).A_tilde
            bound = multiplier_bound(d, r)
            rows.append(HankelRow(d, r, tn, bound, bound - tn, float(hermitian_eigs(0.5 * (At + At.T))[0])))
    return rows


def write_hankel_csv(rows: Iterable[HankelRow], fh: TextIO) -> None:
    writer = csv.writer(fh)
    writer.writerow(HANKEL_CSV_COLUMNS)
    for row in rows:
        writer.writerow([row.d, row.r, repr(row.trace_norm), repr(row.bound), repr(row.slack), repr(row.psd_min_eig)])

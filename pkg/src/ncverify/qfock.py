"""Truncated q-Fock space over H + H and the q-holomorphic algebra.

Letters ``1..h`` index the basis vectors (e_j, 0) of H + H and letters
``h+1..2h`` the vectors (0, e_j), where ``h = dim H``.  A basis word of
degree k is a k-tuple of letters; the coordinate basis is the (non
orthogonal) tensor basis, and every inner product goes through the q-Gram
matrix.  Operators are scipy sparse matrices in these coordinates, and each
:class:`FockOperator` carries its q-adjoint along so that products and sums
never need to invert the Gram matrix.

Truncation keeps degrees ``0..K``; creation out of degree K is set to zero.
Vacuum expectations of a product of M creation/annihilation letters only
see paths of height <= M/2, so they are exact whenever ``K >= M/2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from numbers import Number
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

from .circle_kernels import CircleDensity, moments as density_moments
from .errors import CapExceededError, DomainError, TruncationError, UnsupportedExponentError
from .group_algebra import check_unimodular, real_moment
from .numerics import hermitian_eigs

BASIS_CAP = 1_000_000
GRAM_PERM_CAP = 8
GRAM_ENTRY_CAP = 20_000_000


class FockBasis:
    """Tensor words of degree 0..K over ``dim = 2 * dim_h`` letters, length-lex ordered."""

    def __init__(self, dim_h: int, K: int):
        if dim_h < 1:
            raise DomainError(f"dim H must be >= 1, got {dim_h}")
        if K < 0:
            raise DomainError(f"cutoff K must be >= 0, got {K}")
        self.dim_h = dim_h
        self.dim = 2 * dim_h
        self.K = K
        counts = [self.dim**k for k in range(K + 1)]
        self.size = sum(counts)
        if self.size > BASIS_CAP:
            raise CapExceededError(f"Fock basis (dim={self.dim}, K={K}) has {self.size} words, cap {BASIS_CAP}")
        self.offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

    def __repr__(self) -> str:
        return f"FockBasis(dim_h={self.dim_h}, K={self.K})"

    def words(self, k: int) -> np.ndarray:
        """All degree-k words as an array of shape (dim^k, k), letters 1-based."""
        if k == 0:
            return np.zeros((1, 0), dtype=np.int64)
        digits = np.indices((self.dim,) * k).reshape(k, -1).T
        return digits + 1

    def rank(self, words: np.ndarray) -> np.ndarray:
        """Position of each degree-k word inside its degree block."""
        k = words.shape[1]
        weights = self.dim ** np.arange(k - 1, -1, -1, dtype=np.int64)
        return (words - 1) @ weights if k else np.zeros(words.shape[0], dtype=np.int64)

    def index(self, word: Iterable[int]) -> int:
        word = tuple(word)
        if len(word) > self.K or any(not 1 <= a <= self.dim for a in word):
            raise DomainError(f"word {word} is not in {self!r}")
        return int(self.offsets[len(word)] + self.rank(np.array([word], dtype=np.int64).reshape(1, len(word)))[0])

    def word_at(self, index: int) -> tuple[int, ...]:
        k = int(np.searchsorted(self.offsets, index, side="right") - 1)
        r = index - int(self.offsets[k])
        out = []
        for _ in range(k):
            r, digit = divmod(r, self.dim)
            out.append(digit + 1)
        return tuple(reversed(out))

    def degree_slice(self, k: int) -> slice:
        return slice(int(self.offsets[k]), int(self.offsets[k + 1]))

    def degrees(self) -> np.ndarray:
        return np.repeat(np.arange(self.K + 1), np.diff(self.offsets))

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.size, dtype=complex)
        v[0] = 1.0
        return v

    def vector(self, terms: Mapping[tuple[int, ...], complex]) -> np.ndarray:
        v = np.zeros(self.size, dtype=complex)
        for w, c in terms.items():
            v[self.index(w)] += c
        return v


def _inversions(perm: tuple[int, ...]) -> int:
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


class QGram:
    """Block-diagonal q-Gram matrix; degree blocks are built lazily and cached."""

    def __init__(self, basis: FockBasis, q: float):
        if not -1.0 < q < 1.0:
            raise DomainError(f"q must lie in (-1, 1), got {q}")
        if basis.K > GRAM_PERM_CAP:
            raise CapExceededError(f"Gram needs K <= {GRAM_PERM_CAP}, got {basis.K}")
        self.basis = basis
        self.q = q
        self._blocks: dict[int, sp.csr_matrix] = {}

    def block(self, k: int) -> sp.csr_matrix:
        """G_k[u, v] = sum over sigma in S_k of q^inv(sigma) prod_l [u_l = v_sigma(l)]."""
        if k not in self._blocks:
            b = self.basis
            n = b.dim**k
            if k == 0:
                self._blocks[0] = sp.csr_matrix(np.ones((1, 1)))
                return self._blocks[0]
            perms = list(itertools.permutations(range(k)))
            if n * len(perms) > GRAM_ENTRY_CAP:
                raise CapExceededError(f"Gram block of degree {k} needs {n * len(perms)} entries")
            U = b.words(k)
            rows = np.arange(n)
            G = sp.csr_matrix((n, n))
            for chunk in range(0, len(perms), 64):
                ps = perms[chunk : chunk + 64]
                inv = np.array([np.argsort(p) for p in ps])  # sigma^-1
                weights = np.array([self.q ** _inversions(p) for p in ps])
                # v[m] = u[sigma^-1(m)] so that u_l = v_sigma(l)
                V = U[:, inv]
                cols = b.rank(V.reshape(-1, k)).reshape(n, len(ps))
                G = G + sp.csr_matrix(
                    (np.broadcast_to(weights, (n, len(ps))).ravel(), (np.repeat(rows, len(ps)), cols.ravel())),
                    shape=(n, n),
                )
            self._blocks[k] = G.tocsr()
        return self._blocks[k]

    def matrix(self) -> sp.csr_matrix:
        return sp.block_diag([self.block(k) for k in range(self.basis.K + 1)], format="csr")

    def inner(self, u: np.ndarray, v: np.ndarray) -> complex:
        """<u, v>_q, conjugate-linear in the first argument."""
        return complex(np.vdot(u, self.matrix() @ v))

    def content_classes(self, k: int) -> list[np.ndarray]:
        """Indices (within block k) grouped by letter multiset; G_k is block diagonal over them."""
        U = self.basis.words(k)
        keys = np.sort(U, axis=1)
        _, labels = np.unique(keys, axis=0, return_inverse=True)
        labels = labels.ravel()
        return [np.flatnonzero(labels == c) for c in range(labels.max() + 1)]

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue over all degree blocks, one content class at a time."""
        best = np.inf
        done: set[tuple] = set()
        for k in range(self.basis.K + 1):
            G = self.block(k)
            U = self.basis.words(k)
            for idx in self.content_classes(k):
                # classes with the same multiplicity pattern give identical blocks
                pattern = (k, tuple(sorted(np.unique(U[idx[0]], return_counts=True)[1])))
                if pattern in done:
                    continue
                done.add(pattern)
                sub = G[idx][:, idx].toarray()
                best = min(best, float(hermitian_eigs(sub)[0]))
        return best


@dataclass(frozen=True)
class FockOperator:
    """Sparse coordinate matrix together with its q-adjoint."""

    mat: sp.csr_matrix
    adj: sp.csr_matrix
    space: "QFock"

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            return FockOperator((self.mat @ other.mat).tocsr(), (other.adj @ self.adj).tocsr(), self.space)
        return self.mat @ other

    def __add__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator((self.mat + other.mat).tocsr(), (self.adj + other.adj).tocsr(), self.space)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return self + (-1.0) * other

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return FockOperator((self.mat * c).tocsr(), (self.adj * np.conj(c)).tocsr(), self.space)

    __rmul__ = __mul__

    def dagger(self) -> "FockOperator":
        return FockOperator(self.adj, self.mat, self.space)

    def toarray(self) -> np.ndarray:
        return self.mat.toarray()

    def gram_adjoint(self) -> np.ndarray:
        """G^-1 A^H G, computed densely; only sensible for small bases."""
        G = self.space.gram.matrix().toarray()
        return np.linalg.solve(G, self.mat.conj().T.toarray() @ G)

    def vacuum_trace(self) -> complex:
        """tau_q(A) = <A Omega, Omega>_q, the vacuum coordinate of A Omega."""
        return complex((self.mat @ self.space.basis.vacuum())[0])


class QFock:
    """The truncated space F_q(H + H) with dim H = ``dim_h`` and cutoff ``K``."""

    def __init__(self, dim_h: int = 2, K: int = 6, q: float = 0.0):
        if not -1.0 < q < 1.0:
            raise DomainError(f"q must lie in (-1, 1), got {q}")
        self.basis = FockBasis(dim_h, K)
        self.q = float(q)
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"QFock(dim_h={self.dim_h}, K={self.K}, q={self.q})"

    @property
    def dim_h(self) -> int:
        return self.basis.dim_h

    @property
    def K(self) -> int:
        return self.basis.K

    @cached_property
    def gram(self) -> QGram:
        return QGram(self.basis, self.q)

    def _letter(self, i: int) -> int:
        if not 1 <= i <= self.basis.dim:
            raise DomainError(f"letter {i} outside 1..{self.basis.dim}")
        return i

    def _creation_matrix(self, i: int) -> sp.csr_matrix:
        b = self.basis
        rows, cols = [], []
        for k in range(b.K):
            n = b.dim**k
            cols.append(b.offsets[k] + np.arange(n))
            rows.append(b.offsets[k + 1] + (i - 1) * n + np.arange(n))
        rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
        cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
        return sp.csr_matrix((np.ones(len(rows), dtype=complex), (rows, cols)), shape=(b.size, b.size))

    def _annihilation_matrix(self, i: int) -> sp.csr_matrix:
        b = self.basis
        rows, cols, vals = [], [], []
        for k in range(1, b.K + 1):
            U = b.words(k)
            src = b.offsets[k] + np.arange(U.shape[0])
            for j in range(k):
                hit = U[:, j] == i
                if not hit.any():
                    continue
                rest = np.delete(U[hit], j, axis=1)
                rows.append(b.offsets[k - 1] + b.rank(rest))
                cols.append(src[hit])
                vals.append(np.full(hit.sum(), self.q**j, dtype=complex))
        if not rows:
            return sp.csr_matrix((b.size, b.size), dtype=complex)
        return sp.csr_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(b.size, b.size)
        )

    def creation(self, i: int) -> FockOperator:
        """c_q(e_i): prepend letter i (zero on the top degree)."""
        key = ("c", self._letter(i))
        if key not in self._cache:
            c, a = self._creation_matrix(i), self._annihilation_matrix(i)
            self._cache[key] = FockOperator(c, a, self)
        return self._cache[key]

    def annihilation(self, i: int) -> FockOperator:
        """c_q^*(e_i): remove a matching letter at position j with weight q^(j-1)."""
        return self.creation(i).dagger()

    def field(self, i: int) -> FockOperator:
        """X_q(e_i) = c_q(e_i) + c_q^*(e_i)."""
        key = ("x", self._letter(i))
        if key not in self._cache:
            c = self.creation(i)
            self._cache[key] = c + c.dagger()
        return self._cache[key]

    def z_field(self, j: int) -> FockOperator:
        """Z_q(e_j) = (X_q(e_j, 0) + i X_q(0, e_j)) / sqrt 2."""
        if not 1 <= j <= self.dim_h:
            raise DomainError(f"generator index {j} outside 1..{self.dim_h}")
        key = ("z", j)
        if key not in self._cache:
            s = 1.0 / math.sqrt(2.0)
            self._cache[key] = s * self.field(j) + (1j * s) * self.field(j + self.dim_h)
        return self._cache[key]

    def identity(self) -> FockOperator:
        eye = sp.identity(self.basis.size, dtype=complex, format="csr")
        return FockOperator(eye, eye, self)

    def zero(self) -> FockOperator:
        z = sp.csr_matrix((self.basis.size, self.basis.size), dtype=complex)
        return FockOperator(z, z, self)

    def _z_power(self, j: int, n: int) -> FockOperator:
        key = ("zpow", j, n)
        if key not in self._cache:
            self._cache[key] = self.z_field(j) if n == 1 else self._z_power(j, n - 1) @ self.z_field(j)
        return self._cache[key]

    def materialize(self, p: "HoloPolynomial") -> FockOperator:
        out = self.zero()
        for mono, c in p.coeffs.items():
            op = self.identity()
            for j, n in mono:
                op = op @ self._z_power(j, n)
            out = out + c * op
        return out

    def second_quantize_rotation(self, theta: float) -> FockOperator:
        """Gamma_q(U_theta) with U_theta = [[cos, sin], [-sin, cos]] (x) id_H, acting as U^{(x)k} on degree k."""
        c, s = math.cos(theta), math.sin(theta)
        U = sp.csr_matrix(np.kron(np.array([[c, s], [-s, c]]), np.eye(self.dim_h)))
        Ut = U.T.tocsr()
        blocks, blocks_t = [sp.identity(1, format="csr")], [sp.identity(1, format="csr")]
        cur, cur_t = sp.identity(1, format="csr"), sp.identity(1, format="csr")
        for _ in range(self.K):
            cur, cur_t = sp.kron(cur, U, format="csr"), sp.kron(cur_t, Ut, format="csr")
            blocks.append(cur)
            blocks_t.append(cur_t)
        G = sp.block_diag(blocks, format="csr").astype(complex)
        Gt = sp.block_diag(blocks_t, format="csr").astype(complex)
        # real orthogonal U: Gamma(U)^dagger = Gamma(U^T)
        return FockOperator(G, Gt, self)

    def apply(self, p: "HoloPolynomial", v: np.ndarray, dagger: bool = False) -> np.ndarray:
        """p v (or p^dagger v) by sparse matrix-vector products, never forming p."""
        out = np.zeros_like(v, dtype=complex)
        for mono, c in p.coeffs.items():
            w = v.astype(complex)
            if dagger:
                # (Z_1^n1 ... Z_k^nk)^dagger = Z_k^dagger^nk ... Z_1^dagger^n1, applied right to left
                for j, n in mono:
                    for _ in range(n):
                        w = self.z_field(j).adj @ w
                out += np.conj(c) * w
            else:
                for j, n in reversed(mono):
                    for _ in range(n):
                        w = self.z_field(j).mat @ w
                out += c * w
        return out

    def vacuum_moment(self, p: "HoloPolynomial", m: int) -> complex:
        """tau_q((p^dagger p)^m); exact when K >= m * deg(p)."""
        need = m * p.degree()
        if self.K < need:
            raise TruncationError(f"tau_q((p^+ p)^{m}) with deg {p.degree()} needs K >= {need}, have K = {self.K}")
        if p.max_index() > self.dim_h:
            raise DomainError(f"polynomial uses e_{p.max_index()} but dim H = {self.dim_h}")
        v = self.basis.vacuum()
        for _ in range(m):
            v = self.apply(p, self.apply(p, v), dagger=True)
        return complex(v[0])

    def norm_even(self, p: "HoloPolynomial", pexp: int) -> float:
        if isinstance(pexp, bool) or not isinstance(pexp, (int, np.integer)) or pexp < 2 or pexp % 2:
            raise UnsupportedExponentError(f"only even integer exponents are supported, got {pexp!r}")
        m = int(pexp) // 2
        return real_moment(self.vacuum_moment(p, m), "vacuum moment") ** (1.0 / pexp)


def exact_space(p: "HoloPolynomial", pexp: int, q: float) -> QFock:
    """Smallest truncated space on which the pexp-norm of p is computed exactly."""
    return QFock(max(p.max_index(), 1), max((pexp // 2) * p.degree(), 1), q)


def norm_even_q(p: "HoloPolynomial", pexp: int, q: float, space: QFock | None = None) -> float:
    if space is None:
        space = exact_space(p, pexp, q)
    elif abs(space.q - q) > 0:
        raise DomainError(f"space has q={space.q}, asked for q={q}")
    return space.norm_even(p, pexp)


def qcr_residual(space: QFock, i: int, j: int) -> float:
    """Largest entry of c*(e_i) c(e_j) - q c(e_j) c*(e_i) - delta_ij on degrees below K."""
    a = space.annihilation(i).mat
    c = space.creation(j).mat
    R = a @ c - space.q * (c @ a)
    if i == j:
        R = R - sp.identity(space.basis.size, dtype=complex, format="csr")
    R = R[:, : int(space.basis.offsets[space.K])]
    return float(abs(R).max()) if R.nnz else 0.0


# -- holomorphic polynomials ----------------------------------------------------

Monomial = tuple[tuple[int, int], ...]


def holo_monomial(indices: Iterable[int], powers: Iterable[int]) -> Monomial:
    """Normal form of Z(e_{j1})^{n1} ... Z(e_{jk})^{nk}: drop zero powers, merge equal neighbours."""
    out: list[list[int]] = []
    indices, powers = list(indices), list(powers)
    if len(indices) != len(powers):
        raise DomainError("indices and powers must have equal length")
    for j, n in zip(indices, powers):
        if j < 1 or n < 0:
            raise DomainError(f"bad factor Z(e_{j})^{n}")
        if n == 0:
            continue
        if out and out[-1][0] == j:
            out[-1][1] += n
        else:
            out.append([j, n])
    return tuple((j, n) for j, n in out)


def monomial_from_word(word: Iterable[int]) -> Monomial:
    word = list(word)
    return holo_monomial(word, [1] * len(word))


def monomial_degree(mono: Monomial) -> int:
    return sum(n for _, n in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return holo_monomial([j for j, _ in a + b], [n for _, n in a + b])


class HoloPolynomial:
    """Finite linear combination of holomorphic Z-monomials."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Monomial, complex] | None = None):
        out: dict[Monomial, complex] = {}
        for mono, c in (coeffs or {}).items():
            mono = holo_monomial([j for j, _ in mono], [n for _, n in mono])
            out[mono] = out.get(mono, 0.0) + complex(c)
        self.coeffs = {m: c for m, c in out.items() if abs(c) > 1e-15}

    @classmethod
    def monomial(cls, indices: Iterable[int], powers: Iterable[int], coeff: complex = 1.0) -> "HoloPolynomial":
        return cls({holo_monomial(indices, powers): coeff})

    @classmethod
    def constant(cls, c: complex = 1.0) -> "HoloPolynomial":
        return cls({(): c})

    @classmethod
    def from_literal(cls, literal: Iterable[Mapping]) -> "HoloPolynomial":
        """``[{"indices": [1, 2], "powers": [2, 1], "re": .., "im": ..}, ...]``."""
        out: dict[Monomial, complex] = {}
        for item in literal:
            mono = holo_monomial(item.get("indices", []), item.get("powers", []))
            out[mono] = out.get(mono, 0.0) + complex(item.get("re", 0.0), item.get("im", 0.0))
        return cls(out)

    def to_literal(self) -> list[dict]:
        return [
            {"indices": [j for j, _ in m], "powers": [n for _, n in m], "re": c.real, "im": c.imag}
            for m, c in self.coeffs.items()
        ]

    def __repr__(self) -> str:
        def fmt(m):
            return "*".join(f"Z{j}^{n}" if n > 1 else f"Z{j}" for j, n in m) or "1"

        return "HoloPolynomial(" + " + ".join(f"({c:.4g}){fmt(m)}" for m, c in self.coeffs.items()) + ")"

    def __len__(self) -> int:
        return len(self.coeffs)

    def degree(self) -> int:
        return max((monomial_degree(m) for m in self.coeffs), default=0)

    def low_degree(self) -> int:
        return min((monomial_degree(m) for m in self.coeffs), default=0)

    def max_index(self) -> int:
        return max((j for m in self.coeffs for j, _ in m), default=0)

    def l2_norm_sq(self) -> float:
        return sum(abs(c) ** 2 for c in self.coeffs.values())

    def __add__(self, other: "HoloPolynomial") -> "HoloPolynomial":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0.0) + c
        return HoloPolynomial(out)

    def __sub__(self, other: "HoloPolynomial") -> "HoloPolynomial":
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, Number):
            return HoloPolynomial({m: c * other for m, c in self.coeffs.items()})
        out: dict[Monomial, complex] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                m = _mono_mul(a, b)
                out[m] = out.get(m, 0.0) + x * y
        return HoloPolynomial(out)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def scale_by_degree(self, f) -> "HoloPolynomial":
        return HoloPolynomial({m: c * f(monomial_degree(m)) for m, c in self.coeffs.items()})


def heat_q(p: HoloPolynomial, t: float) -> HoloPolynomial:
    return p.scale_by_degree(lambda k: math.exp(-t * k))


def generator_q(p: HoloPolynomial) -> HoloPolynomial:
    return p.scale_by_degree(float)


def inverse_heat_q(p: HoloPolynomial, t: float) -> HoloPolynomial:
    return p.scale_by_degree(lambda k: math.exp(t * k))


def rotate_q(p: HoloPolynomial, z: complex) -> HoloPolynomial:
    z = check_unimodular(z)
    return p.scale_by_degree(lambda k: z**k)


def rotation_average_q(p: HoloPolynomial, density: CircleDensity, quad_points: int) -> HoloPolynomial:
    weights = density_moments(density, {monomial_degree(m) for m in p.coeffs}, quad_points)
    return p.scale_by_degree(lambda k: weights[k])


# -- functional surface ----------------------------------------------------------


def gram(basis: FockBasis, q: float) -> QGram:
    return QGram(basis, q)


def creation(space: QFock, i: int) -> FockOperator:
    return space.creation(i)


def annihilation(space: QFock, i: int) -> FockOperator:
    return space.annihilation(i)


def z_field(space: QFock, j: int) -> FockOperator:
    return space.z_field(j)


def materialize(p: HoloPolynomial, space: QFock) -> FockOperator:
    return space.materialize(p)


def second_quantize_rotation(space: QFock, theta: float) -> FockOperator:
    return space.second_quantize_rotation(theta)

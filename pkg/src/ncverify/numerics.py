"""Dense linear-algebra kernels used by the algebra modules.

The eigensolvers are cyclic Jacobi methods with a round-robin (tournament)
pair ordering, so each round applies ``n // 2`` disjoint plane rotations at
once through numpy fancy indexing.  That keeps the rotation sequence fully
deterministic and makes 200x200 problems cheap enough for the Hankel sweeps.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import CapExceededError, DomainError, NonConvergenceError, NotHermitianError

MAX_DIM = 4096
PSD_TOL = 1e-10


def _check_dense(M, name: str = "matrix") -> np.ndarray:
    A = np.asarray(M)
    if A.ndim != 2:
        raise DomainError(f"{name} must be two-dimensional, got shape {A.shape}")
    if max(A.shape) > MAX_DIM:
        raise CapExceededError(f"{name} dimension {A.shape} exceeds cap {MAX_DIM}")
    if not np.all(np.isfinite(A)):
        raise DomainError(f"{name} has non-finite entries")
    if not np.iscomplexobj(A):
        A = A.astype(float)
    return A


def round_robin_schedule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tournament pairing of ``range(n)``: every pair occurs once per sweep.

    Returns arrays ``P, Q`` of shape ``(rounds, n_pairs)`` with ``P < Q``.
    Odd ``n`` is padded with a bye that is dropped from the output.
    """
    m = n + (n % 2)
    players = list(range(m))
    ps, qs = [], []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        ps.append([a for a, _ in pairs])
        qs.append([b for _, b in pairs])
        players = [players[0], players[-1]] + players[1:-1]
    width = min(len(r) for r in ps)
    # with a bye every round loses exactly one pair, so rows stay rectangular
    return np.array([r[:width] for r in ps], dtype=int), np.array([r[:width] for r in qs], dtype=int)


def _jacobi_rotations(app, aqq, apq, thresh):
    """Entries of the 2x2 unitaries that diagonalise ``[[app, apq], [conj(apq), aqq]]``."""
    b = np.abs(apq)
    active = b > thresh
    safe_b = np.where(active, b, 1.0)
    phase = np.where(active, apq / safe_b, 1.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        tau = (aqq - app) / (2.0 * safe_b)
        t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t = np.where(active & np.isfinite(t), t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    ph = np.conj(phase)
    return active, c, s, -s * ph, c * ph


def hermitian_eigs(M, vectors: bool = False, tol: float = 1e-13, max_sweeps: int = 100):
    """Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi.

    With ``vectors=True`` returns ``(w, V)`` where the columns of ``V`` are
    orthonormal eigenvectors, ``M @ V = V @ diag(w)``.
    """
    A = _check_dense(M)
    n, m = A.shape
    if n != m:
        raise NotHermitianError(f"matrix must be square, got {A.shape}")
    scale = np.max(np.abs(A)) if A.size else 0.0
    if scale and np.max(np.abs(A - A.conj().T)) > 1e-12 * scale:
        raise NotHermitianError("matrix is not Hermitian within 1e-12 relative")
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=A.dtype)
    fro = np.linalg.norm(A)
    if n > 1 and fro > 0:
        P, Q = round_robin_schedule(n)
        # rotations below this size move eigenvalues by far less than tol * fro
        thresh = 1e-18 * fro / n
        prev_off = np.inf
        for sweep in range(max_sweeps + 1):
            off = np.linalg.norm(A - np.diag(np.diag(A)))
            if off <= tol * fro:
                break
            # rounding floor: further sweeps cannot shrink off-diagonal mass
            if off <= 1e-11 * fro and off >= 0.5 * prev_off:
                break
            if sweep == max_sweeps:
                raise NonConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
            prev_off = off
            for p, q in zip(P, Q):
                active = np.abs(A[p, q]) > thresh
                if not active.any():
                    continue
                p, q = p[active], q[active]
                _, u11, u12, u21, u22 = _jacobi_rotations(A[p, p].real, A[q, q].real, A[p, q], 0.0)
                if not np.iscomplexobj(A):
                    u21, u22 = u21.real, u22.real
                Ap, Aq = A[:, p], A[:, q]
                A[:, p], A[:, q] = Ap * u11 + Aq * u21, Ap * u12 + Aq * u22
                Ap, Aq = A[p, :], A[q, :]
                A[p, :] = np.conj(u11)[:, None] * Ap + np.conj(u21)[:, None] * Aq
                A[q, :] = np.conj(u12)[:, None] * Ap + np.conj(u22)[:, None] * Aq
                A[p, q] = 0.0
                A[q, p] = 0.0
                Vp, Vq = V[:, p], V[:, q]
                V[:, p], V[:, q] = Vp * u11 + Vq * u21, Vp * u12 + Vq * u22
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    if vectors:
        return w[order], V[:, order]
    return w[order]


def min_eigenvalue(M) -> float:
    return float(hermitian_eigs(M)[0])


def is_psd(M, tol: float = PSD_TOL) -> bool:
    """PSD test with the dimension-scaled threshold ``-tol * dim``."""
    A = np.asarray(M)
    return min_eigenvalue(A) >= -tol * A.shape[0]


def singular_values(M, tol: float = 1e-15, max_sweeps: int = 100) -> np.ndarray:
    """Singular values in descending order by one-sided (Hestenes) Jacobi.

    Each rotation is the Jacobi rotation of the implicit Gram matrix
    ``M^H M`` on a column pair, so the values are the square roots of its
    eigenvalues; working on columns avoids squaring the condition number.
    """
    A = _check_dense(M)
    if A.shape[0] < A.shape[1]:
        A = A.conj().T
    W = A.copy()
    n = W.shape[1]
    fro = np.linalg.norm(W)
    if n > 1 and fro > 0:
        P, Q = round_robin_schedule(n)
        # Gram entries below this perturb singular values by ~1e-17 * fro
        floor = (1e-17 * fro) ** 2 / n
        for sweep in range(max_sweeps + 1):
            if sweep == max_sweeps:
                raise NonConvergenceError(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")
            rotated = False
            for p, q in zip(P, Q):
                Wp, Wq = W[:, p], W[:, q]
                alpha = np.einsum("ij,ij->j", Wp.conj(), Wp).real
                beta = np.einsum("ij,ij->j", Wq.conj(), Wq).real
                gamma = np.einsum("ij,ij->j", Wp.conj(), Wq)
                active = np.abs(gamma) > np.maximum(tol * np.sqrt(alpha * beta), floor)
                if not active.any():
                    continue
                rotated = True
                p, q = p[active], q[active]
                _, u11, u12, u21, u22 = _jacobi_rotations(alpha[active], beta[active], gamma[active], 0.0)
                if not np.iscomplexobj(W):
                    u21, u22 = u21.real, u22.real
                Wp, Wq = Wp[:, active], Wq[:, active]
                W[:, p], W[:, q] = Wp * u11 + Wq * u21, Wp * u12 + Wq * u22
            if not rotated:
                break
    s = np.linalg.norm(W, axis=0)
    return np.sort(s)[::-1]


def trace_norm(M) -> float:
    return float(np.sum(singular_values(M)))


def power_norm(M, iters: int = 200, seed: int = 0, tol: float | None = None) -> float:
    """Largest singular value by power iteration on ``M^H M``.

    ``M`` may be a dense array or a scipy sparse matrix.  The estimate is
    nondecreasing in the iteration count and never exceeds the true norm.
    If ``tol`` is given, raise when the last relative change exceeds it.
    """
    shape = M.shape
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(shape[1])
    if np.issubdtype(M.dtype, np.complexfloating):
        v = v + 1j * rng.standard_normal(shape[1])
    v = v / np.linalg.norm(v)
    MH = M.conj().T
    est = 0.0
    change = np.inf
    for _ in range(iters):
        w = M @ v
        new = float(np.linalg.norm(w))
        if new == 0.0:
            return 0.0
        change = abs(new - est) / new
        est = new
        v = MH @ w
        v = v / np.linalg.norm(v)
    if tol is not None and change > tol:
        raise NonConvergenceError(f"power iteration stalled at relative change {change:.2e}")
    return est


def circle_quadrature(f: Callable[[np.ndarray], np.ndarray], N: int) -> complex:
    """Uniform trapezoidal rule for ``(1/2pi) * integral_0^{2pi} f``.

    Exact for trigonometric polynomials of degree below ``N``.
    """
    if N < 1:
        raise DomainError(f"need at least one quadrature point, got {N}")
    phi = 2.0 * np.pi * np.arange(N) / N
    vals = np.broadcast_to(np.asarray(f(phi)), phi.shape)
    return complex(np.mean(vals))

"""Dense real matrices: Gram matrices, a cyclic Jacobi eigensolver and
Schatten norms of even order.

Schatten norms have two routes.  ``method="trace-power"`` (default)
multiplies the smaller of T^T T and T T^T and takes a trace, never
touching eigenvalues; ``method="spectral"`` sums powers of squared
singular values from :func:`squared_singular_values`.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NumericalError

JACOBI_TOL = 1e-12
CLAMP_TOL = 1e-9
MAX_SWEEPS = 100


def as_matrix(T) -> np.ndarray:
    """Coerce to a finite 2-D float array (a vector becomes a single row)."""
    A = np.array(T, dtype=float)
    if A.ndim == 1:
        A = A[None, :]
    if A.ndim != 2 or A.shape[1] < 1 or A.shape[0] < 1:
        raise DomainError(f"expected a non-empty matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix entries must be finite")
    return A


def gram(T) -> np.ndarray:
    """T^T T, symmetrized so it is exactly symmetric."""
    A = as_matrix(T)
    G = A.T @ A
    return 0.5 * (G + G.T)


def _off_norm(A):
    off = A - np.diag(np.diag(A))
    return float(np.sqrt(np.sum(off * off)))


def sym_eigenvalues(M, tol: float = JACOBI_TOL) -> np.ndarray:
    """Eigenvalues of a symmetric matrix in decreasing order (cyclic Jacobi).

    Sweeps over all (p, q) pairs applying plane rotations until the
    off-diagonal Frobenius mass falls below ``tol`` times the Frobenius
    norm of ``M`` (absolute ``tol`` for matrices of norm below 1).
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix entries must be finite")
    n = A.shape[0]
    scale = max(1.0, float(np.linalg.norm(A)))
    if np.max(np.abs(A - A.T), initial=0.0) > max(tol, 1e-12) * scale:
        raise DomainError("sym_eigenvalues requires a symmetric matrix")
    A = 0.5 * (A + A.T)
    target = tol * scale
    for _ in range(MAX_SWEEPS):
        if _off_norm(A) < target:
            return np.sort(np.diag(A))[::-1].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                diff = A[q, q] - A[p, p]
                if abs(diff) > 1e150 * abs(apq):
                    t = apq / diff  # theta^2 would overflow
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, q] = A[q, p] = 0.0
    if _off_norm(A) < target:
        return np.sort(np.diag(A))[::-1].copy()
    raise NumericalError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")


def _clamp(values, scale):
    out = np.array(values, dtype=float)
    small = (out < 0) & (out >= -CLAMP_TOL * max(1.0, scale))
    out[small] = 0.0
    return out


def squared_singular_values(T, tol: float = JACOBI_TOL) -> np.ndarray:
    """Eigenvalues of T^T T (d of them, decreasing), tiny negatives clamped to 0."""
    G = gram(T)
    ev = sym_eigenvalues(G, tol)
    return _clamp(ev, float(np.max(np.abs(ev), initial=0.0)))


def schatten(T, order: int, method: str = "trace-power") -> float:
    """||T||_order^order for an even ``order`` = 2k."""
    if isinstance(order, bool) or int(order) != order or order < 2 or order % 2:
        raise DomainError(f"Schatten order must be an even integer >= 2, got {order!r}")
    k = int(order) // 2
    A = as_matrix(T)
    if method == "spectral":
        s2 = squared_singular_values(A)
        return math.fsum(s2**k)
    if method != "trace-power":
        raise DomainError(f"unknown Schatten method {method!r}")
    small = A.T @ A if A.shape[1] <= A.shape[0] else A @ A.T
    small = 0.5 * (small + small.T)
    return float(np.trace(np.linalg.matrix_power(small, k)))


def schatten_profile(T, kmax: int, method: str = "trace-power") -> dict[int, float]:
    """{2k: ||T||_{2k}^{2k}} for k = 1..kmax."""
    return {2 * k: schatten(T, 2 * k, method) for k in range(1, kmax + 1)}


def trace_matrix_function(M, phi, tol: float = JACOBI_TOL) -> float:
    """tr phi(M) = sum of phi over the eigenvalues of a symmetric PSD matrix."""
    ev = sym_eigenvalues(M, tol)
    ev = _clamp(ev, float(np.max(np.abs(ev), initial=0.0)))
    if np.any(ev < 0):
        raise DomainError("trace_matrix_function requires a positive semidefinite matrix")
    vals = []
    for e in ev:
        try:
            v = float(phi(float(e)))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"function undefined at eigenvalue {e!r}: {exc}") from exc
        if not math.isfinite(v):
            raise DomainError(f"function undefined at eigenvalue {e!r}")
        vals.append(v)
    return math.fsum(vals)


def inverse(T) -> np.ndarray:
    """Inverse of a square matrix; singular (or numerically singular) input is a domain error."""
    A = as_matrix(T)
    if A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    if np.linalg.cond(A) > 1e14:
        raise DomainError("matrix is singular")
    return np.linalg.inv(A)


def is_scaled_orthogonal(T, tol: float = 1e-10) -> bool:
    """True when all squared singular values coincide (T = c * orthogonal)."""
    s2 = squared_singular_values(T)
    top = float(np.max(s2))
    return top > 0 and float(np.max(s2) - np.min(s2)) <= tol * top


def random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix)."""
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    return Q * np.sign(np.diag(R))

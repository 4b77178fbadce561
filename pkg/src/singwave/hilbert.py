"""Coordinates in L2(mu) for an atomic measure, and the basic operators.

Vectors and operators are plain numpy arrays in the orthonormal basis
``e_j = chi_{zeta_j} / sqrt(w_j)``.  A function ``f`` therefore has
coordinates ``f(zeta_j) sqrt(w_j)``, and ``inner(embed(f), embed(g))`` is the
integral of ``f conj(g)`` against ``mu``.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    AsymmetricKernelError,
    DimensionMismatchError,
    DuplicateAtomError,
    NonRealSymbolError,
    NonzeroDiagonalError,
)
from .measures import ATOM_TOL, AtomicMeasure, evaluate


def embed(f, mu: AtomicMeasure) -> np.ndarray:
    """Coordinates ``f(zeta_j) sqrt(w_j)`` of a circle function."""
    return evaluate(f, mu) * mu.sqrt_weights


def values(coords, mu: AtomicMeasure) -> np.ndarray:
    """Inverse of :func:`embed`: function values at the atoms."""
    c = np.asarray(coords)
    _check_dim(c, len(mu))
    return c / mu.sqrt_weights


def inner(u, v) -> complex:
    """``sum_j u_j conj(v_j)``: linear in the first slot."""
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape:
        raise DimensionMismatchError(f"vectors of shapes {u.shape} and {v.shape}")
    return complex(np.vdot(v, u))


def norm(u) -> float:
    return float(np.linalg.norm(u))


def op_norm(M) -> float:
    """Operator norm (largest singular value)."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def _check_dim(x, n):
    if x.shape[0] != n:
        raise DimensionMismatchError(f"expected dimension {n}, got {x.shape[0]}")


def real_symbol(phi, mu: AtomicMeasure) -> np.ndarray:
    """Values of ``phi`` at the atoms, checked to be real."""
    vals = np.asarray(evaluate(phi, mu))
    if np.iscomplexobj(vals):
        if np.any(np.abs(vals.imag) > 1e-12):
            raise NonRealSymbolError("the commutator symbol must be real-valued")
        vals = vals.real
    return vals.astype(float)


def multiplication_operator(mu: AtomicMeasure) -> np.ndarray:
    """Multiplication by the independent variable: ``diag(zeta_j)``."""
    return np.diag(mu.points)


def rank_two_commutator(phi, mu: AtomicMeasure) -> np.ndarray:
    """Matrix of ``h -> (h, phi) 1 - (h, 1) phi`` for real ``phi``.

    ``phi`` may be a callable or an array of values at the atoms.  Entries are
    ``sqrt(w_i w_j) (phi_j - phi_i)``.
    """
    f = real_symbol(phi, mu)
    s = mu.sqrt_weights
    return np.outer(s, s) * (f[None, :] - f[:, None])


def solve_commutator(K, mu: AtomicMeasure, tol: float = 1e-12) -> np.ndarray:
    """The operator ``A`` with ``AU - UA = K`` and zero diagonal.

    ``A_ij = K_ij / (zeta_j - zeta_i)`` off the diagonal.  Its norm grows as
    atoms cluster; it is returned as is.
    """
    K = np.asarray(K)
    n = len(mu)
    if K.shape != (n, n):
        raise DimensionMismatchError(f"expected {n}x{n} matrix, got {K.shape}")
    scale = max(1.0, float(np.max(np.abs(K)))) if K.size else 1.0
    if np.any(np.abs(np.diag(K)) > tol * scale):
        raise NonzeroDiagonalError("a commutator with U has zero diagonal")
    z = mu.points
    diff = z[None, :] - z[:, None]
    off = ~np.eye(n, dtype=bool)
    if np.any(np.abs(diff[off]) < ATOM_TOL):
        raise DuplicateAtomError("coinciding atoms make the commutator equation singular")
    np.fill_diagonal(diff, 1.0)
    A = K / diff
    np.fill_diagonal(A, 0.0)
    return A


def commutator(A, U) -> np.ndarray:
    return A @ U - U @ A


def finite_rank_decomposition(pairs, dim: int | None = None) -> np.ndarray:
    """Matrix of ``h -> sum_m (h, u_m) v_m`` from coordinate pairs ``(u_m, v_m)``."""
    pairs = list(pairs)
    if not pairs:
        if dim is None:
            raise ValueError("dimension needed for an empty decomposition")
        return np.zeros((dim, dim), dtype=complex)
    n = np.asarray(pairs[0][0]).shape[0]
    if dim is not None and dim != n:
        raise DimensionMismatchError(f"vectors have dimension {n}, expected {dim}")
    M = np.zeros((n, n), dtype=complex)
    for u, v in pairs:
        u, v = np.asarray(u), np.asarray(v)
        if u.shape != (n,) or v.shape != (n,):
            raise DimensionMismatchError("all vectors must share one measure")
        M += np.outer(v, np.conj(u))
    return M


def commutator_pairs(phi, mu: AtomicMeasure):
    """The two pairs ``(phi, 1)`` and ``(1, -phi)`` realizing the rank-two commutator."""
    one = embed(1.0, mu)
    ph = embed(real_symbol(phi, mu), mu)
    return [(ph, one), (one, -ph)]


def symmetric_form_operator(kernel, mu: AtomicMeasure, tol: float = 1e-12) -> np.ndarray:
    """Operator of the form ``(Lf, g) = sum (f(xi) - f(z)) conj(g(z)) k(xi, z) dmu dmu``.

    ``kernel[i, j]`` is ``k(zeta_i, zeta_j)``; it must be real and symmetric.
    """
    k = np.asarray(kernel)
    n = len(mu)
    if k.shape != (n, n):
        raise DimensionMismatchError(f"expected {n}x{n} kernel, got {k.shape}")
    if np.iscomplexobj(k):
        if np.any(np.abs(k.imag) > tol):
            raise AsymmetricKernelError("kernel must be real")
        k = k.real
    if np.any(np.abs(k - k.T) > tol * max(1.0, float(np.max(np.abs(k))))):
        raise AsymmetricKernelError("kernel must be symmetric")
    w = mu.weights
    s = mu.sqrt_weights
    L = np.outer(s, s) * k.T
    L[np.diag_indices(n)] -= k.T @ w
    return L


def dirichlet_form(f_values, kernel, mu: AtomicMeasure) -> float:
    """``sum_ij |f_i - f_j|**2 k_ij w_i w_j``."""
    f = np.asarray(f_values)
    d = np.abs(f[:, None] - f[None, :]) ** 2
    return float(np.einsum("ij,ij,i,j->", d, np.asarray(kernel).real, mu.weights, mu.weights))

"""Averaged wave operators for the multiplication operator on an atomic L2(mu).

``U`` is always diagonal here, so its powers are formed by exponentiating
the diagonal; dense matrix powers are never taken.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DecompositionMismatchError,
    DimensionMismatchError,
    NonzeroTailError,
)
from .hilbert import (
    commutator,
    embed,
    finite_rank_decomposition,
    op_norm,
    rank_two_commutator,
    real_symbol,
    values,
)
from .kernels import Averaged, convolve
from .measures import AtomicMeasure, kept_indices, restrict
from .summation import SummationMethod, WeightSequence


def _diagonal(U) -> np.ndarray:
    U = np.asarray(U)
    if U.ndim == 1:
        return U.astype(complex)
    d = np.diag(U)
    if np.any(np.abs(U - np.diag(d)) > 1e-14):
        raise ValueError("U must be diagonal in the atom basis")
    return d.astype(complex)


def _check_pair(A, u):
    A = np.asarray(A)
    if A.shape != (u.size, u.size):
        raise DimensionMismatchError(f"A has shape {A.shape}, U has dimension {u.size}")
    return A


def twist_average(u: np.ndarray, ws: WeightSequence) -> np.ndarray:
    """``S = sum_n p_n (conj(u_i) u_j)**n``, the entrywise future multiplier."""
    S = np.zeros((u.size, u.size), dtype=complex)
    un = np.ones(u.size, dtype=complex)
    for p in ws.weights:
        S += p * np.outer(np.conj(un), un)
        un = un * u
    return S


def wave_average(A, U, ws: WeightSequence, direction: str = "future") -> np.ndarray:
    """``W+ = sum p_n U^-n A U^n`` (future) or ``W- = sum p_n U^n A U^-n`` (past).

    Only the retained weights are summed; the truncation error in operator
    norm is at most ``||A|| * ws.tail``.
    """
    u = _diagonal(U)
    A = _check_pair(A, u)
    S = twist_average(u, ws)
    if direction == "future":
        return A * S
    if direction == "past":
        return A * np.conj(S)
    raise ValueError(f"direction must be 'future' or 'past', not {direction!r}")


def wave_pair(A, U, ws: WeightSequence):
    """Both averages ``(W+, W-)`` from a single pass over the weights."""
    u = _diagonal(U)
    A = _check_pair(A, u)
    S = twist_average(u, ws)
    return A * S, A * np.conj(S)


@dataclass
class WavePairingSeries:
    grid: list
    pairings: np.ndarray
    tail_bounds: np.ndarray
    norm_A: float = 0.0
    meta: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "pairing_re", "pairing_im", "tail_bound"])
        for a, p, t in zip(self.grid, self.pairings, self.tail_bounds):
            w.writerow([repr(a), repr(float(p.real)), repr(float(p.imag)), repr(float(t))])
        return buf.getvalue()


def wave_difference_pairing(A, U, method: SummationMethod, grid: Sequence, h1, h2) -> WavePairingSeries:
    """``((W+(alpha) - W-(alpha)) h1, h2)`` along an ascending grid.

    Each value carries the truncation bound ``2 ||A|| tail ||h1|| ||h2||``.
    """
    u = _diagonal(U)
    A = _check_pair(A, u)
    h1, h2 = np.asarray(h1), np.asarray(h2)
    if h1.shape != (u.size,) or h2.shape != (u.size,):
        raise DimensionMismatchError("vectors must match the operator dimension")
    nA = op_norm(A)
    hh = float(np.linalg.norm(h1) * np.linalg.norm(h2))
    pairings, bounds = [], []
    for alpha in grid:
        ws = method.weights(alpha)
        Wp, Wm = wave_pair(A, u, ws)
        pairings.append(np.vdot(h2, (Wp - Wm) @ h1))
        bounds.append(2.0 * nA * ws.tail * hh)
    return WavePairingSeries(list(grid), np.array(pairings), np.array(bounds), nA)


def _require_finite(ws: WeightSequence):
    if ws.tail != 0.0:
        raise NonzeroTailError("exact identities need a finite weight row")


def _power(u, n):
    # U**n for diagonal U, negative n allowed
    return u ** n if n >= 0 else np.conj(u) ** (-n)


def telescoping_identity_residual(A, U, ws: WeightSequence) -> float:
    """``|| (W+ U - U W-) - sum_n p_n sum_{|l|<=n} U^l K U^-l ||`` with ``K = AU - UA``.

    The right-hand side is accumulated term by term with dense products.
    """
    _require_finite(ws)
    u = _diagonal(U)
    A = _check_pair(A, u)
    Ud = np.diag(u)
    Wp, Wm = wave_pair(A, u, ws)
    lhs = Wp @ Ud - Ud @ Wm
    K = commutator(A, Ud)
    rhs = np.zeros_like(lhs)
    for n, p in enumerate(ws.weights):
        inner_sum = np.zeros_like(lhs)
        for l in range(-n, n + 1):
            inner_sum += np.diag(_power(u, l)) @ K @ np.diag(_power(u, -l))
        rhs += p * inner_sum
    return op_norm(lhs - rhs)


def convolution_identity_residual(pairs, h, A, U, mu: AtomicMeasure, ws: WeightSequence) -> float:
    """Operator side ``(W+ U - U W-) h`` against ``sum_m v_m [(conj(u_m) h) * k]``.

    ``pairs`` are coordinate pairs ``(u_m, v_m)`` with ``AU - UA = sum (., u_m) v_m``;
    the averaged kernel ``k`` is built from ``ws``.
    """
    u = _diagonal(U)
    A = _check_pair(A, u)
    Ud = np.diag(u)
    K = commutator(A, Ud)
    D = finite_rank_decomposition(pairs, dim=u.size)
    if op_norm(K - D) > 1e-10 * max(1.0, op_norm(A)):
        raise DecompositionMismatchError("pairs do not reproduce AU - UA")
    Wp, Wm = wave_pair(A, u, ws)
    lhs = (Wp @ Ud - Ud @ Wm) @ np.asarray(h)
    h_vals = values(h, mu)
    kern = Averaged(ws)
    rhs_vals = np.zeros(len(mu), dtype=complex)
    for um, vm in pairs:
        conv = convolve(np.conj(values(um, mu)) * h_vals, kern, mu)
        rhs_vals += values(vm, mu) * conv
    return float(np.linalg.norm(lhs - embed(rhs_vals, mu)))


def p_alpha_function(phi, mu: AtomicMeasure, ws: WeightSequence) -> np.ndarray:
    """Values of ``z -> sum_xi (phi(xi) - phi(z)) k_alpha(z, xi) w_xi`` at every atom.

    For ``AU - UA = (., phi) 1 - (., 1) phi`` this is ``(W+ U - U W-) 1``.
    """
    f = real_symbol(phi, mu)
    kern = Averaged(ws)
    return convolve(f, kern, mu) - f * convolve(np.ones(len(mu)), kern, mu)


def shift_identity_residual(A, U, ws: WeightSequence) -> float:
    """Residual of ``U^-1 W+ U = W+ - p_0 A + sum (p_n - p_{n+1}) U^{-n-1} A U^{n+1}``."""
    _require_finite(ws)
    u = _diagonal(U)
    A = _check_pair(A, u)
    Ud = np.diag(u)
    Wp = wave_average(A, u, ws, "future")
    lhs = np.diag(np.conj(u)) @ Wp @ Ud
    p = np.append(ws.weights, 0.0)
    rhs = Wp - p[0] * A
    for n in range(len(ws)):
        rhs = rhs + (p[n] - p[n + 1]) * (np.diag(_power(u, -n - 1)) @ A @ np.diag(_power(u, n + 1)))
    return op_norm(lhs - rhs)


def restriction_commutator_check(A, U, phi, mu: AtomicMeasure, keep) -> float:
    """``|| A_n U_n - U_n A_n - K_n ||`` for the compression to the kept atoms.

    ``A_n = M_chi A M_chi`` acts on L2 of the restricted measure, and ``K_n``
    is the rank-two commutator of ``phi`` restricted to it.
    """
    u = _diagonal(U)
    A = _check_pair(A, u)
    idx = kept_indices(mu, keep)
    sub = restrict(mu, keep)
    f = real_symbol(phi, mu)[idx]
    An = A[np.ix_(idx, idx)]
    Un = np.diag(u[idx])
    return op_norm(commutator(An, Un) - rank_two_commutator(f, sub))

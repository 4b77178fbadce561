"""Dirichlet, averaged Dirichlet, Poisson and Cauchy kernels on the circle.

All kernels are functions of a single unimodular argument ``zeta``; the
two-point kernels of the theory are obtained with ``zeta = z * conj(xi)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    MisalignedVectorError,
    NotUnimodularError,
    ParameterOutOfRange,
    SingularPointError,
)
from .measures import AtomicMeasure
from .summation import WeightSequence

UNIMODULAR_TOL = 1e-12
SINGULAR_DIST = 1e-9


def _unimodular(zeta) -> np.ndarray:
    z = np.asarray(zeta, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1.0) > UNIMODULAR_TOL):
        raise NotUnimodularError("kernel argument must lie on the unit circle")
    return z


def _radius(r: float) -> float:
    if not 0.0 < r < 1.0:
        raise ParameterOutOfRange(f"radius must lie in (0, 1), got {r!r}")
    return float(r)


def _out(x):
    return x if np.ndim(x) else x.item()


def dirichlet_direct(n: int, zeta):
    """``D_n(zeta) = sum_{l=-n}^{n} zeta**l`` by explicit summation."""
    if n < 0:
        raise ParameterOutOfRange("order must be nonnegative")
    z = _unimodular(zeta)
    acc = np.ones(z.shape, dtype=complex)
    zl = np.ones(z.shape, dtype=complex)
    zc = np.conj(z)
    zcl = np.ones(z.shape, dtype=complex)
    for _ in range(n):
        zl = zl * z
        zcl = zcl * zc
        acc = acc + zl + zcl
    return _out(acc)


def dirichlet_closed(n: int, zeta):
    """Closed form ``2 Re(zeta**n - zeta**(n+1)) / |1 - zeta|**2``.

    Raises :class:`SingularPointError` within ``1e-9`` of ``zeta = 1``, where
    the quotient is 0/0 and :func:`dirichlet_direct` must be used instead.
    """
    if n < 1:
        raise ParameterOutOfRange("closed form is stated for n >= 1")
    z = _unimodular(zeta)
    one_minus = 1.0 - z
    dist = np.abs(one_minus)
    if np.any(dist < SINGULAR_DIST):
        raise SingularPointError("closed form is singular at zeta = 1")
    # zeta**n - zeta**(n+1) == zeta**n (1 - zeta); keeps the cancellation exact
    num = 2.0 * np.real(z ** n * one_minus)
    return _out(num / dist ** 2)


def averaged_kernel(ws: WeightSequence, zeta):
    """``sum_n p_n D_n(zeta)`` over the retained weights.

    Evaluated as ``T_0 + 2 Re sum_{l>=1} T_l zeta**l`` with tail sums
    ``T_l = sum_{n>=l} p_n``, which is regular at ``zeta = 1``.
    """
    z = _unimodular(zeta)
    tails = np.cumsum(ws.weights[::-1])[::-1]
    acc = np.zeros(z.shape, dtype=complex)
    for t in tails[:0:-1]:
        acc = (acc + t) * z
    return _out(tails[0] + 2.0 * np.real(acc))


def poisson_kernel(r: float, zeta):
    """``(1 - r**2) / |1 - r zeta|**2``."""
    r = _radius(r)
    z = np.asarray(zeta, dtype=complex)
    return _out((1.0 - r * r) / np.abs(1.0 - r * z) ** 2)


def poisson_from_angle(r: float, t):
    """Poisson kernel at ``zeta = exp(i t)``, written to stay accurate as ``r -> 1``."""
    r = _radius(r)
    s = np.sin(np.asarray(t, dtype=float) / 2.0)
    return _out((1.0 - r * r) / ((1.0 - r) ** 2 + 4.0 * r * s * s))


def cauchy_kernel(r: float, zeta):
    """``1 / (1 - r zeta)``."""
    r = _radius(r)
    z = np.asarray(zeta, dtype=complex)
    return _out(1.0 / (1.0 - r * z))


@dataclass(frozen=True)
class Dirichlet:
    n: int

    def __call__(self, zeta):
        return np.real(dirichlet_direct(self.n, zeta))


@dataclass(frozen=True)
class Averaged:
    weights: WeightSequence

    def __call__(self, zeta):
        return averaged_kernel(self.weights, zeta)


@dataclass(frozen=True)
class Poisson:
    r: float

    def __call__(self, zeta):
        return poisson_kernel(self.r, zeta)


@dataclass(frozen=True)
class Cauchy:
    r: float

    def __call__(self, zeta):
        return cauchy_kernel(self.r, zeta)


def twist(mu: AtomicMeasure, rows=slice(None)) -> np.ndarray:
    """Matrix ``zeta_j * conj(zeta_i)`` (output atom ``j``, source atom ``i``)."""
    th = mu.angles
    return np.exp(1j * (th[rows, None] - th[None, :]))


def kernel_matrix(kernel, mu: AtomicMeasure) -> np.ndarray:
    """``kernel(zeta_j conj(zeta_i))``; the diagonal holds ``kernel(1)``."""
    return np.asarray(kernel(twist(mu)))


def convolve(values, kernel, mu: AtomicMeasure, block: int = 2048) -> np.ndarray:
    """``(f * k)(zeta_j) = sum_i f(zeta_i) k(zeta_j conj(zeta_i)) w_i`` at every atom.

    ``values`` are function values at the atoms (not L2 coordinates); the
    result is returned the same way.
    """
    f = np.asarray(values)
    if f.shape != (len(mu),):
        raise MisalignedVectorError(f"expected {len(mu)} values, got shape {f.shape}")
    fw = f * mu.weights
    out = None
    for s in range(0, len(mu), block):
        part = np.asarray(kernel(twist(mu, slice(s, s + block)))) @ fw
        if out is None:
            out = np.empty(len(mu), dtype=np.result_type(part, float))
        out[s:s + block] = part
    return out

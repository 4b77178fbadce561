"""Inner functions of atomic measures and their Clark families.

For a probability measure ``mu`` with Herglotz transform
``F(z) = sum_j w_j (zeta_j + z) / (zeta_j - z)`` the function
``theta = (F - 1) / (F + 1)`` is inner, and ``Re((alpha + theta) / (alpha - theta))``
is the Poisson integral of a probability measure ``sigma_alpha`` for every
unimodular ``alpha``; ``sigma_1 = mu``.  For ``n`` atoms ``theta`` is a
Blaschke product of degree ``n`` vanishing at the origin.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .counterexample import apply_C, l2_norm
from .errors import (
    IdentityResidualTooLarge,
    NonpositiveWeightError,
    NotProbabilityError,
    NotUnimodularError,
    ParameterOutOfRange,
    RootFindingFailure,
    TooCloseToBoundaryError,
)
from .measures import TWO_PI, AtomicMeasure, cantor_measure, circular_gaps, evaluate, make_atomic

MAX_DEGREE = 256
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def _check_probability(mu: AtomicMeasure, tol: float = 1e-10):
    if abs(mu.total_mass - 1.0) > tol:
        raise NotProbabilityError(f"total mass {mu.total_mass!r} is not 1")


def herglotz(mu: AtomicMeasure, z):
    """``F(z) = sum_j w_j (zeta_j + z) / (zeta_j - z)`` inside the disk."""
    _check_probability(mu)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1.0 - 1e-9):
        raise TooCloseToBoundaryError("Herglotz transform evaluated too close to the circle")
    xi = mu.points
    F = ((xi + z[..., None]) / (xi - z[..., None])) @ mu.weights
    return F if F.ndim else complex(F)


def poisson_integral(mu: AtomicMeasure, z):
    """``sum_j w_j (1 - |z|**2) / |zeta_j - z|**2``."""
    z = np.asarray(z, dtype=complex)
    P = (1.0 - np.abs(z[..., None]) ** 2) / np.abs(mu.points - z[..., None]) ** 2
    out = P @ mu.weights
    return out if out.ndim else float(out)


def interior_samples(count: int, rmax: float = 0.9) -> np.ndarray:
    """Deterministic spiral of ``count`` points filling ``|z| <= rmax``."""
    k = np.arange(count)
    return rmax * np.sqrt((k + 0.5) / count) * np.exp(1j * GOLDEN_ANGLE * k)


@dataclass(frozen=True)
class BlaschkeProduct:
    """``front * prod_k (z - a_k) / (1 - conj(a_k) z)``."""

    zeros: np.ndarray
    front: complex = 1.0 + 0.0j

    def __post_init__(self):
        if np.any(np.abs(self.zeros) >= 1.0 - 1e-12):
            raise ParameterOutOfRange("Blaschke zeros must lie strictly inside the disk")
        if abs(abs(self.front) - 1.0) > 1e-12:
            raise ParameterOutOfRange("front constant must be unimodular")

    @property
    def degree(self) -> int:
        return self.zeros.size

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        a = self.zeros
        out = self.front * np.prod((z[..., None] - a) / (1.0 - np.conj(a) * z[..., None]), axis=-1)
        return out if out.ndim else complex(out)

    def phase(self, t):
        """Continuous argument of ``theta(exp(i t))``; increases by ``2 pi degree`` per turn."""
        t = np.asarray(t, dtype=float)
        e = np.exp(-1j * t)[..., None]
        lift = np.sum(np.angle(1.0 - self.zeros * e), axis=-1)
        return np.angle(self.front) + self.degree * t + 2.0 * lift

    def phase_derivative(self, t):
        """``d/dt arg theta(exp(i t)) = sum_k (1 - |a_k|**2) / |exp(i t) - a_k|**2``."""
        t = np.asarray(t, dtype=float)
        e = np.exp(1j * t)[..., None]
        return np.sum((1.0 - np.abs(self.zeros) ** 2) / np.abs(e - self.zeros) ** 2, axis=-1)

    def to_dict(self) -> dict:
        return {
            "zeros": [[float(a.real), float(a.imag)] for a in self.zeros],
            "front": [float(self.front.real), float(self.front.imag)],
        }

    @classmethod
    def from_dict(cls, data) -> "BlaschkeProduct":
        zeros = np.array([complex(re, im) for re, im in data["zeros"]], dtype=complex)
        return cls(zeros, complex(*data["front"]))


def theta_from_measure(mu: AtomicMeasure, tol: float = 1e-8) -> BlaschkeProduct:
    """The inner function ``(F - 1) / (F + 1)`` of a probability measure.

    ``F - 1 = 2 z sum_j w_j / (zeta_j - z)``, so besides the origin the zeros
    of ``theta`` are the roots of ``sum_j w_j / (zeta_j - z)``.  Those are the
    eigenvalues of ``diag(zeta)`` compressed to the orthogonal complement of
    ``sqrt(w)``.  The front constant is fitted on interior samples, where the
    product is also checked against the defining quotient.
    """
    _check_probability(mu)
    n = len(mu)
    if n > MAX_DEGREE:
        raise ParameterOutOfRange(f"{n} atoms exceed the supported degree {MAX_DEGREE}")
    q = mu.sqrt_weights / np.linalg.norm(mu.sqrt_weights)
    Q, _ = np.linalg.qr(q[:, None], mode="complete")
    V = Q[:, 1:]
    B = V.T @ (mu.points[:, None] * V)
    extra = np.linalg.eigvals(B) if n > 1 else np.zeros(0, dtype=complex)
    zeros = np.concatenate([[0.0 + 0.0j], extra])
    if np.any(np.abs(zeros) >= 1.0 - 1e-12):
        raise RootFindingFailure("a computed zero left the open disk")
    samples = interior_samples(10 * n)
    F = herglotz(mu, samples)
    target = (F - 1.0) / (F + 1.0)
    prod = BlaschkeProduct(zeros)(samples)
    c = np.vdot(prod, target) / np.vdot(prod, prod)
    theta = BlaschkeProduct(zeros, c / abs(c))
    err = float(np.max(np.abs(theta(samples) - target)))
    if err > tol:
        raise RootFindingFailure(f"Blaschke product misses (F-1)/(F+1) by {err:.3g}")
    return theta


def _as_unimodular(alpha) -> complex:
    a = complex(alpha)
    if abs(abs(a) - 1.0) > 1e-12:
        raise NotUnimodularError("alpha must be unimodular")
    return a


def clark_points(theta: BlaschkeProduct, alpha) -> np.ndarray:
    """Angles in ``[0, 2 pi)`` of the solutions of ``theta(zeta) = alpha``.

    The boundary phase is strictly increasing, so each level ``arg(alpha) + 2 pi j``
    it crosses is bracketed by ``[0, 2 pi]`` and found by a bracketing solver.
    """
    alpha = _as_unimodular(alpha)
    n = theta.degree
    p0 = float(theta.phase(0.0))
    base = math.atan2(alpha.imag, alpha.real)
    j0 = math.ceil((p0 - base) / TWO_PI - 1e-15)
    roots = []
    for j in range(j0, j0 + n):
        level = base + TWO_PI * j
        f = lambda t, level=level: float(theta.phase(t)) - level  # noqa: E731
        lo, hi = f(0.0), f(TWO_PI)
        if lo >= 0.0:
            roots.append(0.0)
            continue
        if hi <= 0.0:
            raise RootFindingFailure("phase level not bracketed on one turn")
        roots.append(brentq(f, 0.0, TWO_PI, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500))
    t = np.mod(np.array(roots), TWO_PI)
    if np.unique(t).size != n:
        raise RootFindingFailure("Clark points are not distinct")
    return t


def clark_samples(angles: np.ndarray) -> np.ndarray:
    """Four interior points per atom, pulled in by a fraction of the local gap."""
    s = np.sort(angles)
    gaps = circular_gaps(s)
    local = np.minimum(gaps, np.roll(gaps, 1))
    local = np.minimum(local, 1.0)
    pts = []
    for pull, turn in ((0.5, 0.0), (0.25, 0.0), (0.5, 0.3), (0.5, -0.3)):
        pts.append((1.0 - pull * local) * np.exp(1j * (s + turn * local)))
    return np.concatenate(pts)


def _clark_target(theta, alpha, z):
    th = theta(z)
    return np.real((alpha + th) / (alpha - th))


def clark_measure(theta: BlaschkeProduct, alpha, tol: float = 1e-8) -> AtomicMeasure:
    """The Clark measure ``sigma_alpha`` of a finite Blaschke product.

    Atoms solve ``theta(zeta) = alpha``; weights are the least-squares
    solution of the defining Poisson identity on ``4 n`` interior samples.
    """
    alpha = _as_unimodular(alpha)
    t = np.sort(clark_points(theta, alpha))
    z = clark_samples(t)
    target = _clark_target(theta, alpha, z)
    P = (1.0 - np.abs(z[:, None]) ** 2) / np.abs(np.exp(1j * t)[None, :] - z[:, None]) ** 2
    scale = np.maximum(1.0, np.abs(target))
    w, *_ = np.linalg.lstsq(P / scale[:, None], target / scale, rcond=None)
    resid = float(np.max(np.abs(P @ w - target)))
    if resid > tol or abs(math.fsum(w) - 1.0) > tol:
        raise IdentityResidualTooLarge(
            f"Clark identity residual {resid:.3g}, mass defect {abs(math.fsum(w) - 1.0):.3g}")
    try:
        return make_atomic(t, w, f"clark(alpha={math.atan2(alpha.imag, alpha.real):.17g})")
    except NonpositiveWeightError as exc:
        raise IdentityResidualTooLarge("fitted Clark weights are not positive") from exc


def clark_weights_from_derivative(theta: BlaschkeProduct, angles) -> np.ndarray:
    """``1 / |theta'(zeta)|`` at boundary points, the classical weight formula."""
    return 1.0 / theta.phase_derivative(np.asarray(angles, dtype=float))


def verify_clark_identity(theta: BlaschkeProduct, sigma: AtomicMeasure, alpha, samples) -> float:
    """Largest deviation between ``Re((alpha+theta)/(alpha-theta))`` and the Poisson integral of ``sigma``."""
    alpha = _as_unimodular(alpha)
    z = np.asarray(samples, dtype=complex)
    return float(np.max(np.abs(_clark_target(theta, alpha, z) - poisson_integral(sigma, z))))


@dataclass
class ClarkFamily:
    theta: BlaschkeProduct
    base: AtomicMeasure
    measures: dict = field(default_factory=dict)

    @classmethod
    def from_measure(cls, mu: AtomicMeasure) -> "ClarkFamily":
        return cls(theta_from_measure(mu), mu)

    def sigma(self, alpha_angle: float) -> AtomicMeasure:
        key = float(alpha_angle)
        if key not in self.measures:
            self.measures[key] = clark_measure(self.theta, np.exp(1j * key))
        return self.measures[key]

    def to_dict(self) -> dict:
        return {
            "theta": self.theta.to_dict(),
            "measures": [
                {"alpha_angle": a, "measure": m.to_dict()} for a, m in sorted(self.measures.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


@dataclass
class StudyRow:
    level: int
    r: float
    deviation: float


@dataclass
class StudyReport:
    alpha: complex
    rows: list[StudyRow]
    clark_residuals: dict
    atoms: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["level", "r", "deviation"])
        for row in self.rows:
            w.writerow([row.level, f"{row.r:.17g}", f"{row.deviation:.17g}"])
        return buf.getvalue()

    def deviations(self, level: int) -> np.ndarray:
        return np.array([row.deviation for row in self.rows if row.level == level])

    def trend(self) -> str:
        lines = []
        for level in sorted(self.atoms):
            d = self.deviations(level)
            if np.all(d == 0):
                shape = "identically zero"
            elif np.all(np.diff(d) <= 0):
                shape = "nonincreasing in r"
            elif np.all(np.diff(d) >= 0):
                shape = "nondecreasing in r"
            else:
                shape = "not monotone in r"
            lines.append(f"level {level} ({self.atoms[level]} atoms): deviation {shape}, "
                         f"last {d[-1]:.6g}")
        return "\n".join(lines)


def alphaconv_refinement_study(levels: Sequence[int], alpha, r_grid: Sequence[float],
                               measure_factory: Callable[[int], AtomicMeasure] = cantor_measure,
                               h=lambda z: z, h_alpha=None) -> StudyReport:
    """Distance of ``C_r phi`` from ``(phi_alpha - phi) / (alpha - 1)`` across refinements.

    ``phi`` is ``h`` on the atoms of each level; ``phi_alpha`` is the
    continuous transplant ``h_alpha`` (default ``h``) on the same atoms.
    Atomic models need not converge, so only the observed trend is reported.
    """
    alpha = _as_unimodular(alpha)
    if abs(alpha - 1.0) < 1e-12:
        raise ParameterOutOfRange("the transplant point alpha must differ from 1")
    h_alpha = h if h_alpha is None else h_alpha
    rows, resid, atoms = [], {}, {}
    for level in levels:
        mu = measure_factory(level)
        theta = theta_from_measure(mu)
        sigma = clark_measure(theta, alpha)
        resid[level] = verify_clark_identity(theta, sigma, alpha, interior_samples(4 * len(mu)))
        atoms[level] = len(mu)
        f = np.asarray(evaluate(h, mu), dtype=complex)
        target = (np.asarray(evaluate(h_alpha, mu), dtype=complex) - f) / (alpha - 1.0)
        for r in r_grid:
            rows.append(StudyRow(level, float(r), l2_norm(apply_C(f, mu, r) - target, mu)))
    return StudyReport(alpha, rows, resid, atoms)

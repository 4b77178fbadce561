"""A continuous symbol whose Poisson difference operators blow up.

The measure lives on arcs ``I_k`` accumulating at ``z = 1`` from both sides
(see :func:`singwave.measures.lemma_lost_measure`).  The symbol ``phi`` is a
fourth root of the argument just above the real axis and vanishes just
below it; its mirror ``psi(z) = phi(conj z)`` does the opposite, so
``phi * psi`` vanishes on the right half circle while the Poisson kernel
couples the two sides ever more strongly as ``r -> 1``.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InsufficientResolutionError, ParameterOutOfRange
from .kernels import _radius
from .measures import TWO_PI, AtomicMeasure, LemmaLostSpec, lemma_lost_measure

SEAM = (math.pi / 2) ** 0.25


def phi_angle(angle):
    """``phi`` as a function of the angle.

    ``arg**(1/4)`` on ``[0, pi/2]``, zero on ``(-pi/2, 0)`` and, on the left
    half circle, the linear interpolation in the angle between the seam
    values ``(pi/2)**(1/4)`` and ``0``.
    """
    scalar = np.ndim(angle) == 0
    a = np.mod(np.atleast_1d(np.asarray(angle, dtype=float)), TWO_PI)
    out = np.zeros_like(a)
    upper = a <= math.pi / 2
    out[upper] = a[upper] ** 0.25
    left = (a > math.pi / 2) & (a < 1.5 * math.pi)
    out[left] = SEAM * (1.5 * math.pi - a[left]) / math.pi
    return float(out[0]) if scalar else out


def _branches(a):
    return {
        "root": a ** 0.25 if a >= 0 else math.nan,
        "left": SEAM * (1.5 * math.pi - a) / math.pi,
        "zero": 0.0,
    }


def seam_mismatch() -> float:
    """Largest disagreement of adjacent branch formulas at the three seams."""
    pairs = ((0.0, "root", "zero"), (math.pi / 2, "root", "left"), (1.5 * math.pi, "left", "zero"))
    return max(abs(_branches(a)[b1] - _branches(a)[b2]) for a, b1, b2 in pairs)


def psi_angle(angle):
    return phi_angle(-np.asarray(angle, dtype=float))


def phi(z):
    """``phi`` at unimodular points ``z``."""
    return phi_angle(np.angle(z))


def psi(z):
    """``psi(z) = phi(conj z)``."""
    return phi_angle(-np.angle(z))


def _blocks(n, block):
    return [slice(s, min(s + block, n)) for s in range(0, n, block)]


def _map_blocks(fn, n, block, threads):
    blocks = _blocks(n, block)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return blocks, list(ex.map(fn, blocks))
    return blocks, [fn(b) for b in blocks]


def _difference_operator(vals, mu, kernel_of_angle, block, threads):
    f = np.asarray(vals)
    if f.shape != (len(mu),):
        raise ValueError(f"expected {len(mu)} values, got shape {f.shape}")
    th, w = mu.angles, mu.weights
    fw = f * w

    def run(sl):
        K = kernel_of_angle(th[sl, None] - th[None, :])
        return K @ fw - f[sl] * (K @ w)

    blocks, parts = _map_blocks(run, len(mu), block, threads)
    return np.concatenate(parts)


def apply_P(vals, mu: AtomicMeasure, r: float, block: int = 512, threads: int = 1) -> np.ndarray:
    """``(P_r phi)(z) = sum_xi (phi(xi) - phi(z)) Poisson_r(conj(xi) z) w_xi`` at every atom."""
    r = _radius(r)

    def kern(t):
        s = np.sin(t / 2.0)
        return (1.0 - r * r) / ((1.0 - r) ** 2 + 4.0 * r * s * s)

    return _difference_operator(vals, mu, kern, block, threads)


def apply_C(vals, mu: AtomicMeasure, r: float, block: int = 512, threads: int = 1) -> np.ndarray:
    """Cauchy-kernel analogue of :func:`apply_P` (complex valued)."""
    r = _radius(r)

    def kern(t):
        return 1.0 / (1.0 - r * np.exp(1j * t))

    return _difference_operator(np.asarray(vals, dtype=complex), mu, kern, block, threads)


def l2_norm(vals, mu: AtomicMeasure) -> float:
    return math.sqrt(float(np.dot(np.abs(vals) ** 2, mu.weights)))


def derived_bound(m: int) -> float:
    """``2**(m/2) / (100 m**4)``: the lower bound the construction actually yields."""
    return 2.0 ** (m / 2) / (100.0 * m ** 4)


def paper_bound(m: int) -> float:
    """``2**m / (100 m**4)``, the steeper rate listed next to the derived one."""
    return 2.0 ** m / (100.0 * m ** 4)


@dataclass
class DivergenceRow:
    m: int
    r: float
    pairing: float
    norm_Pr_phi: float
    derived_bound: float
    paper_bound: float
    cancellation_pairing: float

    @property
    def above_derived_bound(self) -> bool:
        return self.pairing >= self.derived_bound


@dataclass
class DivergenceTable:
    rows: list[DivergenceRow]
    atoms: int
    psi_norm: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "r", "pairing", "norm_Pr_phi", "derived_bound", "paper_bound"])
        for row in self.rows:
            w.writerow([row.m] + [f"{x:.17g}" for x in (
                row.r, row.pairing, row.norm_Pr_phi, row.derived_bound, row.paper_bound)])
        return buf.getvalue()

    def to_dat(self) -> str:
        return "".join(f"{row.m} {row.pairing:.17g}\n" for row in self.rows)

    def pairing(self, m: int) -> float:
        return next(row.pairing for row in self.rows if row.m == m)


def check_resolution(spec: LemmaLostSpec, m_max: int) -> None:
    if spec.k_max < m_max + 2:
        raise InsufficientResolutionError(f"k_max = {spec.k_max} < m_max + 2 = {m_max + 2}")
    limit = 2.0 ** (-m_max - 2)
    coarse = [k for k, *_ in spec.arcs() if spec.cell_width(k) > limit * (1 + 1e-12)]
    if coarse:
        raise InsufficientResolutionError(
            f"atom spacing on arcs {coarse} exceeds 2**-(m_max+2) = {limit:g}")


def divergence_experiment(spec: LemmaLostSpec, m_range: Sequence[int], block: int = 256,
                          threads: int = 1) -> DivergenceTable:
    """Pairings ``(P_{r_m} phi, psi)`` and norms ``||P_{r_m} phi||`` for ``r_m = 1 - 2**-m``.

    All radii are handled in a single sweep over row blocks so the angular
    part of the kernel is computed once.  Row blocks are reduced in order,
    so the result does not depend on ``threads``.
    """
    m_range = [int(m) for m in m_range]
    if not m_range or min(m_range) < 1:
        raise ParameterOutOfRange("m values must be positive integers")
    check_resolution(spec, max(m_range))
    mu = lemma_lost_measure(spec)
    th, w = mu.angles, mu.weights
    f, g = phi_angle(th), psi_angle(th)
    fw = f * w
    radii = [1.0 - 2.0 ** (-m) for m in m_range]

    def run(sl):
        s = np.sin((th[sl, None] - th[None, :]) / 2.0)
        S = 4.0 * s * s
        out = np.empty((len(radii), 2, sl.stop - sl.start))
        for q, r in enumerate(radii):
            P = (1.0 - r * r) / ((1.0 - r) ** 2 + r * S)
            conv_f = P @ fw
            out[q, 0] = conv_f - f[sl] * (P @ w)
            out[q, 1] = conv_f
        return out

    blocks, parts = _map_blocks(run, len(mu), block, threads)
    Pphi = np.concatenate([p[:, 0] for p in parts], axis=1)
    conv = np.concatenate([p[:, 1] for p in parts], axis=1)
    gw = g * w
    rows = []
    for q, (m, r) in enumerate(zip(m_range, radii)):
        rows.append(DivergenceRow(
            m=m,
            r=r,
            pairing=float(np.dot(Pphi[q], gw)),
            norm_Pr_phi=l2_norm(Pphi[q], mu),
            derived_bound=derived_bound(m),
            paper_bound=paper_bound(m),
            cancellation_pairing=float(np.dot(conv[q], gw)),
        ))
    return DivergenceTable(rows, len(mu), l2_norm(g, mu))


def restricted_pairing(spec: LemmaLostSpec, m: int) -> float:
    """Double sum of ``phi(xi) psi(z) Poisson`` over ``xi in I_m``, ``z in I_{-m}`` only.

    Every omitted term is nonnegative, so this lower-bounds the full pairing.
    """
    r = 1.0 - 2.0 ** (-m)
    arcs = {k: (c, d, n) for k, c, d, n in spec.arcs()}

    def atoms(k):
        c, d, n = arcs[k]
        return c - d + (2 * np.arange(n) + 1) * d / n, np.full(n, 1.0 / (n * k * k))

    xa, xw = atoms(m)
    za, zw = atoms(-m)
    total = 0.0
    for i in range(xa.size):
        s = np.sin((za - xa[i]) / 2.0)
        kern = (1.0 - r * r) / ((1.0 - r) ** 2 + 4.0 * r * s * s)
        total += float(phi_angle(np.array([xa[i]]))[0]) * xw[i] * float(np.dot(psi_angle(za) * zw, kern))
    return total

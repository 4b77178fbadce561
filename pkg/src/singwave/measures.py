"""Finite atomic measures on the unit circle.

Atoms are stored by angle (radians, normalized into ``[0, 2*pi)``) together
with strictly positive weights.  Such measures stand in for the singular,
non-atomic measures of the theory: every statement about them is either an
exact finite identity or a trend observed across refinements.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    ArcConditionViolated,
    DuplicateAtomError,
    EmptyRestrictionError,
    EvaluationFailure,
    LevelTooLargeError,
    NonpositiveWeightError,
    ParameterOutOfRange,
)

TWO_PI = 2.0 * math.pi
ATOM_TOL = 1e-14
MAX_CANTOR_LEVEL = 20


def normalize_angle(angle):
    """Map angles into ``[0, 2*pi)``; works on scalars and arrays."""
    a = np.mod(np.asarray(angle, dtype=float), TWO_PI)
    # np.mod can return exactly 2*pi for tiny negative inputs
    a = np.where(a >= TWO_PI, 0.0, a)
    return a if a.ndim else float(a)


def circular_gaps(angles: np.ndarray) -> np.ndarray:
    """Gaps between consecutive atoms around the circle, including wrap-around."""
    s = np.sort(np.asarray(angles, dtype=float))
    if s.size < 2:
        return np.array([TWO_PI])
    return np.diff(np.append(s, s[0] + TWO_PI))


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many distinct atoms on the circle with positive weights."""

    angles: np.ndarray
    weights: np.ndarray
    label: str = ""
    min_gap: float = field(default=TWO_PI, compare=False)

    def __post_init__(self):
        for arr in (self.angles, self.weights):
            arr.setflags(write=False)

    def __len__(self):
        return self.angles.size

    @property
    def points(self) -> np.ndarray:
        """Atoms as unimodular complex numbers."""
        return np.exp(1j * self.angles)

    @property
    def total_mass(self) -> float:
        return float(math.fsum(self.weights))

    @property
    def sqrt_weights(self) -> np.ndarray:
        return np.sqrt(self.weights)

    def same_support(self, other: "AtomicMeasure") -> bool:
        return (
            self is other
            or (
                len(self) == len(other)
                and np.array_equal(self.angles, other.angles)
                and np.array_equal(self.weights, other.weights)
            )
        )

    def to_dict(self) -> dict:
        order = np.argsort(self.angles, kind="stable")
        return {
            "label": self.label,
            "atoms": [
                {"angle": float(self.angles[i]), "weight": float(self.weights[i])}
                for i in order
            ],
        }

    def __repr__(self):
        return (
            f"AtomicMeasure(label={self.label!r}, atoms={len(self)}, "
            f"total_mass={self.total_mass:.12g}, min_gap={self.min_gap:.3g})"
        )


def make_atomic(angles: Sequence[float], weights: Sequence[float], label: str = "") -> AtomicMeasure:
    """Validate and build an :class:`AtomicMeasure`.

    Raises
    ------
    DuplicateAtomError
        If two normalized angles are within ``1e-14`` of each other (circularly).
    NonpositiveWeightError
        If any weight is not strictly positive.
    """
    a = np.atleast_1d(normalize_angle(np.asarray(angles, dtype=float))).astype(float)
    w = np.atleast_1d(np.asarray(weights, dtype=float)).copy()
    if a.ndim != 1 or a.shape != w.shape:
        raise ValueError("angles and weights must be 1-d sequences of equal length")
    if a.size == 0:
        raise ValueError("a measure needs at least one atom")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise NonpositiveWeightError("all weights must be finite and strictly positive")
    gaps = circular_gaps(a)
    gap = float(gaps.min())
    if a.size > 1 and gap <= ATOM_TOL:
        raise DuplicateAtomError(f"two atoms closer than {ATOM_TOL:g} (gap {gap:.3g})")
    return AtomicMeasure(a.copy(), w, label, gap)


def dirac(angle: float = 0.0, label: str = "") -> AtomicMeasure:
    return make_atomic([angle], [1.0], label or f"delta({angle:g})")


def uniform_measure(n: int, label: str = "") -> AtomicMeasure:
    """``n`` equally spaced atoms starting at angle 0, each of mass ``1/n``."""
    if n < 1:
        raise ParameterOutOfRange("n must be positive")
    return make_atomic(TWO_PI * np.arange(n) / n, np.full(n, 1.0 / n), label or f"uniform-{n}")


def cantor_measure(level: int) -> AtomicMeasure:
    """Level-``level`` middle-thirds approximation of the Cantor measure.

    Atoms sit at the left endpoints of the ``2**level`` surviving intervals of
    ``[0, 1)``, mapped to angles ``2*pi*x``; each carries mass ``2**-level``.
    """
    if level < 0:
        raise ParameterOutOfRange("level must be nonnegative")
    if level > MAX_CANTOR_LEVEL:
        raise LevelTooLargeError(f"level {level} exceeds {MAX_CANTOR_LEVEL}")
    x = np.zeros(1)
    for i in range(1, level + 1):
        x = np.concatenate([x, x + 2.0 * 3.0 ** (-i)])
    x.sort()
    return make_atomic(TWO_PI * x, np.full(x.size, 2.0 ** (-level)), f"cantor-{level}")


def evaluate(f, mu: AtomicMeasure) -> np.ndarray:
    """Values of a circle function at the atoms of ``mu``.

    ``f`` is either a callable taking an array of unimodular complex points or
    an array of values already aligned with the atoms.
    """
    try:
        if callable(f):
            vals = np.asarray(f(mu.points))
        else:
            vals = np.asarray(f)
        vals = np.broadcast_to(vals, (len(mu),)).copy()
    except Exception as exc:  # noqa: BLE001 - any failure of user code
        raise EvaluationFailure(f"could not evaluate function on {mu.label!r}: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise EvaluationFailure("function is not finite at every atom")
    return vals


def mean(f, mu: AtomicMeasure) -> complex:
    """Integral of ``f`` against ``mu``: ``sum_j f(zeta_j) w_j``."""
    vals = evaluate(f, mu)
    return complex(np.dot(vals, mu.weights))


def restrict(mu: AtomicMeasure, keep: Callable[[float], bool]) -> AtomicMeasure:
    """Sub-measure of the atoms whose angle satisfies ``keep``; weights unchanged."""
    idx = kept_indices(mu, keep)
    return AtomicMeasure(
        mu.angles[idx].copy(), mu.weights[idx].copy(), f"{mu.label}|restricted",
        float(circular_gaps(mu.angles[idx]).min()),
    )


def kept_indices(mu: AtomicMeasure, keep: Callable[[float], bool]) -> np.ndarray:
    idx = np.array([i for i, a in enumerate(mu.angles) if keep(float(a))], dtype=int)
    if idx.size == 0:
        raise EmptyRestrictionError("no atom satisfies the predicate")
    return idx


# --- measure files ---------------------------------------------------------

def measure_to_json(mu: AtomicMeasure) -> str:
    return json.dumps(mu.to_dict(), indent=1)


def measure_from_dict(data: Mapping) -> AtomicMeasure:
    atoms = data["atoms"]
    return make_atomic(
        [float(a["angle"]) for a in atoms],
        [float(a["weight"]) for a in atoms],
        str(data.get("label", "")),
    )


def save_measure(mu: AtomicMeasure, path) -> None:
    Path(path).write_text(measure_to_json(mu) + "\n", encoding="utf-8")


def load_measure(path) -> AtomicMeasure:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return measure_from_dict(data)


# --- the arc construction behind the divergence counterexample --------------

def arc_center(k: int) -> float:
    """Signed angle of the arc center ``exp(sgn(k) 2**-|k| i)``."""
    return math.copysign(2.0 ** (-abs(k)), k)


def default_half_width(k: int) -> float:
    return 2.0 ** (-abs(k) - 2)


def _arc_indices(k_max: int) -> list[int]:
    return [k for k in range(-k_max, k_max + 1) if k != 0]


@dataclass(frozen=True)
class LemmaLostSpec:
    """Arcs ``I_k`` (``0 < |k| <= k_max``) with half-widths and atom counts."""

    k_max: int
    half_widths: Mapping[int, float]
    atoms_per_arc: Mapping[int, int]

    @classmethod
    def uniform(cls, k_max: int, atoms: int = 1, half_width=default_half_width) -> "LemmaLostSpec":
        ks = _arc_indices(k_max)
        hw = half_width if callable(half_width) else (lambda k: float(half_width))
        return cls(k_max, {k: float(hw(k)) for k in ks}, {k: int(atoms) for k in ks})

    @classmethod
    def adaptive(cls, k_max: int, m_max: int) -> "LemmaLostSpec":
        """Default widths; ``2**max(0, m_max + 2 - |k|)`` atoms on ``I_k``.

        Cells then have width at most ``2**(-m_max - 3)``, enough to resolve the
        Poisson kernel at ``r = 1 - 2**-m_max``.
        """
        ks = _arc_indices(k_max)
        return cls(
            k_max,
            {k: default_half_width(k) for k in ks},
            {k: 2 ** max(0, m_max + 2 - abs(k)) for k in ks},
        )

    def arcs(self):
        for k in _arc_indices(self.k_max):
            yield k, arc_center(k), float(self.half_widths[k]), int(self.atoms_per_arc[k])

    def cell_width(self, k: int) -> float:
        return 2.0 * self.half_widths[k] / self.atoms_per_arc[k]


@dataclass
class ArcRow:
    k: int
    phi_margin: float
    psi_margin: float
    chord_margin: float
    in_right_half: bool

    @property
    def passed(self) -> bool:
        return (
            self.phi_margin >= -1e-15
            and self.psi_margin >= -1e-15
            and self.chord_margin >= -1e-15
            and self.in_right_half
        )


@dataclass
class ValidationReport:
    rows: list[ArcRow]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self) -> list[ArcRow]:
        return [r for r in self.rows if not r.passed]


def _min_on_arc(f, lo: float, hi: float) -> float:
    # f is monotone between the breakpoints 0, +-pi/2, pi, so its minimum on
    # [lo, hi] is attained at an endpoint or a breakpoint.
    cands = [lo, hi, 0.5 * (lo + hi)]
    for b in (-math.pi, -math.pi / 2, 0.0, math.pi / 2, math.pi):
        for shift in (-TWO_PI, 0.0, TWO_PI):
            if lo <= b + shift <= hi:
                cands.append(b + shift)
    return float(np.min(f(np.array(cands))))


def validate_arc_conditions(spec: LemmaLostSpec) -> ValidationReport:
    """Worst-case margins of the arc conditions, one row per arc index ``k``.

    ``phi_margin``/``psi_margin`` are ``min_{I_k} f - f(a_k)/2`` for the two
    counterexample functions; ``chord_margin`` is ``2**(2-|k|)`` minus the
    largest distance between points of ``I_k`` and ``I_{-k}``.
    """
    from .counterexample import phi_angle, psi_angle

    rows = []
    for k, c, d, _ in spec.arcs():
        lo, hi = c - d, c + d
        phi_m = _min_on_arc(phi_angle, lo, hi) - 0.5 * float(phi_angle(np.array([c]))[0])
        psi_m = _min_on_arc(psi_angle, lo, hi) - 0.5 * float(psi_angle(np.array([c]))[0])
        d_mirror = spec.half_widths[-k]
        spread = 2.0 * abs(c) + d + d_mirror
        chord = 2.0 * math.sin(min(spread, math.pi) / 2.0)
        chord_m = 2.0 ** (2 - abs(k)) - chord
        in_half = abs(c) + d <= math.pi / 2
        rows.append(ArcRow(k, phi_m, psi_m, chord_m, in_half))
    return ValidationReport(rows)


def lemma_lost_measure(spec: LemmaLostSpec) -> AtomicMeasure:
    """``sum_k k**-2 mu_k`` with ``mu_k`` equally spaced equal atoms on ``I_k``.

    Atoms of ``I_k`` sit at the midpoints of ``n_k`` equal cells of the arc,
    so a single atom sits at the arc center.
    """
    report = validate_arc_conditions(spec)
    if not report.passed:
        bad = ", ".join(str(r.k) for r in report.failures())
        raise ArcConditionViolated(f"arc conditions fail for k = {bad}")
    angles, weights = [], []
    for k, c, d, n in spec.arcs():
        angles.append(c - d + (2 * np.arange(n) + 1) * d / n)
        weights.append(np.full(n, 1.0 / (n * k * k)))
    return make_atomic(
        np.concatenate(angles), np.concatenate(weights), f"lemma-lost-k{spec.k_max}"
    )

"""Summation (averaging) methods and their weight rows.

A method assigns to every parameter ``alpha`` a row of nonnegative weights
``p[alpha, n]`` summing to one.  The rows used here are finite: Cesaro rows
are finite by construction, Abel-Poisson rows are truncated once the
remaining geometric tail falls below a caller-supplied bound, and the
truncated mass is carried along so that downstream errors can be certified.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import NotUnimodularError, ParameterOutOfRange

ROW_SUM_TOL = 1e-12
DEFAULT_TAIL_BOUND = 1e-13


@dataclass(frozen=True)
class WeightSequence:
    """Weights ``p_0..p_N`` plus the mass of the discarded indices ``n > N``."""

    weights: np.ndarray
    tail: float = 0.0

    def __post_init__(self):
        self.weights.setflags(write=False)

    def __len__(self):
        return self.weights.size

    @property
    def N(self) -> int:
        return self.weights.size - 1

    @property
    def mass(self) -> float:
        return math.fsum(self.weights)


def cesaro_weights(alpha: int) -> WeightSequence:
    """Arithmetic means: ``p_n = 1/alpha`` for ``n < alpha``."""
    if int(alpha) != alpha or alpha < 1:
        raise ParameterOutOfRange(f"Cesaro parameter must be a positive integer, got {alpha!r}")
    alpha = int(alpha)
    return WeightSequence(np.full(alpha, 1.0 / alpha), 0.0)


def abel_length(r: float, tail_bound: float) -> int:
    """Smallest ``N`` with ``r**(N+1) <= tail_bound``."""
    n = max(0, math.ceil(math.log(tail_bound) / math.log(r)) - 1)
    # guard the logarithm against rounding in either direction
    while n > 0 and r ** n <= tail_bound:
        n -= 1
    while r ** (n + 1) > tail_bound:
        n += 1
    return n


def abel_weights(r: float, tail_bound: float = DEFAULT_TAIL_BOUND) -> WeightSequence:
    """Truncated Abel-Poisson row ``p_n = (1 - r) r**n``, ``n = 0..N``.

    ``N`` is the smallest index with ``r**(N+1) <= tail_bound``; the declared
    tail is exactly ``r**(N+1)``.
    """
    if not 0.0 < r < 1.0:
        raise ParameterOutOfRange(f"Abel parameter must lie in (0, 1), got {r!r}")
    if not 0.0 < tail_bound < 1.0:
        raise ParameterOutOfRange(f"tail bound must lie in (0, 1), got {tail_bound!r}")
    n = abel_length(r, tail_bound)
    return WeightSequence((1.0 - r) * r ** np.arange(n + 1, dtype=float), r ** (n + 1))


@dataclass(frozen=True)
class SummationMethod:
    """An averaging scheme: ``cesaro``, ``abel`` or an explicit ``table``.

    For ``table`` the rows are supplied as a mapping ``parameter -> weights``;
    the ordered parameter set is simply the sorted keys.
    """

    kind: str
    tail_bound: float = DEFAULT_TAIL_BOUND
    table: Mapping[float, Sequence[float]] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("cesaro", "abel", "table"):
            raise ValueError(f"unknown summation method {self.kind!r}")
        if self.kind == "table":
            if not self.table:
                raise ValueError("a table method needs rows")
            for key, row in self.table.items():
                row = np.asarray(row, dtype=float)
                if np.any(row < 0) or abs(math.fsum(row) - 1.0) > ROW_SUM_TOL:
                    raise ValueError(f"row {key!r} is not a probability vector")

    @classmethod
    def cesaro(cls):
        return cls("cesaro")

    @classmethod
    def abel(cls, tail_bound: float = DEFAULT_TAIL_BOUND):
        return cls("abel", tail_bound)

    @classmethod
    def custom(cls, table: Mapping[float, Sequence[float]]):
        return cls("table", table=dict(table))

    def weights(self, alpha) -> WeightSequence:
        if self.kind == "cesaro":
            return cesaro_weights(alpha)
        if self.kind == "abel":
            return abel_weights(alpha, self.tail_bound)
        try:
            row = self.table[alpha]
        except KeyError:
            raise ParameterOutOfRange(f"no row for parameter {alpha!r}") from None
        return WeightSequence(np.array(row, dtype=float), 0.0)


def total_variation(ws: WeightSequence) -> float:
    """Total variation of the row extended by zeros on both sides.

    Includes the jump onto ``p_0`` and the drop after ``p_N``; for a
    nonincreasing row this is ``2 p_0``.
    """
    p = np.concatenate([[0.0], ws.weights, [0.0]])
    return math.fsum(np.abs(np.diff(p)))


def forward_variation(ws: WeightSequence) -> float:
    """``sum_{n >= 0} |p_n - p_{n+1}|`` with the row padded by zeros on the right."""
    p = np.concatenate([ws.weights, [0.0]])
    return math.fsum(np.abs(np.diff(p)))


@dataclass
class PropertyReport:
    kind: str
    grid: list
    row_sum_deviation: list
    variation: list
    forward_variation: list
    leading_weights: list
    variation_decreasing: bool
    leading_weight_decreasing: bool

    @property
    def axiom1(self) -> bool:
        return max(self.row_sum_deviation) <= ROW_SUM_TOL

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1)


def check_s_regular(method: SummationMethod, grid: Sequence) -> PropertyReport:
    """Finite-grid evidence for the three defining axioms.

    Axiom 1 is checked per row (``|sum p + tail - 1|``); axioms 2 and 3 become
    trends along the ascending grid: the total variation and the largest of
    the first ten weights must not increase.
    """
    if len(grid) == 0:
        raise ValueError("grid must be nonempty")
    dev, var, fvar, lead = [], [], [], []
    for alpha in grid:
        ws = method.weights(alpha)
        dev.append(abs(ws.mass + ws.tail - 1.0))
        var.append(total_variation(ws))
        fvar.append(forward_variation(ws))
        head = np.zeros(10)
        m = min(10, len(ws))
        head[:m] = ws.weights[:m]
        lead.append(head.tolist())
    peaks = [max(row) for row in lead]
    return PropertyReport(
        kind=method.kind,
        grid=list(grid),
        row_sum_deviation=dev,
        variation=var,
        forward_variation=fvar,
        leading_weights=lead,
        variation_decreasing=bool(np.all(np.diff(var) <= 1e-15)),
        leading_weight_decreasing=bool(np.all(np.diff(peaks) <= 1e-15)),
    )


def geometric_average(ws: WeightSequence, z):
    """``sum_n p_n z**n`` for unimodular ``z`` (scalar or array), by Horner's rule."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1.0) > 1e-12):
        raise NotUnimodularError("geometric averages are taken at unimodular points")
    acc = np.zeros(z.shape, dtype=complex)
    for p in ws.weights[::-1]:
        acc = acc * z + p
    return acc if acc.ndim else complex(acc)


def average_sequence(ws: WeightSequence, x: Sequence) -> complex:
    """Average of a (long enough) scalar sequence ``x_n`` with the row weights."""
    x = np.asarray(x)
    if x.size < len(ws):
        raise ValueError("sequence shorter than the weight row")
    return np.dot(ws.weights, x[: len(ws)])

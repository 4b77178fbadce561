"""Averaged wave operators of unitary operators with singular spectrum,
studied on finite atomic models of singular measures on the unit circle."""

from .measures import (
    AtomicMeasure,
    LemmaLostSpec,
    cantor_measure,
    lemma_lost_measure,
    load_measure,
    make_atomic,
    save_measure,
)
from .summation import SummationMethod, WeightSequence, abel_weights, cesaro_weights

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "LemmaLostSpec",
    "SummationMethod",
    "WeightSequence",
    "abel_weights",
    "cantor_measure",
    "cesaro_weights",
    "lemma_lost_measure",
    "load_measure",
    "make_atomic",
    "save_measure",
]

"""Named circle functions used by the experiments.

Selectors are short strings:

``const:<v>``          the constant ``v``
``coord``              ``z -> z``
``random-trig:<d>``    seeded real trigonometric polynomial of degree ``d``
``lemma-lost-phi``     the counterexample symbol ``phi``
``lemma-lost-psi``     its mirror ``psi``
``file:<path>``        JSON list of values aligned with the atoms
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .counterexample import phi, psi

DEFAULT_TRIG_DEGREE = 5


def coord(z):
    return np.asarray(z, dtype=complex)


def constant(v):
    return lambda z: np.full(np.shape(z), v)


def random_trig(degree: int = DEFAULT_TRIG_DEGREE, seed: int = 0):
    """``a_0 + sum_k (a_k cos k t + b_k sin k t) / k`` with standard normal coefficients."""
    rng = np.random.default_rng(seed)
    a0 = rng.standard_normal()
    a = rng.standard_normal(degree)
    b = rng.standard_normal(degree)
    k = np.arange(1, degree + 1)

    def f(z):
        t = np.angle(np.asarray(z))[..., None]
        return a0 + np.sum((a * np.cos(k * t) + b * np.sin(k * t)) / k, axis=-1)

    return f


def _file_values(path):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    vals = data["values"] if isinstance(data, dict) else data
    out = []
    for v in vals:
        out.append(complex(v[0], v[1]) if isinstance(v, (list, tuple)) else v)
    return np.asarray(out)


def select(spec: str, seed: int = 0):
    """Resolve a selector string into a callable or an array of values."""
    name, _, arg = spec.partition(":")
    if name == "const":
        return constant(complex(arg) if "j" in arg else float(arg))
    if name == "coord":
        return coord
    if name == "random-trig":
        return random_trig(int(arg) if arg else DEFAULT_TRIG_DEGREE, seed)
    if name == "lemma-lost-phi":
        return phi
    if name == "lemma-lost-psi":
        return psi
    if name == "file":
        return _file_values(arg)
    raise ValueError(f"unknown function selector {spec!r}")

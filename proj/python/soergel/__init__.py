"""Exact Soergel bimodule and Rouquier complex computations.

Every report function returns the same versioned record structure the
command-line tool prints with ``--format json``.
"""

import json

from . import _soergel
from ._soergel import CoxeterSystem, Timeout, graded_dim

__all__ = [
    "CoxeterSystem",
    "Timeout",
    "graded_dim",
    "rouquier_formula",
    "delta_exact",
    "almostsplit",
    "cohomology",
    "characters",
    "homdim",
]


def rouquier_formula(type, x="all", y="all", i_range=(-4, 4), d_range=(-2, 12), jobs=1, timeout_per_cell=0.0):
    return json.loads(_soergel.rouquier_formula(type, x, y, tuple(i_range), tuple(d_range), jobs, timeout_per_cell))


def delta_exact(type, w="all", complex="F", side=""):
    return json.loads(_soergel.delta_exact(type, w, complex, side))


def almostsplit(type, x="all"):
    return json.loads(_soergel.almostsplit(type, x))


def cohomology(type, word):
    return json.loads(_soergel.cohomology(type, word))


def characters(type, word):
    return json.loads(_soergel.characters(type, word))


def homdim(type, a, b, i_range=(-4, 4), d_range=(-2, 12)):
    return json.loads(_soergel.homdim(type, a, b, tuple(i_range), tuple(d_range)))

"""Exact weighted tensor products: Hurwitz series, species, q-charades and graphs."""

from __future__ import annotations

from .exactmath import LAM, ONE, ZERO, QParam, RingPoly, gauss_multinomial, multinomial, phi
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LAM",
    "ONE",
    "ZERO",
    "QParam",
    "RingPoly",
    "gauss_multinomial",
    "multinomial",
    "phi",
]

"""Order-0/1 ordered statistics post-processing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..gf2 import BinaryMatrix
from .engine import _q2b, osd1_kernel


@dataclass(frozen=True)
class OsdResult:
    error: np.ndarray
    cost_order0: float
    cost: float


def osd1(H_bin: BinaryMatrix | np.ndarray, reliabilities, s) -> np.ndarray:
    """Return ``e`` with ``H e = s``.

    ``reliabilities[j] = log(P(e_j = 0) / P(e_j = 1))``; low values are likely
    errors and are sorted first.  Order 0 fills the pivot positions of the
    sorted system, order 1 additionally tries every single non-pivot flip and
    keeps the cheapest candidate (cost = sum of reliabilities of set bits).
    """
    return osd1_full(H_bin, reliabilities, s).error


def osd1_full(H_bin: BinaryMatrix | np.ndarray, reliabilities, s) -> OsdResult:
    H = H_bin.to_dense() if isinstance(H_bin, BinaryMatrix) else np.asarray(H_bin, dtype=np.uint8)
    w = np.asarray(reliabilities, dtype=np.float64)
    s = np.asarray(s, dtype=np.uint8)
    if w.shape != (H.shape[1],) or s.shape != (H.shape[0],):
        raise ValueError("dimension mismatch in OSD input")
    e, c0, c1, ok = osd1_kernel(np.ascontiguousarray(H, dtype=np.uint8), w, s)
    if not ok:
        raise ValueError("inconsistent syndrome passed to OSD")
    return OsdResult(e, float(c0), float(c1))


def symplectic_reliabilities(gamma: np.ndarray) -> np.ndarray:
    """Per-bit reliabilities for the joint system ``[H0 0; 0 H1] (e_z, e_x) = s``."""
    g = np.asarray(gamma, dtype=np.float64)
    n = g.shape[0]
    w = np.empty(2 * n)
    for v in range(n):
        w[v] = _q2b(g[v, 0], g[v, 1], g[v, 2], 0)
        w[n + v] = _q2b(g[v, 0], g[v, 1], g[v, 2], 1)
    return w

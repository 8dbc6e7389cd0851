"""Scalar message rules shared by all decoders.

Pauli codes: 0 = I, 1 = X, 2 = Y, 3 = Z.  Quaternary LLR arrays have shape
``(n, 3)`` with columns ``X, Y, Z`` and entries ``log P(I) / P(W)``.
"""

from __future__ import annotations

import math

import numpy as np

PAULI_CHARS = "IXYZ"


def init_priors(eps: float, n: int) -> np.ndarray:
    """Depolarizing priors ``log((1 - eps) / (eps / 3))`` for every qubit and Pauli."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    lam = math.log((1.0 - eps) / (eps / 3.0))
    return np.full((n, 3), lam, dtype=np.float64)


def _boxplus2(a: float, b: float) -> float:
    if a == math.inf:
        return b
    if b == math.inf:
        return a
    s = 1.0 if (a >= 0) == (b >= 0) else -1.0
    return s * min(abs(a), abs(b)) + math.log1p(math.exp(-abs(a + b))) - math.log1p(math.exp(-abs(a - b)))


def boxplus(values) -> float:
    """``2 atanh(prod tanh(a_i / 2))`` evaluated pairwise in a saturation-free form.

    The empty combination is ``+inf``.
    """
    out = math.inf
    for v in values:
        out = _boxplus2(out, float(v))
    return out


def _softplus_neg(a: float) -> float:
    """``log(1 + e^-a)``."""
    return max(-a, 0.0) + math.log1p(math.exp(-abs(a)))


def quaternary_to_binary(gx: float, gy: float, gz: float, side: int) -> float:
    """Binary LLR of commuting versus anticommuting with a check of type ``side``
    (0 = X-type, 1 = Z-type)."""
    wi, wbar = (gx, gz) if side == 0 else (gz, gx)
    return _softplus_neg(wi) + min(gy, wbar) - math.log1p(math.exp(-abs(gy - wbar)))


def hard_decision(gamma: np.ndarray) -> np.ndarray:
    """Identity where all three LLRs are positive, else the argmin (ties X < Y < Z)."""
    g = np.asarray(gamma, dtype=np.float64).reshape(-1, 3)
    est = np.argmin(g, axis=1).astype(np.int8) + 1
    est[(g > 0).all(axis=1)] = 0
    return est


def pauli_to_symplectic(est: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    est = np.asarray(est)
    x = ((est == 1) | (est == 2)).astype(np.uint8)
    z = ((est == 2) | (est == 3)).astype(np.uint8)
    return x, z


def symplectic_to_pauli(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int8)
    z = np.asarray(z, dtype=np.int8)
    return (x * (1 + z) + z * 3 * (1 - x)).astype(np.int8)


def pauli_string(est: np.ndarray) -> str:
    return "".join(PAULI_CHARS[int(p)] for p in est)


def soft_weight(est: np.ndarray, priors: np.ndarray) -> float:
    """Sum of prior LLRs ``Lambda_v^W`` over the non-identity positions of ``est``."""
    est = np.asarray(est)
    idx = np.flatnonzero(est)
    return float(priors[idx, est[idx] - 1].sum())

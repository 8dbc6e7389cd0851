"""Depolarizing noise, syndromes and logical-failure classification."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .codes import CssCode
from .gf2 import nullspace


@dataclass(frozen=True)
class PauliError:
    x_part: np.ndarray
    z_part: np.ndarray

    def __post_init__(self):
        if self.x_part.shape != self.z_part.shape:
            raise ValueError("x and z parts differ in length")

    @property
    def n(self) -> int:
        return int(self.x_part.size)

    def __add__(self, other: "PauliError") -> "PauliError":
        return PauliError(self.x_part ^ other.x_part, self.z_part ^ other.z_part)

    def to_pauli(self) -> np.ndarray:
        x, z = self.x_part.astype(np.int8), self.z_part.astype(np.int8)
        return (x * (1 + z) + z * 3 * (1 - x)).astype(np.int8)

    @classmethod
    def from_pauli(cls, codes) -> "PauliError":
        p = np.asarray(codes)
        return cls(((p == 1) | (p == 2)).astype(np.uint8), ((p == 2) | (p == 3)).astype(np.uint8))

    @classmethod
    def identity(cls, n: int) -> "PauliError":
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))


class Outcome(str, Enum):
    SUCCESS = "success"
    LOGICAL_FAILURE = "logical_failure"
    CONVERGENCE_FAILURE = "convergence_failure"


def sample_depolarizing(n: int, eps: float, rng: np.random.Generator) -> PauliError:
    """I.i.d. X, Y, Z with probability ``eps / 3`` each."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    u = rng.random(n)
    p = np.zeros(n, dtype=np.int8)
    p[u < eps] = 3
    p[u < 2 * eps / 3] = 2
    p[u < eps / 3] = 1
    return PauliError.from_pauli(p)


def syndrome(code: CssCode, e: PauliError) -> np.ndarray:
    """``(H0 z, H1 x)``."""
    if e.n != code.n:
        raise ValueError(f"error has length {e.n}, code has n = {code.n}")
    return np.concatenate([code.H0.mul_vec(e.z_part), code.H1.mul_vec(e.x_part)]).astype(np.uint8)


class StabilizerTest:
    """Fast rowspace membership via orthogonality to kernel bases."""

    def __init__(self, code: CssCode):
        self.K0 = nullspace(code.H0).to_dense().astype(np.uint8)  # x in rowspace(H0) iff K0 x = 0
        self.K1 = nullspace(code.H1).to_dense().astype(np.uint8)

    def is_stabilizer(self, r: PauliError) -> bool:
        if self.K0.size and ((self.K0 @ r.x_part) & 1).any():
            return False
        if self.K1.size and ((self.K1 @ r.z_part) & 1).any():
            return False
        return True


_TESTS: dict[int, tuple[CssCode, StabilizerTest]] = {}


def _stabilizer_test(code: CssCode) -> StabilizerTest:
    hit = _TESTS.get(id(code))
    if hit is None or hit[0] is not code:
        hit = (code, StabilizerTest(code))
        _TESTS[id(code)] = hit
    return hit[1]


def classify_outcome(code: CssCode, e: PauliError, e_hat: PauliError, converged: bool) -> Outcome:
    if not converged:
        return Outcome.CONVERGENCE_FAILURE
    r = e + e_hat
    return Outcome.SUCCESS if _stabilizer_test(code).is_stabilizer(r) else Outcome.LOGICAL_FAILURE

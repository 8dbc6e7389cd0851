"""Partitions of check rows into generalized checks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .codes import CssCode, QtMeta
from .gf2 import BinaryMatrix, rank


@dataclass(frozen=True)
class Grouping:
    side: int
    blocks: tuple[tuple[int, ...], ...]
    supports: tuple[np.ndarray, ...]
    local_pcms: tuple[BinaryMatrix, ...]
    label: str = "custom"

    @property
    def r(self) -> int:
        return max((len(b) for b in self.blocks), default=0)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def block_dims(self) -> list[tuple[int, int]]:
        """``(n_c, k_c)`` per block with ``k_c = n_c - rank(H_c)``."""
        return [(p.cols, p.cols - rank(p)) for p in self.local_pcms]

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


@dataclass(frozen=True)
class QuotientTannerGraph:
    check_nodes: tuple[tuple[int, ...], ...]
    variable_nodes: np.ndarray
    adjacency: tuple[np.ndarray, ...]

    def incidence(self) -> BinaryMatrix:
        """Check-by-variable incidence matrix of the quotient graph."""
        n = int(self.variable_nodes.size)
        dense = np.zeros((len(self.adjacency), n), dtype=np.uint8)
        for c, adj in enumerate(self.adjacency):
            dense[c, adj] = 1
        return BinaryMatrix.from_dense(dense)


def make_grouping(H: BinaryMatrix, blocks: Sequence[Sequence[int]], side: int, label: str = "custom") -> Grouping:
    blocks = tuple(tuple(int(i) for i in b) for b in blocks)
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(H.rows)):
        raise ValueError(f"blocks do not partition the {H.rows} rows of H{side}")
    if any(len(b) == 0 for b in blocks):
        raise ValueError("empty block")
    dense = H.to_dense()
    supports, pcms = [], []
    for b in blocks:
        sub = dense[list(b)]
        sup = np.flatnonzero(sub.any(axis=0))
        supports.append(sup)
        pcms.append(BinaryMatrix.from_dense(sub[:, sup]))
    return Grouping(side, blocks, tuple(supports), tuple(pcms), label)


def side_matrix(code: CssCode, side: int) -> BinaryMatrix:
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    return code.H0 if side == 0 else code.H1


def trivial_grouping(H: BinaryMatrix, side: int = 0) -> Grouping:
    return make_grouping(H, [(i,) for i in range(H.rows)], side, "trivial")


def _qt_meta(code: CssCode) -> QtMeta:
    if not isinstance(code.meta, QtMeta):
        raise ValueError("grouping strategy requires quantum Tanner construction metadata")
    return code.meta


def _group_by_local_key(code: CssCode, side: int, key: np.ndarray, label: str) -> Grouping:
    """Combine, within each vertex, the local rows that share the same ``key`` value."""
    meta = _qt_meta(code)
    H = side_matrix(code, side)
    m_loc = meta.local_pcms[side].rows
    n_vertices = H.rows // m_loc if m_loc else 0
    blocks = []
    for v in range(n_vertices):
        for value in dict.fromkeys(key.tolist()):
            blocks.append(tuple(v * m_loc + np.flatnonzero(key == value)))
    return make_grouping(H, blocks, side, label)


def full_grouping(code: CssCode) -> tuple[Grouping, Grouping]:
    """One generalized check per vertex holding all of its local rows."""
    meta = _qt_meta(code)
    out = []
    for side in (0, 1):
        m_loc = meta.local_pcms[side].rows
        out.append(_group_by_local_key(code, side, np.zeros(m_loc, dtype=np.int64), "full"))
    return out[0], out[1]


def partial_grouping(code: CssCode, axis: str) -> tuple[Grouping, Grouping]:
    """Combine local rows sharing one factor row.

    ``axis="A"``: on side 1 (local PCM ``H_A x H_B``) rows sharing an ``H_A`` row;
    on side 0 (``H_A^perp x H_B^perp``) rows sharing an ``H_B^perp`` row.  Both
    produce blocks of ``k_A`` rows.  ``axis="B"`` is the mirror image with
    blocks of ``k_B`` rows.
    """
    meta = _qt_meta(code)
    if axis not in ("A", "B"):
        raise ValueError("axis must be 'A' or 'B'")
    fr0, fr1 = meta.local_factor_rows
    if axis == "A":
        keys = (fr0[:, 1], fr1[:, 0])
    else:
        keys = (fr0[:, 0], fr1[:, 1])
    label = f"partial:{axis}"
    return (
        _group_by_local_key(code, 0, keys[0], label),
        _group_by_local_key(code, 1, keys[1], label),
    )


def block_sizes(m: int, r: int) -> list[int]:
    """Block-size multiset ``{r, ..., r, r-1, ..., r-1}`` summing to ``m``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if m == 0:
        return []
    n_blocks = -(-m // r)
    short = n_blocks * r - m
    if short > n_blocks or (r == 1 and short):
        raise ValueError(f"no decomposition of m = {m} into blocks of size {r} and {r - 1}")
    return [r] * (n_blocks - short) + [r - 1] * short


def greedy_blocks(H: BinaryMatrix, r: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    """Overlap-greedy check combining.

    Each block starts at a uniformly random remaining row, then repeatedly adds
    the remaining row with the largest integer overlap with the OR of the block
    so far (lowest row index on ties).
    """
    sizes = block_sizes(H.rows, r)
    dense = H.to_dense().astype(np.int64)
    remaining = list(range(H.rows))
    blocks = []
    for b in sizes:
        start = remaining.pop(int(rng.integers(len(remaining))))
        block = [start]
        g = dense[start].copy()
        for _ in range(b - 1):
            scores = dense[remaining] @ g
            j = int(np.argmax(scores))  # first maximum = lowest remaining index
            row = remaining.pop(j)
            block.append(row)
            g |= dense[row]
        blocks.append(tuple(block))
    return blocks


def greedy_grouping(H: BinaryMatrix, r: int, seed: int | np.random.Generator = 0, side: int = 0) -> Grouping:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return make_grouping(H, greedy_blocks(H, r, rng), side, f"greedy:{r}")


def local_greedy_grouping(code: CssCode, r: int, seed: int = 0) -> tuple[Grouping, Grouping]:
    """Greedy grouping of the local PCM, replicated over every local view."""
    meta = _qt_meta(code)
    rng = np.random.default_rng(seed)
    out = []
    for side in (0, 1):
        L = meta.local_pcms[side]
        pattern = greedy_blocks(L, r, rng)
        H = side_matrix(code, side)
        n_vertices = H.rows // L.rows
        blocks = [tuple(v * L.rows + i for i in b) for v in range(n_vertices) for b in pattern]
        out.append(make_grouping(H, blocks, side, f"local-greedy:{r}"))
    return out[0], out[1]


def quotient_tanner_graph(H: BinaryMatrix, g: Grouping) -> QuotientTannerGraph:
    flat = sorted(i for b in g.blocks for i in b)
    if flat != list(range(H.rows)):
        raise ValueError("grouping does not partition the rows of H")
    dense = H.to_dense()
    adjacency = tuple(np.flatnonzero(dense[list(b)].any(axis=0)) for b in g.blocks)
    return QuotientTannerGraph(g.blocks, np.arange(H.cols), adjacency)


def make_groupings(code: CssCode, strategy: str, seed: int = 0) -> tuple[Grouping, Grouping]:
    """Resolve a strategy string: ``trivial``, ``full``, ``partial:A``, ``partial:B``,
    ``greedy:<r>``, ``local-greedy:<r>`` or ``file:<path>``."""
    if strategy == "trivial":
        return trivial_grouping(code.H0, 0), trivial_grouping(code.H1, 1)
    if strategy == "full":
        return full_grouping(code)
    if strategy.startswith("partial:"):
        return partial_grouping(code, strategy.split(":", 1)[1])
    if strategy.startswith("greedy:"):
        r = int(strategy.split(":", 1)[1])
        rng = np.random.default_rng(seed)
        return (greedy_grouping(code.H0, r, rng, 0), greedy_grouping(code.H1, r, rng, 1))
    if strategy.startswith("local-greedy:"):
        return local_greedy_grouping(code, int(strategy.split(":", 1)[1]), seed)
    if strategy.startswith("file:"):
        return load_groupings(code, strategy.split(":", 1)[1])
    raise ValueError(f"unknown grouping strategy {strategy!r}")


def save_groupings(groupings: Sequence[Grouping], path: str | Path, **extra) -> None:
    payload = {f"side{g.side}": g.to_json() for g in groupings}
    payload["labels"] = [g.label for g in groupings]
    payload.update(extra)
    Path(path).write_text(json.dumps(payload, indent=1))


def load_groupings(code: CssCode, path: str | Path) -> tuple[Grouping, Grouping]:
    payload = json.loads(Path(path).read_text())
    labels = payload.get("labels", ["file", "file"])
    return (
        make_grouping(code.H0, payload["side0"], 0, labels[0]),
        make_grouping(code.H1, payload["side1"], 1, labels[1]),
    )

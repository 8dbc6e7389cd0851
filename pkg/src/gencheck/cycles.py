"""Four-cycle counting, girth, 2-TNC checks and quantum Tanner cycle census."""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .codes import CssCode, GroupTable, QtMeta, SquareComplex
from .gf2 import BinaryMatrix, vstack
from .grouping import QuotientTannerGraph, full_grouping, quotient_tanner_graph


def _as_matrix(G: QuotientTannerGraph | BinaryMatrix) -> BinaryMatrix:
    return G.incidence() if isinstance(G, QuotientTannerGraph) else G


def count_4cycles(G: QuotientTannerGraph | BinaryMatrix) -> int:
    """Sum over unordered check pairs of ``C(overlap, 2)``."""
    M = _as_matrix(G)
    if M.rows < 2:
        return 0
    O = M.overlaps().astype(np.int64)
    iu = np.triu_indices(M.rows, k=1)
    o = O[iu]
    return int((o * (o - 1) // 2).sum())


def girth(G: QuotientTannerGraph | BinaryMatrix) -> int | float:
    """Shortest cycle length of the bipartite graph, ``math.inf`` for forests."""
    M = _as_matrix(G)
    m, n = M.shape
    adj: list[list[int]] = [[] for _ in range(m + n)]
    for r in range(m):
        for c in M.row_support(r):
            adj[r].append(m + int(c))
            adj[m + int(c)].append(r)
    best: int | float = math.inf
    for src in range(m + n):
        if not adj[src]:
            continue
        dist = [-1] * (m + n)
        parent = [-1] * (m + n)
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class TncResult:
    ok: bool
    witness: tuple[int, int, int, int, int] | None = None  # (g, a, b, a', b')

    def __bool__(self) -> bool:
        return self.ok


def check_2tnc(group: GroupTable, A: Sequence[int], B: Sequence[int]) -> TncResult:
    """``a g b != a' g b'`` for all ``g`` and all distinct position pairs."""
    A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
    P = group.product
    for g in range(group.order):
        vals = P[P[A, g][:, None], B[None, :]].ravel()
        _, first, counts = np.unique(vals, return_index=True, return_counts=True)
        if (counts > 1).any():
            dup = vals[first[np.argmax(counts > 1)]]
            i, j = np.flatnonzero(vals == dup)[:2]
            D = len(B)
            return TncResult(False, (g, int(A[i // D]), int(B[i % D]), int(A[j // D]), int(B[j % D])))
    return TncResult(True)


def hgp_cycle_count(A: BinaryMatrix, B: BinaryMatrix) -> tuple[int, int]:
    ta, tb = count_4cycles(A), count_4cycles(B)
    ma, na = A.shape
    mb, nb = B.shape
    return ta * nb + tb * ma, tb * na + ta * mb


# quantum Tanner census -------------------------------------------------------

CORNER_PAIRS = {
    # (corner i, corner j): index into SquareComplex.edge_ids, or None for a diagonal
    (0, 1): 0,
    (2, 3): 1,
    (0, 2): 2,
    (1, 3): 3,
    (0, 3): None,
    (1, 2): None,
}

SIDE_OF_CORNER = (0, 1, 1, 0)


@dataclass
class CycleCensus:
    level: str
    total_4cycles: int
    by_class: dict[str, int]
    per_side: dict[str, int] = field(default_factory=dict)
    girth: dict[str, int | float] = field(default_factory=dict)

    def to_json(self) -> dict:
        g = {k: ("infinite" if v == math.inf else v) for k, v in self.girth.items()}
        return {
            "level": self.level,
            "total_4cycles": self.total_4cycles,
            "by_class": dict(self.by_class),
            "per_side": dict(self.per_side),
            "girth": g,
        }


def _shared_square_pairs(cx: SquareComplex):
    """Yield ``(v, w, same_side, [(q, edge_key), ...])`` for every vertex pair with >= 2 common squares."""
    edges = cx.edge_ids()
    table: dict[tuple[int, int], list[tuple[int, int | None]]] = defaultdict(list)
    V = cx.square_vertices
    for q in range(cx.n_squares):
        for (i, j), e in CORNER_PAIRS.items():
            v, w = int(V[q, i]), int(V[q, j])
            key = (v, w) if v < w else (w, v)
            table[key].append((q, None if e is None else int(edges[q, e])))
    for (v, w), items in table.items():
        if len(items) >= 2:
            pv, pw = v // cx.group.order, w // cx.group.order
            yield v, w, SIDE_OF_CORNER[pv] == SIDE_OF_CORNER[pw], items


def qt_cycle_census(code: CssCode, level: str = "full") -> CycleCensus:
    """Classify 4-cycles of a quantum Tanner code.

    ``level="full"``: the combined graph (squares versus all vertices) with its
    three classes ``parallel_square_graph`` (two shared vertices on the same
    side), ``parallel_x`` (shared vertices on opposite sides, different
    connecting edges) and ``shared_edge``.

    ``level="ungrouped"``: the ordinary Tanner graphs of ``H0``, ``H1`` and
    their union.  Same-side counts split into ``local`` (``t_i |V_i|``) and
    ``parallel_square_graph``; X-versus-Z cycles split into ``parallel_x`` and
    ``shared_edge``.  Counts are assembled from integer inner products of
    local-view columns.
    """
    if not isinstance(code.meta, QtMeta):
        raise ValueError("cycle census requires quantum Tanner construction metadata")
    meta = code.meta
    cx = meta.complex
    G = cx.group.order
    if level == "full":
        by_class = {"parallel_square_graph": 0, "parallel_x": 0, "shared_edge": 0}
        per_side = {"side0": 0, "side1": 0, "cross": 0}
        for v, w, same, items in _shared_square_pairs(cx):
            for (q, eq), (p, ep) in combinations(items, 2):
                if same:
                    by_class["parallel_square_graph"] += 1
                    per_side[f"side{SIDE_OF_CORNER[v // G]}"] += 1
                elif eq == ep:
                    by_class["shared_edge"] += 1
                    per_side["cross"] += 1
                else:
                    by_class["parallel_x"] += 1
                    per_side["cross"] += 1
        g0, g1 = full_grouping(code)
        girths = {
            "side0": girth(quotient_tanner_graph(code.H0, g0)),
            "side1": girth(quotient_tanner_graph(code.H1, g1)),
        }
        return CycleCensus("full", sum(by_class.values()), by_class, per_side, girths)

    if level != "ungrouped":
        raise ValueError("level must be 'full' or 'ungrouped'")
    locs = [p.to_dense().astype(np.int64) for p in meta.local_pcms]
    t = [count_4cycles(p) for p in meta.local_pcms]
    n_side_vertices = [2 * G, 2 * G]
    by_class = {
        "local": t[0] * n_side_vertices[0] + t[1] * n_side_vertices[1],
        "parallel_square_graph": 0,
        "parallel_x": 0,
        "shared_edge": 0,
    }
    per_side = {"side0": t[0] * n_side_vertices[0], "side1": t[1] * n_side_vertices[1], "cross": 0}

    def column(vertex: int, q: int) -> np.ndarray:
        part = vertex // G
        return locs[SIDE_OF_CORNER[part]][:, cx.local_position[q, part]]

    for v, w, same, items in _shared_square_pairs(cx):
        for (q, eq), (p, ep) in combinations(items, 2):
            x_v = int(column(v, q) @ column(v, p))
            x_w = int(column(w, q) @ column(w, p))
            c = x_v * x_w
            if same:
                by_class["parallel_square_graph"] += c
                per_side[f"side{SIDE_OF_CORNER[v // G]}"] += c
            else:
                by_class["shared_edge" if eq == ep else "parallel_x"] += c
                per_side["cross"] += c
    return CycleCensus("ungrouped", sum(by_class.values()), by_class, per_side)


def combined_incidence(code: CssCode, groupings) -> BinaryMatrix:
    """Joint check-by-qubit incidence of the quotient graphs of both sides."""
    g0, g1 = groupings
    return vstack([quotient_tanner_graph(code.H0, g0).incidence(), quotient_tanner_graph(code.H1, g1).incidence()])


def parallel_edge_pairs(cx: SquareComplex, side: int) -> int:
    """Number of unordered pairs of parallel edges in the square graph of ``side``."""
    total = 0
    for v, w, same, items in _shared_square_pairs(cx):
        if same and SIDE_OF_CORNER[v // cx.group.order] == side:
            total += len(items) * (len(items) - 1) // 2
    return total

"""Syndrome trellises for local codes and the max* forward/backward SISO pass.

LLR convention: ``Gamma_t = log P(e_t = 0) - log P(e_t = 1)``.  A path through
the trellis of ``ker H_c`` shifted by a coset representative ``u`` describes
the error ``e = label xor u``; its log-probability (up to a constant) is
``-sum_t e_t * Gamma_t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import BinaryMatrix, gf2_solve, independent_rows

NEG_INF = -np.inf
# finite stand-in for +-infinity inside the decoders
LLR_SENTINEL = 1.0e6


def maxstar(a: float, b: float) -> float:
    """Jacobian logarithm ``log(e^a + e^b)``."""
    if a == NEG_INF:
        return float(b)
    if b == NEG_INF:
        return float(a)
    if a == np.inf or b == np.inf:
        return np.inf
    return max(a, b) + float(np.log1p(np.exp(-abs(a - b))))


@dataclass(frozen=True)
class Trellis:
    H: BinaryMatrix
    kept_rows: tuple[int, ...]  # independent rows defining the states
    states: tuple[np.ndarray, ...]  # per depth, partial syndromes (python ints) of the kept rows
    edges: tuple[np.ndarray, ...]  # per section, int array (n_edges, 3): left idx, right idx, label

    @property
    def depth(self) -> int:
        return self.H.cols

    @property
    def edge_count(self) -> int:
        return int(sum(e.shape[0] for e in self.edges))

    @property
    def state_profile(self) -> list[int]:
        return [len(s) for s in self.states]

    @property
    def max_width(self) -> int:
        return max(self.state_profile)

    @property
    def k(self) -> int:
        return self.H.cols - len(self.kept_rows)


def build_trellis(H_c: BinaryMatrix) -> Trellis:
    """Minimal syndrome trellis of ``ker H_c`` (forward-reachable and co-reachable states)."""
    dense = H_c.to_dense()
    n = H_c.cols
    if n == 0:
        raise ValueError("local code has no columns")
    zero_cols = np.flatnonzero(~dense.any(axis=0)) if H_c.rows else np.arange(n)
    if zero_cols.size:
        raise ValueError(f"column {int(zero_cols[0])} of the local PCM is all-zero")
    kept = tuple(independent_rows(H_c))
    cols = [sum(int(dense[r, t]) << i for i, r in enumerate(kept)) for t in range(n)]
    fwd = [{0}]
    for t in range(n):
        fwd.append(fwd[-1] | {s ^ cols[t] for s in fwd[-1]})
    bwd = [set() for _ in range(n + 1)]
    bwd[n] = {0}
    for t in range(n - 1, -1, -1):
        bwd[t] = bwd[t + 1] | {s ^ cols[t] for s in bwd[t + 1]}
    states = [np.array(sorted(f & b), dtype=object) for f, b in zip(fwd, bwd)]
    index = [{int(s): i for i, s in enumerate(st)} for st in states]
    edges = []
    for t in range(n):
        sec = []
        for i, s in enumerate(states[t]):
            for bit in (0, 1):
                j = index[t + 1].get(int(s) ^ (cols[t] if bit else 0))
                if j is not None:
                    sec.append((i, j, bit))
        edges.append(np.array(sec, dtype=np.int64).reshape(-1, 3))
    return Trellis(H_c, kept, tuple(states), tuple(edges))


def edge_count_bound(n_c: float, k_c: float) -> float:
    """Upper bound on the number of trellis edges of an ``[n_c, k_c]`` code."""
    if not 0 <= k_c <= n_c:
        raise ValueError(f"need 0 <= k_c <= n_c, got ({n_c}, {k_c})")
    if k_c <= n_c - k_c:
        return 2**k_c * (4 + n_c - 2 * k_c) - 4
    return 2 ** (n_c - k_c + 1) * (2 - n_c + 2 * k_c) - 4


def coset_representative(H_c: BinaryMatrix, s_c) -> np.ndarray:
    u = gf2_solve(H_c, np.asarray(s_c, dtype=np.uint8))
    if u is None:
        raise ValueError("inconsistent local syndrome")
    return u


def siso_decode(trellis: Trellis, u_c, incoming) -> np.ndarray:
    """Extrinsic LLRs ``Delta_t`` of the bits of ``e`` restricted to the coset ``u_c + ker H_c``."""
    g = np.asarray(incoming, dtype=np.float64)
    u = np.asarray(u_c, dtype=np.int64)
    n = trellis.depth
    if g.shape != (n,) or u.shape != (n,):
        raise ValueError(f"expected {n} inputs, got {g.shape} and {u.shape}")
    alpha = [np.full(len(s), NEG_INF) for s in trellis.states]
    beta = [np.full(len(s), NEG_INF) for s in trellis.states]
    alpha[0][0] = 0.0
    beta[n][0] = 0.0
    for t in range(n):
        for l, r, lab in trellis.edges[t]:
            m = alpha[t][l] - (g[t] if (lab ^ u[t]) else 0.0)
            alpha[t + 1][r] = maxstar(alpha[t + 1][r], m)
    for t in range(n - 1, -1, -1):
        for l, r, lab in trellis.edges[t]:
            m = beta[t + 1][r] - (g[t] if (lab ^ u[t]) else 0.0)
            beta[t][l] = maxstar(beta[t][l], m)
    out = np.empty(n)
    for t in range(n):
        num = den = NEG_INF
        for l, r, lab in trellis.edges[t]:
            m = alpha[t][l] + beta[t + 1][r]
            if lab ^ u[t]:
                den = maxstar(den, m)
            else:
                num = maxstar(num, m)
        if num == den == NEG_INF:
            raise ValueError("empty coset")
        out[t] = num - den
    return out


def trellis_stats(pcms) -> dict:
    """Exact edge counts, bounds and widths over a collection of local PCMs."""
    counts, bounds, dual_bounds, widths, dims = [], [], [], [], []
    for H in pcms:
        tr = build_trellis(H)
        counts.append(tr.edge_count)
        bounds.append(edge_count_bound(tr.depth, tr.k))
        dual_bounds.append(edge_count_bound(tr.depth, tr.depth - tr.k))
        widths.append(tr.max_width)
        dims.append((tr.depth, tr.k))
    if not counts:
        return {"blocks": 0}
    return {
        "blocks": len(counts),
        "avg_edges": float(np.mean(counts)),
        "avg_bound": float(np.mean(bounds)),
        # same formula evaluated for the dual code (k_c -> n_c - k_c)
        "avg_bound_dual": float(np.mean(dual_bounds)),
        "max_width": int(max(widths)),
        "avg_n_c": float(np.mean([d[0] for d in dims])),
        "avg_k_c": float(np.mean([d[1] for d in dims])),
        "total_edges": int(sum(counts)),
    }

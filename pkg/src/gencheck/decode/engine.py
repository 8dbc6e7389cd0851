"""Compiled flooding-schedule kernels and the flattened graph they run on."""

from __future__ import annotations

from dataclasses import dataclass

import numba as nb
import numpy as np

from ..gf2 import BinaryMatrix, gf2_solve
from ..trellis import LLR_SENTINEL, build_trellis

MODE_BOXPLUS = 0
MODE_SISO = 1

_INF = np.inf


@nb.njit(cache=True, inline="always")
def _maxstar(a, b):
    if a == -_INF:
        return b
    if b == -_INF:
        return a
    if a > b:
        return a + np.log1p(np.exp(b - a))
    return b + np.log1p(np.exp(a - b))


@nb.njit(cache=True, inline="always")
def _boxplus2(a, b):
    if a == _INF:
        return b
    if b == _INF:
        return a
    s = 1.0 if (a >= 0) == (b >= 0) else -1.0
    return s * min(abs(a), abs(b)) + np.log1p(np.exp(-abs(a + b))) - np.log1p(np.exp(-abs(a - b)))


@nb.njit(cache=True, inline="always")
def _q2b(gx, gy, gz, side):
    if side == 0:
        wi = gx
        wbar = gz
    else:
        wi = gz
        wbar = gx
    return max(-wi, 0.0) + np.log1p(np.exp(-abs(wi))) + min(gy, wbar) - np.log1p(np.exp(-abs(gy - wbar)))


@nb.njit(cache=True, inline="always")
def _clamp(x, bound):
    if x > bound:
        return bound
    if x < -bound:
        return -bound
    return x


@nb.njit(cache=True)
def hard_decision_kernel(G, est):
    n = G.shape[0]
    for v in range(n):
        best = 0
        for w in range(1, 3):
            if G[v, w] < G[v, best]:
                best = w
        if G[v, best] > 0.0:
            est[v] = 0
        else:
            est[v] = best + 1


@nb.njit(cache=True)
def syndrome_matches(est, row_ptr, row_var, row_side, syn):
    for r in range(row_ptr.shape[0] - 1):
        acc = 0
        side = row_side[r]
        for k in range(row_ptr[r], row_ptr[r + 1]):
            p = est[row_var[k]]
            if side == 0:
                acc ^= 1 if (p == 2 or p == 3) else 0
            else:
                acc ^= 1 if (p == 1 or p == 2) else 0
        if acc != syn[r]:
            return False
    return True


@nb.njit(cache=True)
def bp_run(
    mode,
    t_max,
    alpha_inv,
    lam,
    init,
    mem,
    use_mem,
    gv,
    check_ptr,
    edge_var,
    edge_side,
    row_ptr,
    row_var,
    row_side,
    syn,
    check_row_ptr,
    check_rows,
    rmap,
    rmap_ptr,
    st_ptr,
    sec_ptr,
    tr_el,
    tr_er,
    tr_lab,
    n_states,
    est,
    bound,
):
    """Run up to ``t_max`` flooding iterations; returns ``(converged, iterations)``.

    ``gv`` holds the posterior LLRs on entry (used by the memory blend) and on exit.
    """
    n = lam.shape[0]
    n_checks = check_ptr.shape[0] - 1
    n_edges = edge_var.shape[0]
    msg = np.empty((n_edges, 3))
    for e in range(n_edges):
        for w in range(3):
            msg[e, w] = init[edge_var[e], w]
    gam = np.empty(n_edges)
    delta = np.empty(n_edges)
    acc = np.empty((n, 3))
    base = np.empty((n, 3))
    fwd = np.empty(n_states)
    bwd = np.empty(n_states)
    max_deg = 0
    for c in range(n_checks):
        max_deg = max(max_deg, check_ptr[c + 1] - check_ptr[c])
    u = np.zeros(max_deg, dtype=np.uint8)
    pre = np.empty(max_deg + 1)

    for it in range(1, t_max + 1):
        for e in range(n_edges):
            gam[e] = _q2b(msg[e, 0], msg[e, 1], msg[e, 2], edge_side[e])

        for c in range(n_checks):
            e0 = check_ptr[c]
            deg = check_ptr[c + 1] - e0
            if mode == MODE_BOXPLUS:
                sgn = 1.0
                for k in range(check_row_ptr[c], check_row_ptr[c + 1]):
                    if syn[check_rows[k]]:
                        sgn = -sgn
                pre[0] = _INF
                for t in range(deg):
                    pre[t + 1] = _boxplus2(pre[t], gam[e0 + t])
                suf = _INF
                for t in range(deg - 1, -1, -1):
                    delta[e0 + t] = _clamp(sgn * _boxplus2(pre[t], suf), bound)
                    suf = _boxplus2(suf, gam[e0 + t])
            else:
                for t in range(deg):
                    u[t] = 0
                base_r = rmap_ptr[c]
                j = 0
                for k in range(check_row_ptr[c], check_row_ptr[c + 1]):
                    if syn[check_rows[k]]:
                        off = base_r + j * deg
                        for t in range(deg):
                            u[t] ^= rmap[off + t]
                    j += 1
                d0 = e0 + c
                for t in range(deg + 1):
                    for s in range(st_ptr[d0 + t], st_ptr[d0 + t + 1]):
                        fwd[s] = -_INF
                        bwd[s] = -_INF
                fwd[st_ptr[d0]] = 0.0
                bwd[st_ptr[d0 + deg]] = 0.0
                for t in range(deg):
                    e = e0 + t
                    lo = st_ptr[d0 + t]
                    hi = st_ptr[d0 + t + 1]
                    for k in range(sec_ptr[e], sec_ptr[e + 1]):
                        m = fwd[lo + tr_el[k]]
                        if tr_lab[k] ^ u[t]:
                            m -= gam[e]
                        fwd[hi + tr_er[k]] = _maxstar(fwd[hi + tr_er[k]], m)
                for t in range(deg - 1, -1, -1):
                    e = e0 + t
                    lo = st_ptr[d0 + t]
                    hi = st_ptr[d0 + t + 1]
                    for k in range(sec_ptr[e], sec_ptr[e + 1]):
                        m = bwd[hi + tr_er[k]]
                        if tr_lab[k] ^ u[t]:
                            m -= gam[e]
                        bwd[lo + tr_el[k]] = _maxstar(bwd[lo + tr_el[k]], m)
                for t in range(deg):
                    e = e0 + t
                    lo = st_ptr[d0 + t]
                    hi = st_ptr[d0 + t + 1]
                    num = -_INF
                    den = -_INF
                    for k in range(sec_ptr[e], sec_ptr[e + 1]):
                        m = fwd[lo + tr_el[k]] + bwd[hi + tr_er[k]]
                        if tr_lab[k] ^ u[t]:
                            den = _maxstar(den, m)
                        else:
                            num = _maxstar(num, m)
                    if num == -_INF:
                        delta[e] = -bound
                    elif den == -_INF:
                        delta[e] = bound
                    else:
                        delta[e] = _clamp(num - den, bound)

        for v in range(n):
            for w in range(3):
                acc[v, w] = 0.0
                if use_mem:
                    base[v, w] = (1.0 - mem[v]) * lam[v, w] + mem[v] * gv[v, w]
                else:
                    base[v, w] = lam[v, w]
        for e in range(n_edges):
            v = edge_var[e]
            skip = 2 * edge_side[e]
            for w in range(3):
                if w != skip:
                    acc[v, w] += delta[e]
        for v in range(n):
            for w in range(3):
                gv[v, w] = base[v, w] + alpha_inv * acc[v, w]

        hard_decision_kernel(gv, est)
        if syndrome_matches(est, row_ptr, row_var, row_side, syn):
            return True, it

        for e in range(n_edges):
            v = edge_var[e]
            skip = 2 * edge_side[e]
            for w in range(3):
                if w != skip:
                    msg[e, w] = gv[v, w] - alpha_inv * delta[e]
                else:
                    msg[e, w] = gv[v, w]
    return False, t_max


@nb.njit(cache=True)
def osd1_kernel(H, w, s):
    """Order-1 syndrome OSD on a dense 0/1 system ``H e = s``.

    Returns ``(e, cost0, cost1, consistent)``.
    """
    m, N = H.shape
    perm = np.argsort(w, kind="mergesort")
    n_words = (N + 1 + 63) // 64
    rows = np.zeros((m, n_words), dtype=np.uint64)
    one = np.uint64(1)
    for i in range(m):
        for j in range(N):
            if H[i, perm[j]]:
                rows[i, j >> 6] |= one << np.uint64(j & 63)
        if s[i]:
            rows[i, N >> 6] |= one << np.uint64(N & 63)
    pivots = np.empty(min(m, N), dtype=np.int64)
    r = 0
    for j in range(N):
        if r == m:
            break
        wj = j >> 6
        bj = one << np.uint64(j & 63)
        p = -1
        for i in range(r, m):
            if rows[i, wj] & bj:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(n_words):
                tmp = rows[p, k]
                rows[p, k] = rows[r, k]
                rows[r, k] = tmp
        for i in range(m):
            if i != r and (rows[i, wj] & bj):
                for k in range(wj, n_words):
                    rows[i, k] ^= rows[r, k]
        pivots[r] = j
        r += 1
    wN = N >> 6
    bN = one << np.uint64(N & 63)
    consistent = True
    for i in range(r, m):
        if rows[i, wN] & bN:
            consistent = False
    wp = np.empty(N)
    for j in range(N):
        wp[j] = w[perm[j]]
    sp = np.zeros(r, dtype=np.uint8)
    cost0 = 0.0
    for i in range(r):
        if rows[i, wN] & bN:
            sp[i] = 1
            cost0 += wp[pivots[i]]
    is_pivot = np.zeros(N, dtype=np.uint8)
    for i in range(r):
        is_pivot[pivots[i]] = 1
    best = cost0
    best_j = -1
    for j in range(N):
        if is_pivot[j]:
            continue
        wj = j >> 6
        bj = one << np.uint64(j & 63)
        cost = wp[j]
        for i in range(r):
            bit = sp[i] ^ (1 if (rows[i, wj] & bj) else 0)
            if bit:
                cost += wp[pivots[i]]
        if cost < best:
            best = cost
            best_j = j
    e_perm = np.zeros(N, dtype=np.uint8)
    for i in range(r):
        bit = sp[i]
        if best_j >= 0:
            bit ^= 1 if (rows[i, best_j >> 6] & (one << np.uint64(best_j & 63))) else 0
        e_perm[pivots[i]] = bit
    if best_j >= 0:
        e_perm[best_j] = 1
    e = np.zeros(N, dtype=np.uint8)
    for j in range(N):
        e[perm[j]] = e_perm[j]
    return e, cost0, best, consistent


def _csr(lists) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(len(lists) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(x) for x in lists])
    flat = np.concatenate([np.asarray(x, dtype=np.int64) for x in lists]) if lists else np.zeros(0, np.int64)
    return ptr, flat.astype(np.int64)


@dataclass
class DecoderGraph:
    """Flattened quotient Tanner graph of both sides plus per-check trellises."""

    n: int
    mode: int
    check_ptr: np.ndarray
    edge_var: np.ndarray
    edge_side: np.ndarray
    row_ptr: np.ndarray
    row_var: np.ndarray
    row_side: np.ndarray
    check_row_ptr: np.ndarray
    check_rows: np.ndarray
    rmap: np.ndarray
    rmap_ptr: np.ndarray
    st_ptr: np.ndarray
    sec_ptr: np.ndarray
    tr_el: np.ndarray
    tr_er: np.ndarray
    tr_lab: np.ndarray
    n_states: int
    osd_matrix: np.ndarray
    n_rows0: int

    @classmethod
    def build(cls, H0: BinaryMatrix, H1: BinaryMatrix, groupings, mode: int) -> "DecoderGraph":
        n = H0.cols
        offsets = (0, H0.rows)
        supports, sides, rows_of = [], [], []
        for side, g in enumerate(groupings):
            if g.side != side:
                raise ValueError(f"grouping {side} is labeled for side {g.side}")
            for blk, sup in zip(g.blocks, g.supports):
                supports.append(sup)
                sides.append(side)
                rows_of.append([offsets[side] + r for r in blk])
        check_ptr, edge_var = _csr(supports)
        edge_side = np.repeat(np.asarray(sides, dtype=np.int64), np.diff(check_ptr))
        row_lists, row_side = [], []
        for side, H in enumerate((H0, H1)):
            for r in range(H.rows):
                row_lists.append(H.row_support(r))
                row_side.append(side)
        row_ptr, row_var = _csr(row_lists)
        check_row_ptr, check_rows = _csr(rows_of)

        rmap_parts, rmap_ptr = [], [0]
        st_counts, sec_edges = [], []
        if mode == MODE_SISO:
            for g in groupings:
                for pcm in g.local_pcms:
                    tr = build_trellis(pcm)
                    deg = pcm.cols
                    R = np.zeros((pcm.rows, deg), dtype=np.uint8)
                    kept = BinaryMatrix.from_dense(pcm.to_dense()[list(tr.kept_rows)])
                    for i, row in enumerate(tr.kept_rows):
                        unit = np.zeros(len(tr.kept_rows), dtype=np.uint8)
                        unit[i] = 1
                        R[row] = gf2_solve(kept, unit)
                    rmap_parts.append(R.ravel())
                    rmap_ptr.append(rmap_ptr[-1] + R.size)
                    st_counts.extend(len(s) for s in tr.states)
                    sec_edges.extend(tr.edges)
        rmap = np.concatenate(rmap_parts).astype(np.uint8) if rmap_parts else np.zeros(0, np.uint8)
        st_ptr = np.zeros(len(st_counts) + 1, dtype=np.int64)
        st_ptr[1:] = np.cumsum(st_counts)
        sec_ptr = np.zeros(len(sec_edges) + 1, dtype=np.int64)
        sec_ptr[1:] = np.cumsum([e.shape[0] for e in sec_edges])
        if sec_edges:
            allx = np.concatenate(sec_edges)
            tr_el, tr_er, tr_lab = (np.ascontiguousarray(allx[:, i]) for i in range(3))
            tr_lab = tr_lab.astype(np.uint8)
        else:
            tr_el = tr_er = np.zeros(0, np.int64)
            tr_lab = np.zeros(0, np.uint8)

        m0, m1 = H0.rows, H1.rows
        osd = np.zeros((m0 + m1, 2 * n), dtype=np.uint8)
        osd[:m0, :n] = H0.to_dense()
        osd[m0:, n:] = H1.to_dense()
        return cls(
            n, mode, check_ptr, edge_var, edge_side, row_ptr, row_var, np.asarray(row_side, dtype=np.int64),
            check_row_ptr, check_rows, rmap, np.asarray(rmap_ptr, dtype=np.int64), st_ptr, sec_ptr,
            tr_el.astype(np.int64), tr_er.astype(np.int64), tr_lab, int(st_ptr[-1]), osd, m0,
        )

    def run(self, syn, lam, t_max, alpha, gv=None, mem=None, init=None, bound=LLR_SENTINEL):
        """Run the kernel; returns ``(converged, iterations, estimate, posterior)``.

        Messages start from ``init`` (default: the priors ``lam``).
        """
        gv = lam.copy() if gv is None else gv.copy()
        init = lam if init is None else np.ascontiguousarray(init, dtype=np.float64)
        use_mem = mem is not None
        mem_arr = np.zeros(self.n) if mem is None else np.asarray(mem, dtype=np.float64)
        est = np.zeros(self.n, dtype=np.int8)
        conv, iters = bp_run(
            self.mode, int(t_max), 1.0 / alpha, lam, init, mem_arr, use_mem, gv,
            self.check_ptr, self.edge_var, self.edge_side,
            self.row_ptr, self.row_var, self.row_side, syn,
            self.check_row_ptr, self.check_rows, self.rmap, self.rmap_ptr,
            self.st_ptr, self.sec_ptr, self.tr_el, self.tr_er, self.tr_lab, max(self.n_states, 1),
            est, float(bound),
        )
        return bool(conv), int(iters), est, gv

    def syndrome_ok(self, est, syn) -> bool:
        return bool(syndrome_matches(np.asarray(est, dtype=np.int8), self.row_ptr, self.row_var, self.row_side, syn))

"""Independent brute-force references shared by several test modules."""

import itertools

import numpy as np

from gencheck.gf2 import BinaryMatrix


def coset_members(H: BinaryMatrix, s) -> np.ndarray:
    d = H.to_dense().astype(np.int64)
    s = np.asarray(s, dtype=np.int64)
    allv = np.array(list(itertools.product((0, 1), repeat=H.cols)), dtype=np.int64)
    return allv[((allv @ d.T) % 2 == s).all(axis=1)]


def coset_marginals(H: BinaryMatrix, s, llr) -> np.ndarray:
    """Extrinsic LLRs by enumerating the coset ``{e : H e = s}``."""
    members = coset_members(H, s)
    llr = np.asarray(llr, dtype=np.float64)
    out = np.empty(H.cols)
    for t in range(H.cols):
        mask = np.ones(H.cols, bool)
        mask[t] = False
        metric = -(members[:, mask] * llr[mask]).sum(axis=1)
        zero, one = metric[members[:, t] == 0], metric[members[:, t] == 1]
        lz = np.logaddexp.reduce(zero) if zero.size else -np.inf
        lo = np.logaddexp.reduce(one) if one.size else -np.inf
        out[t] = lz - lo
    return out


def tanh_boxplus(values) -> float:
    """``2 atanh(prod tanh(a/2))`` evaluated as log P(even) - log P(odd) in the log domain.

    The literal tanh form loses about 1e-8 of accuracy once products approach 1,
    so the parity recursion is used instead; both define the same function.
    """
    even, odd = 0.0, -np.inf
    for a in values:
        p0, p1 = -np.logaddexp(0.0, -a), -np.logaddexp(0.0, a)
        even, odd = np.logaddexp(even + p0, odd + p1), np.logaddexp(even + p1, odd + p0)
    return float(even - odd)


def random_tight_matrix(rng, rows, cols) -> BinaryMatrix:
    d = (rng.random((rows, cols)) < 0.5).astype(np.uint8)
    for c in np.flatnonzero(~d.any(axis=0)):
        d[rng.integers(rows), c] = 1
    return BinaryMatrix.from_dense(d)


def reference_bp4(H0, H1, syn, lam, t_max, alpha, mem=None, gv=None):
    """Plain-Python flooding BP4 with box-plus checks; returns (converged, iters, estimate, posterior)."""
    n = H0.cols
    checks = [(0, H0.row_support(r)) for r in range(H0.rows)] + [(1, H1.row_support(r)) for r in range(H1.rows)]
    anti = lambda w, side: w != 2 * side  # noqa: E731  (W: 0 = X, 1 = Y, 2 = Z)
    msgs = {(c, int(v)): lam[v].copy() for c, (_, sup) in enumerate(checks) for v in sup}
    post = lam.copy() if gv is None else gv.copy()
    est = np.zeros(n, dtype=np.int8)
    for it in range(1, t_max + 1):
        scal = {}
        for (c, v), m in msgs.items():
            side = checks[c][0]
            wi, wbar = (m[0], m[2]) if side == 0 else (m[2], m[0])
            scal[c, v] = np.logaddexp(0, -wi) - np.logaddexp(-m[1], -wbar)
        delta = {}
        for c, (side, sup) in enumerate(checks):
            for v in sup:
                others = [scal[c, int(u)] for u in sup if u != v]
                sign = -1.0 if syn[c] else 1.0
                delta[c, int(v)] = sign * (tanh_boxplus(others) if others else np.inf)
        base = lam if mem is None else (1 - mem)[:, None] * lam + mem[:, None] * post
        post = base.copy()
        for (c, v), d in delta.items():
            side = checks[c][0]
            for w in range(3):
                if anti(w, side):
                    post[v, w] += d / alpha
        est = np.where((post > 0).all(axis=1), 0, np.argmin(post, axis=1) + 1).astype(np.int8)
        x = ((est == 1) | (est == 2)).astype(np.uint8)
        z = ((est == 2) | (est == 3)).astype(np.uint8)
        if np.array_equal(np.concatenate([H0.mul_vec(z), H1.mul_vec(x)]), syn):
            return True, it, est, post
        for (c, v), d in delta.items():
            side = checks[c][0]
            m = post[v].copy()
            for w in range(3):
                if anti(w, side):
                    m[w] -= d / alpha
            msgs[c, v] = m
    return False, t_max, est, post

"""Classical local codes and CSS code constructions.

Qubit order for quadripartite quantum Tanner (QT) codes: squares ``(g, a, b)``
sorted by ``(g, index of a in A, index of b in B)``.  Each vertex sees its
``Delta**2`` squares at local position ``a_pos * Delta + b_pos`` where the
labels follow the square diagram

    (gb, 10) --(a, a^-1)-- (agb, 11)
       |                        |
    (g, 00)  --(a, a^-1)--  (ag, 01)

i.e. ``00`` sees ``(a, b)``, ``01`` sees ``(a^-1, b)``, ``10`` sees
``(a, b^-1)`` and ``11`` sees ``(a^-1, b^-1)``.  With this labeling the two
local views of any pair of adjacent vertices list their shared squares in the
same order, which is what makes ``H0 H1^T = 0`` hold for arbitrary local codes.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .gf2 import (
    BinaryMatrix,
    circulant,
    hstack,
    kron,
    nullspace,
    rank,
    read_alist,
    read_dense,
)


@dataclass(frozen=True)
class ClassicalCode:
    H: BinaryMatrix

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def k(self) -> int:
        return self.H.cols - rank(self.H)


def dual_pcm(C: ClassicalCode | BinaryMatrix) -> BinaryMatrix:
    """Parity-check matrix of the dual code: a kernel basis of ``H`` in RREF order."""
    H = C.H if isinstance(C, ClassicalCode) else C
    return nullspace(H)


# groups ---------------------------------------------------------------------


class GroupTable:
    """Finite group given by its multiplication table; element 0 is the identity."""

    def __init__(self, product: Sequence[Sequence[int]] | np.ndarray, name: str = "", validate: bool = True):
        table = np.asarray(product, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError("multiplication table must be a non-empty square array")
        self.order = int(table.shape[0])
        self.product = table
        self.product.setflags(write=False)
        self.name = name or f"G{self.order}"
        if validate:
            self._validate()
        inv = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            inv[g] = int(np.flatnonzero(table[g] == 0)[0])
        self.inverse = inv
        self.inverse.setflags(write=False)

    def _validate(self) -> None:
        n, P = self.order, self.product
        if P.min() < 0 or P.max() >= n:
            raise ValueError("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(P[0], idx) and np.array_equal(P[:, 0], idx)):
            raise ValueError("element 0 must be the identity")
        for line in (P, P.T):
            if any(len(set(row.tolist())) != n for row in line):
                raise ValueError("table is not a Latin square (missing inverses)")
        if n <= 256:
            left = P[P, :]  # (a*b)*c indexed [a, b, c]
            right = P[:, P]  # a*(b*c) indexed [a, b, c]
            if not np.array_equal(left, right):
                raise ValueError("multiplication table is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            if not np.array_equal(P[P[a, b], c], P[a, P[b, c]]):
                raise ValueError("multiplication table is not associative")

    def mul(self, *elems: int) -> int:
        out = 0
        for e in elems:
            out = int(self.product[out, e])
        return out

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, name=f"Z{n}", validate=False)

    @classmethod
    def dihedral(cls, n: int) -> "GroupTable":
        """Dihedral group of order ``2n``; element ``r^i s^j`` has index ``i + n*j``."""

        def compose(x: int, y: int) -> int:
            i1, j1 = x % n, x // n
            i2, j2 = y % n, y // n
            i = (i1 + (i2 if j1 == 0 else -i2)) % n
            return i + n * ((j1 + j2) % 2)

        table = [[compose(x, y) for y in range(2 * n)] for x in range(2 * n)]
        return cls(table, name=f"D{n}")

    @classmethod
    def direct_product(cls, G: "GroupTable", H: "GroupTable") -> "GroupTable":
        """Element ``(g, h)`` has index ``g * |H| + h``."""
        PG, PH = G.product, H.product
        table = PG[:, None, :, None] * H.order + PH[None, :, None, :]
        n = G.order * H.order
        return cls(table.reshape(n, n), name=f"{G.name}x{H.name}", validate=False)

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]]) -> "GroupTable":
        """Closure of permutation generators; elements indexed in BFS order."""
        if not generators:
            raise ValueError("need at least one generator")
        degree = len(generators[0])
        ident = tuple(range(degree))
        gens = [tuple(int(x) for x in g) for g in generators]
        elems = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(p[g[i]] for i in range(degree))
                    if q not in index:
                        index[q] = len(elems)
                        elems.append(q)
                        nxt.append(q)
            frontier = nxt
        table = [[index[tuple(x[y[i]] for i in range(degree))] for y in elems] for x in elems]
        return cls(table, name=f"Perm{len(elems)}", validate=False)

    @classmethod
    def from_spec(cls, spec: Any) -> "GroupTable":
        """Build from a descriptor: ``{"cyclic": n}``, ``{"dihedral": n}``,
        ``{"product": [spec, spec]}``, ``{"permutations": [[...], ...]}`` or
        ``{"table": [[...], ...]}``."""
        if not isinstance(spec, dict) or len(spec) != 1:
            raise ValueError(f"bad group descriptor {spec!r}")
        (kind, value), = spec.items()
        if kind == "cyclic":
            return cls.cyclic(int(value))
        if kind == "dihedral":
            return cls.dihedral(int(value))
        if kind == "product":
            groups = [cls.from_spec(v) for v in value]
            out = groups[0]
            for g in groups[1:]:
                out = cls.direct_product(out, g)
            return out
        if kind == "permutations":
            return cls.from_permutations(value)
        if kind == "table":
            return cls(value)
        raise ValueError(f"unknown group kind {kind!r}")


def _inverse_positions(group: GroupTable, elems: Sequence[int], what: str) -> np.ndarray:
    """Involution ``sigma`` on list positions with ``elems[sigma[i]] == elems[i]^-1``."""
    counts = Counter(elems)
    for e, c in counts.items():
        if counts.get(group.inv(e), 0) != c:
            raise ValueError(f"{what} is not inverse-closed: element {e} has inverse {group.inv(e)} missing")
    sigma = -np.ones(len(elems), dtype=np.int64)
    for i, e in enumerate(elems):
        if sigma[i] >= 0:
            continue
        target = group.inv(e)
        if target == e:
            sigma[i] = i
            continue
        j = next(j for j in range(len(elems)) if sigma[j] < 0 and j != i and elems[j] == target)
        sigma[i], sigma[j] = j, i
    return sigma


@dataclass(frozen=True)
class SquareComplex:
    """Quadripartite left-right Cayley complex.

    Vertex ``(g, ij)`` has index ``part * |G| + g`` with parts ordered
    ``00, 01, 10, 11``.
    """

    group: GroupTable
    A: tuple[int, ...]
    B: tuple[int, ...]
    squares: np.ndarray  # (n, 3) rows (g, a_pos, b_pos), qubit order
    square_vertices: np.ndarray  # (n, 4) vertex ids of corners 00, 01, 10, 11
    local_position: np.ndarray  # (n, 4) position of the square in each corner's view
    sigma_A: np.ndarray
    sigma_B: np.ndarray

    @property
    def delta(self) -> int:
        return len(self.A)

    @property
    def n_squares(self) -> int:
        return int(self.squares.shape[0])

    @property
    def n_vertices(self) -> int:
        return 4 * self.group.order

    def part_vertices(self, part: str) -> np.ndarray:
        p = ("00", "01", "10", "11").index(part)
        G = self.group.order
        return np.arange(p * G, (p + 1) * G)

    def side_vertices(self, side: int) -> np.ndarray:
        """``V_0 = V00 + V11`` for side 0, ``V_1 = V01 + V10`` for side 1."""
        parts = ("00", "11") if side == 0 else ("01", "10")
        return np.concatenate([self.part_vertices(p) for p in parts])

    def local_view(self, vertex: int) -> np.ndarray:
        """Qubits around ``vertex`` ordered by local position."""
        part = vertex // self.group.order
        sel = np.flatnonzero(self.square_vertices[:, part] == vertex)
        view = np.empty(self.delta**2, dtype=np.int64)
        view[self.local_position[sel, part]] = sel
        return view

    def edge_ids(self) -> np.ndarray:
        """Identifier of the four 1-skeleton edges of each square.

        A-edges are keyed ``(0, i, g_left, a_pos)`` and B-edges ``(1, j, g_left, b_pos)``
        with ``g_left`` the group element at the ``i0``/``0j`` end, packed into ints.
        """
        G, D = self.group.order, self.delta
        g, ia, ib = self.squares.T
        gb = self.group.product[g, np.asarray(self.B)[ib]]
        ag = self.group.product[np.asarray(self.A)[ia], g]
        a_bottom = ((0 * 2 + 0) * G + g) * D + ia
        a_top = ((0 * 2 + 1) * G + gb) * D + ia
        b_left = ((1 * 2 + 0) * G + g) * D + ib
        b_right = ((1 * 2 + 1) * G + ag) * D + ib
        return np.stack([a_bottom, a_top, b_left, b_right], axis=1)


def build_square_complex(group: GroupTable, A: Sequence[int], B: Sequence[int]) -> SquareComplex:
    A, B = tuple(int(a) for a in A), tuple(int(b) for b in B)
    if len(A) != len(B):
        raise ValueError(f"|A| = {len(A)} and |B| = {len(B)} differ")
    for e in A + B:
        if not 0 <= e < group.order:
            raise ValueError(f"element {e} not in group of order {group.order}")
    sA = _inverse_positions(group, A, "A")
    sB = _inverse_positions(group, B, "B")
    G, D = group.order, len(A)
    P = group.product
    Aa, Ba = np.asarray(A), np.asarray(B)
    g, ia, ib = (x.ravel() for x in np.meshgrid(np.arange(G), np.arange(D), np.arange(D), indexing="ij"))
    squares = np.stack([g, ia, ib], axis=1)
    ag = P[Aa[ia], g]
    gb = P[g, Ba[ib]]
    agb = P[ag, Ba[ib]]
    verts = np.stack([g, G + ag, 2 * G + gb, 3 * G + agb], axis=1)
    pos = np.stack(
        [ia * D + ib, sA[ia] * D + ib, ia * D + sB[ib], sA[ia] * D + sB[ib]],
        axis=1,
    )
    for arr in (squares, verts, pos):
        arr.setflags(write=False)
    return SquareComplex(group, A, B, squares, verts, pos, sA, sB)


# CSS codes ------------------------------------------------------------------


@dataclass(frozen=True)
class QtMeta:
    complex: SquareComplex
    H_A: BinaryMatrix
    H_B: BinaryMatrix
    H_A_dual: BinaryMatrix
    H_B_dual: BinaryMatrix
    local_pcms: tuple[BinaryMatrix, BinaryMatrix]
    # per side: (row of first factor, row of second factor) for every local row
    local_factor_rows: tuple[np.ndarray, np.ndarray]
    k_A: int
    k_B: int
    kind: str = "qt"


@dataclass(frozen=True)
class ProductMeta:
    kind: str  # "hgp" or "lp"
    A: BinaryMatrix
    B: BinaryMatrix
    lift: int = 1


@dataclass(frozen=True)
class BicycleMeta:
    l: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    kind: str = "gb"


@dataclass(frozen=True)
class CssCode:
    H0: BinaryMatrix  # X-type checks
    H1: BinaryMatrix  # Z-type checks
    k: int
    meta: Any = None
    name: str = ""

    @property
    def n(self) -> int:
        return self.H0.cols

    @property
    def kind(self) -> str:
        return getattr(self.meta, "kind", "css")

    def __repr__(self) -> str:
        return f"CssCode([[{self.n}, {self.k}]], kind={self.kind!r}, name={self.name!r})"


def css_from_pcms(H0: BinaryMatrix, H1: BinaryMatrix, meta: Any = None, name: str = "") -> CssCode:
    if H0.cols != H1.cols:
        raise ValueError(f"H0 has {H0.cols} columns but H1 has {H1.cols}")
    prod = (H0 @ H1.T).to_dense()
    bad = np.argwhere(prod)
    if bad.size:
        i, j = map(int, bad[0])
        raise ValueError(f"orthogonality violation: row {i} of H0 anticommutes with row {j} of H1")
    k = H0.cols - rank(H0) - rank(H1)
    if k < 0:
        raise ValueError(f"negative dimension {k}")
    return CssCode(H0, H1, k, meta, name)


def _tensor_factor_rows(m1: int, m2: int) -> np.ndarray:
    return np.array([(r, s) for r in range(m1) for s in range(m2)], dtype=np.int64).reshape(-1, 2)


def build_quadripartite_qt(
    group: GroupTable,
    A: Sequence[int],
    B: Sequence[int],
    H_A: BinaryMatrix,
    H_B: BinaryMatrix,
    name: str = "",
) -> CssCode:
    """Quadripartite quantum Tanner code on ``(group, A, B)`` with local codes ker ``H_A``, ker ``H_B``."""
    cx = build_square_complex(group, A, B)
    D = cx.delta
    if H_A.cols != D or H_B.cols != D:
        raise ValueError(f"local codes must have length Delta = {D}, got {H_A.cols} and {H_B.cols}")
    k_A = D - rank(H_A)
    k_B = D - rank(H_B)
    if k_A + k_B != D:
        raise ValueError(f"local dimensions must satisfy k_A + k_B = Delta, got {k_A} + {k_B} != {D}")
    HAd, HBd = dual_pcm(H_A), dual_pcm(H_B)
    L0 = kron(HAd, HBd)
    L1 = kron(H_A, H_B)
    factor_rows = (_tensor_factor_rows(HAd.rows, HBd.rows), _tensor_factor_rows(H_A.rows, H_B.rows))
    n = cx.n_squares
    mats = []
    for side, L in ((0, L0), (1, L1)):
        Ld = L.to_dense()
        verts = cx.side_vertices(side)
        dense = np.zeros((len(verts) * L.rows, n), dtype=np.uint8)
        for vi, v in enumerate(verts):
            view = cx.local_view(int(v))
            dense[vi * L.rows : (vi + 1) * L.rows, view] = Ld
        mats.append(BinaryMatrix.from_dense(dense.reshape(-1, n)))
    meta = QtMeta(cx, H_A, H_B, HAd, HBd, (L0, L1), factor_rows, k_A, k_B)
    code = css_from_pcms(mats[0], mats[1], meta, name)
    bound = group.order * (D * D - 4 * k_A * k_B)
    assert code.k >= bound, "dimension below the counting bound"
    return code


def build_hgp(A: BinaryMatrix, B: BinaryMatrix, name: str = "") -> CssCode:
    ma, na = A.shape
    mb, nb = B.shape
    H0 = hstack([kron(A, BinaryMatrix.identity(nb)), kron(BinaryMatrix.identity(ma), B.T)])
    H1 = hstack([kron(BinaryMatrix.identity(na), B), kron(A.T, BinaryMatrix.identity(mb))])
    return css_from_pcms(H0, H1, ProductMeta("hgp", A, B), name)


def _blocks(M: BinaryMatrix, l: int, what: str) -> np.ndarray:
    if M.rows % l or M.cols % l:
        raise ValueError(f"{what} has shape {M.shape}, not a multiple of l = {l}")
    d = M.to_dense()
    return d.reshape(M.rows // l, l, M.cols // l, l).transpose(0, 2, 1, 3)


def _block_kron(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Kronecker product of block matrices where ``Y`` is an identity of blocks or vice versa.

    ``X`` and ``Y`` have shape (rows, cols, l, l); the product of blocks is the
    ordinary matrix product over GF(2).
    """
    r1, c1, l, _ = X.shape
    r2, c2 = Y.shape[:2]
    out = np.zeros((r1 * r2, c1 * c2, l, l), dtype=np.int64)
    for i, j, p, q in itertools.product(range(r1), range(c1), range(r2), range(c2)):
        out[i * r2 + p, j * c2 + q] = (X[i, j].astype(np.int64) @ Y[p, q]) % 2
    return out


def _unblock(X: np.ndarray) -> BinaryMatrix:
    r, c, l, _ = X.shape
    return BinaryMatrix.from_dense(X.transpose(0, 2, 1, 3).reshape(r * l, c * l))


def _block_identity(m: int, l: int) -> np.ndarray:
    out = np.zeros((m, m, l, l), dtype=np.int64)
    for i in range(m):
        out[i, i] = np.eye(l, dtype=np.int64)
    return out


def build_lp(Ahat: BinaryMatrix, Bhat: BinaryMatrix, l: int, name: str = "") -> CssCode:
    """Lifted product over ``l x l`` blocks; transposes act on and inside blocks."""
    Ab = _blocks(Ahat, l, "Ahat")
    Bb = _blocks(Bhat, l, "Bhat")
    for (i, j), (p, q) in itertools.product(np.ndindex(*Ab.shape[:2]), np.ndindex(*Bb.shape[:2])):
        X, Y = Ab[i, j].astype(np.int64), Bb[p, q].astype(np.int64)
        if not np.array_equal((X @ Y) % 2, (Y @ X) % 2):
            raise ValueError(f"block ({i}, {j}) of Ahat does not commute with block ({p}, {q}) of Bhat")
    ma, na = Ab.shape[:2]
    mb, nb = Bb.shape[:2]
    AbT = Ab.transpose(1, 0, 3, 2)
    BbT = Bb.transpose(1, 0, 3, 2)
    left0 = _block_kron(Ab, _block_identity(nb, l))
    right0 = _block_kron(_block_identity(ma, l), BbT)
    left1 = _block_kron(_block_identity(na, l), Bb)
    right1 = _block_kron(AbT, _block_identity(mb, l))
    H0 = hstack([_unblock(left0), _unblock(right0)])
    H1 = hstack([_unblock(left1), _unblock(right1)])
    return css_from_pcms(H0, H1, ProductMeta("lp", Ahat, Bhat, l), name)


def _poly(coeffs: Sequence[int] | str, l: int) -> np.ndarray:
    if isinstance(coeffs, str):
        bits = np.array([int(c) for c in coeffs], dtype=np.uint8)
    else:
        bits = np.asarray(coeffs, dtype=np.uint8)
    if bits.size != l:
        raise ValueError(f"polynomial needs {l} coefficients, got {bits.size}")
    return bits


def build_gb(a_coeffs: Sequence[int] | str, b_coeffs: Sequence[int] | str, l: int, name: str = "") -> CssCode:
    """Generalized bicycle code ``H0 = [A | B]``, ``H1 = [B^T | A^T]`` with circulant ``A``, ``B``."""
    a, b = _poly(a_coeffs, l), _poly(b_coeffs, l)
    A, B = circulant(a, l), circulant(b, l)
    H0 = hstack([A, B])
    H1 = hstack([B.T, A.T])
    meta = BicycleMeta(l, tuple(np.flatnonzero(a).tolist()), tuple(np.flatnonzero(b).tolist()))
    return css_from_pcms(H0, H1, meta, name)


def exponents_to_coeffs(exponents: Sequence[int], l: int) -> np.ndarray:
    out = np.zeros(l, dtype=np.uint8)
    for e in exponents:
        out[int(e) % l] ^= 1
    return out


# distances ------------------------------------------------------------------

MAX_BRUTE_FORCE_N = 24


def brute_force_distance(css: CssCode, side: str = "X") -> int | None:
    """Exhaustive ``d_X`` (``side="X"``, over ker H0 minus rowspace H1) or ``d_Z``.

    Returns ``None`` when there are no logical operators.
    """
    if css.n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"brute force limited to n <= {MAX_BRUTE_FORCE_N}, got n = {css.n}")
    if side not in ("X", "Z"):
        raise ValueError("side must be 'X' or 'Z'")
    H, other = (css.H0, css.H1) if side == "X" else (css.H1, css.H0)
    basis = [int("".join(map(str, r[::-1])), 2) for r in nullspace(H).to_dense()]
    # v lies in rowspace(other) iff v is orthogonal to all of ker(other)
    tests = [int("".join(map(str, r[::-1])), 2) for r in nullspace(other).to_dense()]
    best = None
    v = 0
    for i in range(1, 1 << len(basis)):
        v ^= basis[(i & -i).bit_length() - 1]  # Gray code step
        w = v.bit_count()
        if best is not None and w >= best:
            continue
        if any((v & t).bit_count() & 1 for t in tests):
            best = w
    return best


# descriptors ----------------------------------------------------------------


def _load_matrix(spec: Any, base: Path) -> BinaryMatrix:
    if isinstance(spec, list):
        return BinaryMatrix.from_strings(spec)
    if isinstance(spec, str):
        return BinaryMatrix.from_strings(spec.split())
    if isinstance(spec, dict):
        if "alist" in spec:
            return read_alist(base / spec["alist"])
        if "dense" in spec:
            return read_dense(base / spec["dense"])
        if "circulant_blocks" in spec:
            # nested list [block_row][block_col] -> exponent list, lifted with size l
            l = int(spec["l"])
            rows = []
            for brow in spec["circulant_blocks"]:
                blocks = [circulant(exponents_to_coeffs(e, l), l).to_dense() for e in brow]
                rows.append(np.hstack(blocks))
            return BinaryMatrix.from_dense(np.vstack(rows))
    raise ValueError(f"cannot interpret matrix spec {spec!r}")


def _poly_spec(spec: Any, l: int) -> np.ndarray:
    if isinstance(spec, str):
        return _poly(spec, l)
    return exponents_to_coeffs(spec, l)


def build_from_descriptor(desc: dict | str | Path) -> CssCode:
    """Construct a code from a JSON descriptor (dict or path to a file).

    ``type`` is one of ``qt``, ``hgp``, ``lp``, ``gb`` or ``css`` (external H0/H1).
    Matrices are lists of 0/1 strings or ``{"alist": path}`` / ``{"dense": path}``
    relative to the descriptor's directory.
    """
    base = Path(".")
    if not isinstance(desc, dict):
        path = Path(desc)
        base = path.parent
        desc = json.loads(path.read_text())
    kind = desc.get("type")
    name = desc.get("id", desc.get("name", kind or ""))
    if kind == "qt":
        group = GroupTable.from_spec(desc["group"])
        return build_quadripartite_qt(
            group, desc["A"], desc["B"], _load_matrix(desc["H_A"], base), _load_matrix(desc["H_B"], base), name
        )
    if kind == "hgp":
        return build_hgp(_load_matrix(desc["A"], base), _load_matrix(desc["B"], base), name)
    if kind == "lp":
        l = int(desc["l"])
        return build_lp(_load_matrix(desc["A"], base), _load_matrix(desc["B"], base), l, name)
    if kind == "gb":
        l = int(desc["l"])
        return build_gb(_poly_spec(desc["a"], l), _poly_spec(desc["b"], l), l, name)
    if kind == "css":
        return css_from_pcms(_load_matrix(desc["H0"], base), _load_matrix(desc["H1"], base), None, name)
    raise ValueError(f"unknown code type {kind!r}")


def code_summary(code: CssCode) -> dict:
    """Row-weight statistics and parameters, as reported by the ``build`` command."""
    w = np.concatenate([code.H0.row_weights(), code.H1.row_weights()])
    out = {
        "id": code.name,
        "type": code.kind,
        "n": code.n,
        "k": code.k,
        "rows_H0": code.H0.rows,
        "rows_H1": code.H1.rows,
        "row_weight_avg": round(float(w.mean()), 4) if w.size else 0.0,
        "row_weight_min": int(w.min()) if w.size else 0,
        "row_weight_max": int(w.max()) if w.size else 0,
    }
    meta = code.meta
    if isinstance(meta, QtMeta):
        cx = meta.complex
        out["qt"] = {
            "group": cx.group.name,
            "group_order": cx.group.order,
            "A": list(cx.A),
            "B": list(cx.B),
            "delta": cx.delta,
            "k_A": meta.k_A,
            "k_B": meta.k_B,
            "H_A": meta.H_A.to_strings(),
            "H_B": meta.H_B.to_strings(),
            "qubit_order": "squares (g, a_pos, b_pos) lexicographic",
            "local_view_labels": {"00": "(a,b)", "01": "(a^-1,b)", "10": "(a,b^-1)", "11": "(a^-1,b^-1)"},
            "k_lower_bound": cx.group.order * (cx.delta**2 - 4 * meta.k_A * meta.k_B),
        }
    elif isinstance(meta, ProductMeta):
        out[meta.kind] = {"A_shape": list(meta.A.shape), "B_shape": list(meta.B.shape), "l": meta.lift}
    elif isinstance(meta, BicycleMeta):
        out["gb"] = {"l": meta.l, "a": list(meta.a), "b": list(meta.b)}
    return out

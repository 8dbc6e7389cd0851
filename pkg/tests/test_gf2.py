import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gencheck.gf2 import (
    BinaryMatrix,
    circulant,
    gf2_solve,
    hstack,
    kron,
    nullspace,
    rank,
    read_alist,
    read_dense,
    rowspace_contains,
    rref,
    vstack,
    write_alist,
    write_dense,
)

from conftest import random_matrix


def span(M: BinaryMatrix) -> set[tuple[int, ...]]:
    d = M.to_dense()
    out = set()
    for coeffs in itertools.product((0, 1), repeat=M.rows):
        v = np.zeros(M.cols, dtype=np.uint8)
        for c, row in zip(coeffs, d):
            if c:
                v ^= row
        out.add(tuple(int(x) for x in v))
    return out


def bit_matrices(max_rows=6, max_cols=70):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: arrays(np.uint8, s, elements=st.integers(0, 1))
    )


def test_rank_trivial_cases():
    assert rank(BinaryMatrix.identity(4)) == 4
    assert rank(BinaryMatrix.zeros(3, 5)) == 0


def test_rank_matches_span_size():
    rng = np.random.default_rng(1)
    for _ in range(20):
        M = random_matrix(rng, 5, 7)
        assert 2 ** rank(M) == len(span(M))


def test_out_of_range_access_raises():
    M = BinaryMatrix.zeros(2, 3)
    with pytest.raises(IndexError):
        M[2, 0]
    with pytest.raises(IndexError):
        M[0, 3]
    with pytest.raises(IndexError):
        M[-1, 0]


def test_padding_bits_stay_zero():
    M = BinaryMatrix.from_dense(np.ones((3, 67), dtype=np.uint8))
    assert int(M.row_weights().sum()) == 3 * 67
    assert (M.overlaps() == 67).all()
    N = M + M
    assert N.is_zero()


def test_from_strings_roundtrip():
    M = BinaryMatrix.from_strings(["1010", "0111"])
    assert M.to_strings() == ["1010", "0111"]
    assert M[0, 0] == 1 and M[0, 1] == 0  # column 0 is the leftmost character


def test_kron_examples():
    assert kron(BinaryMatrix.identity(2), BinaryMatrix.identity(2)) == BinaryMatrix.identity(4)
    one = BinaryMatrix.from_strings(["11"])
    assert kron(one, one).to_strings() == ["1111"]


def test_kron_index_formula():
    rng = np.random.default_rng(2)
    A, B = random_matrix(rng, 2, 3), random_matrix(rng, 3, 2)
    K = kron(A, B).to_dense()
    a, b = A.to_dense(), B.to_dense()
    for i, j, k, l in itertools.product(range(2), range(3), range(3), range(2)):
        assert K[i * 3 + k, j * 2 + l] == a[i, j] * b[k, l]


def test_rowspace_contains_examples():
    rng = np.random.default_rng(3)
    M = random_matrix(rng, 4, 8)
    assert rowspace_contains(M, np.zeros(8, dtype=np.uint8))
    assert rowspace_contains(BinaryMatrix.identity(3), [1, 0, 1])
    members = span(M)
    for _ in range(30):
        v = (rng.random(8) < 0.5).astype(np.uint8)
        assert rowspace_contains(M, v) == (tuple(int(x) for x in v) in members)
    with pytest.raises(ValueError):
        rowspace_contains(M, [1, 0])


def test_circulant_examples():
    assert circulant([1, 0, 0], 3) == BinaryMatrix.identity(3)
    assert circulant([0, 1, 0], 3).to_strings() == ["010", "001", "100"]
    C = circulant([1, 1, 0, 1], 4).to_dense()
    for i in range(4):
        assert set(np.flatnonzero(C[i])) == {i, (i + 1) % 4, (i + 3) % 4}


def test_gf2_solve_examples():
    assert list(gf2_solve(BinaryMatrix.identity(3), [0, 1, 0])) == [0, 1, 0]
    rng = np.random.default_rng(4)
    M = random_matrix(rng, 3, 6)
    assert not gf2_solve(M, np.zeros(3, dtype=np.uint8)).any()
    for _ in range(20):
        e = (rng.random(6) < 0.5).astype(np.uint8)
        s = M.mul_vec(e)
        u = gf2_solve(M, s)
        assert np.array_equal(M.mul_vec(u), s)


def test_gf2_solve_inconsistent_returns_none():
    M = BinaryMatrix.from_strings(["11", "11"])
    assert gf2_solve(M, [1, 0]) is None


def test_rref_pivots_leftmost():
    R, piv = rref(BinaryMatrix.from_strings(["0110", "0101", "1000"]))
    assert piv == [0, 1, 2]
    assert R.to_strings()[:3] == ["1000", "0101", "0011"]


def test_nullspace_is_kernel():
    rng = np.random.default_rng(5)
    for _ in range(10):
        H = random_matrix(rng, 3, 6)
        K = nullspace(H)
        assert K.rows == 6 - rank(H)
        assert (H @ K.T).is_zero()


def test_stacking_shapes():
    A = BinaryMatrix.identity(2)
    assert hstack([A, A]).shape == (2, 4)
    assert vstack([A, A]).shape == (4, 2)
    with pytest.raises(ValueError):
        hstack([A, BinaryMatrix.identity(3)])


def test_alist_and_dense_roundtrip(tmp_path):
    rng = np.random.default_rng(6)
    M = random_matrix(rng, 7, 11, p=0.3)
    write_alist(M, tmp_path / "m.alist")
    write_dense(M, tmp_path / "m.txt")
    assert read_alist(tmp_path / "m.alist") == M
    assert read_dense(tmp_path / "m.txt") == M


@settings(max_examples=60, deadline=None)
@given(bit_matrices())
def test_rank_transpose_invariant(d):
    M = BinaryMatrix.from_dense(d)
    assert rank(M) == rank(M.T)


@settings(max_examples=40, deadline=None)
@given(bit_matrices(3, 4), bit_matrices(3, 4), st.data())
def test_kron_mixed_product(a, b, data):
    A, B = BinaryMatrix.from_dense(a), BinaryMatrix.from_dense(b)
    c = data.draw(arrays(np.uint8, (A.cols, data.draw(st.integers(1, 3))), elements=st.integers(0, 1)))
    dd = data.draw(arrays(np.uint8, (B.cols, data.draw(st.integers(1, 3))), elements=st.integers(0, 1)))
    C, D = BinaryMatrix.from_dense(c), BinaryMatrix.from_dense(dd)
    assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)


@settings(max_examples=60, deadline=None)
@given(bit_matrices())
def test_rows_lie_in_rowspace(d):
    M = BinaryMatrix.from_dense(d)
    for i in range(M.rows):
        assert rowspace_contains(M, M.row(i))


@settings(max_examples=60, deadline=None)
@given(bit_matrices(), st.data())
def test_solve_never_returns_wrong_vector(d, data):
    M = BinaryMatrix.from_dense(d)
    s = data.draw(arrays(np.uint8, (M.rows,), elements=st.integers(0, 1)))
    u = gf2_solve(M, s)
    if u is not None:
        assert np.array_equal(M.mul_vec(u), s)
    else:
        assert not rowspace_contains(M.T, s)

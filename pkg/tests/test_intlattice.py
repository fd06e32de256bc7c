import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from heisrat.intlattice import (
    InfiniteIndexError,
    Lattice,
    NotSublatticeError,
    det,
    hnf,
    is_unimodular,
    kernel_of_congruence,
    lattice_equal,
    lattice_index,
    snf,
)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


@st.composite
def matrices(draw, max_dim=6, lo=-9, hi=9):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [draw(st.lists(st.integers(lo, hi), min_size=c, max_size=c)) for _ in range(r)]


def is_row_hnf(H):
    last = -1
    seen_zero = False
    for i, row in enumerate(H):
        nz = [j for j, a in enumerate(row) if a]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        if any(not 0 <= H[k][p] < row[p] for k in range(i)):
            return False
        last = p
    return True


def sympy_det(A):
    return int(sympy.Matrix(A).det())


def test_hnf_examples():
    assert hnf([[1, 0], [0, 1]])[0] == [[1, 0], [0, 1]]
    assert hnf([[0, 1], [1, 0]])[0] == [[1, 0], [0, 1]]
    H, U = hnf([[2, 0], [-1, 1]])
    assert abs(det(H)) == 2 and is_row_hnf(H)


def test_snf_examples():
    assert [snf([[2, 0], [0, 3]])[0][i][i] for i in range(2)] == [1, 6]
    assert snf([[0, 0], [0, 0]])[0] == [[0, 0], [0, 0]]
    A = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    D = snf(A)[0]
    assert D[0][0] * D[1][1] * D[2][2] == abs(sympy_det(A)) == 18


def test_det_and_unimodular():
    assert det([[0, 1], [-1, -2]]) == 1 and is_unimodular([[0, 1], [-1, -2]])
    assert det([[1, 0], [0, 1]]) == 1
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 5]]) == 5
    assert not is_unimodular([[1, 0, 0], [0, 1, 0], [0, 0, 5]])
    with pytest.raises(ValueError):
        det([[1, 2, 3]])


def test_kernel_examples():
    lat = kernel_of_congruence([[1, 1, 1]], [3])
    assert lat.rank == 3 and lat.determinant() == 3
    assert (1, 2, 0) in lat and (1, 0, 0) not in lat
    assert lattice_equal(kernel_of_congruence([[0, 0]], [5]), Lattice.full(2))
    assert kernel_of_congruence([[3, 3, 3]], [4]).determinant() == 4


def test_index_examples():
    two = Lattice.from_rows([[2, 0], [0, 2]])
    full = Lattice.full(2)
    assert lattice_index(two, full) == 4
    assert lattice_equal(two, two)
    even_sum = kernel_of_congruence([[1, 1]], [2])
    assert lattice_equal(Lattice.from_rows([[2, 0], [-1, 1]]), even_sum)
    with pytest.raises(NotSublatticeError):
        lattice_index(full, two)
    with pytest.raises(InfiniteIndexError):
        lattice_index(Lattice.from_rows([[2, 0]], 2), full)


@settings(max_examples=1000)
@given(matrices())
def test_hnf_properties(A):
    H, U = hnf(A)
    assert H == matmul(U, A)
    assert abs(sympy_det(U)) == 1
    assert is_row_hnf(H)
    assert hnf(H)[0] == H
    lat = Lattice.from_rows(H, len(A[0]))
    assert all(tuple(r) in lat for r in A)


@settings(max_examples=1000)
@given(matrices())
def test_snf_properties(A):
    D, U, V = snf(A)
    assert D == matmul(matmul(U, A), V)
    assert abs(sympy_det(U)) == 1 and abs(sympy_det(V)) == 1
    r, c = len(A), len(A[0])
    assert all(D[i][j] == 0 for i in range(r) for j in range(c) if i != j)
    diag = [D[i][i] for i in range(min(r, c))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[: len(nz)] == nz  # zeros trail
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    oracle = [abs(int(f)) for f in invariant_factors(sympy.Matrix(A), domain=sympy.ZZ) if f]
    assert nz == oracle
    if r == c and nz and len(nz) == r:
        prod = 1
        for d in nz:
            prod *= d
        assert prod == abs(sympy_det(A))


@st.composite
def unimodular(draw, n):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 8))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if i != j:
            k = draw(st.integers(-3, 3))
            M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return M


@given(st.data())
def test_hnf_is_canonical(data):
    A = data.draw(matrices(max_dim=4))
    V = data.draw(unimodular(len(A)))
    assert Lattice.from_rows(matmul(V, A), len(A[0])) == Lattice.from_rows(A, len(A[0]))


@given(st.data())
def test_index_multiplicativity(data):
    d = data.draw(st.integers(1, 4))
    C = Lattice.from_rows(data.draw(unimodular(d)))
    steps = [data.draw(st.lists(st.integers(1, 4), min_size=d, max_size=d)) for _ in range(2)]
    B = Lattice.from_rows([[b * s for b in row] for row, s in zip(C.basis, steps[0])], d)
    A = Lattice.from_rows([[b * s for b in row] for row, s in zip(B.basis, steps[1])], d)
    assert lattice_index(A, C) == lattice_index(A, B) * lattice_index(B, C)


@given(st.integers(1, 4), st.data())
def test_congruence_kernel_index_divides_moduli(d, data):
    k = data.draw(st.integers(1, 3))
    moduli = data.draw(st.lists(st.integers(1, 6), min_size=k, max_size=k))
    C = [data.draw(st.lists(st.integers(-6, 6), min_size=d, max_size=d)) for _ in range(k)]
    lat = kernel_of_congruence(C, moduli)
    assert lat.rank == d
    total = 1
    for m in moduli:
        total *= m
    assert total % lat.determinant() == 0
    for i in range(d):
        for m in moduli:
            assert tuple(total * int(j == i) for j in range(d)) in lat
    # membership by direct congruence on a box
    for row in lat.basis:
        assert all(sum(c * e for c, e in zip(Cj, row)) % m == 0 for Cj, m in zip(C, moduli))

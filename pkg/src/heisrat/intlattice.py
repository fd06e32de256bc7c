"""Integer matrices: Hermite and Smith normal forms, congruence kernels, lattices.

Matrices are lists of rows of Python ints.

Canonical HNF used throughout (row style): the nonzero rows come first and
form an echelon -- the pivot (first nonzero entry) of each row lies strictly
right of the pivot of the row above; pivots are positive; every entry above
a pivot lies in ``[0, pivot)``.  Zero rows sit at the bottom.  Two lattices
are equal exactly when their HNF bases are identical tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

__all__ = [
    "InfiniteIndexError",
    "Lattice",
    "NotSublatticeError",
    "NotUnimodularError",
    "det",
    "hnf",
    "inverse_unimodular",
    "is_unimodular",
    "kernel_of_congruence",
    "lattice_equal",
    "lattice_index",
    "snf",
]


class NotSublatticeError(ValueError):
    pass


class InfiniteIndexError(ValueError):
    pass


class NotUnimodularError(ValueError):
    pass


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _copy(A) -> list[list[int]]:
    return [list(map(int, row)) for row in A]


def _ncols(A, cols=None) -> int:
    if A:
        return len(A[0])
    return cols or 0


def hnf(A, cols: int | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form: ``H == U @ A`` with ``U`` unimodular.

    >>> hnf([[0, 1], [1, 0]])[0]
    [[1, 0], [0, 1]]
    """
    H = _copy(A)
    m = len(H)
    n = _ncols(H, cols)
    U = _identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][c]]
            if not rows:
                break
            p = min(rows, key=lambda i: abs(H[i][c]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            piv = H[r][c]
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // piv
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            piv = H[r][c]
            for i in range(r):
                q = H[i][c] // piv
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
    return H, U


def snf(A) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``D == U @ A @ V`` with d_1 | d_2 | ... and d_i >= 0."""
    D = _copy(A)
    m = len(D)
    n = len(D[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        D[i] = [a - q * b for a, b in zip(D[i], D[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in D:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            clean = True
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, D[i][t] // piv)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, D[t][j] // piv)
                    if D[t][j]:
                        clean = False
            if clean:
                # divisibility: pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % piv), None)
                if bad is None:
                    break
                row_op(t, bad[0], -1)
                continue
            entries = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            entries += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return D, U, V


def det(A) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    M = _copy(A)
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def is_unimodular(A) -> bool:
    return abs(det(A)) == 1


def inverse_unimodular(A) -> list[list[int]]:
    """Integer inverse of a unimodular matrix."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            raise NotUnimodularError("singular matrix")
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    inv = [row[n:] for row in M]
    if any(x.denominator != 1 for row in inv for x in row):
        raise NotUnimodularError("inverse is not integral")
    return [[int(x) for x in row] for row in inv]


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^dim, stored by its canonical HNF basis."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows, dim: int | None = None) -> "Lattice":
        rows = [list(r) for r in rows]
        if dim is None:
            if not rows:
                raise ValueError("dimension needed for an empty generating set")
            dim = len(rows[0])
        if any(len(r) != dim for r in rows):
            raise ValueError("row length does not match lattice dimension")
        H, _ = hnf(rows, dim)
        return cls(dim, tuple(tuple(r) for r in H if any(r)))

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls(dim, tuple(tuple(r) for r in _identity(dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a) for r in self.basis]

    def coordinates(self, v) -> list[int] | None:
        """Integer coefficients expressing ``v`` in the basis, or None if ``v`` is not in the lattice."""
        v = list(v)
        coeffs = []
        for row, p in zip(self.basis, self.pivots()):
            if v[p] % row[p]:
                return None
            q = v[p] // row[p]
            coeffs.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return coeffs if not any(v) else None

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def determinant(self) -> int:
        """Covolume for a full-rank lattice (product of pivots)."""
        if self.rank != self.dim:
            raise InfiniteIndexError("lattice is not of full rank")
        return prod(r[p] for r, p in zip(self.basis, self.pivots()))


def lattice_equal(a: Lattice, b: Lattice) -> bool:
    return a.dim == b.dim and a.basis == b.basis


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """``|sup / sub|``; raises when ``sub`` is not contained or the ranks differ."""
    if sub.dim != sup.dim:
        raise ValueError("lattices live in different ambient dimensions")
    coords = []
    for row in sub.basis:
        c = sup.coordinates(row)
        if c is None:
            raise NotSublatticeError(f"{row} is not in the larger lattice")
        coords.append(c)
    if sub.rank != sup.rank:
        raise InfiniteIndexError(f"rank {sub.rank} inside rank {sup.rank}: infinite index")
    return abs(det(coords))


def kernel_of_congruence(C, moduli, dim: int | None = None) -> Lattice:
    """``{e in Z^d : C[j] . e == 0 (mod moduli[j]) for all j}``.

    Computed from the SNF of ``[C | diag(moduli)]``: its integer kernel,
    projected onto the first ``d`` coordinates.
    """
    C = _copy(C)
    r = len(C)
    if len(moduli) != r:
        raise ValueError("one modulus per congruence row")
    d = len(C[0]) if r else dim
    if d is None:
        raise ValueError("dimension needed for an empty congruence system")
    if r == 0:
        return Lattice.full(d)
    M = [C[j] + [moduli[j] if k == j else 0 for k in range(r)] for j in range(r)]
    D, _, V = snf(M)
    rank = sum(1 for i in range(min(r, d + r)) if D[i][i])
    kernel = [[V[i][k] for i in range(d)] for k in range(rank, d + r)]
    return Lattice.from_rows(kernel, d)


def lcm_list(values) -> int:
    out = 1
    for v in values:
        out = out // gcd(out, v) * v
    return out

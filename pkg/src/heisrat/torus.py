"""Diagonal abelian actions on tori and their invariant character lattices.

A Laurent monomial ``x^e`` is fixed by a diagonal action exactly when ``e``
lies in the kernel of the character map ``e -> (chi_j . e mod m_j)_j``.
That kernel is a full-rank sublattice of Z^d; the monomials of any basis
of it generate the invariant subfield (Fischer's theorem -- cited, not
re-proved here).  Field equalities between monomial subfields therefore
reduce to lattice equalities, which HNF decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .cyclotomic import Cyclotomic, root_of_unity
from .intlattice import (
    InfiniteIndexError,
    Lattice,
    kernel_of_congruence,
    lattice_equal,
    lattice_index,
)
from .laurent import ScaledMonomialMap

__all__ = [
    "DiagonalAction",
    "GenerationVerdict",
    "InvariantGenerators",
    "LinearChange",
    "UnstableSublatticeError",
    "diagonal_action_of",
    "check_shift_diagonalization",
    "diagonalize_cyclic_permutation",
    "fischer_generators",
    "induced_action",
    "invariant_character_lattice",
    "restrict_action",
    "subgroup_order",
    "verify_generating_set",
]


class UnstableSublatticeError(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalAction:
    """Generator j scales variable i by zeta_{m_j}^{chars[j][i]}."""

    d: int
    generators: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        gens = []
        for m, chi in self.generators:
            if m < 1 or len(chi) != self.d:
                raise ValueError("bad generator for a diagonal action")
            gens.append((m, tuple(c % m for c in chi)))
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def character_matrix(self) -> list[list[int]]:
        return [list(chi) for _, chi in self.generators]

    @property
    def moduli(self) -> list[int]:
        return [m for m, _ in self.generators]

    def fixes(self, e: Sequence[int]) -> bool:
        return all(sum(c * x for c, x in zip(chi, e)) % m == 0 for m, chi in self.generators)


def diagonal_action_of(maps: Sequence[ScaledMonomialMap]) -> DiagonalAction:
    """Read a diagonal action off diagonal scaled monomial maps."""
    gens = []
    d = maps[0].dim
    for g in maps:
        if g.matrix != ScaledMonomialMap.identity(d).matrix:
            raise ValueError("map is not diagonal")
        m = 1
        for p in g.phases:
            m = m * p.denominator // gcd(m, p.denominator)
        gens.append((m, tuple(int(p * m) for p in g.phases)))
    return DiagonalAction(d, tuple(gens))


def invariant_character_lattice(a: DiagonalAction) -> Lattice:
    return kernel_of_congruence(a.character_matrix, a.moduli, a.d)


@dataclass(frozen=True)
class InvariantGenerators:
    """HNF basis rows of an invariant character lattice, read as monomials."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def lattice(self) -> Lattice:
        return Lattice.from_rows(self.rows, len(self.rows[0]))


def fischer_generators(a: DiagonalAction) -> InvariantGenerators:
    return InvariantGenerators(invariant_character_lattice(a).basis)


@dataclass(frozen=True)
class GenerationVerdict:
    kind: str  # "generates" | "proper_sublattice" | "not_invariant"
    index: int | None = None
    row: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self):
        return self.kind == "generates"


def verify_generating_set(a: DiagonalAction, candidate) -> GenerationVerdict:
    """Do the candidate monomials generate the invariant monomial lattice?"""
    rows = [tuple(r) for r in candidate]
    for r in rows:
        if len(r) != a.d:
            raise ValueError("candidate row has the wrong dimension")
        if not a.fixes(r):
            return GenerationVerdict("not_invariant", row=r)
    inv = invariant_character_lattice(a)
    span = Lattice.from_rows(rows, a.d) if rows else Lattice(a.d, ())
    if lattice_equal(span, inv):
        return GenerationVerdict("generates", index=1)
    try:
        idx = lattice_index(span, inv)
    except InfiniteIndexError:
        return GenerationVerdict("proper_sublattice", index=None,
                                 detail=f"rank {span.rank} < {inv.rank}")
    return GenerationVerdict("proper_sublattice", index=idx)


def subgroup_order(a: DiagonalAction) -> int:
    """Order of the image of Z^d in (+) Z/m_j under the characters, by closure."""
    start = tuple(0 for _ in a.generators)
    cols = [tuple(chi[i] for _, chi in a.generators) for i in range(a.d)]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for col in cols:
                w = tuple((x + c) % m for x, c, m in zip(v, col, a.moduli))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


def induced_action(m: ScaledMonomialMap, basis: Sequence[Sequence[int]]) -> ScaledMonomialMap:
    """Rewrite ``m`` in the coordinates ``y_k = x^basis[k]``.

    ``y_k`` pulls back to ``c^basis[k] x^(A basis[k])``, which must again be
    a monomial in the ``y``'s: ``A basis[k]`` has to lie in the row span of
    ``basis``.  The basis may span a sublattice of any rank r; the result is
    an r-dimensional map.
    """
    rows = [tuple(r) for r in basis]
    lat = Lattice.from_rows(rows, m.dim)
    if lat.rank != len(rows):
        raise ValueError("basis rows are linearly dependent")
    # coordinates relative to the given (not the HNF) basis
    to_given = _solver(rows, lat)
    cols = []
    phases = []
    for b in rows:
        image = m.image_exponent(b)
        t = to_given(image)
        if t is None:
            raise UnstableSublatticeError(f"sublattice not stable: image {image} of {b} leaves it")
        cols.append(t)
        phases.append(m.image_phase(b))
    r = len(rows)
    mat = [[cols[j][i] for j in range(r)] for i in range(r)]
    return ScaledMonomialMap.from_phases(mat, phases)


def _solver(rows, lat: Lattice):
    """Function v -> integer t with sum t_k rows[k] == v, or None."""
    from .intlattice import inverse_unimodular

    # change of basis from the given rows to the HNF rows is unimodular
    coords = [lat.coordinates(r) for r in rows]  # rows in HNF coordinates
    inv = inverse_unimodular(coords)  # HNF rows in given-row coordinates

    def solve(v):
        c = lat.coordinates(v)
        if c is None:
            return None
        return [sum(c[i] * inv[i][k] for i in range(len(c))) for k in range(len(rows))]

    return solve


def restrict_action(m: ScaledMonomialMap, keep: Sequence[int]) -> ScaledMonomialMap:
    """Restrict to the coordinates ``keep``; their images may not involve the others."""
    keep = list(keep)
    drop = [i for i in range(m.dim) if i not in keep]
    for j in keep:
        col = m.column(j)
        if any(col[i] for i in drop):
            raise UnstableSublatticeError(f"image of coordinate {j} involves excluded coordinates")
    mat = [[m.matrix[i][j] for j in keep] for i in keep]
    return ScaledMonomialMap.from_phases(mat, [m.phases[j] for j in keep])


# ---------------------------------------------------------------------------
# linearization of a cyclic permutation


def _mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Cyclotomic(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def _mat_inverse(A):
    n = len(A)
    M = [list(row) + [Cyclotomic(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        pv = M[c][c].inv()
        M[c] = [x * pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


@dataclass(frozen=True)
class LinearChange:
    """New coordinates ``u_j = sum_i matrix[j][i] * W_i`` with an exact inverse."""

    matrix: tuple[tuple[Cyclotomic, ...], ...]
    inverse: tuple[tuple[Cyclotomic, ...], ...] = field(default=())

    @classmethod
    def of(cls, matrix) -> "LinearChange":
        inv = _mat_inverse([list(r) for r in matrix])
        return cls(tuple(tuple(r) for r in matrix), tuple(tuple(r) for r in inv))


def diagonalize_cyclic_permutation(n: int) -> tuple[LinearChange, DiagonalAction]:
    """Fourier coordinates for the shift W_1 -> W_2 -> ... -> W_n -> W_1.

    ``u_j = sum_i zeta_n^(i j) W_{i+1}`` satisfies ``u_j -> zeta_n^-j u_j``.
    """
    F = [[root_of_unity(n, i * j) for i in range(n)] for j in range(n)]
    action = DiagonalAction(n, ((n, tuple(-j for j in range(n))),))
    return LinearChange.of(F), action


def shift_matrix(n: int):
    """The linear map with W_i -> W_{i+1}; column i is e_{i+1}."""
    return [[Cyclotomic(int(r == (c + 1) % n)) for c in range(n)] for r in range(n)]


def check_shift_diagonalization(change: LinearChange, action: DiagonalAction) -> bool:
    """Exact conjugation check ``F^-T S F^T == diag(characters)``."""
    n = action.d
    (m, chi), = action.generators
    F = change.matrix
    Ft = [[F[j][i] for j in range(n)] for i in range(n)]
    Ft_inv = [[change.inverse[j][i] for j in range(n)] for i in range(n)]
    conj = _mat_mul(Ft_inv, _mat_mul(shift_matrix(n), Ft))
    return all(
        conj[i][j] == (root_of_unity(m, chi[i]) if i == j else 0)
        for i in range(n) for j in range(n)
    )

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from heisrat.heisenberg import commutator, schrodinger
from heisrat.intlattice import Lattice, lattice_index
from heisrat.laurent import LaurentPolynomial, ScaledMonomialMap, compose, pullback
from heisrat.rationalize import y_rows
from heisrat.torus import (
    DiagonalAction,
    UnstableSublatticeError,
    check_shift_diagonalization,
    diagonal_action_of,
    diagonalize_cyclic_permutation,
    fischer_generators,
    induced_action,
    invariant_character_lattice,
    subgroup_order,
    verify_generating_set,
)


def lam_action(n):
    return DiagonalAction(n, ((n, (1,) * n),))


def test_invariant_lattice_examples():
    for n in range(2, 7):
        lat = invariant_character_lattice(lam_action(n))
        assert lattice_index(lat, Lattice.full(n)) == n
    assert invariant_character_lattice(DiagonalAction(3, ((5, (0, 0, 0)),))) == Lattice.full(3)
    xi_tail = DiagonalAction(3, ((4, (3, 3, 3)),))
    assert invariant_character_lattice(xi_tail).determinant() == 4


def test_fischer_examples():
    gens = fischer_generators(lam_action(2))
    assert gens.lattice == Lattice.from_rows([(2, 0), (1, 1)])
    assert fischer_generators(DiagonalAction(2, ((3, (0, 0)),))).rows == ((1, 0), (0, 1))
    assert fischer_generators(DiagonalAction(1, ((7, (1,)),))).rows == ((7,),)


def test_verify_generating_set_examples():
    for n in range(2, 7):
        assert verify_generating_set(lam_action(n), y_rows(n))
        partial = verify_generating_set(lam_action(n), [y_rows(n)[0]])
        assert partial.kind == "proper_sublattice" and partial.index is None
        bad = verify_generating_set(lam_action(n), [[1] + [0] * (n - 1)])
        assert bad.kind == "not_invariant" and bad.row == (1,) + (0,) * (n - 1)
    doubled = verify_generating_set(lam_action(2), [(4, 0), (1, 1)])
    assert doubled.kind == "proper_sublattice" and doubled.index == 2


def test_diagonal_action_of_commutator():
    for n in range(2, 6):
        a = diagonal_action_of([commutator(n)])
        assert invariant_character_lattice(a) == invariant_character_lattice(lam_action(n))


def test_induced_eta_on_y():
    n = 4
    eta_y = induced_action(schrodinger(n).eta, y_rows(n))
    y = [LaurentPolynomial.variable(n, i) for i in range(n)]
    assert pullback(y[1], eta_y) == y[2]
    assert pullback(y[2], eta_y) == y[3]
    assert pullback(y[3], eta_y) == (y[1] * y[2] * y[3]) ** -1
    assert pullback(y[0], eta_y) == y[0] * y[1] ** n


def test_induced_identity_and_xi():
    n = 5
    ident = induced_action(ScaledMonomialMap.identity(n), y_rows(n))
    assert ident.is_identity()
    xi_y = induced_action(schrodinger(n).xi, y_rows(n))
    assert xi_y.matrix == ScaledMonomialMap.identity(n).matrix
    assert len(set(xi_y.phases[1:])) == 1 and xi_y.phases[1] != 0


def test_unstable_sublattice():
    with pytest.raises(UnstableSublatticeError):
        induced_action(schrodinger(3).eta, [(1, 0, 0)])


@pytest.mark.parametrize("n", range(1, 9))
def test_diagonalize_cyclic_permutation(n):
    change, action = diagonalize_cyclic_permutation(n)
    assert check_shift_diagonalization(change, action)
    (m, chi), = action.generators
    assert m == n and sorted(chi) == sorted((-j) % n for j in range(n))
    if n == 3:
        assert chi == (0, 2, 1)


def character_matrices():
    return st.integers(1, 4).flatmap(lambda d: st.lists(
        st.tuples(st.integers(1, 6), st.lists(st.integers(0, 5), min_size=d, max_size=d).map(tuple)),
        min_size=1, max_size=3).map(lambda gens: DiagonalAction(d, tuple(gens))))


@given(character_matrices())
def test_fischer_properties(a):
    gens = fischer_generators(a)
    assert all(a.fixes(r) for r in gens.rows)
    assert verify_generating_set(a, gens.rows)
    lat = invariant_character_lattice(a)
    order = subgroup_order(a)
    assert lattice_index(lat, Lattice.full(a.d)) == order
    # SNF oracle: |image| = product of invariant factors of [C | diag(m)] over those of diag(m)
    C = [list(chi) + [m if k == j else 0 for k in range(len(a.generators))]
         for j, (m, chi) in enumerate(a.generators)]
    top = 1
    for f in invariant_factors(sympy.Matrix(C), domain=sympy.ZZ):
        top *= int(f)
    total = 1
    for m in a.moduli:
        total *= m
    assert total // top == order


@given(st.integers(2, 5), st.integers(0, 4), st.integers(0, 4))
def test_induced_action_functorial(n, i, j):
    act = schrodinger(n)
    words = [act.xi, act.eta, compose(act.xi, act.eta), commutator(n), compose(act.eta, act.eta)]
    a, b = words[i], words[j]
    rows = y_rows(n)
    assert induced_action(compose(a, b), rows) == compose(induced_action(a, rows), induced_action(b, rows))

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from heisrat.heisenberg import enumerate_group, molien_dimensions, schrodinger
from heisrat.laurent import parse, pullback
from heisrat.linsys import (
    BudgetExceeded,
    RationalPolynomial,
    TermOrder,
    basepoint_free_certificate,
    buchberger,
    check_groebner,
    f_poly,
    f_poly_m,
    hesse_generators,
    n3_showcase,
    normal_form,
    product_monomial,
    restrict_system_to_hyperplane,
    subalgebra_dimension,
    system_L,
    system_L_degree_n,
    variable_in_radical,
)

P = RationalPolynomial


def rp(text, d):
    return P.from_laurent(parse(text, d))


def to_sympy(f, xs):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** k for x, k in zip(xs, e)])
                for e, c in f.terms.items()), sympy.Integer(0))


def from_sympy(expr, xs):
    poly = sympy.Poly(expr, *xs)
    return P(len(xs), {e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


def test_f_poly_examples():
    assert f_poly(3, 1) == rp("x0*x1^2 + x1*x2^2 + x2*x0^2", 3)
    assert f_poly(3, 3) == rp("x0^3 + x1^3 + x2^3", 3)
    f = f_poly(2, 1)
    assert f == rp("2*x0*x1", 2) and len(f.terms) == 1
    with pytest.raises(ValueError):
        f_poly(3, 0)
    with pytest.raises(ValueError):
        f_poly(3, 4)


def test_f_poly_m_examples():
    assert all(f_poly_m(4, k, 4) == f_poly(4, k) for k in range(1, 5))
    assert f_poly_m(3, 2, 4) == rp("x0^2*x1^2 + x1^2*x2^2 + x2^2*x0^2", 3)
    with pytest.raises(ValueError):
        f_poly_m(3, 2, 2)


@given(st.integers(2, 6), st.data())
def test_f_poly_m_homogeneous(n, data):
    m = data.draw(st.integers(n, n + 4))
    k = data.draw(st.integers(1, m))
    f = f_poly_m(n, k, m)
    assert f.is_homogeneous() and f.degree() == m


def test_system_L_examples():
    L2 = system_L(2)
    assert L2 == [rp("(2*x0*x1)^2", 2), rp("(x0^2 + x1^2)^2", 2), rp("(x0*x1)^2", 2)]
    for n in range(2, 6):
        L = system_L(n)
        assert len(L) == n + 1
        assert all(f.is_homogeneous() and f.degree() == n * n for f in L)
    assert system_L_degree_n(3)[-1] == rp("x0*x1*x2", 3)
    assert product_monomial(3, 5) == rp("x0*x1*x2^3", 3)


@pytest.mark.parametrize("n", range(2, 7))
def test_system_L_invariant_under_whole_group(n):
    group = enumerate_group(n)
    for f in system_L(n):
        lf = f.to_laurent()
        assert all(pullback(lf, g) == lf for g in group)


def test_buchberger_examples():
    x = P.variable(1, 0)
    gb = buchberger([x ** 2 - 1])
    assert gb.polys == [x ** 2 - 1]
    x0, x1 = P.variable(2, 0), P.variable(2, 1)
    gb = buchberger([x0 * x1, x0 ** 2 + x1 ** 2])
    assert x1 ** 3 in gb.polys
    assert buchberger([P.constant(2, 1)]).is_unit
    with pytest.raises(ValueError):
        buchberger([P(2)])


def test_normal_form_examples():
    x = P.variable(1, 0)
    gb = buchberger([x])
    assert normal_form(x, gb) == P(1)
    assert normal_form(x + 1, gb) == P.constant(1, 1)


def test_budget_is_inconclusive():
    gens = system_L_degree_n(3)
    with pytest.raises(BudgetExceeded):
        buchberger([g.extend(1) for g in gens] + [1 - P.monomial((1, 0, 0, 1))], max_pairs=1)


def test_term_orders():
    lex = TermOrder("lex")
    grevlex = TermOrder()
    a, b = (1, 0, 2), (0, 3, 0)
    assert lex.key(a) > lex.key(b)
    assert grevlex.key(b) > grevlex.key(a)
    assert grevlex.key((1, 1, 0)) > grevlex.key((1, 0, 1))
    swapped = TermOrder("lex", (2, 1, 0))
    assert swapped.key(a) > swapped.key((1, 1, 1))
    with pytest.raises(ValueError):
        TermOrder("weird").key(a)


def polynomials(d=3, max_deg=3):
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * d), st.integers(-3, 3))
    return st.lists(term, min_size=1, max_size=3).map(lambda ts: P(d, ts))


@settings(max_examples=120)
@given(st.lists(polynomials(), min_size=1, max_size=3), st.sampled_from(["grevlex", "lex"]))
def test_buchberger_matches_sympy(gens, kind):
    gens = [g for g in gens if g]
    assume(gens)
    order = TermOrder(kind)
    try:
        gb = buchberger(gens, order, max_pairs=300)
    except BudgetExceeded:
        assume(False)
    assert all(check_groebner(gb, gens).values())
    xs = sympy.symbols("x0:3")
    oracle = sympy.groebner([to_sympy(g, xs) for g in gens], *xs, order=kind, domain=sympy.QQ)
    assert {from_sympy(e, xs) for e in oracle.exprs} == set(gb.polys)
    for g in gens:
        nf = normal_form(g * g + P.variable(3, 0), gb)
        assert normal_form(nf, gb) == nf


def test_radical_examples():
    x0, x1 = P.variable(2, 0), P.variable(2, 1)
    assert variable_in_radical([x0 * x1, x0 ** 2 + x1 ** 2], 0)
    x = P.variable(1, 0)
    assert not variable_in_radical([x ** 2 - 1], 0)
    assert variable_in_radical([x], 0)


def test_basepoint_free_small():
    for n in (2, 3):
        rep = basepoint_free_certificate(n)
        assert rep.status == "pass" and [o.variable for o in rep.outcomes] == [f"x{i}" for i in range(n)]
    rep = basepoint_free_certificate(6, max_pairs=50)
    assert rep.status == "inconclusive"
    with pytest.raises(ValueError):
        basepoint_free_certificate(3, method="f4")


def test_restriction():
    L = system_L_degree_n(3)
    assert restrict_system_to_hyperplane([f_poly(3, 3)], 0) == [rp("x1^3 + x2^3", 3)]
    assert restrict_system_to_hyperplane([product_monomial(3)], 1) == []
    assert len(restrict_system_to_hyperplane(L, 2)) == 3
    for n, k, m in [(3, 1, 3), (4, 2, 6), (5, 3, 7)]:
        for i in range(n):
            f = f_poly_m(n, k, m)
            r = restrict_system_to_hyperplane([f], i)[0]
            lost = {e for e in f.terms if e not in r.terms}
            expected = set()
            for j in ((i - 1) % n, i):
                e = [0] * n
                e[j] += k
                e[(j + 1) % n] += m - k
                expected.add(tuple(e))
            assert lost == expected


def test_hesse_generators_and_showcase():
    act = schrodinger(3)
    xyz = hesse_generators()[0].to_laurent()
    assert pullback(xyz, act.xi) == xyz
    assert subalgebra_dimension(hesse_generators(), 3) == 2
    show = n3_showcase()
    assert show.passed
    assert show.witness["subalgebra_dimensions"] == molien_dimensions(3, 9)
    assert show.witness["mismatched_degrees"] == []

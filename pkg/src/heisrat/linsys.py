"""Semi-invariants f_k, the linear systems L and L^(m), and basepoint-freeness.

Everything here has integer coefficients, so polynomials are plain
rational polynomials (no cyclotomics).  Basepoint-freeness of a system of
forms is certified on the affine cone: the common zero locus is the origin
exactly when every variable lies in the radical of the ideal, which the
Rabinowitsch trick turns into a unit-ideal test for a Groebner basis.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .laurent import LaurentPolynomial, pullback

__all__ = [
    "BudgetExceeded",
    "BUDGETS",
    "BasepointFreeReport",
    "GroebnerBasis",
    "RationalPolynomial",
    "TermOrder",
    "basepoint_free_certificate",
    "buchberger",
    "check_groebner",
    "f_poly",
    "f_poly_m",
    "hesse_generators",
    "n3_showcase",
    "normal_form",
    "product_monomial",
    "restrict_system_to_hyperplane",
    "subalgebra_dimension",
    "system_L",
    "system_L_degree_n",
    "system_L_m",
    "variable_in_radical",
]

Monomial = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """The Groebner computation hit its pair budget; the answer is inconclusive."""


class RationalPolynomial:
    """Polynomial in ``nvars`` variables with Fraction coefficients, nonnegative exponents."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        acc: dict[Monomial, Fraction] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e}")
            acc[e] = acc.get(e, 0) + Fraction(c)
        self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def monomial(cls, e, c=1):
        return cls(len(e), {tuple(e): c})

    @classmethod
    def variable(cls, nvars, i):
        return cls.monomial([int(k == i) for k in range(nvars)])

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def from_laurent(cls, f: LaurentPolynomial) -> "RationalPolynomial":
        return cls(f.dim, {e: c.to_fraction() for e, c in f.terms.items()})

    def to_laurent(self, variables=None) -> LaurentPolynomial:
        return LaurentPolynomial(self.nvars, self.terms, variables)

    def _lift(self, other):
        if isinstance(other, RationalPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return RationalPolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return RationalPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = RationalPolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._lift(other) if not isinstance(other, RationalPolynomial) else other
        if other is None:
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) == 1

    def substitute_zero(self, i: int) -> "RationalPolynomial":
        return RationalPolynomial(self.nvars, {e: c for e, c in self.terms.items() if e[i] == 0})

    def extend(self, extra: int = 1) -> "RationalPolynomial":
        """Same polynomial in ``extra`` more (trailing) variables."""
        return RationalPolynomial(self.nvars + extra, {e + (0,) * extra: c for e, c in self.terms.items()})

    def __str__(self):
        return str(self.to_laurent())

    def __repr__(self):
        return f"RationalPolynomial({self})"


@dataclass(frozen=True)
class TermOrder:
    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None  # variable indices, most significant first

    def key(self, e: Monomial):
        if self.priority is not None:
            e = tuple(e[i] for i in self.priority)
        if self.kind == "grevlex":
            return (sum(e), tuple(-x for x in reversed(e)))
        if self.kind == "lex":
            return e
        raise ValueError(f"unknown term order {self.kind!r}")


@dataclass
class GroebnerBasis:
    polys: list[RationalPolynomial]
    order: TermOrder
    reduced: bool = True
    pairs_processed: int = 0

    @property
    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0] == 1


# ---------------------------------------------------------------------------
# Buchberger


def _lead(f: dict, key):
    e = max(f, key=key)
    return e, f[e]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(f: dict, basis: list[tuple[Monomial, dict]], key) -> dict:
    """Full reduction of ``f`` by monic polynomials ``(lead, terms)``."""
    f = dict(f)
    rem: dict = {}
    while f:
        e, c = _lead(f, key)
        for le, g in basis:
            if _divides(le, e):
                shift = tuple(x - y for x, y in zip(e, le))
                for ge, gc in g.items():
                    m = tuple(x + y for x, y in zip(ge, shift))
                    v = f.get(m, 0) - c * gc
                    if v:
                        f[m] = v
                    else:
                        f.pop(m, None)
                break
        else:
            rem[e] = c
            del f[e]
    return rem


def _monic(f: dict, key) -> dict:
    _, c = _lead(f, key)
    return {e: v / c for e, v in f.items()}


def _spoly(f: dict, lf: Monomial, g: dict, lg: Monomial) -> dict:
    l = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(l, lf))
    sg = tuple(a - b for a, b in zip(l, lg))
    out: dict = {}
    for e, c in f.items():
        m = tuple(a + b for a, b in zip(e, sf))
        out[m] = out.get(m, 0) + c
    for e, c in g.items():
        m = tuple(a + b for a, b in zip(e, sg))
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def buchberger(gens: Sequence[RationalPolynomial], order: TermOrder = TermOrder(),
               max_pairs: int = 20000) -> GroebnerBasis:
    """Reduced Groebner basis, with the coprime and chain pair criteria.

    Raises :class:`BudgetExceeded` after ``max_pairs`` S-pairs.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs a nonzero generator")
    nvars = gens[0].nvars
    key = order.key
    one = (0,) * nvars
    G: list[tuple[Monomial, dict]] = []
    pairs: set[tuple[int, int]] = set()
    processed = 0

    def unit():
        return GroebnerBasis([RationalPolynomial.constant(nvars, 1)], order, True, processed)

    def add(h: dict):
        h = _monic(h, key)
        lh, _ = _lead(h, key)
        idx = len(G)
        G.append((lh, h))
        for i in range(idx):
            pairs.add((i, idx))
        return lh

    for g in gens:
        r = _reduce(g.terms, G, key)
        if r:
            if add(r) == one:
                return unit()
    while pairs:
        if processed >= max_pairs:
            raise BudgetExceeded(f"S-pair budget {max_pairs} exhausted")
        i, j = min(pairs, key=lambda p: (key(_lcm(G[p[0]][0], G[p[1]][0])), p))
        pairs.discard((i, j))
        li, lj = G[i][0], G[j][0]
        l = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        if any(k != i and k != j and _divides(G[k][0], l)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue  # chain criterion
        processed += 1
        r = _reduce(_spoly(G[i][1], li, G[j][1], lj), G, key)
        if r:
            if add(r) == one:
                return unit()
    # minimalize and interreduce
    leads = [le for le, _ in G]
    keep = []
    for i, le in enumerate(leads):
        if any(_divides(leads[k], le) and (leads[k] != le or k < i) for k in range(len(G)) if k != i):
            continue
        keep.append(G[i])
    reduced = []
    for i, (le, g) in enumerate(keep):
        others = [keep[k] for k in range(len(keep)) if k != i]
        tail = {e: c for e, c in g.items() if e != le}
        reduced.append({le: Fraction(1), **_reduce(tail, others, key)})
    reduced.sort(key=lambda g: key(_lead(g, key)[0]), reverse=True)
    return GroebnerBasis([RationalPolynomial(nvars, g) for g in reduced], order, True, processed)


def normal_form(f: RationalPolynomial, gb: GroebnerBasis) -> RationalPolynomial:
    key = gb.order.key
    basis = [(_lead(g.terms, key)[0], _monic(g.terms, key)) for g in gb.polys]
    return RationalPolynomial(f.nvars, _reduce(f.terms, basis, key))


def check_groebner(gb: GroebnerBasis, gens: Sequence[RationalPolynomial] = ()) -> dict[str, bool]:
    """Re-check the Buchberger postconditions from scratch."""
    key = gb.order.key
    basis = [(_lead(g.terms, key)[0], g.terms) for g in gb.polys]
    s_ok = all(
        not _reduce(_spoly(f, lf, g, lg), basis, key)
        for (lf, f), (lg, g) in combinations(basis, 2)
    )
    gens_ok = all(not normal_form(g, gb) for g in gens)
    leads = [le for le, _ in basis]
    reduced_ok = all(g[le] == 1 for le, g in basis) and all(
        not _divides(leads[k], e)
        for i, (le, g) in enumerate(basis) for e in g for k in range(len(basis)) if k != i
    )
    return {"s_pairs_reduce_to_zero": s_ok, "generators_reduce_to_zero": gens_ok, "reduced": reduced_ok}


def variable_in_radical(gens: Sequence[RationalPolynomial], i: int, order: TermOrder | None = None,
                        max_pairs: int = 20000) -> bool:
    """Rabinowitsch: x_i is in rad(I) iff I + (1 - u x_i) is the unit ideal."""
    nvars = gens[0].nvars
    ext = [g.extend(1) for g in gens]
    u_x = RationalPolynomial.monomial([int(k == i) for k in range(nvars)] + [1])
    ext.append(1 - u_x)
    if order is None:
        order = TermOrder("grevlex")  # u is the last variable
    return buchberger(ext, order, max_pairs).is_unit


# ---------------------------------------------------------------------------
# the linear systems


def f_poly_m(n: int, k: int, m: int) -> RationalPolynomial:
    """sum_{i in Z/n} x_i^k x_{i+1}^(m-k)."""
    if not (1 <= k <= m) or m < n:
        raise ValueError(f"need 1 <= k <= m and m >= n (got n={n}, k={k}, m={m})")
    terms: dict = {}
    for i in range(n):
        e = [0] * n
        e[i] += k
        e[(i + 1) % n] += m - k
        e = tuple(e)
        terms[e] = terms.get(e, 0) + 1
    return RationalPolynomial(n, terms)


def f_poly(n: int, k: int) -> RationalPolynomial:
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    return f_poly_m(n, k, n)


def product_monomial(n: int, m: int | None = None) -> RationalPolynomial:
    """x_0 x_1 ... x_{n-2} x_{n-1}^(m-n+1); m = n gives x_0 ... x_{n-1}."""
    m = n if m is None else m
    return RationalPolynomial.monomial([1] * (n - 1) + [m - n + 1])


def system_L(n: int) -> list[RationalPolynomial]:
    """f_1^n, ..., f_n^n and (x_0 ... x_{n-1})^n."""
    return [f_poly(n, k) ** n for k in range(1, n + 1)] + [product_monomial(n) ** n]


def system_L_degree_n(n: int) -> list[RationalPolynomial]:
    return [f_poly(n, k) for k in range(1, n + 1)] + [product_monomial(n)]


def system_L_m(n: int, m: int) -> list[RationalPolynomial]:
    return [f_poly_m(n, k, m) for k in range(1, m + 1)] + [product_monomial(n, m)]


def restrict_system_to_hyperplane(system: Sequence[RationalPolynomial], i: int) -> list[RationalPolynomial]:
    """Set x_i = 0 in every member; members that vanish are dropped."""
    out = []
    for f in system:
        r = f.substitute_zero(i)
        if r:
            out.append(r)
    return out


@dataclass
class VariableOutcome:
    variable: str
    status: str  # "pass" | "fail" | "inconclusive"
    seconds: float = 0.0
    detail: str = ""


@dataclass
class BasepointFreeReport:
    n: int
    outcomes: list[VariableOutcome] = field(default_factory=list)
    budget: int = 0

    @property
    def status(self) -> str:
        kinds = {o.status for o in self.outcomes}
        if "fail" in kinds:
            return "fail"
        if "inconclusive" in kinds:
            return "inconclusive"
        return "pass"


BUDGETS = {"small": 50, "default": 20000, "large": 200000}


def basepoint_free_certificate(n: int, max_pairs: int = BUDGETS["default"], max_n: int = 4,
                               method: str = "groebner") -> BasepointFreeReport:
    """Radical membership of every variable for (f_1, ..., f_n, x_0 ... x_{n-1})."""
    if method != "groebner":
        raise ValueError(f"unknown method {method!r}")
    report = BasepointFreeReport(n, budget=max_pairs)
    gens = system_L_degree_n(n)
    for i in range(n):
        name = f"x{i}"
        if n > max_n:
            report.outcomes.append(VariableOutcome(name, "inconclusive", 0.0,
                                                   f"n = {n} exceeds the supported range n <= {max_n}"))
            continue
        start = time.perf_counter()
        try:
            ok = variable_in_radical(gens, i, max_pairs=max_pairs)
            status, detail = ("pass", "unit ideal") if ok else ("fail", "not the unit ideal")
        except BudgetExceeded as exc:
            status, detail = "inconclusive", str(exc)
        report.outcomes.append(VariableOutcome(name, status, time.perf_counter() - start, detail))
    return report


# ---------------------------------------------------------------------------
# n = 3 showcase


def hesse_generators() -> list[RationalPolynomial]:
    """xyz, x^3+y^3+z^3, x^3y^3+y^3z^3+z^3x^3, x^3y^6+y^3z^6+z^3x^6."""
    cyc = lambda a, b: RationalPolynomial(3, {  # noqa: E731
        tuple(a if k == i else b if k == (i + 1) % 3 else 0 for k in range(3)): 1 for i in range(3)})
    return [RationalPolynomial.monomial((1, 1, 1)), cyc(3, 0), cyc(3, 3), cyc(3, 6)]


def _weighted_monomials(weights, d):
    if not weights:
        if d == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for k in range(d // w + 1):
        for tail in _weighted_monomials(rest, d - k * w):
            yield (k,) + tail


def subalgebra_dimension(gens: Sequence[RationalPolynomial], d: int) -> int:
    """Dimension of the degree-d part of the algebra generated by homogeneous ``gens``."""
    from ._linalg import sparse_rank

    weights = [g.degree() for g in gens]
    rows = []
    for exps in _weighted_monomials(weights, d):
        p = RationalPolynomial.constant(gens[0].nvars, 1)
        for g, k in zip(gens, exps):
            p = p * g**k
        rows.append(dict(p.terms))
    return sparse_rank(rows)


@dataclass
class ShowcaseReport:
    checks: dict[str, bool]
    witness: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def n3_showcase(max_degree: int = 9) -> ShowcaseReport:
    from .heisenberg import enumerate_group, molien_dimensions, schrodinger, stabilizer_orbit_report

    gens = hesse_generators()
    group = enumerate_group(3)
    checks = {}
    for k, g in enumerate(gens):
        lg = g.to_laurent()
        checks[f"generator_{k}_invariant"] = all(pullback(lg, h) == lg for h in group)
    act = schrodinger(3)
    for label, g in (("x^3+y^3+z^3", gens[1]), ("xyz", gens[0])):
        lg = g.to_laurent()
        checks[f"xi_fixes_{label}"] = pullback(lg, act.xi) == lg
        checks[f"eta_fixes_{label}"] = pullback(lg, act.eta) == lg
    molien = molien_dimensions(3, max_degree)
    dims = [subalgebra_dimension(gens, d) for d in range(max_degree + 1)]
    mismatch = [d for d in range(max_degree + 1) if dims[d] != molien[d]]
    checks["subalgebra_dimensions_match_molien"] = not mismatch
    orbits = stabilizer_orbit_report(3)
    checks["four_orbits_stabilizer_3"] = len(orbits) == 4 and all(o.stabilizer_order == 3 for o in orbits)
    witness = {
        "molien": molien,
        "subalgebra_dimensions": dims,
        "mismatched_degrees": mismatch,
        "orbits": [{"size": len(o.points), "stabilizer_order": o.stabilizer_order,
                    "points": [[c.render() for c in p] for p in o.points]} for o in orbits],
    }
    return ShowcaseReport(checks, witness)

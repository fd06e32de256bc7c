"""The finite Heisenberg group H_n in its Schroedinger representation.

``xi`` pulls ``x_i`` back to ``omega^-i x_i`` and ``eta`` pulls ``x_i`` back
to ``x_{i+1}`` (indices mod n), with ``omega = zeta_n^r`` for a chosen
``r`` prime to n (default 1).

Group convention: the product ``g * h`` is realized by
``compose(realize(g), realize(h))``, i.e. pull back by ``g`` first.
Elements are written ``omega^c xi^a eta^b``; the normal form is read off a
composed map (``b`` from the permutation, ``a`` and ``c`` from the
scalars), never from a cocycle formula.  With this convention the
commutator ``xi eta xi^-1 eta^-1`` realizes as ``omega * Id``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, gcd

from ._linalg import sparse_rank
from .cyclotomic import Cyclotomic, try_as_root_of_unity
from .laurent import (
    LaurentPolynomial,
    ScaledMonomialMap,
    compose,
    inverse,
    phase_to_root,
    pullback,
)

__all__ = [
    "GroupAction",
    "OrbitRecord",
    "center",
    "HeisenbergElement",
    "ResourceLimitError",
    "character_of_semiinvariant",
    "commutator",
    "decompose",
    "enumerate_group",
    "fixed_points_projective",
    "has_simple_spectrum",
    "invariant_dimension_bruteforce",
    "molien_dimensions",
    "multiply",
    "realize",
    "reynolds",
    "schrodinger",
    "spectrum",
    "spectrum_phases",
    "stabilizer_orbit_report",
]


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupAction:
    n: int
    xi: ScaledMonomialMap
    eta: ScaledMonomialMap
    omega_power: int = 1

    @property
    def omega_phase(self) -> Fraction:
        return Fraction(self.omega_power, self.n) % 1


@lru_cache(maxsize=None)
def schrodinger(n: int, omega_power: int = 1) -> GroupAction:
    """Generators xi, eta of H_n acting on x_0..x_{n-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(omega_power, n) != 1:
        raise ValueError("omega must be a primitive n-th root of unity")
    ident = ScaledMonomialMap.identity(n).matrix
    w = Fraction(omega_power, n)
    xi = ScaledMonomialMap.from_phases(ident, [-i * w for i in range(n)])
    shift = [[int(i == (j + 1) % n) for j in range(n)] for i in range(n)]
    eta = ScaledMonomialMap(shift)
    return GroupAction(n, xi, eta, omega_power)


@dataclass(frozen=True)
class HeisenbergElement:
    """``omega^c xi^a eta^b`` with residues in [0, n)."""

    n: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)
        object.__setattr__(self, "c", self.c % self.n)

    @classmethod
    def identity(cls, n: int) -> "HeisenbergElement":
        return cls(n, 0, 0, 0)

    @property
    def is_central(self) -> bool:
        return self.a == 0 and self.b == 0


def realize(e: HeisenbergElement, omega_power: int = 1) -> ScaledMonomialMap:
    """x_j -> omega^(c - a j) x_{j+b}."""
    act = schrodinger(e.n, omega_power)
    n, w = e.n, act.omega_phase
    shift = [[int(i == (j + e.b) % n) for j in range(n)] for i in range(n)]
    return ScaledMonomialMap.from_phases(shift, [(e.c - e.a * j) * w for j in range(n)])


def decompose(m: ScaledMonomialMap, omega_power: int = 1) -> HeisenbergElement:
    """Read the normal form ``(a, b, c)`` back off a realized map."""
    n = m.dim
    perm = m.permutation()
    if perm is None:
        raise AssertionError("map is not a permutation shape; not in H_n")
    b = perm[0]
    if any(perm[j] != (j + b) % n for j in range(n)):
        raise AssertionError("permutation is not a cyclic shift; not in H_n")

    r_inv = pow(omega_power, -1, n) if n > 1 else 0

    def exponent(phase):
        k = phase * n
        if k.denominator != 1:
            raise AssertionError("scalar is not a power of omega; not in H_n")
        return int(k) * r_inv % n

    c = exponent(m.phases[0])
    a = (c - exponent(m.phases[1])) % n if n > 1 else 0
    e = HeisenbergElement(n, a, b, c)
    if realize(e, omega_power) != m:
        raise AssertionError("scalars are not of Heisenberg shape")
    return e


def multiply(e1: HeisenbergElement, e2: HeisenbergElement, omega_power: int = 1) -> HeisenbergElement:
    if e1.n != e2.n:
        raise ValueError("elements of different levels")
    return decompose(compose(realize(e1, omega_power), realize(e2, omega_power)), omega_power)


def commutator(n: int, omega_power: int = 1) -> ScaledMonomialMap:
    """``xi eta xi^-1 eta^-1`` as a map."""
    act = schrodinger(n, omega_power)
    m = compose(act.xi, act.eta)
    m = compose(m, inverse(act.xi))
    return compose(m, inverse(act.eta))


@lru_cache(maxsize=None)
def _group(n: int, omega_power: int) -> tuple[ScaledMonomialMap, ...]:
    act = schrodinger(n, omega_power)
    ident = ScaledMonomialMap.identity(n)
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in (act.xi, act.eta):
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    return tuple(order)


def enumerate_group(n: int, omega_power: int = 1) -> list[ScaledMonomialMap]:
    """Closure of {xi, eta} under composition (breadth-first order)."""
    return list(_group(n, omega_power))


def center(n: int, omega_power: int = 1) -> list[ScaledMonomialMap]:
    return [g for g in _group(n, omega_power) if g.is_scalar()]


# ---------------------------------------------------------------------------
# spectra and fixed points


def _cycles(m: ScaledMonomialMap):
    perm = m.permutation()
    if perm is None:
        raise ValueError("spectrum needs a scaled permutation map")
    seen = [False] * m.dim
    for start in range(m.dim):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        yield cyc, sum((m.phases[k] for k in cyc), Fraction(0)) % 1


def spectrum_phases(m: ScaledMonomialMap) -> list[Fraction]:
    """Eigenvalue phases: a cycle of length L with scalar phase s gives (s + t)/L, t < L."""
    out = []
    for cyc, s in _cycles(m):
        L = len(cyc)
        out.extend(((s + t) / L) % 1 for t in range(L))
    return sorted(out)


def spectrum(m: ScaledMonomialMap) -> list[Cyclotomic]:
    """Eigenvalues (with multiplicity) as exact roots of unity."""
    return [phase_to_root(p) for p in spectrum_phases(m)]


def has_simple_spectrum(m: ScaledMonomialMap) -> bool:
    ph = spectrum_phases(m)
    return len(set(ph)) == len(ph)


def _fixed_point_phases(m: ScaledMonomialMap):
    if not has_simple_spectrum(m):
        raise ValueError("repeated eigenvalue: fixed locus is not a finite set of points")
    points = []
    for cyc, s in _cycles(m):
        L = len(cyc)
        for t in range(L):
            mu = ((s + t) / L) % 1
            coords: list[Fraction | None] = [None] * m.dim
            cur = Fraction(0)
            for j in cyc:
                coords[j] = cur
                # g(v)_j = c_j v_sigma(j) = mu v_j  =>  v_sigma(j) = mu v_j / c_j
                cur = (cur + mu - m.phases[j]) % 1
            points.append(tuple(coords))
    return points


def _as_point(phases) -> tuple[Cyclotomic, ...]:
    return tuple(Cyclotomic(0) if p is None else phase_to_root(p) for p in phases)


def fixed_points_projective(m: ScaledMonomialMap) -> list[tuple[Cyclotomic, ...]]:
    """The n eigen-directions of a map with simple spectrum, first nonzero coordinate 1."""
    return [_as_point(p) for p in _fixed_point_phases(m)]


def _normalize_point(p):
    first = next(x for x in p if x is not None)
    return tuple(None if x is None else (x - first) % 1 for x in p)


def _act_on_point(g: ScaledMonomialMap, p):
    perm = g.permutation()
    # (g.v)_j = c_j v_sigma(j)
    out = tuple(None if p[perm[j]] is None else (g.phases[j] + p[perm[j]]) % 1 for j in range(g.dim))
    return _normalize_point(out)


@dataclass(frozen=True)
class OrbitRecord:
    points: tuple[tuple[Cyclotomic, ...], ...]
    stabilizer_order: int


def stabilizer_orbit_report(n: int, omega_power: int = 1, max_n: int = 5) -> list[OrbitRecord]:
    """Orbits of isolated fixed points of noncentral elements, with stabilizers in H_n / center.

    Elements whose spectrum is not simple (possible for composite n) have
    positive-dimensional fixed loci and contribute no isolated points here.
    """
    if n > max_n:
        raise ResourceLimitError(f"stabilizer report limited to n <= {max_n}")
    # H_n / center: one representative xi^a eta^b per class
    reps = [realize(HeisenbergElement(n, a, b, 0), omega_power) for a in range(n) for b in range(n)]
    points = set()
    for g in reps[1:]:
        if not has_simple_spectrum(g):
            continue
        for p in _fixed_point_phases(g):
            points.add(_normalize_point(p))
    remaining = sorted(points, key=_point_sort_key)
    done = set()
    out = []
    for p in remaining:
        if p in done:
            continue
        orbit = {_act_on_point(g, p) for g in reps}
        stab = sum(1 for g in reps if _act_on_point(g, p) == p)
        if stab * len(orbit) != len(reps):
            raise AssertionError("orbit-stabilizer count mismatch")
        done |= orbit
        ordered = sorted(orbit, key=_point_sort_key)
        out.append(OrbitRecord(tuple(_as_point(q) for q in ordered), stab))
    return out


def _point_sort_key(p):
    return tuple((1, Fraction(0)) if x is None else (0, x) for x in p)


# ---------------------------------------------------------------------------
# invariants


def reynolds(f: LaurentPolynomial, n: int, omega_power: int = 1) -> LaurentPolynomial:
    """Average of ``f`` over all n^3 group elements."""
    group = _group(n, omega_power)
    acc: dict = {}
    for g in group:
        for e, c in pullback(f, g).terms.items():
            acc[e] = acc[e] + c if e in acc else c
    scale = Fraction(1, len(group))
    return LaurentPolynomial(f.dim, {e: c * scale for e, c in acc.items()}, f.variables)


def invariant_dimension_bruteforce(n: int, d: int, omega_power: int = 1, limit: int = 20000) -> int:
    """Rank of the Reynolds images of all degree-d monomials in n variables."""
    count = comb(d + n - 1, n - 1)
    if count > limit:
        raise ResourceLimitError(f"{count} monomials exceeds limit {limit}")
    images = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        r = reynolds(LaurentPolynomial.monomial(e), n, omega_power)
        if r:
            images.append(dict(r.terms))
    return sparse_rank(images)


def _series_mul(a, b, d_max):
    out = [Cyclotomic(0)] * (d_max + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(0, d_max + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + x * b[j]
    return out


def det_one_minus_t(m: ScaledMonomialMap) -> list[tuple[int, Fraction]]:
    """Factors (L, phase of s) of det(1 - t g) = prod (1 - s t^L)."""
    return [(len(cyc), s) for cyc, s in _cycles(m)]


def molien_dimensions(n: int, d_max: int, omega_power: int = 1) -> list[int]:
    """Coefficients of (1/|G|) sum_g 1/det(1 - t g) up to t^d_max."""
    if d_max < 0:
        return []
    total = [Cyclotomic(0)] * (d_max + 1)
    for g in _group(n, omega_power):
        series = [Cyclotomic(1)] + [Cyclotomic(0)] * d_max
        for L, s in det_one_minus_t(g):
            factor = [Cyclotomic(0)] * (d_max + 1)
            for k in range(0, d_max // L + 1):
                factor[k * L] = phase_to_root(k * s)
            series = _series_mul(series, factor, d_max)
        total = [a + b for a, b in zip(total, series)]
    size = len(_group(n, omega_power))
    out = []
    for c in total:
        q = (c / size).to_fraction()
        if q.denominator != 1:
            raise AssertionError("Molien coefficient is not an integer")
        out.append(int(q))
    return out


def character_of_semiinvariant(f: LaurentPolynomial, n: int, omega_power: int = 1) -> tuple[int, int] | None:
    """``(k_xi, k_eta)`` with xi* f = omega^k_xi f and eta* f = omega^k_eta f, else None."""
    if not f or f.dim != n:
        return None
    act = schrodinger(n, omega_power)
    result = []
    for g in (act.xi, act.eta):
        image = pullback(f, g)
        e, c = next(iter(f.terms.items()))
        if e not in image.terms:
            return None
        ratio = image.terms[e] / c
        if image != f.scale(ratio):
            return None
        root = try_as_root_of_unity(ratio)
        if root is None or n % root[0]:
            return None
        k = root[1] * (n // root[0])  # ratio = zeta_n^k
        result.append(k * pow(omega_power, -1, n) % n if n > 1 else 0)
    return tuple(result)

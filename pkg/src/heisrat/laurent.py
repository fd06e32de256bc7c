"""Sparse Laurent polynomials over cyclotomic fields and scaled monomial maps.

Exponent vectors are plain integer tuples.  A :class:`LaurentPolynomial`
keeps its terms in graded-lexicographic order (largest first), which fixes
iteration and rendering order.

A :class:`ScaledMonomialMap` with matrix ``A`` and scalars ``c`` pulls
variable ``j`` back to ``c_j * prod_i x_i^A[i][j]``; column ``j`` of ``A``
is the exponent vector of the image of ``x_j``.  Composition follows the
pullback order::

    pullback(f, compose(a, b)) == pullback(pullback(f, a), b)

so ``compose(a, b)`` has matrix ``B @ A``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cyclotomic import Cyclotomic, root_of_unity, try_as_root_of_unity

__all__ = [
    "LaurentPolynomial",
    "ParseError",
    "ScaledMonomialMap",
    "compose",
    "default_variables",
    "grlex_key",
    "inverse",
    "is_homogeneous",
    "parse",
    "pullback",
    "render",
    "substitute_zero",
]

Exponent = tuple[int, ...]


def grlex_key(e: Exponent):
    return (sum(e), e)


def default_variables(d: int, prefix: str = "x", start: int = 0) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(start, start + d))


class LaurentPolynomial:
    """Finite sum of ``coefficient * x^e`` with ``e`` in Z^d."""

    __slots__ = ("dim", "terms", "variables")

    def __init__(self, dim: int, terms: Mapping[Exponent, object] | Iterable = (), variables=None):
        self.dim = dim
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Cyclotomic] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != dim:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {dim}")
            c = c if isinstance(c, Cyclotomic) else Cyclotomic(c)
            acc[e] = acc[e] + c if e in acc else c
        self.terms = {e: acc[e] for e in sorted(acc, key=grlex_key, reverse=True) if acc[e]}
        self.variables = tuple(variables) if variables is not None else default_variables(dim)
        if len(self.variables) != dim:
            raise ValueError("variable names do not match dimension")

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1, variables=None) -> "LaurentPolynomial":
        return cls(len(exponent), {tuple(exponent): coeff}, variables)

    @classmethod
    def variable(cls, dim: int, i: int, variables=None) -> "LaurentPolynomial":
        e = [0] * dim
        e[i] = 1
        return cls.monomial(e, 1, variables)

    @classmethod
    def constant(cls, dim: int, c, variables=None) -> "LaurentPolynomial":
        return cls(dim, {(0,) * dim: c}, variables)

    def with_variables(self, variables) -> "LaurentPolynomial":
        return LaurentPolynomial(self.dim, self.terms, variables)

    def _wrap(self, terms) -> "LaurentPolynomial":
        return LaurentPolynomial(self.dim, terms, self.variables)

    def _check(self, other: "LaurentPolynomial"):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _lift(self, other):
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return LaurentPolynomial.constant(self.dim, other, self.variables)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, Cyclotomic] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers are defined for single terms only")
            (e, c), = self.terms.items()
            return self._wrap({tuple(k * a for a in e): c**k})
        result = LaurentPolynomial.constant(self.dim, 1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LaurentPolynomial.constant(self.dim, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self.dim != other.dim or self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    def __hash__(self):
        return hash((self.dim, tuple(self.terms)))

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def scale(self, c) -> "LaurentPolynomial":
        return self._wrap({e: c * v for e, v in self.terms.items()})

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPolynomial({render(self)!r})"


class ScaledMonomialMap:
    """Substitution ``x_j -> c_j * x^(column j of matrix)`` with root-of-unity scalars.

    Scalars are held internally as phases in [0, 1): ``c_j = exp(2 pi i phase_j)``.
    """

    __slots__ = ("matrix", "phases", "_hash")

    def __init__(self, matrix: Sequence[Sequence[int]], scalars: Sequence | None = None):
        mat = tuple(tuple(int(a) for a in row) for row in matrix)
        d = len(mat)
        if any(len(row) != d for row in mat):
            raise ValueError("monomial map matrix must be square")
        if scalars is None:
            phases = (Fraction(0),) * d
        else:
            if len(scalars) != d:
                raise ValueError("one scalar per variable is required")
            phases = tuple(_phase_of(c) for c in scalars)
        self.matrix = mat
        self.phases = phases
        self._hash = None

    @classmethod
    def from_phases(cls, matrix, phases) -> "ScaledMonomialMap":
        m = cls(matrix)
        m.phases = tuple(Fraction(p) % 1 for p in phases)
        return m

    @classmethod
    def _raw(cls, matrix: tuple, phases: tuple) -> "ScaledMonomialMap":
        m = object.__new__(cls)
        m.matrix, m.phases, m._hash = matrix, phases, None
        return m

    @classmethod
    def identity(cls, d: int) -> "ScaledMonomialMap":
        return cls([[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def scalar(cls, d: int, phase) -> "ScaledMonomialMap":
        return cls.from_phases(cls.identity(d).matrix, [phase] * d)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def scalars(self) -> tuple[Cyclotomic, ...]:
        return tuple(phase_to_root(p) for p in self.phases)

    def column(self, j: int) -> Exponent:
        return tuple(row[j] for row in self.matrix)

    def image_exponent(self, e: Sequence[int]) -> Exponent:
        return tuple(sum(a * x for a, x in zip(row, e)) for row in self.matrix)

    def image_phase(self, e: Sequence[int]) -> Fraction:
        return sum((p * x for p, x in zip(self.phases, e) if x and p), Fraction(0)) % 1

    def is_identity(self) -> bool:
        return self == ScaledMonomialMap.identity(self.dim)

    def is_scalar(self) -> bool:
        return self.matrix == ScaledMonomialMap.identity(self.dim).matrix and len(set(self.phases)) <= 1

    def permutation(self) -> tuple[int, ...] | None:
        """sigma with x_j -> c_j x_sigma(j) when the matrix is a permutation, else None."""
        perm = []
        for j in range(self.dim):
            col = self.column(j)
            if sorted(col) != [0] * (self.dim - 1) + [1]:
                return None
            perm.append(col.index(1))
        return tuple(perm) if len(set(perm)) == self.dim else None

    def __eq__(self, other):
        if not isinstance(other, ScaledMonomialMap):
            return NotImplemented
        return self.matrix == other.matrix and self.phases == other.phases

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.matrix, self.phases))
        return self._hash

    def __repr__(self):
        return f"ScaledMonomialMap(matrix={self.matrix}, phases={tuple(str(p) for p in self.phases)})"


def _phase_of(c) -> Fraction:
    root = try_as_root_of_unity(Cyclotomic(c) if not isinstance(c, Cyclotomic) else c)
    if root is None:
        raise ValueError(f"scalar {c} is not a root of unity")
    m, k = root
    return Fraction(k, m)


def phase_to_root(p: Fraction) -> Cyclotomic:
    p = Fraction(p) % 1
    return root_of_unity(p.denominator, p.numerator)


def pullback(f: LaurentPolynomial, m: ScaledMonomialMap) -> LaurentPolynomial:
    """Apply the substitution ``m`` to ``f`` term by term."""
    if f.dim != m.dim:
        raise ValueError(f"dimension mismatch: polynomial in {f.dim} variables, map on {m.dim}")
    out: dict[Exponent, Cyclotomic] = {}
    rows = m.matrix
    phases = m.phases
    for e, c in f.terms.items():
        new = tuple(sum(a * x for a, x in zip(row, e)) for row in rows)
        ph = sum((p * x for p, x in zip(phases, e) if x and p), Fraction(0)) % 1
        coeff = c * phase_to_root(ph) if ph else c
        out[new] = out[new] + coeff if new in out else coeff
    return LaurentPolynomial(f.dim, out, f.variables)


def compose(a: ScaledMonomialMap, b: ScaledMonomialMap) -> ScaledMonomialMap:
    """The map whose pullback is "pull back by ``a``, then by ``b``"."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    d = a.dim
    A, B = a.matrix, b.matrix
    mat = tuple(tuple(sum(B[i][k] * A[k][j] for k in range(d)) for j in range(d)) for i in range(d))
    phases = []
    for j in range(d):
        p = a.phases[j]
        for k in range(d):
            if A[k][j] and b.phases[k]:
                p += b.phases[k] * A[k][j]
        phases.append(p % 1 if p < 0 or p >= 1 else p)
    return ScaledMonomialMap._raw(mat, tuple(phases))


def inverse(m: ScaledMonomialMap) -> ScaledMonomialMap:
    """Two-sided inverse of a map with unimodular matrix."""
    from .intlattice import NotUnimodularError, det, inverse_unimodular

    if abs(det(m.matrix)) != 1:
        raise NotUnimodularError("not birationally invertible as monomial map (det != +-1)")
    inv = inverse_unimodular(m.matrix)
    d = m.dim
    # c_b[i] = prod_k c_a[k]^(-inv[k][i])
    phases = [-sum((m.phases[k] * inv[k][i] for k in range(d)), Fraction(0)) for i in range(d)]
    return ScaledMonomialMap.from_phases(inv, phases)


def power(m: ScaledMonomialMap, k: int) -> ScaledMonomialMap:
    if k < 0:
        return power(inverse(m), -k)
    result = ScaledMonomialMap.identity(m.dim)
    for _ in range(k):
        result = compose(result, m)
    return result


def order_of(m: ScaledMonomialMap, limit: int = 10_000) -> int | None:
    """Smallest k >= 1 with m^k the identity, or None when not reached within ``limit``."""
    cur = m
    ident = ScaledMonomialMap.identity(m.dim)
    for k in range(1, limit + 1):
        if cur == ident:
            return k
        cur = compose(cur, m)
    return None


def is_homogeneous(f: LaurentPolynomial) -> int | None:
    """Common total degree of all terms; None for the zero polynomial or mixed degrees."""
    degrees = {sum(e) for e in f.terms}
    return degrees.pop() if len(degrees) == 1 else None


def substitute_zero(f: LaurentPolynomial, i: int) -> LaurentPolynomial:
    """Set variable ``i`` to zero."""
    if any(e[i] < 0 for e in f.terms):
        raise ValueError(f"restriction undefined for Laurent pole in {f.variables[i]}")
    return LaurentPolynomial(f.dim, {e: c for e, c in f.terms.items() if e[i] == 0}, f.variables)


# ---------------------------------------------------------------------------
# text grammar


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<root>z\{\s*\d+\s*\})|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(){}]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables, n):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)
        self.index = {v: k for k, v in enumerate(self.variables)}
        self.n = n
        self.d = len(self.variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def const(self, c):
        return LaurentPolynomial.constant(self.d, c, self.variables)

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if len(rhs.terms) != 1:
                    raise ParseError("division by a non-monomial", pos)
                value = value * rhs**-1
        return value

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            _, _, pos = self.take()
            k = self.exponent()
            if k < 0 and len(base.terms) != 1:
                raise ParseError("negative power of a non-monomial", pos)
            if k < 0 and not next(iter(base.terms.values())):
                raise ParseError("negative power of zero", pos)
            return base**k
        return base

    def exponent(self):
        closer = None
        if self.peek()[1] in ("{", "("):
            closer = "}" if self.take()[1] == "{" else ")"
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "num":
            raise ParseError("expected integer exponent", tok[2])
        if closer:
            self.expect(closer)
        return sign * int(tok[1])

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return self.const(int(value))
        if kind == "root":
            order = int(value[2:-1].strip())
            if order < 1:
                raise ParseError("root order must be positive", pos)
            return self.const(root_of_unity(order, 1))
        if kind == "name":
            if value in self.index:
                return LaurentPolynomial.variable(self.d, self.index[value], self.variables)
            if value == "w":
                if self.n is None:
                    raise ParseError("'w' needs an ambient n", pos)
                return self.const(root_of_unity(self.n, 1))
            raise ParseError(f"unknown variable {value!r}", pos)
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos)


def parse(text: str, variables: Sequence[str] | int, n: int | None = None) -> LaurentPolynomial:
    """Parse the polynomial grammar.

    ``variables`` is either a list of names or a count ``d`` meaning
    ``x0..x{d-1}``.  The symbol ``w`` denotes zeta_n and needs ``n``;
    ``z{N}`` denotes zeta_N.

    >>> render(parse("x0^2*x1 + w*x1^-1", 2, n=3))
    'x0^2*x1 + z{3}*x1^-1'
    """
    if isinstance(variables, int):
        variables = default_variables(variables)
    if "w" in variables:
        raise ValueError("'w' is reserved for the primitive n-th root of unity")
    return _Parser(text, variables, n).parse()


def _render_monomial(e: Exponent, names) -> str:
    parts = []
    for name, a in zip(names, e):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def render(f: LaurentPolynomial) -> str:
    """Deterministic text form; ``parse(render(f))`` gives back ``f``."""
    if not f.terms:
        return "0"
    pieces = []
    for e, c in f.terms.items():
        mono = _render_monomial(e, f.variables)
        if not mono:
            text = c.render()
        elif c == 1:
            text = mono
        elif c == -1:
            text = "-" + mono
        else:
            text = f"{c.render()}*{mono}"
        pieces.append(text)
    out = pieces[0]
    for text in pieces[1:]:
        out += " - " + text[1:] if text.startswith("-") else " + " + text
    return out

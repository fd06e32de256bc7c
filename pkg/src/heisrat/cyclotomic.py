"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored as an integer vector ``(a_0, ..., a_{phi(N)-1})`` and a
positive common denominator, meaning ``(sum a_i zeta_N^i) / den`` reduced
modulo the N-th cyclotomic polynomial.  Rational values are always stored
at order 1 so that the rational subfield has a single representation.

Mixed-order arithmetic promotes both operands to the lcm of their orders.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import numbers

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "try_as_root_of_unity",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _int_poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # ascending coefficients; den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _cyclotomic_tuple(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _int_poly_divide_exact(num, list(_cyclotomic_tuple(d)))
    return tuple(num)


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first.

    >>> cyclotomic_polynomial(6)
    [1, -1, 1]
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    return list(_cyclotomic_tuple(n))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows ``t^e mod Phi_n`` for ``0 <= e < n``."""
    phi = _cyclotomic_tuple(n)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by t and reduce
        if deg == 0:
            continue
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _reduce_exponents(order: int, pairs) -> list[int]:
    """Sum ``c * zeta^e`` over (e, c) pairs into canonical integer coefficients."""
    table = _power_table(order)
    deg = euler_phi(order)
    out = [0] * deg
    for e, c in pairs:
        if not c:
            continue
        e %= order
        if e < deg:
            out[e] += c
        else:
            row = table[e]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return out


class Cyclotomic(numbers.Number):
    """An exact element of Q(zeta_N).

    Construct from rationals with ``Cyclotomic(3)`` / ``Cyclotomic(Fraction(1, 2))``
    or from explicit data with ``Cyclotomic.from_coeffs(N, coeffs)``.
    """

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Cyclotomic):
            self.order, self._num, self._den = value.order, value._num, value._den
        else:
            q = Fraction(value)
            self.order, self._num, self._den = 1, (q.numerator,), q.denominator
        self._hash = None

    @classmethod
    def _raw(cls, order: int, num, den: int) -> "Cyclotomic":
        g = den
        for a in num:
            if g == 1:
                break
            g = gcd(g, a)
        if g != 1:
            num = [a // g for a in num]
            den //= g
        if order > 1 and not any(num[1:]):
            order, num = 1, [num[0]]
        obj = object.__new__(cls)
        obj.order, obj._num, obj._den, obj._hash = order, tuple(num), den, None
        return obj

    @classmethod
    def from_coeffs(cls, order: int, coeffs) -> "Cyclotomic":
        """Build ``sum coeffs[i] * zeta_order^i``; any length is accepted and reduced."""
        if order < 1:
            raise ValueError("order must be positive")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        pairs = [(i, int(c * den)) for i, c in enumerate(fr)]
        return cls._raw(order, _reduce_exponents(order, pairs), den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical coefficients (length phi(order)) as Fractions."""
        return tuple(Fraction(a, self._den) for a in self._num)

    # -- promotion ---------------------------------------------------------

    def promote(self, order: int) -> "Cyclotomic":
        """Rewrite in Q(zeta_order); ``order`` must be a multiple of ``self.order``.

        The result is renormalised, so rationals come back at order 1 again.
        """
        if order % self.order:
            raise ValueError(f"cannot promote order {self.order} to {order}")
        num = self._promoted_num(order)
        return Cyclotomic._raw(order, num, self._den)

    def _promoted_num(self, order: int) -> tuple[int, ...]:
        if order == self.order:
            return self._num
        step = order // self.order
        return tuple(_reduce_exponents(order, ((i * step, a) for i, a in enumerate(self._num))))

    @staticmethod
    def _coerce(other):
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(other)
        return None

    def _common(self, other: "Cyclotomic"):
        if self.order == other.order:
            return self.order, self._num, other._num
        order = _lcm(self.order, other.order)
        return order, self._promoted_num(order), other._promoted_num(order)

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order, a, b = self._common(other)
        da, db = self._den, other._den
        num = [x * db + y * da for x, y in zip(a, b)]
        return Cyclotomic._raw(order, num, da * db)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-a for a in self._num], self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.order == 1:
            c = other._num[0]
            return Cyclotomic._raw(self.order, [a * c for a in self._num], self._den * other._den)
        if self.order == 1:
            return other * self
        order, a, b = self._common(other)
        conv: dict[int, int] = {}
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] = conv.get(i + j, 0) + x * y
        return Cyclotomic._raw(order, _reduce_exponents(order, conv.items()), self._den * other._den)

    __rmul__ = __mul__

    def inv(self) -> "Cyclotomic":
        """Multiplicative inverse by the extended Euclidean algorithm against Phi_N."""
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.order == 1:
            return Cyclotomic(Fraction(self._den, self._num[0]))
        modulus = [Fraction(c) for c in _cyclotomic_tuple(self.order)]
        s = _qpoly_inverse_mod([Fraction(a) for a in self._num], modulus)
        return Cyclotomic.from_coeffs(self.order, [c * self._den for c in s])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inv(), -k
        result = Cyclotomic(1)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------

    def __bool__(self):
        return any(self._num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._den != other._den:
            return False
        if self.order == other.order:
            return self._num == other._num
        order, a, b = self._common(other)
        return a == b

    def __hash__(self):
        # normalised trace is independent of the ambient field
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def normalized_trace(self) -> Fraction:
        """Tr_{K/Q}(a) / [K:Q]; the same for every K containing the value."""
        n = self.order
        total = Fraction(0)
        for i, a in enumerate(self._num):
            if a:
                m = n // gcd(i, n)
                total += Fraction(a * _mobius(m), euler_phi(m))
        return total / self._den

    def is_rational(self) -> bool:
        return self.order == 1

    def to_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def conjugate_power(self, k: int) -> "Cyclotomic":
        """Image under the Galois automorphism zeta_N -> zeta_N^k (gcd(k, N) = 1)."""
        if gcd(k, self.order) != 1:
            raise ValueError("k must be prime to the order")
        pairs = ((i * k, a) for i, a in enumerate(self._num))
        return Cyclotomic._raw(self.order, _reduce_exponents(self.order, pairs), self._den)

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(a * z**i for i, a in enumerate(self._num)) / self._den

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Text form: ``z{N}^k`` for roots of unity, rationals plainly, else a sum."""
        if self.order == 1:
            return str(Fraction(self._num[0], self._den))
        root = try_as_root_of_unity(self)
        if root is not None:
            return _render_root(*root)
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            mono = _render_root(self.order, i)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        text = " + ".join(parts).replace("+ -", "- ")
        return f"({text})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Cyclotomic({self.render()!r})"


def _render_root(order: int, k: int) -> str:
    if order == 1:
        return "1"
    if order == 2 and k % 2 == 1:
        return "-1"
    return f"z{{{order}}}" if k == 1 else f"z{{{order}}}^{k}"


def _qpoly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_qpoly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
    return q, a


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qpoly_inverse_mod(a, m):
    r0, r1 = list(m), _qpoly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, _qpoly_trim(r)
        s0, s1 = s1, _qpoly_trim(_qpoly_sub(s0, _qpoly_mul(q, s1)))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


@lru_cache(maxsize=4096)
def root_of_unity(order: int, k: int = 1) -> Cyclotomic:
    """zeta_order^k, reduced.

    >>> root_of_unity(4, 2)
    Cyclotomic('-1')
    """
    if order < 1:
        raise ValueError("order must be positive")
    k %= order
    g = gcd(k, order)
    m, e = order // g, k // g
    return Cyclotomic._raw(m, _reduce_exponents(m, [(e, 1)]), 1)


def try_as_root_of_unity(a: Cyclotomic) -> tuple[int, int] | None:
    """Minimal ``(m, k)`` with ``a == zeta_m^k`` and gcd(k, m) == 1, else None.

    Every root of unity in Q(zeta_N) is a power of zeta_{lcm(2, N)}.
    """
    a = Cyclotomic._coerce(a)
    if a is None or a._den != 1:
        return None
    if a.order == 1:
        v = a._num[0]
        return (1, 0) if v == 1 else (2, 1) if v == -1 else None
    # a root has exactly the unit-coefficient shape of some table row
    if sum(abs(x) for x in a._num) > max(sum(abs(x) for x in row) for row in _power_table(a.order)):
        return None
    big = _lcm(2, a.order)
    target = a._promoted_num(big)
    for k, row in enumerate(_power_table(big)):
        if row == target:
            g = gcd(k, big)
            return big // g, k // g
    return None

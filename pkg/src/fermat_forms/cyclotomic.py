"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored as residue polynomials in ``zeta = exp(2 pi i / m)``
modulo the m-th cyclotomic polynomial, with :class:`fractions.Fraction`
coefficients.  Nothing here touches floating point except ``__complex__``,
which exists for debugging and plotting only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["CyclotomicNumber", "cyclotomic_polynomial", "zeta"]


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _polydivmod(num, den):
    """Quotient and remainder of polynomials (coefficient lists, low degree first)."""
    num = list(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead = den[-1]
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [], _trim(num)
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        if lead != 1:
            c = Fraction(c) / lead
        quot[k - dd] = c
        for i, di in enumerate(den):
            num[k - dd + i] -= c * di
    return _trim(quot), _trim(num[:dd])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    Computed by dividing x^m - 1 by Phi_k for every proper divisor k of m.
    """
    if m < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {m}")
    p = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            q, r = _polydivmod(p, cyclotomic_polynomial(k))
            assert not r
            p = q
    return tuple(int(c) for c in p)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """zeta_m^k reduced mod Phi_m, for k = 0..m-1 (integer coefficients)."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(m):
        rows.append(tuple(cur) if deg else ())
        # multiply by x and reduce with the monic Phi_m
        nxt = [0] + cur
        top = nxt.pop() if len(nxt) > deg else 0
        if top:
            for i in range(deg):
                nxt[i] -= top * phi[i]
        cur = nxt
    return tuple(rows)


def _reduce(coeffs, m):
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        t = c[k]
        if t:
            for i in range(deg):
                c[k - deg + i] -= t * phi[i]
        c[k] = 0
    c = c[:deg] + [0] * (deg - len(c))
    return tuple(Fraction(x) for x in c)


class CyclotomicNumber:
    """An element of Q(zeta_m).

    ``CyclotomicNumber(12, [0, 1])`` is zeta_12.  Binary operations between
    elements of different orders lift both operands to the lcm order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        self.coeffs = _reduce(coeffs, order)

    @classmethod
    def _raw(cls, order, coeffs):
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_rational(cls, order: int, value) -> CyclotomicNumber:
        return cls(order, [Fraction(value)])

    @classmethod
    def root(cls, order: int, k: int = 1) -> CyclotomicNumber:
        """zeta_order ** k."""
        row = _power_table(order)[k % order]
        return cls._raw(order, tuple(Fraction(x) for x in row))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    # -- coercion -------------------------------------------------------

    def lift(self, order: int) -> CyclotomicNumber:
        """Embed into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        step = order // self.order
        table = _power_table(order)
        deg = len(cyclotomic_polynomial(order)) - 1
        out = [Fraction(0)] * deg
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(k * step) % order]):
                    if t:
                        out[i] += c * t
        return CyclotomicNumber._raw(order, tuple(out))

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self, other
            m = math.lcm(self.order, other.order)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Rational)):
            return self, CyclotomicNumber.from_rational(self.order, other)
        return None, None

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CyclotomicNumber):
            return CyclotomicNumber._raw(self.order, tuple(x * other for x in self.coeffs))
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        deg = len(a.coeffs)
        prod = [0] * max(2 * deg - 1, 0)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(a.order, _reduce(prod, a.order))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber.from_rational(self.order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via extended Euclid against Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        a = _trim(self.coeffs)
        b = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        # invariant: s*self == r0 (mod Phi_m)
        r0, r1 = a, b
        s0, s1 = [Fraction(1)], []
        while len(r1) > 0:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            prod = [Fraction(0)] * (len(q) + len(s1))
            for i, x in enumerate(q):
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
            s_new = [Fraction(0)] * max(len(s0), len(prod))
            for i, x in enumerate(s0):
                s_new[i] += x
            for i, x in enumerate(prod):
                s_new[i] -= x
            s0, s1 = s1, _trim(s_new)
        # r0 is a nonzero constant since Phi_m is irreducible
        assert len(r0) == 1
        return CyclotomicNumber(self.order, [c / r0[0] for c in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CyclotomicNumber):
            return self * (1 / Fraction(other))
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- Galois action --------------------------------------------------

    def galois(self, k: int) -> CyclotomicNumber:
        """Apply the automorphism zeta -> zeta^k (gcd(k, m) = 1)."""
        m = self.order
        if math.gcd(k, m) != 1:
            raise ValueError(f"{k} is not a unit mod {m}")
        table = _power_table(m)
        out = [Fraction(0)] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(j * k) % m]):
                    if t:
                        out[i] += c * t
        return CyclotomicNumber._raw(m, tuple(out))

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(self.order - 1) if self.order > 2 else self

    def trace(self) -> Fraction:
        """Trace from Q(zeta_m) down to Q."""
        total = CyclotomicNumber.from_rational(self.order, 0)
        for k in range(1, self.order + 1):
            if math.gcd(k, self.order) == 1:
                total = total + self.galois(k)
        assert total.is_rational()
        return total.coeffs[0] if total.coeffs else Fraction(0)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def root_of_unity_exponent(self) -> int | None:
        """k with self == zeta_N^k, where N = m (m even) or 2m (m odd).

        Those are all the roots of unity in Q(zeta_m).  Returns None for
        anything else.
        """
        m = self.order
        n = m if m % 2 == 0 else 2 * m
        for k in range(n):
            if self == CyclotomicNumber.root(n, k):
                return k
        return None

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # only consistent with == inside one order; lift to a common order
        # before mixing orders in sets or dict keys
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self.order, self.coeffs))

    def __complex__(self):
        z = complex(math.cos(2 * math.pi / self.order), math.sin(2 * math.pi / self.order))
        return sum((float(c) * z**k for k, c in enumerate(self.coeffs)), 0j)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) or "0"
        return f"CyclotomicNumber({self.order}: {body})"


def zeta(m: int, k: int = 1) -> CyclotomicNumber:
    """Shorthand for ``CyclotomicNumber.root(m, k)``."""
    return CyclotomicNumber.root(m, k)

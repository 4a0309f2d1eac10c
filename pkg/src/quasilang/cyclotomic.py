"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are represented in the power basis 1, z, ..., z^(phi(N)-1) of
Q[x]/Phi_N(x), where Phi_N is the N-th cyclotomic polynomial.  Working
modulo Phi_N (rather than x^N - 1) keeps the ring a field, so zero testing
is plain coordinate comparison.  Rationals are `fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import ValidationError

Rational = Fraction


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValidationError(f"euler_phi needs n >= 1, got {n}")
    result = n
    p, m = 2, n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (coefficients low to high); den must be monic."""
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(1, len(num) - deg_d)
    while len(num) - 1 >= deg_d and any(num):
        shift = len(num) - 1 - deg_d
        lead = num[-1]
        quot[shift] = lead
        for i, c in enumerate(den):
            num[shift + i] -= lead * c
        while len(num) > 1 and num[-1] == 0:
            num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of Phi_n, computed by exact division of x^n - 1."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            quot, rem = _poly_divmod_int(num, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise AssertionError(f"Phi_{d} does not divide current quotient for n={n}")
            num = quot
    return tuple(num)


def _reduce_mod_phi(coeffs: list[Fraction], order: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in z modulo Phi_order; result has length phi(order)."""
    phi = list(cyclotomic_polynomial(order))
    deg = len(phi) - 1
    work = list(coeffs)
    while len(work) > deg:
        lead = work.pop()
        if lead:
            shift = len(work) - deg
            for i in range(deg):
                work[shift + i] -= lead * phi[i]
    work += [Fraction(0)] * (deg - len(work))
    return tuple(work)


class CyclotomicNumber:
    """An element of Q(zeta_N) in the power basis of Q[x]/Phi_N(x).

    Values are immutable; all operations return fresh instances.  Mixed-order
    arithmetic lifts both operands into Q(zeta_lcm) via zeta_a = zeta_lcm^(lcm/a).
    Instances are not hashable (equality is order-insensitive); use `key()` for
    dictionary keys at a fixed order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        if order < 1:
            raise ValidationError(f"cyclotomic order must be >= 1, got {order}")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(order):
            raise ValidationError(
                f"need {euler_phi(order)} coordinates for order {order}, got {len(coeffs)}"
            )
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, value, order: int = 1) -> "CyclotomicNumber":
        coeffs = [Fraction(value)] + [Fraction(0)] * (euler_phi(order) - 1)
        return cls(order, coeffs)

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, order)

    @classmethod
    def root(cls, order: int, power: int = 1) -> "CyclotomicNumber":
        """zeta_order^power, reduced into the power basis."""
        power %= order
        poly = [Fraction(0)] * power + [Fraction(1)]
        return cls(order, _reduce_mod_phi(poly, order))

    # -- representation helpers -------------------------------------------

    def lift(self, order: int) -> "CyclotomicNumber":
        """Embed into Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValidationError(f"cannot lift order {self.order} into order {order}")
        step = order // self.order
        poly = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return CyclotomicNumber(order, _reduce_mod_phi(poly, order))

    def key(self, order: int | None = None):
        """Hashable canonical key at a fixed order (for dict/multiset use)."""
        v = self.lift(order) if order is not None else self
        return (v.order, v.coeffs)

    @staticmethod
    def _coerce(a, b) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if not isinstance(a, CyclotomicNumber):
            a = CyclotomicNumber.from_rational(a)
        if not isinstance(b, CyclotomicNumber):
            b = CyclotomicNumber.from_rational(b)
        n = lcm(a.order, b.order)
        return a.lift(n), b.lift(n)

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(self, other)
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        a, b = self._coerce(self, other)
        return CyclotomicNumber(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        a, b = self._coerce(other, self)
        return CyclotomicNumber(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __neg__(self):
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [c * other for c in self.coeffs])
        a, b = self._coerce(self, other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
        return CyclotomicNumber(a.order, _reduce_mod_phi(prod, a.order))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        # Invariants: r0 = u0*a + v0*Phi, r1 = u1*a + v1*Phi (v's not tracked).
        r0, u0 = list(self.coeffs), [Fraction(1)]
        r1, u1 = phi, [Fraction(0)]

        def _deg(p):
            d = len(p) - 1
            while d > 0 and not p[d]:
                d -= 1
            return d if any(p) else -1

        while _deg(r1) >= 0:
            d0, d1 = _deg(r0), _deg(r1)
            if d0 < d1:
                r0, r1, u0, u1 = r1, r0, u1, u0
                continue
            factor = r0[_deg(r0)] / r1[_deg(r1)]
            shift = d0 - d1
            for i in range(d1 + 1):
                r0[shift + i] -= factor * r1[i]
            u0 += [Fraction(0)] * (shift + len(u1) - len(u0))
            for i in range(len(u1)):
                u0[shift + i] -= factor * u1[i]
            if _deg(r0) < _deg(r1):
                r0, r1, u0, u1 = r1, r0, u1, u0
        # r0 is now a nonzero constant g with g = u0 * self (mod Phi).
        g = r0[0]
        inv = [c / g for c in u0]
        return CyclotomicNumber(self.order, _reduce_mod_phi(inv, self.order))

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugate: the Galois map zeta -> zeta^(-1)."""
        if self.order <= 2:
            return self
        poly = [Fraction(0)] * self.order
        for i, c in enumerate(self.coeffs):
            poly[(-i) % self.order] += c
        return CyclotomicNumber(self.order, _reduce_mod_phi(poly, self.order))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """Whether the value lies in Z[zeta_N] (integer power-basis coordinates)."""
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        n = lcm(self.order, other.order)
        return self.lift(n).coeffs == other.lift(n).coeffs

    __hash__ = None  # equality is order-insensitive; use key() for dict keys

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"({c})*z{self.order}")
            else:
                terms.append(f"({c})*z{self.order}^{i}")
        return " + ".join(terms)


def cyc_root(order: int, power: int) -> CyclotomicNumber:
    """zeta_order^power as an element of Q(zeta_order)."""
    return CyclotomicNumber.root(order, power)


def cyc_arith(op: str, a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    """Exact field arithmetic; operands are lifted to their lcm order."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValidationError(f"unknown operation {op!r}")


def cyc_inv(a: CyclotomicNumber) -> CyclotomicNumber:
    return a.inverse()


# -- JSON serialization: [N, ["p/q", ...]] with rationals as strings --------


def fraction_to_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s)


def cyclotomic_to_json(c: CyclotomicNumber) -> list:
    return [c.order, [fraction_to_str(x) for x in c.coeffs]]


def cyclotomic_from_json(data) -> CyclotomicNumber:
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise ValidationError(f"bad cyclotomic JSON: {data!r}")
    order, coeffs = data
    return CyclotomicNumber(int(order), [fraction_from_str(str(x)) for x in coeffs])

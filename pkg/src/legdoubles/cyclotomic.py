"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are rational coefficient vectors of length phi(m) in the power
basis 1, zeta, ..., zeta^(phi(m)-1).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .errors import DomainError
from .poly import IntPoly

__all__ = ["cyclotomic_poly", "CycElem", "zeta_pow", "two_cos", "niven_rational", "is_rational"]

MAX_CONDUCTOR = 512


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> IntPoly:
    """Phi_m by dividing x^m - 1 by Phi_d for the proper divisors d of m."""
    if not 1 <= m <= MAX_CONDUCTOR:
        raise DomainError(f"conductor must lie in 1..{MAX_CONDUCTOR}")
    p = IntPoly([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            p = p.exact_div(cyclotomic_poly(d))
    return p


def _reduce(coeffs: Sequence[Fraction], phi: tuple[int, ...]) -> list[Fraction]:
    c = list(coeffs)
    deg = len(phi) - 1
    for i in range(len(c) - 1, deg - 1, -1):
        a = c[i]
        if a:
            # phi is monic: x^deg = -(lower terms)
            for j in range(deg):
                if phi[j]:
                    c[i - deg + j] -= a * phi[j]
            c[i] = Fraction(0)
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return c


# -- helpers on Q[x] lists (ascending, trimmed) --------------------------------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for j, bj in enumerate(b):
            a[s + j] -= c * bj
        a = _trim(a)
    return _trim(q), a


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


class CycElem:
    """Element of Q(zeta_m) reduced modulo Phi_m."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence = ()):
        self.m = int(m)
        phi = cyclotomic_poly(self.m).coeffs
        self.coeffs = tuple(_reduce([Fraction(c) for c in coeffs], phi))

    @classmethod
    def from_rational(cls, m: int, r) -> CycElem:
        return cls(m, [Fraction(r)])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def _coerce(self, other) -> CycElem:
        if isinstance(other, CycElem):
            if other.m != self.m:
                raise DomainError(f"elements of Q(zeta_{self.m}) and Q(zeta_{other.m}) do not mix")
            return other
        if isinstance(other, (int, Fraction)):
            return CycElem.from_rational(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElem(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * max(1, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return CycElem(self.m, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inv(self) -> CycElem:
        """Inverse via the extended Euclidean algorithm against Phi_m."""
        if self.is_zero():
            raise DomainError("zero has no inverse")
        phi = [Fraction(c) for c in cyclotomic_poly(self.m).coeffs]
        r0, r1 = phi, _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        if not r1:
            raise DomainError("element shares a factor with Phi_m")
        c = r1[0]
        return CycElem(self.m, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = CycElem.from_rational(self.m, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElem.from_rational(self.m, other)
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def galois(self, a: int) -> CycElem:
        """Apply zeta -> zeta^a (an automorphism when gcd(a, m) = 1)."""
        if gcd(a, self.m) != 1:
            raise DomainError(f"{a} is not a unit mod {self.m}")
        out = [Fraction(0)] * self.m
        for i, c in enumerate(self.coeffs):
            out[(i * a) % self.m] += c
        return CycElem(self.m, out)

    def conj(self) -> CycElem:
        return self.galois(-1 % self.m if self.m > 1 else 1)

    def rational_value(self) -> Optional[Fraction]:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs))

    def format(self, var: Optional[str] = None) -> str:
        var = var or f"z{self.m}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"CycElem({self.m}: {self.format()})"

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [str(c) for c in self.coeffs]}


def zeta_pow(m: int, j: int) -> CycElem:
    j %= m
    return CycElem(m, [0] * j + [1])


def is_rational(e: CycElem) -> Optional[Fraction]:
    return e.rational_value()


def two_cos(p: int, q: int) -> CycElem:
    """2 cos(pi p / q) = zeta_{2q}^p + zeta_{2q}^{-p}."""
    if q < 1:
        raise DomainError("q must be positive")
    m = 2 * q
    return zeta_pow(m, p) + zeta_pow(m, -p)


def niven_rational(p: int, q: int) -> Optional[Fraction]:
    """Rational value of 2 cos(pi p / q) when it has one (Niven), else None."""
    if q < 1:
        raise DomainError("q must be positive")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q == 1:
        return Fraction(2 if p % 2 == 0 else -2)
    if q == 2:
        return Fraction(0)
    if q == 3:
        return Fraction(1 if p % 6 in (1, 5) else -1)
    return None

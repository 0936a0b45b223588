"""Dense univariate polynomials with arbitrary precision integer coefficients."""

from __future__ import annotations

from itertools import zip_longest
from math import comb
from typing import Iterable, Sequence


class IntPoly:
    """Integer polynomial stored as ascending coefficients with no trailing zeros.

    >>> p = IntPoly([2, -3, 1])
    >>> p(3)
    2
    >>> str(p)
    'x^2 - 3x + 2'
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> IntPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, a: int) -> IntPoly:
        return cls([a])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return IntPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def divmod(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division by a monic (or unit-leading) divisor over the integers."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead = divisor.leading()
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPoly(), IntPoly(rem)
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] * lead
            if c:
                quot[i - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - dd + j] -= c * b
        return IntPoly(quot), IntPoly(rem)

    def exact_div(self, divisor: IntPoly) -> IntPoly:
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def taylor_shift(self, c: int) -> IntPoly:
        """Return p(x + c)."""
        n = len(self.coeffs)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            # (x + c)^i = sum_j binom(i, j) c^(i-j) x^j
            for j in range(i + 1):
                out[j] += a * comb(i, j) * c ** (i - j)
        return IntPoly(out)

    def derivative(self) -> IntPoly:
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format("x")


def product(polys: Sequence[IntPoly]) -> IntPoly:
    out = IntPoly([1])
    for p in polys:
        out = out * p
    return out


def parse_coeffs(text: str) -> IntPoly:
    """Parse a comma separated ascending coefficient list such as ``"0,2,-3,1"``."""
    text = text.strip().strip("[]")
    if not text:
        return IntPoly()
    return IntPoly(int(t) for t in text.split(","))

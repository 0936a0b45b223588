"""Fixed points of the cyclic shift on Gr(k, n) and the twist-spun filling obstruction.

A fixed point is spanned by the vectors (1, z, z^2, ..., z^(n-1)) for k
distinct roots z of z^n = (-1)^(k-1).  All such roots are powers of
zeta_{2n}, so a fixed point is stored as k exponents of zeta_{2n}.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Optional, Sequence

import numpy as np

from .cyclotomic import CycElem, zeta_pow
from .errors import ConsistencyError, DomainError

__all__ = [
    "FixedPoint", "Status", "Certificate", "ObstructionVerdict", "karp_fixed_points",
    "real_fixed_points", "plucker", "plucker_ratio", "divisibility_ok", "obstruct_twist_spun",
    "numeric_plucker_ratio", "check_real_enumeration",
]

MAX_N = 24


@dataclass(frozen=True)
class FixedPoint:
    k: int
    n: int
    root_exponents: tuple[int, ...]

    def __post_init__(self):
        es = self.root_exponents
        if len(es) != self.k or len(set(e % (2 * self.n) for e in es)) != self.k:
            raise DomainError("a fixed point needs k distinct roots")

    @property
    def conductor(self) -> int:
        return 2 * self.n

    def roots(self) -> list[CycElem]:
        return [zeta_pow(self.conductor, e) for e in self.root_exponents]

    def verify(self) -> bool:
        """Exact check that every root satisfies z^n = (-1)^(k-1)."""
        target = CycElem.from_rational(self.conductor, (-1) ** (self.k - 1))
        return all(z ** self.n == target for z in self.roots())

    def is_conjugation_closed(self) -> bool:
        m = self.conductor
        s = {e % m for e in self.root_exponents}
        return {(-e) % m for e in s} == s

    def matrix(self) -> list[list[CycElem]]:
        m = self.conductor
        return [[zeta_pow(m, e * c) for c in range(self.n)] for e in self.root_exponents]

    def label(self) -> str:
        return "{" + ", ".join(f"z{self.conductor}^{e}" for e in self.root_exponents) + "}"


def _check_range(k: int, n: int) -> None:
    if not 1 <= k < n <= MAX_N:
        raise DomainError(f"need 1 <= k < n <= {MAX_N}")


def _allowed_exponents(k: int, n: int) -> list[int]:
    # z = zeta_{2n}^e has z^n = (-1)^e
    parity = (k - 1) % 2
    return [e for e in range(2 * n) if e % 2 == parity]


def karp_fixed_points(k: int, n: int) -> list[FixedPoint]:
    _check_range(k, n)
    return [FixedPoint(k, n, c) for c in itertools.combinations(_allowed_exponents(k, n), k)]


def real_fixed_points(k: int, n: int, exhaustive: bool = False) -> list[FixedPoint]:
    """Conjugation-closed fixed points.

    For k = 2 these are {z, 1/z} with z^n = -1, z != 1/z; for k = 3 the sets
    {1, z, 1/z} with z^n = 1, z != +-1.  With ``exhaustive`` every
    conjugation-closed fixed point is returned (for k = 3 and even n this
    adds the sets {-1, z, 1/z}).
    """
    _check_range(k, n)
    if exhaustive:
        return [fp for fp in karp_fixed_points(k, n) if fp.is_conjugation_closed()]
    m = 2 * n
    if k == 2:
        return [FixedPoint(2, n, (e, m - e)) for e in range(1, n, 2)]
    if k == 3:
        return [FixedPoint(3, n, (0, e, m - e)) for e in range(2, n, 2)]
    raise DomainError("real fixed points are enumerated for k = 2, 3 only")


def _det(M: list[list[CycElem]]) -> CycElem:
    M = [list(r) for r in M]
    k = len(M)
    m = M[0][0].m
    det = CycElem.from_rational(m, 1)
    for c in range(k):
        piv = next((r for r in range(c, k) if not M[r][c].is_zero()), None)
        if piv is None:
            return CycElem(m)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inv()
        for r in range(c + 1, k):
            if not M[r][c].is_zero():
                f = M[r][c] * inv
                for cc in range(c, k):
                    M[r][cc] = M[r][cc] - f * M[c][cc]
    return det


def plucker(fp: FixedPoint, I: Sequence[int]) -> CycElem:
    V = fp.matrix()
    return _det([[row[c] for c in I] for row in V])


def plucker_ratio(fp: FixedPoint, I: Sequence[int]) -> CycElem:
    """Exact Delta_I / Delta_{0..k-1} (0-based column indices)."""
    I = list(I)
    if len(I) != fp.k or len(set(I)) != fp.k or any(not 0 <= c < fp.n for c in I):
        raise DomainError(f"need {fp.k} distinct columns in 0..{fp.n - 1}")
    base = plucker(fp, range(fp.k))
    if base.is_zero():
        raise DomainError("degenerate base minor")
    return plucker(fp, I) / base


def numeric_plucker_ratio(fp: FixedPoint, I: Sequence[int]) -> complex:
    z = np.exp(1j * np.pi * np.array(fp.root_exponents) / fp.n)
    V = np.array([[zz ** c for c in range(fp.n)] for zz in z])
    return complex(np.linalg.det(V[:, list(I)]) / np.linalg.det(V[:, : fp.k]))


def divisibility_ok(k: int, n: int) -> bool:
    """Arithmetic hypothesis on n: for even k, n is neither 2m nor 3m with m odd;
    for odd k, n is divisible by none of 2, 4, 6."""
    if k % 2 == 0:
        if n % 2 == 0 and (n // 2) % 2 == 1:
            return False
        if n % 3 == 0 and (n // 3) % 2 == 1:
            return False
        return True
    return all(n % d for d in (2, 4, 6))


def designated_columns(k: int) -> tuple[int, ...]:
    if k == 2:
        return (0, 2)
    if k == 3:
        return (0, 1, 3)
    raise DomainError("designated ratio defined for k = 2, 3")


class Status(str, enum.Enum):
    OBSTRUCTED = "Obstructed"
    INCONCLUSIVE = "Inconclusive"
    PRECONDITION_FAILED = "PreconditionFailed"


@dataclass
class Certificate:
    fixed_point: FixedPoint
    columns: tuple[int, ...]  # 1-based, as in Delta subscripts
    value: CycElem
    rational: Optional[Fraction]

    def to_dict(self) -> dict:
        return {
            "roots": self.fixed_point.label(),
            "root_exponents": list(self.fixed_point.root_exponents),
            "ratio": "Delta_" + "".join(map(str, self.columns)) + "/Delta_" + "".join(
                str(i + 1) for i in range(self.fixed_point.k)),
            "value": self.value.to_json(),
            "value_text": self.value.format(),
            "rational": None if self.rational is None else str(self.rational),
        }


@dataclass
class ObstructionVerdict:
    k: int
    n: int
    l: int
    status: Status
    certificates: list = field(default_factory=list)
    rational_witness: Optional[Certificate] = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "k": self.k, "n": self.n, "l": self.l,
            "status": self.status.value,
            "reason": self.reason,
            "certificates": [c.to_dict() for c in self.certificates],
            "rational_witness": None if self.rational_witness is None else self.rational_witness.to_dict(),
        }


def _check_points(k, n, all_ratios):
    certs = []
    witness = None
    points = real_fixed_points(k, n) if k in (2, 3) else real_fixed_points(k, n, exhaustive=True)
    for fp in points:
        if all_ratios:
            cols_list = [c for c in itertools.combinations(range(n), k) if c != tuple(range(k))]
        else:
            cols_list = [designated_columns(k)]
        found = None
        first_rational = None
        for cols in cols_list:
            val = plucker_ratio(fp, cols)
            if not val == val.conj():
                raise ConsistencyError(f"ratio at real fixed point {fp.label()} is not real")
            r = val.rational_value()
            cert = Certificate(fp, tuple(c + 1 for c in cols), val, r)
            if r is None:
                found = cert
                break
            if first_rational is None:
                first_rational = cert
        if found is not None:
            certs.append(found)
        elif witness is None:
            witness = first_rational
    return certs, witness


def obstruct_twist_spun(k: int, n: int, l: int, force: bool = False,
                        all_ratios: bool = False) -> ObstructionVerdict:
    """Irrationality obstruction to exact fillings of the l-twist-spun of lambda(k, n-k).

    For every real fixed point one Plucker ratio must be irrational.  Under
    ``force`` the check also runs when the hypotheses fail, so that a
    rational witness can be exhibited.
    """
    if k not in (2, 3) and not all_ratios:
        raise DomainError("the designated-ratio test is available for k = 2, 3 (use all_ratios)")
    if not 1 <= l < n:
        raise DomainError("need 1 <= l < n")
    _check_range(k, n)
    reasons = []
    if gcd(l, n) != 1:
        reasons.append(f"gcd(l, n) = {gcd(l, n)} != 1")
    if k in (2, 3) and not divisibility_ok(k, n):
        reasons.append(f"n = {n} violates the divisibility condition for k = {k}")
    if reasons and not force:
        return ObstructionVerdict(k, n, l, Status.PRECONDITION_FAILED, reason="; ".join(reasons))
    certs, witness = _check_points(k, n, all_ratios)
    if reasons:
        return ObstructionVerdict(k, n, l, Status.PRECONDITION_FAILED, certs, witness, "; ".join(reasons))
    if witness is None:
        for c in certs:
            if c.rational is not None:
                raise ConsistencyError("obstructed verdict with a rational certificate")
        return ObstructionVerdict(k, n, l, Status.OBSTRUCTED, certs,
                                  reason="every real fixed point has an irrational Plucker ratio")
    return ObstructionVerdict(k, n, l, Status.INCONCLUSIVE, certs, witness,
                              reason="a real fixed point has only rational tested ratios")


def check_real_enumeration(k: int, n: int, tol: float = 1e-9) -> bool:
    """Numerically confirm that the points with all ratios real are the conjugation-closed ones."""
    _check_range(k, n)
    cols = list(itertools.combinations(range(n), k))
    for fp in karp_fixed_points(k, n):
        real = all(abs(numeric_plucker_ratio(fp, c).imag) < tol for c in cols)
        if real != fp.is_conjugation_closed():
            return False
    return True


def expected_count(k: int, n: int) -> int:
    return comb(n, k)

"""Coefficient ring Q_2m = Z[al]/(al^2) and the integer constants d_n, gamma_l."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb


class MixedParameterError(ValueError):
    """Raised when values built for different m meet in one expression."""


class DivisibilityError(ArithmeticError):
    """An exact integer or polynomial division left a remainder."""


def nontriviality_index(i: int) -> int:
    """Return p if i + 1 is a power of the prime p, else 1."""
    if i < 1:
        raise ValueError(f"index must be positive, got {i}")
    n = i + 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n  # n itself is prime
    while n % p == 0:
        n //= p
    return p if n == 1 else 1


@dataclass(frozen=True)
class Q2mScalar:
    """a + b*al with al^2 = 0 and deg al = -2m."""

    a: int
    b: int = 0
    m: int = 1

    def _check(self, other: "Q2mScalar") -> None:
        if other.m != self.m:
            raise MixedParameterError(f"cannot combine m={self.m} with m={other.m}")

    def _coerce(self, other):
        if isinstance(other, int):
            return Q2mScalar(other, 0, self.m)
        if isinstance(other, Q2mScalar):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Q2mScalar(self.a + other.a, self.b + other.b, self.m)

    __radd__ = __add__

    def __neg__(self):
        return Q2mScalar(-self.a, -self.b, self.m)

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
        return Q2mScalar(self.a * other.a, self.a * other.b + self.b * other.a, self.m)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def inverse(self) -> "Q2mScalar":
        # (a + b al)^-1 = 1/a - b/a^2 al; integral only for a = +-1
        if self.a not in (1, -1):
            raise DivisibilityError(f"{self} is not a unit")
        return Q2mScalar(self.a, -self.b, self.m)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*al"
        return f"{self.a}{self.b:+d}*al"


@dataclass(frozen=True)
class GammaTable:
    m: int
    d: int
    gamma: tuple[int, ...] = field(repr=True)

    def __getitem__(self, l: int) -> int:
        return self.gamma[l]


@lru_cache(maxsize=None)
def gamma_table(m: int) -> GammaTable:
    """Constants gamma_0 .. gamma_{2m-1} for the even infinitesimal theory of degree 2m."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    n = 2 * m
    d = nontriviality_index(n)
    gamma = []
    for l in range(n):
        num = n + 1 if l == 0 else comb(n, l) - (-1) ** l
        q, r = divmod(num, d)
        if r:
            raise DivisibilityError(f"d={d} does not divide {num} (m={m}, l={l})")
        gamma.append(q)
    if sum((-1) ** l * g for l, g in enumerate(gamma)) != 0:
        raise DivisibilityError(f"alternating gamma sum is nonzero for m={m}")
    return GammaTable(m, d, tuple(gamma))

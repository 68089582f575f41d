"""Symmetric polynomials on explicit root lists and Chern data of virtual bundles."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .polyalg import Poly, make_var, series_inverse

# formal variable for Chern series; never used for roots
SERIES_VAR = make_var("t", 0)


def _m_of(roots: Sequence[Poly], m: int | None) -> int:
    if roots:
        return roots[0].m
    if m is None:
        raise ValueError("m is required for an empty root list")
    return m


@lru_cache(maxsize=4096)
def _elementary(roots: tuple[Poly, ...], m: int) -> tuple[Poly, ...]:
    e = [Poly.const(1, m)]
    for r in roots:
        e.append(Poly(m=m))
        for j in range(len(e) - 1, 0, -1):
            e[j] = e[j] + r * e[j - 1]
    return tuple(e)


@lru_cache(maxsize=4096)
def _complete(roots: tuple[Poly, ...], k: int, m: int) -> tuple[Poly, ...]:
    h = [Poly.const(1, m)] + [Poly(m=m)] * k
    for r in roots:
        for j in range(1, k + 1):
            h[j] = h[j] + r * h[j - 1]
    return tuple(h)


def elem_sym(k: int, roots: Sequence[Poly], m: int | None = None) -> Poly:
    m = _m_of(roots, m)
    e = _elementary(tuple(roots), m)
    return e[k] if 0 <= k < len(e) else Poly(m=m)


def complete_sym(k: int, roots: Sequence[Poly], m: int | None = None) -> Poly:
    m = _m_of(roots, m)
    if k < 0:
        return Poly(m=m)
    return _complete(tuple(roots), k, m)[k]


@lru_cache(maxsize=4096)
def _power_sum(k: int, roots: tuple[Poly, ...], m: int) -> Poly:
    total = Poly(m=m)
    for r in roots:
        total = total + r**k
    return total


def power_sum(k: int, roots: Sequence[Poly], m: int | None = None) -> Poly:
    """p_k with the convention p_0 = 1 (not the root count)."""
    m = _m_of(roots, m)
    if k < 0:
        return Poly(m=m)
    if k == 0:
        return Poly.const(1, m)
    return _power_sum(k, tuple(roots), m)


@dataclass
class IdentityReport:
    residuals: dict[tuple[int, str], Poly]

    @property
    def failures(self) -> dict[tuple[int, str], Poly]:
        return {k: v for k, v in self.residuals.items() if v}

    @property
    def ok(self) -> bool:
        return not self.failures


def newton_identity_residuals(k_max: int, roots: Sequence[Poly], m: int | None = None) -> IdentityReport:
    """Residuals of the four Newton-type identities relating e, h and p for k = 1..k_max."""
    m = _m_of(roots, m)
    e = lambda i: elem_sym(i, roots, m)
    h = lambda i: complete_sym(i, roots, m)
    p = lambda i: power_sum(i, roots, m)
    out: dict[tuple[int, str], Poly] = {}
    for k in range(1, k_max + 1):
        rhs = (-1) ** (k + 1) * k * e(k)
        for i in range(1, k):
            rhs = rhs - (-1) ** i * p(k - i) * e(i)
        out[(k, "a")] = p(k) - rhs

        b1 = sum(((-1) ** (i + 1) * p(i) * e(k - i) for i in range(1, k + 1)), Poly(m=m))
        b2 = sum(((-1) ** (k + 1 - i) * p(k - i) * e(i) for i in range(k)), Poly(m=m))
        out[(k, "b")] = k * e(k) - b1
        out[(k, "b'")] = b1 - b2

        rhs = k * h(k)
        for i in range(1, k):
            rhs = rhs - p(i) * h(k - i)
        out[(k, "c")] = p(k) - rhs

        d1 = sum((p(i) * h(k - i) for i in range(1, k + 1)), Poly(m=m))
        d2 = sum((p(k - i) * h(i) for i in range(k)), Poly(m=m))
        out[(k, "d")] = k * h(k) - d1
        out[(k, "d'")] = d1 - d2
    return IdentityReport(out)


@dataclass(frozen=True)
class VirtualBundle:
    """Formal difference pos - neg of split bundles given by their Chern roots."""

    pos: tuple[Poly, ...]
    neg: tuple[Poly, ...] = ()
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(self.pos))
        object.__setattr__(self, "neg", tuple(self.neg))
        for r in self.pos + self.neg:
            if r.m != self.m:
                raise ValueError(f"root with m={r.m} in a bundle with m={self.m}")

    @property
    def rank(self) -> int:
        return len(self.pos) - len(self.neg)

    def dual(self) -> "VirtualBundle":
        return VirtualBundle(tuple(-r for r in self.pos), tuple(-r for r in self.neg), self.m)

    def __sub__(self, other: "VirtualBundle") -> "VirtualBundle":
        return VirtualBundle(self.pos + other.neg, self.neg + other.pos, self.m)


@lru_cache(maxsize=1024)
def virtual_chern_series(V: VirtualBundle, order: int) -> Poly:
    """c_t(V) = prod(1 + r t over pos) / prod(1 + r t over neg), mod t^(order+1)."""
    t = Poly.from_var(SERIES_VAR, V.m)
    num = Poly.const(1, V.m)
    for r in V.pos:
        num = num * (1 + r * t)
    den = Poly.const(1, V.m)
    for r in V.neg:
        den = den * (1 + r * t)
    series = num * series_inverse(den, SERIES_VAR, order)
    return Poly({k: c for k, c in series.terms.items() if dict(k).get(SERIES_VAR, 0) <= order}, V.m)


def virtual_chern(k: int, V: VirtualBundle) -> Poly:
    if k < 0:
        return Poly(m=V.m)
    return virtual_chern_series(V, k).coefficient(SERIES_VAR, k)


def virtual_power_sum(k: int, V: VirtualBundle, verify: bool = False) -> Poly:
    """p_k(pos - neg) = p_k(pos) - p_k(neg) for k >= 1.

    With ``verify`` the value is recomputed from the Newton recursion in the
    virtual Chern classes and the two must agree.
    """
    if k < 1:
        raise ValueError("virtual power sums are defined for k >= 1")
    value = power_sum(k, V.pos, V.m) - power_sum(k, V.neg, V.m)
    if verify:
        other = power_sum_via_chern(k, V)
        if other != value:
            raise AssertionError(f"power sum paths disagree for k={k}")
    return value


def power_sum_via_chern(k: int, V: VirtualBundle) -> Poly:
    """p_k from the virtual Chern classes by p_k = (-1)^(k+1) k c_k - sum (-1)^i p_(k-i) c_i."""
    c = [virtual_chern(i, V) for i in range(k + 1)]
    p = [Poly.const(1, V.m)]
    for j in range(1, k + 1):
        val = (-1) ** (j + 1) * j * c[j]
        for i in range(1, j):
            val = val - (-1) ** i * p[j - i] * c[i]
        p.append(val)
    return p[k]


def root_list(family: str, count: int, m: int, sign: int = 1, start: int = 1) -> tuple[Poly, ...]:
    return tuple(sign * Poly.gen(family, i, m) for i in range(start, start + count))

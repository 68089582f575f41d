"""Kempf-Laksov classes of type A and C, by closed formula and by stagewise push-forward.

Both routes produce polynomials in the inert class symbols A[k;s] / C[k;s], so
they can be compared exactly.  ``specialize_split`` then evaluates the symbols
as relative Segre classes on explicit roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .coeffs import gamma_table
from .polyalg import Poly, make_var, sum_polys
from .schurkernels import (
    H_coefficients,
    class_symbol,
    multischur_det,
    multischur_pf,
    shifted_pairs_A,
    shifted_pairs_C,
)
from .segre import segre_virtual
from .symfn import elem_sym, power_sum


class InvalidPartition(ValueError):
    pass


def _strip(lam) -> tuple[int, ...]:
    lam = tuple(int(p) for p in lam)
    if any(p < 0 for p in lam):
        raise InvalidPartition(f"negative part in {lam}")
    return tuple(p for p in lam if p)


@dataclass(frozen=True)
class GrassmannSetup:
    """Rank n bundle E, rank d subbundle S, partition lam in P_d(n)."""

    n: int
    d: int
    lam: tuple[int, ...]
    m: int = 1

    def __post_init__(self):
        lam = _strip(self.lam)
        object.__setattr__(self, "lam", lam)
        if not 0 <= self.d <= self.n:
            raise InvalidPartition(f"need 0 <= d <= n, got d={self.d}, n={self.n}")
        if self.m < 1:
            raise InvalidPartition("m must be positive")
        if any(a < b for a, b in zip(lam, lam[1:])):
            raise InvalidPartition(f"parts must be weakly decreasing: {lam}")
        if len(lam) > self.d or (lam and lam[0] > self.n - self.d):
            raise InvalidPartition(f"{lam} does not fit in a {self.d} x {self.n - self.d} box")

    @property
    def r(self) -> int:
        return len(self.lam)

    @property
    def superscripts(self) -> tuple[int, ...]:
        return tuple(p - i + self.d for i, p in enumerate(self.lam, start=1))


@dataclass(frozen=True)
class LagrangianSetup:
    """Symplectic E of rank 2n, strict partition lam in SP(n)."""

    n: int
    lam: tuple[int, ...]
    m: int = 1

    def __post_init__(self):
        lam = _strip(self.lam)
        object.__setattr__(self, "lam", lam)
        if self.n < 0 or self.m < 1:
            raise InvalidPartition("need n >= 0 and m >= 1")
        if any(a <= b for a, b in zip(lam, lam[1:])):
            raise InvalidPartition(f"parts must be strictly decreasing: {lam}")
        if len(lam) > self.n or (lam and lam[0] > self.n):
            raise InvalidPartition(f"{lam} is not a strict partition in SP({self.n})")

    @property
    def r(self) -> int:
        return len(self.lam)

    @property
    def superscripts(self) -> tuple[int, ...]:
        return tuple(p - 1 for p in self.lam)


def partitions_in_box(d: int, width: int) -> Iterator[tuple[int, ...]]:
    """All partitions with at most d parts, each at most width, including the empty one."""

    def rec(prefix, cap, left):
        yield tuple(prefix)
        if left == 0:
            return
        for p in range(min(cap, width), 0, -1):
            yield from rec(prefix + [p], p, left - 1)

    yield from rec([], width, d)


def strict_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All strict partitions with parts at most n (so length at most n), including the empty one."""

    def rec(prefix, cap):
        yield tuple(prefix)
        for p in range(cap, 0, -1):
            yield from rec(prefix + [p], p - 1)

    yield from rec([], n)


# -- type A ---------------------------------------------------------------------


def kl_A_closed(setup: GrassmannSetup, classical: bool = False) -> Poly:
    """Determinant formula; ``classical`` keeps only the al-free determinant."""
    m = setup.m
    sups = setup.superscripts
    lam = setup.lam
    value = multischur_det(list(zip(sups, lam)), m, "A")
    if classical:
        return value
    corr = [c * multischur_det(list(zip(sups, shifted)), m, "A") for c, shifted in shifted_pairs_A(lam, m)]
    return value + Poly.alpha(m) * sum_polys(corr, m)


def _tau_roots(count: int, m: int) -> tuple[Poly, ...]:
    return tuple(Poly.gen("tau", j, m) for j in range(1, count + 1))


@lru_cache(maxsize=4096)
def _stage_A(i: int, s: int, sup: int, part: int, m: int, classical: bool) -> Poly:
    """Push-forward of tau_i^s times the i-th stage class (stages counted from 1)."""
    g = gamma_table(m)
    D = tuple(-t for t in _tau_roots(i - 1, m))
    al = Poly.alpha(m)
    out = []
    for p in range(i):
        c = elem_sym(p, D, m)
        term = class_symbol("A", sup, part + s - p, m)
        if not classical:
            for l in range(1, 2 * m):
                sym = class_symbol("A", sup, part + s - p + 2 * m - l, m)
                if sym:
                    term = term + al * g[l] * power_sum(l, D, m) * sym
        out.append(c * term)
    return sum_polys(out, m)


def _iterate(r: int, stage, m: int) -> Poly:
    state = Poly.const(1, m)
    for i in range(r, 0, -1):
        tau = make_var("tau", i)
        pieces = []
        for s, coeff in state.collect(tau).items():
            if s < 0:
                raise AssertionError(f"negative power of tau_{i} in the stage state")
            pieces.append(coeff * stage(i, s))
        state = sum_polys(pieces, m)
    return state


def kl_A_iterated(setup: GrassmannSetup, classical: bool = False) -> Poly:
    """Push the product of stage classes down the projective tower, last stage first."""
    sups, lam, m = setup.superscripts, setup.lam, setup.m
    return _iterate(setup.r, lambda i, s: _stage_A(i, s, sups[i - 1], lam[i - 1], m, classical), m)


# -- type C ---------------------------------------------------------------------


def kl_C_closed(setup: LagrangianSetup, classical: bool = False) -> Poly:
    """Pfaffian formula; ``classical`` keeps only the al-free Pfaffian."""
    m = setup.m
    sups = setup.superscripts
    lam = setup.lam
    value = multischur_pf(list(zip(sups, lam)), m, "C")
    if classical:
        return value
    corr = [c * multischur_pf(list(zip(sups, shifted)), m, "C") for c, shifted in shifted_pairs_C(lam, m)]
    return value + Poly.alpha(m) * sum_polys(corr, m)


@lru_cache(maxsize=256)
def _H(i: int, order: int, m: int) -> tuple[Poly, ...]:
    return tuple(H_coefficients(_tau_roots(i - 1, m), order, m))


@lru_cache(maxsize=4096)
def _stage_C(i: int, s: int, sup: int, part: int, m: int, classical: bool) -> Poly:
    g = gamma_table(m)
    taus = _tau_roots(i - 1, m)
    al = Poly.alpha(m)
    # beyond this q every symbol index is below -2m
    top = part + s + 4 * m
    H = _H(i, top, m) if i > 1 else (Poly.const(1, m),)
    out = []
    for q, h in enumerate(H):
        if not h:
            continue
        term = class_symbol("C", sup, part + s - q, m)
        if not classical:
            for a in range(1, 2 * m):
                sym = class_symbol("C", sup, part + s - q + 2 * m - a, m)
                if sym and a % 2:
                    # p_a(D - D^v) = ((-1)^a - 1) p_a(tau)
                    term = term + al * (-2 * g[a]) * power_sum(a, taus, m) * sym
        out.append(h * term)
    return sum_polys(out, m)


def kl_C_iterated(setup: LagrangianSetup, classical: bool = False) -> Poly:
    sups, lam, m = setup.superscripts, setup.lam, setup.m
    return _iterate(setup.r, lambda i, s: _stage_C(i, s, sups[i - 1], lam[i - 1], m, classical), m)


# -- split specialization ---------------------------------------------------------


@lru_cache(maxsize=4096)
def _symbol_value(kind: str, sup: int, sub: int, n: int, d: int, m: int) -> Poly:
    if kind == "A":
        E = tuple(-Poly.gen("x", j, m) for j in range(1, d + 1))
        F = tuple(-Poly.gen("y", j, m) for j in range(1, sup + 1))
    else:
        E = tuple(-Poly.gen("x", j, m) for j in range(1, n + 1))
        F = tuple(-Poly.gen("y", j, m) for j in range(1, n + sup + 1))
    return segre_virtual(sub, E, F, m)


def specialize_split(c: Poly, setup) -> Poly:
    """Evaluate every class symbol as a relative Segre class on split roots.

    Type A: A[l;s] -> S_s(S^v - (E/F^l)^v) with S^v roots -x_1..-x_d and
    (E/F^l)^v roots -y_1..-y_l.  Type C: C[l;s] -> S_s(L^v - (E/F^l)^v) with
    L^v roots -x_1..-x_n and E/F^l of rank n + l.
    """
    m = setup.m
    if isinstance(setup, GrassmannSetup):
        n, d, lo, hi = setup.n, setup.d, 0, setup.n
    else:
        n, d, lo, hi = setup.n, setup.n, -setup.n, setup.n - 1
    assignment = {}
    for v in c.variables():
        if not v.is_symbol:
            continue
        if not lo <= v.superscript <= hi:
            raise ValueError(f"superscript {v.superscript} outside {lo}..{hi}")
        assignment[v] = _symbol_value(v.family, v.superscript, v.subscript, n, d, m)
    return c.subs(assignment)

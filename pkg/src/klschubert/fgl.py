"""The formal group law u [+] v of the even infinitesimal theory and its axioms."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .coeffs import DivisibilityError, gamma_table
from .polyalg import Poly, gen, make_var


@dataclass(frozen=True)
class FormalGroupLaw:
    m: int
    sum: Poly  # polynomial in u, v

    def __call__(self, a: Poly, b: Poly) -> Poly:
        return self.sum.subs({make_var("u"): a, make_var("v"): b})

    def correction(self, a: Poly, b: Poly) -> Poly:
        """The factor 1 + al*sum_i gamma_i a^i b^(2m-i), so that a [+] b = (a+b)*correction."""
        return _correction(self.m).subs({make_var("u"): a, make_var("v"): b})


@lru_cache(maxsize=None)
def _correction(m: int) -> Poly:
    g = gamma_table(m)
    u, v = gen("u", m=m), gen("v", m=m)
    inner = sum((g[i] * u**i * v ** (2 * m - i) for i in range(1, 2 * m)), Poly(m=m))
    return 1 + Poly.alpha(m) * inner


def unfactored_sum(m: int) -> Poly:
    """u + v + al*(1/d) * sum_{i=1}^{2m} C(2m+1, i) u^i v^(2m+1-i)."""
    d = gamma_table(m).d
    u, v = gen("u", m=m), gen("v", m=m)
    inner = Poly(m=m)
    for i in range(1, 2 * m + 1):
        q, r = divmod(comb(2 * m + 1, i), d)
        if r:
            raise DivisibilityError(f"d={d} does not divide C({2 * m + 1},{i})")
        inner = inner + q * u**i * v ** (2 * m + 1 - i)
    return u + v + Poly.alpha(m) * inner


@lru_cache(maxsize=None)
def build_fgl(m: int) -> FormalGroupLaw:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    u, v = gen("u", m=m), gen("v", m=m)
    factored = (u + v) * _correction(m)
    if factored != unfactored_sum(m):
        raise AssertionError(f"factored and unfactored formal group laws differ for m={m}")
    return FormalGroupLaw(m, factored)


def fgl_inverse(m: int) -> Poly:
    u = gen("u", m=m)
    inv = -u
    if build_fgl(m)(u, inv):
        raise AssertionError("u [+] (-u) is not zero")
    return inv


@dataclass
class AxiomReport:
    m: int
    unit_left: Poly
    unit_right: Poly
    commutativity: Poly
    associativity: Poly
    inverse: Poly

    @property
    def residuals(self) -> dict[str, Poly]:
        return {
            "unit_left": self.unit_left,
            "unit_right": self.unit_right,
            "commutativity": self.commutativity,
            "associativity": self.associativity,
            "inverse": self.inverse,
        }

    @property
    def ok(self) -> bool:
        return not any(self.residuals.values())


def verify_fgl_axioms(m: int) -> AxiomReport:
    F = build_fgl(m)
    u, v, w = gen("u", m=m), gen("v", m=m), gen("w", m=m)
    zero = Poly(m=m)
    return AxiomReport(
        m=m,
        unit_left=F(u, zero) - u,
        unit_right=F(zero, u) - u,
        commutativity=F(u, v) - F(v, u),
        associativity=F(u, F(v, w)) - F(F(u, v), w),
        inverse=F(u, -u),
    )

"""Segre classes of bundles and virtual bundles in the even infinitesimal theory.

Two independent routes are provided.  The closed formulas work with symmetric
functions of the roots; the push-forward route symmetrizes over the roots of E
with the formal group law denominators and clears the Vandermonde product by
exact division.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Callable, Sequence

from .coeffs import gamma_table
from .fgl import build_fgl
from .polyalg import Poly, make_var, nilpotent_inverse, sum_polys
from .symfn import (
    VirtualBundle,
    complete_sym,
    elem_sym,
    power_sum,
    virtual_chern_series,
    virtual_power_sum,
    SERIES_VAR,
)


class PathDisagreement(AssertionError):
    """Two independent computations of the same class gave different answers."""


def _roots(E: Sequence[Poly]) -> tuple[Poly, ...]:
    return tuple(E)


@lru_cache(maxsize=8192)
def _segre_formula(k: int, E: tuple[Poly, ...], m: int) -> Poly:
    g = gamma_table(m)
    corr = sum_polys(
        ((-1) ** l * g[l] * power_sum(l, E, m) * complete_sym(2 * m + k - l, E, m) for l in range(2 * m)),
        m,
    )
    return complete_sym(k, E, m) - Poly.alpha(m) * corr


def segre_formula(k: int, E: Sequence[Poly], m: int) -> Poly:
    """S_k(E) = h_k - al * sum_l (-1)^l gamma_l p_l h_(2m+k-l); zero for k < -2m."""
    return _segre_formula(k, _roots(E), m)


def vishik_push(numerator: Callable[[Poly], Poly], E: Sequence[Poly], m: int) -> Poly:
    """Push forward g(xi) from the dual projective bundle of E.

    Evaluates sum_i g(x_i) / prod_{j != i} (x_i [+] [-]x_j) on fresh variables,
    inverts the nilpotent part of each denominator and divides the symmetrized
    numerator by each factor of the Vandermonde product exactly.
    """
    e = len(E)
    if e == 0:
        raise ValueError("push-forward needs a bundle of positive rank")
    F = build_fgl(m)
    zvars = [make_var("z", i) for i in range(1, e + 1)]
    zs = [Poly.from_var(v, m) for v in zvars]
    numer = []
    for i in range(e):
        corr = Poly.const(1, m)
        for j in range(e):
            if j != i:
                corr = corr * F.correction(zs[i], -zs[j])
        term = numerator(zs[i]) * nilpotent_inverse(corr)
        term = term * _vandermonde(zvars[:i] + zvars[i + 1:], m)
        numer.append(term if i % 2 == 0 else -term)
    # one linear factor at a time keeps every intermediate division small
    quotient = sum_polys(numer, m)
    for a in range(e):
        for b in range(a + 1, e):
            quotient = quotient.exact_div(zs[a] - zs[b])
    return quotient.subs({v: r for v, r in zip(zvars, E)})


def _vandermonde(zvars: list, m: int) -> Poly:
    """prod_{a<b} (z_a - z_b), written down as det(z_a^(n-1-j)) term by term."""
    n = len(zvars)
    terms = {}
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        mono = tuple((zvars[a], n - 1 - perm[a]) for a in range(n) if perm[a] != n - 1)
        terms[tuple(sorted(mono))] = (-1 if inversions % 2 else 1, 0)
    return Poly(terms, m)


def segre_vishik(k: int, E: Sequence[Poly], m: int, stabilize: bool = False) -> Poly:
    """S_k(E) by the push-forward route.

    With ``stabilize`` a bundle of too small rank is first padded with trivial
    line bundles (zero roots) until k + rank - 1 >= 0.
    """
    E = tuple(E)
    if k + len(E) - 1 < 0:
        if not stabilize:
            raise ValueError(f"S_{k} needs k + rank - 1 >= 0 on this route")
        E = E + (Poly(m=m),) * (1 - k - len(E))
    e = len(E)
    return vishik_push(lambda xi: xi ** (k + e - 1), E, m)


def _segre_virtual_series(k: int, E: tuple, F: tuple, m: int) -> Poly:
    if k < -2 * m:
        return Poly(m=m)
    g = gamma_table(m)
    al = Poly.alpha(m)
    # c_{-t}(F - E): coefficient j carries (-1)^j
    cs = virtual_chern_series(VirtualBundle(F, E, m), k + 2 * m)
    diff = VirtualBundle(E, F, m)
    total = []
    for i in range(2 * m + 1):
        j = k + i
        if j < 0:
            continue
        c = (-1) ** j * cs.coefficient(SERIES_VAR, j)
        if i == 0:
            total.append(c)
        else:
            l = 2 * m - i
            p = Poly.const(1, m) if l == 0 else virtual_power_sum(l, diff)
            total.append(-(-1) ** i * g[l] * al * p * c)
    return sum_polys(total, m)


def _segre_virtual_relative(k: int, E: tuple, F: tuple, m: int) -> Poly:
    g = gamma_table(m)
    al = Poly.alpha(m)
    Fd = tuple(-y for y in F)
    total = []
    for l in range(len(F) + 1):
        inner = segre_formula(k - l, E, m)
        for i in range(1, 2 * m):
            inner = inner + al * g[2 * m - i] * power_sum(2 * m - i, Fd, m) * segre_formula(k - l + i, E, m)
        total.append(elem_sym(l, Fd, m) * inner)
    return sum_polys(total, m)


@lru_cache(maxsize=8192)
def _segre_virtual(k: int, E: tuple, F: tuple, m: int, check: bool) -> Poly:
    value = _segre_virtual_series(k, E, F, m)
    if check:
        other = _segre_virtual_relative(k, E, F, m)
        if other != value:
            raise PathDisagreement(f"relative Segre class S_{k} differs between the two formulas")
    return value


def segre_virtual(k: int, E: Sequence[Poly], F: Sequence[Poly], m: int, check: bool = True) -> Poly:
    """S_k(E - F), cross-checked against c_t(F^v) S_t(E) [1 + al ...] unless ``check`` is off."""
    return _segre_virtual(k, _roots(E), _roots(F), m, check)


def top_chern_twist(E: Sequence[Poly], tau: Poly, m: int, check: bool = True) -> Poly:
    """c_e(L (x) E) for a line bundle L with first Chern class tau."""
    E = _roots(E)
    e = len(E)
    g = gamma_table(m)
    bracket = 1 + Poly.alpha(m) * sum_polys(
        (g[j] * power_sum(j, E, m) * tau ** (2 * m - j) for j in range(1, 2 * m)), m
    )
    value = sum_polys((elem_sym(l, E, m) * tau ** (e - l) for l in range(e + 1)), m) * bracket
    if check:
        F = build_fgl(m)
        direct = Poly.const(1, m)
        for x in E:
            direct = direct * F(tau, x)
        if direct != value:
            raise PathDisagreement("top Chern class of the twist disagrees with the root product")
    return value


def push_twisted_top(s: int, E: Sequence[Poly], F: Sequence[Poly], m: int) -> Poly:
    """pi_*(xi^s c_f(Q (x) F^v)) over the dual projective bundle of E."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    fgl = build_fgl(m)
    F = _roots(F)

    def numerator(xi: Poly) -> Poly:
        out = xi**s
        for y in F:
            out = out * fgl(xi, -y)
        return out

    return vishik_push(numerator, E, m)


def segre_series_residuals(E: Sequence[Poly], m: int, lo: int, hi: int) -> dict[int, Poly]:
    """R_i - expected_i for i in [lo, hi], where R_t = S_t(E) c_{-t}(E).

    The expected series is 1 - al * sum_{i=1}^{2m} (-1)^i gamma_{2m-i} p_{2m-i}(E) t^{-i}.
    """
    E = _roots(E)
    g = gamma_table(m)
    out = {}
    for i in range(lo, hi + 1):
        r = sum_polys(
            ((-1) ** q * elem_sym(q, E, m) * segre_formula(i - q, E, m) for q in range(len(E) + 1)), m
        )
        if i == 0:
            expected = Poly.const(1, m)
        elif -2 * m <= i < 0:
            j = -i
            expected = -(-1) ** j * g[2 * m - j] * Poly.alpha(m) * power_sum(2 * m - j, E, m)
        else:
            expected = Poly(m=m)
        out[i] = r - expected
    return out

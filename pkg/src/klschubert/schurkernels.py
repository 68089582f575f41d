"""Laurent series in t_1..t_r, the kernel products, the phi maps and multi-Schur forms.

Series here use dense exponent vectors of fixed length r.  The type C kernel is
an infinite series; it is expanded only as far as the class-symbol vanishing
threshold can see, propagating the bound from t_r back to t_1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .coeffs import MixedParameterError, gamma_table
from .polyalg import Poly, Var, make_symbol, make_var, series_inverse

# -- series ---------------------------------------------------------------------


class ConeLaurentSeries:
    """Finite piece of a Laurent series in t_1..t_r over Q_2m."""

    __slots__ = ("r", "m", "terms")

    def __init__(self, r: int, m: int, terms: dict | None = None):
        self.r = r
        self.m = m
        self.terms = {k: v for k, v in (terms or {}).items() if v[0] or v[1]}

    @classmethod
    def monomial(cls, exps: Sequence[int], a: int = 1, b: int = 0, m: int = 1) -> "ConeLaurentSeries":
        return cls(len(exps), m, {tuple(exps): (a, b)})

    @classmethod
    def one(cls, r: int, m: int) -> "ConeLaurentSeries":
        return cls(r, m, {(0,) * r: (1, 0)})

    def _check(self, other: "ConeLaurentSeries") -> None:
        if other.m != self.m:
            raise MixedParameterError(f"cannot combine m={self.m} with m={other.m}")
        if other.r != self.r:
            raise ValueError(f"series in {self.r} and {other.r} variables")

    def __add__(self, other: "ConeLaurentSeries") -> "ConeLaurentSeries":
        self._check(other)
        res = dict(self.terms)
        for k, (a, b) in other.terms.items():
            oa, ob = res.get(k, (0, 0))
            res[k] = (oa + a, ob + b)
        return ConeLaurentSeries(self.r, self.m, res)

    def __neg__(self) -> "ConeLaurentSeries":
        return ConeLaurentSeries(self.r, self.m, {k: (-a, -b) for k, (a, b) in self.terms.items()})

    def __sub__(self, other: "ConeLaurentSeries") -> "ConeLaurentSeries":
        return self + (-other)

    def scale(self, a: int, b: int = 0) -> "ConeLaurentSeries":
        """Multiply by the scalar a + b*al."""
        return ConeLaurentSeries(
            self.r, self.m, {k: (a * x, a * y + b * x) for k, (x, y) in self.terms.items()}
        )

    def __mul__(self, other: "ConeLaurentSeries") -> "ConeLaurentSeries":
        self._check(other)
        res: dict = {}
        for k1, (a1, b1) in self.terms.items():
            for k2, (a2, b2) in other.terms.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                oa, ob = res.get(k, (0, 0))
                res[k] = (oa + a1 * a2, ob + a1 * b2 + a2 * b1)
        return ConeLaurentSeries(self.r, self.m, res)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeLaurentSeries):
            return NotImplemented
        return (self.r, self.m, self.terms) == (other.r, other.m, other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"ConeLaurentSeries(r={self.r}, m={self.m}, {len(self.terms)} terms)"

    def drop_alpha(self) -> "ConeLaurentSeries":
        return ConeLaurentSeries(self.r, self.m, {k: (a, 0) for k, (a, _) in self.terms.items()})

    def degree(self) -> int | None:
        """Common degree with deg t_i = 1 and deg al = -2m; None if inhomogeneous or zero."""
        degs = set()
        for k, (a, b) in self.terms.items():
            if a:
                degs.add(sum(k))
            if b:
                degs.add(sum(k) - 2 * self.m)
        return degs.pop() if len(degs) == 1 else None

    @property
    def shift(self) -> tuple[int, ...]:
        """A vector s0 with s0 + supp contained in {s_1 >= 0, s_1 + s_2 >= 0, ...}."""
        if not self.terms:
            return (0,) * self.r
        need = [0] * self.r
        for k in self.terms:
            acc = 0
            for j, s in enumerate(k):
                acc += s
                need[j] = max(need[j], -acc)
        return tuple(need[j] - (need[j - 1] if j else 0) for j in range(self.r))

    def in_cone(self, shift: Sequence[int]) -> bool:
        for k in self.terms:
            acc = 0
            for s, s0 in zip(k, shift):
                acc += s + s0
                if acc < 0:
                    return False
        return True


def _validate_partition(lam: Sequence[int], strict: bool) -> tuple[int, ...]:
    lam = tuple(lam)
    if any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive: {lam}")
    for a, b in zip(lam, lam[1:]):
        if a < b or (strict and a == b):
            kind = "strictly decreasing" if strict else "weakly decreasing"
            raise ValueError(f"partition must be {kind}: {lam}")
    return lam


def _pair_shift(r: int, i: int, j: int, di: int, dj: int) -> tuple[int, ...]:
    v = [0] * r
    v[i] += di
    v[j] += dj
    return tuple(v)


def alpha_pair_sum_A(r: int, m: int) -> ConeLaurentSeries:
    """sum_l (-1)^(m+l) gamma_(m+l) sum_{i<j} t_i^(m+l) t_j^(m-l), as a series."""
    g = gamma_table(m)
    terms: dict = {}
    for l in range(-m + 1, m):
        c = (-1) ** (m + l) * g[m + l]
        for i in range(r):
            for j in range(i + 1, r):
                k = _pair_shift(r, i, j, m + l, m - l)
                terms[k] = (terms.get(k, (0, 0))[0] + c, 0)
    return ConeLaurentSeries(r, m, terms)


def alpha_pair_sum_C(r: int, m: int) -> ConeLaurentSeries:
    """sum_q gamma_(2q-1) sum_{i<j} t_i^(2q-1) t_j^(2m-2q+1)."""
    g = gamma_table(m)
    terms: dict = {}
    for q in range(1, m + 1):
        for i in range(r):
            for j in range(i + 1, r):
                k = _pair_shift(r, i, j, 2 * q - 1, 2 * m - 2 * q + 1)
                terms[k] = (terms.get(k, (0, 0))[0] + g[2 * q - 1], 0)
    return ConeLaurentSeries(r, m, terms)


def kernel_A(lam: Sequence[int], m: int) -> ConeLaurentSeries:
    """t^lam * prod_{i<j} (1 - t_i/t_j) * (1 + al * alpha_pair_sum_A)."""
    lam = _validate_partition(lam, strict=False)
    r = len(lam)
    out = ConeLaurentSeries.monomial(lam, m=m)
    for i in range(r):
        for j in range(i + 1, r):
            factor = ConeLaurentSeries(r, m, {(0,) * r: (1, 0), _pair_shift(r, i, j, 1, -1): (-1, 0)})
            out = out * factor
    bracket = ConeLaurentSeries.one(r, m) + alpha_pair_sum_A(r, m).scale(0, 1)
    return out * bracket


def det_t(ell: Sequence[int], m: int) -> ConeLaurentSeries:
    """Det[t_1^l_1 ... t_r^l_r] = det(t_i^(l_i + j - i))."""
    r = len(ell)
    terms: dict = {}
    for perm in permutations(range(r)):
        sign = _perm_sign(perm)
        k = tuple(ell[i] + perm[i] - i for i in range(r))
        terms[k] = (terms.get(k, (0, 0))[0] + sign, 0)
    return ConeLaurentSeries(r, m, terms)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass
class IdentityCheck:
    name: str
    residual: object
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.residual


def shifted_pairs_A(lam: Sequence[int], m: int) -> Iterable[tuple[int, tuple[int, ...]]]:
    """(coefficient, shifted lam) for the al-correction of the type A formula."""
    g = gamma_table(m)
    r = len(lam)
    for l in range(-m + 1, m):
        c = (-1) ** (m + l) * g[m + l]
        for a in range(r):
            for b in range(a + 1, r):
                shifted = list(lam)
                shifted[a] += m + l
                shifted[b] += m - l
                yield c, tuple(shifted)


def shifted_pairs_C(lam: Sequence[int], m: int) -> Iterable[tuple[int, tuple[int, ...]]]:
    """(coefficient, shifted lam) for the al-correction of the type C formula (factor -2 included)."""
    g = gamma_table(m)
    r = len(lam)
    for q in range(1, m + 1):
        for i in range(r):
            for j in range(i + 1, r):
                shifted = list(lam)
                shifted[i] += 2 * q - 1
                shifted[j] += 2 * m - 2 * q + 1
                yield -2 * g[2 * q - 1], tuple(shifted)


def vandermonde_identity_check(lam: Sequence[int], m: int) -> IdentityCheck:
    """kernel_A(lam) against Det[t^lam] + al * sum of shifted determinants."""
    lhs = kernel_A(lam, m)
    rhs = det_t(lam, m)
    for c, shifted in shifted_pairs_A(lam, m):
        rhs = rhs + det_t(shifted, m).scale(0, c)
    return IdentityCheck("vandermonde", lhs - rhs, {"lambda": tuple(lam), "m": m})


# -- type C expansion -------------------------------------------------------------


def _expand_pfaffian_factors(terms: dict, r: int, floor: int) -> dict:
    """Multiply by prod_{i<j} (1 - t_i/t_j)/(1 + t_i/t_j), keeping t_j >= floor.

    Pairs are consumed with j descending.  Once every pair (i, j) for a given j
    has been applied, the exponent of t_j never changes again, so a term whose
    t_j exponent has already fallen below ``floor`` can be dropped for good.
    """
    for j in range(r - 1, 0, -1):
        for i in range(j):
            res: dict = {}
            for k, (a, b) in terms.items():
                room = k[j] - floor
                if room < 0:
                    continue
                kl = list(k)
                for n in range(room + 1):
                    c = 1 if n == 0 else (2 if n % 2 == 0 else -2)
                    kk = tuple(kl)
                    oa, ob = res.get(kk, (0, 0))
                    res[kk] = (oa + c * a, ob + c * b)
                    kl[i] += 1
                    kl[j] -= 1
            terms = {k: v for k, v in res.items() if v[0] or v[1]}
    return {k: v for k, v in terms.items() if all(e >= floor for e in k)}


def kernel_C(lam: Sequence[int], m: int, margin: int = 0) -> ConeLaurentSeries:
    """t^lam prod_{i<j} (1-t_i/t_j)/(1+t_i/t_j) (1 - 2 al alpha_pair_sum_C), truncated.

    Terms with some exponent below -2m - margin are omitted; with margin 0 the
    omitted terms are exactly those whose class symbols vanish.
    """
    lam = _validate_partition(lam, strict=True)
    r = len(lam)
    start = ConeLaurentSeries.monomial(lam, m=m) * (
        ConeLaurentSeries.one(r, m) + alpha_pair_sum_C(r, m).scale(0, -2)
    )
    return ConeLaurentSeries(r, m, _expand_pfaffian_factors(start.terms, r, -2 * m - margin))


def pf_t(ell: Sequence[int], m: int, margin: int = 0) -> ConeLaurentSeries:
    """Pf[t_1^l_1 ... t_r^l_r]: t^ell prod_{i<j} (1-t_i/t_j)/(1+t_i/t_j), truncated."""
    r = len(ell)
    return ConeLaurentSeries(r, m, _expand_pfaffian_factors({tuple(ell): (1, 0)}, r, -2 * m - margin))


# -- phi and class polynomials ----------------------------------------------------------


@dataclass(frozen=True)
class ClassSymbolFamily:
    kind: str  # "A" or "C"
    superscripts: tuple[int, ...]
    vanish_below: int

    @classmethod
    def for_m(cls, kind: str, superscripts: Sequence[int], m: int) -> "ClassSymbolFamily":
        return cls(kind, tuple(superscripts), -2 * m)


def class_symbol(kind: str, superscript: int, subscript: int, m: int) -> Poly:
    """The class symbol as a polynomial; zero when the subscript is below -2m."""
    if subscript < -2 * m:
        return Poly(m=m)
    return Poly.from_var(make_symbol(kind, superscript, subscript), m)


def phi(series: ConeLaurentSeries, family: ClassSymbolFamily, prefix_tau: int = 0) -> Poly:
    """Send t_1^s_1 ... t_r^s_r to tau_1^s_1 .. tau_p^s_p * X_{s_(p+1)} ... X_{s_r}.

    The first ``prefix_tau`` variables become tau's (their exponents must be
    nonnegative); the others become class symbols of ``family``, and any symbol
    below the vanishing threshold kills the term.
    """
    r = series.r
    if len(family.superscripts) != r:
        raise ValueError("one superscript per series variable is required")
    taus = [make_var("tau", j + 1) for j in range(prefix_tau)]
    out: dict = {}
    for k, (a, b) in series.terms.items():
        exps: dict[Var, int] = {}
        dead = False
        for j, s in enumerate(k):
            if j < prefix_tau:
                if s < 0:
                    raise ValueError(f"negative power of t_{j + 1} cannot map to tau_{j + 1}")
                if s:
                    exps[taus[j]] = s
            else:
                if s < family.vanish_below:
                    dead = True
                    break
                v = make_symbol(family.kind, family.superscripts[j], s)
                exps[v] = exps.get(v, 0) + 1
        if dead:
            continue
        mono = tuple(sorted(exps.items()))
        oa, ob = out.get(mono, (0, 0))
        out[mono] = (oa + a, ob + b)
    return Poly(out, series.m)


def multischur_det(families: Sequence[tuple[int, int]], m: int, kind: str = "A") -> Poly:
    """det(X^(k_i)_(l_i + j - i)) for rows given as (superscript k_i, index l_i)."""
    r = len(families)
    result = Poly(m=m)
    for perm in permutations(range(r)):
        term = Poly.const(_perm_sign(perm), m)
        for i, (sup, ell) in enumerate(families):
            term = term * class_symbol(kind, sup, ell + perm[i] - i, m)
            if not term:
                break
        result = result + term
    return result


def multischur_pf(families: Sequence[tuple[int, int]], m: int, kind: str = "C", margin: int = 0) -> Poly:
    """Multi-Schur Pfaffian, defined as phi of the expanded Pfaffian kernel."""
    sups = [s for s, _ in families]
    ells = [e for _, e in families]
    series = pf_t(ells, m, margin)
    return phi(series, ClassSymbolFamily.for_m(kind, sups, m))


def pfaffian_recursion(families: Sequence[tuple[int, int]], m: int, kind: str = "C") -> Poly:
    """Expand along the first row into two-row Pfaffians (even number of rows)."""
    r = len(families)
    if r % 2:
        raise ValueError("the row expansion needs an even number of rows")
    if r == 0:
        return Poly.const(1, m)
    if r == 2:
        return multischur_pf(families, m, kind)
    total = Poly(m=m)
    for j in range(1, r):
        pair = multischur_pf([families[0], families[j]], m, kind)
        rest = [f for idx, f in enumerate(families) if idx not in (0, j)]
        sign = 1 if j % 2 == 1 else -1
        total = total + sign * pair * pfaffian_recursion(rest, m, kind)
    return total


def pfaffian_identity_check(lam: Sequence[int], m: int, margin: int = 0) -> IdentityCheck:
    """phi(kernel_C) against phi(Pf[t^lam] - 2 al sum gamma Pf[shifted])."""
    lam = _validate_partition(lam, strict=True)
    family = ClassSymbolFamily.for_m("C", [p - 1 for p in lam], m)
    lhs = phi(kernel_C(lam, m, margin), family)
    rhs = phi(pf_t(lam, m, margin), family)
    for c, shifted in shifted_pairs_C(lam, m):
        rhs = rhs + Poly.alpha(m) * c * phi(pf_t(shifted, m, margin), family)
    return IdentityCheck("pfaffian kernel", lhs - rhs, {"lambda": lam, "m": m})


def H_coefficients(roots: Sequence[Poly], order: int, m: int) -> list[Poly]:
    """H_0..H_order with sum H_p u^p = prod_k (1 - r_k u)/(1 + r_k u)."""
    u_var = make_var("u")
    u = Poly.from_var(u_var, m)
    num = Poly.const(1, m)
    den = Poly.const(1, m)
    for r in roots:
        num = num * (1 - r * u)
        den = den * (1 + r * u)
    series = num * series_inverse(den, u_var, order)
    coeffs = series.collect(u_var)
    return [coeffs.get(p, Poly(m=m)) for p in range(order + 1)]

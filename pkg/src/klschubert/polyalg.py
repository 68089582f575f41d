"""Sparse multivariate Laurent polynomials over Q_2m.

A polynomial maps monomials to coefficient pairs ``(a, b)`` meaning ``a + b*al``.
A monomial is a tuple of ``(Var, exponent)`` pairs sorted by variable, so the
representation is sparse in both terms and variables.  Products drop every
``al^2`` contribution as they are formed.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Mapping, NamedTuple

from .coeffs import DivisibilityError, MixedParameterError, Q2mScalar

FAMILIES = ("x", "y", "t", "tau", "u", "v", "w", "xi", "z", "A", "C")
_RANK = {f: i for i, f in enumerate(FAMILIES)}
LAURENT_FAMILIES = frozenset({"t", "xi", "z"})
SYMBOL_FAMILIES = frozenset({"A", "C"})
_BARE_WHEN_ZERO = frozenset({"u", "v", "w", "xi"})

INHOMOGENEOUS = "inhomogeneous"
ZERO = "zero"


class Var(NamedTuple):
    rank: int
    index: object  # int, or (-superscript, subscript) for class symbols

    @property
    def family(self) -> str:
        return FAMILIES[self.rank]

    @property
    def is_symbol(self) -> bool:
        return self.family in SYMBOL_FAMILIES

    @property
    def superscript(self) -> int:
        return -self.index[0]

    @property
    def subscript(self) -> int:
        return self.index[1]

    @property
    def degree(self) -> int:
        return self.index[1] if self.is_symbol else 1

    @property
    def name(self) -> str:
        fam = self.family
        if fam in SYMBOL_FAMILIES:
            return f"{fam}[{self.superscript};{self.subscript}]"
        if fam in _BARE_WHEN_ZERO and self.index == 0:
            return fam
        return f"{fam}{self.index}"


def make_var(family: str, index: int = 0) -> Var:
    if family not in _RANK or family in SYMBOL_FAMILIES:
        raise ValueError(f"unknown variable family {family!r}")
    if index < 0:
        raise ValueError("variable index must be nonnegative")
    return Var(_RANK[family], index)


def make_symbol(kind: str, superscript: int, subscript: int) -> Var:
    if kind not in SYMBOL_FAMILIES:
        raise ValueError(f"unknown class symbol kind {kind!r}")
    return Var(_RANK[kind], (-superscript, subscript))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        n = d.get(v, 0) + e
        if n:
            d[v] = n
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _check_mono(mono: tuple) -> None:
    for v, e in mono:
        if e < 0 and v.family not in LAURENT_FAMILIES:
            raise ValueError(f"negative exponent on polynomial variable {v.name}")


def mono_key(mono: tuple) -> tuple:
    """Sort key putting monomials in descending graded-lex order."""
    return (-sum(e for _, e in mono), tuple((v, -e) for v, e in mono))


class Poly:
    """Immutable exact polynomial over Q_2m."""

    __slots__ = ("terms", "m", "_hash")

    def __init__(self, terms: Mapping[tuple, tuple[int, int]] | None = None, m: int = 1):
        if m < 1:
            raise ValueError(f"m must be positive, got {m}")
        self.terms = {k: v for k, v in terms.items() if v[0] or v[1]} if terms else {}
        self.m = m
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, m: int) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p.m = m
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c, m: int = 1) -> "Poly":
        if isinstance(c, Q2mScalar):
            if c.m != m:
                raise MixedParameterError(f"scalar has m={c.m}, expected {m}")
            return cls({(): (c.a, c.b)}, m)
        return cls({(): (int(c), 0)}, m)

    @classmethod
    def alpha(cls, m: int = 1) -> "Poly":
        return cls({(): (0, 1)}, m)

    @classmethod
    def gen(cls, family: str, index: int = 0, m: int = 1) -> "Poly":
        return cls({((make_var(family, index), 1),): (1, 0)}, m)

    @classmethod
    def from_var(cls, var: Var, m: int = 1, exp: int = 1) -> "Poly":
        mono = ((var, exp),) if exp else ()
        _check_mono(mono)
        return cls({mono: (1, 0)}, m)

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coeff=1, m: int = 1) -> "Poly":
        mono = tuple(sorted((v, e) for v, e in exps.items() if e))
        _check_mono(mono)
        c = coeff if isinstance(coeff, Q2mScalar) else Q2mScalar(int(coeff), 0, m)
        return cls({mono: (c.a, c.b)}, m)

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.m != self.m:
                raise MixedParameterError(f"cannot combine m={self.m} with m={other.m}")
            return other
        if isinstance(other, (int, Q2mScalar)):
            return Poly.const(other, self.m)
        return NotImplemented

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            self, other = other, self
        res = dict(self.terms)
        for k, (a, b) in other.terms.items():
            old = res.get(k)
            if old is None:
                res[k] = (a, b)
            else:
                na, nb = old[0] + a, old[1] + b
                if na or nb:
                    res[k] = (na, nb)
                else:
                    del res[k]
        return Poly._raw(res, self.m)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: (-a, -b) for k, (a, b) in self.terms.items()}, self.m)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Poly._raw({}, self.m)
            return Poly._raw({k: (a * other, b * other) for k, (a, b) in self.terms.items()}, self.m)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        res: dict = {}
        get = res.get
        for ma, (a1, b1) in self.terms.items():
            for mb, (a2, b2) in other.terms.items():
                a = a1 * a2
                b = a1 * b2 + a2 * b1
                if not (a or b):
                    continue
                mono = _mono_mul(ma, mb)
                old = get(mono)
                if old is not None:
                    a += old[0]
                    b += old[1]
                res[mono] = (a, b)
        return Poly._raw({k: v for k, v in res.items() if v[0] or v[1]}, self.m)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (mono, (a, b)), = self.terms.items()
            if a not in (1, -1) or b:
                raise DivisibilityError("monomial coefficient is not invertible")
            inv = tuple((v, -e) for v, e in mono)
            _check_mono(inv)
            return Poly._raw({inv: (a, 0)}, self.m) ** (-n)
        result = Poly.const(1, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison & hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Q2mScalar)):
            other = Poly.const(other, self.m)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        from .textio import to_text

        return f"Poly({to_text(self)!r}, m={self.m})"

    # -- inspection ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, tuple[int, int]]]:
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def coeff(self, mono: tuple = ()) -> Q2mScalar:
        a, b = self.terms.get(mono, (0, 0))
        return Q2mScalar(a, b, self.m)

    def constant(self) -> Q2mScalar:
        return self.coeff(())

    def alpha_parts(self) -> tuple["Poly", "Poly"]:
        """Split p = p0 + al*p1 into (p0, p1), both free of al."""
        p0 = {k: (a, 0) for k, (a, _) in self.terms.items() if a}
        p1 = {k: (b, 0) for k, (_, b) in self.terms.items() if b}
        return Poly._raw(p0, self.m), Poly._raw(p1, self.m)

    def drop_alpha(self) -> "Poly":
        return self.alpha_parts()[0]

    def variables(self) -> set[Var]:
        return {v for mono in self.terms for v, _ in mono}

    def exponent_range(self, var: Var) -> tuple[int, int]:
        exps = [dict(mono).get(var, 0) for mono in self.terms]
        return (min(exps), max(exps)) if exps else (0, 0)

    def collect(self, var: Var) -> dict[int, "Poly"]:
        """Group by the exponent of ``var``; values no longer mention ``var``."""
        out: dict[int, dict] = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for v, k in mono:
                if v == var:
                    e = k
                else:
                    rest.append((v, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly._raw(t, self.m) for e, t in out.items()}

    def coefficient(self, var: Var, exp: int) -> "Poly":
        return self.collect(var).get(exp, Poly._raw({}, self.m))

    # -- substitution -------------------------------------------------------

    def subs(self, assignment: Mapping[Var, "Poly"]) -> "Poly":
        """Simultaneously replace variables by polynomials."""
        for q in assignment.values():
            self._coerce(q)
        powers: dict[tuple[Var, int], Poly] = {}
        res: dict = {}
        for mono, (a, b) in self.terms.items():
            kept = []
            factor = Poly._raw({(): (a, b)}, self.m)
            for v, e in mono:
                if v in assignment:
                    key = (v, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = powers[key] = self._coerce(assignment[v]) ** e
                    factor = factor * pw
                else:
                    kept.append((v, e))
            if kept:
                factor = factor * Poly._raw({tuple(kept): (1, 0)}, self.m)
            _accumulate(res, factor.terms)
        return Poly._raw(res, self.m)

    # -- division -----------------------------------------------------------

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient q with q*divisor == self; raise DivisibilityError otherwise.

        The divisor must be free of al and neither side may carry negative
        exponents.  Uses heap-ordered leading-term division in graded-lex order.
        """
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if any(b for _, b in divisor.terms.values()):
            raise ValueError("divisor must not involve al")
        for p in (self, divisor):
            if any(e < 0 for mono in p.terms for _, e in mono):
                raise ValueError("exact_div needs polynomials, not Laurent polynomials")
        dterms = divisor.sorted_terms()
        lead_mono, (lead_c, _) = dterms[0]
        inv_lead = tuple((v, -e) for v, e in lead_mono)
        rest = dterms[1:]
        rem = dict(self.terms)
        heap = [(mono_key(k), k) for k in rem]
        heapq.heapify(heap)
        quot: dict = {}
        while heap:
            _, mono = heapq.heappop(heap)
            c = rem.pop(mono, None)
            if c is None:
                continue
            a, b = c
            qa, ra = divmod(a, lead_c)
            qb, rb = divmod(b, lead_c)
            if ra or rb:
                raise DivisibilityError("coefficient not divisible by leading coefficient")
            qmono = _mono_mul(mono, inv_lead)
            if any(e < 0 for _, e in qmono):
                raise DivisibilityError("leading monomial does not divide")
            quot[qmono] = (qa, qb)
            for dm, (dc, _) in rest:
                tm = _mono_mul(qmono, dm)
                old = rem.get(tm)
                na, nb = -qa * dc, -qb * dc
                if old is None:
                    rem[tm] = (na, nb)
                    heapq.heappush(heap, (mono_key(tm), tm))
                else:
                    na += old[0]
                    nb += old[1]
                    if na or nb:
                        rem[tm] = (na, nb)
                    else:
                        del rem[tm]
        return Poly._raw(quot, self.m)


def gen(family: str, index: int = 0, m: int = 1) -> Poly:
    return Poly.gen(family, index, m)


def series_inverse(p: Poly, var: Var, order: int) -> Poly:
    """Truncated inverse q of p in ``var`` with p*q = 1 mod var^(order+1).

    The constant term (in ``var``) must be a polynomial with al-free part 1.
    """
    coeffs = p.collect(var)
    if min(coeffs) < 0:
        raise ValueError("series_inverse expects a power series in the variable")
    c0 = coeffs.get(0, Poly._raw({}, p.m))
    c0_inv = nilpotent_inverse(c0)
    one_var = Poly.from_var(var, p.m)
    q = [c0_inv]
    for n in range(1, order + 1):
        acc = Poly._raw({}, p.m)
        for k in range(1, n + 1):
            ck = coeffs.get(k)
            if ck:
                acc = acc + ck * q[n - k]
        q.append(-(c0_inv * acc))
    res = Poly._raw({}, p.m)
    for n, qn in enumerate(q):
        if qn:
            res = res + qn * one_var ** n
    return res


def nilpotent_inverse(p: Poly) -> Poly:
    """Inverse of u + al*z for a unit constant u = +-1: u - al*z (u^2 = 1)."""
    p0, p1 = p.alpha_parts()
    if p0 == 1:
        return 1 - Poly.alpha(p.m) * p1
    if p0 == -1:
        return -1 - Poly.alpha(p.m) * p1
    raise DivisibilityError("constant term is not a unit")


def homogeneous_degree(p: Poly):
    """Common degree of all terms (deg al = -2m, symbols weigh their subscript).

    Returns ZERO for the zero polynomial and INHOMOGENEOUS when terms disagree.
    """
    if not p:
        return ZERO
    degrees = set()
    for mono, (a, b) in p.terms.items():
        base = sum(v.degree * e for v, e in mono)
        if a:
            degrees.add(base)
        if b:
            degrees.add(base - 2 * p.m)
        if len(degrees) > 1:
            return INHOMOGENEOUS
    return degrees.pop()


def _accumulate(res: dict, terms: Mapping, scale: int = 1) -> None:
    for k, (a, b) in terms.items():
        old = res.get(k)
        if old is not None:
            na, nb = old[0] + a * scale, old[1] + b * scale
            if na or nb:
                res[k] = (na, nb)
            else:
                del res[k]
        else:
            res[k] = (a * scale, b * scale)


def sum_polys(items: Iterable[Poly], m: int) -> Poly:
    res: dict = {}
    for p in items:
        if p.m != m:
            raise MixedParameterError(f"cannot combine m={m} with m={p.m}")
        _accumulate(res, p.terms)
    return Poly._raw(res, m)

from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from klschubert.coeffs import gamma_table
from klschubert.klengine import partitions_in_box, strict_partitions
from klschubert.polyalg import Poly, make_symbol
from klschubert.schurkernels import (
    ClassSymbolFamily,
    ConeLaurentSeries,
    H_coefficients,
    class_symbol,
    kernel_A,
    kernel_C,
    multischur_det,
    multischur_pf,
    pf_t,
    pfaffian_identity_check,
    pfaffian_recursion,
    phi,
    vandermonde_identity_check,
)
from klschubert.symfn import complete_sym, root_list
from klschubert.textio import parse


def sympy_terms(expr, ts):
    """Exponent-vector dict of a Laurent polynomial in ts with integer and al parts."""
    al = sympy.Symbol("al")
    out = {}
    for term in sympy.Add.make_args(sympy.expand(expr)):
        c, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        key = tuple(int(powers.get(t, 0)) for t in ts)
        a, b = out.get(key, (0, 0))
        if powers.get(al, 0):
            b += int(c)
        else:
            a += int(c)
        out[key] = (a, b)
    return {k: v for k, v in out.items() if v != (0, 0)}


def test_kernel_A_single_row():
    assert kernel_A((5,), 2).terms == {(5,): (1, 0)}


def test_kernel_A_two_rows_m1():
    a, b = 3, 2
    expected = {(a, b): (1, 0), (a + 1, b - 1): (-1, 0), (a + 1, b + 1): (0, -1), (a + 2, b): (0, 1)}
    assert kernel_A((a, b), 1).terms == expected


@pytest.mark.parametrize("lam, m", [((2, 1), 1), ((3, 1, 1), 2), ((2, 2, 1), 3)])
def test_kernel_A_matches_sympy(lam, m):
    g = gamma_table(m)
    r = len(lam)
    ts = sympy.symbols(f"t1:{r + 1}")
    al = sympy.Symbol("al")
    expr = sympy.Mul(*[t**p for t, p in zip(ts, lam)])
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    for i, j in pairs:
        expr *= 1 - ts[i] / ts[j]
    corr = sum(
        (-1) ** (m + l) * g[m + l] * ts[i] ** (m + l) * ts[j] ** (m - l) for l in range(-m + 1, m) for i, j in pairs
    )
    expr = sympy.expand(expr * (1 + al * corr))
    assert kernel_A(lam, m).terms == sympy_terms(expr, ts)


def test_kernel_A_homogeneous():
    for m in (1, 2, 3):
        for lam in partitions_in_box(4, 4):
            if lam:
                assert kernel_A(lam, m).degree() == sum(lam)


def test_kernel_C_two_rows_alpha_free():
    m = 1
    lam = (4, 2)
    z = sympy.Symbol("z")
    coeffs = sympy.Poly(sympy.series((1 - z) / (1 + z), z, 0, 12).removeO(), z).all_coeffs()[::-1]
    expected = {}
    for k, c in enumerate(coeffs):
        if lam[1] - k >= -2 * m and c:
            expected[(lam[0] + k, lam[1] - k)] = (int(c), 0)
    got = {k: (a, 0) for k, (a, b) in kernel_C(lam, m).terms.items() if a}
    assert got == expected


def test_kernel_C_single_row():
    assert kernel_C((3,), 1).terms == {(3,): (1, 0)}


def test_kernel_C_rejects_non_strict():
    with pytest.raises(ValueError):
        kernel_C((2, 2), 1)
    with pytest.raises(ValueError):
        kernel_A((1, 2), 1)


def test_H_coefficients():
    ts = root_list("t", 3, 1)
    H = H_coefficients(ts, 2, 1)
    assert H[0] == 1
    assert H[1] == -2 * (ts[0] + ts[1] + ts[2])
    tau = Poly.gen("tau", 1)
    assert H_coefficients((tau,), 3, 1) == [1, -2 * tau, 2 * tau**2, -2 * tau**3]


def test_phi_examples():
    fam = ClassSymbolFamily.for_m("A", (4, 2), 1)
    s = ConeLaurentSeries.monomial((2, 1))
    assert phi(s, fam) == parse("A[4;2]*A[2;1]")
    assert phi(ConeLaurentSeries.monomial((5, -3)), fam) == 0
    assert phi(ConeLaurentSeries.monomial((3, 0)), fam, prefix_tau=1) == parse("tau1^3*A[2;0]")
    with pytest.raises(ValueError):
        phi(ConeLaurentSeries.monomial((-1, 0)), fam, prefix_tau=1)


series_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(-3, 4), st.integers(-3, 4)),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    max_size=6,
)


@given(series_terms, st.tuples(st.integers(0, 3), st.integers(-3, 3), st.integers(-3, 3)))
@settings(max_examples=50)
def test_phi_is_module_map_over_prefix(terms, g_coeffs):
    m = 1
    f = ConeLaurentSeries(3, m, terms)
    g = ConeLaurentSeries(3, m, {(e, 0, 0): (c, 0) for e, c in enumerate(g_coeffs)})
    fam = ClassSymbolFamily.for_m("A", (0, 3, 2), m)
    tau = Poly.gen("tau", 1, m)
    g_tau = sum((Poly.const(c, m) * tau**k for (k, _, _), (c, _) in g.terms.items()), Poly(m=m))
    assert phi(g * f, fam, 1) == g_tau * phi(f, fam, 1)
    assert phi(f + f, fam, 1) == 2 * phi(f, fam, 1)


def test_class_symbol_vanishing():
    assert class_symbol("A", 2, -3, 1) == 0
    assert class_symbol("A", 2, -2, 1) == Poly.from_var(make_symbol("A", 2, -2), 1)


def test_multischur_det_two_rows():
    got = multischur_det([(3, 2), (1, 1)], 1)
    assert got == parse("A[3;2]*A[1;1] - A[3;3]*A[1;0]")
    assert multischur_det([(2, 4)], 1) == parse("A[2;4]")


def schur_by_tableaux(shape, n):
    """Monomial expansion of the Schur polynomial from semistandard tableaux."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    xs = root_list("x", n, 1)
    total = Poly()
    for filling in product(range(n), repeat=len(cells)):
        T = dict(zip(cells, filling))
        rows_ok = all(T[(i, j)] <= T[(i, j + 1)] for (i, j) in cells if (i, j + 1) in T)
        cols_ok = all(T[(i, j)] < T[(i + 1, j)] for (i, j) in cells if (i + 1, j) in T)
        if rows_ok and cols_ok:
            mono = Poly.const(1)
            for v in filling:
                mono = mono * xs[v]
            total = total + mono
    return total


@pytest.mark.parametrize("n", [2, 3])
def test_jacobi_trudi_at_alpha_zero(n):
    det = multischur_det([(0, 2), (0, 1)], 1)
    xs = root_list("x", n, 1)
    assignment = {make_symbol("A", 0, s): complete_sym(s, xs, 1) for s in range(-2, 5)}
    assert det.subs(assignment) == schur_by_tableaux((2, 1), n)


def test_multischur_pf_small():
    assert multischur_pf([(1, 3)], 1) == parse("C[1;3]")
    expected = parse(
        "C[1;3]*C[0;2] - 2*C[1;4]*C[0;1] + 2*C[1;5]*C[0;0] - 2*C[1;6]*C[0;-1] + 2*C[1;7]*C[0;-2]"
    )
    assert multischur_pf([(1, 3), (0, 2)], 1) == expected


@pytest.mark.parametrize("m", [1, 2])
def test_pfaffian_row_expansion(m):
    for lam in strict_partitions(5):
        if len(lam) == 4:
            rows = list(zip([p - 1 for p in lam], lam))
            assert multischur_pf(rows, m) == pfaffian_recursion(rows, m)


def test_pfaffian_recursion_needs_even_rows():
    with pytest.raises(ValueError):
        pfaffian_recursion([(0, 1)], 1)


def test_vandermonde_examples():
    assert vandermonde_identity_check((1, 1), 1).ok
    assert vandermonde_identity_check((4,), 3).ok
    assert vandermonde_identity_check((2, 1, 1), 2).ok


@pytest.mark.parametrize("m", [1, 2])
def test_pfaffian_kernel_identity(m):
    for lam in strict_partitions(5):
        if 1 <= len(lam) <= 4:
            assert pfaffian_identity_check(lam, m).ok, lam


@pytest.mark.parametrize("m", [1, 2])
def test_truncation_margin_is_invisible(m):
    for lam in strict_partitions(5):
        if 1 <= len(lam) <= 3:
            fam = ClassSymbolFamily.for_m("C", [p - 1 for p in lam], m)
            base = phi(kernel_C(lam, m), fam)
            assert phi(kernel_C(lam, m, margin=2), fam) == base
            assert phi(kernel_C(lam, m, margin=5), fam) == base


def test_cone_witness():
    for lam in [(3, 1), (4, 2, 1), (5, 3, 2, 1)]:
        s = kernel_C(lam, 2)
        assert s.in_cone(s.shift)
        assert s.degree() == sum(lam)
    s = pf_t((1, -2, 0), 1)
    assert s.in_cone(s.shift)

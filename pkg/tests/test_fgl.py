import pytest
import sympy

from klschubert.fgl import build_fgl, fgl_inverse, unfactored_sum, verify_fgl_axioms
from klschubert.polyalg import Poly, homogeneous_degree
from klschubert.textio import parse, to_display


def sympy_sum(m):
    # independent oracle: (u+v) (1 + al * sum_l gamma_l u^l v^(2m-l)) from binomials
    u, v, al = sympy.symbols("u v al")
    d = sympy.factorint(2 * m + 1)
    d = next(iter(d)) if len(d) == 1 else 1
    bracket = sum(
        sympy.Rational(sympy.binomial(2 * m, l) - (-1) ** l, d) * u**l * v ** (2 * m - l) for l in range(1, 2 * m)
    )
    return sympy.expand((u + v) * (1 + al * bracket))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_sum_matches_sympy_oracle(m):
    expected = sympy_sum(m)
    got = parse(str(expected).replace("**", "^"), m)
    assert build_fgl(m).sum == got


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_axioms(m):
    rep = verify_fgl_axioms(m)
    assert rep.ok, {k: v for k, v in rep.residuals.items() if v}


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_two_presentations_agree(m):
    assert build_fgl(m).sum == unfactored_sum(m)


def test_examples():
    assert to_display(build_fgl(1).sum) == "(u+v)*(1+al*u*v)"
    assert build_fgl(2).sum == parse("(u+v)*(1+al*(u*v^3+u^2*v^2+u^3*v))", 2)
    assert build_fgl(3).sum == parse("(u+v)*(1+al*(u*v^5+2*u^2*v^4+3*u^3*v^3+2*u^4*v^2+u^5*v))", 3)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_inverse_and_degree(m):
    F = build_fgl(m)
    u = Poly.gen("u", 0, m)
    assert fgl_inverse(m) == -u
    assert F(u, -u) == 0
    assert homogeneous_degree(F.sum) == 1


def test_applies_to_arbitrary_arguments():
    F = build_fgl(1)
    x, y = Poly.gen("x", 1), Poly.gen("y", 1)
    assert F(x, -y) == parse("(x1-y1)*(1-al*x1*y1)", 1)

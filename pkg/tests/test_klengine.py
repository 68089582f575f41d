from math import comb

import pytest

from klschubert.klengine import (
    GrassmannSetup,
    InvalidPartition,
    LagrangianSetup,
    kl_A_closed,
    kl_A_iterated,
    kl_C_closed,
    kl_C_iterated,
    partitions_in_box,
    specialize_split,
    strict_partitions,
)
from klschubert.polyalg import Poly, homogeneous_degree, make_var
from klschubert.schurkernels import H_coefficients, multischur_det, multischur_pf
from klschubert.segre import segre_formula
from klschubert.symfn import root_list
from klschubert.textio import parse


def test_partition_counts():
    for n in range(1, 7):
        for d in range(0, n + 1):
            assert len(list(partitions_in_box(d, n - d))) == comb(n, d)
        assert len(list(strict_partitions(n))) == 2**n


def test_setup_validation():
    assert GrassmannSetup(4, 2, (2, 1, 0, 0)).lam == (2, 1)
    assert GrassmannSetup(4, 2, (2, 1)).superscripts == (3, 1)
    for bad in [(3,), (1, 1, 1), (1, 2), (-1,)]:
        with pytest.raises(InvalidPartition):
            GrassmannSetup(4, 2, bad)
    with pytest.raises(InvalidPartition):
        GrassmannSetup(2, 3, ())
    assert LagrangianSetup(3, (3, 1, 0)).lam == (3, 1)
    for bad in [(2, 2), (4,), (1, 2)]:
        with pytest.raises(InvalidPartition):
            LagrangianSetup(3, bad)


def test_zero_parts_do_not_matter():
    a = GrassmannSetup(4, 2, (2, 1, 0), 1)
    b = GrassmannSetup(4, 2, (2, 1), 1)
    assert kl_A_closed(a) == kl_A_closed(b)


def test_single_row_type_A():
    s = GrassmannSetup(5, 2, (3,), 2)
    assert kl_A_closed(s) == parse("A[4;3]", 2)
    assert kl_A_iterated(s) == kl_A_closed(s)


def test_two_rows_type_A_m1():
    s = GrassmannSetup(3, 2, (1, 1), 1)
    det = multischur_det([(2, 1), (1, 1)], 1)
    shifted = multischur_det([(2, 2), (1, 2)], 1)
    assert kl_A_closed(s) == det - Poly.alpha(1) * shifted
    assert kl_A_iterated(s) == kl_A_closed(s)


def test_empty_partition_is_the_unit():
    assert kl_A_closed(GrassmannSetup(3, 1, ())) == 1
    assert kl_A_iterated(GrassmannSetup(3, 1, ())) == 1
    assert kl_C_closed(LagrangianSetup(2, ())) == 1


@pytest.mark.parametrize("m", [1, 2])
def test_type_A_routes_agree(m):
    for n in range(1, 5):
        for d in range(1, min(n, 2) + 1):
            for lam in partitions_in_box(d, n - d):
                s = GrassmannSetup(n, d, lam, m)
                closed = kl_A_closed(s)
                assert closed == kl_A_iterated(s), lam
                assert kl_A_iterated(s, classical=True) == closed.drop_alpha() == kl_A_closed(s, classical=True)
                if closed:
                    assert homogeneous_degree(closed) == sum(lam)


def test_single_row_type_C():
    s = LagrangianSetup(3, (3,), 1)
    assert kl_C_closed(s) == parse("C[2;3]")
    assert kl_C_iterated(s) == kl_C_closed(s)


def test_two_rows_type_C_m1():
    s = LagrangianSetup(2, (2, 1), 1)
    expected = multischur_pf([(1, 2), (0, 1)], 1) - 2 * Poly.alpha(1) * multischur_pf([(1, 3), (0, 2)], 1)
    assert kl_C_closed(s) == expected
    assert kl_C_iterated(s) == expected


@pytest.mark.parametrize("m", [1, 2])
def test_type_C_routes_agree(m):
    for n in range(1, 4):
        for lam in strict_partitions(n):
            s = LagrangianSetup(n, lam, m)
            closed = kl_C_closed(s)
            assert closed == kl_C_iterated(s), lam
            assert kl_C_iterated(s, classical=True) == closed.drop_alpha()
            if closed:
                assert homogeneous_degree(closed) == sum(lam)


def test_H_spot_check():
    tau = Poly.gen("tau", 1)
    assert H_coefficients((tau,), 1, 1)[1] == -2 * tau


def test_specialize_projective_line():
    s = GrassmannSetup(2, 1, (1,), 1)
    value = specialize_split(kl_A_closed(s), s)
    assert value == parse("(y1-x1)*(1-al*x1*y1)")
    assert value.drop_alpha() == parse("y1-x1")


def test_specialize_trivial_superscript():
    s = GrassmannSetup(3, 2, (), 1)
    xs = tuple(-r for r in root_list("x", 2, 1))
    for k in range(-2, 4):
        sym = parse(f"A[0;{k}]")
        assert specialize_split(sym, s) == segre_formula(k, xs, 1)


def test_specialize_rejects_bad_superscript():
    with pytest.raises(ValueError):
        specialize_split(parse("A[7;1]"), GrassmannSetup(3, 1, ()))


def swap(p, a, b):
    return p.subs({a: Poly.from_var(b, p.m), b: Poly.from_var(a, p.m)})


def test_specialized_classes_are_symmetric():
    s = GrassmannSetup(4, 2, (2, 1), 1)
    value = specialize_split(kl_A_closed(s), s)
    assert swap(value, make_var("x", 1), make_var("x", 2)) == value
    c = LagrangianSetup(2, (2, 1), 1)
    value = specialize_split(kl_C_closed(c), c)
    assert swap(value, make_var("x", 1), make_var("x", 2)) == value


def test_specialized_routes_agree_d3():
    for lam in [(2, 1), (1, 1, 1), (2, 2, 1)]:
        s = GrassmannSetup(5, 3, lam, 1)
        assert specialize_split(kl_A_closed(s), s) == specialize_split(kl_A_iterated(s), s)


def test_specialized_routes_agree_type_C():
    for lam in [(1,), (2, 1), (3, 1)]:
        s = LagrangianSetup(3, lam, 1)
        assert specialize_split(kl_C_closed(s), s) == specialize_split(kl_C_iterated(s), s)

import json

import pytest
from hypothesis import given, settings

from klschubert.fgl import build_fgl
from klschubert.polyalg import Poly, make_symbol
from klschubert.textio import (
    ParseError,
    canonicalize,
    from_json_obj,
    parse,
    to_display,
    to_json_obj,
    to_latex,
    to_text,
)

from test_polyalg import M, polys


@given(polys)
@settings(max_examples=80)
def test_text_round_trip(p):
    assert parse(to_text(p), M) == p
    assert parse(to_display(p), M) == p
    assert to_text(parse(to_text(p), M)) == to_text(p)


@given(polys)
@settings(max_examples=80)
def test_json_round_trip(p):
    assert from_json_obj(json.loads(json.dumps(to_json_obj(p)))) == p


def test_canonical_text_orders_alpha_block_last():
    assert to_text(build_fgl(1).sum) == "u+v+al*u^2*v+al*u*v^2"


def test_display_factors_alpha_part():
    assert to_display(build_fgl(1).sum) == "(u+v)*(1+al*u*v)"
    assert to_display(build_fgl(2).sum) == "(u+v)*(1+al*(u^3*v+u^2*v^2+u*v^3))"


def test_canonicalize_ignores_term_order():
    a = canonicalize("(u+v)*(1+al*(u*v^3+u^2*v^2+u^3*v))", 2)
    b = canonicalize("(v+u)*(1+al*(u^3*v+u*v^3+u^2*v^2))", 2)
    assert a == b


def test_json_of_fgl():
    obj = to_json_obj(build_fgl(1).sum)
    assert obj["m"] == 1 and obj["degree"] == 1
    assert len(obj["terms"]) == 4
    by_mono = {t["monomial"]: (t["coeff_a"], t["coeff_b"]) for t in obj["terms"]}
    assert by_mono == {"u": (1, 0), "v": (1, 0), "u^2*v": (0, 1), "u*v^2": (0, 1)}


def test_json_of_zero():
    assert to_json_obj(Poly(m=1))["terms"] == []


def test_latex_of_symbols_and_alpha():
    p = Poly.from_var(make_symbol("A", 2, 1), 1) * Poly.from_var(make_symbol("A", 1, 1), 1)
    assert to_latex(p) == r"\mathcal{A}^{(2)}_{1}\mathcal{A}^{(1)}_{1}"
    assert r"\alpha_{4}" in to_latex(build_fgl(2).sum)


def test_parse_symbols_and_negative_indices():
    p = parse("C[0;-2]*C[1;3] - 2*al*tau1^2", 1)
    assert to_text(p) == "C[1;3]*C[0;-2]-2*al*tau1^2"


@pytest.mark.parametrize("bad", ["x1+", "(x1", "x1 ** 2", "q$", "x1^y"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad, 1)


def test_json_rejects_non_monomial():
    with pytest.raises(ParseError):
        from_json_obj({"m": 1, "terms": [{"coeff_a": 1, "coeff_b": 0, "monomial": "x1+x2"}]})

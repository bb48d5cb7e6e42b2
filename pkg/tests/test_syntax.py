import json

import pytest
from fractions import Fraction as F

from lmc import endo, liealg, syntax
from lmc.arith import TruncPoly
from lmc.errors import ParseError, ValidationError
from lmc.liealg import Context
from lmc.verify import sample


def test_parse_element_frozen():
    ctx = Context(2, 3)
    u = syntax.parse_element(ctx, "x1 + [x1,x2]")
    assert u.beta == (F(1), F(0))
    assert u.mod[0] == TruncPoly(2, 2, {(0, 1): F(1)})
    assert u.mod[1] == TruncPoly(2, 2, {(1, 0): F(-1)})


def test_left_normed_multibracket():
    ctx = Context(2, 3)
    a = syntax.parse_element(ctx, "[x1,x2,x2]")
    b = liealg.bracket(
        liealg.bracket(liealg.generator(ctx, 1), liealg.generator(ctx, 2)),
        liealg.generator(ctx, 2),
    )
    assert a == b


def test_parse_rationals_signs_zero():
    ctx = Context(3, 3)
    u = syntax.parse_element(ctx, "3/2*[x2,x1] - x3")
    bf = liealg.to_basis(u)
    assert bf.comm == {(2, 1): F(3, 2)}
    assert bf.linear == (F(0), F(0), F(-1))
    assert syntax.parse_element(ctx, "0").is_zero()
    assert syntax.parse_element(ctx, "-x1") == -liealg.generator(ctx, 1)
    assert syntax.parse_element(ctx, "-1*[x2,x1]") == -syntax.parse_element(
        ctx, "[x2,x1]"
    )


def test_print_parse_fixed_point_fuzz():
    for m, c in [(2, 3), (3, 4), (2, 5)]:
        ctx = Context(m, c)
        for trial in range(25):
            u = sample("element", ctx, f"pp{trial}", 3)
            s1 = syntax.print_element(u, "basis")
            v = syntax.parse_element(ctx, s1)
            assert v == u
            assert syntax.print_element(v, "basis") == s1


def test_semantic_round_trip_example():
    ctx = Context(3, 3)
    s = "3/2*[x2,x1] - x3"
    u = syntax.parse_element(ctx, s)
    assert syntax.parse_element(ctx, syntax.print_element(u, "basis")) == u


def test_wreath_style():
    ctx = Context(2, 3)
    u = syntax.parse_element(ctx, "x1 + [x1,x2]")
    assert syntax.print_element(u, "wreath") == "b1 + a1*(1 + t2) + a2*(-t1)"
    assert syntax.print_element(liealg.zero(ctx), "wreath") == "0"


def test_parse_error_positions():
    ctx = Context(2, 3)
    cases = [
        ("x1 +", 1, 5),
        ("[x1", 1, 4),
        ("[x1,", 1, 5),
        ("x9", 1, 1),
        ("x1 * x2", 1, 4),
        ("1/0*x1", 1, 3),
        ("y1", 1, 1),
        ("", 1, 1),
    ]
    for text, line, col in cases:
        with pytest.raises(ParseError) as exc:
            syntax.parse_element(ctx, text)
        assert exc.value.line == line
        assert exc.value.column == col


def test_poly_parse_print():
    p = syntax.parse_poly("1/2*t1^2*t3 - t2", 3, 3)
    assert p == TruncPoly(3, 3, {(2, 0, 1): F(1, 2), (0, 1, 0): F(-1)})
    assert syntax.parse_poly("0", 3, 3).is_zero()
    assert syntax.parse_poly("5", 2, 2) == TruncPoly.const(2, 2, 5)
    round_trip = syntax.parse_poly(syntax.print_poly(p), 3, 3)
    assert round_trip == p
    with pytest.raises(ParseError):
        syntax.parse_poly("t1 + x2", 3, 3)
    with pytest.raises(ParseError):
        syntax.parse_poly("t9", 3, 3)


def test_parse_automorphism_images():
    phi = syntax.parse_automorphism(
        {"m": 2, "c": 3, "images": ["x1 + 1*[x1,x2,x2]", "x2"]}
    )
    assert phi.is_ia()
    g = __import__("lmc.normal", fromlist=["recognize_ginn"]).recognize_ginn(phi)
    assert g is not None
    assert [str(p) for p in g.f] == ["0", "t2"]


def test_parse_automorphism_jacobian():
    ident = syntax.parse_automorphism(
        {"m": 2, "c": 3, "jacobian": [["1", "0"], ["0", "1"]]}
    )
    assert ident == endo.Endomorphism.identity(Context(2, 3))
    with pytest.raises(ValidationError):
        syntax.parse_automorphism(
            {"m": 2, "c": 3, "jacobian": [["1", "t1"], ["0", "1"]]}
        )  # S-condition violated
    with pytest.raises(ValidationError):
        syntax.parse_automorphism(
            {"m": 2, "c": 3, "jacobian": [["1", "2"], ["0", "1"]]}
        )  # constant off-diagonal


def test_parse_automorphism_errors():
    with pytest.raises(ValidationError):
        syntax.parse_automorphism({"m": 2, "c": 3})
    with pytest.raises(ValidationError):
        syntax.parse_automorphism({"m": 2, "c": 3, "images": ["x1"]})
    with pytest.raises(ValidationError):
        syntax.parse_automorphism({"m": 2, "c": 3, "images": ["x1", "2*x1"]})
    with pytest.raises(ParseError):
        syntax.parse_automorphism("{not json")


def test_automorphism_json_round_trip():
    for m, c in [(2, 3), (3, 3)]:
        ctx = Context(m, c)
        phi = sample("ia", ctx, "json-rt", 2)
        text = syntax.print_automorphism(phi, "json")
        data = json.loads(text)
        assert set(data) == {"m", "c", "images", "jacobian"}
        again = syntax.parse_automorphism(text)
        assert again == phi
        via_jac = syntax.parse_automorphism(
            {"m": m, "c": c, "jacobian": data["jacobian"]}
        )
        assert via_jac == phi

import pytest
from hypothesis import given, settings, strategies as st

from hallalg.catalog import ALGEBRA_IDS, make_spec
from hallalg.engine import Element, normalize
from hallalg.expr import ParseError, element_from_json, element_to_json, parse_expression, parse_scalar, render
from hallalg.quiver import Quiver, QuiverCategory
from hallalg.scalars import TwistScalar, v_power

A1 = QuiverCategory(Quiver.linear(1), 2, (2,))
A2 = QuiverCategory(Quiver.linear(2), 3, (1, 1))


def test_single_letter():
    spec = make_spec("mh-ctw", A1)
    x = parse_expression("U[S,0]", spec)
    assert len(x) == 1
    (word, coeff), = x
    assert coeff == 1 and word[0].payload.name == "S" and word[0].degree == 0


def test_scalar_prefix():
    spec = make_spec("mh-ctw", A1)
    x = parse_expression("(0+1*v)*U[S,0]*K[(1),1]", spec)
    (word, coeff), = x
    assert coeff == v_power(2, 1)
    assert len(word) == 2


def test_z_rejected_in_modified_algebra():
    spec = make_spec("mh-ctw", A1)
    with pytest.raises(ParseError) as err:
        parse_expression("Z[S,0]", spec)
    assert err.value.position == 0


@pytest.mark.parametrize("text,pos", [
    ("U[S,0] + U[Q,1]", 9),
    ("U[S,0] * * U[S,1]", 9),
    ("U[S,0", 0),
    ("2/0*U[S,0]", 2),
    ("K[(1,2),0]", 0),
])
def test_errors_cite_position(text, pos):
    spec = make_spec("mh-ctw", A1)
    with pytest.raises(ParseError) as err:
        parse_expression(text, spec)
    assert err.value.position == pos
    assert f"position {pos}" in str(err.value)


def test_scalars():
    assert parse_scalar("(1+2*v)", 3) == TwistScalar(3, 1, 2)
    assert parse_scalar("-1/2", 3) == TwistScalar(3, -1, 0) / 2
    assert parse_scalar("v", 5) == v_power(5, 1)
    with pytest.raises(ParseError):
        parse_scalar("(1+2)", 3)


def test_a2_names():
    spec = make_spec("mh-rtw", A2)
    x = parse_expression("U[M1_1,0]*U[S2+S1,1]*K[(1,-1),2]", spec)
    assert [l.payload.name for l in next(iter(x))[0][:2]] == ["M1_1", "S2+S1"]


@st.composite
def elements(draw):
    algebra = draw(st.sampled_from(sorted(ALGEBRA_IDS)))
    spec = make_spec(algebra, A2)
    names = ["S1", "S2", "M1_1", "S2+S1"]
    graded = any(g for _, g in spec.admitted)
    kinds = sorted(spec.admitted)
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        letters = []
        for _ in range(draw(st.integers(0, 2))):
            kind, g = draw(st.sampled_from(kinds))
            deg = f",{draw(st.integers(-2, 3))}" if g else ""
            if kind in "UYZ":
                letters.append(f"{kind}[{draw(st.sampled_from(names))}{deg}]")
            else:
                a, b = draw(st.integers(-2, 2)), draw(st.integers(-2, 2))
                letters.append(f"K[({a},{b}){deg}]")
        c = f"({draw(st.integers(-5, 5))}+{draw(st.integers(-3, 3))}*v)"
        terms.append("*".join([c] + letters))
    return spec, " + ".join(terms), graded


@settings(max_examples=80)
@given(elements())
def test_render_parse_round_trip(case):
    spec, text, _ = case
    x = normalize(parse_expression(text, spec), spec)
    assert parse_expression(render(x), spec) == x


@settings(max_examples=80)
@given(elements())
def test_json_round_trip(case):
    spec, text, _ = case
    x = parse_expression(text, spec)
    assert element_from_json(element_to_json(x), spec) == x


def test_render_zero_and_signs():
    spec = make_spec("mh-ctw", A1)
    assert render(Element.zero(2)) == "0"
    x = parse_expression("U[S,1] - 3*U[S,0]", spec)
    assert render(x) == "-3·U[S,0] + 1·U[S,1]"
    assert parse_expression(render(x), spec) == x

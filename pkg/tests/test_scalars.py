from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hallalg.expr import parse_scalar
from hallalg.scalars import TwistScalar, format_scalar, v_power

Q = st.sampled_from([2, 3, 5])
RAT = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


@st.composite
def scalars(draw, q=None):
    q = q if q is not None else draw(Q)
    return TwistScalar(q, draw(RAT), draw(RAT))


@st.composite
def scalar_triples(draw):
    q = draw(Q)
    return tuple(draw(scalars(q)) for _ in range(3))


def test_v_squared_is_q():
    for q in (2, 3, 7):
        v = v_power(q, 1)
        assert v * v == q
        assert v_power(q, 2) == q
        assert v_power(q, -2) == Fraction(1, q)


def test_v_power_additive():
    for a in range(-5, 6):
        for b in range(-5, 6):
            assert v_power(3, a) * v_power(3, b) == v_power(3, a + b)


@given(scalar_triples())
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(scalars())
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@given(scalars())
def test_format_parses_back(x):
    assert parse_scalar(format_scalar(x), x.q) == x


@given(scalars())
def test_json_round_trip(x):
    assert TwistScalar.from_json(x.q, x.to_json()) == x


def test_mixing_fields_rejected():
    with pytest.raises(ValueError):
        TwistScalar(2, 1) + TwistScalar(3, 1)


def test_no_floats():
    with pytest.raises(TypeError):
        TwistScalar(2, 0.5)


def test_hash_matches_equality():
    assert hash(TwistScalar(2, Fraction(2, 4))) == hash(TwistScalar(2, Fraction(1, 2)))
    assert TwistScalar(2, 3) == 3

import json
import math
from fractions import Fraction

import pytest

from skeinrep.scalars import make_params, Scalar


RS = [3, 4, 5, 6]


def test_params_validation():
    with pytest.raises(ValueError):
        make_params(2)
    with pytest.raises(ValueError):
        make_params(5, s=2)  # s must be odd (A primitive 4r-th root)
    with pytest.raises(ValueError):
        make_params(5, s=5)  # gcd(s, 4r) must be 1


@pytest.mark.parametrize("r", RS)
def test_root_of_unity_order(r):
    p = make_params(r)
    a = p.a_pow(1)
    assert (a ** (4 * r)).is_one()
    for k in range(1, 4 * r):
        assert not (a ** k).is_one(), f"A^{k} = 1: not primitive"


@pytest.mark.parametrize("r", RS)
def test_loop_value(r):
    p = make_params(r)
    d = p.loop_d()
    assert d == -(p.a_pow(2) + p.a_pow(-2))
    expected = -2 * math.cos(math.pi / r)
    assert abs(d.embed() - expected) < 1e-12


@pytest.mark.parametrize("r", RS)
def test_quantum_integers(r):
    p = make_params(r)
    for n in range(1, r):
        assert not p.quantum_int(n).is_zero()
    assert p.quantum_int(r).is_zero()
    assert p.quantum_int(1).is_one()
    # [2] = A^2 + A^{-2}
    assert p.quantum_int(2) == p.a_pow(2) + p.a_pow(-2)


@pytest.mark.parametrize("r", RS)
def test_c_symbol(r):
    p = make_params(r)
    c = p.c_symbol()
    D = p.total_d_squared()
    assert (c * c * D).is_one()
    # numerically c = 1/sqrt(D) > 0
    assert abs(c.embed() - 1 / math.sqrt(D.embed().real)) < 1e-12


@pytest.mark.parametrize("r", RS)
def test_field_ops(r):
    p = make_params(r)
    x = p.a_pow(3) + p.from_rational(Fraction(2, 7))
    y = p.c_symbol() * p.a_pow(-1) + p.from_int(1)
    for v in (x, y, x * y, x + y):
        if not v.is_zero():
            assert (v * v.inverse()).is_one()
    assert (x - x).is_zero()
    assert x * (y + y) == x * y + x * y


@pytest.mark.parametrize("r", RS)
def test_json_roundtrip(r):
    p = make_params(r)
    vals = [p.zero(), p.one(), p.a_pow(5), p.c_symbol() * p.a_pow(2), p.d_k(1)]
    for v in vals:
        blob = json.dumps(v.to_json())
        assert Scalar.from_json(p, json.loads(blob)) == v


def test_cpow_mixed_rejected():
    p = make_params(5)
    mixed = p.one() + p.c_symbol()
    with pytest.raises(ValueError):
        mixed.cpow()
    assert p.c_symbol().cpow() == 1
    assert p.one().cpow() == 0


@pytest.mark.parametrize("r", RS)
def test_d_k_values(r):
    p = make_params(r)
    assert p.d_k(0).is_one()
    assert p.d_k(1) == p.loop_d()
    for k in range(r - 1):
        # d_k = (-1)^k [k+1]
        expect = p.quantum_int(k + 1)
        if k % 2:
            expect = -expect
        assert p.d_k(k) == expect

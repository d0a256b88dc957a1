import math
import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartier.fq import (FieldError, GF, base_digits, binom_mod, frobenius_root, lucas_binom, make_field,
                        neg_binom, parse_field)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2)]


def poly_mulmod(a, b, modulus, p):
    """Schoolbook product of coordinate vectors modulo a monic modulus (oracle)."""
    e = len(modulus) - 1
    prod = [0] * (2 * e)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(2 * e - 1, e - 1, -1):
        c = prod[d]
        if c:
            for k in range(e + 1):
                prod[d - e + k] = (prod[d - e + k] - c * modulus[k]) % p
    return prod[:e]


def enc(coords, p):
    return sum(c * p ** i for i, c in enumerate(coords))


@pytest.mark.parametrize("p,e", FIELDS)
def test_multiplication_matches_polynomial_oracle(p, e):
    F = make_field(p, e)
    if e == 1:
        for a in F.elements():
            for b in F.elements():
                assert F.mul(a, b) == a * b % p
        return
    for a in F.elements():
        for b in F.elements():
            want = enc(poly_mulmod(F.coords(a), F.coords(b), F.modulus, p), p)
            assert F.mul(a, b) == want


@pytest.mark.parametrize("p,e", FIELDS)
def test_modulus_is_primitive(p, e):
    F = make_field(p, e)
    x = F.gen()
    seen = {(x ** k).value for k in range(F.q - 1)}
    assert len(seen) == F.q - 1


@pytest.mark.parametrize("p,e", FIELDS)
def test_inverse_negation_and_frobenius(p, e):
    F = make_field(p, e)
    for a in F.nonzero():
        assert F.mul(a, F.inv(a)) == 1
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(a, a) == 0
        for j in range(e + 1):
            r = F.frobenius_root(a, j)
            assert F.pow(r, p ** j) == a
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pe, data):
    F = make_field(*pe)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.pow(a, F.q) == a


def test_fields_are_cached_and_picklable():
    assert make_field(3, 2) is make_field(3, 2)
    assert pickle.loads(pickle.dumps(make_field(2, 2))) is make_field(2, 2)
    assert parse_field("2^2") is make_field(2, 2)
    assert parse_field("9") is make_field(3, 2)
    assert parse_field("5") is make_field(5)


@pytest.mark.parametrize("bad", ["6", "1", "2^0", "4^1"])
def test_bad_fields(bad):
    with pytest.raises((FieldError, ValueError)):
        parse_field(bad)


def test_element_text_round_trip():
    F = make_field(3, 2)
    for a in F.elements():
        assert F.parse_elem(F.format_elem(a)) == a
    assert F.parse_elem("2") == 2
    with pytest.raises(FieldError):
        F.parse_elem("1,2,0")
    with pytest.raises(FieldError):
        F.parse_elem("3,0")


def test_field_elem_wrapper():
    F = make_field(2, 2)
    x = F.gen()
    assert x * x.inverse() == F(1) if hasattr(x, "inverse") else True
    assert frobenius_root(x, 1) ** 2 == x


@given(st.integers(0, 300), st.integers(0, 300), st.sampled_from([2, 3, 5, 7]))
def test_lucas_matches_math_comb(m, n, p):
    assert lucas_binom(m, n, p) == math.comb(m, n) % p


@given(st.integers(1, 60), st.integers(0, 60), st.sampled_from([2, 3, 5]))
def test_negative_binomial(m, r, p):
    # C(-m, r) = (-m)(-m-1)...(-m-r+1)/r!
    num = 1
    for i in range(r):
        num *= -m - i
    assert neg_binom(m, r, p) == (num // math.factorial(r)) % p
    assert binom_mod(-m, r, p) == neg_binom(m, r, p)


def test_base_digits():
    assert base_digits(0, 2) == []
    assert base_digits(68, 2) == [0, 0, 1, 0, 0, 0, 1]
    assert base_digits(5, 3) == [2, 1]

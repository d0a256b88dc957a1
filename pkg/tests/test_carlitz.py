import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartier.carlitz import (A_coeff, A_coeff_reciprocal, BudgetError, E_eval, bracket, carlitz_C_combinatorial,
                             carlitz_C_via_A, carlitz_F, carlitz_L, carlitz_coefficient, carlitz_constants,
                             carlitz_difference, e_poly, e_poly_literal, low_degree_polys)
from cartier.fq import make_field
from cartier.series import TruncatedLaurent as S

from conftest import polys_over

F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)


def monic_polys(F, n):
    for a in low_degree_polys(F, n):
        yield a + S.monomial(F, n)


def prod(xs, F):
    out = S.one(F)
    for x in xs:
        out = out * x
    return out


@pytest.mark.parametrize("F,n", [(F2, 1), (F2, 2), (F2, 3), (F3, 1), (F3, 2), (F4, 1), (F4, 2)])
def test_constants_against_monic_products(F, n):
    # F_n is the product of all monic polynomials of degree n
    assert carlitz_F(F, n) == prod(monic_polys(F, n), F)
    assert bracket(F, n) == S.monomial(F, F.q ** n) - S.monomial(F, 1)
    # L_n = [n][n-1]...[1]
    assert carlitz_L(F, n) == prod((bracket(F, i) for i in range(1, n + 1)), F)
    c = carlitz_constants(n, F)
    assert c.F == carlitz_F(F, n)


@pytest.mark.parametrize("F,n", [(F2, 1), (F2, 2), (F2, 3), (F3, 1), (F3, 2), (F4, 1)])
def test_e_poly_matches_literal_product(F, n):
    e = e_poly(n, F)
    assert e == e_poly_literal(n, F)
    for a in low_degree_polys(F, n):
        assert e(a).is_zero()
    assert e(S.monomial(F, n)) == carlitz_F(F, n)
    assert e.degree == n


def test_literal_budget():
    with pytest.raises(BudgetError):
        e_poly_literal(5, F4, limit=100)


@given(polys_over(F3, 8), st.integers(0, 3))
def test_E_is_integer_valued_and_linear(a, n):
    v = E_eval(n, a)
    assert v.prec is None and (not v.coeffs or v.lo >= 0)
    b = a.scale(2) + S.monomial(F3, 2)
    assert E_eval(n, a + b) == E_eval(n, a) + E_eval(n, b)


def test_E_small_values():
    for F in (F2, F3):
        for n in range(4):
            assert E_eval(n, S.monomial(F, n)) == 1
            for a in low_degree_polys(F, n):
                assert E_eval(n, a).is_zero()
    x = S(F2, [0, 1, 1], 0, 10)
    assert E_eval(2, x).prec == 8


def test_A_coefficients():
    for F in (F2, F3):
        for n in range(1, 5):
            assert A_coeff(n, 0, F).is_zero()
            assert A_coeff(n, n, F) == 1
            for r in range(1, n + 1):
                assert A_coeff_reciprocal(n, r, F) == A_coeff(n, r, F)
        assert A_coeff(0, 0, F) == 1


def test_C_formulas_agree():
    for F in (F2, F3, F4):
        for n in range(1, 4):
            assert carlitz_C_combinatorial(n, F) == carlitz_C_via_A(n, F)


@settings(max_examples=25)
@given(st.data())
def test_three_coefficient_formulas(data):
    F = data.draw(st.sampled_from([F2, F3]))
    vals = [data.draw(polys_over(F, 6)) for _ in range(5)]
    for n in range(4):
        d = carlitz_coefficient(vals, n, "difference")
        assert d == carlitz_coefficient(vals, n, "C_sum") == carlitz_coefficient(vals, n, "A_sum")


def test_difference_extracts_E_coefficients():
    # f = sum_n c_n E_n, tabulated at T^i; the twisted difference at 1 returns c_n
    F = F3
    cs = [S.monomial(F, 1), S.one(F), S.zero(F), S(F, [2, 1], 0, None)]
    vals = [sum((c * E_eval(n, S.monomial(F, i)) for n, c in enumerate(cs)), S.zero(F)) for i in range(5)]
    for n, c in enumerate(cs):
        assert carlitz_difference(vals, n) == c
    with pytest.raises(ValueError):
        carlitz_difference(vals, 7)

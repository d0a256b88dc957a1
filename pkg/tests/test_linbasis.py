import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartier.fq import make_field
from cartier.linbasis import (ALL_BASES, BasisId, LinearFunc, _triangular, basis_apply, evaluate_expansion, expand,
                              is_linear, transition)
from cartier.operators import inversion_row, is_identity, matmul
from cartier.series import PrecisionError, TruncatedLaurent as S

F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)


@pytest.mark.parametrize("F", [F2, F3, F4])
@pytest.mark.parametrize("basis", ALL_BASES)
def test_bases_are_unitriangular(F, basis):
    for n in range(8):
        for i in range(n + 1):
            v = basis_apply(basis, n, S.monomial(F, i))
            assert v == (1 if i == n else 0)


@pytest.mark.parametrize("F", [F2, F3])
@pytest.mark.parametrize("basis", ALL_BASES)
def test_basis_functions_expand_to_unit_vectors(F, basis):
    for n in range(6):
        f = LinearFunc.from_basis(basis, n, F, depth=10)
        cs = expand(f, basis).coeffs
        assert all(c == (1 if m == n else 0) for m, c in enumerate(cs))


@settings(max_examples=20)
@given(st.sampled_from([F2, F3, F4]), st.integers(0, 2 ** 32), st.sampled_from(ALL_BASES))
def test_round_trip_on_monomials(F, seed, basis):
    f = LinearFunc.random(F, random.Random(seed), depth=10, prec=20)
    ex = expand(f, basis, count=6)
    for i in range(6):
        assert evaluate_expansion(ex, S.monomial(F, i)) == f.values[i]


@pytest.mark.parametrize("F", [F2, F3])
@pytest.mark.parametrize("basis", ALL_BASES)
def test_closed_forms_match_generic_solve(F, basis):
    # the generic unitriangular solve is the oracle for each closed-form extractor
    f = LinearFunc.random(F, random.Random(7), depth=9, prec=16)
    assert expand(f, basis).coeffs == _triangular(f, basis, 9)


@pytest.mark.parametrize("F", [F2, F3, F4])
def test_psi_methods_agree(F):
    f = LinearFunc.random(F, random.Random(3), depth=5, prec=16)
    tri = expand(f, "psi", psi_method="triangular").coeffs
    assert expand(f, "psi", psi_method="auto").coeffs == tri
    if F.q ** 5 <= 3 ** 9:
        assert expand(f, "psi", psi_method="digit").coeffs == tri


@pytest.mark.parametrize("F", [F2, F3])
def test_transitions_invert(F):
    size = F.q ** 2
    for a in ALL_BASES:
        for b in ALL_BASES:
            M = transition(a, b, size, F)
            N = transition(b, a, size, F)
            assert is_identity(matmul(M, N))


@pytest.mark.parametrize("F", [F2, F3])
def test_hasse_phi_transition_is_binomial(F):
    size = F.q ** 2
    M = transition("hasse", "phi", size, F)
    for n in range(1, size):
        k = 1 if n < F.q else 2
        row = inversion_row("hasse_to_phi", n, k, F)
        assert M[n][n:F.q ** k] == row
        assert all(M[n][m] == 0 for m in range(n))
        assert all(M[n][m] == 0 for m in range(F.q ** k, size))


def test_hasse_phi_transition_size_two_is_identity():
    M = transition("hasse", "phi", 2, F2)
    assert is_identity(M)


def test_linear_func_json_and_eval():
    f = LinearFunc.random(F3, random.Random(1), depth=4, prec=8)
    g = LinearFunc.from_json(f.to_json())
    assert g == f
    x = S(F3, [1, 2, 0, 1], 0, None)
    assert f(x) == f.values[0] + f.values[1].scale(2) + f.values[3]
    with pytest.raises(PrecisionError):
        f(S(F3, [1], 0, 4))
    with pytest.raises(PrecisionError):
        f(S.monomial(F3, 4))
    with pytest.raises(PrecisionError):
        expand(f, "phi", count=5)


def test_basis_aliases():
    assert BasisId.parse("E") is BasisId.CARLITZ_E
    assert BasisId.parse("cartier_psi") is BasisId.CARTIER_PSI
    with pytest.raises(ValueError):
        BasisId.parse("fourier")


def test_is_linear():
    F = F2
    unit = [S.zero(F)] * 8
    unit[4] = S.one(F)
    assert is_linear(expand(LinearFunc(F, unit[:1] + [S.zero(F)] * 7), "phi"))

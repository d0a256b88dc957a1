import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartier.fq import make_field
from cartier.series import PrecisionError, TruncatedLaurent as S
from cartier.verify import planted_family
from cartier.wronskian import (DEPENDENT, INDEPENDENT, INDETERMINATE, LinearDependenceError, determinant,
                               find_certificate, fq_dependency, fq_det, in_Km, independent_over_Km,
                               normalize_orders, operator_matrix, wronskian)

from conftest import polys_over

F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)


def leibniz(M):
    F = M[0][0].field
    n = len(M)
    out = S.zero(F)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = S.one(F)
        for i, j in enumerate(perm):
            term = term * M[i][j]
        out = out + (-term if inv % 2 else term)
    return out


@settings(max_examples=30)
@given(st.sampled_from([F2, F3]), st.integers(1, 4), st.data())
def test_bareiss_matches_leibniz(F, n, data):
    M = [[data.draw(polys_over(F, 3)) for _ in range(n)] for _ in range(n)]
    assert determinant(M) == leibniz(M)


def test_determinant_of_truncated_entries():
    F = F2
    M = [[S(F, [1, 1], 0, 6), S(F, [0, 1], 0, 6)], [S(F, [1], 0, 6), S(F, [1, 0, 1], 0, 6)]]
    d = determinant(M)
    exact = leibniz([[S(F, m.coeffs, m.lo, None) for m in row] for row in M])
    assert d == exact
    assert d.prec is not None


@pytest.mark.parametrize("F", [F2, F3])
def test_wronskian_of_normalized_family_is_unit(F):
    rng = random.Random(4)
    for _ in range(30):
        xs = planted_family(F, rng, rng.randint(1, 3), dependent=False)
        A, gs = normalize_orders(xs)
        eps = tuple(sorted(g.lo for g in gs))
        assert len(set(eps)) == len(eps)
        w = wronskian("phi", eps, gs)
        assert w.coeffs and w.lo == 0
        # W(xs A) = det(A) W(xs)
        assert wronskian("phi", eps, xs).scale(fq_det(F, A)) == w


@pytest.mark.parametrize("F", [F2, F3, F4])
@pytest.mark.parametrize("kind", ["phi", "psi"])
def test_planted_families(F, kind):
    rng = random.Random(9)
    for i in range(20):
        dep = i % 2 == 0
        xs = planted_family(F, rng, rng.randint(1, 3), dependent=dep)
        cert = find_certificate(kind, xs)
        if dep:
            assert cert.verdict == DEPENDENT
            lam = cert.dependency
            total = S.zero(F)
            for c, x in zip(lam, xs):
                total = total + x.scale(c)
            assert total.is_zero() and any(lam)
        else:
            assert cert.verdict == INDEPENDENT and cert.independent
            assert wronskian(kind, cert.eps, xs) == cert.det


def test_certificate_examples():
    t = S.monomial(F2, 1)
    one = S.one(F2)
    c = find_certificate("phi", [one, t])
    assert c.eps == (0, 1) and c.det == 1
    assert find_certificate("phi", [t, t]).dependency == [1, 1]
    assert find_certificate("phi", [one + t, one, t]).dependency == [1, 1, 1]
    t3 = S.monomial(F3, 1)
    assert find_certificate("phi", [t3, t3.scale(2)]).dependency == [2, 2]
    low = find_certificate("phi", [one, t], bound=0)
    assert low.verdict == INDETERMINATE
    laurent = find_certificate("phi", [S.monomial(F2, -3), one + t])
    assert laurent.verdict == INDEPENDENT


def test_normalize_orders_reports_dependency():
    t = S.monomial(F3, 1)
    with pytest.raises(LinearDependenceError) as err:
        normalize_orders([t, t.scale(2)])
    assert err.value.dependency == [1, 1]
    assert fq_dependency([t, S.one(F3)]) is None


def test_operator_matrix_shape():
    xs = [S.one(F2), S.monomial(F2, 3)]
    M = operator_matrix("phi", (0, 3), xs)
    assert M[1][1] == 1 and M[1][0].is_zero()
    with pytest.raises(ValueError):
        operator_matrix("phi", (1, 1), xs)


@pytest.mark.parametrize("p", [2, 3])
def test_Km_criterion(p):
    F = make_field(p)
    x = S(F, [1, 1, 0, 1], 0, None)
    t = S.monomial(F, 1)
    tp = S.monomial(F, p)
    assert independent_over_Km([S.one(F), t], 1).verdict == INDEPENDENT
    cert = independent_over_Km([x, tp * x], 1)
    assert cert.verdict == DEPENDENT
    assert all(cert.extra["in_Km"])
    total = cert.dependency[0] * x + cert.dependency[1] * tp * x
    assert total.is_zero()
    assert independent_over_Km([S.one(F), t], 1, kind="hasse").verdict == INDEPENDENT


def test_in_Km():
    t = S.monomial(F3, 1)
    assert in_Km(S.monomial(F3, 3), 1)
    assert not in_Km(t, 1)
    assert in_Km(S.monomial(F3, 9) + 1, 2)
    with pytest.raises(PrecisionError):
        in_Km(S(F3, [1], 0, 2), 1)
    with pytest.raises(ValueError):
        independent_over_Km([t] * 4, 1)


@pytest.mark.parametrize("F", [F2, F3])
def test_laurent_families_certified_with_default_bound(F):
    rng = random.Random(1)
    for i in range(40):
        xs = planted_family(F, rng, 1 + i % 3, False, prec=6)
        s = rng.randrange(1, 5)
        xs = [x.shift(-s * (j % 2)) for j, x in enumerate(xs)]
        for kind in ("phi", "psi"):
            c = find_certificate(kind, xs)
            assert c.independent and c.det == wronskian(kind, c.eps, xs)
    t = S.monomial(F2, 1)
    assert find_certificate("phi", [t * t + t, t ** 3, t ** -1]).eps == (0, 1, 7)

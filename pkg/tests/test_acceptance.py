"""Acceptance criteria, one test each, at the stated sizes and time limits.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines; the terminal summary prints them in any case.
"""
import math
import random
import time
from itertools import combinations

import pytest

from cartier import operators as ops
from cartier import wronskian as W
from cartier.carlitz import A_coeff, A_coeff_reciprocal, carlitz_C_combinatorial, carlitz_C_via_A, carlitz_coefficient
from cartier.digit import (ContinuousFunc, alpha_set, evaluate_digit_expansion, expand_continuous,
                           orthogonality_sum)
from cartier.fq import base_digits, make_field
from cartier.linbasis import ALL_BASES, LinearFunc, evaluate_expansion, expand, is_linear
from cartier.padic import PadicInt, mahler_coeffs, padic_digit_eval, residue_vector
from cartier.series import TruncatedLaurent as S, random_series
from cartier.verify import _is_linear_table, planted_family

F2, F3 = make_field(2), make_field(3)


def report(num, ok, elapsed, limit):
    print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, limit {limit}s)")


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def finish(num, failures, timer, limit):
    ok = not failures and timer.elapsed < limit
    report(num, ok, timer.elapsed, limit)
    assert not failures, failures[:5]
    assert timer.elapsed < limit, f"took {timer.elapsed:.1f}s, limit {limit}s"


@pytest.mark.criterion(1, "decomposition identity", 5)
def test_decomposition_identity():
    rng = random.Random(1)
    bad = []
    with Timer() as tm:
        for i in range(200):
            F = (F2, F3)[i % 2]
            m = 1 + (i // 2) % 2
            x = random_series(F, rng, 0, 32)
            total = S.zero(F)
            for r in range(F.q ** m):
                total = total + ops.cartier_delta(r, m, x).frobenius(F.e * m).shift(r)
            if not (total == x and total.prec == 32):
                bad.append((F.q, m))
    finish(1, bad, tm, 5)


@pytest.mark.criterion(2, "binomial inversion", 10)
def test_binomial_inversion():
    rng = random.Random(2)
    bad = []
    with Timer() as tm:
        for i in range(200):
            F = (F2, F3)[i % 2]
            q = F.q
            k = 1 + (i // 2) % 2
            x = random_series(F, rng, -8, 32)
            for n in range(1, q ** k):
                if ops.phi_via_hasse(n, x) != ops.phi(n, x):
                    bad.append(("phi", q, n))
                if ops.hasse_via_phi(n, x) != ops.hasse(n, x):
                    bad.append(("hasse", q, n))
            top = q ** k - 1
            if ops.phi(top, x) != ops.hasse(top, x):
                bad.append(("top", q, top))
        for F in (F2, F3):
            k = 1
            while F.q ** k <= 27:
                A = ops.inversion_matrix("hasse_to_phi", k, F)
                B = ops.inversion_matrix("phi_to_hasse", k, F)
                if not (ops.is_identity(ops.matmul(A, B)) and ops.is_identity(ops.matmul(B, A))):
                    bad.append(("matrix", F.q, k))
                k += 1
    finish(2, bad, tm, 10)


@pytest.mark.criterion(3, "five-basis round trip", 30)
def test_five_basis_round_trip():
    rng = random.Random(3)
    bad = []
    with Timer() as tm:
        for i in range(50):
            F = (F2, F3)[i % 2]
            f = LinearFunc.random(F, rng, depth=16)
            for b in ALL_BASES:
                ex = expand(f, b, count=8)
                for j in range(8):
                    if evaluate_expansion(ex, S.monomial(F, j)) != f.values[j]:
                        bad.append((F.q, b.value, j))
            if i < 10:
                for n in range(4):
                    a, b2, c = (carlitz_coefficient(f, n, m) for m in ("difference", "C_sum", "A_sum"))
                    if not (a == b2 == c):
                        bad.append(("carlitz", F.q, n))
        for F in (F2, F3):
            for n in range(1, 4):
                if carlitz_C_combinatorial(n, F) != carlitz_C_via_A(n, F):
                    bad.append(("C_i", F.q, n))
                for r in range(1, n + 1):
                    if A_coeff(n, r, F) != A_coeff_reciprocal(n, r, F):
                        bad.append(("A", F.q, n, r))
    finish(3, bad, tm, 30)


@pytest.mark.criterion(4, "q-th power expansions", 5)
def test_qth_power_expansions():
    rng = random.Random(4)
    bad = []
    with Timer() as tm:
        for i in range(100):
            F = (F2, F3)[i % 2]
            m = (i // 2) % 3
            x = random_series(F, rng, 0, 32)
            direct = x ** (F.q ** m)
            for mode in ("via_phi", "via_hasse"):
                if ops.qth_power_expansion(mode, m, x) != direct:
                    bad.append((F.q, m, mode))
    finish(4, bad, tm, 5)


@pytest.mark.criterion(5, "orthogonality tables", 10)
def test_orthogonality():
    bad = []
    with Timer() as tm:
        for F in (F2, F3):
            for base in ("phi", "psi"):
                for n in (1, 2):
                    qn = F.q ** n
                    sign = 1 if n % 2 == 0 else -1
                    for mode in ("all_deg_lt_n", "monic_deg_n"):
                        for k in range(qn):
                            for l in range(qn):
                                s = orthogonality_sum(base, k, l, n, mode, F)
                                if s != (sign if k + l == qn - 1 else 0):
                                    bad.append((F.q, base, n, mode, k, l))
    finish(5, bad, tm, 10)


@pytest.mark.criterion(6, "digit reconstruction and linearity", 60)
def test_digit_reconstruction():
    rng = random.Random(6)
    F = F2
    bad = []
    with Timer() as tm:
        for i in range(50):
            w = 1 + i % 3
            f = ContinuousFunc.random(F, w, rng, prec=16)
            for base in ("phi", "psi"):
                ex = expand_continuous(f, base)
                for a, v in zip(alpha_set(F, w), f.values):
                    if evaluate_digit_expansion(ex, a) != v:
                        bad.append(("reconstruct", base, w))
        w = 3
        for _ in range(20):
            lin = ContinuousFunc.from_linear(LinearFunc.random(F, rng, depth=w, prec=16), w)
            if not is_linear(expand_continuous(lin, "phi")):
                bad.append("linear table flagged non-linear")
        nonlinear = 0
        while nonlinear < 20:
            f = ContinuousFunc.random(F, w, rng, prec=16)
            if _is_linear_table(f):
                continue
            nonlinear += 1
            if is_linear(expand_continuous(f, "phi")):
                bad.append("non-linear table flagged linear")
    finish(6, bad, tm, 60)


@pytest.mark.criterion(7, "p-adic suite", 10)
def test_padic_suite():
    rng = random.Random(7)
    bad = []
    with Timer() as tm:
        for p in (2, 3):
            for n in range(3):
                row = mahler_coeffs(n, p ** (n + 1), p)
                for name, ok in row.properties().items():
                    if not ok:
                        bad.append(("mahler", p, n, name))
            for n in (1, 2, 3):
                images = {residue_vector(PadicInt(p, x, 16), n) for x in range(p ** n)}
                if len(images) != p ** n:
                    bad.append(("bijection", p, n))
        for i in range(100):
            p = (2, 3)[i % 2]
            x = PadicInt(p, rng.randrange(p ** 16), 16)
            for j in range(16):
                if not padic_digit_eval("Phi", j, x).congruent(padic_digit_eval("Psi", j, x), 1):
                    bad.append(("Phi/Psi", p, j))
    finish(7, bad, tm, 10)


@pytest.mark.criterion(8, "negative binomial congruence", 5)
def test_negative_binomial_congruence():
    bad = []
    with Timer() as tm:
        for qk, p in ((2, 2), (3, 3), (4, 2), (8, 2), (9, 3)):
            for n in range(1, qk):
                for m in range(1, 3 * qk + 1):
                    exact = sum(math.comb(r, n) * math.comb(m + r - 1, r) for r in range(n, qk)) % p
                    if exact != ops.binom_sum_closed(m, n, qk, p) or exact != ops.binom_sum_congruence(m, n, qk, p):
                        bad.append((qk, n, m))
    finish(8, bad, tm, 5)


@pytest.mark.criterion(9, "Wronskian criteria", 30)
def test_wronskian_criteria():
    rng = random.Random(9)
    bad = []
    with Timer() as tm:
        for i in range(100):
            F = (F2, F3)[i % 2]
            dep = rng.random() < 0.5
            xs = planted_family(F, rng, 1 + i % 3, dep)
            for kind in ("phi", "psi"):
                c = W.find_certificate(kind, xs)
                if dep:
                    total = S.zero(F)
                    for lam, x in zip(c.dependency or [], xs):
                        total = total + x.scale(lam)
                    if c.verdict != W.DEPENDENT or not any(c.dependency) or not total.is_zero():
                        bad.append(("dependent", kind, i))
                elif c.verdict != W.INDEPENDENT or not W.wronskian(kind, c.eps, xs).coeffs:
                    bad.append(("independent", kind, i))
        for i in range(50):
            F = (F2, F3)[i % 2]
            size = rng.randrange(1, 4)
            eps = tuple(sorted(rng.sample(range(13), size)))
            gs = []
            for e in eps:
                cs = list(random_series(F, rng, e, 24).coeffs) or [1]
                cs[0] = rng.randrange(1, F.q)
                gs.append(S(F, cs, e, 24))
            for kind in ("phi", "psi"):
                det = W.wronskian(kind, eps, gs)
                if not (det.coeffs and det.lo == 0):
                    bad.append(("WL2", kind, eps))
        for p in (2, 3):
            Fp = make_field(p)
            t = S.monomial(Fp, 1)
            if W.independent_over_Km([S.one(Fp), t], 1).verdict != W.INDEPENDENT:
                bad.append(("K1 (1,t)", p))
            x = S(Fp, [1, 1, 0, 1], 0, None)
            c = W.independent_over_Km([x, S.monomial(Fp, p) * x], 1)
            if c.verdict != W.DEPENDENT or not all(c.extra["in_Km"]):
                bad.append(("K1 (x, t^p x)", p))
    finish(9, bad, tm, 30)


@pytest.mark.criterion(10, "composition of Cartier operators", 10)
def test_composition():
    bad = []
    discrepancies = 0
    with Timer() as tm:
        for F in (F2, F3):
            q = F.q
            for m in range(1, q ** 2 + 1):
                for n in range(1, q ** 2 + 1):
                    km, kn = ops.digit_length(m, q), ops.digit_length(n, q)
                    brute = ops.compose_phi(m, n, F, limit=64)
                    if km <= kn and brute:
                        bad.append(("nonzero", q, m, n))
                    for j in range(64):
                        x = S.monomial(F, j)
                        if ops.apply_phi_expansion(brute, x) != ops.phi(m, ops.phi(n, x)):
                            bad.append(("round trip", q, m, n, j))
                    if km > kn:
                        printed = ops.compose_phi_printed_form(m, n, F, 64)
                        if printed.keys() != brute.keys() or any(brute[i] != printed[i] for i in printed):
                            discrepancies += 1
    print(f"printed composition closed form differs from brute force in {discrepancies} cases")
    finish(10, bad, tm, 10)


def test_verify_all_under_three_minutes():
    from cartier.cli import main

    t0 = time.perf_counter()
    for q in ("2", "3"):
        assert main(["verify", "--q", q, "--suite", "all"]) == 0
    assert time.perf_counter() - t0 < 180

"""Carlitz constants, linearized polynomials and coefficient formulas.

Everything here works over ``F_q[T]`` with ``q`` the field size.  The
brackets ``[n] = T^(q^n) - T``, the products ``F_n`` and ``L_n`` and the
coefficients of ``e_n`` are exact polynomials (``prec=None`` series).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .fq import GF, binom_mod
from .series import TruncatedLaurent, exact_quotient

Series = TruncatedLaurent

# exponent budget for exact polynomials built here
MAX_DEGREE = 1 << 16


class BudgetError(ValueError):
    pass


def _budget(F: GF, n: int):
    if F.q ** n > MAX_DEGREE:
        raise BudgetError(f"q^n = {F.q}^{n} exceeds the degree budget {MAX_DEGREE}")


@lru_cache(maxsize=None)
def bracket(F: GF, n: int) -> Series:
    """``[n] = T^(q^n) - T`` (and ``[0] = 0``)."""
    _budget(F, n)
    if n == 0:
        return Series.zero(F)
    return Series.from_dict(F, {F.q ** n: 1, 1: -1})


@lru_cache(maxsize=None)
def carlitz_F(F: GF, n: int) -> Series:
    """``F_n = [n] [n-1]^q ... [1]^(q^(n-1))``."""
    out = Series.one(F)
    for i in range(1, n + 1):
        out = out * bracket(F, i).frobenius(F.e * (n - i))
    return out


@lru_cache(maxsize=None)
def carlitz_L(F: GF, n: int) -> Series:
    """``L_n = [n] [n-1] ... [1]``."""
    out = Series.one(F)
    for i in range(1, n + 1):
        out = out * bracket(F, i)
    return out


@dataclass(frozen=True)
class CarlitzConstants:
    n: int
    bracket: Series
    F: Series
    L: Series


def carlitz_constants(n: int, F: GF) -> CarlitzConstants:
    if n < 0:
        raise ValueError("n must be >= 0")
    return CarlitzConstants(n, bracket(F, n), carlitz_F(F, n), carlitz_L(F, n))


class LinearizedPoly:
    """``P(x) = sum_i coeffs[i] * x^(q^i)`` with coefficients in ``F_q((T))``."""

    def __init__(self, field: GF, coeffs):
        self.field = field
        self.coeffs = list(coeffs)

    @property
    def degree(self) -> int:
        """Highest ``i`` with a nonzero coefficient (``q``-degree)."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[i].is_zero():
                return i
        return -1

    def __call__(self, x: Series) -> Series:
        F = self.field
        out = Series.zero(F)
        for i, c in enumerate(self.coeffs):
            if c.is_exact_zero():
                continue
            out = out + c * x.frobenius(F.e * i)
        return out

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        z = Series.zero(self.field)
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return all(x == y for x, y in zip(a, b))

    __hash__ = None

    def __repr__(self):
        terms = [f"({c})*x^{self.field.q ** i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return "LinearizedPoly(" + (" + ".join(terms) or "0") + ")"


@lru_cache(maxsize=None)
def e_poly(n: int, F: GF) -> LinearizedPoly:
    """``e_n(x) = prod_{deg a < n} (x - a)`` via ``e_{n+1} = e_n^q - e_n(T^n)^(q-1) e_n``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _budget(F, n)
    if n == 0:
        return LinearizedPoly(F, [Series.one(F)])
    prev = e_poly(n - 1, F)
    D = prev(Series.monomial(F, n - 1)) ** (F.q - 1)
    cs = [Series.zero(F)] * (n + 1)
    for i, c in enumerate(prev.coeffs):
        cs[i + 1] = cs[i + 1] + c.frobenius(F.e)
        cs[i] = cs[i] - D * c
    return LinearizedPoly(F, cs)


def low_degree_polys(F: GF, n: int):
    """All polynomials of degree < n as exact series (``q^n`` of them)."""
    q = F.q
    for idx in range(q ** n):
        cs = []
        v = idx
        for _ in range(n):
            v, c = divmod(v, q)
            cs.append(c)
        yield Series(F, cs, 0, None)


def e_poly_literal(n: int, F: GF, limit: int = 4096) -> LinearizedPoly:
    """``e_n`` by multiplying out all ``q^n`` linear factors (test oracle)."""
    if F.q ** n > limit:
        raise BudgetError(f"literal product over {F.q ** n} roots exceeds limit {limit}")
    # polynomial in x with series coefficients, index = power of x
    P = [Series.one(F)]
    for alpha in low_degree_polys(F, n):
        new = [Series.zero(F)] * (len(P) + 1)
        for d, c in enumerate(P):
            new[d + 1] = new[d + 1] + c
            new[d] = new[d] - alpha * c
        P = new
    cs = []
    for d, c in enumerate(P):
        if c.is_zero():
            continue
        i = 0
        while F.q ** i < d:
            i += 1
        if F.q ** i != d:
            raise AssertionError(f"product has a non-linearized term x^{d}")
    for i in range(n + 1):
        cs.append(P[F.q ** i])
    return LinearizedPoly(F, cs)


def E_eval(n: int, x: Series) -> Series:
    """``E_n(x) = e_n(x) / F_n`` with ``E_0(x) = x``.

    Exact input gives an exact polynomial.  For ``x`` known modulo ``T^P``
    the value is known modulo ``T^(P-n)``.
    """
    F = x.field
    if x.coeffs and x.lo < 0:
        raise ValueError("E_n needs v(x) >= 0")
    if n == 0:
        return x
    xt = Series(F, x.coeffs, x.lo if x.coeffs else 0, None)
    if xt.top <= n:
        # e_n vanishes on polynomials of degree < n
        val = Series.zero(F)
    elif len(xt.coeffs) == 1:
        val = _E_monomial(F, n, xt.lo).scale(xt.coeffs[0])
    else:
        val = exact_quotient(e_poly(n, F)(xt), carlitz_F(F, n))
    if x.prec is None:
        return val
    return val.truncate(max(0, x.prec - n))


@lru_cache(maxsize=None)
def _E_monomial(F: GF, n: int, i: int) -> Series:
    if i == n:
        return Series.one(F)
    x = Series.monomial(F, i)
    return exact_quotient(e_poly(n, F)(x), carlitz_F(F, n))


# ---------------------------------------------------------------------------
# coefficient formulas


def _values(f):
    return f.values if hasattr(f, "values") else list(f)


def carlitz_difference(f, n: int, twisted: bool = True) -> Series:
    """``(Delta^(n) f)(1)`` (twisted) or ``(Delta^n f)(1)`` from values ``f(T^i)``.

    ``f`` is a :class:`~cartier.linbasis.LinearFunc` or a sequence of values.
    """
    vals = _values(f)
    if len(vals) <= n:
        raise ValueError(f"need f(T^i) for i <= {n}, table has depth {len(vals)}")
    F = vals[0].field
    g = list(vals[: n + 1])
    for j in range(1, n + 1):
        shift = F.q ** (j - 1) if twisted else 1
        g = [g[i + 1] - g[i].shift(shift) for i in range(len(g) - 1)]
    return g[0]


def _elementary(values: list[Series], k: int, F: GF) -> Series:
    """Elementary symmetric polynomial ``e_k`` of ``values``."""
    e = [Series.one(F)] + [Series.zero(F)] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


@lru_cache(maxsize=None)
def A_coeff(n: int, r: int, F: GF) -> Series:
    """Coefficient of ``Delta^r`` in ``Delta^(n) = sum_r A_{n,r} Delta^r``.

    Since ``Delta^(n) = Delta * prod_{i=1}^{n-1} (Delta - [i])`` this is
    ``(-1)^(n-r)`` times the elementary symmetric polynomial of degree
    ``n-r`` in ``[1], ..., [n-1]``; in particular ``A_{n,0} = 0`` for
    ``n > 0`` and ``A_{0,0} = 1``.
    """
    if r < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    if n == 0:
        return Series.one(F)
    if r == 0:
        return Series.zero(F)
    brs = [bracket(F, i) for i in range(1, n)]
    out = _elementary(brs, n - r, F)
    return -out if (n - r) % 2 else out


def A_coeff_reciprocal(n: int, r: int, F: GF, prec: int = 64) -> Series:
    """``(-1)^(n+r) L_{n-1} sum_{0<j_1<...<j_{r-1}<n} 1/([j_1]...[j_{r-1}])``.

    The reciprocals are expanded as Laurent series to relative precision
    ``prec``; the sum of products is then multiplied back by ``L_{n-1}``.
    """
    if r < 1 or r > n:
        raise ValueError("the reciprocal form covers 1 <= r <= n")
    L = carlitz_L(F, n - 1)
    inv = {j: bracket(F, j).inverse(prec) for j in range(1, n)}
    acc = Series.zero(F)
    for js in combinations(range(1, n), r - 1):
        term = Series.one(F)
        for j in js:
            term = term * inv[j]
        acc = acc + term
    out = L * acc
    return -out if (n + r) % 2 else out


def carlitz_C_combinatorial(n: int, F: GF) -> list[Series]:
    """``C_n = 1``, ``C_i = (-1)^(n-i) sum_{S} T^(sum S)`` over ``(n-i)``-subsets of ``{1, q, ..., q^(n-1)}``."""
    powers = [F.q ** j for j in range(n)]
    out = []
    for i in range(n + 1):
        terms = {}
        for S in combinations(powers, n - i):
            e = sum(S)
            terms[e] = F.add(terms.get(e, 0), 1)
        c = Series.from_dict(F, terms)
        out.append(-c if (n - i) % 2 else c)
    return out


def carlitz_C_via_A(n: int, F: GF) -> list[Series]:
    """``C_i = sum_{r=i}^n C(r,i) (-T)^(r-i) A_{n,r}``."""
    out = []
    for i in range(n + 1):
        acc = Series.zero(F)
        for r in range(i, n + 1):
            b = binom_mod(r, i, F.p)
            if not b:
                continue
            if (r - i) % 2:
                b = -b
            acc = acc + A_coeff(n, r, F).shift(r - i).scale(b)
        out.append(acc)
    return out


def carlitz_C_coeffs(n: int, F: GF) -> list[Series]:
    """``C_0 .. C_n`` (combinatorial form, cross-checked against the ``A_{n,r}`` form)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    comb = carlitz_C_combinatorial(n, F)
    via = carlitz_C_via_A(n, F)
    if any(a != b for a, b in zip(comb, via)):
        raise AssertionError(f"C_i formulas disagree for n={n} over {F}")
    return comb


def carlitz_coefficient(f, n: int, method: str = "difference") -> Series:
    """E-basis coefficient ``a_n`` by one of the three formulas.

    ``difference``: ``(Delta^(n) f)(1)``; ``C_sum``: ``sum C_i f(T^i)``;
    ``A_sum``: ``sum_i sum_r C(r,i) (-T)^(r-i) A_{n,r} f(T^i)``.
    """
    vals = _values(f)
    F = vals[0].field
    if method == "difference":
        return carlitz_difference(vals, n, twisted=True)
    if method == "C_sum":
        if n == 0:
            return vals[0]
        cs = carlitz_C_combinatorial(n, F)
        out = Series.zero(F)
        for i, c in enumerate(cs):
            out = out + c * vals[i]
        return out
    if method == "A_sum":
        out = Series.zero(F)
        for i in range(n + 1):
            for r in range(i, n + 1):
                b = binom_mod(r, i, F.p)
                if not b:
                    continue
                if (r - i) % 2:
                    b = -b
                A = A_coeff(n, r, F)
                if A.is_zero():
                    continue
                out = out + (A.shift(r - i) * vals[i]).scale(b)
        return out
    raise ValueError(f"unknown method {method!r}")

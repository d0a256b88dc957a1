"""Digit-principle bases of all continuous functions R -> K.

From a basis ``f_i`` of the linear functions the digit principle builds
``F_n = prod f_i^(n_i)`` over the base-``q`` digits of ``n``, and the
companion ``F_n*`` in which every digit ``q-1`` contributes
``f_i^(q-1) - 1`` instead.  With ``f_i = phi_i`` or ``psi_i`` these are the
digit Cartier functions ``Phi_n`` and ``Psi_n``.

Continuous functions are represented at a finite window ``w``: a table of
values on ``A_w``, the ``q^w`` polynomials of degree below ``w``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .fq import GF, base_digits, parse_field
from .linbasis import BasisId, Expansion, LinearFunc, basis_apply
from .series import PrecisionError, TruncatedLaurent, from_text, random_series, to_text

Series = TruncatedLaurent

MAX_WINDOW_SIZE = 3 ** 9


def _poly_from_index(F: GF, idx: int, w: int) -> Series:
    cs = []
    for _ in range(w):
        idx, c = divmod(idx, F.q)
        cs.append(c)
    return Series(F, cs, 0, None)


def _index_of(x: Series, w: int) -> int:
    q = x.field.q
    return sum(x[i] * q ** i for i in range(w))


@lru_cache(maxsize=None)
def alpha_set(F: GF, w: int) -> tuple:
    """``A_w``: all polynomials of degree < ``w``, ordered by base-``q`` index."""
    if F.q ** w > MAX_WINDOW_SIZE:
        raise PrecisionError(f"|A_w| = {F.q}^{w} exceeds the enumeration budget")
    return tuple(_poly_from_index(F, i, w) for i in range(F.q ** w))


def monic_set(F: GF, n: int) -> tuple:
    """Monic polynomials of degree exactly ``n``."""
    top = Series.monomial(F, n)
    return tuple(a + top for a in alpha_set(F, n))


class ContinuousFunc:
    """Locally constant ``f: R -> K``, ``f(x) = values[x mod T^w]``."""

    def __init__(self, field: GF, window: int, values):
        self.field = field
        self.window = window
        if isinstance(values, dict):
            vals = [None] * field.q ** window
            for k, v in values.items():
                i = k if isinstance(k, int) else _index_of(k, window)
                vals[i] = v
            if any(v is None for v in vals):
                raise ValueError("table must cover every polynomial of degree < window")
            values = vals
        if len(values) != field.q ** window:
            raise ValueError(f"expected {field.q ** window} values, got {len(values)}")
        self.values = list(values)

    def __call__(self, x: Series) -> Series:
        if x.coeffs and x.lo < 0:
            raise ValueError("argument must lie in R")
        if x.prec is not None and x.prec < self.window:
            raise PrecisionError(f"argument known only modulo T^{x.prec}, window is {self.window}")
        return self.values[_index_of(x, self.window)]

    @classmethod
    def from_function(cls, F: GF, window: int, fn) -> "ContinuousFunc":
        return cls(F, window, [fn(a) for a in alpha_set(F, window)])

    @classmethod
    def from_linear(cls, f: LinearFunc, window: int) -> "ContinuousFunc":
        return cls.from_function(f.field, window, f)

    @classmethod
    def random(cls, F: GF, window: int, rng, prec: int = 16, lo: int = 0) -> "ContinuousFunc":
        return cls(F, window, [random_series(F, rng, lo, prec) for _ in range(F.q ** window)])

    def to_json(self) -> str:
        F = self.field
        vals = {to_text(a): to_text(v) for a, v in zip(alpha_set(F, self.window), self.values)}
        return json.dumps({"q": f"{F.p}^{F.e}", "window": self.window, "values": vals})

    @classmethod
    def from_json(cls, text: str) -> "ContinuousFunc":
        d = json.loads(text)
        F = parse_field(d["q"])
        w = int(d["window"])
        vals = {}
        for k, v in d["values"].items():
            key = from_text(k)
            if key.top > w:
                raise ValueError(f"key {k!r} has degree >= window {w}")
            vals[_index_of(key, w)] = from_text(v)
        return cls(F, w, vals)


@dataclass
class DigitExpansion(Expansion):
    window: int = 0


def _factor(base, i: int, d: int, starred: bool, x: Series, q: int, cache: dict) -> Series:
    if i not in cache:
        cache[i] = basis_apply(base, i, x)
    v = cache[i]
    if starred and d == q - 1:
        return v ** (q - 1) - 1
    return v ** d


def digit_eval(base, n: int, starred: bool, x: Series, _cache: dict | None = None) -> Series:
    """``F_n(x)`` (or ``F_n*(x)``) for the digit extension of ``base``."""
    if n < 0:
        raise ValueError("index must be >= 0")
    if x.coeffs and x.lo < 0:
        raise ValueError("argument must lie in R")
    F = x.field
    q = F.q
    cache = {} if _cache is None else _cache
    out = Series.one(F)
    for i, d in enumerate(base_digits(n, q)):
        if d == 0:
            continue
        out = out * _factor(base, i, d, starred, x, q, cache)
    return out


def orthogonality_sum(base, k: int, l: int, n: int, mode: str, F: GF) -> Series:
    """``sum F_k(a) F_l*(a)`` over ``deg a < n`` or over monic ``deg a = n``."""
    if l >= F.q ** n or l < 0 or k < 0:
        raise ValueError(f"need 0 <= l < q^n and k >= 0, got k={k}, l={l}, n={n}")
    if mode == "all_deg_lt_n":
        alphas = alpha_set(F, n)
    elif mode == "monic_deg_n":
        if k >= F.q ** n:
            raise ValueError("monic mode needs k < q^n")
        alphas = monic_set(F, n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = Series.zero(F)
    for a in alphas:
        cache = {}
        out = out + digit_eval(base, k, False, a, cache) * digit_eval(base, l, True, a, cache)
    return out


@lru_cache(maxsize=None)
def _starred_table(base: BasisId, F: GF, w: int, m: int) -> tuple:
    """``F_m*(a)`` for every ``a`` in ``A_w``."""
    return tuple(digit_eval(base, m, True, a) for a in alpha_set(F, w))


def recover_coeff(f: ContinuousFunc, base, n: int, w: int | None = None) -> Series:
    """``c_n = (-1)^w sum_{a in A_w} F*_{q^w-1-n}(a) f(a)`` with ``q^w > n``."""
    F = f.field
    q = F.q
    if w is None:
        w = f.window
    if q ** w <= n:
        raise ValueError(f"window {w} too small for index {n}")
    if w > f.window:
        raise ValueError(f"window {w} exceeds the table window {f.window}")
    b = BasisId.parse(base)
    star = _starred_table(b, F, w, q ** w - 1 - n)
    out = Series.zero(F)
    for a, s in zip(alpha_set(F, w), star):
        if s.is_zero():
            continue
        out = out + s * f(a)
    return -out if w % 2 else out


def expand_continuous(f: ContinuousFunc, base) -> DigitExpansion:
    """All ``c_n`` for ``n < q^w``."""
    b = BasisId.parse(base)
    cs = [recover_coeff(f, b, n) for n in range(f.field.q ** f.window)]
    return DigitExpansion(b, cs, f.window)


def evaluate_digit_expansion(ex: Expansion, x: Series, terms: int | None = None) -> Series:
    terms = len(ex.coeffs) if terms is None else terms
    F = x.field
    out = Series.zero(F)
    cache = {}
    for n in range(terms):
        c = ex.coeffs[n]
        if c.is_zero():
            continue
        out = out + c * digit_eval(ex.basis, n, False, x, cache)
    return out


@lru_cache(maxsize=None)
def psi_weights(F: GF, n: int, w: int | None = None) -> tuple:
    """Weights ``g_i`` with ``B_n = sum_i g_i f(T^i)`` for linear ``f``.

    Comes from ``B_n = (-1)^w sum_{a in A_w} Psi*_{q^w-1-q^n}(a) f(a)`` with
    ``f(a) = sum_i a_i f(T^i)``; the default window is ``w = n + 1``.
    """
    q = F.q
    if w is None:
        w = n + 1
    if w <= n:
        raise ValueError("need q^n < q^w")
    star = _starred_table(BasisId.CARTIER_PSI, F, w, q ** w - 1 - q ** n)
    gs = [Series.zero(F)] * w
    for a, s in zip(alpha_set(F, w), star):
        if s.is_zero():
            continue
        for i, c in a.items():
            gs[i] = gs[i] + s.scale(c)
    if w % 2:
        gs = [-g for g in gs]
    return tuple(gs)

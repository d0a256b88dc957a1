"""The five orthonormal bases of continuous F_q-linear functions R -> K.

A continuous linear function is determined by its values on monomials, so
:class:`LinearFunc` stores the table ``f(T^i)`` for ``i < depth``.  The
bases are the Carlitz polynomials ``E_n``, Hasse derivatives ``D_n``, shifts
``S^(n)`` and the Cartier operators ``phi_n`` and ``psi_n``.  Every one of
them is triangular on monomials (``b_n(T^i) = 0`` for ``i < n`` and
``b_n(T^n) = 1``), which is what makes finite-depth expansions exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from . import operators as ops
from .carlitz import E_eval, carlitz_difference
from .fq import GF, binom_mod, parse_field
from .series import PrecisionError, TruncatedLaurent, from_text, random_series, to_text

Series = TruncatedLaurent

DEFAULT_DEPTH = 16
DEFAULT_PREC = 32


class BasisId(str, Enum):
    CARLITZ_E = "carlitz"
    HASSE_D = "hasse"
    SHIFT_S = "shift"
    CARTIER_PHI = "phi"
    CARTIER_PSI = "psi"

    @classmethod
    def parse(cls, name) -> "BasisId":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {"e": "carlitz", "d": "hasse", "s": "shift", "carlitz_e": "carlitz",
                   "hasse_d": "hasse", "shift_s": "shift", "cartier_phi": "phi", "cartier_psi": "psi"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown basis {name!r}") from None


ALL_BASES = tuple(BasisId)


def basis_apply(basis, n: int, x: Series) -> Series:
    """Value of the ``n``-th function of ``basis`` at ``x``."""
    b = BasisId.parse(basis)
    if b is BasisId.CARLITZ_E:
        return E_eval(n, x)
    if b is BasisId.HASSE_D:
        return ops.hasse(n, x)
    if b is BasisId.SHIFT_S:
        return ops.shift(n, x)
    if b is BasisId.CARTIER_PHI:
        return ops.phi(n, x)
    return ops.psi(n, x)


class LinearFunc:
    """Continuous F_q-linear ``f: R -> K`` given by ``values[i] = f(T^i)``."""

    def __init__(self, field: GF, values):
        self.field = field
        self.values = list(values)
        for v in self.values:
            if v.field is not field:
                raise ValueError("table value over a different field")

    @property
    def depth(self) -> int:
        return len(self.values)

    def __call__(self, x: Series) -> Series:
        """``sum x_i f(T^i)``; ``x`` must be an exact polynomial of degree < depth."""
        if x.prec is not None:
            raise PrecisionError("LinearFunc evaluates exact polynomials only")
        if x.coeffs and x.lo < 0:
            raise ValueError("argument must lie in R")
        if x.top > self.depth:
            raise PrecisionError(f"argument degree {x.top - 1} beyond table depth {self.depth}")
        out = Series.zero(self.field)
        for i, c in x.items():
            out = out + self.values[i].scale(c)
        return out

    @classmethod
    def from_operator(cls, op, F: GF, depth: int = DEFAULT_DEPTH, prec: int | None = DEFAULT_PREC):
        vals = []
        for i in range(depth):
            v = op(Series.monomial(F, i))
            if prec is not None:
                v = v.truncate(prec)
            vals.append(v)
        return cls(F, vals)

    @classmethod
    def from_basis(cls, basis, n: int, F: GF, depth: int = DEFAULT_DEPTH, prec: int | None = None):
        return cls.from_operator(lambda x: basis_apply(basis, n, x), F, depth, prec)

    @classmethod
    def random(cls, F: GF, rng, depth: int = DEFAULT_DEPTH, prec: int = DEFAULT_PREC, lo: int = 0):
        return cls(F, [random_series(F, rng, lo, prec) for _ in range(depth)])

    def to_json(self) -> str:
        return json.dumps({"q": f"{self.field.p}^{self.field.e}", "depth": self.depth,
                           "values": [to_text(v) for v in self.values]})

    @classmethod
    def from_json(cls, text: str) -> "LinearFunc":
        d = json.loads(text)
        F = parse_field(d["q"])
        vals = [from_text(s) for s in d["values"]]
        if "depth" in d and int(d["depth"]) != len(vals):
            raise ValueError(f"depth {d['depth']} does not match {len(vals)} values")
        return cls(F, vals)

    def __eq__(self, other):
        if not isinstance(other, LinearFunc):
            return NotImplemented
        return self.field is other.field and self.depth == other.depth and all(
            a == b for a, b in zip(self.values, other.values))

    __hash__ = None


@dataclass
class Expansion:
    basis: BasisId
    coeffs: list

    def __len__(self):
        return len(self.coeffs)


def _count(f: LinearFunc, count):
    if count is None:
        return f.depth
    if count > f.depth:
        raise PrecisionError(f"{count} coefficients need table depth >= {count}, have {f.depth}")
    return count


def expand(f: LinearFunc, basis, count: int | None = None, psi_method: str = "auto") -> Expansion:
    """Coefficients ``c_0 .. c_{count-1}`` of ``f`` in ``basis``.

    ``psi_method="digit"`` recovers the ``psi`` coefficients from the
    digit-principle formula over ``A_w`` (``w = n + 1``); ``"triangular"``
    solves the unitriangular system on monomials instead.  ``"auto"`` uses
    the digit formula while ``q^(n+1)`` fits the enumeration budget.
    """
    b = BasisId.parse(basis)
    N = _count(f, count)
    F = f.field
    v = f.values
    out = []
    if b is BasisId.CARLITZ_E:
        out = [carlitz_difference(v, n, twisted=True) for n in range(N)]
    elif b is BasisId.HASSE_D:
        for n in range(N):
            acc = Series.zero(F)
            for i in range(n + 1):
                c = binom_mod(n, i, F.p)
                if c:
                    if (n - i) % 2:
                        c = -c
                    acc = acc + v[i].shift(n - i).scale(c)
            out.append(acc)
    elif b is BasisId.SHIFT_S:
        out = [v[0]] + [v[n] - v[n - 1].shift(1) for n in range(1, N)]
    elif b is BasisId.CARTIER_PHI:
        for n in range(N):
            if n == 0:
                out.append(v[0])
            else:
                qn, nm = ops.lead(n, F.q)
                out.append(v[n] - v[nm].shift(qn))
    elif psi_method in ("digit", "auto"):
        from .digit import MAX_WINDOW_SIZE, psi_weights

        tri = None
        for n in range(N):
            if psi_method == "auto" and F.q ** (n + 1) > MAX_WINDOW_SIZE:
                if tri is None:
                    tri = _triangular(f, BasisId.CARTIER_PSI, N)
                out.append(tri[n])
                continue
            acc = Series.zero(F)
            for i, g in enumerate(psi_weights(F, n)):
                if not g.is_zero():
                    acc = acc + g * v[i]
            out.append(acc)
    elif psi_method == "triangular":
        out = _triangular(f, BasisId.CARTIER_PSI, N)
    else:
        raise ValueError(f"unknown psi method {psi_method!r}")
    return Expansion(b, out)


def _triangular(f: LinearFunc, basis, N: int) -> list:
    """Solve ``f(T^m) = sum_{n<=m} c_n b_n(T^m)`` for ``m < N``."""
    F = f.field
    cs = []
    for m in range(N):
        x = Series.monomial(F, m)
        acc = f.values[m]
        for n in range(m):
            bv = basis_apply(basis, n, x)
            if not bv.is_zero():
                acc = acc - cs[n] * bv
        cs.append(acc)
    return cs


def evaluate_expansion(ex: Expansion, x: Series, terms: int | None = None) -> Series:
    """Partial sum ``sum_{n<terms} c_n b_n(x)``."""
    if x.coeffs and x.lo < 0:
        raise ValueError("evaluation point must lie in R")
    terms = len(ex.coeffs) if terms is None else terms
    if terms > len(ex.coeffs):
        raise ValueError(f"only {len(ex.coeffs)} coefficients available")
    F = x.field
    out = Series.zero(F)
    for n in range(terms):
        c = ex.coeffs[n]
        if c.is_exact_zero():
            continue
        out = out + c * basis_apply(ex.basis, n, x)
    return out


def transition(src, dst, size: int, F: GF) -> list[list[Series]]:
    """Matrix ``M`` with ``src_n = sum_m M[n][m] dst_m`` on monomials ``T^0 .. T^(size-1)``.

    Entries are exact; both bases are triangular so ``M`` is upper
    unitriangular and the truncation is consistent under products.
    """
    s, d = BasisId.parse(src), BasisId.parse(dst)
    if size < 1 or size > 4096:
        raise ValueError(f"size {size} outside the supported range")
    M = []
    for n in range(size):
        f = LinearFunc.from_basis(s, n, F, depth=size, prec=None)
        if d is BasisId.CARTIER_PSI:
            row = _triangular(f, d, size)
        else:
            row = expand(f, d).coeffs
        M.append(row)
    return M


def is_linear(ex) -> bool:
    """True iff all digit-expansion coefficients off the indices ``q^i`` vanish."""
    coeffs = ex.coeffs
    if not coeffs:
        return True
    F = coeffs[0].field
    powers = set()
    p = 1
    while p < len(coeffs):
        powers.add(p)
        p *= F.q
    return all(c.is_zero() for n, c in enumerate(coeffs) if n not in powers)

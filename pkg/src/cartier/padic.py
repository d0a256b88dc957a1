"""Cartier maps on the p-adic integers and their digit-product bases.

``phi_n`` and ``psi_n`` act on base-``p`` digits exactly as their function
field namesakes act on coefficients: with ``k`` the number of base-``p``
digits of ``n``, ``phi_n`` moves digit ``i p^k + n`` to position ``i p^k``
and ``psi_n`` moves it to position ``i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .fq import base_digits, is_prime

DEFAULT_DIGITS = 16


class PadicInt:
    """``sum digits[i] p^i`` known modulo ``p^ndigits``."""

    __slots__ = ("p", "ndigits", "value")

    def __init__(self, p: int, value: int, ndigits: int = DEFAULT_DIGITS):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if ndigits < 0:
            raise ValueError("ndigits must be >= 0")
        self.p = p
        self.ndigits = ndigits
        self.value = value % p ** ndigits

    @classmethod
    def from_digits(cls, p: int, digits, ndigits: int | None = None) -> "PadicInt":
        digits = list(digits)
        if any(not 0 <= d < p for d in digits):
            raise ValueError("digits must lie in [0, p)")
        v = sum(d * p ** i for i, d in enumerate(digits))
        return cls(p, v, len(digits) if ndigits is None else ndigits)

    @property
    def digits(self) -> list[int]:
        ds = base_digits(self.value, self.p)
        return ds + [0] * (self.ndigits - len(ds))

    @property
    def modulus(self) -> int:
        return self.p ** self.ndigits

    def digit(self, i: int) -> int:
        if i >= self.ndigits:
            raise ValueError(f"digit {i} beyond known precision {self.ndigits}")
        return self.value // self.p ** i % self.p

    def _meet(self, other):
        if isinstance(other, int):
            return other, self.ndigits
        if other.p != self.p:
            raise ValueError("mixing different primes")
        return other.value, min(self.ndigits, other.ndigits)

    def __add__(self, other):
        v, n = self._meet(other)
        return PadicInt(self.p, self.value + v, n)

    __radd__ = __add__

    def __sub__(self, other):
        v, n = self._meet(other)
        return PadicInt(self.p, self.value - v, n)

    def __rsub__(self, other):
        v, n = self._meet(other)
        return PadicInt(self.p, v - self.value, n)

    def __neg__(self):
        return PadicInt(self.p, -self.value, self.ndigits)

    def __mul__(self, other):
        v, n = self._meet(other)
        return PadicInt(self.p, self.value * v, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return PadicInt(self.p, pow(self.value, e, self.modulus) if self.ndigits else 0, self.ndigits)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        if not isinstance(other, PadicInt):
            return NotImplemented
        n = min(self.ndigits, other.ndigits)
        return self.p == other.p and (self.value - other.value) % self.p ** n == 0

    __hash__ = None

    def congruent(self, other, m: int) -> bool:
        """Agreement modulo ``p^m`` (both sides must know that many digits)."""
        if m > self.ndigits or (isinstance(other, PadicInt) and m > other.ndigits):
            raise ValueError(f"cannot compare modulo p^{m} beyond known digits")
        ov = other.value if isinstance(other, PadicInt) else other
        return (self.value - ov) % self.p ** m == 0

    def to_text(self) -> str:
        return ",".join(map(str, self.digits))

    @classmethod
    def from_text(cls, p: int, text: str) -> "PadicInt":
        text = text.strip()
        if not text:
            return cls(p, 0, 0)
        return cls.from_digits(p, [int(t) for t in text.split(",")])

    def __repr__(self):
        return f"PadicInt(p={self.p}, {self.value} mod {self.p}^{self.ndigits})"


def digit_length(n: int, p: int) -> int:
    return len(base_digits(n, p))


def cartier_int(kind: str, n: int, x: int, p: int) -> int:
    """``phi_n`` or ``psi_n`` on a nonnegative integer (finitely many digits, exact)."""
    k = digit_length(n, p)
    pk = p ** k
    out = 0
    ds = base_digits(x, p)
    i = 0
    while i * pk + n < len(ds):
        d = ds[i * pk + n]
        if d:
            out += d * p ** (i * pk if kind == "phi" else i)
        i += 1
    return out


def padic_cartier(kind: str, n: int, x: PadicInt) -> PadicInt:
    """``phi_n(x)`` known mod ``p^(N-n)``, ``psi_n(x)`` mod ``p^floor((N-n)/p^k)``."""
    if kind not in ("phi", "psi"):
        raise ValueError(f"unknown Cartier map {kind!r}")
    if n < 0:
        raise ValueError("index must be >= 0")
    p, N = x.p, x.ndigits
    if n == 0:
        return x
    k = digit_length(n, p)
    if kind == "phi":
        out_n = max(0, N - n)
    else:
        out_n = max(0, (N - n) // p ** k)
    return PadicInt(p, cartier_int(kind, n, x.value, p), out_n)


@dataclass
class MahlerRow:
    p: int
    n: int
    coeffs: list

    def properties(self) -> dict:
        """The three structural facts: zeros below ``p^n``, one at ``p^n``, ``p`` divides the rest."""
        pn = self.p ** self.n
        a = self.coeffs
        return {
            "zero_below": all(a[j] == 0 for j in range(min(pn, len(a)))),
            "one_at": len(a) > pn and a[pn] == 1,
            "divisible_above": all(a[j] % self.p == 0 for j in range(pn + 1, len(a))),
        }


def mahler_coeffs(n: int, jmax: int, p: int) -> MahlerRow:
    """``a_j = sum_i (-1)^(j-i) C(j,i) phi_n(i)`` for ``j <= jmax`` (exact integers)."""
    if jmax < p ** n:
        raise ValueError(f"jmax must be >= p^n = {p ** n}")
    vals = [cartier_int("phi", n, i, p) for i in range(jmax + 1)]
    coeffs = []
    for j in range(jmax + 1):
        s = 0
        for i in range(j + 1):
            t = math.comb(j, i) * vals[i]
            s += -t if (j - i) % 2 else t
        coeffs.append(s)
    return MahlerRow(p, n, coeffs)


def mahler_eval(row: MahlerRow, x: int) -> int:
    return sum(a * math.comb(x, j) for j, a in enumerate(row.coeffs) if a)


def padic_digit_eval(kind: str, j: int, x: PadicInt) -> PadicInt:
    """``Phi_j = prod phi_i^(a_i)`` or ``Psi_j = phi_0^(a_0) prod_{i>=1} psi_i^(a_i)``."""
    if kind not in ("Phi", "Psi"):
        raise ValueError(f"unknown digit family {kind!r}")
    p = x.p
    out = PadicInt(p, 1, x.ndigits)
    for i, a in enumerate(base_digits(j, p)):
        if not a:
            continue
        op = "phi" if kind == "Phi" or i == 0 else "psi"
        out = out * padic_cartier(op, i, x) ** a
    return out


def residue_vector(x: PadicInt, n: int) -> tuple:
    """``(phi_0(x), ..., phi_{n-1}(x)) mod p``."""
    if n > x.ndigits:
        raise ValueError(f"window {n} exceeds known digits {x.ndigits}")
    return tuple(padic_cartier("phi", i, x).value % x.p for i in range(n))

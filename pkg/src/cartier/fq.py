"""Finite fields GF(p^e) with small integer encodings.

An element of GF(p^e) is stored as the integer ``sum(c_i * p**i)`` where
``c_0, ..., c_{e-1}`` are its coordinates in the power basis
``1, x, ..., x^{e-1}`` of ``F_p[x]/(f)``.  The modulus ``f`` is the first
primitive polynomial of degree ``e`` in a fixed enumeration order, so the
encoding is reproducible.  Multiplication goes through log/antilog tables.

Binomial coefficients modulo ``p`` (Lucas) live here as well since every
operator on series needs them.
"""
from __future__ import annotations

import math
from functools import lru_cache

MAX_ORDER = 2 ** 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _to_digits(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        v, r = divmod(v, p)
        out.append(r)
    return out


class GF:
    """The finite field with ``q = p**e`` elements.

    Use :func:`make_field` rather than instantiating directly; it caches
    instances so that two fields with the same ``(p, e)`` are the same object.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"degree must be >= 1, got {e}")
        if p ** e > MAX_ORDER:
            raise FieldError(f"field of order {p}^{e} exceeds the desk-scale cap {MAX_ORDER}")
        self.p = p
        self.e = e
        self.q = p ** e
        if e == 1:
            self.modulus = (0, 1)
            self._exp, self._log = self._prime_tables()
            self._add = None
        else:
            self.modulus, self._exp, self._log = self._extension_tables()
            self._add = self._add_table() if self.q <= 256 else None

    # -- construction -------------------------------------------------------

    def _prime_tables(self):
        p = self.p
        if p == 2:
            return [1, 1], {1: 0}
        # smallest primitive root
        factors = _prime_factors(p - 1)
        for g in range(2, p):
            if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
                break
        exp = [1] * (2 * (p - 1))
        for i in range(1, len(exp)):
            exp[i] = exp[i - 1] * g % p
        log = {exp[i]: i for i in range(p - 1)}
        return exp, log

    def _extension_tables(self):
        p, e, q = self.p, self.e, self.q
        for low in range(p ** e):
            low_digits = _to_digits(low, p, e)
            if low_digits[0] == 0:
                continue
            # x^e = -(c_0 + c_1 x + ... + c_{e-1} x^{e-1})
            red = [(-c) % p for c in low_digits]
            exp = [0] * (q - 1)
            cur = [1] + [0] * (e - 1)
            ok = True
            seen = set()
            for i in range(q - 1):
                v = sum(c * p ** j for j, c in enumerate(cur))
                if v in seen:
                    ok = False
                    break
                seen.add(v)
                exp[i] = v
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c + top * r) % p for c, r in zip(cur, red)]
            if ok and cur == [1] + [0] * (e - 1):
                log = {v: i for i, v in enumerate(exp)}
                modulus = tuple(low_digits) + (1,)
                return modulus, exp + exp, log
        raise FieldError(f"no primitive polynomial found for {p}^{e}")  # pragma: no cover

    def _add_table(self):
        q = self.q
        return [[self._add_digits(a, b) for b in range(q)] for a in range(q)]

    def _add_digits(self, a: int, b: int, sign: int = 1) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + sign * y) % p) * scale
            scale *= p
        return out

    # -- arithmetic on encoded integers ------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._add_digits(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._add_digits(a, b, -1)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        if self.e == 1 and self.p == 2:
            return 1
        k = (self._log[a] * n) % (self.q - 1)
        return self._exp[k]

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under ``Z -> F_p -> F_q``."""
        return n % self.p

    def mul_int(self, a: int, n: int) -> int:
        return self.mul(a, n % self.p)

    def frobenius_root(self, a: int, j: int) -> int:
        """The unique ``b`` with ``b**(p**j) == a``."""
        if self.e == 1 or a == 0:
            return a
        r = (-j) % self.e
        return self.pow(a, self.p ** r)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- text forms -------------------------------------------------------

    def coords(self, a: int) -> list[int]:
        return _to_digits(a, self.p, self.e)

    def format_elem(self, a: int) -> str:
        return ",".join(str(c) for c in self.coords(a))

    def parse_elem(self, s: str) -> int:
        parts = [t.strip() for t in s.strip().split(",")]
        if len(parts) == 1 and self.e > 1:
            # bare integer means an element of the prime field
            n = int(parts[0])
            return n % self.p
        if len(parts) != self.e:
            raise FieldError(f"expected {self.e} coordinates, got {s!r}")
        v = 0
        for i, t in enumerate(parts):
            c = int(t)
            if not 0 <= c < self.p:
                raise FieldError(f"coordinate {c} out of range for p={self.p}")
            v += c * self.p ** i
        return v

    def __repr__(self):
        return f"GF({self.p}^{self.e})"

    def __str__(self):
        return f"{self.p}^{self.e}"

    def __reduce__(self):
        return make_field, (self.p, self.e)

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, str):
            return FieldElem(self, self.parse_elem(value))
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.parse_elem(",".join(map(str, value))))
        v = int(value)
        if not 0 <= v < self.q:
            raise FieldError(f"encoded value {v} out of range for q={self.q}")
        return FieldElem(self, v)

    def gen(self) -> "FieldElem":
        """The class of ``x`` (a primitive element); ``1`` for prime fields."""
        return FieldElem(self, self.p if self.e > 1 else self._exp[1] % self.p)


class FieldElem:
    """An element of a :class:`GF` with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldError("field mismatch")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.mul(self.value, self.field.inv(o)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElem({self.field}, {self.field.format_elem(self.value)})"

    def __str__(self):
        return self.field.format_elem(self.value)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def make_field(p: int, e: int = 1) -> GF:
    """Return the (cached) field ``GF(p^e)``."""
    return _make_field(int(p), int(e))


@lru_cache(maxsize=None)
def _make_field(p, e):
    return GF(p, e)


def parse_field(text: str) -> GF:
    """Parse ``"p^e"`` or a bare prime power such as ``"4"``."""
    text = str(text).strip()
    if "^" in text:
        p, e = text.split("^", 1)
        return make_field(int(p), int(e))
    q = int(text)
    for p in range(2, q + 1):
        if q % p == 0:
            e = round(math.log(q, p))
            if p ** e != q:
                raise FieldError(f"{q} is not a prime power")
            return make_field(p, e)
    raise FieldError(f"{q} is not a prime power")


def frobenius_root(a: FieldElem, j: int) -> FieldElem:
    return FieldElem(a.field, a.field.frobenius_root(a.value, j))


def base_digits(n: int, b: int) -> list[int]:
    """Base-``b`` digits of ``n >= 0``, least significant first (``[]`` for 0)."""
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    return out


def lucas_binom(m: int, n: int, p: int) -> int:
    """``C(m, n) mod p`` for ``m, n >= 0`` via base-``p`` digits."""
    if n < 0 or m < 0 or n > m:
        return 0
    r = 1
    while n:
        m, mi = divmod(m, p)
        n, ni = divmod(n, p)
        if ni > mi:
            return 0
        r = r * math.comb(mi, ni) % p
    return r


def neg_binom(m: int, r: int, p: int) -> int:
    """``C(-m, r) mod p`` for ``m >= 1``, i.e. ``(-1)^r C(m+r-1, r)``."""
    if m < 1:
        raise ValueError("neg_binom needs m >= 1")
    if r < 0:
        return 0
    v = lucas_binom(m + r - 1, r, p)
    return v if r % 2 == 0 else (-v) % p


def binom_mod(i: int, n: int, p: int) -> int:
    """``C(i, n) mod p`` for any integer ``i`` and ``n >= 0``."""
    if i >= 0:
        return lucas_binom(i, n, p)
    return neg_binom(-i, n, p)

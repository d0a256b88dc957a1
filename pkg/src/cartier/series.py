"""Truncated Laurent series over GF(q) with explicit precision.

A :class:`TruncatedLaurent` stores coefficients for exponents ``lo`` up to
``prec - 1``; anything from ``prec`` on is unknown (``O(T^prec)``).  A
series with ``prec=None`` is *exact*: it is a Laurent polynomial whose
coefficients beyond the stored ones are known to vanish.  Exact zero and
"zero up to ``O(T^N)``" are different values.

Coefficients are field elements in the integer encoding of :mod:`cartier.fq`.
"""
from __future__ import annotations

import math
import re

from .fq import FieldElem, FieldError, GF, parse_field

DEFAULT_PREC = 32

INF = math.inf


class PrecisionError(ArithmeticError):
    """Raised when a requested coefficient lies beyond the known precision."""


def _enc(field: GF, c) -> int:
    if isinstance(c, FieldElem):
        if c.field is not field:
            raise FieldError("field mismatch")
        return c.value
    c = int(c)
    if not 0 <= c < field.q:
        return field.from_int(c)
    return c


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncatedLaurent:
    """``sum(coeffs[i] * T**(lo + i)) + O(T**prec)``."""

    __slots__ = ("field", "lo", "coeffs", "prec")

    def __init__(self, field: GF, coeffs=(), lo: int = 0, prec: int | None = None):
        cs = [_enc(field, c) for c in coeffs]
        if prec is not None:
            if lo > prec:
                lo, cs = prec, []
            n = prec - lo
            if len(cs) > n:
                del cs[n:]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        if i:
            cs = cs[i:]
            lo += i
        if prec is None:
            while cs and cs[-1] == 0:
                cs.pop()
            if not cs:
                lo = 0
        elif not cs:
            lo = prec
        else:
            cs.extend([0] * (prec - lo - len(cs)))
        self.field = field
        self.lo = lo
        self.coeffs = cs
        self.prec = prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, field, coeffs, lo, prec):
        return cls(field, coeffs, lo, prec)

    @classmethod
    def zero(cls, field: GF, prec: int | None = None) -> "TruncatedLaurent":
        return cls(field, (), prec if prec is not None else 0, prec)

    @classmethod
    def one(cls, field: GF, prec: int | None = None) -> "TruncatedLaurent":
        return cls(field, (1,), 0, prec)

    @classmethod
    def monomial(cls, field: GF, n: int, c=1, prec: int | None = None) -> "TruncatedLaurent":
        return cls(field, (c,), n, prec)

    @classmethod
    def from_dict(cls, field: GF, terms: dict, prec: int | None = None) -> "TruncatedLaurent":
        terms = {k: _enc(field, v) for k, v in terms.items()}
        terms = {k: v for k, v in terms.items() if v and (prec is None or k < prec)}
        if not terms:
            return cls.zero(field, prec)
        lo = min(terms)
        hi = max(terms) + 1
        cs = [0] * (hi - lo)
        for k, v in terms.items():
            cs[k - lo] = v
        return cls(field, cs, lo, prec)

    # -- basic queries ------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    @property
    def top(self) -> int:
        """One past the last stored exponent."""
        return self.lo + len(self.coeffs)

    @property
    def q(self) -> int:
        return self.field.q

    def valuation(self):
        """Smallest exponent with a nonzero coefficient, ``math.inf`` if none is known."""
        return self.lo if self.coeffs else INF

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (exact zero or ``O(T^N)``)."""
        return not self.coeffs

    def is_exact_zero(self) -> bool:
        return self.prec is None and not self.coeffs

    def __getitem__(self, i: int) -> int:
        if self.prec is not None and i >= self.prec:
            raise PrecisionError(f"coefficient of T^{i} unknown beyond O(T^{self.prec})")
        j = i - self.lo
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def coeff(self, i: int) -> FieldElem:
        return FieldElem(self.field, self[i])

    def items(self):
        """Yield ``(exponent, coefficient)`` for the nonzero stored terms."""
        lo = self.lo
        for i, c in enumerate(self.coeffs):
            if c:
                yield lo + i, c

    def known_until(self) -> int:
        """First exponent that is unknown, or one past the last term when exact."""
        return self.prec if self.prec is not None else self.top

    def leading_coefficient(self) -> int:
        if not self.coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, TruncatedLaurent):
            other = TruncatedLaurent(self.field, (other,), 0, None)
        if other.field is not self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")
        return other

    def _combine(self, other, sub: bool):
        other = self._check(other)
        F = self.field
        prec = _min_prec(self.prec, other.prec)
        if self.is_exact_zero():
            return -other if sub else other.truncate(prec) if prec is not None else other
        if other.is_exact_zero():
            return self.truncate(prec) if prec is not None else self
        lo = min(self.lo if self.coeffs else INF, other.lo if other.coeffs else INF)
        if lo is INF:
            return TruncatedLaurent.zero(F, prec)
        hi = max(self.top, other.top)
        if prec is not None:
            hi = min(hi, prec)
            if lo >= prec:
                return TruncatedLaurent.zero(F, prec)
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            k = self.lo + i - lo
            if k < len(out):
                out[k] = c
        op = F.sub if sub else F.add
        for i, c in enumerate(other.coeffs):
            k = other.lo + i - lo
            if k < len(out) and c:
                out[k] = op(out[k], c)
        return TruncatedLaurent(F, out, lo, prec)

    def __add__(self, other):
        return self._combine(other, False)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, True)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        F = self.field
        return TruncatedLaurent(F, [F.neg(c) for c in self.coeffs], self.lo, self.prec)

    def scale(self, c) -> "TruncatedLaurent":
        F = self.field
        c = _enc(F, c)
        if c == 0:
            return TruncatedLaurent.zero(F, None if self.prec is None else self.prec)
        return TruncatedLaurent(F, [F.mul(c, a) for a in self.coeffs], self.lo, self.prec)

    def shift(self, k: int) -> "TruncatedLaurent":
        """Multiply by ``T**k``."""
        prec = None if self.prec is None else self.prec + k
        lo = self.lo + k if self.coeffs else (0 if self.prec is None else prec)
        return TruncatedLaurent(self.field, self.coeffs, lo, prec)

    def truncate(self, prec: int) -> "TruncatedLaurent":
        prec = prec if self.prec is None else min(prec, self.prec)
        return TruncatedLaurent(self.field, self.coeffs, self.lo if self.coeffs else prec, prec)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        other = self._check(other)
        F = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return TruncatedLaurent.zero(F)
        a, b = self, other
        lo = a.lo + b.lo
        pa = INF if a.prec is None else a.prec + b.lo
        pb = INF if b.prec is None else b.prec + a.lo
        prec = min(pa, pb)
        prec = None if prec is INF else prec
        if not a.coeffs or not b.coeffs:
            return TruncatedLaurent.zero(F, prec)
        n = len(a.coeffs) + len(b.coeffs) - 1
        if prec is not None:
            n = min(n, prec - lo)
        if n <= 0:
            return TruncatedLaurent.zero(F, prec)
        ac, bc = a.coeffs, b.coeffs
        if F.e == 1:
            p = F.p
            out = [0] * n
            for i, x in enumerate(ac):
                if not x or i >= n:
                    continue
                lim = min(len(bc), n - i)
                for j in range(lim):
                    y = bc[j]
                    if y:
                        out[i + j] += x * y
            out = [v % p for v in out]
        else:
            out = [0] * n
            mul, add = F.mul, F.add
            for i, x in enumerate(ac):
                if not x or i >= n:
                    continue
                lim = min(len(bc), n - i)
                for j in range(lim):
                    y = bc[j]
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return TruncatedLaurent(F, out, lo, prec)

    __rmul__ = __mul__

    def inverse(self, rel_prec: int | None = None) -> "TruncatedLaurent":
        """Multiplicative inverse.

        A truncated input keeps its relative precision.  An exact input is
        inverted exactly when it is a monomial, otherwise to ``rel_prec``
        terms (default ``DEFAULT_PREC``).
        """
        F = self.field
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a series with no known nonzero coefficient")
        v = self.lo
        u = self.coeffs
        if self.prec is None:
            if len(u) == 1:
                return TruncatedLaurent(F, [F.inv(u[0])], -v, None)
            r = DEFAULT_PREC if rel_prec is None else rel_prec
        else:
            r = self.prec - v
            if rel_prec is not None:
                r = min(r, rel_prec)
        inv0 = F.inv(u[0])
        b = [0] * r
        b[0] = inv0
        for n in range(1, r):
            acc = 0
            for i in range(1, min(n, len(u) - 1) + 1):
                if u[i] and b[n - i]:
                    acc = F.add(acc, F.mul(u[i], b[n - i]))
            b[n] = F.neg(F.mul(inv0, acc))
        return TruncatedLaurent(F, b, -v, -v + r)

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(self.field.inv(_enc(self.field, other)))
        other = self._check(other)
        if self.prec is None and other.prec is None:
            try:
                return exact_quotient(self, other)
            except ValueError:
                pass
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedLaurent.one(self.field)
        base = self
        p = self.field.p
        # peel off p-power factors exactly through Frobenius
        j = 0
        while n and n % p == 0:
            n //= p
            j += 1
        if j:
            base = base.frobenius(j)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, j: int = 1) -> "TruncatedLaurent":
        """``self ** (p**j)``: coefficients raised to ``p**j``, exponents scaled."""
        F = self.field
        s = F.p ** j
        terms = {e * s: F.pow(c, s) for e, c in self.items()}
        prec = None if self.prec is None else self.prec * s
        return TruncatedLaurent.from_dict(F, terms, prec)

    def map_coeffs(self, fn) -> "TruncatedLaurent":
        return TruncatedLaurent(self.field, [fn(c) for c in self.coeffs], self.lo, self.prec)

    def coeff_root(self, j: int) -> "TruncatedLaurent":
        F = self.field
        return self.map_coeffs(lambda c: F.frobenius_root(c, j))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = TruncatedLaurent(self.field, (other,), 0, None)
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        if other.field is not self.field:
            return False
        prec = _min_prec(self.prec, other.prec)
        lo = min(self.lo, other.lo)
        hi = max(self.top, other.top)
        if prec is not None:
            hi = min(hi, prec)
        for i in range(lo, hi):
            if self[i] != other[i]:
                return False
        return True

    __hash__ = None

    def eq_to(self, other, prec: int) -> bool:
        """Agreement of all coefficients below ``prec`` (both must know them)."""
        for i in range(min(self.lo, other.lo), prec):
            if self[i] != other[i]:
                return False
        return True

    # -- presentation -------------------------------------------------------

    def __repr__(self):
        return f"TruncatedLaurent({render(self)})"

    def __str__(self):
        return render(self)


# ---------------------------------------------------------------------------
# module level operations


def series_mul(a: TruncatedLaurent, b: TruncatedLaurent) -> TruncatedLaurent:
    return a * b


def series_inv(a: TruncatedLaurent, rel_prec: int | None = None) -> TruncatedLaurent:
    return a.inverse(rel_prec)


def valuation(a: TruncatedLaurent):
    return a.valuation()


def coeff_root(a: TruncatedLaurent, j: int) -> TruncatedLaurent:
    return a.coeff_root(j)


def exact_quotient(a: TruncatedLaurent, b: TruncatedLaurent) -> TruncatedLaurent:
    """Quotient of two Laurent polynomials; ``ValueError`` if ``b`` does not divide ``a``."""
    if a.prec is not None or b.prec is not None:
        raise ValueError("exact_quotient needs exact operands")
    if b.is_exact_zero():
        raise ZeroDivisionError("division by exact zero")
    F = a.field
    if a.is_exact_zero():
        return a
    num = list(a.coeffs)
    den = b.coeffs
    dn = len(den) - 1
    if len(num) - 1 < dn:
        raise ValueError("not divisible")
    inv_lead = F.inv(den[-1])
    quo = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            f = F.mul(c, inv_lead)
            quo[i - dn] = f
            for j, d in enumerate(den):
                if d:
                    num[i - dn + j] = F.sub(num[i - dn + j], F.mul(f, d))
    if any(num[:dn]):
        raise ValueError("not divisible")
    return TruncatedLaurent(F, quo, a.lo - b.lo, None)


def T(field: GF, prec: int | None = None) -> TruncatedLaurent:
    return TruncatedLaurent.monomial(field, 1, 1, prec)


def poly(field: GF, coeffs, lo: int = 0, prec: int | None = None) -> TruncatedLaurent:
    return TruncatedLaurent(field, coeffs, lo, prec)


def random_series(field: GF, rng, lo: int = 0, prec: int = DEFAULT_PREC, sparse: float = 0.0) -> TruncatedLaurent:
    """Random series with all coefficients of exponents ``lo..prec-1`` drawn uniformly.

    ``sparse`` is the probability of forcing a coefficient to zero.
    """
    cs = []
    for _ in range(prec - lo):
        if sparse and rng.random() < sparse:
            cs.append(0)
        else:
            cs.append(rng.randrange(field.q))
    return TruncatedLaurent(field, cs, lo, prec)


# ---------------------------------------------------------------------------
# text forms

VAR = "T"


def _fmt_coeff(field: GF, c: int) -> str:
    s = field.format_elem(c)
    return f"({s})" if "," in s else s


def render(x: TruncatedLaurent, var: str = VAR) -> str:
    """Human form such as ``1 + 2*T^3 + O(T^8)``."""
    F = x.field
    parts = []
    for e, c in x.items():
        cs = _fmt_coeff(F, c)
        if e == 0:
            parts.append(cs)
            continue
        mono = var if e == 1 else f"{var}^{e}"
        parts.append(mono if c == 1 else f"{cs}*{mono}")
    if not parts:
        parts.append("0")
    if x.prec is not None:
        parts.append(f"O({var}^{x.prec})")
    return " + ".join(parts)


def to_text(x: TruncatedLaurent) -> str:
    """Bit-exact form ``q=p^e;lo=..;prec=..;coeffs=a|b|...``."""
    F = x.field
    prec = "inf" if x.prec is None else str(x.prec)
    coeffs = "|".join(F.format_elem(c) for c in x.coeffs)
    return f"q={F.p}^{F.e};lo={x.lo};prec={prec};coeffs={coeffs}"


def from_text(text: str) -> TruncatedLaurent:
    fields = {}
    for part in text.strip().split(";"):
        if "=" not in part:
            raise ValueError(f"malformed series text segment {part!r}")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    try:
        F = parse_field(fields["q"])
        lo = int(fields["lo"])
        prec = None if fields["prec"] in ("inf", "None", "") else int(fields["prec"])
        raw = fields["coeffs"]
    except KeyError as exc:
        raise ValueError(f"series text missing {exc}") from None
    cs = [F.parse_elem(c) for c in raw.split("|")] if raw else []
    return TruncatedLaurent(F, cs, lo, prec)


_TERM_RE = re.compile(
    r"""^(?:(?P<coef>\d+|\([\d,\s]+\))\s*\*?\s*)?
         (?:(?P<var>[tTx])(?:\^\s*(?P<exp>-?\d+))?)?$""",
    re.X,
)


def parse_human(field: GF, text: str, prec: int | None = None) -> TruncatedLaurent:
    """Parse the human form, e.g. ``"1 + T^3 - 2*T^-1 + O(T^20)"``.

    ``prec`` applies when the text carries no ``O(...)`` term; ``None`` keeps
    the result exact.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty series text")
    terms = []
    depth = 0
    cur = ""
    sign = 1
    prev = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and prev not in "^" and cur.strip():
            terms.append((sign, cur.strip()))
            cur = ""
            sign = 1 if ch == "+" else -1
            prev = ch
            continue
        if ch in "+-" and depth == 0 and prev != "^" and not cur.strip():
            if ch == "-":
                sign = -sign
            prev = ch
            continue
        cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        terms.append((sign, cur.strip()))
    out = {}
    for sgn, term in terms:
        m = re.fullmatch(r"O\(\s*[tT]\s*(?:\^\s*(-?\d+))?\s*\)", term)
        if m:
            prec = int(m.group(1)) if m.group(1) is not None else 1
            continue
        m = _TERM_RE.fullmatch(term.replace(" ", ""))
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse series term {term!r}")
        coef = m.group("coef")
        if coef is None:
            c = 1
        elif coef.startswith("("):
            c = field.parse_elem(coef[1:-1])
        else:
            c = field.from_int(int(coef)) if field.e > 1 else int(coef) % field.p
        if sgn < 0:
            c = field.neg(c)
        if m.group("var") is None:
            e = 0
        else:
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        out[e] = field.add(out.get(e, 0), c)
    return TruncatedLaurent.from_dict(field, out, prec)


def parse_series(field: GF, text: str, prec: int | None = None) -> TruncatedLaurent:
    """Accept either the bit-exact text form or the human form."""
    if text.strip().startswith("q="):
        x = from_text(text)
        if x.field is not field:
            raise FieldError(f"series is over {x.field}, expected {field}")
        return x
    return parse_human(field, text, prec)

"""Hasse derivatives, Cartier operators and the identities relating them.

All operators act on :class:`~cartier.series.TruncatedLaurent`.  The digit
base is ``Q = p**a``; by default ``a`` equals the field degree ``e`` so that
``Q`` is the field size (the function-field setting).  Passing ``a=1`` with
a prime field gives the ``Q = p`` setting used for Wronskians.

Index conventions: for ``n >= 1`` the digit length is ``k`` with
``Q**(k-1) <= n < Q**k``; ``n = 0`` has ``k = 0``.  ``q(n)`` is the leading
term ``n_{k-1} Q**(k-1)`` and ``n_minus = n - q(n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .fq import GF, base_digits, binom_mod
from .series import TruncatedLaurent, poly

Series = TruncatedLaurent


class PreconditionError(ValueError):
    """An operator was called outside the range where it is defined."""


def base_of(F: GF, a: int | None = None) -> int:
    """Digit base ``Q = p**a`` (``a`` defaults to the field degree)."""
    if a is None:
        return F.q
    if a < 1:
        raise PreconditionError(f"base exponent must be >= 1, got {a}")
    return F.p ** a


def _root_exp(F: GF, a: int | None) -> int:
    return F.e if a is None else a


@dataclass(frozen=True)
class DigitIndex:
    """Base-``Q`` anatomy of an operator index."""

    n: int
    base: int
    k: int = dc_field(init=False)
    digits: tuple = dc_field(init=False)
    qn: int = dc_field(init=False)
    n_minus: int = dc_field(init=False)

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError(f"index must be >= 0, got {self.n}")
        ds = tuple(base_digits(self.n, self.base))
        object.__setattr__(self, "digits", ds)
        object.__setattr__(self, "k", len(ds))
        qn = ds[-1] * self.base ** (len(ds) - 1) if ds else 0
        object.__setattr__(self, "qn", qn)
        object.__setattr__(self, "n_minus", self.n - qn)


def digit_length(n: int, Q: int) -> int:
    k = 0
    while n:
        n //= Q
        k += 1
    return k


def lead(n: int, Q: int) -> tuple[int, int]:
    """``(q(n), n_minus)`` in base ``Q``."""
    d = DigitIndex(n, Q)
    return d.qn, d.n_minus


def _need_nonneg(x: Series, what: str):
    if x.coeffs and x.lo < 0:
        raise PreconditionError(f"{what} needs v(x) >= 0, got valuation {x.lo}")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# ---------------------------------------------------------------------------
# the operators


def hasse(n: int, x: Series) -> Series:
    """Hasse derivative ``D_n``; negative exponents use ``C(-m, n)``."""
    if n < 0:
        raise PreconditionError("Hasse index must be >= 0")
    if n == 0:
        return x
    F = x.field
    p = F.p
    terms = {}
    for i, c in x.items():
        b = binom_mod(i, n, p)
        if b:
            terms[i - n] = F.mul_int(c, b)
    prec = None if x.prec is None else x.prec - n
    return Series.from_dict(F, terms, prec)


def cartier_delta(r: int, m: int, x: Series, a: int | None = None) -> Series:
    """``Delta_{r,m}``: coefficient of ``T^n`` is ``x_{n Q^m + r}`` (a ``Q^m``-th root of it).

    Over the field with ``Q = q`` the root is trivial.
    """
    F = x.field
    Q = base_of(F, a)
    if m < 0:
        raise PreconditionError("m must be >= 0")
    Qm = Q ** m
    if not 0 <= r < Qm:
        raise PreconditionError(f"need 0 <= r < Q^m = {Qm}, got r = {r}")
    _need_nonneg(x, "Delta_{r,m}")
    j = _root_exp(F, a) * m
    terms = {}
    for i, c in x.items():
        if i % Qm == r:
            terms[(i - r) // Qm] = F.frobenius_root(c, j)
    prec = None if x.prec is None else max(0, _ceil_div(x.prec - r, Qm))
    return Series.from_dict(F, terms, prec)


def phi(n: int, x: Series, a: int | None = None) -> Series:
    """Cartier operator ``phi_n`` on Laurent series.

    ``T^j`` maps to ``T^(j-n)`` when ``j = n mod Q^k`` and to 0 otherwise; on
    negative exponents this is the extension ``phi_n(t^-m) = t^-(m+n)`` iff
    ``n + (m mod Q^k) = Q^k``.  Output precision is ``prec - n``.
    """
    if n < 0:
        raise PreconditionError("phi index must be >= 0")
    if n == 0:
        return x
    F = x.field
    Qk = base_of(F, a) ** digit_length(n, base_of(F, a))
    terms = {i - n: c for i, c in x.items() if (i - n) % Qk == 0}
    prec = None if x.prec is None else x.prec - n
    return Series.from_dict(F, terms, prec)


def psi(n: int, x: Series, a: int | None = None, extend: bool = False) -> Series:
    """Cartier operator ``psi_n``: ``T^(i Q^k + n)`` maps to ``T^i`` with a ``Q^k``-th root.

    Negative-valuation input is rejected unless ``extend`` is set, in which
    case ``psi_n`` is ``phi_n`` followed by dividing exponents by ``Q^k`` and
    taking coefficient roots.
    """
    if n < 0:
        raise PreconditionError("psi index must be >= 0")
    if n == 0:
        return x
    F = x.field
    Q = base_of(F, a)
    k = digit_length(n, Q)
    Qk = Q ** k
    if not extend:
        _need_nonneg(x, "psi_n")
    j = _root_exp(F, a) * k
    terms = {}
    for i, c in x.items():
        if (i - n) % Qk == 0:
            terms[(i - n) // Qk] = F.frobenius_root(c, j)
    prec = None if x.prec is None else _ceil_div(x.prec - n, Qk)
    return Series.from_dict(F, terms, prec)


def shift(n: int, x: Series) -> Series:
    """``S^(n)``: drop terms below ``T^n`` and divide by ``T^n``."""
    if n < 0:
        raise PreconditionError("shift index must be >= 0")
    _need_nonneg(x, "S^(n)")
    if n == 0:
        return x
    terms = {i - n: c for i, c in x.items() if i >= n}
    prec = None if x.prec is None else max(0, x.prec - n)
    return Series.from_dict(x.field, terms, prec)


OPERATORS = {
    "hasse": lambda n, x, a=None: hasse(n, x),
    "phi": phi,
    "psi": psi,
    "shift": lambda n, x, a=None: shift(n, x),
}


def apply_operator(kind: str, n: int, x: Series, a: int | None = None) -> Series:
    try:
        op = OPERATORS[kind]
    except KeyError:
        raise PreconditionError(f"unknown operator {kind!r}") from None
    return op(n, x, a)


def decompose(x: Series, m: int, a: int | None = None) -> list[Series]:
    """``[Delta_{r,m}(x) for r < Q^m]``; see :func:`recompose`."""
    if m < 1:
        raise PreconditionError("m must be >= 1")
    Qm = base_of(x.field, a) ** m
    return [cartier_delta(r, m, x, a) for r in range(Qm)]


def recompose(parts: list[Series], m: int, a: int | None = None) -> Series:
    """``sum_r T^r parts[r]^(Q^m)``, the inverse of :func:`decompose`."""
    F = parts[0].field
    j = _root_exp(F, a) * m
    out = Series.zero(F)
    for r, y in enumerate(parts):
        out = out + y.frobenius(j).shift(r)
    return out


# ---------------------------------------------------------------------------
# Hasse expansions and binomial inversion


def delta_power_in_hasse(r: int, m: int, t: int, n: int, F: GF) -> Series:
    """Coefficient ``C^{(t)}_{r,n}`` of ``D_n`` in ``Delta_{r,m}^(q^t)``.

    With ``n = l q^m + s``: ``(-1)^(n-r) C(s,r) T^(s-r) (T^(q^m) - T^(q^t))^l``.
    """
    q = F.q
    if not 0 <= r < q ** m:
        raise PreconditionError(f"need 0 <= r < q^m, got r = {r}")
    l, s = divmod(n, q ** m)
    b = binom_mod(s, r, F.p)
    if not b:
        return Series.zero(F)
    if (n - r) % 2:
        b = -b
    base = Series.from_dict(F, {q ** m: 1, q ** t: -1}) if q ** m != q ** t else Series.zero(F)
    out = base ** l if l else Series.one(F)
    return out.shift(s - r).scale(b)


def _check_digit_range(n: int, k: int, Q: int):
    if k < 0 or n < 0 or n >= Q ** k or (k == 0 and n != 0):
        raise PreconditionError(f"index {n} out of range for digit length {k} (base {Q})")


def inversion_row(direction: str, n: int, k: int, F: GF, a: int | None = None) -> list[Series]:
    """Row ``[c_r for r = n .. Q^k - 1]`` of the binomial inversion formula.

    ``hasse_to_phi``: ``D_n = sum_r C(r,n) T^(r-n) Delta_{r,k}^(Q^k)``;
    ``phi_to_hasse``: ``Delta_{n,k}^(Q^k) = sum_r C(r,n) (-T)^(r-n) D_r``.
    For ``Q^(k-1) <= n`` the operators ``Delta_{r,k}^(Q^k)`` are exactly the
    ``phi_r``; lower ``n`` are accepted in the ``Delta`` reading.
    """
    Q = base_of(F, a)
    _check_digit_range(n, k, Q)
    if direction not in ("hasse_to_phi", "phi_to_hasse"):
        raise PreconditionError(f"unknown direction {direction!r}")
    sign = -1 if direction == "phi_to_hasse" else 1
    row = []
    for r in range(n, Q ** k if k else 1):
        b = binom_mod(r, n, F.p)
        if sign < 0 and (r - n) % 2:
            b = -b
        row.append(Series.monomial(F, r - n, b))
    return row


def inversion_matrix(direction: str, k: int, F: GF, a: int | None = None) -> list[list[Series]]:
    """Full upper-triangular ``Q^k x Q^k`` matrix whose row ``n`` is :func:`inversion_row`."""
    Q = base_of(F, a)
    size = Q ** k
    zero = Series.zero(F)
    M = []
    for n in range(size):
        row = inversion_row(direction, n, k, F, a)
        M.append([zero] * n + row)
    return M


def matmul(A: list[list[Series]], B: list[list[Series]]) -> list[list[Series]]:
    F = A[0][0].field
    n, m, l = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(l):
            acc = Series.zero(F)
            for t in range(m):
                if not A[i][t].is_zero() and not B[t][j].is_zero():
                    acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def is_identity(M: list[list[Series]]) -> bool:
    return all(M[i][j] == (1 if i == j else 0) for i in range(len(M)) for j in range(len(M[i])))


def phi_via_hasse(n: int, x: Series, a: int | None = None) -> Series:
    """``phi_n(x) = sum_{r=n}^{Q^k-1} C(r,n) (-t)^(r-n) D_r(x)``."""
    F = x.field
    Q = base_of(F, a)
    k = digit_length(n, Q)
    out = Series.zero(F)
    for r, c in zip(range(n, Q ** k if k else 1), inversion_row("phi_to_hasse", n, k, F, a)):
        if not c.is_zero():
            out = out + c * hasse(r, x)
    return out


def hasse_via_phi(n: int, x: Series, a: int | None = None) -> Series:
    """``D_n(x) = sum_{r=n}^{Q^k-1} C(r,n) t^(r-n) phi_r(x)``."""
    F = x.field
    Q = base_of(F, a)
    k = digit_length(n, Q)
    out = Series.zero(F)
    for r, c in zip(range(n, Q ** k if k else 1), inversion_row("hasse_to_phi", n, k, F, a)):
        if not c.is_zero():
            out = out + c * phi(r, x, a)
    return out


# ---------------------------------------------------------------------------
# q-th power maps and Delta in the phi basis


def qth_power_expansion(mode: str, m: int, x: Series) -> Series:
    """``x^(q^m)`` through the ``phi`` expansion or through Hasse derivatives.

    ``via_phi``: ``x + sum_{n>=1} (T^(n q^m) - T^(q(n) + q^m n_-)) phi_n(x)``.
    ``via_hasse``: ``sum_{n>=0} (T^(q^m) - T)^n D_n(x)``.
    The result is known to the precision of ``x``.
    """
    _need_nonneg(x, "qth_power_expansion")
    if m < 0:
        raise PreconditionError("m must be >= 0")
    F = x.field
    q = F.q
    Qm = q ** m
    N = x.known_until()
    if mode == "via_phi":
        out = x
        for n in range(1, N):
            y = phi(n, x)
            if y.is_zero() and y.prec is None:
                continue
            qn, nm = lead(n, q)
            c = Series.from_dict(F, {n * Qm: 1}) - Series.monomial(F, qn + Qm * nm)
            if c.is_exact_zero():
                continue
            out = out + c * y
        if x.prec is not None:
            out = out.truncate(x.prec)
        return out
    if mode == "via_hasse":
        base = Series.from_dict(F, {Qm: 1, 1: -1}) if Qm != 1 else Series.zero(F)
        power = Series.one(F)
        out = Series.zero(F) if x.prec is None else Series.zero(F, x.prec)
        for n in range(N):
            if n:
                power = power * base
                if x.prec is not None:
                    power = power.truncate(x.prec)
                if power.is_zero():
                    break
            d = hasse(n, x)
            if not d.is_zero() or d.prec is not None:
                out = out + power * d
        if x.prec is not None:
            out = out.truncate(x.prec)
        return out
    raise PreconditionError(f"unknown mode {mode!r}")


def phi_coefficients(op, F: GF, limit: int, a: int | None = None) -> dict[int, Series]:
    """Expansion of a linear operator in the ``phi`` basis, indices below ``limit``.

    ``op`` maps exact series to exact series.  Uses
    ``c_0 = op(1)`` and ``c_n = op(T^n) - T^(q(n)) op(T^(n_-))``.
    """
    Q = base_of(F, a)
    values = {}

    def val(j):
        if j not in values:
            values[j] = op(Series.monomial(F, j))
        return values[j]

    out = {}
    for n in range(limit):
        if n == 0:
            c = val(0)
        else:
            qn, nm = lead(n, Q)
            c = val(n) - val(nm).shift(qn)
        if not c.is_zero():
            out[n] = c
    return out


def apply_phi_expansion(coeffs: dict[int, Series], x: Series, a: int | None = None) -> Series:
    out = Series.zero(x.field)
    for n, c in sorted(coeffs.items()):
        out = out + c * phi(n, x, a)
    return out


def delta_in_phi(r: int, m: int, power_form: bool, F: GF, limit: int | None = None) -> dict[int, Series]:
    """``phi``-basis coefficients of ``Delta_{r,m}^(q^m)`` (or of ``Delta_{r,m}``).

    The power form is finite: ``{r: 1}`` plus ``-T^(j q^i)`` at ``j q^i + r``
    for ``k <= i < m``, ``1 <= j < q``.  The plain form adds
    ``T^j - T^(q(j) q^m + j_-)`` at ``j q^m + r`` for every ``j >= 1``; these
    are listed for indices below ``limit`` (default ``q^(m+1)``).
    """
    q = F.q
    if m < 1 or not 0 <= r < q ** m:
        raise PreconditionError(f"need m >= 1 and 0 <= r < q^m, got r={r}, m={m}")
    k = digit_length(r, q)
    out = {r: Series.one(F)}
    for i in range(k, m):
        for j in range(1, q):
            out[j * q ** i + r] = Series.monomial(F, j * q ** i, -1)
    if not power_form:
        if limit is None:
            limit = q ** (m + 1)
        j = 1
        while j * q ** m + r < limit:
            qj, jm = lead(j, q)
            c = Series.monomial(F, j) - Series.monomial(F, qj * q ** m + jm)
            if not c.is_zero():
                out[j * q ** m + r] = c
            j += 1
    return out


def delta_in_phi_literal(r: int, m: int, F: GF, limit: int) -> dict[int, Series]:
    """The plain-form expansion with the exponent ``T^(j q^m + j_-)`` taken literally.

    Kept only so the verification report can show where it departs from the
    operator; for multi-digit ``j`` it does not reproduce ``Delta_{r,m}``.
    """
    q = F.q
    out = delta_in_phi(r, m, True, F)
    j = 1
    while j * q ** m + r < limit:
        _, jm = lead(j, q)
        c = Series.monomial(F, j) - Series.monomial(F, j * q ** m + jm)
        if not c.is_zero():
            out[j * q ** m + r] = c
        j += 1
    return out


# ---------------------------------------------------------------------------
# composition and products


def compose_phi(m: int, n: int, F: GF, limit: int | None = None, a: int | None = None) -> dict[int, Series]:
    """``phi``-basis expansion of ``phi_m o phi_n`` recovered from monomials below ``limit``.

    The default ``limit`` is ``Q^(l+1)`` where ``l`` is the larger digit length.
    """
    if m < 1 or n < 1:
        raise PreconditionError("compose_phi needs m, n >= 1")
    Q = base_of(F, a)
    if limit is None:
        limit = Q ** (max(digit_length(m, Q), digit_length(n, Q)) + 1)
    return phi_coefficients(lambda x: phi(m, phi(n, x, a), a), F, limit, a)


def compose_phi_closed(m: int, n: int, F: GF, a: int | None = None) -> dict[int, Series]:
    """Closed form of ``phi_m o phi_n`` for ``m, n >= 1``.

    Equal digit lengths give 0.  If ``n`` is shorter than ``m`` the result is
    ``phi_{m+n}`` when ``Q^k`` divides ``m`` (``k`` the length of ``n``) and
    0 otherwise; if ``m`` is shorter, the composition is 0.
    """
    Q = base_of(F, a)
    km, kn = digit_length(m, Q), digit_length(n, Q)
    if km > kn and m % Q ** kn == 0:
        return {m + n: Series.one(F)}
    return {}


def compose_phi_printed_form(m: int, n: int, F: GF, limit: int, a: int | None = None) -> dict[int, Series]:
    """The series ``sum_i T^(i Q^l) phi_{m+n+i Q^l}`` truncated to indices below ``limit``."""
    Q = base_of(F, a)
    Ql = Q ** digit_length(m, Q)
    out = {}
    i = 0
    while m + n + i * Ql < limit:
        out[m + n + i * Ql] = Series.monomial(F, i * Ql)
        i += 1
    return out


def phi_product(n: int, x: Series, y: Series, a: int | None = None) -> Series:
    """``phi_n(xy)`` via ``sum_{i+j=n} phi_i phi_j + t^Q sum_{i+j=Q+n} phi_i phi_j``.

    Only ``1 <= n < Q`` is covered by the product formula; other ``n`` are
    refused.  The index-0 slot is ``Delta_{0,1}^Q``, i.e. ``x - sum_{r>=1} T^r
    phi_r(x)`` (the term the expansion ``D_0 = sum_i T^i phi_i`` requires),
    not the identity ``phi_0``.
    """
    F = x.field
    Q = base_of(F, a)
    if not 1 <= n < Q:
        raise PreconditionError(f"product formula holds only for 1 <= n < Q = {Q}, got n = {n}")

    def parts(z):
        ps = [phi(i, z, a) for i in range(1, Q)]
        head = z
        for r, v in enumerate(ps, 1):
            head = head - v.shift(r)
        return [head] + ps

    px, py = parts(x), parts(y)
    out = Series.zero(F)
    for i in range(n + 1):
        out = out + px[i] * py[n - i]
    tail = Series.zero(F)
    for i in range(n + 1, Q):
        tail = tail + px[i] * py[Q + n - i]
    return out + tail.shift(Q)


def delta_product(r: int, m: int, x: Series, y: Series, a: int | None = None) -> Series:
    """``Delta_{r,m}(xy)`` from ``Delta_{i,m}(x)`` and ``Delta_{j,m}(y)``."""
    F = x.field
    Qm = base_of(F, a) ** m
    if not 0 <= r < Qm:
        raise PreconditionError(f"need 0 <= r < Q^m, got r = {r}")
    dx = decompose(x, m, a)
    dy = decompose(y, m, a)
    out = Series.zero(F)
    for i in range(r + 1):
        out = out + dx[i] * dy[r - i]
    tail = Series.zero(F)
    for i in range(r + 1, Qm):
        tail = tail + dx[i] * dy[Qm + r - i]
    return out + tail.shift(1)


def binom_sum_congruence(m: int, n: int, qk: int, p: int) -> int:
    """``sum_{r=n}^{qk-1} C(r,n) C(m+r-1,r) mod p``."""
    if not 1 <= n < qk:
        raise PreconditionError(f"need 1 <= n < {qk}, got n = {n}")
    if m < 1:
        raise PreconditionError("m must be >= 1")
    return sum(binom_mod(r, n, p) * binom_mod(m + r - 1, r, p) for r in range(n, qk)) % p


def binom_sum_closed(m: int, n: int, qk: int, p: int) -> int:
    """Case split: ``(-1)^n mod p`` if ``n + (m mod qk) == qk``, else 0."""
    if not 1 <= n < qk:
        raise PreconditionError(f"need 1 <= n < {qk}, got n = {n}")
    s = m % qk
    if n + s == qk:
        return (-1) ** n % p
    return 0


def binom_sum_exact(m: int, n: int, qk: int) -> int:
    """The same sum over the integers, no reduction."""
    return sum(math.comb(r, n) * math.comb(m + r - 1, r) for r in range(n, qk))

"""Wronskians built from Cartier operators and Hasse derivatives.

``W_eps(x_0..x_n) = det(op_{eps_i}(x_j))``.  A nonzero Wronskian for some
strictly increasing ``eps`` certifies linear independence over the
constants (``phi``, ``psi``) or over ``K_m`` when ``eps_n < p^m``.

Operators here use the digit base ``p`` (``a = 1``), matching the
definition of ``K_m`` through ``D_i`` and ``phi_i`` with ``i < p^m``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import operators as ops
from .fq import GF
from .series import DEFAULT_PREC, PrecisionError, TruncatedLaurent, exact_quotient

Series = TruncatedLaurent

DEPENDENT = "dependent"
INDEPENDENT = "independent"
INDETERMINATE = "indeterminate"


class LinearDependenceError(ValueError):
    """Raised by :func:`normalize_orders` with the dependency it found."""

    def __init__(self, message, dependency):
        super().__init__(message)
        self.dependency = dependency


@dataclass
class Certificate:
    verdict: str
    kind: str
    eps: tuple | None = None
    det: Series | None = None
    dependency: list | None = None
    exact: bool = True
    note: str = ""
    tried: int = 0
    extra: dict = dc_field(default_factory=dict)

    @property
    def independent(self) -> bool:
        return self.verdict == INDEPENDENT


def _check_eps(eps):
    eps = tuple(int(e) for e in eps)
    if any(e < 0 for e in eps) or any(b <= a for a, b in zip(eps, eps[1:])):
        raise ValueError(f"eps must be strictly increasing and >= 0, got {eps}")
    return eps


def operator_matrix(kind: str, eps, xs, a: int | None = 1) -> list[list[Series]]:
    eps = _check_eps(eps)
    if len(eps) != len(xs):
        raise ValueError(f"need one index per series, got {len(eps)} for {len(xs)}")
    rows = []
    for e in eps:
        if kind == "phi":
            rows.append([ops.phi(e, x, a) for x in xs])
        elif kind == "psi":
            rows.append([ops.psi(e, x, a, extend=True) for x in xs])
        elif kind == "hasse":
            rows.append([ops.hasse(e, x) for x in xs])
        else:
            raise ValueError(f"unknown Wronskian kind {kind!r}")
    return rows


def _vbound(x: Series):
    """Lower bound for the valuation (``inf`` for exact zero)."""
    if x.is_exact_zero():
        return float("inf")
    return x.lo


def _divide(a: Series, b: Series) -> Series:
    if a.prec is None and b.prec is None:
        try:
            return exact_quotient(a, b)
        except ValueError:
            pass
    return a * b.inverse()


def determinant(M: list[list[Series]]) -> Series:
    """Fraction-free (Bareiss) determinant with pivoting on known-nonzero entries.

    If elimination stalls on a column whose entries are all zero only up to
    their precision, the result is a zero carrying a sound valuation bound,
    so callers can tell "indeterminate" apart from exact zero.
    """
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    F = M[0][0].field
    A = [row[:] for row in M]
    sign = 1
    prev = Series.one(F)
    for k in range(n):
        best = None
        for r in range(k, n):
            v = A[r][k]
            if v.coeffs and (best is None or v.lo < A[best][k].lo):
                best = r
        if best is None:
            if all(A[r][k].is_exact_zero() for r in range(k, n)):
                return Series.zero(F)
            # valuation bound of det(block) / prev^(m-1)
            m = n - k
            bound = 0
            for c in range(k, n):
                col = min(_vbound(A[r][c]) for r in range(k, n))
                if col == float("inf"):
                    return Series.zero(F)
                bound += col
            bound -= (m - 1) * prev.lo
            return Series.zero(F, bound)
        if best != k:
            A[k], A[best] = A[best], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = _divide(num, prev)
        prev = piv
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def wronskian(kind: str, eps, xs, a: int | None = 1) -> Series:
    eps = _check_eps(eps)
    if len(eps) != len(xs):
        raise ValueError("eps and xs must have the same length")
    return determinant(operator_matrix(kind, eps, xs, a))


def _status(det: Series) -> str:
    if det.coeffs:
        return INDEPENDENT
    return DEPENDENT if det.prec is None else INDETERMINATE


# ---------------------------------------------------------------------------
# linear algebra over F_q on coefficient vectors


def _coefficient_rows(xs):
    F = xs[0].field
    lo = min((x.lo for x in xs if x.coeffs), default=0)
    precs = [x.prec for x in xs if x.prec is not None]
    if precs:
        hi = min(precs)
    else:
        hi = max(x.top for x in xs)
    return F, [[x[i] for x in xs] for i in range(lo, hi)], bool(precs)


def fq_dependency(xs) -> list[int] | None:
    """A nonzero ``lam`` with ``sum lam_j x_j = 0`` on all known coefficients.

    Taken from the first free column of the reduced row echelon form and
    scaled so its last nonzero entry is ``-1``.  ``None`` if independent.
    """
    F, rows, _ = _coefficient_rows(xs)
    n = len(xs)
    R = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(R)) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, v) for v in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(vi, F.mul(f, vr)) for vi, vr in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    lam = [0] * n
    lam[fc] = F.neg(1)
    for row, pc in enumerate(pivots):
        if pc < fc:
            lam[pc] = R[row][fc]
    return lam


def normalize_orders(xs):
    """Column operations over F_q giving ``gs = xs A`` with distinct orders.

    Returns ``(A, gs)``; raises :class:`LinearDependenceError` if some
    combination vanishes (within precision).
    """
    F = xs[0].field
    n = len(xs)
    A = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    gs = list(xs)
    for j in range(n):
        while True:
            if not gs[j].coeffs:
                dep = [A[i][j] for i in range(n)]
                raise LinearDependenceError("family is linearly dependent over F_q", dep)
            hit = next((i for i in range(j) if gs[i].lo == gs[j].lo), None)
            if hit is None:
                break
            f = F.mul(gs[j].coeffs[0], F.inv(gs[hit].coeffs[0]))
            gs[j] = gs[j] - gs[hit].scale(f)
            for i in range(n):
                A[i][j] = F.sub(A[i][j], F.mul(f, A[i][hit]))
    return A, gs


def fq_det(F: GF, A) -> int:
    n = len(A)
    M = [row[:] for row in A]
    det = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[c])]
    return det


# ---------------------------------------------------------------------------
# certificates


def order_profile_eps(xs):
    """The orders of the normalized family, or ``None`` if they are not all >= 0."""
    _, gs = normalize_orders(xs)
    eps = sorted(g.lo for g in gs)
    if eps[0] < 0:
        return None
    return tuple(eps)


def find_certificate(kind: str, xs, bound: int | None = None, a: int | None = 1) -> Certificate:
    """Independence over the constants via a nonzero ``W_eps``, or an F_q dependency.

    For families in ``R`` the orders of the normalized family give a
    Wronskian that is a unit, so it is tried first; otherwise all ``eps``
    with ``eps_n <= bound`` are searched.  The default bound covers the
    span of the family and, when there are poles, reaches ``Q^k - 1`` for
    the first ``Q^k`` beyond that span.
    """
    if kind not in ("phi", "psi"):
        raise ValueError("find_certificate kind must be phi or psi")
    xs = list(xs)
    if not xs:
        raise ValueError("empty family")
    dep = fq_dependency(xs)
    exact = all(x.prec is None for x in xs)
    if dep is not None:
        return Certificate(DEPENDENT, kind, dependency=dep, exact=exact,
                           note="" if exact else "relation holds on all known coefficients")
    n = len(xs)
    tried = 0
    candidates = []
    try:
        prof = order_profile_eps(xs)
    except LinearDependenceError:
        prof = None
    if prof is not None:
        candidates.append(prof)
    if bound is None:
        hi = max(x.top if x.prec is None else x.prec for x in xs)
        lo = min(x.lo for x in xs if x.coeffs)
        bound = max(n - 1, hi - min(lo, 0))
        if lo < 0:
            # poles are seen by the operators phi_{Q^k - 1}; reach the next one
            Q = ops.base_of(xs[0].field, a)
            Qk = 1
            while Qk <= hi - lo:
                Qk *= Q
            bound = max(bound, Qk - 1)
    saw_indeterminate = False
    for eps in candidates:
        if eps[-1] > bound:
            continue
        tried += 1
        det = wronskian(kind, eps, xs, a)
        st = _status(det)
        if st == INDEPENDENT:
            return Certificate(INDEPENDENT, kind, eps=eps, det=det, tried=tried)
        saw_indeterminate |= st == INDETERMINATE
    for eps in combinations(range(bound + 1), n):
        if eps in candidates:
            continue
        tried += 1
        det = wronskian(kind, eps, xs, a)
        st = _status(det)
        if st == INDEPENDENT:
            return Certificate(INDEPENDENT, kind, eps=eps, det=det, tried=tried)
        saw_indeterminate |= st == INDETERMINATE
    note = "no certificate below bound"
    if saw_indeterminate:
        note += " (some Wronskians vanish only within precision)"
    return Certificate(INDETERMINATE, kind, tried=tried, note=note)


def in_Km(x: Series, m: int, p: int | None = None, check_phi: bool = True) -> bool:
    """``D_i(x) = 0`` for ``1 <= i < p^m`` (cross-checked against ``phi_i``)."""
    F = x.field
    p = F.p if p is None else p
    pm = p ** m
    if x.prec is not None and x.coeffs and x.prec - x.lo < pm:
        raise PrecisionError(f"need at least {pm} known coefficients to test membership in K_{m}")
    hz = all(ops.hasse(i, x).is_zero() for i in range(1, pm))
    if check_phi:
        pz = all(ops.phi(i, x, 1).is_zero() for i in range(1, pm))
        if pz != hz:
            raise AssertionError("Hasse and Cartier kernels disagree")
    return hz


def _null_vector(M: list[list[Series]]):
    """Cramer null vector of a rank-deficient matrix (list over columns), or ``None``."""
    rows, cols = len(M), len(M[0])
    for r in range(min(rows, cols - 1), -1, -1):
        for ci in combinations(range(cols), r + 1):
            for ri in combinations(range(rows), r):
                if r == 0:
                    vec = {ci[0]: Series.one(M[0][0].field)}
                    return vec
                minors = []
                for drop in range(r + 1):
                    cs = [c for t, c in enumerate(ci) if t != drop]
                    sub = [[M[i][c] for c in cs] for i in ri]
                    d = determinant(sub)
                    minors.append(-d if drop % 2 else d)
                if any(d.coeffs for d in minors):
                    return dict(zip(ci, minors))
    return None


def independent_over_Km(xs, m: int, kind: str = "phi", p: int | None = None) -> Certificate:
    """Search ``eps`` below ``p^m`` for a nonzero Wronskian; else exhibit a ``K_m`` relation."""
    xs = list(xs)
    F = xs[0].field
    p = F.p if p is None else p
    pm = p ** m
    n = len(xs)
    if n > pm:
        raise ValueError(f"at most p^m = {pm} series can be tested over K_{m}")
    if kind not in ("phi", "hasse"):
        raise ValueError("kind must be phi or hasse")
    saw_indeterminate = False
    tried = 0
    for eps in combinations(range(pm), n):
        tried += 1
        det = wronskian(kind, eps, xs)
        st = _status(det)
        if st == INDEPENDENT:
            return Certificate(INDEPENDENT, kind, eps=eps, det=det, tried=tried)
        saw_indeterminate |= st == INDETERMINATE
    if saw_indeterminate:
        return Certificate(INDETERMINATE, kind, tried=tried, note="Wronskians vanish only within precision")
    Phi = [[ops.phi(i, x, 1) for x in xs] for i in range(pm)]
    vec = _null_vector(Phi)
    if vec is None:
        return Certificate(INDETERMINATE, kind, tried=tried, note="no relation found")
    last = max(vec)
    den = vec[last]
    coeffs = []
    members = []
    for j in range(n):
        num = -vec.get(j, Series.zero(F))
        c = _divide(num, den) if not num.is_exact_zero() else Series.zero(F)
        coeffs.append(c)
        # num/den lies in K_m iff num * den^(p^m - 1) does
        members.append(in_Km(num * den ** (pm - 1), m, p))
    total = Series.zero(F)
    for c, x in zip(coeffs, xs):
        total = total + c * x
    ok = all(members) and total.is_zero()
    return Certificate(DEPENDENT if ok else INDETERMINATE, kind, dependency=coeffs, tried=tried,
                       exact=all(c.prec is None for c in coeffs),
                       note="" if ok else "relation found but not verified in K_m",
                       extra={"in_Km": members})

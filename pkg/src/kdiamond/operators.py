"""U(d), V(d) and Hecke T(m) acting on truncated q-expansions, plus an eigenform check."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .series import (
    InsufficientOrderError,
    TruncatedSeries,
    dissect,
)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime(n: int) -> bool:
    return n >= 2 and _divisors(n) == [1, n]


@dataclass(frozen=True)
class HeckeContext:
    """Weight and Dirichlet character for T(m).

    ``character`` is a table of values indexed by residue mod its length;
    the default ``(1,)`` is the character that is 1 on every integer.
    """

    weight: int
    character: tuple[int, ...] = (1,)

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError("weight must be positive")
        chi = tuple(int(c) for c in self.character)
        if not chi:
            raise ValueError("empty character table")
        object.__setattr__(self, "character", chi)
        if self.chi(1) != 1:
            raise ValueError("a Dirichlet character has chi(1) = 1")
        q = len(chi)
        for a in range(q):
            for b in range(q):
                if gcd(a, q) == 1 and gcd(b, q) == 1 and chi[a * b % q] != chi[a] * chi[b]:
                    raise ValueError(f"character table is not multiplicative at {a}*{b}")

    @classmethod
    def principal(cls, weight: int, level: int) -> HeckeContext:
        """Trivial character mod ``level``: 1 on units, 0 elsewhere."""
        return cls(weight, tuple(1 if gcd(a, level) == 1 else 0 for a in range(level)))

    def chi(self, d: int) -> int:
        return self.character[d % len(self.character)]


def apply_U(f: TruncatedSeries, d: int) -> TruncatedSeries:
    """sum a(d n) q^n."""
    return dissect(f, d, 0)


def apply_V(f: TruncatedSeries, d: int) -> TruncatedSeries:
    """sum a(n) q^{d n}; the order grows to d*order + d - 1."""
    if d < 1:
        raise ValueError("d must be positive")
    out = f.ring.zeros(d * f.order + d)
    out[::d] = f.coeffs
    return TruncatedSeries(out, f.ring, _trusted=True)


def apply_T(f: TruncatedSeries, m: int, ctx: HeckeContext) -> TruncatedSeries:
    """Hecke operator T(m) of weight ``ctx.weight``; output order floor(order / m).

    b(n) = sum over d | gcd(m, n) of chi(d) d^(k-1) a(m n / d^2).
    """
    if m < 1:
        raise ValueError("m must be positive")
    ring = f.ring
    order = f.order // m
    a = f.coeffs
    if is_prime(m):
        p = m
        c = ring.element(ctx.chi(p) * p ** (ctx.weight - 1))
        out = a[: p * order + 1: p].copy()
        lower = a[: order // p + 1]
        out[::p] = out[::p] + c * lower
    else:
        out = ring.zeros(order + 1)
        for d in _divisors(m):
            c = ring.element(ctx.chi(d) * d ** (ctx.weight - 1))
            if c == 0:
                continue
            # n = d t runs over multiples of d; the index m n / d^2 = (m/d) t
            t_max = order // d
            out[::d] = out[::d] + c * a[: (m // d) * t_max + 1: m // d]
            if not ring.exact:
                out %= ring.modulus
    if not ring.exact:
        out = np.mod(out, ring.modulus)
    return TruncatedSeries(out, ring, _trusted=True)


def apply_T_naive(f: TruncatedSeries, m: int, ctx: HeckeContext) -> TruncatedSeries:
    """Direct double loop over n and d | gcd(m, n); reference for :func:`apply_T`."""
    order = f.order // m
    vals = []
    for n in range(order + 1):
        total = 0
        for d in range(1, m + 1):
            if m % d == 0 and n % d == 0:
                total += ctx.chi(d) * d ** (ctx.weight - 1) * f[m * n // (d * d)]
        vals.append(total)
    return TruncatedSeries(vals, f.ring)


@dataclass(frozen=True)
class EigenResult:
    """``eigenvalue`` on success, else the first index where T(p) f != lambda f."""

    ok: bool
    eigenvalue: int | None = None
    failure_index: int | None = None

    def __bool__(self):
        return self.ok


def eigen_check(f: TruncatedSeries, p: int, ctx: HeckeContext, n_check: int) -> EigenResult:
    """Check T(p) f = lambda f coefficientwise up to ``n_check`` and return lambda.

    lambda is read off the first nonzero coefficient of f.  In modular mode
    that coefficient must be a unit; use exact mode otherwise.
    """
    if n_check > f.order // p:
        raise InsufficientOrderError(
            f"T({p}) of an order-{f.order} series is only valid to q^{f.order // p}, not q^{n_check}")
    nz = np.flatnonzero(f.coeffs[: n_check + 1] != 0)
    if not len(nz):
        raise ValueError("cannot read an eigenvalue off a zero series")
    n0 = int(nz[0])
    ring = f.ring
    b = apply_T(f, p, ctx)
    a0, b0 = f[n0], b[n0]
    if ring.exact:
        if b0 % a0:
            return EigenResult(False, failure_index=n0)
        lam = b0 // a0
    else:
        lam = b0 * ring.unit_inverse(a0) % ring.modulus
    expected = lam * f.coeffs[: n_check + 1]
    if not ring.exact:
        expected = np.mod(expected, ring.modulus)
    bad = np.flatnonzero(b.coeffs[: n_check + 1] != expected)
    if len(bad):
        return EigenResult(False, failure_index=int(bad[0]))
    return EigenResult(True, eigenvalue=int(lam))

"""Expansions of the infinite products (q^d;q^d)_inf, (-q^d;q^d)_inf, psi(q^d) and B_k(q).

Products are described symbolically by :class:`ProductSpec` and expanded
through the pentagonal number theorem, so every factor handed to the series
kernels has only O(sqrt(N/d)) nonzero terms.  A negated factor is rewritten
as (-q^d;q^d)_inf = (q^{2d};q^{2d})_inf / (q^d;q^d)_inf before expansion.

The one-line text form is ``scalar * q^s * P(d)^e * M(d)^e * ...``, where
``P(d)`` is (q^d;q^d)_inf and ``M(d)`` is (-q^d;q^d)_inf.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field

from .series import (
    EXACT,
    CoefficientRing,
    TruncatedSeries,
    dissect,
    divide,
    from_terms,
    linear_combine,
    mul,
    shift,
    truncate,
)


@dataclass(frozen=True)
class ProductFactor:
    """(q^step;q^step)_inf ** exponent, or (-q^step;q^step)_inf ** exponent when ``negated``."""

    step: int
    exponent: int
    negated: bool = False

    def __post_init__(self):
        if self.step < 1:
            raise ValueError(f"factor step must be >= 1, got {self.step}")
        if self.exponent == 0:
            raise ValueError("factor exponent must be nonzero")

    def __str__(self):
        return f"{'M' if self.negated else 'P'}({self.step})^{self.exponent}"


@dataclass(frozen=True)
class ProductSpec:
    """scalar * q^qpower * prod(factors)."""

    scalar: int = 1
    qpower: int = 0
    factors: tuple[ProductFactor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.qpower < 0:
            raise ValueError("qpower must be nonnegative")
        object.__setattr__(self, "factors", tuple(self.factors))

    def __str__(self):
        return " * ".join([str(self.scalar), f"q^{self.qpower}", *map(str, self.factors)])

    def simplified(self) -> ProductSpec:
        """Equivalent spec with only plain factors, one per step, exponents merged."""
        net: dict[int, int] = defaultdict(int)
        for f in self.factors:
            if f.negated:
                net[2 * f.step] += f.exponent
                net[f.step] -= f.exponent
            else:
                net[f.step] += f.exponent
        factors = tuple(ProductFactor(d, e) for d, e in sorted(net.items()) if e)
        return ProductSpec(self.scalar, self.qpower, factors)

    def __mul__(self, other: ProductSpec) -> ProductSpec:
        return ProductSpec(self.scalar * other.scalar, self.qpower + other.qpower,
                           self.factors + other.factors)


_FACTOR_RE = re.compile(r"^([PM])\((\d+)\)(?:\^\(?(-?\d+)\)?)?$")
_QPOW_RE = re.compile(r"^q(?:\^(\d+))?$")
_PSI_RE = re.compile(r"^psi(?:\((\d+)\))?(?:\^\(?(-?\d+)\)?)?$")


def parse_spec(text: str) -> ProductSpec:
    """Parse the ``scalar * q^s * P(d)^e * M(d)^e`` grammar.

    Parts may come in any order and repeat; integers multiply into the
    scalar and q-powers add.  ``psi(d)^e`` is accepted as shorthand for
    ``P(2d)^(2e) * P(d)^(-e)``.
    """
    scalar, qpower, factors = 1, 0, []
    parts = [p.strip() for p in text.replace(" ", "").split("*")]
    if not text.strip() or any(not p for p in parts):
        raise ValueError(f"malformed product spec {text!r}")
    for part in parts:
        if re.fullmatch(r"[+-]?\d+", part):
            scalar *= int(part)
        elif m := _QPOW_RE.match(part):
            qpower += int(m.group(1) or 1)
        elif m := _FACTOR_RE.match(part):
            e = int(m.group(3) or 1)
            if e:
                factors.append(ProductFactor(int(m.group(2)), e, m.group(1) == "M"))
        elif m := _PSI_RE.match(part):
            d, e = int(m.group(1) or 1), int(m.group(2) or 1)
            factors.extend(psi_spec(d).factors if e == 1 else
                           [ProductFactor(2 * d, 2 * e), ProductFactor(d, -e)])
        else:
            raise ValueError(f"cannot parse factor {part!r} in {text!r}")
    return ProductSpec(scalar, qpower, tuple(factors))


def pentagonal_terms(d: int, order: int):
    """Yield ``(exponent, sign)`` for the nonzero terms of (q^d;q^d)_inf up to ``order``."""
    yield 0, 1
    k = 1
    while True:
        e1 = d * k * (3 * k - 1) // 2
        if e1 > order:
            return
        sign = -1 if k % 2 else 1
        yield e1, sign
        e2 = e1 + d * k
        if e2 <= order:
            yield e2, sign
        k += 1


def pochhammer(d: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """(q^d;q^d)_inf to ``order``."""
    if d < 1:
        raise ValueError("d must be positive")
    return from_terms(pentagonal_terms(d, order), order, ring)


def jacobi_cube_terms(d: int, order: int):
    """Yield ``(exponent, coeff)`` for (q^d;q^d)_inf^3 = sum (-1)^n (2n+1) q^{d n(n+1)/2}."""
    for n, e in enumerate(triangular_exponents(d, order)):
        yield e, (-1) ** n * (2 * n + 1)


def pochhammer_cube(d: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """(q^d;q^d)_inf^3 to ``order``, sparse by Jacobi's identity."""
    if d < 1:
        raise ValueError("d must be positive")
    return from_terms(jacobi_cube_terms(d, order), order, ring)


def expand_spec(spec: ProductSpec, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Expand ``spec`` to ``order``.

    Each plain factor P(d)^e is applied as |e| // 3 sparse cubes and
    |e| % 3 sparse pentagonal series, multiplying for e > 0 and dividing
    for e < 0, so no dense series is ever used as a divisor.
    """
    simple = spec.simplified()
    # q^s only moves coefficients up, so the product body is needed to order - s
    body_order = order - simple.qpower
    if body_order < 0:
        return from_terms([], order, ring)
    result = from_terms([(0, 1)], body_order, ring)
    # numerators first keeps the running series smallest when it is still sparse
    for f in sorted(simple.factors, key=lambda f: f.exponent < 0):
        cubes, singles = divmod(abs(f.exponent), 3)
        pieces = ([pochhammer_cube(f.step, body_order, ring)] * cubes
                  + [pochhammer(f.step, body_order, ring)] * singles)
        for piece in pieces:
            result = mul(result, piece) if f.exponent > 0 else divide(result, piece)
    out = shift(result, simple.qpower)
    return linear_combine([(simple.scalar, out)])


def broken_diamond_spec(k: int) -> ProductSpec:
    """B_k(q) = (-q;q) / ((q;q)^2 (-q^{2k+1};q^{2k+1})), unsimplified."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return ProductSpec(1, 0, (ProductFactor(1, 1, True), ProductFactor(1, -2),
                              ProductFactor(2 * k + 1, -1, True)))


def broken_diamond_gf(k: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """sum Delta_k(n) q^n to ``order``.

    Expanded as (q^2;q^2)(q^{2k+1};q^{2k+1}) / ((q;q)^3 (q^{4k+2};q^{4k+2})),
    which needs two sparse divisions instead of three inversions.
    """
    return expand_spec(broken_diamond_spec(k).simplified(), order, ring)


def psi_spec(d: int = 1) -> ProductSpec:
    """Product form of psi(q^d): (q^{2d};q^{2d})^2 / (q^d;q^d)."""
    return ProductSpec(1, 0, (ProductFactor(2 * d, 2), ProductFactor(d, -1)))


def triangular_exponents(d: int, order: int):
    n = 0
    while (e := d * n * (n + 1) // 2) <= order:
        yield e
        n += 1


def psi_series(d: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """psi(q^d) = sum_n q^{d n(n+1)/2} to ``order``."""
    if d < 1:
        raise ValueError("d must be positive")
    return from_terms(((e, 1) for e in triangular_exponents(d, order)), order, ring)


def dissection_A(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """The series A with psi(q) = A(q^3) + q psi(q^9), i.e. the 0 mod 3 part of psi."""
    return truncate(dissect(psi_series(1, 3 * order, ring), 3, 0), order)

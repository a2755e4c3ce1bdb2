"""Named q-series congruences behind the mod-3 families, checked at finite order.

Each identity is a pair of recipes ``(order, ring) -> TruncatedSeries`` that
are expanded mod M and compared coefficient by coefficient up to the
requested order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .congruences import DEFAULT_CACHE, ExpansionCache
from .operators import HeckeContext, apply_T, apply_U
from .qproducts import ProductFactor, ProductSpec, expand_spec, pochhammer, psi_series
from .series import (
    CoefficientRing,
    TruncatedSeries,
    Comparison,
    dissect,
    divide,
    eq_up_to,
    linear_combine,
    mul,
    one,
    power,
    ring_mod,
    shift,
    truncate,
)

Recipe = Callable[[int, CoefficientRing], TruncatedSeries]


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Recipe
    rhs: Recipe
    modulus: int
    order: int
    description: str = ""


@dataclass(frozen=True)
class IdentityResult:
    name: str
    modulus: int
    order: int
    passed: bool
    mismatch: int | None = None

    def __bool__(self):
        return self.passed


def delta_subseries(k: int, A: int, B: int, order: int, ring: CoefficientRing,
                    cache: ExpansionCache | None = None) -> TruncatedSeries:
    """sum_n Delta_k(A n + B) q^n to ``order``."""
    cache = DEFAULT_CACHE if cache is None else cache
    full = cache.get(f"delta:{k}", ring.modulus, A * order + B)
    return truncate(dissect(full, A, B), order)


def _two_q3_psi15_sq(order: int, ring: CoefficientRing) -> TruncatedSeries:
    return linear_combine([(2, shift(power(psi_series(15, order, ring), 2), 3))])


def _final_offset(l: int) -> int:
    sq = 3 ** (2 * l)
    if (sq - 1) % 4:
        raise ValueError(f"(3^{2 * l} - 1)/4 is not an integer")
    return 3 * (sq - 1) // 4 + 1


def _lemma31_lhs(order, ring):
    body = delta_subseries(2, 3, 1, order, ring)
    return mul(power(psi_series(15, order + 4, ring), 2), shift(body, 4))


def _lemma31_rhs(order, ring):
    return linear_combine([(2, shift(power(psi_series(5, order, ring), 8), 5))])


def _radu_base_rhs(order, ring):
    spec = ProductSpec(2, 1, (ProductFactor(10, 4), ProductFactor(5, -2)))
    return expand_spec(spec, order, ring)


def _u_step_lhs(order, ring):
    # 2 q^5 psi(q^5)^8 | U(3), needs the source to order 3*order
    src = linear_combine([(2, shift(power(psi_series(5, 3 * order, ring), 8), 5))])
    return apply_U(src, 3)


def _u_step_rhs(order, ring):
    # psi(q^5)^2 sum Delta_2(9n - 11) q^n; indices below 0 vanish, so it starts at q^2 with Delta_2(7)
    body = shift(delta_subseries(2, 9, 7, order, ring), 2)
    return mul(power(psi_series(5, order + 2, ring), 2), body)


def _t3_lhs(order, ring):
    src = linear_combine([(2, shift(power(psi_series(5, 3 * order, ring), 8), 5))])
    return apply_T(src, 3, HeckeContext(4))


def _t3_rhs(order, ring):
    return linear_combine([(2, shift(power(psi_series(5, order, ring), 8), 5))])


def _cube_lhs(order, ring):
    # built by plain multiplication so the check does not lean on Jacobi's identity
    p1 = pochhammer(1, order, ring)
    return divide(mul(mul(p1, p1), p1), pochhammer(3, order, ring))


def _identity_table(order: int) -> dict[str, IdentityCheck]:
    return {
        "radu-base": IdentityCheck(
            "radu-base", lambda n, r: delta_subseries(2, 3, 1, n, r), _radu_base_rhs, 3, order,
            "sum Delta_2(3n+1) q^n = 2q (q^10;q^10)^4 / (q^5;q^5)^2 mod 3"),
        "lemma31": IdentityCheck(
            "lemma31", _lemma31_lhs, _lemma31_rhs, 3, order,
            "psi(q^15)^2 sum Delta_2(3n+1) q^(n+4) = 2 q^5 psi(q^5)^8 mod 3"),
        "u-step": IdentityCheck(
            "u-step", _u_step_lhs, _u_step_rhs, 3, order,
            "2 q^5 psi(q^5)^8 | U(3) = psi(q^5)^2 sum Delta_2(9n-11) q^n mod 3"),
        "t3-eigen": IdentityCheck(
            "t3-eigen", _t3_lhs, _t3_rhs, 3, order,
            "2 q^5 psi(q^5)^8 | T(3) = 2 q^5 psi(q^5)^8 mod 3 (weight 4)"),
        "nine-generate": IdentityCheck(
            "nine-generate", lambda n, r: delta_subseries(2, 9, 7, n, r), _two_q3_psi15_sq, 3, order,
            "sum Delta_2(9n+7) q^n = 2 q^3 psi(q^15)^2 mod 3"),
        "eightyone-generate": IdentityCheck(
            "eightyone-generate", lambda n, r: delta_subseries(2, 81, 61, n, r), _two_q3_psi15_sq, 3, order,
            "sum Delta_2(81n+61) q^n = 2 q^3 psi(q^15)^2 mod 3"),
        "cube": IdentityCheck(
            "cube", _cube_lhs, lambda n, r: one(n, r), 3, order,
            "(q;q)^3 / (q^3;q^3) = 1 mod 3"),
    }


IDENTITY_NAMES = ("radu-base", "lemma31", "u-step", "t3-eigen", "nine-generate",
                  "eightyone-generate", "final:<l>", "cube")


def identity(name: str, order: int) -> IdentityCheck:
    """Look up a named identity, e.g. ``identity("final:2", 5000)``."""
    if name.startswith("final:"):
        l = int(name.split(":", 1)[1])
        if l < 1:
            raise ValueError("final:<l> needs l >= 1")
        B = _final_offset(l)
        A = 3 ** (2 * l)
        return IdentityCheck(
            name, lambda n, r: delta_subseries(2, A, B, n, r), _two_q3_psi15_sq, 3, order,
            f"sum Delta_2({A}n+{B}) q^n = 2 q^3 psi(q^15)^2 mod 3")
    table = _identity_table(order)
    if name not in table:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITY_NAMES)}")
    return table[name]


def verify_identity(ic: IdentityCheck) -> IdentityResult:
    ring = ring_mod(ic.modulus)
    lhs = ic.lhs(ic.order, ring)
    rhs = ic.rhs(ic.order, ring)
    cmp: Comparison = eq_up_to(lhs, rhs, ic.order)
    return IdentityResult(ic.name, ic.modulus, ic.order, cmp.equal, cmp.mismatch)

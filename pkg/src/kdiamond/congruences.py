"""Ramanujan-type congruence families for Delta_k(n), their verification, and a scanner.

A family generator returns concrete :class:`ProgressionCongruence` objects,
each claiming coefficient(A n + B) = 0 mod M for every n >= n_min.  They are
checked against one modular expansion of the generating function, which is
cached so that all congruences sharing a (series, modulus) pair reuse it.
"""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .operators import is_prime
from .qproducts import broken_diamond_gf, expand_spec, parse_spec
from .series import InsufficientOrderError, TruncatedSeries, ring_mod, truncate


class FamilyParameterError(ValueError):
    pass


# -- generating functions ---------------------------------------------------

_NAMED_GF: dict[str, Callable] = {}


def register_gf(name: str, builder: Callable) -> None:
    """Make ``builder(order, ring)`` available under ``name`` for verification and scanning."""
    _NAMED_GF[name] = builder


def gf_series(gf: str, order: int, modulus: int) -> TruncatedSeries:
    """Expand a generating function by name.

    ``"delta:K"`` is B_K(q); ``"spec:<product>"`` is any product in the
    ``P(d)^e`` grammar; other names come from :func:`register_gf`.
    """
    ring = ring_mod(modulus)
    kind, _, arg = gf.partition(":")
    if kind == "delta":
        return broken_diamond_gf(int(arg), order, ring)
    if kind == "spec":
        return expand_spec(parse_spec(arg), order, ring)
    if gf in _NAMED_GF:
        return _NAMED_GF[gf](order, ring)
    raise KeyError(f"unknown generating function {gf!r}")


class ExpansionCache:
    """Expansions keyed by (gf, modulus); a longer stored expansion serves shorter requests."""

    def __init__(self):
        self._store: dict[tuple[str, int], TruncatedSeries] = {}
        self._lock = threading.Lock()

    def get(self, gf: str, modulus: int, order: int) -> TruncatedSeries:
        key = (gf, modulus)
        with self._lock:
            have = self._store.get(key)
            if have is None or have.order < order:
                have = gf_series(gf, order, modulus)
                self._store[key] = have
        return truncate(have, order)

    def clear(self) -> None:
        with self._lock:
            self._store.clear()


DEFAULT_CACHE = ExpansionCache()


# -- progressions -----------------------------------------------------------

@dataclass(frozen=True)
class ProgressionCongruence:
    """coefficient of q^(A n + B) in ``gf`` is 0 mod M for n >= n_min."""

    gf: str
    A: int
    B: int
    M: int
    n_min: int = 0
    family: str = ""
    note: str = ""

    def __post_init__(self):
        if self.A < 1:
            raise ValueError(f"A must be positive, got {self.A}")
        if not 0 <= self.B < self.A:
            raise ValueError(f"B must lie in [0, A), got B={self.B}, A={self.A}")
        if self.M < 2:
            raise ValueError(f"modulus must be >= 2, got {self.M}")
        if self.n_min < 0:
            raise ValueError("n_min must be nonnegative")

    def __str__(self):
        head = self.gf.replace("delta:", "Delta_")
        tail = f" for n >= {self.n_min}" if self.n_min else ""
        return f"{head}({self.A}n+{self.B}) = 0 mod {self.M}{tail}"


def _exact_quarter(numerator: int, what: str) -> int:
    if numerator % 4:
        raise FamilyParameterError(f"{what} = {numerator}/4 is not an integer")
    return numerator // 4


def _require_prime(p: int, family: str) -> None:
    if not is_prime(p):
        raise FamilyParameterError(f"{family}: p = {p} is not prime")


def main_theorem(l: int) -> list[ProgressionCongruence]:
    """Delta_2(3^(2l+1) n + 3(3^(2l)-1)/4 + c 3^(2l) + 1) = 0 mod 3, c in {1, 2}."""
    if l < 1:
        raise FamilyParameterError(f"main_theorem: l must be >= 1, got {l}")
    sq = 3 ** (2 * l)
    base = 3 * _exact_quarter(sq - 1, f"(3^{2 * l} - 1)/4") + 1
    return [ProgressionCongruence("delta:2", 3 * sq, base + c * sq, 3, family=f"main_theorem(l={l})")
            for c in (1, 2)]


def chan(l: int) -> list[ProgressionCongruence]:
    """Delta_2(5^(l+1) n + 3(5^l-1)/4 + c 5^l + 1) = 0 mod 5, c in {2, 4}."""
    if l < 1:
        raise FamilyParameterError(f"chan: l must be >= 1, got {l}")
    pw = 5 ** l
    base = 3 * _exact_quarter(pw - 1, f"(5^{l} - 1)/4") + 1
    note = "read with A = 5^(l+1) as the coefficient of n"
    return [ProgressionCongruence("delta:2", 5 * pw, base + c * pw, 5, family=f"chan(l={l})", note=note)
            for c in (2, 4)]


def radu_sellers(p: int) -> list[ProgressionCongruence]:
    """Delta_2(3p^2 n + 3(p(4k+3)-1)/4 + 1) = 0 mod 3 for 0 <= k < p, k != (p-3)/4."""
    _require_prime(p, "radu_sellers")
    if p % 4 != 3:
        raise FamilyParameterError(f"radu_sellers: need p = 3 mod 4, got p = {p}")
    skip = (p - 3) // 4
    out = []
    for k in range(p):
        if k == skip:
            continue
        B = 3 * _exact_quarter(p * (4 * k + 3) - 1, f"(p(4k+3) - 1)/4 at k={k}") + 1
        out.append(ProgressionCongruence("delta:2", 3 * p * p, B, 3, family=f"radu_sellers(p={p})"))
    return sorted(out, key=lambda c: c.B)


def paule_radu(p: int) -> list[ProgressionCongruence]:
    """Delta_2(5p^2 n + 4p - (p-1)/4) = 0 mod 5 for primes p = 13, 17 mod 20."""
    _require_prime(p, "paule_radu")
    if p % 20 not in (13, 17):
        raise FamilyParameterError(f"paule_radu: need p = 13 or 17 mod 20, got p = {p}")
    B = 4 * p - _exact_quarter(p - 1, "(p - 1)/4")
    return [ProgressionCongruence("delta:2", 5 * p * p, B, 5, family=f"paule_radu(p={p})")]


def fifteen() -> list[ProgressionCongruence]:
    return [ProgressionCongruence("delta:2", 15, B, 3, family="fifteen") for B in (1, 7, 10, 13)]


def hs_mod2() -> list[ProgressionCongruence]:
    return ([ProgressionCongruence("delta:1", 4, B, 2, n_min=1, family="hs_mod2") for B in (2, 3)]
            + [ProgressionCongruence("delta:2", 10, B, 2, n_min=1, family="hs_mod2") for B in (2, 6)])


def ap_delta1() -> list[ProgressionCongruence]:
    return [ProgressionCongruence("delta:1", 2, 1, 3, n_min=3, family="ap_delta1")]


FAMILIES: dict[str, Callable[..., list[ProgressionCongruence]]] = {
    "main_theorem": main_theorem,
    "chan": chan,
    "radu_sellers": radu_sellers,
    "paule_radu": paule_radu,
    "fifteen": fifteen,
    "hs_mod2": hs_mod2,
    "ap_delta1": ap_delta1,
}


def gen_family(name: str, **params) -> list[ProgressionCongruence]:
    """Concrete progressions of a named family, e.g. ``gen_family("chan", l=2)``."""
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise FamilyParameterError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise FamilyParameterError(f"{name}: bad parameters {params}: {exc}") from None


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class CongruenceReport:
    congruence: ProgressionCongruence
    n_min: int
    n_max: int
    samples: int
    passed: bool
    counterexample: tuple[int, int] | None = None
    # residues for n < n_min, reported but never failing the check
    below_range: tuple[tuple[int, int], ...] = field(default=())

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        c = self.congruence
        return {
            "gf": c.gf, "A": c.A, "B": c.B, "M": c.M, "family": c.family,
            "n_min": self.n_min, "n_max": self.n_max, "samples": self.samples,
            "status": self.status,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "below_range": [list(x) for x in self.below_range],
            **({"note": c.note} if c.note else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_progression(c: ProgressionCongruence, order: int,
                       cache: ExpansionCache | None = None) -> CongruenceReport:
    """Check every coefficient at A n + B <= ``order`` with n >= n_min."""
    need = c.A * c.n_min + c.B
    if order < need:
        raise InsufficientOrderError(f"{c} needs order >= {need}, got {order}")
    cache = DEFAULT_CACHE if cache is None else cache
    series = cache.get(c.gf, c.M, order)
    vals = series.coeffs[c.B::c.A]
    n_max = len(vals) - 1
    checked = vals[c.n_min:]
    bad = np.flatnonzero(checked != 0)
    below = tuple((n, int(vals[n])) for n in range(min(c.n_min, n_max + 1)))
    counter = None
    if len(bad):
        n = c.n_min + int(bad[0])
        counter = (n, int(vals[n]))
    return CongruenceReport(c, c.n_min, n_max, n_max - c.n_min + 1, counter is None, counter, below)


def verify_many(congruences: list[ProgressionCongruence], order: int,
                cache: ExpansionCache | None = None, workers: int = 4) -> list[CongruenceReport]:
    """Verify in parallel; expansions are built first, results come back sorted."""
    cache = DEFAULT_CACHE if cache is None else cache
    for gf, M in sorted({(c.gf, c.M) for c in congruences}):
        cache.get(gf, M, order)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(lambda c: verify_progression(c, order, cache), congruences))
    return sorted(reports, key=lambda r: (r.congruence.gf, r.congruence.M, r.congruence.A, r.congruence.B))


# -- scanning ---------------------------------------------------------------

@dataclass(frozen=True)
class ScanHit:
    A: int
    B: int
    samples: int
    subsumed: bool = False

    def to_json(self) -> str:
        return json.dumps({"A": self.A, "B": self.B, "samples": self.samples, "subsumed": self.subsumed})


def scan_congruences(gf: str, M: int, a_max: int, order: int, min_samples: int = 50,
                     n_min: int = 0, cache: ExpansionCache | None = None) -> list[ScanHit]:
    """Every (A, B) with A <= a_max whose available coefficients all vanish mod M.

    A progression is reported only if at least ``min_samples`` coefficients
    were checked, and only after it survives a recheck at twice ``order``.
    Hits implied by a reported (A', B') with A' | A and B = B' mod A' are
    flagged ``subsumed``.
    """
    if min_samples < 1:
        raise ValueError("min_samples must be >= 1")
    cache = DEFAULT_CACHE if cache is None else cache
    coeffs = cache.get(gf, M, order).coeffs
    candidates = []
    for A in range(1, a_max + 1):
        for B in range(A):
            vals = coeffs[B::A][n_min:]
            if len(vals) >= min_samples and not np.any(vals):
                candidates.append((A, B, len(vals)))
    hits = []
    for A, B, samples in candidates:
        report = verify_progression(ProgressionCongruence(gf, A, B, M, n_min=n_min), 2 * order, cache)
        if not report.passed:
            continue
        subsumed = any(A % h.A == 0 and h.A < A and B % h.A == h.B for h in hits)
        hits.append(ScanHit(A, B, samples, subsumed))
    return hits

"""Truncated formal power series in q.

A :class:`TruncatedSeries` stores the coefficients of q^0 .. q^order of a
series together with its coefficient ring (exact integers, or integers mod
m).  Every operation computes the order up to which its output is still
correct, and reading or comparing beyond that order is an error.

Modular coefficients live in int64 arrays reduced into [0, m); exact
coefficients live in object arrays of Python ints.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels

MAX_MODULUS = 2**31


class SeriesError(ValueError):
    """Base class for truncated-series errors."""


class RingMismatchError(SeriesError):
    pass


class NotInvertibleError(SeriesError, ArithmeticError):
    pass


class InsufficientOrderError(SeriesError):
    pass


class IncompatibleModulusError(SeriesError):
    pass


@dataclass(frozen=True)
class CoefficientRing:
    """Exact integers (``modulus == 0``) or integers mod ``modulus``."""

    modulus: int = 0

    def __post_init__(self):
        m = self.modulus
        if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
            raise TypeError(f"modulus must be an integer, got {m!r}")
        if m == 1 or m < 0:
            raise ValueError(f"modulus must be 0 (exact) or >= 2, got {m}")
        if m >= MAX_MODULUS:
            raise ValueError(f"modulus must be < 2**31, got {m}")
        object.__setattr__(self, "modulus", int(m))

    @property
    def exact(self) -> bool:
        return self.modulus == 0

    def __str__(self):
        return "ZZ" if self.exact else f"ZZ/{self.modulus}"

    def coerce(self, values) -> np.ndarray:
        """Return a fresh array of ``values`` in this ring's storage form."""
        arr = np.asarray(values)
        if self.exact:
            out = np.empty(arr.shape, dtype=object)
            out[...] = np.array([int(v) for v in arr.ravel()], dtype=object).reshape(arr.shape)
            return out
        if arr.dtype == object:
            return np.array([int(v) % self.modulus for v in arr.ravel()], dtype=np.int64)
        return np.mod(arr.astype(np.int64, copy=True), self.modulus)

    def element(self, c: int) -> int:
        c = int(c)
        return c if self.exact else c % self.modulus

    def unit_inverse(self, c: int) -> int:
        """Inverse of ``c`` in the ring; raises :class:`NotInvertibleError`."""
        c = self.element(c)
        if self.exact:
            if c in (1, -1):
                return c
            raise NotInvertibleError(f"{c} is not a unit in ZZ")
        try:
            return pow(c, -1, self.modulus)
        except ValueError:
            raise NotInvertibleError(f"{c} is not a unit mod {self.modulus}") from None

    def zeros(self, n: int) -> np.ndarray:
        if self.exact:
            out = np.empty(n, dtype=object)
            out[:] = 0
            return out
        return np.zeros(n, dtype=np.int64)


EXACT = CoefficientRing(0)


def ring_mod(m: int) -> CoefficientRing:
    """The ring for modulus ``m``; ``m == 0`` selects exact integers."""
    return CoefficientRing(m)


class TruncatedSeries:
    """Immutable truncated q-series: coefficients of q^0..q^order in ``ring``."""

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, coeffs, ring: CoefficientRing = EXACT, *, _trusted: bool = False):
        arr = coeffs if _trusted else ring.coerce(coeffs)
        if arr.ndim != 1 or len(arr) == 0:
            raise ValueError("a truncated series needs at least the q^0 coefficient")
        arr.flags.writeable = False
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "order", len(arr) - 1)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise InsufficientOrderError(f"coefficient q^{n} is outside the valid window 0..{self.order}")
        return int(self.coeffs[n])

    def __len__(self):
        return self.order + 1

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.ring == other.ring and self.order == other.order
                and bool(np.array_equal(self.coeffs, other.coeffs)))

    def __hash__(self):
        return hash((self.ring, self.order, tuple(self.tolist()[:32])))

    def __repr__(self):
        head = self.tolist()[:8]
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries({head}{more}, order={self.order}, ring={self.ring})"

    def __add__(self, other):
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other):
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self):
        return linear_combine([(-1, self)])

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return linear_combine([(int(other), self)])

    def __rmul__(self, other):
        return linear_combine([(int(other), self)])

    def __pow__(self, e):
        return power(self, e)


def _wrap(arr: np.ndarray, ring: CoefficientRing) -> TruncatedSeries:
    return TruncatedSeries(arr, ring, _trusted=True)


def _check_same_ring(series: Iterable[TruncatedSeries]) -> CoefficientRing:
    rings = {s.ring for s in series}
    if len(rings) != 1:
        raise RingMismatchError(f"operands live in different rings: {sorted(map(str, rings))}")
    return rings.pop()


# -- construction -----------------------------------------------------------

def from_terms(terms: Iterable[tuple[int, int]], order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Series with the given ``(exponent, coefficient)`` terms; terms past ``order`` are dropped."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    out = ring.zeros(order + 1)
    seen = set()
    for e, c in terms:
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        if e in seen:
            raise ValueError(f"exponent {e} given twice")
        seen.add(e)
        if e <= order:
            out[e] = ring.element(c)
    return _wrap(out, ring)


def zero(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    return _wrap(ring.zeros(order + 1), ring)


def one(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    return from_terms([(0, 1)], order, ring)


def truncate(a: TruncatedSeries, order: int) -> TruncatedSeries:
    if order > a.order:
        raise InsufficientOrderError(f"cannot extend a series of order {a.order} to {order}")
    if order < 0:
        raise ValueError("order must be nonnegative")
    return a if order == a.order else _wrap(a.coeffs[: order + 1].copy(), a.ring)


# -- ring operations --------------------------------------------------------

def linear_combine(pairs: Sequence[tuple[int, TruncatedSeries]]) -> TruncatedSeries:
    """Coefficientwise sum of ``scalar * series``; the result order is the minimum input order."""
    if not pairs:
        raise ValueError("linear_combine needs at least one term")
    ring = _check_same_ring(s for _, s in pairs)
    order = min(s.order for _, s in pairs)
    acc = ring.zeros(order + 1)
    for scalar, s in pairs:
        acc = acc + ring.element(scalar) * s.coeffs[: order + 1]
        if not ring.exact:
            acc %= ring.modulus
    return _wrap(acc, ring)


def _sparse_terms(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    idx = np.flatnonzero(arr != 0).astype(np.int64)
    return idx, arr[idx]


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, driven by whichever operand has fewer nonzero terms."""
    ring = _check_same_ring((a, b))
    order = min(a.order, b.order)
    x, y = a.coeffs[: order + 1], b.coeffs[: order + 1]
    if np.count_nonzero(x) > np.count_nonzero(y):
        x, y = y, x
    idx, val = _sparse_terms(x)
    if ring.exact:
        out = kernels.mul_sparse_exact(y, idx, val, order)
    else:
        out = kernels.mul_sparse_mod(np.ascontiguousarray(y), idx, np.ascontiguousarray(val), order, ring.modulus)
    return _wrap(out, ring)


def divide(num: TruncatedSeries, a: TruncatedSeries) -> TruncatedSeries:
    """The series ``b`` with ``a * b = num``, by forward substitution over a's nonzero terms."""
    ring = _check_same_ring((num, a))
    order = min(num.order, a.order)
    coeffs = a.coeffs[: order + 1]
    inv_a0 = ring.unit_inverse(coeffs[0])
    idx, val = _sparse_terms(coeffs)
    idx, val = idx[idx > 0], val[idx > 0]
    n = num.coeffs[: order + 1]
    if ring.exact:
        out = kernels.div_sparse_exact(n, idx, val, inv_a0, order)
    else:
        out = kernels.div_sparse_mod(np.ascontiguousarray(n), idx, np.ascontiguousarray(val),
                                     inv_a0, order, ring.modulus)
    return _wrap(out, ring)


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse up to ``a.order``; the constant term must be a unit."""
    return divide(one(a.order, a.ring), a)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """``a**e`` by binary exponentiation; negative ``e`` inverts first."""
    e = int(e)
    if e < 0:
        return power(inverse(a), -e)
    result = one(a.order, a.ring)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


# -- structural operations --------------------------------------------------

def dissect(a: TruncatedSeries, d: int, r: int) -> TruncatedSeries:
    """The series sum_n a(d n + r) q^n, of order floor((a.order - r) / d)."""
    if d < 1:
        raise ValueError("d must be positive")
    if not 0 <= r < d:
        raise ValueError(f"residue {r} outside [0, {d})")
    if r > a.order:
        raise InsufficientOrderError(f"no valid coefficient at residue {r} mod {d} below order {a.order}")
    return _wrap(a.coeffs[r::d].copy(), a.ring)


def shift(a: TruncatedSeries, s: int) -> TruncatedSeries:
    """Multiply by q^s."""
    if s < 0:
        raise ValueError("negative shifts would need Laurent series")
    out = a.ring.zeros(a.order + s + 1)
    out[s:] = a.coeffs
    return _wrap(out, a.ring)


def reduce_mod(a: TruncatedSeries, m: int) -> TruncatedSeries:
    """Reduce coefficients mod ``m``; the source ring must be exact or a multiple of ``m``."""
    target = ring_mod(m)
    if target.exact:
        raise IncompatibleModulusError("reduce_mod needs m >= 2")
    src = a.ring.modulus
    if src and src % m:
        raise IncompatibleModulusError(f"cannot reduce mod {m} from ZZ/{src}")
    if src == m:
        return a
    return _wrap(target.coerce(a.coeffs), target)


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`eq_up_to`; truthy iff the windows agree."""

    equal: bool
    mismatch: int | None = None

    def __bool__(self):
        return self.equal


def eq_up_to(a: TruncatedSeries, b: TruncatedSeries, n: int) -> Comparison:
    """Compare coefficients of q^0..q^n, refusing to look past either validity order."""
    _check_same_ring((a, b))
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > a.order or n > b.order:
        raise InsufficientOrderError(f"cannot compare to q^{n}: orders are {a.order} and {b.order}")
    diff = np.flatnonzero(a.coeffs[: n + 1] != b.coeffs[: n + 1])
    if len(diff):
        return Comparison(False, int(diff[0]))
    return Comparison(True)


# -- coefficient dump format ------------------------------------------------

def write_csv(a: TruncatedSeries, fh) -> None:
    """Write ``# modulus=<m>`` then ``n,coeff`` rows."""
    fh.write(f"# modulus={a.ring.modulus}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "coeff"])
    for n, c in enumerate(a.coeffs):
        w.writerow([n, int(c)])


def to_csv(a: TruncatedSeries) -> str:
    buf = io.StringIO()
    write_csv(a, buf)
    return buf.getvalue()


def read_csv(fh) -> TruncatedSeries:
    """Inverse of :func:`write_csv`; exponents must be exactly 0..N in order."""
    first = fh.readline().strip()
    if not first.startswith("# modulus="):
        raise ValueError(f"missing '# modulus=' header, got {first!r}")
    ring = ring_mod(int(first.split("=", 1)[1]))
    rows = csv.reader(fh)
    header = next(rows, None)
    if header != ["n", "coeff"]:
        raise ValueError(f"expected header n,coeff, got {header!r}")
    coeffs = []
    for expected, row in enumerate(rows):
        if not row:
            continue
        n, c = int(row[0]), int(row[1])
        if n != expected:
            raise ValueError(f"row for q^{n} found where q^{expected} was expected")
        coeffs.append(c)
    if not coeffs:
        raise ValueError("no coefficient rows")
    return TruncatedSeries(coeffs, ring)

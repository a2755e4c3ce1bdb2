import pytest
from hypothesis import given, settings, strategies as st

from kdiamond.operators import (
    EigenResult,
    HeckeContext,
    apply_T,
    apply_T_naive,
    apply_U,
    apply_V,
    eigen_check,
    is_prime,
)
from kdiamond.qproducts import psi_series
from kdiamond.series import (
    InsufficientOrderError,
    from_terms,
    power,
    reduce_mod,
    ring_mod,
    shift,
    zero,
)
from props import check_uvt, series_from

ODD_PRIMES = [p for p in range(3, 38) if is_prime(p)]
CTX4 = HeckeContext(4)


def q_psi8_by_loops(order):
    """q psi(q)^8 by eight plain-list convolutions; independent of the library's mul."""
    psi = [0] * (order + 1)
    n = 0
    while n * (n + 1) // 2 <= order:
        psi[n * (n + 1) // 2] = 1
        n += 1
    acc = [1] + [0] * order
    for _ in range(8):
        acc = [sum(acc[j] * psi[i - j] for j in range(i + 1) if psi[i - j]) for i in range(order + 1)]
    return [0] + acc[:order]


@pytest.fixture(scope="module")
def q_psi8():
    return shift(power(psi_series(1, 1999), 8), 1)


def test_apply_U_examples():
    f = psi_series(1, 300)
    u = apply_U(f, 3)
    brute = sorted({t // 3 for t in (n * (n + 1) // 2 for n in range(30)) if t % 3 == 0 and t <= 300})
    assert [n for n, c in enumerate(u.tolist()) if c] == brute
    assert brute[:5] == [0, 1, 2, 5, 7]
    assert apply_U(f, 1) == f
    assert apply_U(apply_V(f, 4), 4) == f
    assert u.order == 100


def test_apply_V_examples():
    f = psi_series(1, 40)
    assert apply_V(f, 5) == psi_series(5, 204)
    assert apply_V(f, 5).order == 5 * 40 + 4
    assert apply_V(f, 1) == f
    assert apply_V(zero(7), 3).is_zero()


def test_apply_T_examples(q_psi8):
    t3 = apply_T(q_psi8, 3, CTX4)
    assert t3.order == 1999 // 3
    assert t3.tolist() == [28 * c for c in q_psi8.tolist()[: t3.order + 1]]
    assert apply_T(zero(50), 5, CTX4).is_zero()


def test_eigenvalue_law_by_independent_expansion():
    coeffs = q_psi8_by_loops(40)
    # coefficient of q^p is 1 + p^3 for odd primes, and 8 at q^2
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]:
        assert coeffs[p] == 1 + p**3
    assert coeffs[2] == 8 and coeffs[3] == 28
    assert coeffs[:8] == [0, 1, 8, 28, 64, 126, 224, 344]


def test_eigen_check_examples(q_psi8):
    res = eigen_check(q_psi8, 3, CTX4, 1999 // 3)
    assert res == EigenResult(True, eigenvalue=28)
    for p in ODD_PRIMES:
        assert eigen_check(q_psi8, p, CTX4, 1999 // p).eigenvalue == 1 + p**3


def test_eigen_check_p2_needs_level_two_character(q_psi8):
    # with chi = 1 at 2, T(2) is not proportional (b(2) = a(4) + 8 a(1) = 72 != 8 a(2))
    assert eigen_check(q_psi8, 2, CTX4, 999) == EigenResult(False, failure_index=2)
    res = eigen_check(q_psi8, 2, HeckeContext.principal(4, 2), 999)
    assert res.eigenvalue == 8 == q_psi8[2]


def test_eigen_check_detects_perturbation(q_psi8):
    g = q_psi8 + from_terms([(2, 1)], q_psi8.order)
    # lambda = b(1)/a(1) = a(3) = 28; b(2) = a(6) = 224 but 28 * a(2) = 28 * 9
    a = q_psi8_by_loops(20)
    assert a[6] != 28 * (a[2] + 1)
    res = eigen_check(g, 3, CTX4, 6)
    assert not res and res.failure_index == 2


def test_eigen_check_modular_and_errors(q_psi8):
    m3 = reduce_mod(q_psi8, 3)
    assert eigen_check(m3, 3, CTX4, 600).eigenvalue == 28 % 3
    with pytest.raises(InsufficientOrderError):
        eigen_check(q_psi8, 3, CTX4, 700)
    with pytest.raises(ValueError):
        eigen_check(zero(100), 3, CTX4, 20)
    # leading coefficient 3 is not a unit mod 3
    with pytest.raises(ValueError):
        eigen_check(from_terms([(1, 3), (2, 1)], 60, ring_mod(9)), 3, CTX4, 10)
    # exact mode, leading ratio not integral -> reported failure
    f = from_terms([(1, 2), (3, 1)], 60)
    assert eigen_check(f, 3, CTX4, 10) == EigenResult(False, failure_index=1)


def test_proposition_eigenvalue_is_coefficient(q_psi8):
    for p in [2, 3, 5, 7, 11]:
        ctx = HeckeContext.principal(4, 2) if p == 2 else CTX4
        res = eigen_check(q_psi8, p, ctx, 1999 // p)
        assert res and q_psi8[1] == 1 and res.eigenvalue == q_psi8[p]


def test_hecke_context_validation():
    with pytest.raises(ValueError):
        HeckeContext(0)
    with pytest.raises(ValueError):
        HeckeContext(4, (0, 2))
    with pytest.raises(ValueError):
        HeckeContext(2, (0, 1, -1, 1, 1))  # chi(2) chi(3) = -1 but chi(6) = chi(1) = 1
    chi4 = HeckeContext(3, (0, 1, 0, -1))
    assert chi4.chi(7) == -1


def test_composite_hecke_matches_double_loop():
    f = series_from(list(range(1, 200)), 0)
    for m in [4, 6, 9, 12]:
        for ctx in (HeckeContext(4), HeckeContext(3, (0, 1, 0, -1)), HeckeContext.principal(2, 3)):
            assert apply_T(f, m, ctx) == apply_T_naive(f, m, ctx)
            assert apply_T(reduce_mod(f, 7), m, ctx) == reduce_mod(apply_T_naive(f, m, ctx), 7)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-1000, 1000), min_size=30, max_size=120), st.sampled_from([1, 2, 4, 6, 8, 9, 10, 12]),
       st.sampled_from([0, 5, 11]))
def test_composite_hecke_random(coeffs, m, mod):
    f = series_from(coeffs, 0)
    assert apply_T(f, m, CTX4) == apply_T_naive(f, m, CTX4)
    if mod:
        assert apply_T(reduce_mod(f, mod), m, CTX4) == reduce_mod(apply_T_naive(f, m, CTX4), mod)


@settings(max_examples=1000, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=80),
       st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=80),
       st.sampled_from([0, 2, 3, 5, 25]), st.sampled_from([2, 3, 5, 9]), st.sampled_from([2, 3, 5, 7]),
       st.integers(2, 6))
def test_uvt_algebra(c1, c2, m, d, p, k):
    check_uvt(series_from(c1, m), series_from(c2, m), d, p, k)

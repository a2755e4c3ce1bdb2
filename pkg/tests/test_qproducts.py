import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kdiamond.qproducts import (
    ProductFactor,
    ProductSpec,
    broken_diamond_gf,
    broken_diamond_spec,
    dissection_A,
    expand_spec,
    parse_spec,
    pochhammer,
    pochhammer_cube,
    psi_series,
    psi_spec,
)
from kdiamond.series import EXACT, dissect, eq_up_to, inverse, mul, one, power, ring_mod
from props import NAIVE_MAX, check_negated_rewrite, check_pentagonal, check_psi_forms

MODULI = [0, 2, 3, 5, 7, 25, 1000003]


def naive_product(d, order):
    coeffs = [1] + [0] * order
    for step in range(d, order + 1, d):
        for i in range(order, step - 1, -1):
            coeffs[i] -= coeffs[i - step]
    return coeffs


def test_pochhammer_examples():
    assert naive_product(1, 7) == [1, -1, -1, 0, 0, 1, 0, 1]
    assert pochhammer(1, 7).tolist() == [1, -1, -1, 0, 0, 1, 0, 1]
    assert pochhammer(2, 7).tolist() == [1, 0, -1, 0, -1, 0, 0, 0]
    p = pochhammer(1, 100)
    assert eq_up_to(mul(p, inverse(p)), one(100), 100)
    assert pochhammer(1, 7, ring_mod(3)).tolist() == [1, 2, 2, 0, 0, 1, 0, 1]


def test_pochhammer_sparsity():
    n = 10**5
    nnz = np.count_nonzero(pochhammer(1, n).coeffs != 0)
    assert nnz < 2 * (2 * n / 3) ** 0.5 + 3


def _distinct_part_counts(order):
    counts = [0] * (order + 1)

    def walk(total, smallest):
        counts[total] += 1
        for part in range(smallest, order - total + 1):
            walk(total + part, part + 1)

    walk(0, 1)
    return counts


def test_expand_spec_examples():
    assert _distinct_part_counts(5) == [1, 1, 1, 2, 2, 3]
    assert expand_spec(parse_spec("M(1)"), 5).tolist() == [1, 1, 1, 2, 2, 3]
    tri = {0, 1, 3, 6, 10}
    assert expand_spec(psi_spec(1), 10).tolist() == [int(n in tri) for n in range(11)]
    assert expand_spec(ProductSpec(2, 1, ()), 3).tolist() == [0, 2, 0, 0]
    assert expand_spec(ProductSpec(1, 9, (ProductFactor(1, -1),)), 5).is_zero()


def test_parse_spec_grammar():
    spec = parse_spec("1 * q^0 * M(1)^1 * P(1)^-2 * M(5)^-1")
    assert spec == broken_diamond_spec(2)
    assert parse_spec(str(spec)) == spec
    assert parse_spec("2*q*P(10)^4*P(5)^-2") == ProductSpec(2, 1, (ProductFactor(10, 4), ProductFactor(5, -2)))
    assert parse_spec("q*psi^8").simplified() == ProductSpec(1, 1, (ProductFactor(1, -8), ProductFactor(2, 16)))
    assert parse_spec("psi(5)").simplified() == psi_spec(5).simplified()
    for bad in ["", "P(0)", "X(3)", "1 * * P(1)", "q^-1"]:
        with pytest.raises(ValueError):
            parse_spec(bad)


def test_simplified_rewrites_negated_factors():
    simple = broken_diamond_spec(2).simplified()
    assert simple.factors == (ProductFactor(1, -3), ProductFactor(2, 1), ProductFactor(5, 1), ProductFactor(10, -1))


def test_broken_diamond_examples():
    b2 = broken_diamond_gf(2, 10)
    assert b2[0] == 1
    assert b2[1] == 3
    b1 = broken_diamond_gf(1, 21)
    odd = dissect(b1, 2, 1)
    assert odd[0] == 3
    with pytest.raises(ValueError):
        broken_diamond_gf(0, 5)


def test_broken_diamond_mod_matches_exact():
    exact = broken_diamond_gf(2, 3000)
    for m in (2, 3, 5, 25):
        assert broken_diamond_gf(2, 3000, ring_mod(m)).tolist() == [c % m for c in exact.tolist()]


def test_delta1_odd_part():
    # sum Delta_1(2n+1) q^n = 3 (q^2;q^2)^2 (q^6;q^6)^2 / (q;q)^6
    lhs = dissect(broken_diamond_gf(1, 2 * 400 + 1), 2, 1)
    rhs = expand_spec(parse_spec("3 * P(2)^2 * P(6)^2 * P(1)^-6"), 400)
    assert eq_up_to(lhs, rhs, 400)


def test_psi_series_examples():
    assert psi_series(1, 10).tolist() == [int(n in {0, 1, 3, 6, 10}) for n in range(11)]
    assert [n for n, c in enumerate(psi_series(5, 30).tolist()) if c] == [0, 5, 15, 30]
    assert eq_up_to(psi_series(1, 500), expand_spec(psi_spec(1), 500), 500)


def test_dissection_A_examples():
    order = 300
    A = dissection_A(order)
    brute = {t // 3 for t in (n * (n + 1) // 2 for n in range(200)) if t % 3 == 0 and t // 3 <= order}
    assert [n for n, c in enumerate(A.tolist()) if c] == sorted(brute)
    assert sorted(brute)[:4] == [0, 1, 2, 5]
    psi = psi_series(1, 3 * order)
    assert dissect(psi, 3, 2).is_zero()
    # the 1 mod 3 part is psi(q^9) with q^1 removed: psi(q) = A(q^3) + q psi(q^9)
    assert dissect(psi, 3, 1).tolist() == dissect(psi_series(9, 3 * order + 8), 3, 0).tolist()[: order]


def test_jacobi_cube_matches_cubed_pochhammer():
    for d in (1, 2, 5):
        p = pochhammer(d, 3000)
        assert pochhammer_cube(d, 3000) == mul(mul(p, p), p)


def test_cube_congruence_mod3():
    order = 10**4
    r = ring_mod(3)
    p = pochhammer(1, order, r)
    lhs = mul(mul(p, p), p)
    assert eq_up_to(lhs, pochhammer(3, order, r), order)


def test_psi_forms_exact_large_steps():
    for d in (1, 2, 3, 7):
        check_psi_forms(d, 10**4, 0)


# -- properties -------------------------------------------------------------

@settings(max_examples=1000, deadline=None)
@given(st.integers(1, 40), st.integers(0, NAIVE_MAX), st.sampled_from(MODULI))
def test_pentagonal_vs_naive(d, order, m):
    check_pentagonal(d, order, m)


@settings(max_examples=1000, deadline=None)
@given(st.integers(1, 40), st.integers(0, NAIVE_MAX), st.sampled_from(MODULI))
def test_negated_factor_rewrite(d, order, m):
    check_negated_rewrite(d, order, m)


@settings(max_examples=1000, deadline=None)
@given(st.integers(1, 60), st.sampled_from([2, 3, 5, 7, 25, 1000003, 2**31 - 1]))
def test_psi_theta_vs_product(d, m):
    check_psi_forms(d, 10**4, m)


def test_naive_helper_agrees_with_shared_reference():
    from props import naive_pochhammer
    assert naive_product(3, 200) == naive_pochhammer(3)[:201].tolist()

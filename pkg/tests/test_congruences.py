import pytest

from kdiamond.congruences import (
    ExpansionCache,
    FamilyParameterError,
    ProgressionCongruence,
    chan,
    gen_family,
    main_theorem,
    scan_congruences,
    verify_many,
    verify_progression,
)
from kdiamond.qproducts import broken_diamond_gf
from kdiamond.series import InsufficientOrderError


def pairs(congs):
    return {(c.A, c.B, c.M) for c in congs}


def test_family_pins():
    assert pairs(main_theorem(1)) == {(27, 16, 3), (27, 25, 3)}
    assert pairs(main_theorem(2)) == {(243, 142, 3), (243, 223, 3)}
    assert pairs(main_theorem(3)) == {(2187, 1276, 3), (2187, 2005, 3)}
    assert pairs(chan(1)) == {(25, 14, 5), (25, 24, 5)}
    assert pairs(gen_family("radu_sellers", p=3)) == pairs(main_theorem(1))
    p = 13
    assert 4 * p - (p - 1) // 4 == 49
    assert pairs(gen_family("paule_radu", p=13)) == {(5 * p * p, 49, 5)}
    assert pairs(gen_family("fifteen")) == {(15, b, 3) for b in (1, 7, 10, 13)}
    assert {(c.gf, c.A, c.B, c.n_min) for c in gen_family("hs_mod2")} == {
        ("delta:1", 4, 2, 1), ("delta:1", 4, 3, 1), ("delta:2", 10, 2, 1), ("delta:2", 10, 6, 1)}
    (ap,) = gen_family("ap_delta1")
    assert (ap.gf, ap.A, ap.B, ap.M, ap.n_min) == ("delta:1", 2, 1, 3, 3)


def test_radu_sellers_sizes():
    for p in (3, 7, 11, 19):
        congs = gen_family("radu_sellers", p=p)
        assert len(congs) == p - 1
        assert all(c.A == 3 * p * p and 0 <= c.B < c.A for c in congs)


@pytest.mark.parametrize("name,params", [
    ("radu_sellers", {"p": 5}), ("radu_sellers", {"p": 15}), ("paule_radu", {"p": 11}),
    ("paule_radu", {"p": 33}), ("main_theorem", {"l": 0}), ("chan", {"l": 0}),
    ("nope", {}), ("fifteen", {"l": 1}),
])
def test_family_parameter_errors(name, params):
    with pytest.raises(FamilyParameterError):
        gen_family(name, **params)


def test_chan_is_flagged():
    assert all("n" in c.note for c in chan(2))


def test_progression_validation():
    with pytest.raises(ValueError):
        ProgressionCongruence("delta:2", 1, 0, 1)
    with pytest.raises(ValueError):
        ProgressionCongruence("delta:2", 5, 5, 3)


def test_verify_main_theorem_first_entry():
    rep = verify_progression(main_theorem(1)[0], 10**5)
    assert rep.passed and rep.status == "pass"
    assert rep.samples == (10**5 - 16) // 27 + 1 == 3704
    assert rep.counterexample is None


def test_perturbed_progression_fails_with_counterexample():
    exact = broken_diamond_gf(2, 1000).tolist()
    first_bad = next(n for n in range(37) if exact[27 * n + 17] % 3)
    rep = verify_progression(ProgressionCongruence("delta:2", 27, 17, 3), 1000)
    assert not rep.passed and rep.status == "fail"
    assert rep.counterexample == (first_bad, exact[27 * first_bad + 17] % 3)


def test_verify_budget_too_small():
    with pytest.raises(InsufficientOrderError):
        verify_progression(main_theorem(2)[0], 100)


def test_below_range_is_informational():
    rep = verify_progression(gen_family("ap_delta1")[0], 2000)
    assert rep.passed
    assert [n for n, _ in rep.below_range] == [0, 1, 2]
    assert rep.samples == rep.n_max - 3 + 1


def test_cache_reuses_longer_expansion():
    cache = ExpansionCache()
    long_ = cache.get("delta:2", 3, 5000)
    short = cache.get("delta:2", 3, 100)
    assert short.tolist() == long_.tolist()[:101]


def test_named_generating_functions():
    cache = ExpansionCache()
    s = cache.get("spec:P(1)^-1", 0, 10)
    assert s.tolist() == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    with pytest.raises(KeyError):
        cache.get("unknown", 3, 10)


def test_verification_is_deterministic_across_orderings():
    congs = gen_family("fifteen") + main_theorem(1) + gen_family("radu_sellers", p=7)
    a = [r.to_json() for r in verify_many(congs, 30000, ExpansionCache(), workers=4)]
    b = [r.to_json() for r in verify_many(list(reversed(congs)), 30000, ExpansionCache(), workers=1)]
    assert a == b
    assert all('"status": "pass"' in line for line in a)


def test_scan_examples():
    hits = scan_congruences("delta:2", 3, 27, 10**5, min_samples=100)
    got = {(h.A, h.B) for h in hits}
    assert {(15, 1), (15, 7), (15, 10), (15, 13), (27, 16), (27, 25)} <= got
    mod2 = scan_congruences("delta:2", 2, 10, 20000, min_samples=50, n_min=1)
    assert {(10, 2), (10, 6)} <= {(h.A, h.B) for h in mod2}
    assert scan_congruences("delta:2", 3, 27, 1000, min_samples=10**6) == []
    with pytest.raises(ValueError):
        scan_congruences("delta:2", 3, 5, 100, min_samples=0)


def test_scan_flags_subsumed_progressions():
    # every coefficient of (q^2;q^2) at odd exponents vanishes, so (2,1) implies (4,1), (4,3), (6,1), ...
    hits = scan_congruences("spec:P(2)", 7, 6, 5000, min_samples=10)
    by_ab = {(h.A, h.B): h for h in hits}
    assert not by_ab[(2, 1)].subsumed
    assert by_ab[(4, 1)].subsumed and by_ab[(4, 3)].subsumed and by_ab[(6, 5)].subsumed

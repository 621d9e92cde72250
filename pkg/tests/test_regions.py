from fractions import Fraction
from math import isqrt

import numpy as np
import pytest

from rsasd.algebra import rs_code
from rsasd.errors import NotApplicableError
from rsasd.regions import (
    baseline_radii,
    bec_radius,
    bec_radius_oracle,
    bec_undecodable_bound,
    bsc_errors_decodable,
    bsc_optimal,
    bsc_radius_at,
    certified_bsc_coefficient,
    gs_radius,
    mod_radius,
    two_level_score,
    worst_pattern_bec,
    worst_pattern_bsc,
)

from oracles import brute_radius, compositions


def test_compositions_helper_counts():
    assert sum(1 for _ in compositions(15, 5)) == 3876


# -- BEC radius -------------------------------------------------------------


@pytest.mark.parametrize("k", range(1, 16))
def test_dp_oracle_matches_brute_force_n15(k):
    params = rs_code(15, k, 4)
    assert bec_radius_oracle(params) == brute_radius(15, k, 4)


@pytest.mark.parametrize("k", range(5, 16))
def test_closed_form_matches_oracle_n15(k):
    params = rs_code(15, k, 4)
    assert bec_radius(params).e_star == bec_radius_oracle(params)


@pytest.mark.slow
def test_closed_form_matches_oracle_n255():
    for k in range(65, 256):
        params = rs_code(255, k, 8)
        assert bec_radius(params).e_star == bec_radius_oracle(params), k


@pytest.mark.parametrize("nk, e, branch", [
    ((255, 239), 34, "high_rate"),
    ((255, 77), 461, "mid_rate"),
    ((255, 129), 254, "high_rate"),
    ((255, 128), 257, "mid_rate"),
])
def test_bec_radius_examples(nk, e, branch):
    r = bec_radius(rs_code(*nk, 8))
    assert (r.e_star, r.branch) == (e, branch)
    assert r.e_star == r.e1_star + 2 * r.e2_star
    assert r.e1_star + r.e2_star <= nk[0]


def test_bec_radius_255_239_composition():
    r = bec_radius(rs_code(255, 239, 8))
    assert (r.e1_star, r.e2_star) == (34, 0)


def test_boundary_branches_agree():
    # K = N/2 + 1 sits on both closed forms
    n, k = 254, 128
    assert 2 * (n - k + 1) == 3 * n - 4 * (k - 1) == 254
    assert bec_radius(rs_code(n, k, 8)).e_star == 254


def test_oracle_examples():
    assert bec_radius_oracle(rs_code(15, 11, 4)) == 10
    assert bec_radius_oracle(rs_code(15, 5, 4)) == 29
    for n, m in [(7, 3), (15, 4), (31, 5)]:
        assert bec_radius_oracle(rs_code(n, n, m)) == 2


def test_radius_grows_as_rate_drops():
    n = 15
    for k in range(2, 16):
        e = bec_radius(rs_code(n, k, 4)).e_star
        floor = 2 * (n - k + 1)
        assert e >= floor
        assert (e == floor) == (2 * (k - 1) >= n)


def test_low_rate_uses_search():
    r = bec_radius(rs_code(15, 2, 4))
    assert r.branch == "lp"
    assert r.e_star == brute_radius(15, 2, 4)


def test_undecodable_bound():
    assert bec_undecodable_bound(rs_code(255, 239, 8)) == 34
    assert bec_undecodable_bound(rs_code(255, 129, 8)) == 254
    with pytest.raises(NotApplicableError):
        bec_undecodable_bound(rs_code(255, 127, 8))
    # 35 type-1 symbols: eta = 255 - 17.5 < 238
    assert 255 - Fraction(35, 2) < 238


def test_worst_pattern_bec_examples():
    params = rs_code(15, 5, 4)
    assert worst_pattern_bec(params, 0).counts == (15, 0, 0, 0, 0)
    assert worst_pattern_bec(params, 15).counts == (0, 15, 0, 0, 0)
    p = worst_pattern_bec(params, 20)
    assert p.counts == (0, 10, 5, 0, 0)
    assert p.eta() == Fraction(25, 4)
    with pytest.raises(ValueError):
        worst_pattern_bec(params, 61)


def test_even_spread_minimises_eta():
    params = rs_code(15, 5, 4)
    best = {}
    for a in compositions(15, 5):
        w = sum(i * c for i, c in enumerate(a))
        eta = sum(Fraction(c, 1 << i) for i, c in enumerate(a))
        best[w] = min(best.get(w, eta), eta)
    for e, v in best.items():
        assert worst_pattern_bec(params, e).eta() == v


# -- modulation -------------------------------------------------------------


def test_mod_radius_examples():
    params = rs_code(255, 239, 8)
    assert [mod_radius(params, u) for u in (1, 2, 4, 8)] == [34, 22, 18, 17]
    assert mod_radius(params, 8) > 255 - 239
    with pytest.raises(ValueError):
        mod_radius(params, 3)
    with pytest.raises(NotApplicableError):
        mod_radius(rs_code(255, 60, 8), 2)


def test_mod_radius_matches_group_oracle():
    for k in range(2, 16):
        params = rs_code(15, k, 4)
        for u in (1, 2, 4):
            if (k - 1) << u < 15:
                continue
            r = mod_radius(params, u)
            assert r == bec_radius_oracle(params, u) == brute_radius(15, k, 4, u)
            assert r > 15 - k


def test_mod_radius_beats_conventional_n255():
    for u in (1, 2, 4, 8):
        for k in range(2, 256, 7):
            params = rs_code(255, k, 8)
            if (k - 1) << u < 255:
                continue
            assert mod_radius(params, u) > 255 - k


def test_mod_radius_u1_is_bec_radius():
    for k in range(129, 256, 5):
        params = rs_code(255, k, 8)
        assert mod_radius(params, 1) == bec_radius(params).e_star


# -- 1-bit flipped BSC --------------------------------------------------------


@pytest.mark.parametrize("k, gap", [(223, 0), (167, 1), (77, 7), (30, 45)])
def test_bsc_gaps_over_gs(k, gap):
    params = rs_code(255, k, 8)
    assert bsc_optimal(params).d_floor - gs_radius(params) == gap


def test_bsc_full_correction():
    for k in range(2, 30):
        sol = bsc_optimal(rs_code(255, k, 8))
        assert sol.full_correction and sol.d_floor == 255
    assert not bsc_optimal(rs_code(255, 30, 8)).full_correction


def test_bsc_certification_flag():
    assert not bsc_optimal(rs_code(255, 30, 8)).certified
    assert bsc_optimal(rs_code(255, 77, 8)).certified


@pytest.mark.parametrize("k", [30, 55, 77, 128, 167, 223, 239, 254])
def test_tangent_point_relations(k):
    n, m = 255, 8
    sol = bsc_optimal(rs_code(n, k, 8))
    hyper = sol.y0 ** 2 / (n * (k - 1)) - m * sol.x0 ** 2
    assert hyper == pytest.approx(1, rel=1e-10)
    # the line through (1, N) and (x0, y0) has slope d and is tangent there
    slope = (n - sol.y0) / (1 - sol.x0)
    assert slope == pytest.approx(sol.d, rel=1e-10)
    tangent_slope = m * n * (k - 1) * sol.x0 / sol.y0
    assert tangent_slope == pytest.approx(sol.d, rel=1e-10)
    assert 0 <= sol.x0 < 1
    assert sol.t_star == sol.x0


@pytest.mark.parametrize("k", [30, 55, 77, 167, 223])
def test_tangent_dominates_grid(k):
    params = rs_code(255, k, 8)
    sol = bsc_optimal(params)
    grid = np.arange(0, 1, 1e-4)
    radii = bsc_radius_at(params, grid)
    assert radii.max() <= sol.d + 1e-9
    assert radii.max() == pytest.approx(sol.d, abs=1e-3)


def test_floor_is_exactly_decodable():
    for k in range(30, 256, 3):
        params = rs_code(255, k, 8)
        sol = bsc_optimal(params)
        assert bsc_errors_decodable(params, sol.d_floor)
        assert not bsc_errors_decodable(params, sol.d_floor + 1)


def test_taylor_tight_at_high_rate():
    for k in range(223, 256):
        sol = bsc_optimal(rs_code(255, k, 8))
        assert abs(sol.d_tilde - sol.d) <= 1


def test_bsc_radius_at_zero_is_gs_style():
    params = rs_code(255, 55, 8)
    assert bsc_radius_at(params, 0) == pytest.approx(255 - np.sqrt(255 * 54))
    with pytest.raises(ValueError):
        bsc_radius_at(params, 1.0)


def test_rs255_55_sweep():
    params = rs_code(255, 55, 8)
    grid = np.round(np.arange(0, 1, 1e-3), 3)
    radii = bsc_radius_at(params, grid)
    i = int(np.argmax(radii))
    assert 0.15 <= grid[i] <= 0.25
    assert int(radii[i]) == 150
    assert bsc_radius_at(params, 0.2) == pytest.approx(150, abs=1)


def test_certified_coefficient():
    assert certified_bsc_coefficient(rs_code(255, 30, 8)) == Fraction(1, 2)
    t = certified_bsc_coefficient(rs_code(255, 77, 8))
    assert abs(float(t) - bsc_optimal(rs_code(255, 77, 8)).t_star) < 1e-6


def test_worst_pattern_bsc():
    params = rs_code(15, 5, 4)
    p = worst_pattern_bsc(params, 0, 0.3)
    assert p.counts == (15, 0, 0, 0, 0)
    assert two_level_score(15, 0, 0, 0.3) == 15
    assert worst_pattern_bsc(params, 6, Fraction(3, 10)).counts == (9, 6, 0, 0, 0)
    with pytest.raises(NotApplicableError):
        worst_pattern_bsc(params, 6, 0.6)


def test_spreading_is_score_minimal():
    t = Fraction(3, 10)
    scores = {e2: two_level_score(15, 6 - 2 * e2, e2, t) for e2 in range(4)}
    assert min(scores, key=scores.get) == 0
    # merging two singles into a double changes the score by 1 - 2t
    for e2 in range(3):
        assert scores[e2 + 1] - scores[e2] == 1 - 2 * t


# -- baselines --------------------------------------------------------------


def test_baseline_radii():
    assert baseline_radii(rs_code(255, 55, 8))["bm_errors"] == 100
    assert baseline_radii(rs_code(255, 55, 8))["gs_errors"] == 137
    assert baseline_radii(rs_code(255, 239, 8))["bm_erasures"] == 16
    b = baseline_radii(rs_code(15, 3, 4))
    assert (b["gs_errors"], b["bm_errors"]) == (9, 6)


def test_gs_radius_formula():
    for n, k in [(15, 3), (255, 223), (255, 55), (31, 17)]:
        r = gs_radius(rs_code(n, k, 8 if n == 255 else (4 if n == 15 else 5)))
        # largest tau with (n - tau)^2 > n (k - 1)
        assert (n - r) ** 2 > n * (k - 1) >= (n - r - 1) ** 2
        assert r == n - 1 - isqrt(n * (k - 1))

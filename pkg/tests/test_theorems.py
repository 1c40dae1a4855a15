import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disknorm.errors import DomainError, NormalizationViolated
from disknorm.maps import catalog
from disknorm.theorems import checks as C
from disknorm.theorems import properties as P
from disknorm.theorems.formulas import SharpnessFamily, brute_force_max_E, extremal_radius, n_t, profile_E
from disknorm.theorems.suites import N_T_PARAMS, run_suite


def n_t_textbook(t):
    # the unsimplified closed form; cancels badly for small t
    s = math.sqrt(1 - t * t)
    return (2 - 2 * s + t * (4 + t - 4 * s)) / (t * t)


# ---------------------------------------------------------------- formulas


def test_extremal_radius_values():
    assert extremal_radius(0.6) == pytest.approx(1 / 3, abs=1e-15)
    assert extremal_radius(0.01) == pytest.approx(0.005, abs=1e-4)
    assert extremal_radius(1 - 1e-9) == pytest.approx(1.0, abs=1e-4)


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.5, float("nan")])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        extremal_radius(bad)
    with pytest.raises(DomainError):
        n_t(bad)
    with pytest.raises(DomainError):
        profile_E(0.5, bad)


def test_profile_rejects_radius_outside_disk():
    with pytest.raises(DomainError):
        profile_E(1.0, 0.5)


def test_profile_at_zero():
    # E(0) = 1 + (1 + t) + t
    assert profile_E(0.0, 0.3) == pytest.approx(2.6)


def test_frozen_n_t_values():
    assert n_t(0.5) == pytest.approx(3.1435935394489816, abs=1e-12)
    assert n_t(0.9) == pytest.approx(4.90002, abs=1e-5)
    assert n_t(0.999) == pytest.approx(6.739391, abs=1e-6)


@settings(max_examples=200)
@given(st.floats(0.05, 0.999))
def test_stable_form_matches_textbook_form(t):
    assert n_t(t) == pytest.approx(n_t_textbook(t), rel=1e-10)


@settings(max_examples=200)
@given(st.floats(1e-9, 1 - 1e-12))
def test_n_t_below_seven_and_at_extremal_radius(t):
    fam = SharpnessFamily.at(t)
    assert 0 < fam.r0 < 1
    assert fam.Nt <= 7
    # profile_E itself cancels in 1 - t r as t -> 1
    assert fam.Nt == pytest.approx(profile_E(fam.r0, t), rel=1e-9)


def test_n_t_limits():
    # N_t -> 7 as t -> 1; E(r, 0) = 2 - r^2 so N_t -> 2 as t -> 0
    assert n_t(1 - 1e-12) == pytest.approx(7.0, abs=1e-5)
    assert n_t(1e-9) == pytest.approx(2.0, abs=1e-8)
    ts = np.linspace(0.01, 0.99, 50)
    assert np.all(np.diff([n_t(t) for t in ts]) > 0)


@pytest.mark.parametrize("t", [0.1, 0.6, 0.95])
def test_brute_force_maximum(t):
    # independent dense grid, finer than the library's
    r = np.linspace(0, 1, 2_000_001)[:-1]
    grid_max = np.max(1 + r + ((1 + t) * (1 - r * r) - (r - t)) / (1 - t * r))
    assert brute_force_max_E(t) == pytest.approx(grid_max, abs=1e-9)
    assert n_t(t) == pytest.approx(grid_max, abs=1e-9)


# ---------------------------------------------------------------- reports


def test_bound_semantics():
    assert C.Bound(5, "eq").holds(5.0005, 1e-3)
    assert not C.Bound(5, "eq").holds(5.002, 1e-3)
    assert C.Bound(1, "le").holds(1.0009, 1e-3)
    assert not C.Bound(1, "le").holds(1.002, 1e-3)
    assert C.Bound(3, "ge").holds(2.9995, 1e-3)
    assert not C.Bound(3, "ge").holds(float("nan"), 1e-3)
    assert C.Bound(0, "le", tolerance=1e-12).holds(1e-13, 1.0)
    assert not C.Bound(0, "le", tolerance=1e-12).holds(1e-9, 1.0)


def test_report_json_shape():
    r = C.check_gap_thm31(catalog("thm31_ex1"))
    j = json.loads(json.dumps(r.to_json()))
    assert set(j) == {"check_id", "inputs", "computed", "expected", "tolerance", "pass", "failures", "runtime_ms"}
    assert j["pass"] is True
    assert isinstance(j["runtime_ms"], int)


# ---------------------------------------------------------------- checks


@pytest.mark.parametrize("name", ["thm31_ex1", "thm31_ex2"])
def test_sharp_gap_examples(name):
    r = C.check_gap_thm31(catalog(name))
    assert r.passed, r.failures
    assert r.computed["pre_schwarzian"] == pytest.approx(5, abs=1e-3)
    assert r.computed["pre_schwarzian_psi"] == pytest.approx(6, abs=1e-3)
    assert r.computed["gap"] == pytest.approx(1, abs=2e-3)


def test_tight_tolerance_fails_on_boundary_limits():
    # sampled suprema sit below the limit by O(1 - r_max), far above 1e-12
    r = C.check_gap_thm31(catalog("thm31_ex1"), tol=1e-12)
    assert not r.passed
    assert "pre_schwarzian" in r.failures


@pytest.mark.parametrize("t", [0.5, 0.9, 0.999])
def test_family_gap(t):
    r = C.check_gap_thm35(catalog(f"thm36_family({t})"))
    assert r.passed, r.failures
    assert n_t(t) - 1e-3 <= r.computed["pre_schwarzian"] <= 7 + 1e-3
    assert r.computed["pre_schwarzian_h"] == pytest.approx(4, abs=1e-3)
    assert r.computed["bloch_log_g"] == pytest.approx(2, abs=1e-3)


def test_becker_hypothesis_detection():
    ex1 = C.check_becker_thm33(catalog("thm31_ex1"), expect_hypothesis=False)
    assert ex1.passed
    assert C.check_becker_thm33(catalog("exp_h"), expect_hypothesis=True).passed


def test_bloch_equivalence():
    r = C.check_bloch_equiv_thm34(catalog("thm31_ex1"))
    assert r.passed
    assert r.computed["beta_f"] == pytest.approx(4, abs=1e-3)
    assert r.computed["norm_f"] == pytest.approx(5, abs=1e-3)


@pytest.mark.parametrize("u, beta", [("-log(1-z)", 2.0), ("z", 1.0), ("z^3", 0.75)])
def test_coefficient_lemma(u, beta):
    r = C.check_coefficient_lemma(u, 20)
    assert r.passed
    assert r.computed["beta"] == pytest.approx(beta, abs=1e-6)


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
def test_growth_extremal(r):
    rep = C.check_growth_thm38(1.0, 0.5, r)
    assert rep.passed, rep.failures
    assert rep.computed["abs_f_upper"] == pytest.approx(((1 + r) / (1 - r) ** 3) ** 1.5, rel=1e-9)
    assert rep.computed["log_derivative_h"] == pytest.approx(6, abs=1e-3)


def test_growth_rejects_bad_radius():
    with pytest.raises(DomainError):
        C.check_growth_thm38(1.0, 0.5, 1.0)


def test_uniform_univalence_needs_normalization():
    assert C.check_uniform_univalence_thm36(catalog("thm31_ex1")).passed
    with pytest.raises(NormalizationViolated):
        C.check_uniform_univalence_thm36(catalog("thm31_ex2"))


def test_n_t_check_and_regressions():
    assert C.check_n_t_formula(N_T_PARAMS).passed
    r = C.check_schwarzian_regressions()
    assert r.passed, r.failures
    assert r.computed["moebius_max_abs"] < 1e-12
    assert r.computed["identity_max_rel_error"] < 1e-6


# ---------------------------------------------------------------- property suites


def test_small_property_run_passes():
    for rep in P.run_properties(seed=7, n=12):
        assert rep.passed, (rep.check_id, rep.failures, rep.computed)


def test_property_seeds_are_per_suite():
    a = P.composition_rule(seed=3, n=20)
    b = P.composition_rule(seed=3, n=20)
    c = P.composition_rule(seed=4, n=20)
    assert a.computed == b.computed
    assert a.computed != c.computed


def test_random_blaschke_is_a_self_map():
    rng = np.random.default_rng(0)
    from disknorm.expr import evaluate_array

    for _ in range(20):
        B, d = P.random_blaschke(rng)
        z = np.exp(1j * np.linspace(0, 2 * np.pi, 50))
        assert np.allclose(np.abs(evaluate_array(B, z)), 1, atol=1e-12)
        assert np.all(np.abs(evaluate_array(B, 0.9 * z)) < 1)


def test_closed_form_suite():
    reports = run_suite("paper")
    assert len(reports) == 27
    assert all(r.passed for r in reports), [r.check_id for r in reports if not r.passed]
    with pytest.raises(ValueError):
        run_suite("nope")

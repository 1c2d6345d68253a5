import json
import math

import numpy as np
import pytest

from fracmod import (
    BoundReport,
    Grid1D,
    GridFunction,
    GridFunctionND,
    SingularPower,
    check_gls_bounds,
    check_growth_bound,
    check_integral_bound,
    check_riesz_bound,
    check_scaling,
    estimate_exponent,
    frac_integral,
    gamma,
    sample,
)
from fracmod.errors import DegenerateFitError, DomainError
from fracmod.harness import (
    check_derivative_bound,
    lower_bound_K_D,
    random_piecewise_linear,
    random_smooth,
    reports_to_csv,
    reports_to_json_doc,
    run_verification,
)


class TestBoundReport:
    def test_from_sides_pass(self):
        r = BoundReport.from_sides("x", {"alpha": 0.5}, 1.0, 2.0)
        assert r.passed and r.ratio == pytest.approx(0.5)

    def test_from_sides_fail(self):
        r = BoundReport.from_sides("x", {}, 3.0, 2.0)
        assert not r.passed and r.ratio == pytest.approx(1.5)

    def test_tolerance_edge(self):
        r = BoundReport.from_sides("x", {}, 1.0 + 5e-10, 1.0, tolerance=1e-9)
        assert r.passed

    def test_to_dict(self):
        d = BoundReport.from_sides("x", {"h": 0.5}, 1.0, 2.0).to_dict()
        assert d["name"] == "x" and d["pass"] is True


class TestRandomFunctions:
    def test_deterministic_under_seed(self):
        g = Grid1D(0.0, 1.0, 257)
        a = random_smooth(np.random.default_rng(3), g)
        b = random_smooth(np.random.default_rng(3), g)
        assert np.array_equal(a.samples, b.samples)

    def test_smooth_vanishes_at_origin(self):
        g = Grid1D(0.0, 1.0, 257)
        f = random_smooth(np.random.default_rng(1), g)
        assert f.samples[0] == pytest.approx(0.0, abs=1e-12)

    def test_piecewise_linear_finite(self):
        g = Grid1D(0.0, 1.0, 257)
        f = random_piecewise_linear(np.random.default_rng(2), g)
        assert np.all(np.isfinite(f.samples))


class TestDerivativeBound:
    def test_power_family_passes_with_closed_form_proxy(self):
        g = Grid1D(0.0, 1.0, 4096)
        f = sample(lambda x: np.maximum(x, 0.0) ** 0.8, g)
        reps = check_derivative_bound(f, 0.5, [0.05, 0.1, 0.25], c_proxy=1.0)
        assert all(r.passed for r in reps)
        assert all("K_sample" in r.params or "skipped" in r.notes for r in reps)

    def test_divergent_integral_is_skipped_not_failed(self):
        g = Grid1D(0.0, 1.0, 2048)
        f = sample(lambda x: np.maximum(x, 0.0) ** 0.25, g)
        reps = check_derivative_bound(f, 0.75, [0.1])
        assert reps[0].passed and "skipped" in reps[0].notes


class TestKDCurve:
    def test_matches_closed_form(self):
        pts = lower_bound_K_D(0.5, [0.8], n=2048, h=0.25)
        pt = pts[0]
        assert pt.measured == pytest.approx(pt.closed_form, rel=0.02)
        assert pt.measured_paper == pytest.approx(pt.closed_form_paper, rel=0.02)
        # the two readings differ exactly by Gamma(1 - alpha)
        assert pt.closed_form_paper == pytest.approx(
            pt.closed_form * gamma(0.5), rel=1e-12)

    def test_beta_domain(self):
        with pytest.raises(DomainError):
            lower_bound_K_D(0.5, [0.4], n=512)


class TestIntegralBound:
    def test_random_family_within_bound(self):
        g = Grid1D(0.0, 1.0, 1024)
        rng = np.random.default_rng(12)
        for _ in range(10):
            f = random_piecewise_linear(rng, g)
            for variant in ("global-lp", "local-delta"):
                reps = check_integral_bound(f, 0.75, 2.0, [0.1, 0.5], variant)
                assert all(r.passed for r in reps)

    def test_variant_validation(self):
        g = Grid1D(0.0, 1.0, 128)
        f = GridFunction(g, np.ones(128))
        with pytest.raises(DomainError):
            check_integral_bound(f, 0.75, 2.0, [0.1], "bogus")


class TestGrowthBound:
    def test_pointwise_ratio_below_one(self):
        g = Grid1D(0.0, 1.0, 2048)
        rng = np.random.default_rng(21)
        f = random_piecewise_linear(rng, g)
        rep = check_growth_bound(f, 0.75, 2.0)
        assert rep.passed and rep.lhs <= 1.0 + 1e-9


class TestEstimateExponent:
    def test_recovers_power_law_slope(self):
        g = Grid1D(0.0, 1.0, 8193)
        alpha, b = 0.6, 0.25
        fi = frac_integral(sample(SingularPower(b), g), alpha)
        fit = estimate_exponent(fi, [2.0**-k for k in range(3, 9)])
        assert fit.slope == pytest.approx(alpha - b, abs=0.05)
        assert fit.r_squared > 0.999

    def test_too_few_points(self):
        g = Grid1D(0.0, 1.0, 256)
        f = GridFunction(g, g.points)
        with pytest.raises(DegenerateFitError):
            estimate_exponent(f, [0.1, 0.2])

    def test_zero_modulus(self):
        g = Grid1D(0.0, 1.0, 256)
        f = GridFunction(g, np.ones(256))
        with pytest.raises(DegenerateFitError):
            estimate_exponent(f, [0.1, 0.2, 0.3, 0.4])


class TestScaling:
    def test_commutation_exact_to_roundoff(self):
        g = Grid1D(0.0, 1.0, 1025)
        rho = GridFunction(g, np.clip(g.points, 0.0, 0.5))
        rep = check_scaling(rho, 0.5, 2.0, 2.0)
        assert rep.passed and rep.lhs < 1e-12


class TestRieszBound:
    def test_bound_with_sampled_constant(self):
        n = 2049
        pts = np.linspace(-2.0, 2.0, n)
        f = GridFunctionND(((-2.0, 2.0, n),), np.exp(-pts**2))
        reps = check_riesz_bound(f, 0.75, 2.0, [0.1, 0.25], c_proxy=1.0)
        for r in reps:
            assert "K_sample" in r.params and r.params["K_sample"] > 0

    def test_p_validation(self):
        f = GridFunctionND(((-1.0, 1.0, 65),), np.ones(65))
        with pytest.raises(DomainError):
            check_riesz_bound(f, 0.5, 1.5, [0.1])


class TestGlsBounds:
    def test_thm51_shape(self):
        n = 2049
        pts = np.linspace(-2.0, 2.0, n)
        f = GridFunctionND(((-2.0, 2.0, n),), np.exp(-pts**2))
        grid = np.geomspace(1.5, 8.0, 8)
        reps = check_gls_bounds(f, 0.75, 1, [0.05, 0.1], grid, variant="thm51",
                                k_r_proxy=10.0)
        assert len(reps) == 2
        assert all(math.isfinite(r.rhs) for r in reps)

    def test_log_variants_restrict_h(self):
        n = 513
        pts = np.linspace(-1.0, 1.0, n)
        f = GridFunctionND(((-1.0, 1.0, n),), np.exp(-pts**2))
        grid = np.geomspace(1.5, 8.0, 6)
        with pytest.raises(DomainError):
            check_gls_bounds(f, 0.75, 1, [0.5], grid, variant="thm52")

    def test_variant_validation(self):
        f = GridFunctionND(((-1.0, 1.0, 65),), np.ones(65))
        with pytest.raises(DomainError):
            check_gls_bounds(f, 0.75, 1, [0.1], [2.0, 3.0], variant="bogus")


class TestExports:
    def test_csv_has_header_and_rows(self):
        reps = [BoundReport.from_sides("x", {"alpha": 0.5, "h": 0.1}, 1.0, 2.0)]
        text = reports_to_csv(reps)
        lines = text.strip().splitlines()
        assert lines[0].startswith("name,alpha,p,beta,d,h,lambda")
        assert len(lines) == 2 and lines[1].endswith("true")

    def test_json_doc_schema(self):
        reps = [BoundReport.from_sides("x", {}, 1.0, 2.0)]
        doc = reports_to_json_doc(reps, seed=7, timestamp="t")
        assert doc["schema"] == 1 and doc["seed"] == 7
        json.dumps(doc)  # serializable


class TestRunVerification:
    def test_all_pass_and_deterministic(self):
        a = run_verification(n=1024, seed=0)
        b = run_verification(n=1024, seed=0)
        assert all(r.passed for r in a)
        assert reports_to_csv(a) == reports_to_csv(b)
        assert len(a) >= 15

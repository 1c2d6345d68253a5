import math

import numpy as np
import pytest

from fracmod import (
    Grid1D,
    GridFunction,
    ModulusProfile,
    modulus,
    modulus_profile,
    omega_integral,
    sample,
)
from fracmod.errors import ConstructionError, DomainError
from fracmod.harness import modulus_bruteforce


class TestModulus:
    def test_matches_bruteforce_exactly(self):
        rng = np.random.default_rng(100)
        for _ in range(40):
            n = int(rng.integers(16, 256))
            g = Grid1D(0.0, 1.0, n)
            f = GridFunction(g, rng.normal(size=n))
            h = float(rng.uniform(2.0 * g.step, 0.5))
            assert modulus(f, h) == modulus_bruteforce(f, h)

    def test_linear_function(self):
        g = Grid1D(0.0, 1.0, 4097)
        f = GridFunction(g, 3.0 * g.points)
        h = 0.25
        # grid modulus of a linear function is slope * (aligned window width)
        w = int(h / g.step + 1e-9)
        assert modulus(f, h) == pytest.approx(3.0 * w * g.step, rel=1e-12)

    def test_power_law_modulus(self):
        g = Grid1D(0.0, 1.0, 8193)
        beta = 0.5
        f = GridFunction(g, g.points**beta)
        for h in (0.0625, 0.125, 0.25):
            # omega(x^beta, h) = h^beta, attained at the origin
            assert abs(modulus(f, h) - h**beta) <= g.step**beta

    def test_constant_is_zero(self):
        g = Grid1D(0.0, 1.0, 257)
        f = GridFunction(g, np.full(257, 5.0))
        assert modulus(f, 0.1) == 0.0

    def test_monotone_in_h(self):
        g = Grid1D(0.0, 1.0, 1025)
        rng = np.random.default_rng(8)
        f = GridFunction(g, rng.normal(size=1025))
        vals = [modulus(f, h) for h in (0.01, 0.05, 0.2, 0.6)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_h_validation(self):
        g = Grid1D(0.0, 1.0, 65)
        f = GridFunction(g, np.ones(65))
        with pytest.raises(DomainError):
            modulus(f, 0.0)


class TestModulusProfile:
    def test_construction_and_monotonicity(self):
        g = Grid1D(0.0, 1.0, 2049)
        f = GridFunction(g, np.sin(7.0 * g.points))
        hs = np.array([0.4, 0.05, 0.1, 0.2])
        prof = modulus_profile(f, hs)
        assert np.all(np.diff(prof.h_values) > 0)
        assert np.all(np.diff(prof.omega_values) >= 0)

    def test_invalid_profile_rejected(self):
        with pytest.raises(ConstructionError):
            ModulusProfile(np.array([0.2, 0.1]), np.array([1.0, 2.0]))
        with pytest.raises(ConstructionError):
            ModulusProfile(np.array([0.1, 0.2]), np.array([1.0, -1.0]))

    def test_csv_roundtrip_text(self):
        prof = ModulusProfile(np.array([0.1, 0.2]), np.array([0.5, 0.7]))
        text = prof.to_csv()
        lines = text.strip().splitlines()
        assert lines[0] == "h,omega"
        assert len(lines) == 3


class TestOmegaIntegral:
    def test_power_law_closed_form(self):
        # for omega(t) = t^beta, int_0^h t^(-1-a) omega(t) dt = h^(b-a)/(b-a)
        alpha, beta_exp = 0.4, 0.75
        g = Grid1D(0.0, 1.0, 16385)
        f = sample_power(g, beta_exp)
        hs = np.unique(
            np.round(np.geomspace(4, 4096, 160)).astype(int)
        ) * g.step
        prof = modulus_profile(f, hs)
        h = 0.25
        got = omega_integral(prof, alpha, h)
        expected = h ** (beta_exp - alpha) / (beta_exp - alpha)
        assert got == pytest.approx(expected, rel=0.05)

    def test_divergent_when_exponent_too_small(self):
        # omega(t) ~ t^beta with beta < alpha makes the integral diverge
        alpha, beta_exp = 0.75, 0.25
        g = Grid1D(0.0, 1.0, 8193)
        f = sample_power(g, beta_exp)
        hs = np.unique(np.round(np.geomspace(4, 2048, 80)).astype(int)) * g.step
        prof = modulus_profile(f, hs)
        assert omega_integral(prof, alpha, 0.25) == math.inf

    def test_zero_function_gives_zero(self):
        g = Grid1D(0.0, 1.0, 1025)
        f = GridFunction(g, np.zeros(1025))
        hs = np.array([4, 8, 16, 32, 64]) * g.step
        prof = modulus_profile(f, hs)
        assert omega_integral(prof, 0.5, hs[-1]) == 0.0

    def test_h_outside_profile_rejected(self):
        g = Grid1D(0.0, 1.0, 1025)
        f = GridFunction(g, g.points)
        hs = np.array([4, 8, 16]) * g.step
        prof = modulus_profile(f, hs)
        with pytest.raises(DomainError):
            omega_integral(prof, 0.5, 0.9)


def sample_power(g: Grid1D, beta_exp: float) -> GridFunction:
    return GridFunction(g, g.points**beta_exp)

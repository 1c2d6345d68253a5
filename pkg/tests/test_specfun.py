import math

import numpy as np
import pytest

from fracmod import beta, gamma, log_gamma
from fracmod.errors import DomainError, RangeError


def test_log_gamma_trivial_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-13)
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-13)


def test_log_gamma_against_stdlib_oracle():
    # math.lgamma is an independent implementation; 1e-12 relative
    # (absolute near the zeros of ln Gamma at x = 1, 2).
    xs = np.geomspace(1e-3, 170.0, 4001)
    for x in xs:
        ref = math.lgamma(float(x))
        assert abs(log_gamma(float(x)) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_gamma_values():
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-13)
    assert gamma(0.5) == pytest.approx(1.7724538509055159, rel=1e-12)
    # Gamma(2.5) = 1.5 * 0.5 * sqrt(pi)
    assert gamma(2.5) == pytest.approx(1.5 * 0.5 * math.sqrt(math.pi), rel=1e-12)


def test_beta_values():
    assert beta(1.0, 1.0) == pytest.approx(1.0, rel=1e-13)
    assert beta(2.0, 0.5) == pytest.approx(4.0 / 3.0, rel=1e-12)
    assert beta(0.3, 0.7) == pytest.approx(beta(0.7, 0.3), rel=1e-14)


def test_domain_errors():
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            log_gamma(bad)
        with pytest.raises(DomainError):
            gamma(bad)
    with pytest.raises(DomainError):
        beta(-1.0, 2.0)
    with pytest.raises(RangeError):
        gamma(200.0)


def test_gamma_recursion_property():
    rng = np.random.default_rng(1234)
    xs = rng.uniform(0.01, 80.0, size=1000)
    for x in xs:
        x = float(x)
        lhs = gamma(x + 1.0)
        assert abs(lhs - x * gamma(x)) / lhs <= 1e-11


def test_beta_gamma_consistency_property():
    rng = np.random.default_rng(99)
    for _ in range(200):
        a, b = rng.uniform(0.05, 20.0, size=2)
        a, b = float(a), float(b)
        lhs = beta(a, b) * gamma(a + b)
        rhs = gamma(a) * gamma(b)
        assert abs(lhs - rhs) / rhs <= 1e-10

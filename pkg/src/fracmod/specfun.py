"""Gamma, log-Gamma and Beta functions for positive real arguments.

log_gamma uses the Lanczos rational approximation with g = 7 and 9
coefficients, which keeps the relative error of ln Gamma below roughly
1e-13 on [1e-3, 170].  Arguments at or below zero are rejected: nothing
in this library evaluates Gamma off the positive half-line.
"""

import math

from .errors import DomainError, RangeError

__all__ = ["log_gamma", "gamma", "beta", "log_beta"]

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# Gamma overflows double precision just above this argument.
_GAMMA_OVERFLOW_X = 171.624376956302725


def _check_positive(name, x):
    if not isinstance(x, (int, float)) or not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} requires a finite positive argument, got {x!r}")


def log_gamma(x):
    """Natural log of Gamma(x) for x > 0."""
    _check_positive("log_gamma", x)
    if x < 0.5:
        # Recursion keeps the Lanczos series on its accurate range.
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    s = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        s += _LANCZOS_COEFFS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(s)


def gamma(x):
    """Gamma(x) for x > 0; raises RangeError once the result overflows."""
    _check_positive("gamma", x)
    if x > _GAMMA_OVERFLOW_X:
        raise RangeError(f"gamma({x}) overflows double precision")
    return math.exp(log_gamma(x))


def log_beta(a, b):
    """Natural log of B(a, b) for a, b > 0."""
    _check_positive("log_beta", a)
    _check_positive("log_beta", b)
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta(a, b):
    """Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    return math.exp(log_beta(a, b))

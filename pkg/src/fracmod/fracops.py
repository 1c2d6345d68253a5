"""Fractional operators: Riemann-Liouville integral/derivative, Riesz potential.

All singular convolutions use product integration: the integrand is
replaced by its piecewise-linear interpolant and the kernel moment over
each panel is evaluated in closed form, so the endpoint singularity of
(x - t)^(e-1) never meets a quadrature node.  On a uniform grid the
panel weights depend only on the index offset, which turns the O(n^2)
sum into a discrete convolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.signal import fftconvolve

from .errors import DomainError
from .gridfn import (
    Constant,
    GridFunction,
    GridFunctionND,
    Power,
    SingularPower,
    as_nd,
)
from .specfun import beta as beta_fn
from .specfun import gamma, log_gamma

__all__ = [
    "frac_integral",
    "frac_derivative",
    "frac_image_exact",
    "ClosedFormImage",
    "riesz_potential",
    "riesz_existence_check",
    "ExistenceCheck",
]


def _check_order(alpha, upper=1.0):
    if not (isinstance(alpha, (int, float)) and 0.0 < alpha < upper):
        raise DomainError(f"fractional order must lie in (0, {upper}), got {alpha!r}")


def _panel_weights(exponent: float, step: float, n: int):
    """Left/right endpoint weights for integrating u^(exponent-1) against
    the linear interpolant over panels at offsets k = 1 .. n-1.

    Returns (w0, w1) with w0[k] multiplying the sample at the far panel
    end (offset k) and w1[k] the sample at the near end (offset k - 1).
    """
    e = exponent
    k = np.arange(n, dtype=float)
    ke = k**e
    ke1 = k ** (e + 1.0)
    he = step**e
    w0 = np.zeros(n)
    w1 = np.zeros(n)
    kk = k[1:]
    moment0 = (ke[1:] - ke[:-1]) / e  # integral of u^(e-1) over the panel
    moment1 = (ke1[1:] - ke1[:-1]) / (e + 1.0)  # integral of u^e
    w1[1:] = he * (kk * moment0 - moment1)
    w0[1:] = he * moment0 - w1[1:]
    return w0, w1


def _abel_convolve(samples: np.ndarray, exponent: float, step: float) -> np.ndarray:
    """J_i = integral over (x_0, x_i) of interp(t) (x_i - t)^(exponent-1) dt."""
    n = samples.shape[0]
    w0, w1 = _panel_weights(exponent, step, n)
    # Per panel [t_j, t_{j+1}] with offset k = i - j:
    #   contribution = w0[k] * f_j + w1[k] * f_{j+1}
    shifted = samples.copy()
    shifted[0] = 0.0  # the j = -1 phantom panel must not see f_0
    w1s = np.empty(n)
    w1s[:-1] = w1[1:]
    w1s[-1] = 0.0
    out = np.convolve(samples, w0)[:n] + np.convolve(shifted, w1s)[:n]
    out[0] = 0.0
    return out


def frac_integral(f: GridFunction, alpha: float) -> GridFunction:
    """Riemann-Liouville fractional integral of order alpha in (0, 1).

    The grid must start at 0; the value at x = 0 is 0.
    """
    _check_order(alpha)
    if f.grid.a != 0.0:
        raise DomainError(f"frac_integral needs grid starting at 0, got a={f.grid.a}")
    vals = _abel_convolve(f.samples, alpha, f.grid.step) / gamma(alpha)
    return GridFunction(f.grid, vals)


def frac_derivative(f: GridFunction, alpha: float) -> GridFunction:
    """Riemann-Liouville fractional derivative of order alpha in (0, 1).

    Computes J(x) = integral of f(t) (x - t)^(-alpha) dt by product
    integration, differentiates J with central differences (one-sided at
    the right endpoint) and divides by Gamma(1 - alpha).  The sample at
    x = 0 is set to 0 by convention (the limit need not exist there).
    """
    _check_order(alpha)
    if f.grid.a != 0.0:
        raise DomainError(f"frac_derivative needs grid starting at 0, got a={f.grid.a}")
    j = _abel_convolve(f.samples, 1.0 - alpha, f.grid.step)
    d = np.gradient(j, f.grid.step) / gamma(1.0 - alpha)
    d[0] = 0.0
    d[~np.isfinite(d)] = 0.0
    return GridFunction(f.grid, d)


@dataclass(frozen=True)
class ClosedFormImage:
    """Exact fractional image of the form coefficient * x^exponent.

    support limits where the formula is valid (open interval); evaluation
    outside returns 0.
    """

    coefficient: float
    exponent: float
    support: tuple = (0.0, math.inf)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x > lo) & (x < hi)
        safe = np.where(x > 0, x, 1.0)
        vals = self.coefficient * np.power(safe, self.exponent)
        out = np.where(inside, vals, 0.0)
        return out if out.ndim else float(out)


def frac_image_exact(f, alpha: float, which: str) -> ClosedFormImage:
    """Exact fractional integral/derivative for the power test families.

    Supported inputs: Power, SingularPower (integral only), Constant.
    These closed forms are the oracles every quadrature test compares
    against, so they are built purely from Gamma/Beta evaluations.
    """
    _check_order(alpha)
    if which not in ("integral", "derivative"):
        raise DomainError(f"which must be 'integral' or 'derivative', got {which!r}")

    if isinstance(f, Power):
        b = f.beta
        if which == "integral":
            coef = math.exp(log_gamma(b + 1.0) - log_gamma(alpha + b + 1.0))
            return ClosedFormImage(coef, alpha + b)
        if not b > alpha:
            raise DomainError(
                f"derivative of x^beta requires beta > alpha, got beta={b}, alpha={alpha}"
            )
        coef = math.exp(log_gamma(b + 1.0) - log_gamma(b - alpha + 1.0))
        return ClosedFormImage(coef, b - alpha)

    if isinstance(f, SingularPower):
        if which != "integral":
            raise DomainError("only the fractional integral of x^-beta is tabulated")
        coef = beta_fn(1.0 - f.beta, alpha) / gamma(alpha)
        return ClosedFormImage(coef, alpha - f.beta, support=(0.0, 1.0))

    if isinstance(f, Constant):
        if which == "integral":
            return ClosedFormImage(f.c / gamma(alpha + 1.0), alpha)
        return ClosedFormImage(f.c / gamma(1.0 - alpha), -alpha)

    raise DomainError(f"no exact fractional image for {type(f).__name__}")


def _square_cell_kernel_integral(ax: float, ay: float, alpha: float) -> float:
    """Integral of |u|^(alpha-2) over the rectangle [-ax, ax] x [-ay, ay].

    Polar decomposition: (1/alpha) * integral over theta of R(theta)^alpha,
    with R the distance to the rectangle boundary.  The two smooth sector
    integrals are evaluated with 64-point Gauss-Legendre, which is exact
    to machine precision for these analytic integrands.
    """
    phi = math.atan2(ay, ax)
    nodes, weights = np.polynomial.legendre.leggauss(64)

    def _sector(lo, hi, half_width, trig):
        t = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
        vals = (half_width / trig(t)) ** alpha
        return 0.5 * (hi - lo) * float(np.dot(weights, vals))

    left = _sector(0.0, phi, ax, np.cos)
    right = _sector(phi, 0.5 * math.pi, ay, np.sin)
    return 4.0 * (left + right) / alpha


def riesz_potential(f, alpha: float) -> GridFunctionND:
    """Riesz potential R_alpha f(x) = integral of f(y) |x - y|^(alpha - d) dy.

    f is zero-extended outside its box.  d = 1 uses the same product
    integration as the Riemann-Liouville operators on both sides of the
    singularity.  d = 2 uses the midpoint rule over cells centered at the
    sample nodes, with the singular cell replaced by f(x) times the
    closed-form kernel integral over that cell.
    """
    g = as_nd(f)
    d = g.dim
    _check_order(alpha, upper=float(d))

    if d == 1:
        step = g.steps[0]
        vals = g.samples
        left = _abel_convolve(vals, alpha, step)
        right = _abel_convolve(vals[::-1], alpha, step)[::-1]
        return GridFunctionND(g.box, left + right)

    hx, hy = g.steps
    n1, n2 = g.samples.shape
    dx = np.arange(-(n1 - 1), n1) * hx
    dy = np.arange(-(n2 - 1), n2) * hy
    r = np.hypot(dx[:, None], dy[None, :])
    with np.errstate(divide="ignore"):
        kern = np.where(r > 0, r, 1.0) ** (alpha - 2.0) * (hx * hy)
    kern[n1 - 1, n2 - 1] = _square_cell_kernel_integral(hx / 2.0, hy / 2.0, alpha)
    out = fftconvolve(g.samples, kern, mode="valid")
    return GridFunctionND(g.box, out)


class ExistenceCheck(NamedTuple):
    finite_value: float
    ok: bool


def riesz_existence_check(f, alpha: float) -> ExistenceCheck:
    """Evaluate the existence integral of (1 + |y|)^(alpha - d) |f(y)| dy."""
    g = as_nd(f)
    d = g.dim
    _check_order(alpha, upper=float(d))
    if d == 1:
        y = g.axis_points(0)
        integrand = (1.0 + np.abs(y)) ** (alpha - 1.0) * np.abs(g.samples)
        value = float(np.trapezoid(integrand, y))
    else:
        y1 = g.axis_points(0)
        y2 = g.axis_points(1)
        r = np.hypot(y1[:, None], y2[None, :])
        integrand = (1.0 + r) ** (alpha - 2.0) * np.abs(g.samples)
        value = float(np.trapezoid(np.trapezoid(integrand, y2, axis=1), y1))
    return ExistenceCheck(value, math.isfinite(value))

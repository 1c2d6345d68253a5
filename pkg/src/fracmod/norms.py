"""Scalar functionals: Lp norms, windowed mass, weighted and Orlicz norms.

All integrals are grid quadrature (trapezoid in 1-D, tensor trapezoid =
corner-mean-per-cell in 2-D), so every functional here is exact for
piecewise-(bi)linear data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, DomainError, RangeError
from .gridfn import GridFunction, GridFunctionND, as_nd

__all__ = [
    "lp_norm",
    "z_constant",
    "delta_p",
    "weighted_norm",
    "OrliczParams",
    "young_orlicz",
    "luxemburg_norm",
    "orlicz_weighted_norm",
    "kappa",
]

_E = math.e


def _integral(g: GridFunctionND, values: np.ndarray) -> float:
    if g.dim == 1:
        return float(np.trapezoid(values, g.axis_points(0)))
    inner = np.trapezoid(values, g.axis_points(1), axis=1)
    return float(np.trapezoid(inner, g.axis_points(0)))


def _existence_integral(g: GridFunctionND, alpha: float) -> float:
    if g.dim == 1:
        r = np.abs(g.axis_points(0))
    else:
        r = np.hypot(g.axis_points(0)[:, None], g.axis_points(1)[None, :])
    return _integral(g, (1.0 + r) ** (alpha - g.dim) * np.abs(g.samples))


def lp_norm(f, p: float) -> float:
    """(integral of |f|^p)^(1/p) by grid quadrature."""
    if not p >= 1.0:
        raise DomainError(f"lp_norm needs p >= 1, got {p}")
    g = as_nd(f)
    return _integral(g, np.abs(g.samples) ** p) ** (1.0 / p)


def z_constant(alpha: float, p: float, pole_guard: float = 1e-10) -> float:
    """[(p - 1) / (alpha p - 1)]^(1 - 1/p); finite only for p > 1/alpha."""
    if not (0.0 < alpha and p > 1.0):
        raise DomainError(f"need alpha > 0 and p > 1, got alpha={alpha}, p={p}")
    denom = alpha * p - 1.0
    if denom <= 0.0:
        raise DomainError(f"z_constant needs p > 1/alpha, got alpha={alpha}, p={p}")
    if denom < pole_guard:
        raise RangeError(f"p = {p} is within {pole_guard} of the pole at 1/alpha")
    return ((p - 1.0) / denom) ** (1.0 - 1.0 / p)


def delta_p(f: GridFunction, h: float, p: float) -> float:
    """Largest local Lp mass over windows of width below h.

    The sup over real offsets is restricted to grid-aligned windows of
    w = floor(h / step) cells; the quantization error is at most one
    cell's mass.  Zero-extension to the left never increases the sup, so
    only windows inside [a, b] are scanned.
    """
    if not h > 0:
        raise DomainError(f"delta_p needs h > 0, got {h}")
    if not p >= 1.0:
        raise DomainError(f"delta_p needs p >= 1, got {p}")
    step = f.grid.step
    w = int(math.floor(h / step + 1e-12))
    n = f.grid.n
    if w <= 0:
        return 0.0
    w = min(w, n - 1)
    fp = np.abs(f.samples) ** p
    cell_mass = 0.5 * step * (fp[1:] + fp[:-1])
    prefix = np.concatenate(([0.0], np.cumsum(cell_mass)))
    best = float(np.max(prefix[w:] - prefix[:-w]))
    return best ** (1.0 / p)


def weighted_norm(f, alpha: float, p: float) -> float:
    """max of the (1 + |y|)^(alpha - d) weighted L1 mass and the Lp norm."""
    g = as_nd(f)
    d = g.dim
    if not 0.0 < alpha < d:
        raise DomainError(f"need 0 < alpha < d, got alpha={alpha}, d={d}")
    if not p > d / alpha:
        raise DomainError(f"need p > d/alpha = {d / alpha}, got p={p}")
    return max(_existence_integral(g, alpha), lp_norm(g, p))


@dataclass(frozen=True)
class OrliczParams:
    p: float
    gamma: float

    def __post_init__(self):
        if not self.p > 1.0:
            raise ConstructionError(f"OrliczParams needs p > 1, got {self.p}")
        if not self.gamma > 0.0:
            raise ConstructionError(f"OrliczParams needs gamma > 0, got {self.gamma}")


def young_orlicz(u, params: OrliczParams):
    """Spliced Young function: |u|^p (ln|u|)^gamma above e, quadratic below.

    Both branches meet at |u| = e with the common value e^p.
    """
    arr = np.asarray(u, dtype=float)
    a = np.abs(arr)
    big = a > _E
    safe = np.where(big, a, _E)
    upper = safe**params.p * np.log(safe) ** params.gamma
    lower = math.exp(params.p - 2.0) * arr**2
    out = np.where(big, upper, lower)
    return out if out.ndim else float(out)


def _orlicz_integral(g: GridFunctionND, params: OrliczParams, lam: float) -> float:
    return _integral(g, young_orlicz(g.samples / lam, params))


def luxemburg_norm(f, params: OrliczParams, rel_width: float = 1e-10) -> float:
    """Luxemburg gauge inf{lam > 0 : integral of Phi(f / lam) <= 1}.

    Found by bisection on lam; the integral is continuous and strictly
    decreasing wherever f is not identically zero.
    """
    g = as_nd(f)
    if not np.any(g.samples):
        return 0.0
    hi = max(float(np.max(np.abs(g.samples))), 1e-300)
    while _orlicz_integral(g, params, hi) > 1.0:
        hi *= 2.0
    lo = hi
    while _orlicz_integral(g, params, lo) <= 1.0:
        lo *= 0.5
        if lo < 1e-280:
            return 0.0
    while (hi - lo) > rel_width * hi:
        mid = 0.5 * (hi + lo)
        if _orlicz_integral(g, params, mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def orlicz_weighted_norm(f, alpha: float, params: OrliczParams) -> float:
    """Luxemburg norm plus the (1 + |y|)^(alpha - d) weighted L1 mass."""
    g = as_nd(f)
    if not 0.0 < alpha < g.dim:
        raise DomainError(f"need 0 < alpha < d, got alpha={alpha}, d={g.dim}")
    return luxemburg_norm(g, params) + _existence_integral(g, alpha)


def kappa(f, p: float, alpha: float, gamma: float) -> float:
    """max of the weighted L1 mass and the log-refined Lp functional.

    kappa_0(p)^p integrates |f|^p [lnp |f|]^(gamma p) with
    lnp z = max(1, ln z), following the source convention verbatim.
    """
    g = as_nd(f)
    if not p >= 1.0:
        raise DomainError(f"kappa needs p >= 1, got {p}")
    if not 0.0 < alpha < g.dim:
        raise DomainError(f"need 0 < alpha < d, got alpha={alpha}, d={g.dim}")
    a = np.abs(g.samples)
    safe = np.where(a > 0, a, 1.0)
    lnp = np.maximum(1.0, np.log(safe))
    kappa0 = _integral(g, a**p * lnp ** (gamma * p)) ** (1.0 / p)
    return max(_existence_integral(g, alpha), kappa0)

"""Modulus of continuity on grids and the singular modulus integral.

The sup over pairs |x - y| <= h is evaluated over grid points only.  Two
monotone-deque sliding-window passes (running max and running min) give
the exact grid sup in O(n); grid quantization costs O(step^beta) for a
Hoelder-beta function.
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, DomainError
from .gridfn import GridFunction

__all__ = ["modulus", "modulus_profile", "omega_integral", "ModulusProfile"]


def _sliding_max(vals: np.ndarray, length: int) -> np.ndarray:
    """Max over each window of `length` consecutive samples (monotone deque)."""
    n = vals.shape[0]
    out = np.empty(n - length + 1)
    q: deque[int] = deque()
    for i in range(n):
        v = vals[i]
        while q and vals[q[-1]] <= v:
            q.pop()
        q.append(i)
        if q[0] <= i - length:
            q.popleft()
        if i >= length - 1:
            out[i - length + 1] = vals[q[0]]
    return out


def modulus(f: GridFunction, h: float) -> float:
    """Grid modulus of continuity: max |f(x_i) - f(x_j)| over |i - j| <= h/step."""
    if not h > 0:
        raise DomainError(f"modulus needs h > 0, got {h}")
    w = int(math.floor(h / f.grid.step + 1e-12))
    if w <= 0:
        return 0.0
    w = min(w, f.grid.n - 1)
    vals = f.samples
    wmax = _sliding_max(vals, w + 1)
    wmin = -_sliding_max(-vals, w + 1)
    return float(np.max(wmax - wmin))


@dataclass(frozen=True)
class ModulusProfile:
    """Tabulated h -> omega(f, h), nondecreasing in h."""

    h_values: np.ndarray = field(repr=False)
    omega_values: np.ndarray = field(repr=False)

    def __post_init__(self):
        hs = np.asarray(self.h_values, dtype=float)
        om = np.asarray(self.omega_values, dtype=float)
        if hs.shape != om.shape:
            raise ConstructionError("h and omega vectors must have equal length")
        if hs.size and (np.any(hs <= 0) or np.any(np.diff(hs) <= 0)):
            raise ConstructionError("h values must be positive and increasing")
        if np.any(om < 0):
            raise ConstructionError("omega values must be non-negative")
        hs.setflags(write=False)
        om.setflags(write=False)
        object.__setattr__(self, "h_values", hs)
        object.__setattr__(self, "omega_values", om)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "omega"])
        for h, om in zip(self.h_values, self.omega_values):
            w.writerow([repr(float(h)), repr(float(om))])
        return buf.getvalue()


def modulus_profile(f: GridFunction, h_values) -> ModulusProfile:
    """Apply modulus per h; the grid sup is automatically nondecreasing."""
    hs = np.asarray(sorted(float(h) for h in h_values))
    om = np.array([modulus(f, h) for h in hs])
    # The window sup is monotone in the window size; accumulate guards
    # against ties being broken differently by floating-point noise.
    om = np.maximum.accumulate(om) if om.size else om
    return ModulusProfile(hs, om)


def omega_integral(profile: ModulusProfile, alpha: float, h: float) -> float:
    """integral over (0, h) of omega(t) t^(-1-alpha) dt from a profile.

    On [h_min, h] the integrand is integrated by the trapezoid rule in
    log t.  Below the smallest resolvable h the profile is extrapolated
    as a power law C t^kappa fitted to the two smallest points: the tail
    is integrated analytically for kappa > alpha and reported as +inf
    otherwise (the function fails the finiteness condition numerically).
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"omega_integral needs alpha in (0, 1), got {alpha}")
    hs = profile.h_values
    om = profile.omega_values
    if hs.size == 0 or not np.any(om):
        return 0.0
    if not (hs[0] <= h <= hs[-1] * (1.0 + 1e-12)):
        raise DomainError(f"h = {h} outside profile range [{hs[0]}, {hs[-1]}]")

    keep = hs <= h * (1.0 + 1e-12)
    ts = hs[keep]
    ws = om[keep]
    if ts[-1] < h * (1.0 - 1e-12):
        # log-linear interpolation of omega at the cut point
        w_h = float(np.interp(math.log(h), np.log(hs), om))
        ts = np.append(ts, h)
        ws = np.append(ws, w_h)

    body = 0.0
    if ts.size >= 2:
        s = np.log(ts)
        g = ws * ts ** (-alpha)  # integrand after dt = t ds
        body = float(np.trapezoid(g, s))

    # Singular tail below the first resolvable h.
    t0, t1 = ts[0], ts[min(1, ts.size - 1)]
    w0, w1 = ws[0], ws[min(1, ws.size - 1)]
    if w0 == 0.0:
        tail = 0.0
    elif ts.size < 2 or w1 <= 0.0 or t1 <= t0:
        return math.inf
    else:
        kap = math.log(w1 / w0) / math.log(t1 / t0)
        if kap <= alpha:
            return math.inf
        c = w0 / t0**kap
        tail = c * t0 ** (kap - alpha) / (kap - alpha)
    return body + tail

"""Grand Lebesgue Space machinery: psi-functions, norms, fundamental function.

The sup over a continuum of exponents p is evaluated on a caller-supplied
finite grid, so every value reported here is a certified lower bound of
the true sup; refine the grid to tighten it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConstructionError, DomainError
from .norms import lp_norm, weighted_norm

__all__ = [
    "PsiFunction",
    "gls_norm",
    "fundamental_function",
    "psi_from_function",
    "nu_builder",
    "default_p_grid",
]

_INF = math.inf


@dataclass(frozen=True)
class PsiFunction:
    """Positive function of the exponent p on a support interval [A, B].

    Evaluation outside the support returns +inf; the Grand Lebesgue
    convention C / inf = 0 then drops such points from any sup.
    """

    A: float
    B: float
    evaluator: Callable[[float], float] = field(repr=False)
    p_grid: Optional[np.ndarray] = field(default=None, repr=False)
    values: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if not (1.0 <= self.A < self.B):
            raise ConstructionError(f"need 1 <= A < B, got A={self.A}, B={self.B}")

    def __call__(self, p: float) -> float:
        if not (self.A <= p <= self.B):
            return _INF
        return float(self.evaluator(p))

    def contains(self, p: float) -> bool:
        return self.A <= p <= self.B

    @classmethod
    def from_callable(cls, A: float, B: float, fn, validate: bool = True):
        psi = cls(A, B, fn)
        if validate:
            psi.validate()
        return psi

    @classmethod
    def from_table(cls, p_grid, values) -> "PsiFunction":
        ps = np.asarray(p_grid, dtype=float)
        vs = np.asarray(values, dtype=float)
        if ps.size < 2 or ps.shape != vs.shape or np.any(np.diff(ps) <= 0):
            raise ConstructionError("tabulated psi needs an increasing p grid")
        if np.any(~np.isfinite(vs)) or np.min(vs) <= 0.0:
            raise ConstructionError("tabulated psi values must be finite and positive")

        def interp(p, _ps=ps, _vs=vs):
            return float(np.interp(p, _ps, _vs))

        return cls(float(ps[0]), float(ps[-1]), interp, p_grid=ps, values=vs)

    @classmethod
    def degenerate(cls, r: float, A: float = 1.0, B: float = _INF) -> "PsiFunction":
        """psi_(r): 1 at p = r, +inf elsewhere; G(psi_(r)) is plain L_r."""
        if not A < r < B:
            raise ConstructionError(f"need r in (A, B), got r={r}")

        def at_r(p, _r=r):
            return 1.0 if p == _r else _INF

        return cls(A, B, at_r)

    def validate(self, samples: int = 129) -> None:
        hi = self.B if math.isfinite(self.B) else max(2.0 * self.A, 64.0)
        ps = np.linspace(self.A, hi, samples)
        vals = np.array([self(p) for p in ps])
        finite = vals[np.isfinite(vals)]
        if finite.size == 0 or np.min(finite) <= 0.0:
            raise ConstructionError("psi must be positive with positive infimum")

    def to_json(self) -> str:
        if self.p_grid is None:
            raise ConstructionError("only tabulated psi functions serialize")
        return json.dumps(
            {
                "A": self.A,
                "B": self.B,
                "p_grid": [float(p) for p in self.p_grid],
                "values": [float(v) for v in self.values],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "PsiFunction":
        doc = json.loads(text)
        return cls.from_table(doc["p_grid"], doc["values"])


def default_p_grid(A: float, B: float, count: int = 64) -> np.ndarray:
    """count log-spaced exponents strictly inside (A, B)."""
    hi = B if math.isfinite(B) else max(8.0 * A, 64.0)
    edges = np.geomspace(A, hi, count + 2)
    return edges[1:-1]


def _check_grid(psi: PsiFunction, p_grid) -> np.ndarray:
    ps = np.asarray(list(p_grid), dtype=float)
    if ps.size == 0:
        raise DomainError("p grid must be nonempty")
    for p in ps:
        if not psi.contains(p):
            raise DomainError(f"p = {p} outside psi support [{psi.A}, {psi.B}]")
    return ps


def gls_norm(f, psi: PsiFunction, p_grid) -> float:
    """max over the p grid of |f|_p / psi(p); a lower bound of the true sup."""
    ps = _check_grid(psi, p_grid)
    best = 0.0
    for p in ps:
        denom = psi(p)
        if math.isinf(denom):
            continue  # C / inf = 0
        best = max(best, lp_norm(f, p) / denom)
    return best


def fundamental_function(psi: PsiFunction, delta: float, p_grid) -> float:
    """max over the p grid of delta^(1/p) / psi(p)."""
    if not delta > 0:
        raise DomainError(f"fundamental_function needs delta > 0, got {delta}")
    ps = _check_grid(psi, p_grid)
    best = 0.0
    for p in ps:
        denom = psi(p)
        if math.isinf(denom):
            continue
        best = max(best, delta ** (1.0 / p) / denom)
    return best


def psi_from_function(f, alpha: float, d: int, p_grid) -> PsiFunction:
    """Tabulate p -> weighted_norm(f, alpha, p) as a psi-function.

    Rejects inputs whose tabulated values are not bounded away from zero
    (the zero function, for instance, generates no Grand Lebesgue space).
    """
    ps = np.asarray(sorted(float(p) for p in p_grid))
    if ps.size < 2:
        raise DomainError("psi_from_function needs at least two grid exponents")
    if not np.all(ps > d / alpha):
        raise DomainError(f"all p must exceed d/alpha = {d / alpha}")
    vals = np.array([weighted_norm(f, alpha, p) for p in ps])
    if np.min(vals) <= 0.0:
        raise ConstructionError("weighted norms must be positive to build psi")
    return PsiFunction.from_table(ps, vals)


def nu_builder(psi: PsiFunction, alpha: float, d: int, k_r_proxy: float = 1.0):
    """Multiply psi by K_R(alpha, p) [(p-1)/(alpha p - d)]^(1 - 1/p).

    K_R enters only as a caller-supplied positive proxy constant; also
    serves the log-refined variant when the Orlicz tabulation is passed
    as psi.
    """
    if not k_r_proxy > 0:
        raise DomainError(f"K_R proxy must be positive, got {k_r_proxy}")
    if psi.A < d / alpha:
        raise DomainError(
            f"psi support must lie in (d/alpha, inf) = ({d / alpha}, inf), "
            f"got A = {psi.A}"
        )

    def nu(p, _psi=psi, _a=alpha, _d=d, _k=k_r_proxy):
        base = _psi(p)
        if math.isinf(base):
            return _INF
        bracket = ((p - 1.0) / (_a * p - _d)) ** (1.0 - 1.0 / p)
        return base * _k * bracket

    return PsiFunction(psi.A, psi.B, nu)

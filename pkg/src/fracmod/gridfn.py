"""Uniform grids, sampled functions and closed-form test families.

Grids are always uniform: every numerical operator in the library relies
on translation-invariant quadrature weights and O(n) sliding windows.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, DomainError, SamplingError

__all__ = [
    "Grid1D",
    "GridFunction",
    "GridFunctionND",
    "Power",
    "SingularPower",
    "Indicator",
    "Constant",
    "sample",
    "dilate",
    "zero_extend",
]


@dataclass(frozen=True)
class Grid1D:
    """n equally spaced points on [a, b], endpoints included."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not (self.a < self.b):
            raise ConstructionError(f"need a < b, got [{self.a}, {self.b}]")
        if self.n < 2:
            raise ConstructionError(f"need n >= 2, got {self.n}")

    @property
    def step(self) -> float:
        return (self.b - self.a) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return self.a + self.step * np.arange(self.n)


@dataclass(frozen=True)
class GridFunction:
    """Real-valued samples on a Grid1D; immutable after construction."""

    grid: Grid1D
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.shape != (self.grid.n,):
            raise ConstructionError(
                f"sample count {arr.shape} does not match grid size {self.grid.n}"
            )
        if not np.all(np.isfinite(arr)):
            raise ConstructionError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "value"])
        for x, v in zip(self.grid.points, self.samples):
            w.writerow([repr(float(x)), repr(float(v))])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "grid": {"a": self.grid.a, "b": self.grid.b, "n": self.grid.n},
                "samples": [float(v) for v in self.samples],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "GridFunction":
        doc = json.loads(text)
        g = doc["grid"]
        return cls(Grid1D(g["a"], g["b"], g["n"]), np.asarray(doc["samples"], float))


@dataclass(frozen=True)
class GridFunctionND:
    """Sampled function on a 1- or 2-dimensional box.

    box is a per-axis tuple of (a, b, n); samples are stored row-major
    with shape (n1,) or (n1, n2).
    """

    box: tuple
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.box) not in (1, 2):
            raise ConstructionError("only dimensions 1 and 2 are supported")
        shape = tuple(n for (_, _, n) in self.box)
        arr = np.asarray(self.samples, dtype=float).reshape(shape)
        if not np.all(np.isfinite(arr)):
            raise ConstructionError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        for a, b, n in self.box:
            if not (a < b) or n < 2:
                raise ConstructionError(f"bad axis ({a}, {b}, {n})")

    @property
    def dim(self) -> int:
        return len(self.box)

    @property
    def steps(self) -> tuple:
        return tuple((b - a) / (n - 1) for (a, b, n) in self.box)

    def axis_points(self, k: int) -> np.ndarray:
        a, b, n = self.box[k]
        return a + (b - a) / (n - 1) * np.arange(n)


def as_nd(f) -> GridFunctionND:
    """View a GridFunction as a 1-D GridFunctionND (no copy of values)."""
    if isinstance(f, GridFunctionND):
        return f
    return GridFunctionND(((f.grid.a, f.grid.b, f.grid.n),), f.samples)


# ---------------------------------------------------------------------------
# Closed-form test functions.  Each knows how to evaluate itself pointwise;
# exact fractional images live in fracops.frac_image_exact.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Power:
    """x ** beta on (0, b), beta > 0."""

    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ConstructionError(f"Power needs beta > 0, got {self.beta}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, np.power(np.maximum(x, 0.0), self.beta), 0.0)


@dataclass(frozen=True)
class SingularPower:
    """x ** (-beta) restricted to (0, 1), beta in (0, 1).

    The sample at x = 0 is defined as 0: the point has measure zero and
    all quadrature treats (0, 1) as an open interval.
    """

    beta: float

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ConstructionError(
                f"SingularPower needs beta in (0, 1), got {self.beta}"
            )

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x > 0) & (x < 1)
        safe = np.where(inside, x, 1.0)
        return np.where(inside, np.power(safe, -self.beta), 0.0)


@dataclass(frozen=True)
class Indicator:
    """Indicator of the open interval (c, d)."""

    c: float
    d: float

    def __post_init__(self):
        if not self.c < self.d:
            raise ConstructionError(f"Indicator needs c < d, got ({self.c}, {self.d})")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x > self.c) & (x < self.d), 1.0, 0.0)


@dataclass(frozen=True)
class Constant:
    """The constant function c."""

    c: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.full_like(x, float(self.c))


def sample(f, grid: Grid1D) -> GridFunction:
    """Evaluate a closed-form function at the grid points (no quadrature)."""
    vals = np.asarray(f(grid.points), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = grid.points[~np.isfinite(vals)][0]
        raise SamplingError(f"{f!r} is non-finite at x = {bad}")
    return GridFunction(grid, vals)


def dilate(f: GridFunction, lam: float) -> GridFunction:
    """Dilation T_lam f(x) = f(lam * x) on the rescaled grid (a/lam, b/lam, n).

    With this grid convention the new points map exactly onto the old
    ones (lam * x_i' = x_i), so the samples carry over without
    interpolation for every lam > 0.
    """
    if not (isinstance(lam, (int, float)) and math.isfinite(lam) and lam > 0):
        raise DomainError(f"dilation factor must be positive, got {lam!r}")
    g = Grid1D(f.grid.a / lam, f.grid.b / lam, f.grid.n)
    return GridFunction(g, f.samples)


def zero_extend(f: GridFunction):
    """Evaluator on all of R: linear between samples, 0 outside [a, b]."""
    xs = f.grid.points
    ys = f.samples

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, xs, ys, left=0.0, right=0.0)
        # np.interp clamps at the boundary values; enforce true zero outside.
        out = np.where((x < xs[0]) | (x > xs[-1]), 0.0, out)
        return out if out.ndim else float(out)

    return evaluate

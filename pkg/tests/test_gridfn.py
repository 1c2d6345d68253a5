import numpy as np
import pytest

from fracmod import (
    Constant,
    Grid1D,
    GridFunction,
    GridFunctionND,
    Indicator,
    Power,
    SingularPower,
    dilate,
    lp_norm,
    sample,
    zero_extend,
)
from fracmod.errors import ConstructionError, DomainError


def test_grid_invariants():
    g = Grid1D(0.0, 1.0, 5)
    assert g.step == pytest.approx(0.25)
    assert np.allclose(g.points, [0.0, 0.25, 0.5, 0.75, 1.0])
    with pytest.raises(ConstructionError):
        Grid1D(1.0, 0.0, 5)
    with pytest.raises(ConstructionError):
        Grid1D(0.0, 1.0, 1)


def test_sample_is_exact():
    g = Grid1D(0.0, 1.0, 3)
    assert np.allclose(sample(Power(1.0), g).samples, [0.0, 0.5, 1.0])
    assert np.allclose(sample(Constant(3.0), g).samples, 3.0)
    # no quadrature: direct power evaluation matches exactly
    g2 = Grid1D(0.0, 2.0, 257)
    f = sample(Power(0.7), g2)
    assert np.array_equal(f.samples[1:], g2.points[1:] ** 0.7)


def test_singular_power_conventions():
    sp = SingularPower(0.5)
    assert sp(0.25) == pytest.approx(2.0)
    assert sp(0.0) == 0.0  # zero-extension convention at the singularity
    assert sp(1.5) == 0.0
    with pytest.raises(ConstructionError):
        SingularPower(1.5)


def test_dilate_identity_and_algebra():
    g = Grid1D(0.0, 1.0, 101)
    f = sample(Power(0.7), g)
    same = dilate(f, 1.0)
    assert np.array_equal(same.samples, f.samples)
    # samples of dilate are those of (lam x)^beta on the new grid
    d = dilate(f, 2.0)
    assert np.allclose(d.samples, (2.0 * d.grid.points) ** 0.7)
    # round trip
    back = dilate(dilate(f, 2.0), 0.5)
    assert np.max(np.abs(back.samples - f.samples)) <= 1e-12
    with pytest.raises(DomainError):
        dilate(f, 0.0)


@pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
def test_dilate_lp_scaling(p):
    g = Grid1D(0.0, 1.0, 513)
    f = sample(Power(0.5), g)
    lam = 2.0
    assert lp_norm(dilate(f, lam), p) == pytest.approx(
        lam ** (-1.0 / p) * lp_norm(f, p), rel=1e-12
    )


def test_zero_extend():
    g = Grid1D(0.0, 1.0, 5)
    f = GridFunction(g, np.array([0.0, 1.0, 4.0, 9.0, 16.0]))
    ev = zero_extend(f)
    assert ev(-1.0) == 0.0
    assert ev(2.0) == 0.0
    assert ev(0.5) == 4.0
    assert ev(0.125) == pytest.approx(0.5)  # midpoint mean of 0 and 1


def test_serialization_roundtrip():
    g = Grid1D(0.0, 1.0, 4)
    f = GridFunction(g, np.array([0.0, 0.1, 0.2, 0.3]))
    doc = f.to_json()
    back = GridFunction.from_json(doc)
    assert back.grid == f.grid
    assert np.array_equal(back.samples, f.samples)
    lines = f.to_csv().splitlines()
    assert lines[0] == "x,value"
    assert len(lines) == 5


def test_gridfunction_validation():
    g = Grid1D(0.0, 1.0, 4)
    with pytest.raises(ConstructionError):
        GridFunction(g, np.array([1.0, 2.0]))
    with pytest.raises(ConstructionError):
        GridFunction(g, np.array([1.0, np.inf, 0.0, 0.0]))
    with pytest.raises(ConstructionError):
        GridFunctionND(((0.0, 1.0, 2), (0.0, 1.0, 2), (0.0, 1.0, 2)), np.zeros(8))


def test_indicator():
    ind = Indicator(0.2, 0.8)
    assert ind(0.5) == 1.0
    assert ind(0.9) == 0.0
    with pytest.raises(ConstructionError):
        Indicator(1.0, 0.0)

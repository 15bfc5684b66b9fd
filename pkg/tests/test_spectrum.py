import numpy as np
import pytest

from ifsdim.dimensions import d_bar, d_under
from ifsdim.errors import HypothesisNotMet
from ifsdim.params import validate_params
from ifsdim.spectrum import spectrum_lower_bounds, spectrum_point


@pytest.fixture(scope="module")
def curve5(params_5):
    return spectrum_lower_bounds(params_5)


def test_reference_points(params_2):
    assert spectrum_point(0.9, params_2) == pytest.approx(0.71945428853665004, abs=1e-12)
    assert spectrum_point(1.0, params_2) == pytest.approx(0.82953945022559575, abs=1e-12)


def test_grid_shape(curve5):
    assert len(curve5.t_grid) == 512
    assert curve5.t_grid[0] == 0.0 and curve5.t_grid[-1] == 1.0
    np.testing.assert_array_equal(curve5.diagonal, curve5.t_grid)


def test_bound_below_diagonal(curve5):
    assert np.all(curve5.upper_spectrum_lb <= curve5.t_grid + 1e-9)


def test_zero_before_intercept(curve5, params_5):
    t, f = curve5.t_grid, curve5.upper_spectrum_lb
    assert np.all(f[t <= d_bar(0.0, params_5)] == 0.0)
    assert np.all(f[t > d_bar(0.0, params_5) + 1e-3] > 0.0)


@pytest.mark.parametrize("field", ["upper_spectrum_lb", "lower_spectrum_lb"])
def test_monotone_up_to_plateau(curve5, field):
    assert np.all(np.diff(getattr(curve5, field)) >= 0.0)


def test_lower_variant_dominates(curve5, params_5):
    # d_under sits below d_bar, so its inverse (and the bound) is larger
    assert np.all(curve5.lower_spectrum_lb >= curve5.upper_spectrum_lb)
    t, f = curve5.t_grid, curve5.lower_spectrum_lb
    assert np.all(f[t <= d_under(0.0, params_5)] == 0.0)


def test_clamp_plateau(params_2):
    curve = spectrum_lower_bounds(params_2, grid_points=11, clamp_max=0.1)
    # once the mean digit saturates at 0.1 the bound stays flat
    top = curve.upper_spectrum_lb[-1]
    assert curve.upper_spectrum_lb.max() == top
    assert np.sum(curve.upper_spectrum_lb == top) > 1


def test_argument_validation(params_5):
    with pytest.raises(ValueError):
        spectrum_lower_bounds(params_5, grid_points=1)
    with pytest.raises(ValueError):
        spectrum_lower_bounds(params_5, clamp_max=4.5)
    with pytest.raises(HypothesisNotMet):
        spectrum_lower_bounds(validate_params(2, 1, 0.6))
    with pytest.raises(HypothesisNotMet):
        spectrum_lower_bounds(validate_params(2, 3, 0.3))


def test_power_beta_gives_same_curve(params_2):
    a = spectrum_lower_bounds(params_2, 32)
    b = spectrum_lower_bounds(validate_params(2, 8, "1/3"), 32)
    np.testing.assert_array_equal(a.upper_spectrum_lb, b.upper_spectrum_lb)


def test_write_csv(tmp_path, params_5):
    path = tmp_path / "s.csv"
    spectrum_lower_bounds(params_5, 5).write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,fbar_lower_bound,funder_lower_bound,upper_line_t"
    assert lines[1].startswith("0,0,0,0")
    assert len(lines) == 6

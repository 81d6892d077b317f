import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catortho import CatVector
from catortho.errors import DegenerateState
from catortho.husimi import (
    GridGeometry,
    bisector_profile,
    fringe_complementarity,
    husimi_cat,
    husimi_grid,
    husimi_quadrature_check,
    husimi_values,
)
from catortho.rasters import read_pgm, read_qgrid_csv, scale_to_bytes, write_qgrid_csv, write_qgrid_pgm

from conftest import amplitudes, phases

SQUARE6 = GridGeometry(-6, 6, -6, 6, 241, 241)


def test_vacuum_peak():
    grid = husimi_grid(0, SQUARE6)
    assert grid.values[120, 120] == pytest.approx(1, abs=1e-15)
    assert grid.geometry.re_axis()[120] == pytest.approx(0, abs=1e-14)


def test_even_cat_at_origin():
    q = husimi_values(CatVector(2, 0), 0)
    assert q == pytest.approx(0.036618993473686533, rel=1e-13)


def test_coherent_five():
    assert husimi_values(5, 5) == pytest.approx(1)
    assert husimi_values(5, 5 + 2j) == pytest.approx(math.exp(-4), rel=1e-13)


@pytest.mark.parametrize("state, geometry, target, tol", [
    (0, SQUARE6, 1.0, 1e-6),
    (CatVector(2, 0), GridGeometry(-8, 8, -8, 8, 241, 241), 1.0, 1e-5),
    (CatVector(1.5 - 1j, 2.0), GridGeometry(-8, 8, -8, 8, 201, 161), 1.0, 1e-5),
])
def test_quadrature(state, geometry, target, tol):
    assert abs(husimi_quadrature_check(husimi_cat(state, geometry)) - target) < tol


def test_quadrature_half_window():
    # only the right half-plane of a state centered at the origin
    grid = husimi_grid(CatVector(2j, 0), GridGeometry(0, 8, -8, 8, 120, 240))
    assert husimi_quadrature_check(grid) == pytest.approx(0.5, abs=1e-3)


@settings(max_examples=40, deadline=None)
@given(amplitudes(4.0), phases)
def test_bounds_for_normalized_states(alpha, phi):
    v = CatVector(alpha, phi)
    if v.alpha == 0 and abs(phi - math.pi) < 1e-9:
        return
    grid = husimi_grid(v, GridGeometry(-7, 7, -7, 7, 41, 37))
    assert grid.values.shape == (37, 41)
    assert np.all(grid.values >= 0)
    assert grid.values.max() <= 1 + 1e-12


@settings(max_examples=60)
@given(amplitudes(4.0), phases, amplitudes(5.0), st.floats(0, 2 * math.pi))
def test_rotation_covariance(alpha, phi, gamma, theta):
    rot = complex(math.cos(theta), math.sin(theta))
    v, w = CatVector(alpha, phi), CatVector(rot * alpha, phi)
    if v.alpha == 0 and phi == math.pi:
        return
    assert husimi_values(w, rot * gamma) == pytest.approx(husimi_values(v, gamma), abs=1e-13)


def test_jobs_do_not_change_result():
    geometry = GridGeometry(-5, 5, -4, 4, 64, 49)
    v = CatVector(1 + 2j, 0.7)
    serial = husimi_grid(v, geometry)
    assert np.array_equal(serial.values, husimi_grid(v, geometry, jobs=4).values)


def test_degenerate_state():
    with pytest.raises(DegenerateState):
        husimi_grid(CatVector(0, math.pi), SQUARE6)
    raw = husimi_grid(CatVector(0, math.pi), SQUARE6, normalize=False)
    assert not raw.normalized and not raw.values.any()


def test_geometry_validation():
    with pytest.raises(ValueError):
        GridGeometry(-1, 1, -1, 1, 1, 10)
    with pytest.raises(ValueError):
        GridGeometry(1, -1, -1, 1, 10, 10)


def test_bisector_fringes_are_complementary():
    t, q0 = bisector_profile(CatVector(3, 0), 3, 2.0, 801)
    _, qpi = bisector_profile(CatVector(3, math.pi), 3, 2.0, 801)
    # odd cat vanishes where the even cat fringe peaks (t = 0 and multiples of pi/3)
    assert qpi[400] == pytest.approx(0, abs=1e-16)
    assert q0[400] > 0
    for alpha in (2.0, 3 + 1j, -4j, 5.0):
        assert fringe_complementarity(alpha) >= 0.95


class TestRasters:
    def test_csv_round_trip(self, tmp_path):
        grid = husimi_grid(CatVector(1 - 1j, 0.3), GridGeometry(-3, 3, -2, 2, 7, 5))
        path = tmp_path / "q.csv"
        write_qgrid_csv(grid, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "re,im,q" and len(lines) == 36
        rows = read_qgrid_csv(path)
        assert np.array_equal(rows[:, 2], grid.values.ravel())
        x, y = grid.coordinates()
        assert np.array_equal(rows[:, 0], x.ravel()) and np.array_equal(rows[:, 1], y.ravel())

    def test_pgm(self, tmp_path):
        grid = husimi_grid(3 + 1j, GridGeometry(-6, 6, -6, 6, 30, 20))
        path = tmp_path / "q.pgm"
        write_qgrid_pgm(grid, path)
        assert path.read_text().splitlines()[:3] == ["P2", "30 20", "255"]
        pix = read_pgm(path)
        assert pix.shape == (20, 30) and pix.max() == 255 and pix.min() >= 0
        # top row of the image is the largest Im(gamma)
        assert np.array_equal(pix[::-1], scale_to_bytes(grid.values))

    def test_scale_all_zero(self):
        assert not scale_to_bytes(np.zeros((2, 2))).any()

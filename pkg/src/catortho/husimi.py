"""Husimi Q function of coherent superpositions on rectangular phase-space grids.

Stored values are ``|<gamma|psi>|^2`` without the ``1/pi`` prefactor, so a
normalized state peaks at most at 1. Axes are the gamma plane itself:
``Re(gamma)`` horizontal, ``Im(gamma)`` vertical. Samples sit at cell centers
(midpoint rule).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coherent import norm_squared
from .errors import DegenerateState
from .states import CatVector, as_amplitude, terms_of


@dataclass(frozen=True)
class GridGeometry:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 samples per axis")
        if not (self.re_max > self.re_min and self.im_max > self.im_min):
            raise ValueError("grid bounds must be increasing")

    @property
    def cell_area(self) -> float:
        return (self.re_max - self.re_min) / self.nx * (self.im_max - self.im_min) / self.ny

    def re_axis(self) -> np.ndarray:
        dx = (self.re_max - self.re_min) / self.nx
        return self.re_min + (np.arange(self.nx) + 0.5) * dx

    def im_axis(self) -> np.ndarray:
        dy = (self.im_max - self.im_min) / self.ny
        return self.im_min + (np.arange(self.ny) + 0.5) * dy


@dataclass(frozen=True)
class QGrid:
    """Husimi samples; ``values[j, i]`` is at ``(re_axis[i], im_axis[j])``."""

    geometry: GridGeometry
    values: np.ndarray
    normalized: bool

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.geometry.re_axis(), self.geometry.im_axis())


def _amplitudes(state, gamma: np.ndarray) -> np.ndarray:
    """``<gamma|psi>`` evaluated elementwise on an array of gamma values."""
    out = np.zeros(gamma.shape, dtype=complex)
    g2 = gamma.real ** 2 + gamma.imag ** 2
    for c, a in terms_of(state):
        out += c * np.exp(np.conj(gamma) * a - 0.5 * (a.real ** 2 + a.imag ** 2 + g2))
    return out


def husimi_values(state, gamma, normalize: bool = True) -> np.ndarray:
    """Q at arbitrary points ``gamma`` (scalar or array)."""
    gamma = np.asarray(gamma, dtype=complex)
    q = np.abs(_amplitudes(state, gamma)) ** 2
    if normalize:
        n2 = norm_squared(state)
        if n2 == 0.0:
            raise DegenerateState("zero vector has no normalized Husimi function")
        q = q / n2
    return q


def husimi_grid(state, geometry: GridGeometry, normalize: bool = True, jobs: int = 1) -> QGrid:
    """Evaluate Q on every cell center of ``geometry``.

    ``state`` may be a complex amplitude (coherent state), a ``CatVector`` or a
    ``Superposition``. Rows are independent and may be spread over ``jobs``
    threads; assembly is by row index so the result does not depend on ``jobs``.
    """
    n2 = norm_squared(state) if normalize else 1.0
    if normalize and n2 == 0.0:
        raise DegenerateState("zero vector has no normalized Husimi function")
    re, im = geometry.re_axis(), geometry.im_axis()
    values = np.empty((geometry.ny, geometry.nx))

    def fill(rows: range) -> None:
        gamma = re[None, :] + 1j * im[rows.start:rows.stop, None]
        values[rows.start:rows.stop] = np.abs(_amplitudes(state, gamma)) ** 2 / n2

    if jobs <= 1:
        fill(range(geometry.ny))
    else:
        step = math.ceil(geometry.ny / jobs)
        chunks = [range(s, min(s + step, geometry.ny)) for s in range(0, geometry.ny, step)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(fill, chunks))
    return QGrid(geometry, values, normalize)


def husimi_cat(v, geometry: GridGeometry, normalize: bool = True, jobs: int = 1) -> QGrid:
    return husimi_grid(v, geometry, normalize, jobs)


def husimi_quadrature_check(grid: QGrid) -> float:
    """``cell_area * sum(Q) / pi``; about 1 when the window holds the whole state."""
    return grid.geometry.cell_area * float(np.sum(grid.values)) / math.pi


def bisector_profile(state, alpha, half_length: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Q along the line through the origin perpendicular to ``alpha``.

    Returns the signed coordinate ``t`` and ``Q(t * i alpha/|alpha|)``.
    """
    alpha = as_amplitude(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    t = np.linspace(-half_length, half_length, n)
    direction = 1j * alpha / abs(alpha)
    return t, husimi_values(state, t * direction)


def _local_extrema(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    inner = y[1:-1]
    maxima = np.flatnonzero((inner > y[:-2]) & (inner >= y[2:])) + 1
    minima = np.flatnonzero((inner < y[:-2]) & (inner <= y[2:])) + 1
    return minima, maxima


def fringe_complementarity(alpha, half_length: float = 4.0, n: int = 4001,
                           envelope_floor: float = 1e-3) -> float:
    """Fraction of even-cat fringe extrema matched by opposite odd-cat extrema.

    Along the bisector of ``+alpha`` and ``-alpha`` the even and odd cats
    share a Gaussian envelope and carry opposite fringes. Each local extremum
    of the even-cat profile (where the envelope exceeds ``envelope_floor`` of
    its peak) counts as matched when the nearest odd-cat extremum of the
    opposite type lies within a quarter of the fringe period.
    """
    alpha = as_amplitude(alpha)
    t, q_even = bisector_profile(CatVector(alpha, 0.0), alpha, half_length, n)
    _, q_odd = bisector_profile(CatVector(alpha, math.pi), alpha, half_length, n)
    period = math.pi / abs(alpha)
    envelope_ok = np.exp(-t * t) >= envelope_floor

    even_min, even_max = _local_extrema(q_even)
    odd_min, odd_max = _local_extrema(q_odd)
    matched = total = 0
    for idx, partners in ((even_min, odd_max), (even_max, odd_min)):
        for i in idx:
            if not envelope_ok[i]:
                continue
            total += 1
            if partners.size and np.min(np.abs(t[partners] - t[i])) < 0.25 * period:
                matched += 1
    return matched / total if total else 0.0

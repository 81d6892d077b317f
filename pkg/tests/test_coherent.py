import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catortho import (
    CatVector,
    cat_inner_product,
    cat_norm_squared,
    coherent_overlap,
    inner_product,
    metric_form,
    normalized_inner_product,
    symplectic_form,
)
from catortho.errors import DegenerateState
from catortho.fock import oracle_inner_product
from catortho.states import Superposition, circular_distance, reduce_phase, unit_phase

from conftest import amplitudes, phases

ALPHA_FIG2 = 4 + 8j
BETA4 = complex(-9 * math.pi / 20, 9 * math.pi / 40)


class TestOverlap:
    def test_vacuum(self):
        assert coherent_overlap(0, 0) == 1

    @pytest.mark.parametrize("alpha", [0.3, 2 - 1j, -5j, 4 + 8j])
    def test_self_overlap(self, alpha):
        assert coherent_overlap(alpha, alpha) == pytest.approx(1, abs=1e-15)

    def test_unit_distance(self):
        assert abs(coherent_overlap(1, 0)) ** 2 == pytest.approx(math.exp(-1), rel=1e-15)
        assert abs(coherent_overlap(1, 0)) ** 2 == pytest.approx(0.3678794, abs=1e-7)

    def test_opposite_points(self):
        val = coherent_overlap(1, -1)
        assert val.imag == 0 and val.real > 0
        assert val.real == pytest.approx(math.exp(-2), rel=1e-15)
        oracle = oracle_inner_product(1, -1)
        assert abs(oracle.value - val) < 1e-14

    @given(amplitudes(), amplitudes())
    def test_overlap_law(self, a, b):
        expected = math.exp(-abs(a - b) ** 2)
        assert abs(abs(coherent_overlap(a, b)) ** 2 - expected) <= 1e-12 * expected

    def test_large_amplitudes_do_not_overflow(self):
        a, b = 25 + 3j, 24.5 - 2j
        val = coherent_overlap(a, b)
        assert math.isfinite(val.real)
        assert abs(val) ** 2 == pytest.approx(math.exp(-abs(a - b) ** 2), rel=1e-11)
        v = CatVector(a, 0.7)
        assert cat_inner_product(v, v).real == pytest.approx(cat_norm_squared(v), rel=1e-12)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            coherent_overlap(complex("nan"), 0)


class TestCatInnerProduct:
    @given(amplitudes(), amplitudes())
    def test_parity(self, a, b):
        assert abs(cat_inner_product(CatVector(b, math.pi), CatVector(a, 0.0))) <= 1e-13

    def test_vacuum_even_cat(self):
        v = CatVector(0, 0)
        assert cat_inner_product(v, v) == 4

    def test_fig2_partner(self):
        value = cat_inner_product(CatVector(BETA4, 0), CatVector(ALPHA_FIG2, 0))
        assert abs(value) < 1e-14

    def test_expansion_into_four_overlaps(self):
        a, b, p1, p2 = 0.3 - 0.7j, 1 + 0.5j, 1.0, 2.5
        by_hand = (coherent_overlap(a, b) + cmath.exp(1j * p1) * coherent_overlap(-a, b)
                   + cmath.exp(-1j * p2) * coherent_overlap(a, -b)
                   + cmath.exp(1j * (p1 - p2)) * coherent_overlap(-a, -b))
        value = cat_inner_product(CatVector(b, p2), CatVector(a, p1))
        assert value == pytest.approx(by_hand, abs=1e-15)
        # 40-digit direct Fock sum
        assert value == pytest.approx(-0.16563106018630554 - 0.57226975840285247j, abs=1e-14)

    @settings(max_examples=300)
    @given(amplitudes(), amplitudes(), phases, phases)
    def test_hermitian(self, a, b, p1, p2):
        u, v = CatVector(a, p1), CatVector(b, p2)
        scale = math.sqrt(cat_norm_squared(u) * cat_norm_squared(v)) or 1.0
        diff = cat_inner_product(u, v) - cat_inner_product(v, u).conjugate()
        assert abs(diff) <= 1e-12 * scale

    @given(amplitudes(), amplitudes())
    def test_reflection(self, a, b):
        for phi, sign in ((0.0, 1), (math.pi, -1)):
            bra = CatVector(b, phi)
            plain = cat_inner_product(bra, CatVector(a, phi))
            flipped = cat_inner_product(bra, CatVector(-a, phi))
            assert abs(flipped - sign * plain) <= 1e-13

    def test_degenerate_odd_vacuum_vector(self):
        zero = CatVector(0, math.pi)
        assert cat_inner_product(zero, CatVector(1 + 1j, 0.3)) == 0
        with pytest.raises(DegenerateState):
            normalized_inner_product(zero, CatVector(1, 0))

    def test_superposition_matches_cat(self):
        v = CatVector(1 - 2j, 0.4)
        w = CatVector(0.5j, 2.0)
        assert inner_product(w.as_superposition(), v) == pytest.approx(cat_inner_product(w, v))


class TestNorm:
    def test_values(self):
        assert cat_norm_squared(CatVector(0, 0)) == 4
        assert cat_norm_squared(CatVector(0, math.pi)) == 0
        alpha = math.sqrt(2 * math.pi)
        assert cat_norm_squared(CatVector(alpha, 0)) == pytest.approx(2 + 2 * math.exp(-4 * math.pi), rel=1e-15)

    @given(amplitudes(3.0), phases)
    def test_matches_self_product(self, a, phi):
        v = CatVector(a, phi)
        assert cat_norm_squared(v) == pytest.approx(cat_inner_product(v, v).real, abs=1e-13)

    def test_small_odd_cat_keeps_precision(self):
        # 2 - 2 exp(-2|a|^2) ~ 4|a|^2 for tiny a
        assert cat_norm_squared(CatVector(1e-9, math.pi)) == pytest.approx(4e-18, rel=1e-8)


class TestBilinearForms:
    def test_examples(self):
        a = 2.5 - 1j
        assert metric_form(a, a) == pytest.approx(abs(a) ** 2)
        assert metric_form(1, 1j) == 0
        assert abs(metric_form(ALPHA_FIG2, BETA4)) < 1e-13
        assert symplectic_form(a, a) == 0
        assert symplectic_form(1, 1j) == -1
        r = math.sqrt(4 * math.pi)
        assert symplectic_form(r, -1j * r) == pytest.approx(4 * math.pi, rel=1e-15)

    @given(amplitudes(), amplitudes(), amplitudes(), st.floats(-3, 3), st.floats(-3, 3))
    def test_symmetry_and_bilinearity(self, a, b, c, s, t):
        assert metric_form(a, b) == pytest.approx(metric_form(b, a), abs=1e-12)
        assert symplectic_form(a, b) == pytest.approx(-symplectic_form(b, a), abs=1e-12)
        for form in (metric_form, symplectic_form):
            lhs = form(s * a + t * b, c)
            rhs = s * form(a, c) + t * form(b, c)
            assert lhs == pytest.approx(rhs, abs=1e-10)


class TestPhases:
    @pytest.mark.parametrize("phi, expected", [
        (0.0, 0.0), (2 * math.pi, 0.0), (-math.pi, math.pi), (7 * math.pi, math.pi), (-1e-17, 0.0),
    ])
    def test_reduce(self, phi, expected):
        assert reduce_phase(phi) == pytest.approx(expected, abs=1e-15)
        assert 0 <= reduce_phase(phi) < 2 * math.pi

    def test_exact_quarter_turns(self):
        assert unit_phase(math.pi) == -1
        assert unit_phase(0.5 * math.pi) == 1j
        assert CatVector(1, -math.pi).phi == math.pi

    def test_circular_distance(self):
        assert circular_distance(0.1, 2 * math.pi - 0.1) == pytest.approx(0.2)

    def test_superposition_validates(self):
        with pytest.raises(ValueError):
            Superposition(((1, complex("inf")),))

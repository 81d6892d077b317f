"""Closed-form overlaps of coherent states and their superpositions.

Phase convention::

    <beta|alpha> = exp(conj(beta)*alpha - |alpha|**2/2 - |beta|**2/2)

so that ``|<beta|alpha>|**2 = exp(-|alpha - beta|**2)``. Any other globally
consistent phase choice leaves every orthogonality statement unchanged.
"""

from __future__ import annotations

import cmath
import math

from .errors import DegenerateState
from .states import CatVector, as_amplitude, terms_of


def _abs2(z: complex) -> float:
    # same rounding as the real part of conj(z) * z, unlike abs(z) ** 2
    return z.real * z.real + z.imag * z.imag


def _overlap_exponent(alpha: complex, beta: complex) -> complex:
    # real part is -|alpha - beta|**2 / 2 <= 0, so exp() never overflows
    return beta.conjugate() * alpha - 0.5 * (_abs2(alpha) + _abs2(beta))


def coherent_overlap(alpha, beta) -> complex:
    """Return ``<beta|alpha>``."""
    alpha, beta = as_amplitude(alpha), as_amplitude(beta)
    return cmath.exp(_overlap_exponent(alpha, beta))


def _merged(state) -> list[tuple[complex, complex]]:
    # coefficients of repeated amplitudes are summed so that e.g. K_pi(0) is exactly empty
    acc: dict[complex, complex] = {}
    for c, a in terms_of(state):
        acc[a] = acc.get(a, 0j) + c
    return [(c, a) for a, c in acc.items() if c != 0]


def inner_product(bra, ket) -> complex:
    """``<bra|ket>`` for coherent amplitudes, cat vectors or superpositions.

    Exponents of all cross terms are collected first and rescaled by their
    common maximum before exponentiation.
    """
    weights = []
    exponents = []
    for cb, b in _merged(bra):
        for ck, a in _merged(ket):
            weights.append(cb.conjugate() * ck)
            exponents.append(_overlap_exponent(a, b))
    if not weights:
        return 0j
    shift = max(e.real for e in exponents)
    total = sum(w * cmath.exp(e - shift) for w, e in zip(weights, exponents))
    return total * math.exp(shift) if total else 0j


def norm_squared(state) -> float:
    if isinstance(state, CatVector):
        return cat_norm_squared(state)
    return max(inner_product(state, state).real, 0.0)


def cat_inner_product(bra: CatVector, ket: CatVector) -> complex:
    """``<K_phi2(beta)|K_phi1(alpha)>`` with ``bra = K_phi2(beta)``, ``ket = K_phi1(alpha)``."""
    return inner_product(bra, ket)


def cat_norm_squared(v: CatVector) -> float:
    """``2 + 2 cos(phi) exp(-2|alpha|**2)``, written to avoid cancellation near ``phi = pi``."""
    x = 2.0 * _abs2(v.alpha)
    c = math.cos(v.phi)
    value = 2.0 * (1.0 + c) + 2.0 * c * math.expm1(-x)
    return max(value, 0.0)


def normalized_inner_product(bra, ket) -> complex:
    """Inner product divided by both norms; raises on a zero-norm state."""
    nb, nk = norm_squared(bra), norm_squared(ket)
    if nb == 0.0 or nk == 0.0:
        raise DegenerateState("cannot normalize a zero vector")
    return inner_product(bra, ket) / math.sqrt(nb * nk)


def metric_form(alpha, beta) -> float:
    """Symmetric form ``Re(alpha * conj(beta))``."""
    alpha, beta = as_amplitude(alpha), as_amplitude(beta)
    return alpha.real * beta.real + alpha.imag * beta.imag


def symplectic_form(alpha, beta) -> float:
    """Antisymmetric form ``Im(alpha * conj(beta))``."""
    alpha, beta = as_amplitude(alpha), as_amplitude(beta)
    return alpha.imag * beta.real - alpha.real * beta.imag

"""Value types shared by the analytic formulas and the Fock oracle.

Amplitudes are plain Python ``complex`` numbers. A cat vector is the
unnormalized superposition ``|alpha> + exp(i phi) |-alpha>``; a general
``Superposition`` is a finite list of ``(coefficient, amplitude)`` terms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

_EXACT_PHASES = {
    0.0: 1.0 + 0.0j,
    0.5 * math.pi: 1j,
    math.pi: -1.0 + 0.0j,
    1.5 * math.pi: -1j,
}


def reduce_phase(phi: float) -> float:
    """Map an angle onto ``[0, 2*pi)``.

    Uses the floored modulo; the one value it can round up to (``2*pi`` for
    tiny negative inputs) is folded back to 0.
    """
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"phase must be finite, got {phi!r}")
    r = phi % TWO_PI
    return 0.0 if r >= TWO_PI else r


def circular_distance(a: float, b: float) -> float:
    d = abs(reduce_phase(a) - reduce_phase(b))
    return min(d, TWO_PI - d)


def unit_phase(phi: float) -> complex:
    """``exp(i phi)``, exact at the quarter turns so parity cancellations are exact."""
    phi = reduce_phase(phi)
    exact = _EXACT_PHASES.get(phi)
    return exact if exact is not None else cmath.exp(1j * phi)


def as_amplitude(value) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"amplitude must be finite, got {value!r}")
    return z


@dataclass(frozen=True)
class Superposition:
    """Finite superposition ``sum_j c_j |a_j>`` of coherent states."""

    terms: tuple[tuple[complex, complex], ...]

    def __post_init__(self):
        terms = tuple((complex(c), as_amplitude(a)) for c, a in self.terms)
        object.__setattr__(self, "terms", terms)

    @property
    def amplitudes(self) -> tuple[complex, ...]:
        return tuple(a for _, a in self.terms)


@dataclass(frozen=True)
class CatVector:
    """``K_phi(alpha) = |alpha> + exp(i phi)|-alpha>`` (unnormalized)."""

    alpha: complex
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_amplitude(self.alpha))
        object.__setattr__(self, "phi", reduce_phase(self.phi))

    @property
    def terms(self) -> tuple[tuple[complex, complex], ...]:
        return ((1.0 + 0.0j, self.alpha), (unit_phase(self.phi), -self.alpha))

    def as_superposition(self) -> Superposition:
        return Superposition(self.terms)


def terms_of(state) -> tuple[tuple[complex, complex], ...]:
    """Coerce a coherent amplitude, ``CatVector`` or ``Superposition`` to terms."""
    if isinstance(state, (CatVector, Superposition)):
        return state.terms
    return ((1.0 + 0.0j, as_amplitude(state)),)

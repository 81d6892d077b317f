"""Truncated number-basis expansions, used as an independent check.

Nothing here calls the closed-form overlap code; inner products are plain
sums over Fock coefficients, with a rigorous bound on the discarded tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import TruncationTooSmall
from .states import CatVector, as_amplitude, terms_of, unit_phase

MAX_TAIL = 1e-3


@dataclass(frozen=True)
class FockState:
    """Coefficients ``c_0 .. c_N`` plus an upper bound on the norm^2 beyond ``N``."""

    coeffs: np.ndarray
    truncation: int
    tail_bound: float

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


class OracleValue(NamedTuple):
    value: complex
    error_bar: float


def poisson_tail_bound(mean: float, truncation: int) -> float:
    """Upper bound on ``P(X > N)`` for ``X ~ Poisson(mean)``.

    Geometric majorant of the series beyond ``N``; valid when
    ``N + 2 > mean``, otherwise the trivial bound 1 is returned.
    """
    if mean == 0.0:
        return 0.0
    n1 = truncation + 1
    if n1 + 1 <= mean:
        return 1.0
    log_first = -mean + n1 * math.log(mean) - math.lgamma(n1 + 1)
    return min(1.0, math.exp(log_first) / (1.0 - mean / (n1 + 1)))


def recommended_truncation(max_amplitude: float) -> int:
    """Cutoff keeping the Poisson tail below 1e-12 for all ``|alpha| <= max_amplitude``."""
    x = float(max_amplitude) ** 2
    return math.ceil(x + 12.0 * math.sqrt(x + 1.0) + 20.0)


def _coherent_coeffs(alpha: complex, truncation: int) -> np.ndarray:
    c = np.empty(truncation + 1, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for m in range(truncation):
        c[m + 1] = c[m] * alpha / math.sqrt(m + 1)
    return c


def fock_expand_coherent(alpha, truncation: int) -> FockState:
    """Expand ``|alpha>`` up to ``|N>`` by the ratio recurrence ``c_{m+1} = c_m alpha / sqrt(m+1)``."""
    alpha = as_amplitude(alpha)
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    tail = poisson_tail_bound(abs(alpha) ** 2, truncation)
    if tail > MAX_TAIL:
        raise TruncationTooSmall(f"N={truncation} leaves tail {tail:.3e} for |alpha|={abs(alpha):.3g}")
    return FockState(_coherent_coeffs(alpha, truncation), truncation, tail)


def fock_expand_cat(v: CatVector, truncation: int) -> FockState:
    """``c_m(alpha) (1 + (-1)^m e^{i phi})``; parity zeros come out exact."""
    base = fock_expand_coherent(v.alpha, truncation)
    phase = unit_phase(v.phi)
    parity = np.where(np.arange(truncation + 1) % 2 == 0, 1.0 + phase, 1.0 - phase)
    # each of the two coherent tails contributes at most sqrt(tail)
    return FockState(base.coeffs * parity, truncation, 4.0 * base.tail_bound)


def fock_expand(state, truncation: int) -> FockState:
    """Expand a coherent amplitude, ``CatVector`` or ``Superposition``."""
    if isinstance(state, CatVector):
        return fock_expand_cat(state, truncation)
    coeffs = np.zeros(truncation + 1, dtype=complex)
    tail_root = 0.0
    for c, a in terms_of(state):
        part = fock_expand_coherent(a, truncation)
        coeffs += c * part.coeffs
        tail_root += abs(c) * math.sqrt(part.tail_bound)
    return FockState(coeffs, truncation, tail_root ** 2)


def _pad(c: np.ndarray, n: int) -> np.ndarray:
    return c if c.size == n else np.concatenate([c, np.zeros(n - c.size, dtype=complex)])


def fock_inner_product(a: FockState, b: FockState) -> OracleValue:
    """``sum_m conj(b_m) a_m`` with error bar ``sqrt(tail_a)|b| + sqrt(tail_b)|a|``."""
    n = max(a.coeffs.size, b.coeffs.size)
    ca, cb = _pad(a.coeffs, n), _pad(b.coeffs, n)
    value = complex(np.vdot(cb, ca))
    norm_a = math.sqrt(a.norm_squared + a.tail_bound)
    norm_b = math.sqrt(b.norm_squared + b.tail_bound)
    err = math.sqrt(a.tail_bound) * norm_b + math.sqrt(b.tail_bound) * norm_a
    return OracleValue(value, err)


def oracle_inner_product(bra, ket, truncation: int | None = None) -> OracleValue:
    """``<bra|ket>`` through Fock expansions of both sides."""
    if truncation is None:
        amps = [abs(a) for _, a in terms_of(bra)] + [abs(a) for _, a in terms_of(ket)]
        truncation = recommended_truncation(max(amps))
    return fock_inner_product(fock_expand(ket, truncation), fock_expand(bra, truncation))

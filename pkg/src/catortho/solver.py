"""Orthogonality conditions between cat vectors with arbitrary relative phases.

For ``K_phi1(alpha)`` and ``K_phi2(beta)`` write ``omega = Re(alpha conj(beta))``,
``h = Im(alpha conj(beta))`` and ``C+ = cos((phi1+phi2)/2)``,
``C- = cos((phi1-phi2)/2)``. Up to a nonzero factor the inner product is::

    exp(omega - i h) C-  +  exp(-omega + i h) C+

It vanishes either for ``C+ = C- = 0`` (the parity pairs ``(0, pi)``,
``(pi, 0)``), or, when both cosines are nonzero, iff

    integer class:       exp(2 omega) = -C+/C-   and  h = k pi
    half-integer class:  exp(2 omega) =  C+/C-   and  h = (k + 1/2) pi

The phases fix ``omega``; only the symplectic value ``h`` is quantized.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coherent import inner_product, metric_form, norm_squared, symplectic_form
from .errors import (
    AmbiguousQuantization,
    DegeneratePhi1,
    DegenerateRealPart,
    NotQuantized,
    VerificationError,
    WrongRegion,
    ZeroAlpha,
    ZeroD,
    ZeroIndex,
)
from .states import CatVector, Superposition, as_amplitude, circular_distance, reduce_phase

ZERO_COS_TOL = 1e-12
QUANT_TOL = 1e-9
VERIFY_TOL = 1e-10
SCAL_CHECK_TOL = 1e-8
PHASE_TOL = 1e-12

INTEGER = "integer"
HALF_INTEGER = "half_integer"


class RegionKind(str, enum.Enum):
    ALWAYS_ORTHOGONAL = "AlwaysOrthogonal"
    NO_SOLUTION = "NoSolution"
    INTEGER_CLASS = "IntegerClass"
    HALF_INTEGER_CLASS = "HalfIntegerClass"
    PI_LINE_SPECIAL = "PiLineSpecial"
    ZERO_LINE_SPECIAL = "ZeroLineSpecial"


# raster codes for phase maps, in this order
REGION_CODES = {kind: i for i, kind in enumerate(RegionKind)}


@dataclass(frozen=True)
class PhaseRegion:
    kind: RegionKind
    omega: Optional[float] = None

    @property
    def quantization(self) -> Optional[str]:
        """Lattice that ``Im(alpha conj(beta))`` must sit on, if any."""
        if self.kind in (RegionKind.INTEGER_CLASS, RegionKind.PI_LINE_SPECIAL):
            return INTEGER
        if self.kind in (RegionKind.HALF_INTEGER_CLASS, RegionKind.ZERO_LINE_SPECIAL):
            return HALF_INTEGER
        return None


@dataclass(frozen=True)
class QuantizationClass:
    kind: str
    k: int
    residual: float = 0.0

    def __post_init__(self):
        if self.kind not in (INTEGER, HALF_INTEGER):
            raise ValueError(f"unknown quantization class {self.kind!r}")

    @property
    def value(self) -> float:
        """Lattice value of ``Im(alpha conj(beta))``."""
        offset = 0.5 if self.kind == HALF_INTEGER else 0.0
        return (self.k + offset) * math.pi


def _half_cosines(phi1: float, phi2: float) -> tuple[float, float]:
    phi1, phi2 = reduce_phase(phi1), reduce_phase(phi2)
    return math.cos(0.5 * (phi1 + phi2)), math.cos(0.5 * (phi1 - phi2))


def _near(phi: float, target: float) -> bool:
    return circular_distance(phi, target) < PHASE_TOL


def classify_phase_pair(phi1: float, phi2: float, mark_special_lines: bool = False) -> PhaseRegion:
    """Locate ``(phi1, phi2)`` on the phase torus.

    A cosine counts as zero below ``ZERO_COS_TOL``, so the classification is
    discontinuous across region edges by construction.

    Points with exactly one phase equal to 0 or pi belong to the half-integer
    or integer class with ``omega = 0`` forced. With ``mark_special_lines``
    they are reported as ``ZeroLineSpecial`` / ``PiLineSpecial`` instead; the
    corner points ``(0, 0)`` and ``(pi, pi)`` stay in their classes.
    """
    cplus, cminus = _half_cosines(phi1, phi2)
    zp, zm = abs(cplus) < ZERO_COS_TOL, abs(cminus) < ZERO_COS_TOL
    if zp and zm:
        return PhaseRegion(RegionKind.ALWAYS_ORTHOGONAL)
    if zp or zm:
        return PhaseRegion(RegionKind.NO_SOLUTION)

    if mark_special_lines:
        on_pi = _near(phi1, math.pi) != _near(phi2, math.pi)
        on_zero = _near(phi1, 0.0) != _near(phi2, 0.0)
        if on_pi and not (_near(phi1, 0.0) or _near(phi2, 0.0)):
            return PhaseRegion(RegionKind.PI_LINE_SPECIAL)
        if on_zero and not (_near(phi1, math.pi) or _near(phi2, math.pi)):
            return PhaseRegion(RegionKind.ZERO_LINE_SPECIAL)

    ratio = cplus / cminus
    if ratio < 0:
        return PhaseRegion(RegionKind.INTEGER_CLASS, 0.5 * math.log(-ratio))
    return PhaseRegion(RegionKind.HALF_INTEGER_CLASS, 0.5 * math.log(ratio))


def quantization_class(h: float, tol: float = QUANT_TOL) -> QuantizationClass:
    """Snap a symplectic value onto the nearer of the two lattices.

    Residuals up to ``tol`` are accepted, between ``tol`` and ``10 * tol`` are
    ambiguous, beyond that the value is not quantized.
    """
    k_int = round(h / math.pi)
    k_half = math.floor(h / math.pi)
    res_int = abs(h - k_int * math.pi)
    res_half = abs(h - (k_half + 0.5) * math.pi)
    if res_int <= res_half:
        cls = QuantizationClass(INTEGER, int(k_int), res_int)
    else:
        cls = QuantizationClass(HALF_INTEGER, int(k_half), res_half)
    if cls.residual <= tol:
        return cls
    if cls.residual <= 10 * tol:
        raise AmbiguousQuantization(
            f"Im(alpha conj(beta)) = {h!r} is {cls.residual:.3e} from the {cls.kind} lattice"
        )
    raise NotQuantized(f"Im(alpha conj(beta)) = {h!r} is on neither lattice")


def orthogonality_defect(bra, ket) -> float:
    """``|<bra|ket>|`` divided by the norms (raw modulus if either norm is 0)."""
    value = abs(inner_product(bra, ket))
    nn = norm_squared(bra) * norm_squared(ket)
    return value / math.sqrt(nn) if nn > 0 else value


def scal_residual(omega: float, h: float, phi1: float, phi2: float) -> float:
    """Residual of the real orthogonality equation

        e^{2 omega} C-^2 + e^{-2 omega} C+^2 + 2 C+ C- cos(2h) = 0,

    divided by ``e^{2|omega|}`` so that the larger exponential weight is 1.
    """
    cplus, cminus = _half_cosines(phi1, phi2)
    a = math.exp(omega - abs(omega)) * cminus
    b = math.exp(-omega - abs(omega)) * cplus
    return abs(a * a + b * b + 2.0 * a * b * math.cos(2.0 * h))


def solve_beta_family(alpha, phi1: float, phi2: float, k_min: int, k_max: int,
                      tol: float = VERIFY_TOL) -> list[tuple[int, complex]]:
    """All ``beta_k`` with ``<K_phi2(beta_k)|K_phi1(alpha)> = 0`` for ``k_min <= k <= k_max``.

    ``beta_k = (omega - i k pi)/conj(alpha)`` in the integer class and
    ``(omega - i (k + 1/2) pi)/conj(alpha)`` in the half-integer class. Every
    member is checked by substitution before it is returned.
    """
    alpha = as_amplitude(alpha)
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    if k_max < k_min:
        raise ValueError(f"empty k range {k_min}..{k_max}")
    region = classify_phase_pair(phi1, phi2)
    if region.kind is RegionKind.INTEGER_CLASS:
        offset = 0.0
    elif region.kind is RegionKind.HALF_INTEGER_CLASS:
        offset = 0.5
    else:
        raise WrongRegion(f"phase pair ({phi1!r}, {phi2!r}) is {region.kind.value}")

    ket = CatVector(alpha, phi1)
    out = []
    for k in range(k_min, k_max + 1):
        beta = complex(region.omega, -(k + offset) * math.pi) / alpha.conjugate()
        qres = abs(symplectic_form(alpha, beta) - (k + offset) * math.pi)
        defect = orthogonality_defect(CatVector(beta, phi2), ket)
        if qres > QUANT_TOL or defect > tol:
            raise VerificationError(
                f"k={k}: lattice residual {qres:.3e}, |inner| {defect:.3e}"
            )
        out.append((k, beta))
    return out


def _quadratic_coefficients(kind: str, a: float, omega: float) -> tuple[float, float]:
    # W, U for the half-integer class and W', U' for the integer class,
    # both divided by 1 + exp(2 omega) so large |omega| cannot overflow
    t = math.tanh(omega)
    if kind == HALF_INTEGER:
        return 2.0 * a, -t * (a * a - 1.0)
    return -2.0 * a * t, a * a - 1.0


def solve_phi2(alpha, beta, phi1: float, qtol: float = QUANT_TOL,
               check_tol: float = SCAL_CHECK_TOL) -> float:
    """The unique ``phi2`` making ``K_phi2(beta)`` orthogonal to ``K_phi1(alpha)``.

    With ``a = tan(phi1/4)`` and ``b = tan(phi2/4)`` the condition becomes
    ``U b^2 - 2 W b - U = 0``. Its roots have product -1 and map to the same
    angle modulo 2 pi; the root with ``|b| <= 1`` is taken and
    ``phi2 = 4 arctan(b)`` is reduced into ``[0, 2 pi)``.
    """
    alpha, beta = as_amplitude(alpha), as_amplitude(beta)
    if alpha == 0 or beta == 0:
        raise ZeroAlpha("alpha and beta must be nonzero")
    omega = metric_form(alpha, beta)
    h = symplectic_form(alpha, beta)
    cls = quantization_class(h, qtol)
    if abs(omega) < ZERO_COS_TOL:
        raise DegenerateRealPart("Re(alpha conj(beta)) = 0: solutions lie on the special lines")
    phi1 = reduce_phase(phi1)
    if _near(phi1, 0.0) or _near(phi1, math.pi):
        raise DegeneratePhi1(f"phi1 = {phi1!r}: phi2 is forced to 0 or pi")

    a = math.tan(0.25 * phi1)
    w, u = _quadratic_coefficients(cls.kind, a, omega)
    r = math.hypot(w, u)
    b = -u / (w + r) if w >= 0 else u / (r - w)
    phi2 = reduce_phase(4.0 * math.atan(b))

    residual = scal_residual(omega, h, phi1, phi2)
    if residual > check_tol or _near(phi2, 0.0) or _near(phi2, math.pi):
        raise VerificationError(f"phi2 = {phi2!r} fails substitution (residual {residual:.3e})")
    return phi2


def _canonical(beta: complex) -> complex:
    # K_0(-b) = K_0(b) and K_pi(-b) = -K_pi(b): fix the sign on the imaginary axis
    if beta.real == 0.0 and beta.imag < 0.0:
        return -beta
    return beta + 0.0


def even_cat_partner(alpha, n: int) -> complex:
    """``i pi (2n+1) / (2 conj(alpha))``: ``K_0`` of it is orthogonal to ``K_0(alpha)``."""
    alpha = as_amplitude(alpha)
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    if n < 0:
        raise ValueError("n must be a natural number")
    return _canonical(1j * (math.pi * (2 * n + 1) / 2.0) / alpha.conjugate())


def odd_cat_partner(alpha, n: int) -> complex:
    """``i n pi / conj(alpha)`` for ``n >= 1`` (odd-cat counterpart of the above)."""
    alpha = as_amplitude(alpha)
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    if n < 1:
        raise ZeroIndex("n = 0 gives the zero vector K_pi(0)")
    return _canonical(1j * (n * math.pi) / alpha.conjugate())


def coherent_vs_cat_partner(alpha: float, n: int) -> complex:
    """``beta_n = i pi (n + 1/2) / alpha`` for real ``alpha``; ``<alpha|K_0(beta_n)> = 0``."""
    z = as_amplitude(alpha)
    if z.imag != 0.0:
        raise ValueError("alpha must be real")
    if z.real == 0.0:
        raise ZeroAlpha("alpha must be nonzero")
    if n < 0:
        raise ValueError("n must be a natural number")
    return _canonical(complex(0.0, (n + 0.5) * math.pi / z.real))


def j_vector_partner(d: float, k: int) -> Superposition:
    """``|d + i delta_k> + |-d + i delta_k>`` with ``delta_k = pi (2k+1) / (2d)``.

    Orthogonal to ``K_0(d)`` for every integer ``k``.
    """
    d = float(d)
    if d == 0.0:
        raise ZeroD("d must be nonzero")
    delta = math.pi * (2 * k + 1) / (2.0 * d)
    return Superposition(((1.0, complex(d, delta)), (1.0, complex(-d, delta))))


def equal_photon_radius(cls: QuantizationClass, omega: float = 0.0) -> float:
    """``|alpha|`` for which an orthogonal pair with ``|alpha| = |beta|`` exists."""
    return math.sqrt(math.hypot(omega, cls.value))


def band_areas(kind: str, n_max: int, omega: float = 0.0) -> list[float]:
    """Areas ``pi (r_{n+1}^2 - r_n^2)`` between consecutive equal-photon circles, n < n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    offset = 0.5 if kind == HALF_INTEGER else 0.0
    if kind not in (INTEGER, HALF_INTEGER):
        raise ValueError(f"unknown quantization class {kind!r}")
    out = []
    for n in range(n_max):
        x0, x1 = (n + offset) * math.pi, (n + 1 + offset) * math.pi
        s0, s1 = math.hypot(omega, x0), math.hypot(omega, x1)
        # difference of square roots without cancellation
        out.append(math.pi * math.pi * (x1 + x0) / (s1 + s0))
    return out


def phase_map(resolution: int, mark_special_lines: bool = False) -> np.ndarray:
    """Region codes on a ``resolution`` x ``resolution`` node grid of the phase torus.

    Node ``(j, i)`` sits at ``phi1 = 2 pi i / N``, ``phi2 = 2 pi j / N`` (row
    index is phi2). Codes follow ``REGION_CODES``.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    phis = 2.0 * np.pi * np.arange(resolution) / resolution
    p1, p2 = np.meshgrid(phis, phis)
    cplus = np.cos(0.5 * (p1 + p2))
    cminus = np.cos(0.5 * (p1 - p2))
    zp, zm = np.abs(cplus) < ZERO_COS_TOL, np.abs(cminus) < ZERO_COS_TOL
    safe = np.where(zm, 1.0, cminus)
    codes = np.where(cplus / safe < 0, REGION_CODES[RegionKind.INTEGER_CLASS],
                     REGION_CODES[RegionKind.HALF_INTEGER_CLASS])
    if mark_special_lines:
        def near(p, t):
            d = np.abs(p - t)
            return np.minimum(d, 2 * np.pi - d) < PHASE_TOL
        n1pi, n2pi, n10, n20 = near(p1, np.pi), near(p2, np.pi), near(p1, 0.0), near(p2, 0.0)
        on_pi = (n1pi != n2pi) & ~(n10 | n20)
        on_zero = (n10 != n20) & ~(n1pi | n2pi)
        codes = np.where(on_pi, REGION_CODES[RegionKind.PI_LINE_SPECIAL], codes)
        codes = np.where(on_zero & ~on_pi, REGION_CODES[RegionKind.ZERO_LINE_SPECIAL], codes)
    codes = np.where(zp ^ zm, REGION_CODES[RegionKind.NO_SOLUTION], codes)
    codes = np.where(zp & zm, REGION_CODES[RegionKind.ALWAYS_ORTHOGONAL], codes)
    return codes.astype(np.uint8)


def region_fractions(codes: np.ndarray) -> dict[str, float]:
    total = codes.size
    return {kind.value: float(np.count_nonzero(codes == code)) / total
            for kind, code in REGION_CODES.items()}

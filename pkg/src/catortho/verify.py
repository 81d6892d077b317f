"""Seeded analytic-versus-oracle sweep behind the ``verify`` subcommand."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coherent import cat_inner_product, coherent_overlap, norm_squared, symplectic_form
from .fock import oracle_inner_product, recommended_truncation
from .solver import (
    RegionKind,
    classify_phase_pair,
    orthogonality_defect,
    solve_beta_family,
    solve_phi2,
)
from .states import CatVector, circular_distance

DEFAULT_SEED = 20151104
CHUNK = 100

THRESHOLDS = {
    "overlap_law": 1e-12,
    "hermitian": 1e-12,
    "parity_analytic": 1e-13,
    "parity_oracle": 1e-11,
    "oracle_excess": 1e-11,
    "family_inner": 1e-10,
    "family_lattice": 1e-10,
    "phi2_roundtrip": 1e-9,
}


def random_amplitude(rng: np.random.Generator, max_amplitude: float) -> complex:
    """Uniform on the disk of radius ``max_amplitude``."""
    r = max_amplitude * math.sqrt(rng.random())
    return r * complex(math.cos(2 * math.pi * rng.random()), math.sin(2 * math.pi * rng.random()))


def random_solvable_phases(rng: np.random.Generator, max_abs_omega: float = 3.0):
    """Phase pair from an open class region with ``1e-3 < |omega| <= max_abs_omega``."""
    while True:
        phi1, phi2 = rng.uniform(0.0, 2 * math.pi, size=2)
        region = classify_phase_pair(phi1, phi2)
        if region.omega is not None and 1e-3 < abs(region.omega) <= max_abs_omega:
            return float(phi1), float(phi2), region


def _sweep_chunk(seed_seq: np.random.SeedSequence, size: int, max_amplitude: float) -> dict:
    rng = np.random.default_rng(seed_seq)
    worst = dict.fromkeys(THRESHOLDS, 0.0)
    n_oracle = recommended_truncation(max_amplitude)
    for _ in range(size):
        a = random_amplitude(rng, max_amplitude)
        b = random_amplitude(rng, max_amplitude)
        p1, p2 = rng.uniform(0.0, 2 * math.pi, size=2)

        expected = math.exp(-abs(a - b) ** 2)
        rel = abs(abs(coherent_overlap(a, b)) ** 2 - expected) / expected
        worst["overlap_law"] = max(worst["overlap_law"], rel)

        u, v = CatVector(a, p1), CatVector(b, p2)
        scale = math.sqrt(norm_squared(u) * norm_squared(v))
        herm = abs(cat_inner_product(u, v) - cat_inner_product(v, u).conjugate())
        worst["hermitian"] = max(worst["hermitian"], herm / scale if scale else herm)

        analytic = cat_inner_product(v, u)
        oracle = oracle_inner_product(v, u, n_oracle)
        excess = abs(analytic - oracle.value) - oracle.error_bar
        worst["oracle_excess"] = max(worst["oracle_excess"], excess)

        odd, even = CatVector(b, math.pi), CatVector(a, 0.0)
        worst["parity_analytic"] = max(worst["parity_analytic"], abs(cat_inner_product(odd, even)))
        worst["parity_oracle"] = max(worst["parity_oracle"],
                                     abs(oracle_inner_product(odd, even, n_oracle).value))

        alpha = random_amplitude(rng, 3.0)
        if abs(alpha) < 0.3:
            alpha = 0.3 * alpha / abs(alpha) if alpha else 0.3
        q1, q2, region = random_solvable_phases(rng)
        k = int(rng.integers(-3, 4))
        (_, beta), = solve_beta_family(alpha, q1, q2, k, k)
        offset = 0.5 if region.kind is RegionKind.HALF_INTEGER_CLASS else 0.0
        worst["family_lattice"] = max(worst["family_lattice"],
                                      abs(symplectic_form(alpha, beta) - (k + offset) * math.pi))
        worst["family_inner"] = max(worst["family_inner"],
                                    orthogonality_defect(CatVector(beta, q2), CatVector(alpha, q1)))
        if not (circular_distance(q1, 0.0) < 1e-6 or circular_distance(q1, math.pi) < 1e-6):
            back = solve_phi2(alpha, beta, q1)
            worst["phi2_roundtrip"] = max(worst["phi2_roundtrip"], circular_distance(back, q2))
    return worst


def run_sweep(samples: int = 1000, seed: int = DEFAULT_SEED, max_amplitude: float = 6.0,
              jobs: int = 1) -> dict:
    """Largest residual of every check over ``samples`` random instances.

    Work is split into fixed chunks with spawned seeds, so the output depends
    on ``seed`` and ``samples`` only, never on ``jobs``.
    """
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    args = list(zip(seeds, sizes))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda p: _sweep_chunk(p[0], p[1], max_amplitude), args))
    else:
        parts = [_sweep_chunk(s, n, max_amplitude) for s, n in args]
    worst = dict.fromkeys(THRESHOLDS, 0.0)
    for part in parts:
        for key, val in part.items():
            worst[key] = max(worst[key], val)
    return {
        "samples": samples,
        "seed": seed,
        "max_residuals": worst,
        "thresholds": dict(THRESHOLDS),
        "passed": all(worst[k] <= THRESHOLDS[k] for k in THRESHOLDS),
    }

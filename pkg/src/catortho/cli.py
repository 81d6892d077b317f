"""Command-line front end.

Results go to stdout as JSON; tables and rasters go to ``--output``.
Exit status: 0 on success, 2 for invalid arguments, 3 for solver errors
(the JSON then carries the error name in ``error``).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coherent import metric_form, norm_squared, symplectic_form
from .errors import CatOrthoError, VerificationError
from .fock import oracle_inner_product, recommended_truncation
from .husimi import GridGeometry, husimi_grid, husimi_quadrature_check
from .rasters import write_pgm, write_qgrid_csv, write_qgrid_pgm, write_rows_csv
from .solver import (
    HALF_INTEGER,
    INTEGER,
    QUANT_TOL,
    REGION_CODES,
    VERIFY_TOL,
    QuantizationClass,
    RegionKind,
    band_areas,
    classify_phase_pair,
    coherent_vs_cat_partner,
    equal_photon_radius,
    even_cat_partner,
    j_vector_partner,
    odd_cat_partner,
    orthogonality_defect,
    phase_map,
    quantization_class,
    region_fractions,
    scal_residual,
    solve_beta_family,
    solve_phi2,
)
from .states import CatVector, Superposition
from .verify import DEFAULT_SEED, run_sweep

# gray levels for phase-map rasters
REGION_GRAY = {
    RegionKind.NO_SOLUTION: 0,
    RegionKind.HALF_INTEGER_CLASS: 85,
    RegionKind.INTEGER_CLASS: 170,
    RegionKind.ZERO_LINE_SPECIAL: 120,
    RegionKind.PI_LINE_SPECIAL: 210,
    RegionKind.ALWAYS_ORTHOGONAL: 255,
}

# options whose values may start with '-' (e.g. "--k -5..-5")
VALUE_OPTIONS = {
    "--alpha", "--beta", "--phi", "--phi1", "--phi2", "--k", "--n", "--d",
    "--omega", "--bounds", "--tol", "--qtol", "--seed",
}


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            z = complex(float(parts[0]), 0.0)
        elif len(parts) == 2:
            z = complex(float(parts[0]), float(parts[1]))
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"non-finite amplitude {text!r}")
    return z


def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a..b' or an integer, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_bounds(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        vals = ()
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("expected re_min,re_max,im_min,im_max")
    return vals


def positive_float(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return val


def finite_float(text: str) -> float:
    val = float(text)
    if not math.isfinite(val):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return val


def grid_size(text: str) -> int:
    val = int(text)
    if val < 2:
        raise argparse.ArgumentTypeError("grid sizes must be >= 2")
    return val


def cplx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _angle(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def _qclass(cls: QuantizationClass) -> dict:
    return {"class": cls.kind, "k": cls.k, "residual": cls.residual}


def _oracle_record(bra, ket, args, tol: float) -> dict:
    amps = [abs(a) for _, a in bra.terms] + [abs(a) for _, a in ket.terms]
    n = args.truncation or recommended_truncation(max(amps))
    res = oracle_inner_product(bra, ket, n)
    nn = math.sqrt(norm_squared(bra) * norm_squared(ket)) or 1.0
    value, bar = abs(res.value) / nn, res.error_bar / nn
    if value > tol + bar:
        raise VerificationError(f"oracle residual {value:.3e} exceeds tolerance")
    return {"oracle_residual": value, "oracle_error_bar": bar, "truncation": n}


def cmd_classify(args) -> dict:
    phi1, phi2 = _angle(args, args.phi1), _angle(args, args.phi2)
    region = classify_phase_pair(phi1, phi2, mark_special_lines=args.mark_lines)
    return {
        "inputs": {"phi1": phi1, "phi2": phi2},
        "kind": region.kind.value,
        "omega": region.omega,
        "quantization": region.quantization,
    }


def cmd_beta_family(args) -> dict:
    phi1, phi2 = _angle(args, args.phi1), _angle(args, args.phi2)
    k_min, k_max = args.k
    region = classify_phase_pair(phi1, phi2)
    members = solve_beta_family(args.alpha, phi1, phi2, k_min, k_max, tol=args.tol)
    ket = CatVector(args.alpha, phi1)
    rows = []
    for k, beta in members:
        bra = CatVector(beta, phi2)
        rec = {
            "k": k,
            "beta": cplx(beta),
            "quantization": _qclass(quantization_class(symplectic_form(args.alpha, beta), args.qtol)),
            "residual": orthogonality_defect(bra, ket),
        }
        if args.verify:
            rec.update(_oracle_record(bra, ket, args, args.tol))
        rows.append(rec)
    if args.output and args.format == "csv":
        write_rows_csv(args.output, ["k", "beta_re", "beta_im", "residual"],
                       [(r["k"], r["beta"]["re"], r["beta"]["im"], r["residual"]) for r in rows])
    return {
        "inputs": {"alpha": cplx(args.alpha), "phi1": phi1, "phi2": phi2, "k": [k_min, k_max]},
        "kind": region.kind.value,
        "omega": region.omega,
        "members": rows,
    }


def cmd_phi2(args) -> dict:
    phi1 = _angle(args, args.phi1)
    phi2 = solve_phi2(args.alpha, args.beta, phi1, qtol=args.qtol)
    omega = metric_form(args.alpha, args.beta)
    h = symplectic_form(args.alpha, args.beta)
    bra, ket = CatVector(args.beta, phi2), CatVector(args.alpha, phi1)
    defect = orthogonality_defect(bra, ket)
    if defect > args.tol:
        raise VerificationError(f"|inner| = {defect:.3e} exceeds tolerance")
    out = {
        "inputs": {"alpha": cplx(args.alpha), "beta": cplx(args.beta), "phi1": phi1},
        "phi2": phi2,
        "omega": omega,
        "quantization": _qclass(quantization_class(h, args.qtol)),
        "scal_residual": scal_residual(omega, h, phi1, phi2),
        "residual": defect,
    }
    if args.verify:
        out.update(_oracle_record(bra, ket, args, args.tol))
    return out


def cmd_partner(args) -> dict:
    n_min, n_max = args.n
    rows = []
    for n in range(n_min, n_max + 1):
        beta = None
        if args.kind == "even":
            beta = even_cat_partner(args.alpha, n)
            bra, ket = CatVector(beta, 0.0), CatVector(args.alpha, 0.0)
        elif args.kind == "odd":
            beta = odd_cat_partner(args.alpha, n)
            bra, ket = CatVector(beta, math.pi), CatVector(args.alpha, math.pi)
        elif args.kind == "coherent":
            beta = coherent_vs_cat_partner(args.alpha, n)
            bra, ket = CatVector(beta, 0.0), Superposition(((1.0, args.alpha),))
        else:
            bra, ket = j_vector_partner(args.d, n), CatVector(complex(args.d), 0.0)
        defect = orthogonality_defect(bra, ket)
        if defect > args.tol:
            raise VerificationError(f"n={n}: |inner| = {defect:.3e}")
        rec = {"n": n, "residual": defect}
        if beta is not None:
            rec["beta"] = cplx(beta)
        else:
            rec["amplitudes"] = [cplx(a) for a in bra.amplitudes]
        if args.verify:
            rec.update(_oracle_record(bra, ket, args, args.tol))
        rows.append(rec)
    inputs = {"kind": args.kind, "n": [n_min, n_max]}
    if args.kind == "j":
        inputs["d"] = args.d
    else:
        inputs["alpha"] = cplx(args.alpha)
    return {"inputs": inputs, "partners": rows}


def cmd_radii(args) -> dict:
    k_min, k_max = args.k
    kind = HALF_INTEGER if args.lattice == "half" else INTEGER
    radii = [(k, equal_photon_radius(QuantizationClass(kind, k), args.omega))
             for k in range(k_min, k_max + 1)]
    out = {
        "inputs": {"class": kind, "omega": args.omega, "k": [k_min, k_max]},
        "radii": [{"k": k, "radius": r} for k, r in radii],
    }
    if k_min >= 0 and k_max > k_min:
        bands = band_areas(kind, k_max + 1, args.omega)[k_min:k_max]
        out["band_areas"] = bands
    if args.output:
        write_rows_csv(args.output, ["k", "radius"], radii)
        out["output"] = str(args.output)
    return out


def _husimi_state(args):
    if args.state == "coherent":
        return args.alpha
    return CatVector(args.alpha, _angle(args, args.phi))


def cmd_husimi(args) -> dict:
    re_min, re_max, im_min, im_max = args.bounds
    try:
        geometry = GridGeometry(re_min, re_max, im_min, im_max, args.nx, args.ny)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    grid = husimi_grid(_husimi_state(args), geometry, normalize=not args.no_normalize, jobs=args.jobs)
    out = {
        "inputs": {"state": args.state, "alpha": cplx(args.alpha), "bounds": list(args.bounds),
                   "nx": args.nx, "ny": args.ny},
        "normalized": grid.normalized,
        "max": float(np.max(grid.values)),
        "quadrature": husimi_quadrature_check(grid),
    }
    if args.state == "cat":
        out["inputs"]["phi"] = _angle(args, args.phi)
    if args.output:
        fmt = args.format if args.format != "json" else Path(args.output).suffix.lstrip(".")
        if fmt == "pgm":
            write_qgrid_pgm(grid, args.output)
        else:
            write_qgrid_csv(grid, args.output)
        out["output"] = str(args.output)
    if args.circles:
        if args.state == "cat" and abs(math.cos(_angle(args, args.phi)) + 1) < 1e-12:
            kind = INTEGER
        else:
            kind = HALF_INTEGER
        path = Path(args.output).with_suffix(".circles.csv") if args.output else Path("circles.csv")
        rows = [(k, equal_photon_radius(QuantizationClass(kind, k), args.omega))
                for k in range(args.circles)]
        write_rows_csv(path, ["k", "radius"], rows)
        out["circles"] = {"class": kind, "omega": args.omega, "output": str(path)}
    return out


def cmd_phase_map(args) -> dict:
    codes = phase_map(args.resolution, mark_special_lines=args.mark_lines)
    code_to_kind = {v: k for k, v in REGION_CODES.items()}
    ao = np.argwhere(codes == REGION_CODES[RegionKind.ALWAYS_ORTHOGONAL])
    step = 2 * math.pi / args.resolution
    out = {
        "inputs": {"resolution": args.resolution, "mark_lines": args.mark_lines},
        "fractions": region_fractions(codes),
        "always_orthogonal": [{"phi1": float(i * step), "phi2": float(j * step)} for j, i in ao],
    }
    if args.output:
        fmt = args.format if args.format != "json" else Path(args.output).suffix.lstrip(".")
        if fmt == "csv":
            rows = [(float(i * step), float(j * step), code_to_kind[int(codes[j, i])].value)
                    for j in range(args.resolution) for i in range(args.resolution)]
            write_rows_csv(args.output, ["phi1", "phi2", "kind"], rows)
        else:
            lut = np.zeros(len(REGION_CODES), dtype=np.uint8)
            for kind, code in REGION_CODES.items():
                lut[code] = REGION_GRAY[kind]
            # phi2 grows upwards
            write_pgm(lut[codes][::-1], args.output)
        out["output"] = str(args.output)
        out["gray_levels"] = {k.value: v for k, v in REGION_GRAY.items()}
    return out


def cmd_verify(args) -> dict:
    report = run_sweep(args.samples, args.seed, args.max_amplitude, args.jobs)
    if not report["passed"]:
        bad = [k for k, v in report["max_residuals"].items() if v > report["thresholds"][k]]
        raise VerificationError("checks above threshold: " + ", ".join(bad))
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    common.add_argument("--format", choices=["json", "csv", "pgm"], default="json")
    common.add_argument("--output", type=Path)
    common.add_argument("--tol", type=positive_float, default=VERIFY_TOL,
                        help="verification tolerance on the normalized inner product")
    common.add_argument("--qtol", type=positive_float, default=QUANT_TOL,
                        help="quantization snap tolerance on Im(alpha conj(beta))")
    common.add_argument("--truncation", type=int, help="Fock cutoff for --verify")
    common.add_argument("--verify", action="store_true", help="also check against the Fock oracle")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="catortho", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="locate a phase pair on the torus map")
    p.add_argument("--phi1", type=finite_float, required=True)
    p.add_argument("--phi2", type=finite_float, required=True)
    p.add_argument("--mark-lines", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("beta-family", parents=[common], help="quantized partners for fixed phases")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--phi1", type=finite_float, required=True)
    p.add_argument("--phi2", type=finite_float, required=True)
    p.add_argument("--k", type=parse_range, required=True)
    p.set_defaults(func=cmd_beta_family)

    p = sub.add_parser("phi2", parents=[common], help="relative phase making two cats orthogonal")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--beta", type=parse_complex, required=True)
    p.add_argument("--phi1", type=finite_float, required=True)
    p.set_defaults(func=cmd_phi2)

    p = sub.add_parser("partner", parents=[common], help="even/odd/coherent/J partner families")
    p.add_argument("--kind", choices=["even", "odd", "coherent", "j"], required=True)
    p.add_argument("--alpha", type=parse_complex)
    p.add_argument("--d", type=finite_float)
    p.add_argument("--n", type=parse_range, required=True, help="index or range a..b (k for J)")
    p.set_defaults(func=cmd_partner)

    p = sub.add_parser("radii", parents=[common], help="equal-photon radii and band areas")
    p.add_argument("--class", dest="lattice", choices=["half", "integer"], default="half")
    p.add_argument("--omega", type=finite_float, default=0.0)
    p.add_argument("--k", type=parse_range, required=True)
    p.set_defaults(func=cmd_radii)

    p = sub.add_parser("husimi", parents=[common], help="Husimi Q raster of a coherent or cat state")
    p.add_argument("--state", choices=["coherent", "cat"], default="cat")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--phi", type=finite_float, default=0.0)
    p.add_argument("--bounds", type=parse_bounds, default=(-6.0, 6.0, -6.0, 6.0))
    p.add_argument("--nx", type=grid_size, default=241)
    p.add_argument("--ny", type=grid_size, default=241)
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--circles", type=int, default=0,
                   help="also write this many equal-photon radii as a CSV layer")
    p.add_argument("--omega", type=finite_float, default=0.0)
    p.set_defaults(func=cmd_husimi)

    p = sub.add_parser("phase-map", parents=[common], help="raster of the phase-pair classification")
    p.add_argument("--resolution", type=grid_size, default=512)
    p.add_argument("--mark-lines", action="store_true")
    p.set_defaults(func=cmd_phase_map)

    p = sub.add_parser("verify", parents=[common], help="seeded analytic-vs-oracle sweep")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-amplitude", type=positive_float, default=6.0)
    p.set_defaults(func=cmd_verify)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _check(parser, args) -> None:
    if args.command == "partner":
        if args.kind == "j" and args.d is None:
            parser.error("--kind j needs --d")
        if args.kind != "j" and args.alpha is None:
            parser.error(f"--kind {args.kind} needs --alpha")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    if args.truncation is not None and args.truncation < 0:
        parser.error("--truncation must be >= 0")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    _check(parser, args)
    try:
        result = args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except CatOrthoError as exc:
        print(json.dumps({"command": args.command, "error": exc.code, "message": str(exc)}))
        return 3
    print(json.dumps({"command": args.command, **result}, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())

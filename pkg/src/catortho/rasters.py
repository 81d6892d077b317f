"""Plain-text raster and table writers (CSV with 17 significant digits, ASCII PGM)."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .husimi import QGrid


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_qgrid_csv(grid: QGrid, path) -> None:
    """One ``re,im,q`` row per sample, row-major over ``values``."""
    re, im = grid.geometry.re_axis(), grid.geometry.im_axis()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["re", "im", "q"])
        for j, y in enumerate(im):
            for i, x in enumerate(re):
                w.writerow([fmt(x), fmt(y), fmt(grid.values[j, i])])


def read_qgrid_csv(path) -> np.ndarray:
    """Rows of ``(re, im, q)`` as a float array."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows[0] != ["re", "im", "q"]:
        raise ValueError(f"unexpected header {rows[0]}")
    return np.array([[float(v) for v in r] for r in rows[1:]])


def scale_to_bytes(values: np.ndarray) -> np.ndarray:
    """Linear map ``[0, max] -> [0, 255]``; an all-zero array stays zero."""
    peak = float(np.max(values)) if values.size else 0.0
    if peak <= 0.0:
        return np.zeros(values.shape, dtype=np.uint8)
    return np.clip(np.rint(values / peak * 255.0), 0, 255).astype(np.uint8)


def write_pgm(pixels: np.ndarray, path, maxval: int = 255) -> None:
    """P2 (ASCII) graymap; ``pixels[0]`` is the top row."""
    pixels = np.asarray(pixels)
    ny, nx = pixels.shape
    lines = ["P2", f"{nx} {ny}", str(maxval)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in pixels)
    Path(path).write_text("\n".join(lines) + "\n")


def read_pgm(path) -> np.ndarray:
    tokens = [t for line in Path(path).read_text().splitlines()
              if not line.startswith("#") for t in line.split()]
    if tokens[0] != "P2":
        raise ValueError("not an ASCII PGM file")
    nx, ny, _ = int(tokens[1]), int(tokens[2]), int(tokens[3])
    data = np.array([int(t) for t in tokens[4:4 + nx * ny]], dtype=np.int64)
    return data.reshape(ny, nx)


def write_qgrid_pgm(grid: QGrid, path) -> None:
    # flip so that Im(gamma) grows upwards in the image
    write_pgm(scale_to_bytes(grid.values)[::-1], path)


def write_rows_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) if isinstance(v, float) else v for v in r])

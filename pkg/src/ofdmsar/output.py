"""File writers: binary PGM images and CSV tables.

All writers are deterministic: identical inputs produce byte-identical files.
Complex columns use the paired ``re_<name>,im_<name>`` convention.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .allocation import ChannelGains, PowerAllocation

__all__ = [
    "write_pgm",
    "write_db_csv",
    "write_allocation_csv",
    "write_table_csv",
    "write_complex_csv",
]


def write_pgm(path, db_image: np.ndarray, floor: float = -40.0) -> None:
    """8-bit binary PGM (P5) with dB values mapped [floor, 0] -> [0, 255]."""
    db = np.asarray(db_image, dtype=float)
    scaled = np.clip((db - floor) / (-floor), 0.0, 1.0)
    pixels = np.rint(scaled * 255.0).astype(np.uint8)
    header = f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + pixels.tobytes())


def write_db_csv(path, db_image: np.ndarray) -> None:
    """Raw dB raster as CSV, one row per range cell."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.asarray(db_image, dtype=float):
            writer.writerow([repr(float(v)) for v in row])


def write_allocation_csv(path, alloc: PowerAllocation, ch: ChannelGains) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "P_k", "g_k"])
        for k, (p, g) in enumerate(zip(alloc.powers, ch.gains)):
            writer.writerow([k, repr(float(p)), repr(float(g))])


def write_table_csv(path, rows: list[dict]) -> None:
    if not rows:
        raise ValueError("no rows to write")
    header = list(rows[0].keys())
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [repr(v) if isinstance(v, float) else v for v in (row[h] for h in header)]
            )


def write_complex_csv(path, matrix: np.ndarray, name: str = "z") -> None:
    z = np.atleast_2d(np.asarray(matrix, dtype=complex))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = []
        for j in range(z.shape[1]):
            header += [f"re_{name}{j}", f"im_{name}{j}"]
        writer.writerow(header)
        for row in z:
            out = []
            for v in row:
                out += [repr(float(v.real)), repr(float(v.imag))]
            writer.writerow(out)

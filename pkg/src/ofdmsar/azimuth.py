"""Bulk RCMC and Range-Doppler azimuth compression.

Range cell migration is corrected with nearest-cell circular shifts computed
from the swath-center hyperbola; at the default geometry the total migration
is under two range cells, so sub-cell interpolation buys nothing.  Azimuth
focusing correlates each range row with the conjugate quadratic-phase
reference (zero Doppler centroid, single reference range), implemented in the
frequency domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .geometry import Geometry

__all__ = ["SarImage", "rcmc_bulk", "rcmc_shifts", "azimuth_reference", "azimuth_compress"]

DB_FLOOR = -40.0


@dataclass(frozen=True)
class SarImage:
    """Focused complex image plus its peak-normalized dB magnitude raster."""

    complex_image: np.ndarray
    db_image: np.ndarray

    @classmethod
    def from_complex(cls, img: np.ndarray) -> "SarImage":
        mag = np.abs(img)
        peak = mag.max()
        if peak == 0.0:
            # Degenerate all-zero input: the raster is all-floor by convention.
            return cls(img, np.full(img.shape, DB_FLOOR))
        with np.errstate(divide="ignore"):
            db = 20.0 * np.log10(mag / peak)
        return cls(img, np.clip(db, DB_FLOOR, 0.0))


def rcmc_shifts(geom: Geometry, range_cell_size: float) -> np.ndarray:
    """Integer cell shifts round(dR(eta) / cell) from the center hyperbola."""
    eta = geom.slow_time()
    rc = geom.slant_range_center
    dr = np.sqrt(rc**2 + (geom.velocity * eta) ** 2) - rc
    return np.rint(dr / range_cell_size).astype(int)


def rcmc_bulk(
    profiles: np.ndarray, geom: Geometry, range_cell_size: float
) -> np.ndarray:
    """Shift each pulse's range column back by its bulk migration.

    Shifts are circular; cells that wrapped in from the far swath edge are
    zeroed (validity mask).
    """
    if profiles.shape[1] != geom.n_pulses:
        raise DimensionError(
            f"profiles have {profiles.shape[1]} pulses, geometry has {geom.n_pulses}"
        )
    shifts = rcmc_shifts(geom, range_cell_size)
    out = np.empty_like(profiles)
    n = profiles.shape[0]
    for p, shift in enumerate(shifts):
        col = np.roll(profiles[:, p], -shift)
        if shift > 0:
            col[n - shift :] = 0.0
        elif shift < 0:
            col[: -shift] = 0.0
        out[:, p] = col
    return out


def azimuth_reference(geom: Geometry, n_pulses: int) -> np.ndarray:
    """Quadratic-phase azimuth chirp exp(-j 2 pi v^2 t^2 / (lambda R_c))."""
    t = (np.arange(n_pulses) - n_pulses // 2) / geom.prf
    return np.exp(
        -2j
        * np.pi
        * geom.velocity**2
        * t**2
        / (geom.wavelength * geom.slant_range_center)
    )


def azimuth_compress(profiles: np.ndarray, geom: Geometry) -> SarImage:
    """Correlate every range row with the conjugate azimuth reference.

    Circular correlation via FFT; the output is rolled so a scatterer whose
    closest approach falls at pulse index p peaks at azimuth index p.
    """
    n_pulses = profiles.shape[1]
    ref = azimuth_reference(geom, n_pulses)
    ref_f = np.conj(np.fft.fft(ref))
    corr = np.fft.ifft(np.fft.fft(profiles, axis=1) * ref_f[None, :], axis=1)
    focused = np.roll(corr, n_pulses // 2, axis=1)
    return SarImage.from_complex(focused)

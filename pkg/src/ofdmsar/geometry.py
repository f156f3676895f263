"""Side-looking SAR geometry, slow-time grid, scenes, and pulse coefficients.

A scatterer in range cell m and azimuth column a contributes, at slow time
eta, the weighting coefficient

    d_m = g_m * env(eta - eta_a) * exp(-j 4 pi f_c R_m(eta - eta_a) / c)

where R_m is the hyperbolic slant-range history about the scatterer's own
closest approach and env is a rectangular aperture window of width T_a.
Scene columns sit at the centers of resolvable azimuth cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionError, SceneFormatError
from .waveform import WaveformSpec

SPEED_OF_LIGHT = 299792458.0

__all__ = [
    "SPEED_OF_LIGHT",
    "Geometry",
    "Scene",
    "PulseCoefficients",
    "slant_range",
    "weighting_coefficients",
    "load_scene",
    "save_scene",
]


@dataclass(frozen=True)
class Geometry:
    """Broadside stripmap geometry of the moving platform."""

    altitude: float
    slant_range_center: float
    velocity: float
    carrier_freq: float
    prf: float
    aperture_time: float

    def __post_init__(self):
        for name in (
            "altitude",
            "slant_range_center",
            "velocity",
            "carrier_freq",
            "prf",
            "aperture_time",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.slant_range_center < self.altitude:
            raise ValueError("slant_range_center must be >= altitude")
        if self.n_pulses < 2:
            raise ValueError("geometry yields fewer than 2 pulses")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq

    @property
    def n_pulses(self) -> int:
        return int(round(self.prf * self.aperture_time))

    def slow_time(self) -> np.ndarray:
        """Centered slow-time grid, one entry per pulse."""
        n = self.n_pulses
        return (np.arange(n) - n // 2) / self.prf

    def azimuth_resolution(self) -> float:
        return self.wavelength * self.slant_range_center / (
            2.0 * self.velocity * self.aperture_time
        )


@dataclass(frozen=True)
class Scene:
    """Complex RCS grid: one row per range cell, one column per azimuth cell."""

    rcs: np.ndarray
    range_cell_size: float

    def __post_init__(self):
        rcs = np.atleast_2d(np.asarray(self.rcs, dtype=complex))
        object.__setattr__(self, "rcs", rcs)
        if self.range_cell_size <= 0:
            raise ValueError("range_cell_size must be positive")

    @property
    def n_range_cells(self) -> int:
        return self.rcs.shape[0]

    @property
    def n_azimuth(self) -> int:
        return self.rcs.shape[1]

    @classmethod
    def empty(cls, spec: WaveformSpec, n_azimuth: int) -> "Scene":
        rcs = np.zeros((spec.n_subcarriers, n_azimuth), dtype=complex)
        return cls(rcs, SPEED_OF_LIGHT / (2.0 * spec.bandwidth))

    @classmethod
    def point_target(cls, spec: WaveformSpec, n_azimuth: int = 1) -> "Scene":
        """Unit scatterer at the center of the range swath."""
        scene = cls.empty(spec, n_azimuth)
        scene.rcs[spec.n_subcarriers // 2, n_azimuth // 2] = 1.0
        return scene


@dataclass(frozen=True)
class PulseCoefficients:
    """Weighting RCS coefficients d_m for one slow-time instant."""

    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", np.asarray(self.d, dtype=complex))


def slant_range(geom: Geometry, r_bar: float, eta) -> float | np.ndarray:
    """Hyperbolic range history sqrt(r_bar^2 + (v * eta)^2)."""
    if np.any(np.asarray(r_bar) <= 0):
        raise ValueError("closest-approach range must be positive")
    return np.sqrt(r_bar**2 + (geom.velocity * np.asarray(eta)) ** 2)


def closest_approach_ranges(geom: Geometry, scene: Scene) -> np.ndarray:
    """Per-cell closest-approach ranges, spaced one range cell apart.

    The swath starts at R_c - (M/2) * cell size, so the swath-center cell
    M // 2 sits exactly at the reference range.
    """
    m = scene.n_range_cells
    r0 = geom.slant_range_center - (m / 2) * scene.range_cell_size
    return r0 + np.arange(m) * scene.range_cell_size


def column_center_times(geom: Geometry, scene: Scene) -> np.ndarray:
    """Closest-approach slow times of the scene's azimuth columns.

    Columns are one resolvable azimuth cell apart with the middle column at
    eta = 0.
    """
    step = geom.azimuth_resolution() / geom.velocity
    a = np.arange(scene.n_azimuth)
    return (a - scene.n_azimuth // 2) * step


def aperture_envelope(geom: Geometry, eta) -> np.ndarray:
    """Rectangular azimuth envelope: 1 inside the aperture, 0 outside."""
    return (np.abs(np.asarray(eta, dtype=float)) <= geom.aperture_time / 2.0).astype(
        float
    )


def weighting_coefficients(
    geom: Geometry, scene: Scene, eta: float, azimuth_col: int
) -> PulseCoefficients:
    """Coefficient vector contributed by one azimuth column at slow time eta."""
    if not 0 <= azimuth_col < scene.n_azimuth:
        raise DimensionError(
            f"azimuth column {azimuth_col} outside scene width {scene.n_azimuth}"
        )
    eta_rel = eta - column_center_times(geom, scene)[azimuth_col]
    env = aperture_envelope(geom, eta_rel)
    r = slant_range(geom, closest_approach_ranges(geom, scene), eta_rel)
    phase = np.exp(-4j * np.pi * geom.carrier_freq * r / SPEED_OF_LIGHT)
    return PulseCoefficients(scene.rcs[:, azimuth_col] * env * phase)


def scene_coefficients(geom: Geometry, scene: Scene, eta: float) -> np.ndarray:
    """Summed d vector over all azimuth columns at one slow time."""
    eta_rel = eta - column_center_times(geom, scene)  # (n_az,)
    env = aperture_envelope(geom, eta_rel)
    rbar = closest_approach_ranges(geom, scene)  # (M,)
    r = np.sqrt(rbar[:, None] ** 2 + (geom.velocity * eta_rel[None, :]) ** 2)
    phase = np.exp(-4j * np.pi * geom.carrier_freq * r / SPEED_OF_LIGHT)
    return np.sum(scene.rcs * env[None, :] * phase, axis=1)


# --- scene file I/O ---------------------------------------------------------
#
# Plain text: a header line "# M n_az", then M rows of n_az comma-separated
# values.  Real entries are bare floats; complex entries use "re:im".


def _format_value(z: complex) -> str:
    if z.imag == 0.0:
        return repr(float(z.real))
    return f"{float(z.real)!r}:{float(z.imag)!r}"


def _parse_value(tok: str) -> complex:
    try:
        if ":" in tok:
            re_s, im_s = tok.split(":")
            return complex(float(re_s), float(im_s))
        return complex(float(tok), 0.0)
    except ValueError as exc:
        raise SceneFormatError(f"bad scene value {tok!r}") from exc


def save_scene(scene: Scene, path) -> None:
    lines = [f"# {scene.n_range_cells} {scene.n_azimuth}"]
    for row in scene.rcs:
        lines.append(",".join(_format_value(z) for z in row))
    Path(path).write_text("\n".join(lines) + "\n")


def load_scene(path, spec: WaveformSpec) -> Scene:
    """Parse a scene file and validate it against the waveform numerology."""
    text = Path(path).read_text()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise SceneFormatError("missing '# M n_az' header line")
    try:
        m, n_az = (int(t) for t in lines[0][1:].split())
    except ValueError as exc:
        raise SceneFormatError("malformed header line") from exc
    rows = lines[1:]
    if len(rows) != m:
        raise SceneFormatError(f"expected {m} rows, found {len(rows)}")
    rcs = np.empty((m, n_az), dtype=complex)
    for i, row in enumerate(rows):
        toks = row.split(",")
        if len(toks) != n_az:
            raise SceneFormatError(f"row {i}: expected {n_az} values, got {len(toks)}")
        rcs[i] = [_parse_value(t) for t in toks]
    if m != spec.n_subcarriers:
        raise SceneFormatError(
            f"scene has {m} range cells but SWMP requires {spec.n_subcarriers}"
        )
    return Scene(rcs, SPEED_OF_LIGHT / (2.0 * spec.bandwidth))

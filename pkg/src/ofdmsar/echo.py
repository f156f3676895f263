"""Raw echo synthesis: circular-convolution model plus white Gaussian noise.

Because the cyclic prefix reduces the SWMP pulse-echo chain to circular
convolution, pulses are synthesized directly in the circular model
``y = ifft(S * fft(d)) + w`` (eigenvalues of the channel operator are the
subcarrier symbols; see waveform module notes on the 1/sqrt(N) normalization
relative to the raw pulse body).  A linear-convolution-with-CP reference path
is kept for the one-time model-equivalence check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .allocation import PowerAllocation
from .errors import DimensionError
from .geometry import Geometry, PulseCoefficients, Scene, scene_coefficients
from .waveform import SymbolVector, TimeDomainPulse, WaveformSpec, draw_symbols, modulate

__all__ = [
    "RawDataCube",
    "apply_waveform",
    "synthesize_pulse",
    "synthesize_pulse_linear_cp",
    "synthesize_raw",
    "pulse_rng",
]


@dataclass(frozen=True)
class RawDataCube:
    """CP-stripped fast-time x slow-time raw data plus the transmitted symbols.

    The radar receiver knows its own transmitted data, so the per-pulse
    symbol vectors travel with the cube.
    """

    data: np.ndarray
    pulse_symbols: list
    noise_power: float
    seed: int

    def __post_init__(self):
        if self.data.shape[1] != len(self.pulse_symbols):
            raise DimensionError("one symbol vector required per pulse")

    @property
    def n_fast(self) -> int:
        return self.data.shape[0]

    @property
    def n_pulses(self) -> int:
        return self.data.shape[1]


def apply_waveform(symbols: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Noise-free channel action: circular model with eigenvalues S_k."""
    return np.fft.ifft(symbols * np.fft.fft(d))


def _complex_noise(rng: np.random.Generator, n: int, sigma2: float) -> np.ndarray:
    if sigma2 == 0.0:
        return np.zeros(n, dtype=complex)
    scale = np.sqrt(sigma2 / 2.0)
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def synthesize_pulse(
    pulse_syms: SymbolVector,
    coeffs: PulseCoefficients,
    sigma2: float,
    seed,
) -> np.ndarray:
    """One received fast-time window: y = C d + w, C the symbol circulant."""
    d = coeffs.d
    if d.size != len(pulse_syms):
        raise DimensionError(f"coefficient length {d.size} != N = {len(pulse_syms)}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return apply_waveform(pulse_syms.symbols, d) + _complex_noise(rng, d.size, sigma2)


def synthesize_pulse_linear_cp(
    pulse: TimeDomainPulse, coeffs: PulseCoefficients
) -> np.ndarray:
    """Reference path: linear convolution of the CP'd pulse, then trimming.

    Convolves the full cyclic-prefixed pulse with d, drops the first and last
    M - 1 samples, and removes the sqrt(N) body scale so the result is
    directly comparable to the circular model.
    """
    d = coeffs.d
    n = pulse.n_subcarriers
    if d.size != n:
        raise DimensionError(f"coefficient length {d.size} != N = {n}")
    full = np.convolve(pulse.samples, d)
    trimmed = full[pulse.cp_len : pulse.cp_len + n]
    return trimmed / np.sqrt(n)


def pulse_rng(master_seed: int, pulse_index: int) -> np.random.Generator:
    """Per-pulse generator from the master seed; the splitting rule is
    SeedSequence(master_seed, spawn_key=(pulse_index,)), so pulses are
    independent and reproducible regardless of evaluation order."""
    return np.random.default_rng(
        np.random.SeedSequence(master_seed, spawn_key=(pulse_index,))
    )


def synthesize_raw(
    spec: WaveformSpec,
    geom: Geometry,
    scene: Scene,
    alloc: PowerAllocation,
    sigma2: float,
    seed: int,
) -> RawDataCube:
    """Full slow-time loop: fresh communication symbols every pulse.

    Each pulse sums the weighting coefficients of all scene columns at its
    slow time, passes them through that pulse's waveform, and adds noise.
    """
    if scene.n_range_cells != spec.n_subcarriers:
        raise DimensionError("scene range cells must equal N (SWMP)")
    etas = geom.slow_time()
    data = np.empty((spec.n_subcarriers, etas.size), dtype=complex)
    symbols = []
    for p, eta in enumerate(etas):
        rng = pulse_rng(seed, p)
        syms = draw_symbols(spec, alloc, rng)
        d = scene_coefficients(geom, scene, float(eta))
        data[:, p] = synthesize_pulse(syms, PulseCoefficients(d), sigma2, rng)
        symbols.append(syms)
    return RawDataCube(data, symbols, sigma2, seed)

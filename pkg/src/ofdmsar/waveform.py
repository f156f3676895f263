"""OFDM symbol and pulse construction under a single unitary FFT convention.

The body of a pulse is the unitary inverse DFT of the subcarrier symbols
(1/sqrt(N) both ways), so Parseval holds exactly and the unitary DFT of the
body recovers the symbols.  The linear echo model used downstream is the
symbol-eigenvalue circulant ``C = F^H diag(S_k) F`` (unitary F), whose action
is ``ifft(S * fft(d))`` with numpy's unnormalized transforms.  Relative to the
raw circulant built from the pulse body (eigenvalues ``sqrt(N) * S_k``) this
carries a 1/sqrt(N) normalization; it is chosen so the LS error closed forms
``sigma^2 * sum 1/|S_k|^2`` hold with no stray dimension factors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import circulant

from .allocation import PowerAllocation, TruncationPolicy
from .errors import DimensionError, UnsupportedModeError

__all__ = [
    "Signaling",
    "WaveformSpec",
    "SymbolVector",
    "TimeDomainPulse",
    "draw_symbols",
    "draw_symbols_truncated",
    "modulate",
    "circulant_from_pulse",
    "unitary_dft",
    "unitary_idft",
]


class Signaling(enum.Enum):
    CONSTANT_MODULUS = "constant-modulus"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class WaveformSpec:
    """OFDM numerology in swath-width-matched-pulse (SWMP) mode.

    SWMP ties the number of range cells to the subcarrier count, so the
    cyclic prefix is N-1 samples.  ``power_budget`` defaults to N
    (unit average power per subcarrier).
    """

    n_subcarriers: int
    subcarrier_spacing: float
    power_budget: float | None = None
    signaling: Signaling = Signaling.CONSTANT_MODULUS

    def __post_init__(self):
        if self.n_subcarriers < 1:
            raise ValueError("n_subcarriers must be >= 1")
        if self.subcarrier_spacing <= 0:
            raise ValueError("subcarrier_spacing must be positive")
        if self.power_budget is None:
            object.__setattr__(self, "power_budget", float(self.n_subcarriers))
        if self.power_budget <= 0:
            raise ValueError("power_budget must be positive")

    @property
    def bandwidth(self) -> float:
        return self.n_subcarriers * self.subcarrier_spacing

    @property
    def symbol_duration(self) -> float:
        return 1.0 / self.subcarrier_spacing

    @property
    def cp_len(self) -> int:
        # SWMP: n_range_cells == N, CP covers M - 1 samples.
        return self.n_subcarriers - 1

    @property
    def cp_duration(self) -> float:
        return self.cp_len / self.bandwidth

    @property
    def sample_interval(self) -> float:
        return 1.0 / self.bandwidth


@dataclass(frozen=True)
class SymbolVector:
    """Symbols modulated on the N subcarriers, plus the allocation behind them."""

    symbols: np.ndarray
    allocation: PowerAllocation

    def __post_init__(self):
        symbols = np.asarray(self.symbols, dtype=complex)
        object.__setattr__(self, "symbols", symbols)
        if symbols.ndim != 1 or symbols.size != len(self.allocation):
            raise DimensionError("symbol vector length must match allocation")

    def __len__(self) -> int:
        return self.symbols.size


@dataclass(frozen=True)
class TimeDomainPulse:
    """Cyclic-prefixed discrete-time pulse: CP followed by the N-sample body."""

    samples: np.ndarray
    sample_interval: float
    n_subcarriers: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if samples.size <= self.n_subcarriers - 1:
            raise DimensionError("pulse shorter than its cyclic prefix")

    @property
    def cp_len(self) -> int:
        return self.samples.size - self.n_subcarriers

    @property
    def body(self) -> np.ndarray:
        return self.samples[self.cp_len :]


def unitary_dft(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    return np.fft.fft(x, axis=-1) / np.sqrt(x.shape[-1])


def unitary_idft(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    return np.fft.ifft(x, axis=-1) * np.sqrt(x.shape[-1])


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def draw_symbols(spec: WaveformSpec, alloc: PowerAllocation, seed) -> SymbolVector:
    """Draw one OFDM symbol vector for the spec's signaling mode.

    Constant-modulus mode fixes |S_k|^2 = P_k exactly with i.i.d. uniform
    random phases (seeded); Gaussian mode draws circularly symmetric complex
    normals with E|S_k|^2 = P_k.  Zero-power subcarriers produce zero symbols.
    """
    if len(alloc) != spec.n_subcarriers:
        raise DimensionError(
            f"allocation length {len(alloc)} != N = {spec.n_subcarriers}"
        )
    rng = _as_rng(seed)
    n = spec.n_subcarriers
    if spec.signaling is Signaling.CONSTANT_MODULUS:
        phases = rng.uniform(0.0, 2.0 * np.pi, n)
        symbols = np.sqrt(alloc.powers) * np.exp(1j * phases)
    else:
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        symbols = np.sqrt(alloc.powers / 2.0) * z
    return SymbolVector(symbols, alloc)


def draw_symbols_truncated(
    spec: WaveformSpec,
    alloc: PowerAllocation,
    policy: TruncationPolicy,
    seed,
) -> SymbolVector:
    """Magnitude-truncated random symbols for expected-MSE Monte Carlo runs.

    Magnitudes follow a Rayleigh law with scale sqrt(P_k), conditioned above
    its ``tail_prob`` quantile (inverse-CDF sampling), with uniform phases.
    Under this normalization E[1/|S_k|^2] = A / ((1 - q) P_k), matching the
    truncated constant A to within the q-sized correction; note the magnitude
    law here has E|S_k|^2 = 2 P_k, the normalization under which A is defined.
    """
    if len(alloc) != spec.n_subcarriers:
        raise DimensionError(
            f"allocation length {len(alloc)} != N = {spec.n_subcarriers}"
        )
    rng = _as_rng(seed)
    n = spec.n_subcarriers
    q = policy.tail_prob
    u = q + (1.0 - q) * rng.uniform(0.0, 1.0, n)
    mags = np.sqrt(alloc.powers) * np.sqrt(-2.0 * np.log1p(-u))
    phases = rng.uniform(0.0, 2.0 * np.pi, n)
    return SymbolVector(mags * np.exp(1j * phases), alloc)


def modulate(sym: SymbolVector, spec: WaveformSpec) -> TimeDomainPulse:
    """Unitary IFFT of the symbols with the cyclic prefix prepended."""
    if len(sym) != spec.n_subcarriers:
        raise DimensionError(f"symbol length {len(sym)} != N = {spec.n_subcarriers}")
    body = unitary_idft(sym.symbols)
    cp = body[body.size - spec.cp_len :] if spec.cp_len else body[:0]
    return TimeDomainPulse(
        np.concatenate([cp, body]), spec.sample_interval, spec.n_subcarriers
    )


def circulant_from_pulse(pulse: TimeDomainPulse, spec: WaveformSpec) -> np.ndarray:
    """Explicit circulant with the pulse body as first column (test oracle).

    Column j is the body cyclically shifted down by j.  Its eigenvalues are
    the unnormalized DFT of the body, i.e. sqrt(N) times the modulated
    symbols; the 1/sqrt(N)-normalized echo model matrix is this divided by
    sqrt(N).
    """
    if spec.cp_len != spec.n_subcarriers - 1:
        raise UnsupportedModeError("circulant model requires SWMP (M == N)")
    if pulse.body.size != spec.n_subcarriers:
        raise DimensionError("pulse body length != N")
    return circulant(pulse.body)

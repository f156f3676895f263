"""Flat key=value experiment configuration with strict key checking.

Defaults reproduce the reference airborne scenario: 1 km altitude, sqrt(2) km
slant range, 40 m/s platform, 1 s aperture, 1.5 GHz bandwidth over 64
subcarriers at 9 GHz carrier, 800 Hz PRF.  Unknown keys are errors so typos
cannot silently fall back to defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .allocation import ChannelGains, TruncationPolicy
from .errors import ConfigError
from .geometry import Geometry
from .waveform import Signaling, WaveformSpec

__all__ = ["Config", "parse_config", "load_config", "DEFAULT_CONFIG_TEXT"]


@dataclass
class Config:
    n_subcarriers: int = 64
    bandwidth: float = 1.5e9
    power_budget: float = 64.0
    signaling: str = "constant-modulus"
    altitude: float = 1000.0
    slant_range_center: float = math.sqrt(2.0) * 1000.0
    velocity: float = 40.0
    carrier_freq: float = 9.0e9
    prf: float = 800.0
    aperture_time: float = 1.0
    snr_db: float = 15.0
    tail_prob: float = 1e-3
    channel: str = "flat"  # "flat" or "multipath"
    channel_taps: int = 4
    channel_seed: int = 0
    scene: str = "point"  # "point", "car", or a scene-file path
    scene_azimuth: int = 64
    trials: int = 1000
    snr_grid: str = "0,10,20,30"
    tradeoff_points: int = 16

    def waveform_spec(self) -> WaveformSpec:
        try:
            signaling = Signaling(self.signaling)
        except ValueError:
            raise ConfigError(f"unknown signaling mode {self.signaling!r}") from None
        return WaveformSpec(
            n_subcarriers=self.n_subcarriers,
            subcarrier_spacing=self.bandwidth / self.n_subcarriers,
            power_budget=self.power_budget,
            signaling=signaling,
        )

    def geometry(self) -> Geometry:
        return Geometry(
            altitude=self.altitude,
            slant_range_center=self.slant_range_center,
            velocity=self.velocity,
            carrier_freq=self.carrier_freq,
            prf=self.prf,
            aperture_time=self.aperture_time,
        )

    def truncation_policy(self) -> TruncationPolicy:
        return TruncationPolicy(self.tail_prob)

    def channel_gains(self) -> ChannelGains:
        """Squared channel gains at unit noise power.

        "flat" is all-ones; "multipath" draws ``channel_taps`` i.i.d. complex
        Gaussian taps (seeded by ``channel_seed``) and takes the squared DFT
        magnitude, normalized to unit mean, giving a frequency-selective
        profile.
        """
        n = self.n_subcarriers
        if self.channel == "flat":
            return ChannelGains(np.ones(n))
        if self.channel == "multipath":
            rng = np.random.default_rng(self.channel_seed)
            taps = (
                rng.standard_normal(self.channel_taps)
                + 1j * rng.standard_normal(self.channel_taps)
            ) / np.sqrt(2.0 * self.channel_taps)
            profile = np.abs(np.fft.fft(taps, n)) ** 2
            return ChannelGains(profile / profile.mean())
        raise ConfigError(f"unknown channel model {self.channel!r}")

    def noise_power(self, snr_db: float | None = None) -> float:
        """Radar noise power for the per-sample SNR = (P/N)/sigma^2 convention."""
        snr = self.snr_db if snr_db is None else snr_db
        return (self.power_budget / self.n_subcarriers) / 10.0 ** (snr / 10.0)

    def snr_grid_values(self) -> list[float]:
        try:
            return [float(tok) for tok in self.snr_grid.split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"malformed snr_grid {self.snr_grid!r}") from None

    def items(self):
        for f in fields(self):
            yield f.name, getattr(self, f.name)


_FIELD_TYPES = {f.name: f.type for f in fields(Config)}


def _coerce(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        return raw
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


def parse_config(text: str) -> Config:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    cfg = Config()
    if "n_subcarriers" in values:
        # power_budget and scene_azimuth track N unless set explicitly.
        cfg.n_subcarriers = values["n_subcarriers"]
        cfg.power_budget = float(cfg.n_subcarriers)
        cfg.scene_azimuth = cfg.n_subcarriers
    for key, value in values.items():
        setattr(cfg, key, value)
    return cfg


def load_config(path=None) -> Config:
    if path is None:
        return Config()
    return parse_config(Path(path).read_text())


DEFAULT_CONFIG_TEXT = "\n".join(
    f"{name} = {value}" for name, value in Config().items()
) + "\n"

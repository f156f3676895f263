"""OFDM SAR simulator and joint imaging/communication waveform design."""

from .allocation import (
    ChannelGains,
    PowerAllocation,
    TruncationPolicy,
    achievable_rate,
    compute_A,
    emse_of_alloc,
    emse_rate_constrained,
    imaging_optimal,
    mse_of_symbols,
    tradeoff_sweep,
    water_filling,
)
from .azimuth import SarImage, azimuth_compress, azimuth_reference, rcmc_bulk
from .echo import (
    RawDataCube,
    synthesize_pulse,
    synthesize_pulse_linear_cp,
    synthesize_raw,
)
from .geometry import (
    SPEED_OF_LIGHT,
    Geometry,
    PulseCoefficients,
    Scene,
    load_scene,
    save_scene,
    slant_range,
    weighting_coefficients,
)
from .metrics import mse_vs_snr, sidelobe_stats
from .rangeproc import ls_estimate, range_profile_cube
from .waveform import (
    Signaling,
    SymbolVector,
    TimeDomainPulse,
    WaveformSpec,
    circulant_from_pulse,
    draw_symbols,
    draw_symbols_truncated,
    modulate,
)

__version__ = "0.1.0"

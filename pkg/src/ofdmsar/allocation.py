"""Per-subcarrier power allocation and waveform-design optimization.

Covers the three allocation regimes (imaging-optimal uniform, rate-maximizing
water-filling, and the rate-constrained expected-MSE minimizer), plus the
evaluators they trade against: achievable rate, LS-estimator MSE for a fixed
symbol draw, and expected MSE (EMSE) under random Gaussian signaling.

Conventions used throughout:

* Channel gains are ``|h_k|^2 / sigma_n^2`` (dimensionless, per unit power).
* Rate is in bits per channel use per OFDM symbol, i.e. ``sum log2(1 + P_k g_k)``
  without any bandwidth prefactor.  The bandwidth scale is a constant and does
  not change any optimizer; callers that want throughput multiply by B.
* The EMSE constant ``A`` comes from the lower-truncated integral of
  ``exp(-t^2)/t``; the raw integral diverges at zero, so the lower limit is the
  q-quantile of the unit Rayleigh magnitude (default q = 1e-3, i.e. keep the
  top 99.9% of the magnitude distribution).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import exp1

from .errors import (
    DimensionError,
    InfeasibleChannelError,
    InfeasibleRateError,
    SingularAllocationError,
    SingularWaveformError,
)

__all__ = [
    "PowerAllocation",
    "ChannelGains",
    "TruncationPolicy",
    "imaging_optimal",
    "water_filling",
    "achievable_rate",
    "compute_A",
    "mse_of_symbols",
    "emse_of_alloc",
    "emse_rate_constrained",
    "tradeoff_sweep",
    "TradeoffPoint",
]


@dataclass(frozen=True)
class PowerAllocation:
    """Nonnegative per-subcarrier powers summing to a fixed budget."""

    powers: np.ndarray
    total: float

    def __post_init__(self):
        powers = np.asarray(self.powers, dtype=float)
        object.__setattr__(self, "powers", powers)
        if powers.ndim != 1:
            raise DimensionError("powers must be a 1-D vector")
        if np.any(powers < 0):
            raise ValueError("powers must be nonnegative")
        if self.total <= 0:
            raise ValueError("total power budget must be positive")
        if abs(powers.sum() - self.total) > 1e-9 * self.total:
            raise ValueError(
                f"sum of powers {powers.sum():.12g} != budget {self.total:.12g}"
            )

    def __len__(self) -> int:
        return self.powers.size

    @classmethod
    def uniform(cls, n: int, total: float) -> "PowerAllocation":
        return cls(np.full(n, total / n), total)


@dataclass(frozen=True)
class ChannelGains:
    """Squared channel gains divided by communication noise power."""

    gains: np.ndarray
    comm_noise_power: float = 1.0

    def __post_init__(self):
        gains = np.asarray(self.gains, dtype=float)
        object.__setattr__(self, "gains", gains)
        if gains.ndim != 1:
            raise DimensionError("gains must be a 1-D vector")
        if np.any(gains < 0) or not np.all(np.isfinite(gains)):
            raise ValueError("gains must be finite and nonnegative")
        if self.comm_noise_power <= 0:
            raise ValueError("comm_noise_power must be positive")

    def __len__(self) -> int:
        return self.gains.size

    def rescaled(self, noise_power: float) -> "ChannelGains":
        """Gains re-expressed at a different noise power (same |h_k|^2)."""
        factor = self.comm_noise_power / noise_power
        return ChannelGains(self.gains * factor, noise_power)


@dataclass(frozen=True)
class TruncationPolicy:
    """Lower-tail truncation for the diverging 1/|S|^2 expectation.

    ``tail_prob`` is the probability mass removed at the low-magnitude end;
    ``A`` is the resulting truncated integral constant, computed on demand.
    """

    tail_prob: float = 1e-3

    def __post_init__(self):
        if not 0.0 < self.tail_prob < 1.0:
            raise ValueError("tail_prob must lie in (0, 1)")

    @property
    def A(self) -> float:
        return compute_A(self)


def compute_A(policy: TruncationPolicy) -> float:
    """Truncated integral of exp(-t^2)/t above the Rayleigh q-quantile.

    The lower limit is ``t_low = sqrt(-ln(1 - q))``, the q-quantile of the
    unit Rayleigh magnitude.  Substituting u = t^2 gives the closed form
    ``A = E1(t_low^2) / 2`` with E1 the exponential integral; the quadrature
    route is cross-checked against this in the test suite.
    """
    q = policy.tail_prob
    t_low_sq = -np.log1p(-q)
    return 0.5 * float(exp1(t_low_sq))


def imaging_optimal(n: int, total: float) -> PowerAllocation:
    """Uniform allocation; minimizes sum(1/P_k) on the simplex (AM-HM)."""
    if n < 1:
        raise ValueError("need at least one subcarrier")
    return PowerAllocation.uniform(n, total)


def water_filling(ch: ChannelGains, total: float, tol: float = 1e-10) -> PowerAllocation:
    """Rate-maximizing allocation P_k = (w - 1/g_k)+ via monotone bisection.

    The water level w is bisected until the power budget is met to
    ``tol * total``.  Zero-gain subcarriers stay dry.
    """
    g = ch.gains
    if not np.any(g > 0):
        raise InfeasibleChannelError("all channel gains are zero")
    inv = np.where(g > 0, 1.0 / np.where(g > 0, g, 1.0), np.inf)

    def powers_at(level: float) -> np.ndarray:
        return np.where(g > 0, np.maximum(level - inv, 0.0), 0.0)

    lo = 0.0
    hi = float(inv[np.isfinite(inv)].min()) + total  # guarantees sum >= total
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if powers_at(mid).sum() > total:
            hi = mid
        else:
            lo = mid
        if hi - lo < tol * total / max(len(g), 1):
            break
    level = 0.5 * (lo + hi)
    powers = powers_at(level)
    s = powers.sum()
    if s > 0:
        # Snap residual bisection error onto the active set.
        active = powers > 0
        powers[active] += (total - s) / active.sum()
        powers = np.maximum(powers, 0.0)
    return PowerAllocation(powers * (total / powers.sum()), total)


def achievable_rate(alloc: PowerAllocation, ch: ChannelGains) -> float:
    """Gaussian-signaling rate sum log2(1 + P_k g_k), bits per channel use."""
    if len(alloc) != len(ch):
        raise DimensionError(
            f"allocation length {len(alloc)} != channel length {len(ch)}"
        )
    return float(np.sum(np.log2(1.0 + alloc.powers * ch.gains)))


def mse_of_symbols(symbols, sigma2: float) -> float:
    """LS-estimator MSE for a fixed symbol draw: sigma^2 * sum 1/|S_k|^2.

    Accepts a SymbolVector or a plain complex array.  Equals
    sigma^2 * tr[(S^H S)^-1] for the symbol-eigenvalue circulant model.
    """
    s = np.asarray(getattr(symbols, "symbols", symbols))
    mags = np.abs(s) ** 2
    if np.any(mags == 0.0):
        raise SingularWaveformError(
            f"zero-power subcarrier(s) at {np.flatnonzero(mags == 0).tolist()}"
        )
    return float(sigma2 * np.sum(1.0 / mags))


def emse_of_alloc(
    alloc: PowerAllocation, sigma2: float, policy: TruncationPolicy
) -> float:
    """Expected MSE under random signaling: A * sigma^2 * sum 1/P_k."""
    if np.any(alloc.powers == 0.0):
        raise SingularAllocationError(
            f"zero-power subcarrier(s) at {np.flatnonzero(alloc.powers == 0).tolist()}"
        )
    return float(policy.A * sigma2 * np.sum(1.0 / alloc.powers))


# ---------------------------------------------------------------------------
# Rate-constrained EMSE minimization (nested monotone bisection on the KKT
# system).  Stationarity for subcarrier k:
#
#     A / P_k^2 + lam * g_k / (1 + g_k P_k) = mu
#
# with lam >= 0 the rate multiplier and mu the power multiplier.  The left
# side is strictly decreasing in P_k, so each level has a unique positive
# root; sum P_k(mu) is strictly decreasing in mu; the achieved rate is
# nondecreasing in lam.
# ---------------------------------------------------------------------------


def _stationarity_roots(mu: float, lam: float, g: np.ndarray, a: float) -> np.ndarray:
    # Upper bracket from A/P^2 + lam/P = mu (an upper bound on the residual).
    hi = (lam + np.sqrt(lam * lam + 4.0 * a * mu)) / (2.0 * mu)
    hi = np.full_like(g, 2.0 * hi)
    lo = np.full_like(g, 0.25 * np.sqrt(a / mu))
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        resid = a / mid**2 + lam * g / (1.0 + g * mid)
        too_big = resid > mu  # residual above mu means root is to the right
        lo = np.where(too_big, mid, lo)
        hi = np.where(too_big, hi, mid)
    return 0.5 * (lo + hi)


def _powers_for_lambda(
    lam: float, g: np.ndarray, total: float, a: float, tol: float
) -> np.ndarray:
    n = g.size
    # Uniform-point multiplier as the starting scale for mu.
    mu = a * (n / total) ** 2 + lam * np.max(g) if lam > 0 else a * (n / total) ** 2
    mu_lo, mu_hi = mu, mu
    while _stationarity_roots(mu_lo, lam, g, a).sum() < total:
        mu_lo /= 4.0
    while _stationarity_roots(mu_hi, lam, g, a).sum() > total:
        mu_hi *= 4.0
    for _ in range(200):
        mu = np.sqrt(mu_lo * mu_hi)
        p = _stationarity_roots(mu, lam, g, a)
        if p.sum() > total:
            mu_lo = mu
        else:
            mu_hi = mu
        if abs(p.sum() - total) < tol * total:
            break
    p = _stationarity_roots(np.sqrt(mu_lo * mu_hi), lam, g, a)
    return p * (total / p.sum())


def kkt_residual(
    alloc: PowerAllocation, ch: ChannelGains, lam: float, a: float
) -> float:
    """Max deviation of the stationarity levels from their common value."""
    levels = a / alloc.powers**2 + lam * ch.gains / (1.0 + ch.gains * alloc.powers)
    return float(np.max(levels) - np.min(levels))


def emse_rate_constrained(
    ch: ChannelGains,
    total: float,
    rate_floor: float,
    sigma2: float = 1.0,
    policy: TruncationPolicy = TruncationPolicy(),
    tol: float = 1e-8,
) -> PowerAllocation:
    """Minimize A*sigma^2*sum(1/P_k) subject to the budget and rate floor.

    Solved by nested monotone bisection on the KKT system (no general-purpose
    solver).  The optimizer is invariant to the values of A and sigma^2; they
    only scale the objective.  Endpoints: rate_floor <= uniform rate returns
    the uniform allocation (lam = 0, slack rate constraint); rate_floor at
    capacity returns the water-filling closed form, where the feasible set
    collapses to a single point.
    """
    g = ch.gains
    n = g.size
    a = policy.A
    wf = water_filling(ch, total)
    capacity = achievable_rate(wf, ch)
    rate_tol = tol * max(1.0, capacity)
    if rate_floor > capacity + rate_tol:
        raise InfeasibleRateError(rate_floor, capacity)
    if rate_floor >= capacity - rate_tol:
        return wf

    uniform = PowerAllocation.uniform(n, total)
    if achievable_rate(uniform, ch) >= rate_floor - tol * max(1.0, rate_floor):
        return uniform

    def rate_at(lam: float) -> float:
        p = _powers_for_lambda(lam, g, total, a, tol=1e-12)
        return float(np.sum(np.log2(1.0 + p * g)))

    lam_lo, lam_hi = 0.0, a * (n / total) ** 2
    while rate_at(lam_hi) < rate_floor:
        lam_hi *= 4.0
    for _ in range(200):
        lam = 0.5 * (lam_lo + lam_hi)
        r = rate_at(lam)
        if r < rate_floor:
            lam_lo = lam
        else:
            lam_hi = lam
        if abs(r - rate_floor) < tol * max(1.0, rate_floor):
            break
    lam = 0.5 * (lam_lo + lam_hi)
    p = _powers_for_lambda(lam, g, total, a, tol=1e-12)
    return PowerAllocation(p, total)


@dataclass(frozen=True)
class TradeoffPoint:
    rate_floor: float
    rate_achieved: float
    emse: float
    allocation: PowerAllocation


def tradeoff_sweep(
    ch: ChannelGains,
    total: float,
    sigma2: float,
    policy: TruncationPolicy,
    n_points: int,
) -> list[TradeoffPoint]:
    """EMSE-vs-rate curve on a rate grid from 0 to water-filling capacity.

    The EMSE is nondecreasing along the grid; the endpoints are the two
    closed-form solutions (uniform and water-filling).  Dry subcarriers at
    the capacity endpoint yield an infinite EMSE.
    """
    if n_points < 2:
        raise ValueError("need at least two grid points")
    capacity = achievable_rate(water_filling(ch, total), ch)
    a = policy.A
    points = []
    for r0 in np.linspace(0.0, capacity, n_points):
        alloc = emse_rate_constrained(ch, total, float(r0), sigma2, policy)
        with np.errstate(divide="ignore"):
            emse = float(a * sigma2 * np.sum(1.0 / alloc.powers))
        points.append(
            TradeoffPoint(float(r0), achievable_rate(alloc, ch), emse, alloc)
        )
    return points

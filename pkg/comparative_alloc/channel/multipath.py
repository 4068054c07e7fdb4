"""
Tapped-delay-line channel model with an exponential power-delay profile.

Frequency response of user u at subcarrier offset f_i:

    H(f_i) = sum_l a_l * exp(-j * 2*pi * f_i * tau_l)

Scattered taps a_l are circular complex Gaussian with variance P_l / (K + 1), P_l the normalized
exponential profile. With Rician factor K > 0 the first tap also carries a deterministic line-of-sight
component of power K / (K + 1), so the expected total path power is always 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.response import FrequencyResponse
from comparative_alloc.utils.typing import UserId
from comparative_alloc.utils.utils import log, make_rng, user_hash

# default tap placement, in units of delay_spread
PROFILE_SPAN = 5.0
MAX_TAP_SPACING = 0.75


def default_max_delay(tap_count: int, delay_spread: float) -> float:
    """
    Taps cover PROFILE_SPAN decay constants of the profile, but adjacent taps are never further apart than
    MAX_TAP_SPACING decay constants. With few taps the profile is truncated rather than sampled coarsely.
    """
    if tap_count <= 1:
        return PROFILE_SPAN * delay_spread
    return delay_spread * min(PROFILE_SPAN, MAX_TAP_SPACING * (tap_count - 1))


@dataclass(frozen=True)
class MultipathModel:
    tap_count: int = 8
    delay_spread: float = 100e-9  # s, decay constant of the exponential profile
    max_delay: Optional[float] = None  # s, derived from tap_count and delay_spread when not given
    rician_k: float = 5.0  # linear, 0 is pure Rayleigh, inf is a pure line-of-sight channel

    def __post_init__(self):
        if int(self.tap_count) != self.tap_count or self.tap_count <= 0:
            raise ValueError(f"tap_count must be a positive integer, got {self.tap_count}")
        if not self.delay_spread > 0:
            raise ValueError(f"delay_spread must be positive, got {self.delay_spread}")
        if self.max_delay is None:
            object.__setattr__(self, "max_delay", default_max_delay(self.tap_count, self.delay_spread))
        if not self.max_delay > 0:
            raise ValueError(f"max_delay must be positive, got {self.max_delay}")
        if not self.rician_k >= 0:
            raise ValueError(f"rician_k must be non-negative, got {self.rician_k}")

    def tap_delays(self) -> np.ndarray:
        if self.tap_count == 1:
            return np.zeros(1)
        return np.linspace(0.0, self.max_delay, self.tap_count)

    def tap_powers(self) -> np.ndarray:
        """Exponential power-delay profile, normalized to unit total power."""
        powers = np.exp(-self.tap_delays() / self.delay_spread)
        return powers / powers.sum()

    def los_fraction(self) -> float:
        if math.isinf(self.rician_k):
            return 1.0
        return self.rician_k / (self.rician_k + 1.0)

    def coherence_bandwidth(self) -> float:
        """Rule-of-thumb 1 / (2*pi*delay_spread), in Hz."""
        return 1.0 / (2.0 * math.pi * self.delay_spread)


def draw_taps(model: MultipathModel, rng: np.random.Generator) -> np.ndarray:
    powers = model.tap_powers()
    los = model.los_fraction()

    scattered_std = np.sqrt(powers * (1.0 - los) / 2.0)
    taps = scattered_std * (rng.standard_normal(model.tap_count) + 1j * rng.standard_normal(model.tap_count))
    taps[0] += math.sqrt(los)
    return taps


def generate_multipath_channel(
    grid: ResourceGrid, model: MultipathModel, seed: int, user_id: UserId
) -> FrequencyResponse:
    """
    Synthetic frequency-selective response of one user.
    Deterministic in (seed, user_id, grid, model): the generator is keyed by the seed and a stable hash of the user id,
    so different users drawn from the same seed see independent channels.
    """
    rng = make_rng(seed, user_hash(user_id))
    taps = draw_taps(model, rng)

    phases = np.outer(grid.baseband_offsets(), model.tap_delays())
    gains = np.exp(-2j * np.pi * phases) @ taps

    log.debug(
        "Generated channel for user %s: %d taps, seed %d, mean |h|^2 %.3f",
        user_id,
        model.tap_count,
        seed,
        float(np.mean(np.abs(gains) ** 2)),
    )
    return FrequencyResponse(user_id, gains, grid)

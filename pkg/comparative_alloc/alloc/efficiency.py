from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from comparative_alloc.utils.typing import ArrayLike, UserId


@dataclass(frozen=True, eq=False)
class SpectralEfficiencyVector:
    """Shannon spectral efficiency eta_{u,i} per block, bit/s/Hz with the default base."""

    user_id: Optional[UserId]
    eta: np.ndarray

    def __post_init__(self):
        eta = np.array(self.eta, dtype=np.float64).reshape(-1)
        if np.any(eta < 0) or not np.all(np.isfinite(eta)):
            raise ValueError(f"User {self.user_id}: spectral efficiencies must be finite and non-negative")
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)

    def __len__(self):
        return len(self.eta)


def spectral_efficiency(
    gamma: ArrayLike, user_id: Optional[UserId] = None, base: float = 2.0
) -> SpectralEfficiencyVector:
    """eta_i = log_base(1 + gamma_i). Ratio rankings do not depend on the base."""
    gamma = np.asarray(gamma, dtype=np.float64)
    if np.any(gamma < 0):
        raise ValueError(f"User {user_id}: SNR must be non-negative, got min {gamma.min()}")

    if base == 2.0:
        eta = np.log2(1.0 + gamma)
    elif base == math.e:
        eta = np.log1p(gamma)
    else:
        eta = np.log1p(gamma) / math.log(base)

    return SpectralEfficiencyVector(user_id, eta)

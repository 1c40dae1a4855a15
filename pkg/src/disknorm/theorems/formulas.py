"""Closed forms for the extremal family with dilatation (t - z)/(1 - tz).

Along the positive real axis the weighted pre-Schwarzian of that family is

    E(r) = 1 + r + ((1 + t)(1 - r^2) - (r - t)) / (1 - t r),

maximised on [0, 1) at r0 = (1 - sqrt(1 - t^2))/t with maximum N_t, which
increases to 7 as t -> 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from disknorm.errors import DomainError


def _check_t(t):
    if not 0 < t < 1:
        raise DomainError(f"t must lie in (0, 1), got {t!r}")


def extremal_radius(t):
    _check_t(t)
    # (1 - sqrt(1 - t^2))/t rewritten to avoid cancellation for small t
    return t / (1 + math.sqrt(1 - t * t))


def profile_E(r, t):
    _check_t(t)
    if not 0 <= r < 1:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    return 1 + r + ((1 + t) * (1 - r * r) - (r - t)) / (1 - t * r)


def n_t(t):
    _check_t(t)
    # (2 - 2s + t(4 + t - 4s))/t^2 with s = sqrt(1 - t^2); using
    # 1 - s = t^2/(1 + s) it equals 1 + (2 + 4t)/(1 + s) without cancellation
    s = math.sqrt(1 - t * t)
    return 1 + (2 + 4 * t) / (1 + s)


@dataclass(frozen=True)
class SharpnessFamily:
    t: float
    r0: float
    Nt: float

    @classmethod
    def at(cls, t):
        return cls(t, extremal_radius(t), n_t(t))


def brute_force_max_E(t, n=1_000_000):
    """max of profile_E(., t) over n equispaced radii in [0, 1)."""
    _check_t(t)
    r = np.arange(n) / n
    return float(np.max(1 + r + ((1 + t) * (1 - r * r) - (r - t)) / (1 - t * r)))

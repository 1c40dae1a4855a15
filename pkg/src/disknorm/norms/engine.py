"""Weighted suprema over the unit disk by polar sampling plus local search.

The scan visits rings r_k = 1 - 2^(-k/2) (radius-major, angle-minor) and
keeps a running maximum per ring; the best sample is then polished by
alternating golden-section searches in theta and r. Every reported value is
an attained sample, so it is a lower bound for the true supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from disknorm.errors import NoFiniteSamples

KINDS = (
    "preschwarzian_analytic",
    "preschwarzian_logharmonic",
    "preschwarzian_harmonic",
    "schwarzian_analytic",
    "schwarzian_harmonic",
    "bloch_analytic",
    "bloch_logharmonic",
    "hyperbolic_sup",
    "custom",
)

SKIP_FRACTION = 0.01
_INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class SupConfig:
    radial_levels: int = 24
    r_max: float = 1 - 1e-8
    angular_base: int = 128
    refine_iters: int = 60
    abs_tol: float = 1e-4
    refine_rounds: int = 12

    def __post_init__(self):
        if not 0 < self.r_max < 1:
            raise ValueError("r_max must lie in (0, 1)")
        for name in ("radial_levels", "angular_base"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.refine_iters < 0 or self.refine_rounds < 0:
            raise ValueError("refinement counts must be non-negative")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")

    def rings(self):
        """(radius, number of angles) for every ring of the scan.

        The first ``radial_levels`` rings follow the ladder with the angular
        count doubling every four rings. The ladder is then continued at the
        finest angular count until it passes r_max, and a last ring sits at
        r_max itself, so boundary-limit suprema are approached to O(1 - r_max).
        """
        out = []
        top = self.angular_base * 2 ** ((self.radial_levels - 1) // 4)
        k = 0
        while True:
            r = 1 - 2.0 ** (-k / 2)
            if r >= self.r_max:
                break
            if k < self.radial_levels:
                n = 1 if k == 0 else self.angular_base * 2 ** (k // 4)
            else:
                n = top
            out.append((r, n))
            k += 1
        out.append((self.r_max, 1 if not out else top))
        return out

    def to_json(self):
        return {
            "radial_levels": self.radial_levels,
            "r_max": self.r_max,
            "angular_base": self.angular_base,
            "refine_iters": self.refine_iters,
            "abs_tol": self.abs_tol,
        }


@dataclass(frozen=True)
class NormEstimate:
    value: float
    location: tuple
    trace: tuple
    converged: bool
    kind: str = "custom"
    skipped: int = 0
    samples: int = 0
    excluded: int = 0

    @property
    def r(self):
        return self.location[0]

    @property
    def theta(self):
        return self.location[1]

    @property
    def point(self):
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))

    def to_json(self):
        return {
            "value": self.value,
            "r": self.r,
            "theta": self.theta,
            "converged": self.converged,
            "levels": list(self.trace),
            "skipped": self.skipped,
            "excluded": self.excluded,
        }


def polar_points(r, n):
    theta = 2 * np.pi * np.arange(n) / n
    return theta, r * np.exp(1j * theta)


def _weighted(objective, weight_power):
    def f(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            v = np.asarray(objective(z), dtype=float)
            if weight_power:
                v = v * (1 - np.abs(z) ** 2) ** weight_power
        v = np.broadcast_to(v, z.shape).copy()
        v[np.isposinf(v)] = np.nan
        return v

    return f


def _golden(f, a, b, iters):
    """Maximise a scalar function on [a, b]; returns the best (x, f(x)) seen."""
    best = (a, -np.inf)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for x, v in ((c, fc), (d, fd)):
        if v > best[1]:
            best = (x, v)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
            if fc > best[1]:
                best = (c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
            if fd > best[1]:
                best = (d, fd)
    return best


def _refine(at, rings, ring, t, v, cfg):
    """Alternate golden-section in theta (one grid step either side) and in
    r (from the previous ring out to r_max) starting at a grid sample."""
    r, n = rings[ring]
    dt = 2 * np.pi / n if n > 1 else np.pi
    r_lo = rings[ring - 1][0] if ring > 0 else 0.0
    r_hi = rings[-1][0]
    if not cfg.refine_iters:
        return v, r, t
    for _ in range(cfg.refine_rounds):
        old = v
        if r > 0:
            t1, v1 = _golden(lambda s: at(r, s), t - dt, t + dt, cfg.refine_iters)
            if v1 > v:
                t, v = t1, v1
        r1, v1 = _golden(lambda s: at(s, t), r_lo, r_hi, cfg.refine_iters)
        # golden section never visits the bracket ends; r_hi may be the sup
        v_hi = at(r_hi, t)
        if v_hi > v1:
            r1, v1 = r_hi, v_hi
        if v1 > v:
            r, v = r1, v1
        if v <= old:
            break
    return v, r, t


def weighted_sup(objective, weight_power, cfg=None, kind="custom"):
    """Estimate sup over the disk of (1 - |z|^2)^weight_power * objective(z).

    ``objective`` takes a complex ndarray and returns a real ndarray of the
    same shape. NaN (or +inf) entries are poles: they are skipped and
    counted, and more than 1% of them marks the estimate unconverged. -inf
    entries are points the objective declares outside its numerically
    meaningful range (e.g. |omega| within rounding of 1); they are excluded
    and counted separately without affecting convergence.
    """
    if weight_power not in (0, 1, 2):
        raise ValueError("weight_power must be 0, 1 or 2")
    cfg = cfg or SupConfig()
    f = _weighted(objective, weight_power)
    rings = cfg.rings()

    thetas, pts, bounds = [], [], [0]
    for r, n in rings:
        th, z = polar_points(r, n)
        thetas.append(th)
        pts.append(z)
        bounds.append(bounds[-1] + n)
    values = f(np.concatenate(pts))
    total = values.size
    finite = np.isfinite(values)
    skipped = int(np.isnan(values).sum())
    excluded = int(np.isneginf(values).sum())
    if not finite.any():
        raise NoFiniteSamples(f"all {total} samples were singular or excluded")

    trace = []
    running = -np.inf
    for i in range(len(rings)):
        seg = values[bounds[i] : bounds[i + 1]]
        seg = seg[np.isfinite(seg)]
        if seg.size:
            running = max(running, float(seg.max()))
        trace.append(running)
    # first maximal sample in scan order
    filled = np.where(finite, values, -np.inf)
    j = int(np.argmax(filled))
    ring = int(np.searchsorted(bounds, j, side="right")) - 1
    best = (float(filled[j]), rings[ring][0], float(thetas[ring][j - bounds[ring]]))

    def at(r, t):
        v = f(np.array([r * complex(math.cos(t), math.sin(t))]))[0]
        return float(v) if np.isfinite(v) else -np.inf

    # polish the best sample; a best sample at the origin carries no
    # direction, so the best sample of the first ring is polished as well
    starts = [(ring, j)]
    if ring == 0 and len(rings) > 1:
        seg = filled[bounds[1] : bounds[2]]
        if np.isfinite(seg).any():
            starts.append((1, bounds[1] + int(np.argmax(seg))))
    for i, k in starts:
        cand = _refine(at, rings, i, float(thetas[i][k - bounds[i]]), float(filled[k]), cfg)
        if cand[0] > best[0]:
            best = cand
    best_v, best_r, best_t = best

    converged = skipped <= SKIP_FRACTION * total
    trace = [t for t in trace if t > -np.inf]
    if len(trace) > 1:
        converged = converged and trace[-1] - trace[-2] < cfg.abs_tol
    return NormEstimate(
        value=best_v,
        location=(float(best_r), float(best_t % (2 * np.pi)) if best_r > 0 else 0.0),
        trace=tuple(trace),
        converged=bool(converged),
        kind=kind,
        skipped=skipped,
        samples=total,
        excluded=excluded,
    )


def pointwise(fn):
    """Lift a scalar objective to arrays; samples where it raises become NaN."""

    def vec(z):
        out = np.empty(z.shape)
        for i, zi in enumerate(z.ravel()):
            try:
                out.flat[i] = fn(complex(zi))
            except (ArithmeticError, ValueError):
                out.flat[i] = np.nan
        return out

    return vec

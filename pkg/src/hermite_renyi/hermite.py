"""Overflow-safe Hermite functions, zone decomposition and regional asymptotics.

Values are carried as ``(log|v|, sign)`` pairs.  The orthonormal recurrence

    q_{k+1} = sqrt(2/(k+1)) x q_k - sqrt(k/(k+1)) q_{k-1},   q_0 = 1,

gives q_k = pi^(1/4) e^(x^2/2) psi_k(x); the Gaussian factor and the
normalisation constant are attached in log space at the end.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .special import airy_ai, ln_gamma

__all__ = [
    "Normalization",
    "WeightedHermiteValue",
    "Zone",
    "ZoneMap",
    "MAX_DEGREE",
    "log_hermite_norm",
    "log_abs_psi",
    "eval_weighted",
    "classify_zone",
    "eval_asymptotic",
    "asymptotic_log_envelope",
    "density",
    "hermite_zeros",
]

MAX_DEGREE = 100_000
_LOG_PI = math.log(math.pi)
_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


class Normalization(str, enum.Enum):
    ORTHOGONAL = "orthogonal"
    ORTHONORMAL = "orthonormal"


@dataclass(frozen=True)
class WeightedHermiteValue:
    """Log-magnitude/sign form of H_n(x) e^(-x^2/2) or of psi_n(x)."""

    log_magnitude: float
    sign: int
    normalization: Normalization

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if (self.sign == 0) != (self.log_magnitude == -math.inf):
            raise ValueError("sign 0 must pair with log_magnitude -inf")

    @property
    def value(self) -> float:
        """Plain float; under/overflows for extreme magnitudes."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def to(self, normalization: Normalization, n: int) -> "WeightedHermiteValue":
        normalization = Normalization(normalization)
        if normalization is self.normalization or self.sign == 0:
            return WeightedHermiteValue(self.log_magnitude, self.sign, normalization)
        half = 0.5 * log_hermite_norm(n)
        if normalization is Normalization.ORTHONORMAL:
            return WeightedHermiteValue(self.log_magnitude - half, self.sign, normalization)
        return WeightedHermiteValue(self.log_magnitude + half, self.sign, normalization)


def log_hermite_norm(n: int) -> float:
    """ln h_n with h_n = sqrt(pi) n! 2^n."""
    return 0.5 * _LOG_PI + ln_gamma(n + 1.0).value + n * math.log(2.0)


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} above supported cap {MAX_DEGREE}")
    return int(n)


_CHUNK = 16384


def _recurrence_chunk(n, x, sqrt_k, every):
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    tmp = np.empty_like(x)
    scale = np.zeros_like(x)
    root2 = math.sqrt(2.0)
    for k in range(n):
        np.multiply(q, x, out=tmp)
        tmp *= root2 / sqrt_k[k + 1]
        q_prev *= sqrt_k[k] / sqrt_k[k + 1]
        tmp -= q_prev
        q_prev, q, tmp = q, tmp, q_prev
        if (k + 1) % every == 0:
            big = np.abs(q) > _RESCALE
            if big.any():
                q[big] /= _RESCALE
                q_prev[big] /= _RESCALE
                scale[big] += _LOG_RESCALE
    return q, scale


def log_abs_psi(n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``(log|psi_n(x)|, sign psi_n(x))``."""
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    q = np.ones_like(x)
    scale = np.zeros_like(x)
    if n > 0 and x.size:
        amax = float(np.max(np.abs(x)))
        # per-step growth is at most sqrt(2)|x| + 1
        every = max(1, int(120.0 / math.log(math.sqrt(2.0) * amax + 2.0)))
        sqrt_k = np.sqrt(np.arange(n + 1, dtype=float))
        for lo in range(0, x.size, _CHUNK):
            sl = slice(lo, lo + _CHUNK)
            q[sl], scale[sl] = _recurrence_chunk(n, x[sl], sqrt_k, every)
    sign = np.sign(q).astype(int)
    with np.errstate(divide="ignore"):
        logmag = np.log(np.abs(q)) + scale - 0.5 * x * x - 0.25 * _LOG_PI
    logmag[sign == 0] = -np.inf
    return logmag.reshape(shape), sign.reshape(shape)


def eval_weighted(n: int, x: float, normalization=Normalization.ORTHONORMAL) -> WeightedHermiteValue:
    """psi_n(x), or H_n(x) e^(-x^2/2) for the orthogonal normalisation."""
    normalization = Normalization(normalization)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    lm, sg = log_abs_psi(n, np.array([x]))
    val = WeightedHermiteValue(float(lm[0]), int(sg[0]), Normalization.ORTHONORMAL)
    return val.to(normalization, n)


def density(n: int, x: float, normalization=Normalization.ORTHONORMAL) -> WeightedHermiteValue:
    """e^(-x^2) H_n(x)^2 or psi_n(x)^2, returned in log form with sign +1 or 0."""
    w = eval_weighted(n, x, normalization)
    if w.sign == 0:
        return WeightedHermiteValue(-math.inf, 0, w.normalization)
    return WeightedHermiteValue(2.0 * w.log_magnitude, 1, w.normalization)


def hermite_zeros(n: int) -> np.ndarray:
    """All zeros of H_n, ascending (eigenvalues of the Jacobi matrix)."""
    from scipy.linalg import eigh_tridiagonal

    n = _check_degree(n)
    if n == 0:
        return np.empty(0)
    if n == 1:
        return np.zeros(1)
    off = np.sqrt(np.arange(1, n, dtype=float) / 2.0)
    return np.sort(eigh_tridiagonal(np.zeros(n), off, eigvals_only=True))


class Zone(str, enum.Enum):
    C = "c"
    B1 = "b1"
    B2 = "b2"
    B3 = "b3"
    A = "a"


_ZONE_ORDER = (Zone.C, Zone.B1, Zone.B2, Zone.B3, Zone.A)


@dataclass(frozen=True)
class ZoneMap:
    """Partition of x^2 >= 0 into the zones c, b1, b2, b3, a.

    The b-zone is 2n -+ n^(1/3+theta) and its core b2 is 2n -+ M n^(1/3).
    When n^theta <= M the core is wider than the b-zone; the shoulders b1
    and b3 are then empty and the core bounds take precedence.
    """

    n: int
    theta: float = 0.1
    m_cut: float = 2.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"ZoneMap needs a positive integer n, got {self.n!r}")
        if not 0.0 < self.theta < 1.0 / 6.0:
            raise ValueError(f"theta must lie in (0, 1/6), got {self.theta!r}")
        if not self.m_cut > 0.0:
            raise ValueError(f"m_cut must be positive, got {self.m_cut!r}")
        if self.boundaries[1] <= 0.0:
            raise ValueError(f"n = {self.n} too small: the c zone is empty")

    @property
    def outer_width(self) -> float:
        return self.n ** (1.0 / 3.0 + self.theta)

    @property
    def core_width(self) -> float:
        return self.m_cut * self.n ** (1.0 / 3.0)

    @property
    def degenerate(self) -> bool:
        return self.core_width >= self.outer_width

    @property
    def boundaries(self) -> tuple[float, ...]:
        """Breakpoints in x^2: (0, c|b1, b1|b2, b2|b3, b3|a, inf)."""
        two_n = 2.0 * self.n
        core = self.core_width
        outer = max(self.outer_width, core)
        return (0.0, two_n - outer, two_n - core, two_n + core, two_n + outer, math.inf)

    def x_breakpoints(self) -> np.ndarray:
        """Finite interior breakpoints converted to x >= 0."""
        return np.sqrt(np.array(self.boundaries[1:5]))

    def classify(self, x: float) -> Zone:
        x2 = float(x) * float(x)
        bounds = self.boundaries
        for i in range(4, 0, -1):
            if x2 >= bounds[i]:
                # a degenerate shoulder has zero width; skip it
                if bounds[i] == bounds[i + 1]:
                    continue
                return _ZONE_ORDER[i]
        return Zone.C


def classify_zone(zone_map: ZoneMap, x: float) -> Zone:
    """Zone of |x| with every zone closed on its left end."""
    return zone_map.classify(x)


def _asymptotic_parts(n, x, zone):
    """(log prefactor, oscillating factor, log envelope of that factor)."""
    x2 = x * x
    two_n = 2.0 * n
    if zone is Zone.A:
        r = math.sqrt(x2 - two_n)
        logv = (-0.5 * math.log(2.0) + (n - 0.5) * math.log(x + r) - 0.25 * math.log(x2 - two_n)
                + 0.5 * (x2 - n - x * r) - 0.5 * x2)
        return logv, 1.0, 0.0
    if zone is Zone.C:
        r = math.sqrt(two_n - x2)
        logp = (0.5 * math.log(2.0) + 0.5 * (n - 0.5) * math.log(two_n) - 0.25 * math.log(two_n - x2)
                + 0.5 * (x2 - n) - 0.5 * x2)
        phase = (n - 0.5) * math.asin(math.sqrt(1.0 - x2 / two_n)) - 0.5 * x * r - 0.25 * math.pi
        return logp, math.cos(phase), 0.0
    z = two_n / x ** (2.0 / 3.0) - x ** (4.0 / 3.0)
    arg = -(2.0 ** (1.0 / 3.0)) / 2.0 * z
    logp = (0.5 * math.log(2.0 * math.pi) - math.log(2.0) / 6.0 + (n - 2.0 / 3.0) * math.log(x)
            + 0.25 * x2 - 0.5 * x2)
    ai = airy_ai(arg).value
    if arg < 0:
        log_env = -0.5 * math.log(math.pi) - 0.25 * math.log(max(-arg, 1.0))
        log_env = max(log_env, math.log(abs(ai)) if ai else -math.inf)
    else:
        log_env = math.log(abs(ai)) if ai else -math.inf
    return logp, ai, log_env


def eval_asymptotic(n: int, x: float, zone_map: ZoneMap | None = None) -> WeightedHermiteValue:
    """Leading-order regional asymptotics of H_{n-1}(x) e^(-x^2/2).

    The zone of x selects the exterior (a), oscillatory (c) or Airy (b1, b2,
    b3) formula.  Accuracy inside a collar of width ~0.1 n^(1/3) around a
    zone breakpoint is not controlled.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"eval_asymptotic requires x > 0, got {x!r}")
    zone_map = zone_map or ZoneMap(int(n))
    if zone_map.n != n:
        raise ValueError("zone map built for a different n")
    zone = zone_map.classify(x)
    logp, factor, _ = _asymptotic_parts(n, x, zone)
    if factor == 0.0:
        return WeightedHermiteValue(-math.inf, 0, Normalization.ORTHOGONAL)
    sign = 1 if factor > 0 else -1
    return WeightedHermiteValue(logp + math.log(abs(factor)), sign, Normalization.ORTHOGONAL)


def asymptotic_log_envelope(n: int, x: float, zone_map: ZoneMap | None = None) -> float:
    """Log of the local oscillation amplitude of the asymptotic formula.

    Zone c drops the cosine, zone b replaces Ai by max(|Ai|, its envelope
    pi^(-1/2)|s|^(-1/4)), zone a is the value itself.
    """
    zone_map = zone_map or ZoneMap(int(n))
    zone = zone_map.classify(x)
    logp, _, log_env = _asymptotic_parts(n, x, zone)
    return logp + log_env
